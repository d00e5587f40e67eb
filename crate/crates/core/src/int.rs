//! Dense integer matrices over any Euclidean integer type, with column
//! Hermite form, Smith normal form, integer kernels and linear congruence
//! solving.
//!
//! Everything here is generic over [`Int`], which covers the primitive signed
//! integers and [`num_bigint::BigInt`]. Lattice code uses `i128`; the cocycle
//! splitting solver uses `BigInt` where entries may grow.

use std::fmt;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Euclidean integer types usable as matrix entries.
pub trait Int:
    Integer + Signed + Clone + fmt::Debug + fmt::Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> Int for T where
    T: Integer + Signed + Clone + fmt::Debug + fmt::Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Row-major dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix<I> {
    rows: usize,
    cols: usize,
    data: Vec<I>,
}

impl<I: Int> IntMatrix<I> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![I::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = I::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<I>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged integer matrix");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| I::from_i64(x).unwrap()).collect()).collect(),
        )
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<I>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &I {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: I) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[I] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<I> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in integer product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[I]) -> Vec<I> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(I::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Entry-wise conversion; fails if an entry does not fit the target type.
    pub fn try_cast<J: Int>(&self) -> Option<IntMatrix<J>> {
        let data = self
            .data
            .iter()
            .map(|x| J::from_i128(x.to_i128()?))
            .collect::<Option<Vec<_>>>()
            .or_else(|| {
                // fall back to the decimal route for big entries
                self.data.iter().map(|x| J::from_str_radix(&x.to_string(), 10).ok()).collect()
            })?;
        Some(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &I) {
        for j in 0..self.cols {
            let s = self.get(src, j).clone();
            if !s.is_zero() {
                let v = self.get(dst, j).clone() + k.clone() * s;
                self.set(dst, j, v);
            }
        }
    }

    /// `col[dst] += k * col[src]`
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &I) {
        for i in 0..self.rows {
            let s = self.get(i, src).clone();
            if !s.is_zero() {
                let v = self.get(i, dst).clone() + k.clone() * s;
                self.set(i, dst, v);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

impl<I: Int> fmt::Debug for IntMatrix<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | …`, `d_i >= 0`.
#[derive(Clone, Debug)]
pub struct Smith<I: Int> {
    pub u: IntMatrix<I>,
    pub d: IntMatrix<I>,
    pub v: IntMatrix<I>,
}

impl<I: Int> Smith<I> {
    pub fn diagonal(&self) -> Vec<I> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with transforms.
pub fn smith_decompose<I: Int>(m: &IntMatrix<I>) -> Smith<I> {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = d.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..r {
                if !d.get(i, t).is_zero() {
                    let q = -d.get(i, t).div_floor(&pivot);
                    d.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    dirty |= !d.get(i, t).is_zero();
                }
            }
            for j in t + 1..c {
                if !d.get(t, j).is_zero() {
                    let q = -d.get(t, j).div_floor(&pivot);
                    d.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    dirty |= !d.get(t, j).is_zero();
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            if let Some(i) = offender {
                d.add_row_multiple(t, i, &I::one());
                u.add_row_multiple(t, i, &I::one());
                continue;
            }
            if pivot.is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            break;
        }
    }
    Smith { u, d, v }
}

/// Column echelon form `H = M·V` with `V` unimodular.
///
/// Row `pivots[k]` is the first row where column `k` of `H` is nonzero; those
/// entries are positive and entries left of a pivot are reduced into
/// `[0, pivot)`. Columns `rank..` of `H` are zero, so the matching columns of
/// `V` span the integer kernel of `M`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon<I: Int> {
    pub h: IntMatrix<I>,
    pub v: IntMatrix<I>,
    pub pivots: Vec<usize>,
}

pub fn column_echelon<I: Int>(m: &IntMatrix<I>) -> ColumnEchelon<I> {
    let (r, c) = (m.rows, m.cols);
    let mut h = m.clone();
    let mut v = IntMatrix::identity(c);
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..r {
        if k == c {
            break;
        }
        // gcd-reduce row i over columns k..c into column k
        loop {
            let best = (k..c)
                .filter(|&j| !h.get(i, j).is_zero())
                .min_by(|&a, &b| h.get(i, a).abs().cmp(&h.get(i, b).abs()));
            let Some(pj) = best else { break };
            h.swap_cols(k, pj);
            v.swap_cols(k, pj);
            let pivot = h.get(i, k).clone();
            let mut done = true;
            for j in k + 1..c {
                if !h.get(i, j).is_zero() {
                    let q = -h.get(i, j).div_floor(&pivot);
                    h.add_col_multiple(j, k, &q);
                    v.add_col_multiple(j, k, &q);
                    done &= h.get(i, j).is_zero();
                }
            }
            if done {
                break;
            }
        }
        if h.get(i, k).is_zero() {
            continue;
        }
        if h.get(i, k).is_negative() {
            h.negate_col(k);
            v.negate_col(k);
        }
        let pivot = h.get(i, k).clone();
        for j in 0..k {
            let q = -h.get(i, j).div_floor(&pivot);
            if !q.is_zero() {
                h.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
            }
        }
        pivots.push(i);
        k += 1;
    }
    ColumnEchelon { h, v, pivots }
}

/// Basis of the integer kernel `{x : M x = 0}`, as columns.
pub fn integer_kernel<I: Int>(m: &IntMatrix<I>) -> Vec<Vec<I>> {
    let e = column_echelon(m);
    (e.pivots.len()..m.cols).map(|j| e.v.column(j)).collect()
}

/// Solves `A x ≡ b (mod modulus)` exactly.
///
/// The system is first brought to row echelon form over `Z/modulus` with
/// unimodular row operations, then the surviving rows are solved through a
/// Smith decomposition over `Z` in `B`. Returns one solution with entries in
/// `[0, modulus)`, or `None` if the system is inconsistent.
pub fn solve_congruences<I: Int, B: Int>(
    rows: impl IntoIterator<Item = (Vec<I>, I)>,
    unknowns: usize,
    modulus: &I,
) -> Option<Vec<I>> {
    let n = unknowns;
    let reduce = |x: I| x.mod_floor(modulus);
    // pivot rows keyed by leading column; each stores coefficients + rhs
    let mut pivots: Vec<Option<(Vec<I>, I)>> = vec![None; n];
    for (mut row, mut rhs) in rows {
        assert_eq!(row.len(), n);
        for x in row.iter_mut() {
            *x = reduce(x.clone());
        }
        rhs = reduce(rhs);
        let mut col = 0;
        loop {
            while col < n && row[col].is_zero() {
                col += 1;
            }
            if col == n {
                if !rhs.is_zero() {
                    return None;
                }
                break;
            }
            match pivots[col].take() {
                None => {
                    pivots[col] = Some((row, rhs));
                    break;
                }
                Some((prow, prhs)) => {
                    let (a, b) = (prow[col].clone(), row[col].clone());
                    let eg = a.extended_gcd(&b);
                    let (g, s, t) = (eg.gcd, eg.x, eg.y);
                    let (ag, bg) = (a / g.clone(), b / g);
                    let mut new_p = Vec::with_capacity(n);
                    let mut new_r = Vec::with_capacity(n);
                    for j in 0..n {
                        let (pj, rj) = (prow[j].clone(), row[j].clone());
                        new_p.push(reduce(s.clone() * pj.clone() + t.clone() * rj.clone()));
                        new_r.push(reduce(bg.clone() * pj - ag.clone() * rj));
                    }
                    let new_prhs = reduce(s * prhs.clone() + t * rhs.clone());
                    let new_rrhs = reduce(bg * prhs - ag * rhs);
                    pivots[col] = Some((new_p, new_prhs));
                    row = new_r;
                    rhs = new_rrhs;
                    // row[col] is now zero mod modulus
                }
            }
        }
    }

    let kept: Vec<(Vec<I>, I)> = pivots.into_iter().flatten().collect();
    if kept.is_empty() {
        return Some(vec![I::zero(); n]);
    }
    let to_b = |x: &I| B::from_str_radix(&x.to_string(), 10).ok().unwrap();
    let from_b = |x: &B| I::from_str_radix(&x.to_string(), 10).ok().unwrap();
    let k = kept.len();
    let mut a = IntMatrix::<B>::zeros(k, n);
    let mut b = Vec::with_capacity(k);
    for (i, (row, rhs)) in kept.iter().enumerate() {
        for j in 0..n {
            a.set(i, j, to_b(&row[j]));
        }
        b.push(to_b(rhs));
    }
    let modb = to_b(modulus);
    let smith = smith_decompose(&a);
    let ub = smith.u.mul_vec(&b);
    let mut y = vec![B::zero(); n];
    for i in 0..k {
        let rhs = ub[i].mod_floor(&modb);
        let di = if i < n { smith.d.get(i, i).clone() } else { B::zero() };
        let g = di.gcd(&modb);
        if !rhs.is_multiple_of(&g) {
            return None;
        }
        if i < n && !di.is_zero() {
            let m2 = modb.clone() / g.clone();
            let inv = mod_inverse(&(di / g.clone()).mod_floor(&m2), &m2)?;
            y[i] = ((rhs / g) * inv).mod_floor(&m2);
        }
    }
    let x = smith.v.mul_vec(&y);
    Some(x.iter().map(|v| from_b(&v.mod_floor(&modb))).collect())
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse<I: Int>(a: &I, m: &I) -> Option<I> {
    if m.is_one() {
        return Some(I::zero());
    }
    let eg = a.extended_gcd(m);
    eg.gcd.is_one().then(|| eg.x.mod_floor(m))
}
