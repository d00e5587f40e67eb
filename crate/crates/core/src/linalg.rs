//! Unitary matrices over a generic real scalar, with an exact monomial form.

use std::fmt::Debug;

use nalgebra::{ComplexField, DMatrix, DVector, RealField};
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};

use crate::phase::Phase;

/// Floating-point scalar used for dense linear algebra.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static {
    /// Acceptance tolerance for unitarity, representation laws and subspace tests.
    const LAW_TOLERANCE: f64;
    /// Singular values below this count as zero.
    const RANK_THRESHOLD: f64;

    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite constant")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite value")
    }
}

impl Real for f64 {
    const LAW_TOLERANCE: f64 = 1e-9;
    const RANK_THRESHOLD: f64 = 1e-8;
}

impl Real for f32 {
    const LAW_TOLERANCE: f64 = 1e-4;
    const RANK_THRESHOLD: f64 = 1e-3;
}

pub type CMatrix<T> = DMatrix<Complex<T>>;
pub type CVector<T> = DVector<Complex<T>>;

/// `exp(2πi·q)` in scalar type `T`.
pub fn root_of_unity<T: Real>(q: &Phase) -> Complex<T> {
    let z: Complex<f64> = q.to_complex();
    Complex::new(T::of(z.re), T::of(z.im))
}

/// `max_ij |A_ij − B_ij|`
pub fn max_abs_diff<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).modulus().as_f64()).fold(0.0, f64::max)
}

pub fn max_abs<T: Real>(a: &CMatrix<T>) -> f64 {
    a.iter().map(|x| x.modulus().as_f64()).fold(0.0, f64::max)
}

/// Monomial matrix with exact phases: `(U v)_i = exp(2πi·φ_i)·v_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    perm: Vec<usize>,
    phases: Vec<Phase>,
}

impl Monomial {
    /// Panics if `perm` is not a permutation.
    pub fn new(perm: Vec<usize>, phases: Vec<Phase>) -> Self {
        assert_eq!(perm.len(), phases.len());
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            assert!(p < perm.len() && !seen[p], "not a permutation");
            seen[p] = true;
        }
        Monomial { perm, phases }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Phase::zero())
    }

    pub fn scalar(dim: usize, q: Phase) -> Self {
        Monomial { perm: (0..dim).collect(), phases: vec![q; dim] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    /// `self · other`
    pub fn compose(&self, other: &Monomial) -> Monomial {
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        let phases = self.phases.iter().zip(&self.perm).map(|(a, &p)| a + &other.phases[p]).collect();
        Monomial { perm, phases }
    }

    pub fn inverse(&self) -> Monomial {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut phases = vec![Phase::zero(); n];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
            phases[p] = -&self.phases[i];
        }
        Monomial { perm, phases }
    }

    pub fn times_phase(&self, q: &Phase) -> Monomial {
        Monomial { perm: self.perm.clone(), phases: self.phases.iter().map(|p| p + q).collect() }
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Monomial) -> Monomial {
        let n = self.dim();
        let mut perm = self.perm.clone();
        perm.extend(other.perm.iter().map(|p| p + n));
        let mut phases = self.phases.clone();
        phases.extend(other.phases.iter().cloned());
        Monomial { perm, phases }
    }

    pub fn to_dense<T: Real>(&self) -> CMatrix<T> {
        let n = self.dim();
        let mut m = CMatrix::<T>::zeros(n, n);
        for (i, (&p, q)) in self.perm.iter().zip(&self.phases).enumerate() {
            m[(i, p)] = root_of_unity(q);
        }
        m
    }

    /// `U·X`, permuting and rescaling rows of `X`.
    pub fn apply<T: Real>(&self, x: &CMatrix<T>) -> CMatrix<T> {
        let mut out = CMatrix::<T>::zeros(x.nrows(), x.ncols());
        for (i, (&p, q)) in self.perm.iter().zip(&self.phases).enumerate() {
            let z: Complex<T> = root_of_unity(q);
            for j in 0..x.ncols() {
                out[(i, j)] = z * x[(p, j)];
            }
        }
        out
    }

    /// Exact equality of the underlying linear maps.
    pub fn exactly_equals(&self, other: &Monomial) -> bool {
        self == other
    }

    /// `max |U_ij − V_ij|`, evaluated without densifying.
    pub fn distance<T: Real>(&self, other: &Monomial) -> f64 {
        assert_eq!(self.dim(), other.dim());
        let mut worst = 0.0f64;
        for i in 0..self.dim() {
            if self.perm[i] != other.perm[i] {
                worst = worst.max(1.0);
            } else if self.phases[i] != other.phases[i] {
                let (a, b): (Complex<T>, Complex<T>) = (root_of_unity(&self.phases[i]), root_of_unity(&other.phases[i]));
                worst = worst.max((a - b).modulus().as_f64());
            }
        }
        worst
    }
}

/// A unitary operator, monomial when possible.
#[derive(Clone, Debug)]
pub enum UnitaryMatrix<T: Real> {
    Monomial(Monomial),
    Dense(CMatrix<T>),
}

impl<T: Real> UnitaryMatrix<T> {
    pub fn identity(dim: usize) -> Self {
        UnitaryMatrix::Monomial(Monomial::identity(dim))
    }

    pub fn scalar(dim: usize, q: Phase) -> Self {
        UnitaryMatrix::Monomial(Monomial::scalar(dim, q))
    }

    pub fn dim(&self) -> usize {
        match self {
            UnitaryMatrix::Monomial(m) => m.dim(),
            UnitaryMatrix::Dense(d) => d.nrows(),
        }
    }

    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self {
            UnitaryMatrix::Monomial(m) => Some(m),
            UnitaryMatrix::Dense(_) => None,
        }
    }

    pub fn to_dense(&self) -> CMatrix<T> {
        match self {
            UnitaryMatrix::Monomial(m) => m.to_dense(),
            UnitaryMatrix::Dense(d) => d.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (UnitaryMatrix::Monomial(a), UnitaryMatrix::Monomial(b)) => UnitaryMatrix::Monomial(a.compose(b)),
            (UnitaryMatrix::Monomial(a), UnitaryMatrix::Dense(b)) => UnitaryMatrix::Dense(a.apply(b)),
            _ => UnitaryMatrix::Dense(self.to_dense() * other.to_dense()),
        }
    }

    /// Inverse, which is the adjoint.
    pub fn inverse(&self) -> Self {
        match self {
            UnitaryMatrix::Monomial(m) => UnitaryMatrix::Monomial(m.inverse()),
            UnitaryMatrix::Dense(d) => UnitaryMatrix::Dense(d.adjoint()),
        }
    }

    pub fn times_phase(&self, q: &Phase) -> Self {
        match self {
            UnitaryMatrix::Monomial(m) => UnitaryMatrix::Monomial(m.times_phase(q)),
            UnitaryMatrix::Dense(d) => UnitaryMatrix::Dense(d * root_of_unity::<T>(q)),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        match (self, other) {
            (UnitaryMatrix::Monomial(a), UnitaryMatrix::Monomial(b)) => UnitaryMatrix::Monomial(a.direct_sum(b)),
            _ => {
                let (n, k) = (self.dim(), other.dim());
                let mut d = CMatrix::<T>::zeros(n + k, n + k);
                d.view_mut((0, 0), (n, n)).copy_from(&self.to_dense());
                d.view_mut((n, n), (k, k)).copy_from(&other.to_dense());
                UnitaryMatrix::Dense(d)
            }
        }
    }

    /// `U·X`
    pub fn apply(&self, x: &CMatrix<T>) -> CMatrix<T> {
        match self {
            UnitaryMatrix::Monomial(m) => m.apply(x),
            UnitaryMatrix::Dense(d) => d * x,
        }
    }

    /// `max |U_ij − V_ij|`
    pub fn distance(&self, other: &Self) -> f64 {
        match (self, other) {
            (UnitaryMatrix::Monomial(a), UnitaryMatrix::Monomial(b)) => a.distance::<T>(b),
            _ => max_abs_diff(&self.to_dense(), &other.to_dense()),
        }
    }

    /// `‖U*U − I‖_max`
    pub fn unitarity_defect(&self) -> f64 {
        match self {
            UnitaryMatrix::Monomial(_) => 0.0,
            UnitaryMatrix::Dense(d) => {
                let n = d.nrows();
                max_abs_diff(&(d.adjoint() * d), &CMatrix::<T>::identity(n, n))
            }
        }
    }

    pub fn trace(&self) -> Complex<T> {
        match self {
            UnitaryMatrix::Monomial(m) => {
                let mut t = Complex::new(T::zero(), T::zero());
                for (i, (&p, q)) in m.perm.iter().zip(&m.phases).enumerate() {
                    if p == i {
                        t += root_of_unity::<T>(q);
                    }
                }
                t
            }
            UnitaryMatrix::Dense(d) => d.trace(),
        }
    }
}

/// Orthonormal basis (columns) of the span of the columns of `m`, by
/// modified Gram-Schmidt with re-orthogonalization; columns whose residual
/// norm is below `threshold` are dropped.
pub fn orthonormal_columns<T: Real>(m: &CMatrix<T>, threshold: f64) -> CMatrix<T> {
    let mut basis: Vec<CVector<T>> = Vec::new();
    for j in 0..m.ncols() {
        let mut v: CVector<T> = m.column(j).into_owned();
        for _ in 0..2 {
            for b in &basis {
                let c = b.dotc(&v);
                v -= b * c;
            }
        }
        let norm = v.norm();
        if norm.as_f64() > threshold {
            basis.push(v / Complex::new(norm, T::zero()));
        }
    }
    columns_to_matrix(m.nrows(), &basis)
}

pub fn columns_to_matrix<T: Real>(rows: usize, cols: &[CVector<T>]) -> CMatrix<T> {
    let mut out = CMatrix::<T>::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        out.set_column(j, c);
    }
    out
}

/// Orthonormal basis of `{x : M x = 0}` via SVD, counting singular values
/// below `threshold` as zero.
pub fn nullspace<T: Real>(m: &CMatrix<T>, threshold: f64) -> CMatrix<T> {
    let cols = m.ncols();
    if cols == 0 {
        return CMatrix::<T>::zeros(0, 0);
    }
    // pad so the SVD yields a full set of right singular vectors
    let padded = if m.nrows() < cols {
        let mut p = CMatrix::<T>::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let null: Vec<CVector<T>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| s.as_f64() < threshold)
        .map(|(k, _)| v_t.row(k).adjoint())
        .collect();
    columns_to_matrix(cols, &null)
}

/// Orthogonal projector onto the column span of an orthonormal `b`.
pub fn projector<T: Real>(b: &CMatrix<T>) -> CMatrix<T> {
    b * b.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Phase {
        s.parse().unwrap()
    }

    fn random_monomial(n: usize, seed: u64) -> Monomial {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let phases = (0..n).map(|_| Phase::from_ratio(rng.random_range(0..12), 12)).collect();
        Monomial::new(perm, phases)
    }

    #[test]
    fn monomial_algebra_matches_dense() {
        for seed in 0..20 {
            let a = random_monomial(7, seed);
            let b = random_monomial(7, seed + 100);
            let ab: CMatrix<f64> = a.compose(&b).to_dense();
            assert!(max_abs_diff(&ab, &(a.to_dense::<f64>() * b.to_dense::<f64>())) < 1e-12);
            let inv: CMatrix<f64> = a.inverse().to_dense();
            assert!(max_abs_diff(&inv, &a.to_dense::<f64>().adjoint()) < 1e-12);
            let x = CMatrix::<f64>::from_fn(7, 3, |i, j| Complex::new(i as f64, j as f64 - 1.0));
            assert!(max_abs_diff(&a.apply(&x), &(a.to_dense::<f64>() * &x)) < 1e-12);
            let ua = UnitaryMatrix::<f64>::Monomial(a.clone());
            let ub = UnitaryMatrix::<f64>::Monomial(b.clone());
            let dense_dist = max_abs_diff(&ua.to_dense(), &ub.to_dense());
            assert!((ua.distance(&ub) - dense_dist).abs() < 1e-12);
            let tr: Complex<f64> = ua.trace();
            assert!((tr - ua.to_dense().trace()).norm() < 1e-12);
        }
    }

    #[test]
    fn unitarity_and_sums() {
        let s = Monomial::new(vec![1, 0], vec![q("0"), q("1/2")]);
        let u = UnitaryMatrix::<f64>::Monomial(s.clone());
        assert_eq!(u.unitarity_defect(), 0.0);
        let d = UnitaryMatrix::<f64>::Dense(u.to_dense());
        assert!(d.unitarity_defect() < 1e-15);
        let sum = u.direct_sum(&d);
        assert_eq!(sum.dim(), 4);
        assert!(sum.unitarity_defect() < 1e-15);
        let sm = u.direct_sum(&u);
        assert!(sm.as_monomial().is_some());
        assert!(max_abs_diff(&sm.to_dense(), &sum.to_dense()) < 1e-15);
    }

    #[test]
    fn f32_scalar() {
        let a = random_monomial(5, 3);
        let d: CMatrix<f32> = a.to_dense();
        let id = d.adjoint() * &d;
        assert!(max_abs_diff(&id, &CMatrix::<f32>::identity(5, 5)) < f32::LAW_TOLERANCE);
    }

    #[test]
    fn nullspace_and_orthonormalization() {
        let m = CMatrix::<f64>::from_row_slice(2, 3, &[
            Complex::new(1.0, 0.0), Complex::new(1.0, 0.0), Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), Complex::new(0.0, 1.0),
        ]);
        let n = nullspace(&m, 1e-8);
        assert_eq!(n.ncols(), 1);
        assert!(max_abs(&(&m * &n)) < 1e-12);
        let b = orthonormal_columns(&CMatrix::<f64>::from_fn(3, 3, |i, j| Complex::new((i + j) as f64, 0.0)), 1e-8);
        assert_eq!(b.ncols(), 2);
        assert!(max_abs_diff(&(b.adjoint() * &b), &CMatrix::identity(2, 2)) < 1e-12);
        let p = projector(&b);
        assert!(max_abs_diff(&(&p * &p), &p) < 1e-12);
    }
}
