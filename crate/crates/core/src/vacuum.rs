//! Sector decomposition over a maximal isotropic subgroup `L`, the vacuum
//! space `H^L`, descent of the representation to `(L/2)/L`, and extraction of
//! anticommuting Clifford generators on the vacuum.
//!
//! Sectors are labelled by cosets `[y] ∈ G/L` through a character form `λ`:
//! `H_[y] = {ψ : W(a)ψ = exp(2πi·λ(a,y))·ψ ∀a ∈ L}`. When the multiplier is an
//! alternating bicharacter, `λ = m`, `W(x)` moves `[y]` to `[y+2x]` and the
//! normalizer of `H^L` is `L/2 = {x : 2x ∈ L}`. For any other multiplier
//! `λ = m~`, `W(x)` moves `[y]` to `[y+x]` and the normalizer is `L` itself.

use std::sync::Arc;

use nalgebra::ComplexField;
use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{bail, Error, Result};
use crate::group::{FinAbGroup, GroupElement, Quotient, Subgroup};
use crate::isotropy::{is_isotropic, polar_bicharacter};
use crate::linalg::{columns_to_matrix, max_abs, max_abs_diff, orthonormal_columns, root_of_unity, CMatrix, CVector, Real, UnitaryMatrix};
use crate::multiplier::{antisymmetrize, is_heisenberg, split_symmetric, Bicharacter, Multiplier, DEFAULT_SEED};
use crate::phase::Phase;
use crate::report::{Check, VerificationReport};
use crate::weyl::{check_rep_law_with, commutant_d, commutant_of_operators, commutator_scalar_check_with, ProjectiveRep};

/// Subgroups up to this order are scanned element by element in the checks.
const SCAN_LIMIT: u64 = 4096;

/// How sector labels are attached to characters of `L`.
#[derive(Clone, Debug)]
pub struct LabelForm {
    /// `λ` with `H_[y]` the `a ↦ λ(a,y)` eigenspace.
    pub form: Bicharacter,
    /// `W(x)` maps `[y]` to `[y + shift·x]`; the normalizer of `H^L` is `{x : shift·x ∈ L}`.
    pub shift: i64,
}

impl LabelForm {
    pub fn for_multiplier(m: &Multiplier) -> Result<Self> {
        match m.as_bicharacter().filter(Bicharacter::is_alternating) {
            Some(b) => Ok(LabelForm { form: b, shift: 2 }),
            None => Ok(LabelForm { form: antisymmetrize(m)?, shift: 1 }),
        }
    }

    pub fn uses_multiplier(&self) -> bool {
        self.shift == 2
    }
}

/// Precomputed `W(a)` for `a ∈ L`, with fast column access.
enum ColumnOp<T: Real> {
    Monomial { inv: Vec<usize>, values: Vec<Complex<T>> },
    Dense(CMatrix<T>),
}

impl<T: Real> ColumnOp<T> {
    fn new(u: &UnitaryMatrix<T>) -> Self {
        match u {
            UnitaryMatrix::Monomial(m) => {
                let mut inv = vec![0; m.dim()];
                let mut values = vec![Complex::new(T::zero(), T::zero()); m.dim()];
                for (i, (&p, q)) in m.perm().iter().zip(m.phases()).enumerate() {
                    inv[p] = i;
                    values[p] = root_of_unity(q);
                }
                ColumnOp::Monomial { inv, values }
            }
            UnitaryMatrix::Dense(d) => ColumnOp::Dense(d.clone()),
        }
    }

    /// `out += coeff · W(a) e_j`
    fn add_column(&self, j: usize, coeff: Complex<T>, out: &mut CVector<T>) {
        match self {
            ColumnOp::Monomial { inv, values } => out[inv[j]] += coeff * values[j],
            ColumnOp::Dense(d) => {
                for i in 0..d.nrows() {
                    out[i] += coeff * d[(i, j)];
                }
            }
        }
    }
}

/// Orthonormal bases of all sectors `H_[y]`, `[y] ∈ G/L`.
#[derive(Clone)]
pub struct SectorDecomposition<T: Real> {
    rep: ProjectiveRep<T>,
    l: Subgroup,
    quotient: Arc<Quotient>,
    labels: LabelForm,
    bases: Vec<CMatrix<T>>,
}

struct SectorSetup<T: Real> {
    labels: LabelForm,
    quotient: Quotient,
    members: Vec<GroupElement>,
    ops: Vec<ColumnOp<T>>,
    traces: Vec<Complex<T>>,
}

fn setup<T: Real>(w: &ProjectiveRep<T>, l: &Subgroup) -> Result<SectorSetup<T>> {
    let m = w.multiplier();
    if l.ambient() != w.group() {
        bail!(Input, "subgroup lives in {}, representation of {}", l.ambient(), w.group());
    }
    if !is_isotropic(l, m)? {
        bail!(Precondition, "the multiplier does not vanish on L x L");
    }
    let labels = LabelForm::for_multiplier(m)?;
    if polar_bicharacter(l, &labels.form)? != *l {
        let which = if labels.uses_multiplier() { "the multiplier" } else { "the antisymmetrized multiplier" };
        bail!(Precondition, "L is not maximal isotropic for {which}");
    }
    let quotient = Subgroup::whole(w.group()).quotient(l)?;
    let members = l.elements();
    let unitaries: Vec<UnitaryMatrix<T>> = members.par_iter().map(|a| w.operator(a)).collect();
    let traces = unitaries.iter().map(|u| u.trace()).collect();
    let ops = unitaries.iter().map(ColumnOp::new).collect();
    Ok(SectorSetup { labels, quotient, members, ops, traces })
}

/// Orthonormal basis of `H_[y]` from the columns of `P_[y] = |L|⁻¹ Σ_a exp(−2πi·λ(a,y))·W(a)`.
fn sector_basis<T: Real>(s: &SectorSetup<T>, y: &GroupElement, dim: usize) -> CMatrix<T> {
    let inv_l = T::of(1.0 / s.members.len() as f64);
    let coeffs: Vec<Complex<T>> =
        s.members.iter().map(|a| root_of_unity::<T>(&-s.labels.form.eval(a, y)) * Complex::new(inv_l, T::zero())).collect();
    let trace: Complex<T> = coeffs.iter().zip(&s.traces).map(|(c, t)| c * t).fold(Complex::new(T::zero(), T::zero()), |a, b| a + b);
    let rank = trace.re.as_f64().round().max(0.0) as usize;
    let mut basis: Vec<CVector<T>> = Vec::with_capacity(rank);
    for j in 0..dim {
        if basis.len() == rank {
            break;
        }
        let mut v = CVector::<T>::zeros(dim);
        for (op, c) in s.ops.iter().zip(&coeffs) {
            op.add_column(j, *c, &mut v);
        }
        for _ in 0..2 {
            for b in &basis {
                let c = b.dotc(&v);
                v -= b * c;
            }
        }
        let norm = v.norm();
        if norm.as_f64() > T::RANK_THRESHOLD {
            basis.push(v / Complex::new(norm, T::zero()));
        }
    }
    columns_to_matrix(dim, &basis)
}

/// All sectors; requires `m = 0` on `L × L` and `L = polar(L, λ)`.
pub fn sectors<T: Real>(w: &ProjectiveRep<T>, l: &Subgroup) -> Result<SectorDecomposition<T>> {
    let s = setup(w, l)?;
    let bases = s.quotient.representatives().par_iter().map(|y| sector_basis(&s, y, w.dim())).collect();
    Ok(SectorDecomposition { rep: w.clone(), l: l.clone(), quotient: Arc::new(s.quotient), labels: s.labels, bases })
}

/// Orthonormal basis of `H^L`, the vectors fixed by `W(L)`.
pub fn vacuum<T: Real>(w: &ProjectiveRep<T>, l: &Subgroup) -> Result<CMatrix<T>> {
    let s = setup(w, l)?;
    Ok(sector_basis(&s, &w.group().zero(), w.dim()))
}

/// `max |v − B B* v|`: how far the columns of `v` are from the span of orthonormal `b`.
pub fn subspace_residual<T: Real>(b: &CMatrix<T>, v: &CMatrix<T>) -> f64 {
    if v.ncols() == 0 {
        return 0.0;
    }
    if b.ncols() == 0 {
        return max_abs(v);
    }
    max_abs(&(v - b * (b.adjoint() * v)))
}

impl<T: Real> SectorDecomposition<T> {
    pub fn rep(&self) -> &ProjectiveRep<T> {
        &self.rep
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.l
    }

    pub fn label_form(&self) -> &LabelForm {
        &self.labels
    }

    /// Smallest representative of each label coset, in quotient order.
    pub fn labels(&self) -> &[GroupElement] {
        self.quotient.representatives()
    }

    pub fn bases(&self) -> &[CMatrix<T>] {
        &self.bases
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.ncols()).collect()
    }

    pub fn index_of(&self, y: &GroupElement) -> usize {
        self.quotient.group().index_of(&self.quotient.project(y)) as usize
    }

    pub fn basis_of(&self, y: &GroupElement) -> &CMatrix<T> {
        &self.bases[self.index_of(y)]
    }

    pub fn vacuum(&self) -> &CMatrix<T> {
        self.basis_of(&self.rep.group().zero())
    }

    /// Completeness, mutual orthogonality and the eigenvalue characterization.
    pub fn verify(&self, tol: f64) -> VerificationReport {
        let mut report = VerificationReport::new();
        let dims = self.dims();
        let total: usize = dims.iter().sum();
        report.push(
            Check::exact("completeness", total == self.rep.dim())
                .with_detail(format!("sector dimensions sum to {total}, representation dimension {}", self.rep.dim())),
        );
        let all = CMatrix::<T>::from_columns(&self.bases.iter().flat_map(|b| b.column_iter().map(|c| c.into_owned())).collect::<Vec<_>>());
        let ortho = if all.ncols() == 0 { 0.0 } else { max_abs_diff(&(all.adjoint() * &all), &CMatrix::identity(all.ncols(), all.ncols())) };
        report.push(Check::numeric("orthonormality", ortho, tol));
        let members = if self.l.order() <= 64 { self.l.elements() } else { self.l.basis_generators() };
        let worst = self
            .labels()
            .par_iter()
            .zip(&self.bases)
            .map(|(y, b)| {
                if b.ncols() == 0 {
                    return 0.0;
                }
                members
                    .iter()
                    .map(|a| {
                        let lambda = root_of_unity::<T>(&self.labels.form.eval(a, y));
                        max_abs(&(self.rep.operator(a).apply(b) - b * lambda))
                    })
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max);
        let scope = if self.l.order() <= 64 { "all of L" } else { "generators of L" };
        report.push(Check::numeric("eigenvalues", worst, tol).with_detail(format!("checked on {scope}")));
        report
    }

    /// `W(x)` maps `H_[y]` into `H_[y + shift·x]` for every nonempty sector.
    pub fn permute_check(&self, x: &GroupElement, tol: f64) -> VerificationReport {
        let g = self.rep.group();
        let u = self.rep.operator(x);
        let moved = g.scale(x, self.labels.shift);
        let worst = self
            .labels()
            .par_iter()
            .zip(&self.bases)
            .map(|(y, b)| {
                if b.ncols() == 0 {
                    return 0.0;
                }
                let target = self.basis_of(&g.add(y, &moved));
                subspace_residual(target, &u.apply(b))
            })
            .reduce(|| 0.0, f64::max);
        let mut report = VerificationReport::new();
        report.push(Check::numeric(format!("permute {x}"), worst, tol).with_detail(format!("[y] -> [y + {}x]", self.labels.shift)));
        report
    }
}

/// `{x : shift·x ∈ L}`, the normalizer of the vacuum space.
pub fn normalizer<T: Real>(w: &ProjectiveRep<T>, l: &Subgroup) -> Result<Subgroup> {
    let labels = LabelForm::for_multiplier(w.multiplier())?;
    Ok(l.preimage_under_scaling(labels.shift))
}

fn elements_or_generators(s: &Subgroup, limit: u64) -> (Vec<GroupElement>, bool) {
    if s.order() <= limit {
        (s.elements(), true)
    } else {
        (s.basis_generators(), false)
    }
}

/// (a) the normalizer `N` preserves `H^L`; (b) nothing outside `N` does;
/// (c) `W(x+a) = W(x)` on `H^L` for `x ∈ N`, `a ∈ 2L`.
pub fn normalizer_check<T: Real>(w: &ProjectiveRep<T>, l: &Subgroup, tol: f64) -> Result<VerificationReport> {
    let h = vacuum(w, l)?;
    if h.ncols() == 0 {
        bail!(Precondition, "the vacuum space is zero");
    }
    let g = w.group();
    let n = normalizer(w, l)?;
    let mut report = VerificationReport::new();

    let (inside, all_inside) = elements_or_generators(&n, SCAN_LIMIT);
    let a = inside.par_iter().map(|x| subspace_residual(&h, &w.operator(x).apply(&h))).reduce(|| 0.0, f64::max);
    let scope = if all_inside { format!("all {} elements of the normalizer", n.order()) } else { "generators of the normalizer".to_string() };
    report.push(Check::numeric("normalizer preserves vacuum", a, tol).with_detail(scope));

    // W(x)H^L lies in the sector of shift·x, so one representative per nonzero coset decides
    let outside: Vec<GroupElement> = n.cosets().into_iter().filter(|x| !x.is_zero()).collect();
    if outside.is_empty() {
        report.push(Check::exact("outside moves vacuum", true).with_detail("vacuous: the normalizer is the whole group"));
    } else {
        let b = outside.par_iter().map(|x| subspace_residual(&h, &w.operator(x).apply(&h))).reduce(|| f64::INFINITY, f64::min);
        let mut c = Check::exact("outside moves vacuum", b > tol).with_detail(format!("{} coset representatives", outside.len()));
        c.residual = Some(b);
        c.tolerance = Some(tol);
        report.push(c);
    }

    let two_l = l.double_image();
    let exhaustive = n.order().saturating_mul(two_l.order()) <= 1 << 16;
    let (xs, ys) = if exhaustive {
        (n.elements(), two_l.elements())
    } else {
        let mut xs = n.quotient(&two_l)?.representatives().to_vec();
        xs.truncate(SCAN_LIMIT as usize);
        xs.extend(n.basis_generators());
        (xs, elements_or_generators(&two_l, SCAN_LIMIT).0)
    };
    let c = xs
        .par_iter()
        .map(|x| {
            let base = w.operator(x).apply(&h);
            ys.iter().map(|a| max_abs(&(w.operator(&g.add(x, a)).apply(&h) - &base))).fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    let scope = if exhaustive { "exhaustive" } else { "section of N/2L and generators of N against 2L" };
    report.push(Check::numeric("periodic modulo 2L", c, tol).with_detail(scope));
    Ok(report)
}

/// Result of [`generated_subspace`].
#[derive(Clone, Debug)]
pub struct GeneratedSubspace<T: Real> {
    /// Orthonormal basis of the smallest `W`-invariant subspace containing `K`.
    pub basis: CMatrix<T>,
    /// Distance between the projection of that subspace onto `H^L` and `K`.
    pub projection_residual: f64,
}

/// Span of `W(x)K` over the group; `K ⊆ H^L` must be invariant under the normalizer.
pub fn generated_subspace<T: Real>(w: &ProjectiveRep<T>, l: &Subgroup, k: &CMatrix<T>) -> Result<GeneratedSubspace<T>> {
    let tol = T::LAW_TOLERANCE;
    let h = vacuum(w, l)?;
    let k = orthonormal_columns(k, T::RANK_THRESHOLD);
    if subspace_residual(&h, &k) > tol {
        bail!(Precondition, "K is not contained in the vacuum space");
    }
    let n = normalizer(w, l)?;
    for x in n.basis_generators() {
        if subspace_residual(&k, &w.operator(&x).apply(&k)) > tol {
            bail!(Precondition, "K is not invariant under W({x})");
        }
    }
    let dim = w.dim();
    if k.ncols() == 0 {
        return Ok(GeneratedSubspace { basis: CMatrix::zeros(dim, 0), projection_residual: 0.0 });
    }
    let mut cols: Vec<CVector<T>> = Vec::new();
    for x in n.cosets() {
        let moved = w.operator(&x).apply(&k);
        cols.extend(moved.column_iter().map(|c| c.into_owned()));
    }
    let basis = orthonormal_columns(&columns_to_matrix(dim, &cols), T::RANK_THRESHOLD);
    let projected = orthonormal_columns(&(&h * (h.adjoint() * &basis)), T::RANK_THRESHOLD);
    let projection_residual = if projected.ncols() != k.ncols() {
        f64::INFINITY
    } else {
        subspace_residual(&k, &projected).max(subspace_residual(&projected, &k))
    };
    Ok(GeneratedSubspace { basis, projection_residual })
}

/// The representation pushed down to `V₂ = N/L` on the vacuum space.
#[derive(Clone)]
pub struct DescendedRep<T: Real> {
    pub normalizer: Subgroup,
    pub quotient: Arc<Quotient>,
    /// Orthonormal basis of `H^L` the operators are written in.
    pub vacuum: CMatrix<T>,
    /// `W₀(v) = B*·W(s(v))·B` with multiplier `m₀`.
    pub rep: ProjectiveRep<T>,
    pub m0: Multiplier,
    /// `n = m₀~`, nondegenerate.
    pub n: Bicharacter,
    /// The lift of `n` along `N → V₂` equals `m~` on `N × N`.
    pub lift_matches: bool,
}

impl<T: Real> DescendedRep<T> {
    pub fn v2(&self) -> &FinAbGroup {
        self.quotient.group()
    }

    pub fn section(&self) -> &[GroupElement] {
        self.quotient.representatives()
    }
}

/// Descent of `W` to `V₂ = N/L`, `N = {x : shift·x ∈ L}`, using the smallest
/// coset representatives `s(v)` as section.
pub fn descend<T: Real>(w: &ProjectiveRep<T>, l: &Subgroup) -> Result<DescendedRep<T>> {
    let b = vacuum(w, l)?;
    if b.ncols() == 0 {
        bail!(Precondition, "the vacuum space is zero");
    }
    let m = w.multiplier();
    let g = w.group().clone();
    let tilde = antisymmetrize(m)?;
    let n_sub = normalizer(w, l)?;
    let gens = n_sub.basis_generators();
    for x in &gens {
        for a in l.basis_generators() {
            if !tilde.eval(x, &a).is_zero() {
                bail!(Precondition, "antisymmetrized multiplier does not vanish at ({x}, {a})");
            }
        }
    }
    let q = Arc::new(n_sub.quotient(l)?);
    let v2 = q.group().clone();
    let section = q.representatives().to_vec();
    let s = |v: &GroupElement| &section[v2.index_of(v) as usize];
    let m0 = Multiplier::from_fn(&v2, |v, u| {
        let (sv, su, svu) = (s(v), s(u), s(&v2.add(v, u)));
        let a = g.sub(&g.add(sv, su), svu);
        m.eval(sv, su) - m.eval(svu, &a)
    })?;
    let ops: Vec<UnitaryMatrix<T>> =
        section.par_iter().map(|x| UnitaryMatrix::Dense(b.adjoint() * w.operator(x).apply(&b))).collect();
    let rep = ProjectiveRep::from_operators(m0.clone(), ops)?;
    let n = antisymmetrize(&m0)?;
    if !n.is_nondegenerate() {
        let w = n.radical().basis_generators().into_iter().next().map(|x| x.to_string()).unwrap_or_default();
        bail!(Defect, "descended form is degenerate; radical contains {w}");
    }
    if !is_heisenberg(&m0)? {
        bail!(Defect, "descended multiplier is not Heisenberg");
    }
    let pairs = if n_sub.order() <= 256 { n_sub.elements() } else { gens.clone() };
    let lift_matches = pairs.iter().all(|x| pairs.iter().all(|y| n.eval(&q.project(x), &q.project(y)) == tilde.eval(x, y)));
    Ok(DescendedRep { normalizer: n_sub, quotient: q, vacuum: b, rep, m0, n, lift_matches })
}

/// Anticommuting generators `E_i` on the vacuum space.
#[derive(Clone, Debug)]
pub struct CliffordBasis<T: Real> {
    /// `e_1 … e_{2d}` in `V₂` with `n(e_i, e_j) = 1/2` for `i != j`.
    pub elements: Vec<GroupElement>,
    /// Twist `a` on `V₂` (index order) with `exp(2πi·a)·W₀` a representation of `χ∘b₁`.
    pub twist: Vec<Phase>,
    pub operators: Vec<CMatrix<T>>,
    /// `2·n(e_i, e_j)` over `F_2`.
    pub gram: Vec<Vec<u8>>,
    /// `max ‖E_i² − I‖`
    pub square_residual: f64,
    /// `max_{i≠j} ‖E_iE_j + E_jE_i‖`
    pub anticommutator_residual: f64,
    pub commutant_dim: usize,
}

impl<T: Real> CliffordBasis<T> {
    pub fn d(&self) -> usize {
        self.elements.len() / 2
    }

    pub fn residual(&self) -> f64 {
        self.square_residual.max(self.anticommutator_residual)
    }

    pub fn report(&self, tol: f64) -> VerificationReport {
        let mut r = VerificationReport::new();
        r.push(Check::numeric("clifford squares", self.square_residual, tol));
        r.push(Check::numeric("clifford anticommutators", self.anticommutator_residual, tol));
        let all_ones = self.gram.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == (i != j) as u8));
        r.push(Check::exact("clifford gram", all_ones));
        r.push(Check::exact("clifford irreducible", self.commutant_dim == 1).with_detail(format!("commutant dimension {}", self.commutant_dim)));
        r
    }
}

/// Bit vector of an element of an elementary abelian 2-group.
fn bits(v: &GroupElement) -> u64 {
    v.coords().iter().enumerate().fold(0, |acc, (i, &c)| acc | ((c as u64 & 1) << i))
}

/// Inserts `v` into an `F_2` echelon basis; false if dependent.
fn insert_independent(basis: &mut Vec<u64>, mut v: u64) -> bool {
    for &b in basis.iter() {
        v = v.min(v ^ b);
    }
    if v == 0 {
        return false;
    }
    basis.push(v);
    basis.sort_unstable_by(|a, b| b.cmp(a));
    true
}

fn search_clifford(n: &Bicharacter, elements: &[GroupElement], want: usize, chosen: &mut Vec<usize>, span: &[u64]) -> bool {
    if chosen.len() == want {
        return true;
    }
    let half = Phase::from_ratio(1, 2);
    let start = chosen.last().map_or(0, |&i| i + 1);
    for k in start..elements.len() {
        let v = &elements[k];
        if v.is_zero() || !chosen.iter().all(|&i| n.eval(&elements[i], v) == half) {
            continue;
        }
        let mut next = span.to_vec();
        if !insert_independent(&mut next, bits(v)) {
            continue;
        }
        chosen.push(k);
        if search_clifford(n, elements, want, chosen, &next) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Basis with all-ones off-diagonal Gram, twisted generators, and their relations.
pub fn clifford_basis<T: Real>(desc: &DescendedRep<T>) -> Result<CliffordBasis<T>> {
    clifford_basis_ordered(desc, None)
}

/// As [`clifford_basis`], searching candidates in the given order instead of index order.
pub fn clifford_basis_ordered<T: Real>(desc: &DescendedRep<T>, order: Option<&[GroupElement]>) -> Result<CliffordBasis<T>> {
    let v2 = desc.v2().clone();
    if !v2.is_elementary_2_group() {
        bail!(Precondition, "V2 = {v2} is not an elementary abelian 2-group");
    }
    let r = v2.rank();
    if r % 2 != 0 {
        bail!(Precondition, "V2 has odd rank {r}");
    }
    let n = &desc.n;
    let elements: Vec<GroupElement> = v2.elements().collect();
    let candidates = order.map_or_else(|| elements.clone(), <[GroupElement]>::to_vec);
    for c in &candidates {
        v2.check(c)?;
    }
    let mut chosen = Vec::new();
    if !search_clifford(n, &candidates, r, &mut chosen, &[]) {
        bail!(Defect, "no basis with all-ones off-diagonal Gram exists in V2 of rank {r}");
    }
    let e: Vec<GroupElement> = chosen.iter().map(|&i| candidates[i].clone()).collect();

    // coordinates in the e-basis: solve v = Σ v'_i e_i over F_2
    let to_e = invert_f2(&e.iter().map(bits).collect::<Vec<_>>(), r).ok_or_else(|| Error::Defect("Clifford basis is dependent".into()))?;
    let ecoords = |v: &GroupElement| -> Vec<i64> {
        let b = bits(v);
        (0..r).map(|i| ((to_e[i] & b).count_ones() & 1) as i64).collect()
    };
    // b₁(v,w) = Σ_{i>j} v'_i w'_j / 2, as a bicharacter on V₂
    let basis_e: Vec<Vec<i64>> = (0..r).map(|i| ecoords(&v2.basis_element(i))).collect();
    let nums: Vec<Vec<i64>> = (0..r)
        .map(|s| {
            (0..r)
                .map(|t| {
                    let (vs, wt) = (&basis_e[s], &basis_e[t]);
                    (0..r).map(|i| (0..i).map(|j| vs[i] * wt[j]).sum::<i64>()).sum::<i64>() % 2
                })
                .collect()
        })
        .collect();
    let b1 = Bicharacter::from_numerators(&v2, &v2, 2, &nums)?;
    let chi_b1 = Multiplier::bicharacter(b1)?;
    let diff = desc.m0.sub(&chi_b1)?;
    let split = split_symmetric(&diff, &Subgroup::whole(&v2))?;
    let twist: Vec<Phase> = elements.iter().map(|v| split.value(v).clone()).collect();
    let twisted = desc.rep.twisted(&twist)?;
    if !twisted.multiplier().same_values(&chi_b1) {
        bail!(Defect, "twisted descended multiplier differs from the Clifford form");
    }
    let operators: Vec<CMatrix<T>> = e.iter().map(|x| twisted.operator(x).to_dense()).collect();
    let dim = desc.vacuum.ncols();
    let id = CMatrix::<T>::identity(dim, dim);
    let square_residual = operators.iter().map(|u| max_abs_diff(&(u * u), &id)).fold(0.0, f64::max);
    let mut anticommutator_residual = 0.0f64;
    for i in 0..r {
        for j in 0..r {
            if i != j {
                let (a, b) = (&operators[i], &operators[j]);
                anticommutator_residual = anticommutator_residual.max(max_abs(&(a * b + b * a)));
            }
        }
    }
    let gram = e
        .iter()
        .map(|x| e.iter().map(|y| if n.eval(x, y).is_zero() { 0 } else { 1 }).collect())
        .collect();
    let units: Vec<UnitaryMatrix<T>> = operators.iter().map(|u| UnitaryMatrix::Dense(u.clone())).collect();
    let commutant_dim = commutant_of_operators(&units, dim)?;
    Ok(CliffordBasis { elements: e, twist, operators, gram, square_residual, anticommutator_residual, commutant_dim })
}

/// Rows of the inverse of the `F_2` matrix whose columns are `cols`.
fn invert_f2(cols: &[u64], r: usize) -> Option<Vec<u64>> {
    // augmented rows: row i holds bit j of column j at position j, identity after
    let mut rows: Vec<(u64, u64)> = (0..r).map(|i| (cols.iter().enumerate().fold(0, |acc, (j, &c)| acc | (((c >> i) & 1) << j)), 1u64 << i)).collect();
    for col in 0..r {
        let p = (col..r).find(|&i| (rows[i].0 >> col) & 1 == 1)?;
        rows.swap(col, p);
        for i in 0..r {
            if i != col && (rows[i].0 >> col) & 1 == 1 {
                rows[i].0 ^= rows[col].0;
                rows[i].1 ^= rows[col].1;
            }
        }
    }
    Some(rows.into_iter().map(|(_, inv)| inv).collect())
}

/// Result of [`coherent_states`].
#[derive(Clone, Debug)]
pub struct CoherentStates<T: Real> {
    pub sector_dims: Vec<usize>,
    pub commutant_dim: usize,
    pub irreducible: bool,
    /// One unit vector per sector when every sector is a line.
    pub states: Option<CMatrix<T>>,
}

/// For `L = 2L`: irreducible iff every sector is one-dimensional.
pub fn coherent_states<T: Real>(w: &ProjectiveRep<T>, l: &Subgroup) -> Result<CoherentStates<T>> {
    if l.double_image() != *l {
        bail!(Precondition, "coherent states need L = 2L; use the descent and Clifford path instead");
    }
    let s = sectors(w, l)?;
    let sector_dims = s.dims();
    let commutant_dim = commutant_d(w)?;
    let states = sector_dims.iter().all(|&d| d == 1).then(|| {
        let cols: Vec<CVector<T>> = s.bases().iter().map(|b| b.column(0).into_owned()).collect();
        columns_to_matrix(w.dim(), &cols)
    });
    Ok(CoherentStates { sector_dims, commutant_dim, irreducible: commutant_dim == 1, states })
}

/// Every structural check on one representation and subgroup.
pub fn structure_report<T: Real>(w: &ProjectiveRep<T>, l: &Subgroup, tol: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    report.extend_prefixed("law", check_rep_law_with(w, tol, DEFAULT_SEED));
    report.extend_prefixed("commutator", commutator_scalar_check_with(w, tol, DEFAULT_SEED));
    let s = sectors(w, l)?;
    report.extend_prefixed("sectors", s.verify(tol));
    let g = w.group();
    let permute_scope = if g.order() <= 64 { g.elements().collect() } else { g.generators() };
    let worst = permute_scope.iter().map(|x| s.permute_check(x, tol).max_residual()).fold(0.0, f64::max);
    report.push(Check::numeric("sectors.permute", worst, tol).with_detail(format!("{} elements", permute_scope.len())));
    if s.vacuum().ncols() > 0 {
        report.extend_prefixed("normalizer", normalizer_check(w, l, tol)?);
        let gen = generated_subspace(w, l, s.vacuum())?;
        report.push(Check::numeric("generated.projection", gen.projection_residual, tol));
    }
    Ok(report)
}

/// Largest `|λ|` deviation of a matrix from a multiple of the identity.
pub fn scalar_residual<T: Real>(u: &CMatrix<T>) -> f64 {
    let n = u.nrows();
    if n == 0 {
        return 0.0;
    }
    let c = u.trace() / Complex::new(T::of(n as f64), T::zero());
    max_abs_diff(u, &(CMatrix::<T>::identity(n, n) * c))
}

/// `min_θ max |A − exp(iθ)·B|` with `θ` from `tr(B*A)`.
pub fn phase_aligned_distance<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> f64 {
    let overlap = (b.adjoint() * a).trace();
    let z = if overlap.modulus().as_f64() < 1e-300 { Complex::new(T::one(), T::zero()) } else { overlap / Complex::new(overlap.modulus(), T::zero()) };
    max_abs_diff(a, &(b * z))
}
