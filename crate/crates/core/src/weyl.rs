//! Projective representations and their concrete models.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{bail, Result};
use crate::group::{FinAbGroup, GroupElement, Subgroup};
use crate::isotropy::polar_bicharacter;
use crate::linalg::{max_abs_diff, nullspace, CMatrix, Monomial, Real, UnitaryMatrix};
use crate::multiplier::{antisymmetrize, twist, Multiplier, Pairing, SplittingData, DEFAULT_SEED};
use crate::phase::Phase;
use crate::report::{Check, VerificationReport};

/// Largest representation dimension handled.
pub const MAX_DIM: usize = 4096;
/// Groups up to this order get exhaustive pair checks.
pub const EXHAUSTIVE_PAIR_LIMIT: u64 = 512;
/// Random pairs tested above [`EXHAUSTIVE_PAIR_LIMIT`].
pub const SAMPLED_PAIRS: usize = 4096;
/// Largest `dim1·dim2` for the dense intertwiner solve.
pub const DENSE_INTERTWINER_LIMIT: usize = 4096;

pub type OperatorFn<T> = Arc<dyn Fn(&GroupElement) -> UnitaryMatrix<T> + Send + Sync>;

/// `x ↦ W(x)` with `W(x)W(y) = exp(2πi·m(x,y))·W(x+y)`.
#[derive(Clone)]
pub struct ProjectiveRep<T: Real> {
    group: FinAbGroup,
    multiplier: Multiplier,
    dim: usize,
    op: OperatorFn<T>,
    general_branch: bool,
}

impl<T: Real> fmt::Debug for ProjectiveRep<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjectiveRep(dim {} of {:?})", self.dim, self.multiplier)
    }
}

impl<T: Real> ProjectiveRep<T> {
    /// Wraps an operator function; nothing is verified.
    pub fn new(multiplier: Multiplier, dim: usize, op: OperatorFn<T>) -> Self {
        ProjectiveRep { group: multiplier.group().clone(), multiplier, dim, op, general_branch: false }
    }

    /// Operators listed in index order of the group.
    pub fn from_operators(multiplier: Multiplier, ops: Vec<UnitaryMatrix<T>>) -> Result<Self> {
        let g = multiplier.group().clone();
        if ops.len() as u64 != g.order() {
            bail!(Input, "expected {} operators, got {}", g.order(), ops.len());
        }
        let dim = ops.first().map_or(0, |o| o.dim());
        if ops.iter().any(|o| o.dim() != dim) {
            bail!(Input, "operators have different dimensions");
        }
        let ops = Arc::new(ops);
        let op: OperatorFn<T> = Arc::new(move |x| ops[g.index_of(x) as usize].clone());
        Ok(Self::new(multiplier, dim, op))
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn multiplier(&self) -> &Multiplier {
        &self.multiplier
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Built with the covariance for multipliers that are not alternating bicharacters.
    pub fn general_branch(&self) -> bool {
        self.general_branch
    }

    pub fn operator(&self, x: &GroupElement) -> UnitaryMatrix<T> {
        (self.op)(x)
    }

    pub fn operator_fn(&self) -> &OperatorFn<T> {
        &self.op
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        self.group.generators()
    }

    /// Same representation with `W(x)` replaced by `u`.
    pub fn with_operator_replaced(&self, x: &GroupElement, u: UnitaryMatrix<T>) -> Self {
        let (inner, x, u) = (self.op.clone(), x.clone(), Arc::new(u));
        let op: OperatorFn<T> = Arc::new(move |y| if *y == x { (*u).clone() } else { inner(y) });
        ProjectiveRep { op, ..self.clone() }
    }

    /// `x ↦ exp(2πi·a(x))·W(x)`, a representation of `twist(m, a)`; `a` in index order.
    pub fn twisted(&self, a: &[Phase]) -> Result<Self> {
        let m = twist(&self.multiplier, a)?;
        let (inner, a, g) = (self.op.clone(), Arc::new(a.to_vec()), self.group.clone());
        let op: OperatorFn<T> = Arc::new(move |x| inner(x).times_phase(&a[g.index_of(x) as usize]));
        Ok(ProjectiveRep { multiplier: m, op, ..self.clone() })
    }

    /// Keeps the operators but relabels the multiplier (for equal-valued multipliers).
    pub fn with_multiplier(&self, m: Multiplier) -> Result<Self> {
        if !m.same_values(&self.multiplier) {
            bail!(Input, "replacement multiplier has different values");
        }
        Ok(ProjectiveRep { multiplier: m, ..self.clone() })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.group != other.group || !self.multiplier.same_values(&other.multiplier) {
            bail!(Input, "direct sums need equal multipliers");
        }
        let (a, b) = (self.op.clone(), other.op.clone());
        let op: OperatorFn<T> = Arc::new(move |x| a(x).direct_sum(&b(x)));
        Ok(ProjectiveRep {
            dim: self.dim + other.dim,
            op,
            general_branch: self.general_branch || other.general_branch,
            ..self.clone()
        })
    }

    /// Operators for every element, in index order.
    pub fn all_operators(&self) -> Vec<UnitaryMatrix<T>> {
        let els: Vec<GroupElement> = self.group.elements().collect();
        els.par_iter().map(|x| self.operator(x)).collect()
    }
}

/// Pairs used by the pairwise checks: all of them for small groups, otherwise
/// generator pairs plus a seeded random sample.
fn check_pairs(g: &FinAbGroup, seed: u64) -> (Vec<(u64, u64)>, bool) {
    let n = g.order();
    if n <= EXHAUSTIVE_PAIR_LIMIT {
        return ((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect(), true);
    }
    let gens: Vec<u64> = g.generators().iter().map(|x| g.index_of(x)).collect();
    let mut pairs: Vec<(u64, u64)> = gens.iter().flat_map(|&i| gens.iter().map(move |&j| (i, j))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pairs.extend((0..SAMPLED_PAIRS).map(|_| (rng.random_range(0..n), rng.random_range(0..n))));
    (pairs, false)
}

/// Larger residual wins, ties go to the earlier pair, so parallel reduction is deterministic.
fn worse(a: (f64, u64, u64), b: (f64, u64, u64)) -> (f64, u64, u64) {
    match b.0.partial_cmp(&a.0) {
        Some(std::cmp::Ordering::Greater) => b,
        Some(std::cmp::Ordering::Equal) if (b.1, b.2) < (a.1, a.2) => b,
        None if b.0.is_nan() => b,
        _ => a,
    }
}

fn pair_mode(exhaustive: bool, count: usize, seed: u64) -> String {
    if exhaustive {
        format!("exhaustive over {count} pairs")
    } else {
        format!("{count} pairs, seed {seed}")
    }
}

/// Operator lookup that caches every operator of small groups.
struct Operators<'a, T: Real> {
    rep: &'a ProjectiveRep<T>,
    cache: Option<Vec<UnitaryMatrix<T>>>,
}

impl<'a, T: Real> Operators<'a, T> {
    fn new(rep: &'a ProjectiveRep<T>) -> Self {
        let small = rep.group.order() <= EXHAUSTIVE_PAIR_LIMIT;
        Operators { rep, cache: small.then(|| rep.all_operators()) }
    }

    fn get(&self, i: u64) -> UnitaryMatrix<T> {
        match &self.cache {
            Some(c) => c[i as usize].clone(),
            None => self.rep.operator(&self.rep.group.element_at(i)),
        }
    }
}

/// Identity at 0, unitarity and `W(x)W(y) = m(x,y)·W(x+y)`.
pub fn check_rep_law<T: Real>(w: &ProjectiveRep<T>) -> VerificationReport {
    check_rep_law_with(w, T::LAW_TOLERANCE, DEFAULT_SEED)
}

pub fn check_rep_law_with<T: Real>(w: &ProjectiveRep<T>, tol: f64, seed: u64) -> VerificationReport {
    let g = &w.group;
    let ops = Operators::new(w);
    let mut report = VerificationReport::new();
    let id = w.operator(&g.zero()).distance(&UnitaryMatrix::identity(w.dim));
    report.push(Check::numeric("identity", id, tol));
    let (pairs, exhaustive) = check_pairs(g, seed);
    let mut touched: Vec<u64> = pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
    touched.sort_unstable();
    touched.dedup();
    let unit = touched.par_iter().map(|&i| ops.get(i).unitarity_defect()).reduce(|| 0.0, f64::max);
    report.push(Check::numeric("unitarity", unit, tol));
    let worst = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (g.element_at(i), g.element_at(j));
            let lhs = ops.get(i).mul(&ops.get(j));
            let rhs = ops.get(g.index_of(&g.add(&x, &y))).times_phase(&w.multiplier.eval(&x, &y));
            (lhs.distance(&rhs), i, j)
        })
        .reduce(|| (0.0, 0, 0), worse);
    let mut law = Check::numeric("law", worst.0, tol).with_detail(pair_mode(exhaustive, pairs.len(), seed));
    if !law.pass {
        law = law.with_witness([g.element_at(worst.1), g.element_at(worst.2)]);
    }
    report.push(law);
    report
}

/// `W(x)W(y)W(x)⁻¹W(y)⁻¹ = exp(2πi·m~(x,y))·1`.
pub fn commutator_scalar_check<T: Real>(w: &ProjectiveRep<T>) -> VerificationReport {
    commutator_scalar_check_with(w, T::LAW_TOLERANCE, DEFAULT_SEED)
}

pub fn commutator_scalar_check_with<T: Real>(w: &ProjectiveRep<T>, tol: f64, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let tilde = match antisymmetrize(&w.multiplier) {
        Ok(t) => t,
        Err(e) => {
            report.push(Check::exact("commutator", false).with_detail(e.to_string()));
            return report;
        }
    };
    let g = &w.group;
    let ops = Operators::new(w);
    let (pairs, exhaustive) = check_pairs(g, seed);
    let worst = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (ops.get(i), ops.get(j));
            let c = a.mul(&b).mul(&a.inverse()).mul(&b.inverse());
            let expected = UnitaryMatrix::scalar(w.dim, tilde.eval(&g.element_at(i), &g.element_at(j)));
            (c.distance(&expected), i, j)
        })
        .reduce(|| (0.0, 0, 0), worse);
    let mut c = Check::numeric("commutator", worst.0, tol).with_detail(pair_mode(exhaustive, pairs.len(), seed));
    if !c.pass {
        c = c.with_witness([g.element_at(worst.1), g.element_at(worst.2)]);
    }
    report.push(c);
    report
}

/// Finite Schrödinger model of `A × B` for a nondegenerate pairing `⟨·,·⟩ : A × B → Q/Z`.
///
/// Acts on functions over `B` by `(W(a,b)f)(t) = ⟨a,t⟩·f(t+b)`, so that
/// `W(a,0)` is diagonal, `W(0,b)` is a translation and the multiplier is
/// `m((a,b),(a',b')) = ⟨a',b⟩`.
pub fn schrodinger_model<T: Real>(pairing: &Pairing) -> Result<ProjectiveRep<T>> {
    if !pairing.is_nondegenerate() {
        bail!(Input, "Schrödinger model needs a nondegenerate pairing");
    }
    let (a, b) = (pairing.left().clone(), pairing.right().clone());
    let dim = b.order() as usize;
    if dim > MAX_DIM {
        bail!(Resource, "model dimension {dim} exceeds {MAX_DIM}");
    }
    let m = Multiplier::weyl_product(pairing.clone());
    let p = pairing.clone();
    let ra = a.rank();
    let points: Arc<Vec<GroupElement>> = Arc::new(b.elements().collect());
    let op: OperatorFn<T> = Arc::new(move |x| {
        let xa = a.element(&x.coords()[..ra]).expect("rank");
        let xb = b.element(&x.coords()[ra..]).expect("rank");
        let perm = points.iter().map(|t| b.index_of(&b.add(t, &xb)) as usize).collect();
        let phases = points.iter().map(|t| p.eval(&xa, t)).collect();
        UnitaryMatrix::Monomial(Monomial::new(perm, phases))
    });
    Ok(ProjectiveRep::new(m, dim, op))
}

/// The model on `A`-covariant functions, `f(x+a) = exp(−2πi(m(a,x) + c(a)))·f(x)`,
/// with `(W(y)f)(x) = exp(2πi·m(x,y))·f(x+y)`, realized on coset representatives.
///
/// For an alternating bicharacter the covariance is `f(x+a) = m(x,a)·c(a)⁻¹·f(x)`.
pub fn induced_model<T: Real>(m: &Multiplier, a: &Subgroup, c: &SplittingData) -> Result<ProjectiveRep<T>> {
    let g = m.group().clone();
    if a.ambient() != &g || c.subgroup() != a {
        bail!(Input, "subgroup and splitting must live in {g}");
    }
    if !m.is_cocycle() {
        bail!(Precondition, "multiplier is not a cocycle");
    }
    let tilde = antisymmetrize(m)?;
    if polar_bicharacter(a, &tilde)? != *a {
        bail!(Precondition, "subgroup is not maximal isotropic for the antisymmetrized multiplier");
    }
    for x in c.elements() {
        for y in c.elements() {
            let lhs = c.value(&g.add(x, y)) - c.value(x) - c.value(y);
            if lhs != m.eval(y, x) {
                bail!(Precondition, "covariance is inconsistent at ({x}, {y}): c(x+y) - c(x) - c(y) != m(y, x)");
            }
        }
    }
    let q = Arc::new(Subgroup::whole(&g).quotient(a)?);
    let dim = q.group().order() as usize;
    if dim > MAX_DIM {
        bail!(Resource, "model dimension {dim} exceeds {MAX_DIM}");
    }
    let general = !m.as_bicharacter().is_some_and(|b| b.is_alternating());
    let (m2, c2) = (m.clone(), Arc::new(c.clone()));
    let op: OperatorFn<T> = Arc::new(move |y| {
        let reps = q.representatives();
        let mut perm = Vec::with_capacity(reps.len());
        let mut phases = Vec::with_capacity(reps.len());
        for r in reps {
            let s = g.add(r, y);
            let k = q.group().index_of(&q.project(&s)) as usize;
            let r2 = &reps[k];
            let shift = g.sub(&s, r2);
            perm.push(k);
            phases.push(m2.eval(r, y) - m2.eval(&shift, r2) - c2.value(&shift));
        }
        UnitaryMatrix::Monomial(Monomial::new(perm, phases))
    });
    let mut rep = ProjectiveRep::new(m.clone(), dim, op);
    rep.general_branch = general;
    Ok(rep)
}

/// Basis of `{T : T·W1(g) = W2(g)·T}`, orthonormal for the Frobenius inner product.
#[derive(Clone, Debug)]
pub struct Intertwiners<T: Real> {
    pub dimension: usize,
    pub basis: Vec<CMatrix<T>>,
    pub exact: bool,
}

impl<T: Real> Intertwiners<T> {
    /// `‖U*U − I‖_max` for the single basis element rescaled to unit columns,
    /// or `None` if the space is not 1-dimensional.
    pub fn normalized_unitary_defect(&self) -> Option<f64> {
        if self.dimension != 1 {
            return None;
        }
        let t = &self.basis[0];
        let (rows, cols) = t.shape();
        let scale = T::of((cols as f64).sqrt());
        let u = t * num_complex::Complex::new(scale, T::zero());
        let id = CMatrix::<T>::identity(cols, cols);
        (rows == cols).then(|| max_abs_diff(&(u.adjoint() * &u), &id))
    }
}

fn generator_operators<T: Real>(w: &ProjectiveRep<T>) -> Vec<UnitaryMatrix<T>> {
    w.generators().iter().map(|g| w.operator(g)).collect()
}

/// Dimension of the commutant `{X : X·W(g) = W(g)·X}` over group generators.
pub fn commutant_d<T: Real>(w: &ProjectiveRep<T>) -> Result<usize> {
    if w.dim > MAX_DIM {
        bail!(Resource, "commutant of a {}-dimensional representation exceeds the limit {MAX_DIM}", w.dim);
    }
    let gens = generator_operators(w);
    Ok(solve_intertwiners(&gens, &gens, w.dim, w.dim, false)?.dimension)
}

/// Dimension of `{X : X·U = U·X}` for a list of `dim × dim` operators.
pub fn commutant_of_operators<T: Real>(ops: &[UnitaryMatrix<T>], dim: usize) -> Result<usize> {
    if dim > MAX_DIM {
        bail!(Resource, "commutant of {dim}-dimensional operators exceeds the limit {MAX_DIM}");
    }
    Ok(solve_intertwiners(ops, ops, dim, dim, false)?.dimension)
}

/// Intertwiners from `w1` to `w2`; the multipliers must agree exactly.
pub fn intertwiner<T: Real>(w1: &ProjectiveRep<T>, w2: &ProjectiveRep<T>) -> Result<Intertwiners<T>> {
    if w1.group != w2.group {
        bail!(Input, "representations of different groups");
    }
    if !w1.multiplier.same_values(&w2.multiplier) {
        bail!(Input, "intertwiners need equal multipliers; align them with a twist first");
    }
    if w1.dim.max(w2.dim) > MAX_DIM {
        bail!(Resource, "representation dimension exceeds {MAX_DIM}");
    }
    solve_intertwiners(&generator_operators(w1), &generator_operators(w2), w1.dim, w2.dim, true)
}

fn solve_intertwiners<T: Real>(
    g1: &[UnitaryMatrix<T>],
    g2: &[UnitaryMatrix<T>],
    n1: usize,
    n2: usize,
    want_basis: bool,
) -> Result<Intertwiners<T>> {
    let mono1: Option<Vec<&Monomial>> = g1.iter().map(|u| u.as_monomial()).collect();
    let mono2: Option<Vec<&Monomial>> = g2.iter().map(|u| u.as_monomial()).collect();
    if let (Some(a), Some(b)) = (mono1, mono2) {
        if let Some(res) = monomial_intertwiners(&a, &b, n1, n2, want_basis) {
            return Ok(res);
        }
    }
    if n1 * n2 > DENSE_INTERTWINER_LIMIT {
        bail!(Resource, "dense intertwiner system with {} unknowns exceeds {DENSE_INTERTWINER_LIMIT}", n1 * n2);
    }
    Ok(dense_intertwiners(g1, g2, n1, n2))
}

/// `T W1 = W2 T` stacked as `(W1ᵀ ⊗ I − I ⊗ W2)·vec(T) = 0`.
fn dense_intertwiners<T: Real>(g1: &[UnitaryMatrix<T>], g2: &[UnitaryMatrix<T>], n1: usize, n2: usize) -> Intertwiners<T> {
    let unknowns = n1 * n2;
    if g1.is_empty() {
        let basis = (0..unknowns)
            .map(|k| {
                let mut t = CMatrix::<T>::zeros(n2, n1);
                t[(k % n2, k / n2)] = num_complex::Complex::new(T::one(), T::zero());
                t
            })
            .collect();
        return Intertwiners { dimension: unknowns, basis, exact: false };
    }
    let mut system = CMatrix::<T>::zeros(unknowns * g1.len(), unknowns);
    for (k, (a, b)) in g1.iter().zip(g2).enumerate() {
        let block = a.to_dense().transpose().kronecker(&CMatrix::<T>::identity(n2, n2))
            - CMatrix::<T>::identity(n1, n1).kronecker(&b.to_dense());
        system.view_mut((k * unknowns, 0), (unknowns, unknowns)).copy_from(&block);
    }
    let null = nullspace(&system, T::RANK_THRESHOLD);
    let basis = (0..null.ncols()).map(|j| CMatrix::<T>::from_column_slice(n2, n1, null.column(j).as_slice())).collect();
    Intertwiners { dimension: null.ncols(), basis, exact: false }
}

/// Exact solve for monomial generators: the relations
/// `T_ij = exp(2πi(ψ_i − φ_j))·T_{σ(i),π(j)}` tie entries along orbits of
/// index pairs; each orbit without a phase contradiction carries one basis element.
fn monomial_intertwiners<T: Real>(
    g1: &[&Monomial],
    g2: &[&Monomial],
    n1: usize,
    n2: usize,
    want_basis: bool,
) -> Option<Intertwiners<T>> {
    let mut den = BigInt::one();
    for m in g1.iter().chain(g2) {
        for p in m.phases() {
            den = den.lcm(&p.denom());
        }
    }
    let den = den.to_i64().filter(|&d| d < 1 << 40)?;
    let num = |p: &Phase| -> i64 {
        let (n, d) = p.as_small().expect("denominator divides a small lcm");
        n * (den / d)
    };
    let phi1: Vec<Vec<i64>> = g1.iter().map(|m| m.phases().iter().map(num).collect()).collect();
    let phi2: Vec<Vec<i64>> = g2.iter().map(|m| m.phases().iter().map(num).collect()).collect();
    let inv1: Vec<Vec<usize>> = g1.iter().map(|m| invert(m.perm())).collect();
    let inv2: Vec<Vec<usize>> = g2.iter().map(|m| invert(m.perm())).collect();
    let nodes = n1 * n2;
    let mut theta = vec![-1i64; nodes];
    let mut dimension = 0;
    let mut basis = Vec::new();
    let mut queue = VecDeque::new();
    for root in 0..nodes {
        if theta[root] >= 0 {
            continue;
        }
        theta[root] = 0;
        queue.push_back(root);
        let mut members = vec![root];
        let mut consistent = true;
        while let Some(node) = queue.pop_front() {
            let (i, j) = (node / n1, node % n1);
            let t = theta[node];
            for k in 0..g1.len() {
                let (s, p) = (g2[k].perm(), g1[k].perm());
                // forward: T_{σ(i),π(j)} = exp(−(ψ_i − φ_j))·T_ij
                let fwd = (s[i] * n1 + p[j], (t - phi2[k][i] + phi1[k][j]).rem_euclid(den));
                // backward: T_{i',j'} = exp(ψ_{i'} − φ_{j'})·T_ij with σ(i') = i, π(j') = j
                let (bi, bj) = (inv2[k][i], inv1[k][j]);
                let bwd = (bi * n1 + bj, (t + phi2[k][bi] - phi1[k][bj]).rem_euclid(den));
                for (next, val) in [fwd, bwd] {
                    if theta[next] < 0 {
                        theta[next] = val;
                        members.push(next);
                        queue.push_back(next);
                    } else if theta[next] != val {
                        consistent = false;
                    }
                }
            }
        }
        if consistent {
            dimension += 1;
            if want_basis {
                let mut t = CMatrix::<T>::zeros(n2, n1);
                let norm = T::of(1.0 / (members.len() as f64).sqrt());
                for &node in &members {
                    let z: num_complex::Complex<T> = crate::linalg::root_of_unity(&Phase::from_ratio(theta[node] as i128, den as i128));
                    t[(node / n1, node % n1)] = z * norm;
                }
                basis.push(t);
            }
        }
    }
    Some(Intertwiners { dimension, basis, exact: true })
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// `|G|⁻¹ Σ_g |tr W(g)|²`, the commutant dimension by character theory.
pub fn commutant_dim_by_characters<T: Real>(w: &ProjectiveRep<T>) -> f64 {
    let n = w.group.order();
    let total: f64 = w.all_operators().par_iter().map(|u| u.trace().norm_sqr().as_f64()).sum();
    total / n as f64
}
