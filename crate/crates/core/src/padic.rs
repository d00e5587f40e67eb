//! Finite-precision p-adic windows `p^{-k}Z_p / p^kZ_p ≅ Z/p^{2k}`.
//!
//! A window element `x = u·p^{-k}` is stored as the residue `u`; the basic
//! character gives `χ_p(x·y) = exp(2πi·uv/p^{2k})`. Results here are values of
//! a finite-precision model, not statements about `Q_p` itself.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{bail, Result};
use crate::group::{is_prime, FinAbGroup, GroupElement, Subgroup};
use crate::isotropy::polar_bicharacter;
use crate::linalg::{CMatrix, Monomial, Real, UnitaryMatrix};
use crate::multiplier::{is_heisenberg, Bicharacter, Multiplier, DEFAULT_SEED};
use crate::phase::Phase;
use crate::report::{Check, VerificationReport};
use crate::vacuum::{clifford_basis_ordered, descend, generated_subspace, normalizer_check, phase_aligned_distance, sectors, CliffordBasis, DescendedRep};
use crate::weyl::{check_rep_law_with, commutant_d, OperatorFn, ProjectiveRep, MAX_DIM};

/// Largest precision accepted by [`window_group`].
pub const MAX_PRECISION: u32 = 3;

/// `G_w = (Z/p^{2k})^{2d}` with `L_w = p^k·G_w` and the symplectic `m_w`.
#[derive(Clone, Debug)]
pub struct PAdicWindow {
    p: u64,
    k: u32,
    d: usize,
    modulus: i64,
    group: FinAbGroup,
    l: Subgroup,
    m: Multiplier,
}

/// Builds a window, checking that `L_w` is maximal isotropic for `m_w`.
pub fn window_group(p: u64, k: u32, d: usize) -> Result<PAdicWindow> {
    if !is_prime(p) {
        bail!(Input, "p = {p} is not prime");
    }
    if k == 0 || k > MAX_PRECISION {
        bail!(Input, "precision k = {k} must lie in 1..={MAX_PRECISION}");
    }
    if d == 0 {
        bail!(Input, "d must be at least 1");
    }
    let modulus = (p as i64).checked_pow(2 * k).filter(|n| *n < 1 << 31);
    let Some(modulus) = modulus else {
        bail!(Resource, "window modulus {p}^{} is too large", 2 * k);
    };
    let group = FinAbGroup::power(modulus, 2 * d);
    let pk = (p as i64).pow(k);
    let gens: Vec<Vec<i64>> = (0..2 * d).map(|i| (0..2 * d).map(|j| if i == j { pk } else { 0 }).collect()).collect();
    let l = Subgroup::from_coords(&group, &gens)?;
    let b = Bicharacter::standard_symplectic(modulus, d);
    if l.order().checked_mul(l.order()) != Some(group.order()) || polar_bicharacter(&l, &b)? != l {
        bail!(Defect, "L_w is not maximal isotropic in the window");
    }
    let m = Multiplier::bicharacter(b)?;
    Ok(PAdicWindow { p, k, d, modulus, group, l, m })
}

impl PAdicWindow {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `p^{2k}`
    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn lattice(&self) -> &Subgroup {
        &self.l
    }

    pub fn multiplier(&self) -> &Multiplier {
        &self.m
    }

    /// Dimension `p^{2kd}` of the windowed representation, if it fits in `usize`.
    pub fn rep_dim(&self) -> Option<usize> {
        (self.p as usize).checked_pow(self.k * self.d as u32)?.checked_pow(2)
    }

    /// The s-window `(Z/p^{2k})^d` indexing basis functions.
    pub fn s_window(&self) -> FinAbGroup {
        FinAbGroup::power(self.modulus, self.d)
    }

    /// `u` rendered as the window rational `u/p^k`.
    pub fn render_residue(&self, u: i64) -> String {
        let pk = (self.p as i64).pow(self.k);
        let q = Phase::from_ratio(u as i128, pk as i128);
        // Phase reduces mod 1, so add back the integer part
        let whole = u.div_euclid(pk);
        match (whole, q.is_zero()) {
            (w, true) => w.to_string(),
            (0, false) => q.to_string(),
            (w, false) => {
                let (n, den) = q.as_small().expect("small window denominators");
                format!("{}/{den}", n + w * den)
            }
        }
    }

    /// A group element rendered coordinate-wise as window rationals.
    pub fn render(&self, x: &GroupElement) -> String {
        let parts: Vec<String> = x.coords().iter().map(|&u| self.render_residue(u)).collect();
        format!("({})", parts.join(", "))
    }

    /// `ι(ξ) = 2^{k-1}·ξ` in `G_w`, the lift of `ξ ∈ F_2^{2d}` to the normalizer.
    fn iota_lift(&self, xi: &GroupElement) -> GroupElement {
        let half = (self.p as i64).pow(self.k - 1);
        GroupElement(xi.coords().iter().map(|&c| c * half).collect())
    }
}

/// `(W(y)f)(s) = χ_p(2s·y₂ + y₁·y₂)·f(s + y₁)` on functions over the s-window.
pub fn window_weyl<T: Real>(w: &PAdicWindow) -> Result<ProjectiveRep<T>> {
    let dim = match w.rep_dim() {
        Some(n) if n <= MAX_DIM => n,
        _ => bail!(Resource, "window representation dimension {}^{} exceeds {MAX_DIM}", w.p, 2 * w.k as usize * w.d),
    };
    let s = w.s_window();
    let (n, d) = (w.modulus, w.d);
    let op: OperatorFn<T> = Arc::new(move |y: &GroupElement| {
        let (y1, y2) = y.coords().split_at(d);
        let y12: i64 = y1.iter().zip(y2).map(|(a, b)| a * b % n).sum();
        let mut perm = Vec::with_capacity(dim);
        let mut phases = Vec::with_capacity(dim);
        for (r, u) in s.elements().enumerate() {
            let shifted: Vec<i64> = u.coords().iter().zip(y1).map(|(a, b)| (a + b) % n).collect();
            perm.push(s.index_of(&GroupElement(shifted)) as usize);
            let uy2: i64 = u.coords().iter().zip(y2).map(|(a, b)| a * b % n).sum();
            phases.push(Phase::from_ratio(((2 * uy2 + y12) % n) as i128, n as i128));
            debug_assert_eq!(r, perm.len() - 1);
        }
        UnitaryMatrix::Monomial(Monomial::new(perm, phases))
    });
    Ok(ProjectiveRep::new(w.m.clone(), dim, op))
}

/// Canonical vacuum basis for `p = 2`: `f_c` is the normalized indicator of
/// `u ∈ 2^{k-1}Z` with `u/2^{k-1} ≡ c (mod 2)`, for `c ∈ F_2^d` in index order.
pub fn canonical_vacuum_basis<T: Real>(w: &PAdicWindow) -> Result<CMatrix<T>> {
    if w.p != 2 {
        bail!(Input, "the canonical vacuum basis is defined for p = 2");
    }
    let s = w.s_window();
    let half = 1i64 << (w.k - 1);
    let cs = FinAbGroup::power(2, w.d);
    let dim = s.order() as usize;
    let mut basis = CMatrix::<T>::zeros(dim, cs.order() as usize);
    let norm = T::of(((1u64 << (w.k as usize * w.d)) as f64).sqrt().recip());
    for (r, u) in s.elements().enumerate() {
        if u.coords().iter().all(|c| c % half == 0) {
            let c = GroupElement(u.coords().iter().map(|x| (x / half) % 2).collect());
            basis[(r, cs.index_of(&c) as usize)] = Complex::new(norm, T::zero());
        }
    }
    Ok(basis)
}

/// `W''(a)f(c) = χ(c·a₂ + a₁·a₂)·f(c + a₁)` on `l_2(F_2^d)`.
pub fn w_double_prime<T: Real>(d: usize, a: &GroupElement) -> CMatrix<T> {
    let cs = FinAbGroup::power(2, d);
    let (a1, a2) = a.coords().split_at(d);
    let a12: i64 = a1.iter().zip(a2).map(|(x, y)| x * y).sum();
    let n = cs.order() as usize;
    let mut out = CMatrix::<T>::zeros(n, n);
    for (r, c) in cs.elements().enumerate() {
        let shifted: Vec<i64> = c.coords().iter().zip(a1).map(|(x, y)| (x + y) % 2).collect();
        let col = cs.index_of(&GroupElement(shifted)) as usize;
        let ca2: i64 = c.coords().iter().zip(a2).map(|(x, y)| x * y).sum();
        let sign = if (ca2 + a12) % 2 == 0 { T::one() } else { -T::one() };
        out[(r, col)] = Complex::new(sign, T::zero());
    }
    out
}

/// `m''(a, b) = b₁·a₂ / 2` on `F_2^d × F_2^d`.
pub fn m_double_prime(d: usize, a: &GroupElement, b: &GroupElement) -> Phase {
    let t: i64 = (0..d).map(|i| b.coords()[i] * a.coords()[d + i]).sum();
    Phase::from_ratio((t % 2) as i128, 2)
}

/// `m''~(a, b) = (b₁·a₂ − b₂·a₁) / 2`.
pub fn m_double_prime_tilde(d: usize, a: &GroupElement, b: &GroupElement) -> Phase {
    m_double_prime(d, a, b) - m_double_prime(d, b, a)
}

/// Everything computed by [`vacuum_profile`].
#[derive(Clone, Debug, Serialize)]
pub struct VacuumProfile {
    pub p: u64,
    pub k: u32,
    pub d: usize,
    pub window_modulus: i64,
    pub group_order: u64,
    pub lattice_order: u64,
    pub rep_dim: usize,
    /// `is_heisenberg(m_w)`; true exactly for odd `p`.
    pub heisenberg: bool,
    pub branch: String,
    pub sector_dims: BTreeMap<String, usize>,
    pub vacuum_dim: usize,
    pub v2_order: u64,
    pub section: Vec<String>,
    pub commutant_full: usize,
    pub commutant_descended: usize,
    pub descended_tilde_matches: Option<bool>,
    pub descended_literal_matches: Option<bool>,
    pub clifford_elements: Option<Vec<String>>,
    pub clifford_gram: Option<Vec<Vec<u8>>>,
    pub clifford_residual_max: Option<f64>,
    pub scope: String,
    pub report: VerificationReport,
}

/// Sectors, vacuum, descent and Clifford data of the windowed representation, with checks.
pub fn vacuum_profile(w: &PAdicWindow, tol: f64) -> Result<VacuumProfile> {
    let rep = window_weyl::<f64>(w)?;
    let mut report = VerificationReport::new();
    report.push(Check::exact("window.maximal_isotropic", true).with_detail(format!("|L_w| = {}, |G_w| = {}", w.l.order(), w.group.order())));
    report.extend_prefixed("window", check_rep_law_with(&rep, tol, DEFAULT_SEED));
    let heisenberg = is_heisenberg(&w.m)?;
    report.push(Check::exact("window.heisenberg_branch", heisenberg == (w.p != 2)).with_detail(format!("is_heisenberg = {heisenberg}")));

    let s = sectors(&rep, &w.l)?;
    report.extend_prefixed("sectors", s.verify(tol));
    let sector_dims: BTreeMap<String, usize> = s.labels().iter().zip(s.dims()).map(|(y, n)| (w.render(y), n)).collect();
    let vacuum_dim = s.vacuum().ncols();
    let expected_vacuum = if w.p == 2 { 1usize << w.d } else { 1 };
    report.push(Check::exact("vacuum_dim", vacuum_dim == expected_vacuum).with_detail(format!("{vacuum_dim}, expected {expected_vacuum}")));
    let permute = w.group.generators().iter().map(|x| s.permute_check(x, tol).max_residual()).fold(0.0, f64::max);
    report.push(Check::numeric("sectors.permute", permute, tol).with_detail("generators of G_w"));
    report.extend_prefixed("normalizer", normalizer_check(&rep, &w.l, tol)?);
    let gen = generated_subspace(&rep, &w.l, s.vacuum())?;
    report.push(Check::numeric("generated.projection", gen.projection_residual, tol).with_detail(format!("generated dimension {}", gen.basis.ncols())));

    let desc = descend(&rep, &w.l)?;
    let v2_order = desc.v2().order();
    let expected_v2 = if w.p == 2 { 1u64 << (2 * w.d) } else { 1 };
    report.push(Check::exact("v2_order", v2_order == expected_v2).with_detail(format!("{v2_order}, expected {expected_v2}")));
    report.push(Check::exact("descended.lift", desc.lift_matches));
    report.extend_prefixed("descended", check_rep_law_with(&desc.rep, tol, DEFAULT_SEED));
    let commutant_full = commutant_d(&rep)?;
    let commutant_descended = commutant_d(&desc.rep)?;
    report.push(Check::exact("descended.irreducible", commutant_descended == 1).with_detail(format!("commutant dimension {commutant_descended}")));

    let mut profile = VacuumProfile {
        p: w.p,
        k: w.k,
        d: w.d,
        window_modulus: w.modulus,
        group_order: w.group.order(),
        lattice_order: w.l.order(),
        rep_dim: rep.dim(),
        heisenberg,
        branch: if heisenberg { "heisenberg: odd p, vacuum is a point".into() } else { "non-heisenberg: p = 2, descend to F_2^(2d)".into() },
        sector_dims,
        vacuum_dim,
        v2_order,
        section: desc.section().iter().map(|x| w.render(x)).collect(),
        commutant_full,
        commutant_descended,
        descended_tilde_matches: None,
        descended_literal_matches: None,
        clifford_elements: None,
        clifford_gram: None,
        clifford_residual_max: None,
        scope: "finite-precision model: window values, not Q_p statements".into(),
        report: VerificationReport::new(),
    };

    if w.p == 2 {
        report.push(
            Check::exact("window.reducible", commutant_full > 1)
                .with_detail(format!("commutant dimension {commutant_full}; expected above 1 at p = 2")),
        );
        let f2 = FinAbGroup::power(2, 2 * w.d);
        let xis: Vec<GroupElement> = f2.elements().collect();
        let iota: Vec<GroupElement> = xis.iter().map(|xi| desc.quotient.project(&w.iota_lift(xi))).collect();
        let tilde = xis.iter().zip(&iota).all(|(a, ia)| xis.iter().zip(&iota).all(|(b, ib)| desc.n.eval(ia, ib) == m_double_prime_tilde(w.d, a, b)));
        let literal = xis.iter().zip(&iota).all(|(a, ia)| xis.iter().zip(&iota).all(|(b, ib)| desc.m0.eval(ia, ib) == m_double_prime(w.d, a, b)));
        report.push(Check::exact("descended.tilde_matches_reference_form", tilde));
        profile.descended_tilde_matches = Some(tilde);
        profile.descended_literal_matches = Some(literal);

        let (w_dist, e_check, c) = compare_with_w_double_prime(w, &desc, &xis, &iota)?;
        report.push(Check::numeric("descended.matches_w''_up_to_phase", w_dist, tol).with_detail("canonical vacuum basis"));
        report.extend_prefixed("fermion", c.report(tol));
        if let Some(pauli) = e_check {
            report.push(Check::numeric("fermion.pauli_pair", pauli, tol).with_detail("E_1 ~ swap, E_2 ~ diag(1,-1)"));
        }
        profile.clifford_elements = Some(c.elements.iter().map(|x| desc_render(w, &desc, x)).collect());
        profile.clifford_gram = Some(c.gram.clone());
        profile.clifford_residual_max = Some(c.residual());
    } else {
        report.push(
            Check::exact("window.irreducible_iff_point", (commutant_full == 1) == (vacuum_dim == 1))
                .with_detail(format!("commutant dimension {commutant_full}, vacuum dimension {vacuum_dim}")),
        );
        let uniform = s.dims().iter().all(|&n| n == vacuum_dim);
        report.push(Check::exact("sectors.regular_multiplicity", uniform).with_detail("every character of L_w appears with multiplicity dim H^L"));
    }
    profile.report = report;
    Ok(profile)
}

fn desc_render(w: &PAdicWindow, desc: &DescendedRep<f64>, v: &GroupElement) -> String {
    w.render(desc.quotient.section(v))
}

/// Max phase-aligned distance between `W₀(ιa)` and `W''(a)` in the canonical
/// basis, the Pauli comparison for `d = 1`, and the Clifford basis in `ι` order.
fn compare_with_w_double_prime(
    w: &PAdicWindow,
    desc: &DescendedRep<f64>,
    xis: &[GroupElement],
    iota: &[GroupElement],
) -> Result<(f64, Option<f64>, CliffordBasis<f64>)> {
    let f = canonical_vacuum_basis::<f64>(w)?;
    // change of basis from the computed vacuum basis to the f_c
    let u = f.adjoint() * &desc.vacuum;
    let to_canonical = |x: &CMatrix<f64>| &u * x * u.adjoint();
    let mut dist = 0.0f64;
    for (xi, v) in xis.iter().zip(iota) {
        let w0 = to_canonical(&desc.rep.operator(v).to_dense());
        dist = dist.max(phase_aligned_distance(&w0, &w_double_prime(w.d, xi)));
    }
    let ordered: Vec<GroupElement> = iota.to_vec();
    let c = clifford_basis_ordered(desc, Some(&ordered))?;
    let pauli = (w.d == 1).then(|| {
        let swap = w_double_prime::<f64>(1, &GroupElement(vec![1, 0]));
        let diag = w_double_prime::<f64>(1, &GroupElement(vec![0, 1]));
        phase_aligned_distance(&to_canonical(&c.operators[0]), &swap).max(phase_aligned_distance(&to_canonical(&c.operators[1]), &diag))
    });
    Ok((dist, pauli, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vacuum::vacuum;

    #[test]
    fn window_construction() {
        let w = window_group(3, 1, 1).unwrap();
        assert_eq!(w.group().moduli(), &[9, 9]);
        assert_eq!(w.lattice().order(), 9);
        let w = window_group(2, 1, 1).unwrap();
        assert_eq!(w.group().moduli(), &[4, 4]);
        let mut l: Vec<Vec<i64>> = w.lattice().elements().iter().map(|x| x.coords().to_vec()).collect();
        l.sort();
        assert_eq!(l, vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]]);
        let w = window_group(2, 2, 2).unwrap();
        assert_eq!(w.group().order(), 65536);
        assert_eq!(w.lattice().order(), 256);
        assert!(matches!(window_group(4, 1, 1), Err(crate::Error::Input(_))));
        assert!(window_group(2, 0, 1).is_err());
    }

    #[test]
    fn rendering_uses_window_rationals() {
        let w = window_group(2, 1, 1).unwrap();
        assert_eq!(w.render(&GroupElement(vec![1, 2])), "(1/2, 1)");
        assert_eq!(w.render(&GroupElement(vec![3, 0])), "(3/2, 0)");
    }

    #[test]
    fn window_operators_for_two() {
        let w = window_group(2, 1, 1).unwrap();
        let rep = window_weyl::<f64>(&w).unwrap();
        assert_eq!(rep.dim(), 4);
        let z = rep.operator(&GroupElement(vec![0, 1])).to_dense();
        let expect = CMatrix::<f64>::from_diagonal(&nalgebra::DVector::from_vec(
            [1.0, -1.0, 1.0, -1.0].iter().map(|&x| Complex::new(x, 0.0)).collect(),
        ));
        assert!(crate::linalg::max_abs_diff(&z, &expect) < 1e-12);
        let x = rep.operator(&GroupElement(vec![1, 0]));
        let m = x.as_monomial().unwrap();
        assert_eq!(m.perm(), &[1, 2, 3, 0]);
        assert!(m.phases().iter().all(Phase::is_zero));
        assert!(rep.operator(&w.group().zero()).as_monomial().unwrap().exactly_equals(&Monomial::identity(4)));
    }

    #[test]
    fn window_law_is_exact() {
        let w = window_group(3, 1, 1).unwrap();
        let rep = window_weyl::<f64>(&w).unwrap();
        let g = w.group();
        for x in g.elements() {
            let wx = rep.operator(&x).as_monomial().unwrap().clone();
            for y in g.elements() {
                let lhs = wx.compose(rep.operator(&y).as_monomial().unwrap());
                let rhs = rep.operator(&g.add(&x, &y)).as_monomial().unwrap().times_phase(&w.multiplier().eval(&x, &y));
                assert!(lhs.exactly_equals(&rhs), "{x} {y}");
            }
        }
    }

    #[test]
    fn vacuum_dimensions() {
        for (p, k, d, want) in [(3, 1, 1, 1), (2, 1, 1, 2), (2, 2, 1, 2), (2, 1, 2, 4)] {
            let w = window_group(p, k, d).unwrap();
            let rep = window_weyl::<f64>(&w).unwrap();
            assert_eq!(vacuum(&rep, w.lattice()).unwrap().ncols(), want, "({p},{k},{d})");
        }
    }

    #[test]
    fn two_window_sectors_do_not_move() {
        let w = window_group(2, 1, 1).unwrap();
        let rep = window_weyl::<f64>(&w).unwrap();
        let s = sectors(&rep, w.lattice()).unwrap();
        assert_eq!(s.vacuum().ncols(), 2);
        assert_eq!(s.dims().iter().sum::<usize>(), 4);
        for x in w.group().elements() {
            let r = s.permute_check(&x, 1e-9);
            assert!(r.all_pass());
            // the target label [y+2x] is [y]
            assert!(w.lattice().contains(&w.group().double(&x)));
        }
        let n = normalizer_check(&rep, w.lattice(), 1e-9).unwrap();
        assert!(n.all_pass());
        assert!(n.get("outside moves vacuum").unwrap().detail.as_deref().unwrap().contains("vacuous"));
        let gen = generated_subspace(&rep, w.lattice(), s.vacuum()).unwrap();
        assert_eq!(gen.basis.ncols(), 2);
    }

    #[test]
    fn deeper_window_has_a_proper_normalizer() {
        let w = window_group(2, 2, 1).unwrap();
        let rep = window_weyl::<f64>(&w).unwrap();
        let n = normalizer_check(&rep, w.lattice(), 1e-9).unwrap();
        assert!(n.all_pass(), "{n}");
        assert!(!n.get("outside moves vacuum").unwrap().detail.as_deref().unwrap().contains("vacuous"));
    }

    #[test]
    fn pauli_pair_on_the_smallest_two_window() {
        let w = window_group(2, 1, 1).unwrap();
        let rep = window_weyl::<f64>(&w).unwrap();
        let desc = descend(&rep, w.lattice()).unwrap();
        assert_eq!(desc.v2().order(), 4);
        let f = canonical_vacuum_basis::<f64>(&w).unwrap();
        let u = f.adjoint() * &desc.vacuum;
        let w0 = |x: Vec<i64>| &u * desc.rep.operator(&desc.quotient.project(&GroupElement(x))).to_dense() * u.adjoint();
        let diag = w_double_prime::<f64>(1, &GroupElement(vec![0, 1]));
        let swap = w_double_prime::<f64>(1, &GroupElement(vec![1, 0]));
        assert!(phase_aligned_distance(&w0(vec![0, 1]), &diag) < 1e-9);
        assert!(phase_aligned_distance(&w0(vec![1, 0]), &swap) < 1e-9);
    }

    #[test]
    fn profiles() {
        let p3 = vacuum_profile(&window_group(3, 1, 1).unwrap(), 1e-9).unwrap();
        assert!(p3.report.all_pass(), "{}", p3.report);
        assert_eq!(p3.vacuum_dim, 1);
        assert!(p3.heisenberg);
        assert_eq!(p3.commutant_full, 1);
        let p2 = vacuum_profile(&window_group(2, 1, 1).unwrap(), 1e-9).unwrap();
        assert!(p2.report.all_pass(), "{}", p2.report);
        assert_eq!(p2.vacuum_dim, 2);
        assert_eq!(p2.v2_order, 4);
        assert!(!p2.heisenberg);
        assert_eq!(p2.commutant_full, 2);
        assert_eq!(p2.commutant_descended, 1);
        assert_eq!(p2.descended_tilde_matches, Some(true));
        assert!(p2.clifford_residual_max.unwrap() <= 1e-9);
        let p4 = vacuum_profile(&window_group(2, 1, 2).unwrap(), 1e-9).unwrap();
        assert!(p4.report.all_pass(), "{}", p4.report);
        assert_eq!((p4.vacuum_dim, p4.v2_order), (4, 16));
    }

    #[test]
    fn reference_forms_on_f2() {
        let a = GroupElement(vec![1, 0]);
        let b = GroupElement(vec![0, 1]);
        assert_eq!(m_double_prime(1, &a, &b), Phase::zero());
        assert_eq!(m_double_prime(1, &b, &a), Phase::from_ratio(1, 2));
        assert_eq!(m_double_prime_tilde(1, &a, &b), Phase::from_ratio(1, 2));
        let x = w_double_prime::<f64>(1, &a);
        assert!(crate::linalg::max_abs_diff(&(&x * &x), &CMatrix::identity(2, 2)) < 1e-12);
    }
}
