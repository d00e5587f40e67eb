//! Polars and (maximal) isotropic subgroups.

use std::collections::HashSet;

use crate::error::{bail, Result};
use crate::group::{FinAbGroup, GroupElement, Subgroup};
use crate::int::IntMatrix;
use crate::multiplier::{antisymmetrize, Bicharacter, Multiplier};

/// Largest group scanned by [`polar_enumerated`].
pub const POLAR_ENUMERATION_LIMIT: u64 = 100_000;

fn check_ambient(a: &Subgroup, g: &FinAbGroup) -> Result<()> {
    if a.ambient() != g {
        bail!(Input, "subgroup lives in {}, multiplier on {g}", a.ambient());
    }
    Ok(())
}

/// `{x : β(x,a) = 0 ∀a ∈ A}` by integer linear algebra.
pub fn polar_bicharacter(a: &Subgroup, beta: &Bicharacter) -> Result<Subgroup> {
    if !beta.is_square() {
        bail!(Input, "polars need a bicharacter on G x G");
    }
    let g = beta.group();
    check_ambient(a, g)?;
    let gens = a.basis_generators();
    let r = g.rank();
    let den = beta.denominator();
    let mut images = IntMatrix::<i128>::zeros(r, gens.len());
    for i in 0..r {
        let e = g.basis_element(i);
        for (j, y) in gens.iter().enumerate() {
            images.set(i, j, beta.eval_numerator(e.coords(), y.coords()) as i128);
        }
    }
    Subgroup::kernel_of(g, &images, &vec![den as i128; gens.len()])
}

/// `A'_m = {x : m(x,a) = 0 ∀a ∈ A}`.
pub fn polar(a: &Subgroup, m: &Multiplier) -> Result<Subgroup> {
    check_ambient(a, m.group())?;
    match m.as_bicharacter() {
        Some(b) => polar_bicharacter(a, &b),
        None => polar_enumerated(a, m),
    }
}

/// Polar by scanning every group element; fails if the result is not a subgroup.
pub fn polar_enumerated(a: &Subgroup, m: &Multiplier) -> Result<Subgroup> {
    let g = m.group();
    check_ambient(a, g)?;
    if g.order() > POLAR_ENUMERATION_LIMIT {
        bail!(Resource, "polar enumeration is limited to groups of order {POLAR_ENUMERATION_LIMIT}");
    }
    let members = a.elements();
    let set: Vec<GroupElement> = g.elements().filter(|x| members.iter().all(|y| m.eval(x, y).is_zero())).collect();
    let span = Subgroup::span(g, &set)?;
    if span.order() != set.len() as u64 {
        bail!(Precondition, "the polar set of size {} is not a subgroup", set.len());
    }
    Ok(span)
}

/// Does `m` vanish on `A × A`?
pub fn is_isotropic(a: &Subgroup, m: &Multiplier) -> Result<bool> {
    check_ambient(a, m.group())?;
    Ok(match m.as_bicharacter() {
        Some(b) => {
            let gens = a.basis_generators();
            gens.iter().all(|x| gens.iter().all(|y| b.eval(x, y).is_zero()))
        }
        None => {
            let els = a.elements();
            els.iter().all(|x| els.iter().all(|y| m.eval(x, y).is_zero()))
        }
    })
}

pub fn is_maximal_isotropic(a: &Subgroup, m: &Multiplier) -> Result<bool> {
    Ok(polar(a, m)? == *a)
}

/// Greedily enlarges an isotropic `A`, scanning elements in index order.
pub fn extend_maximal(a: &Subgroup, m: &Multiplier) -> Result<Subgroup> {
    if !is_isotropic(a, m)? {
        bail!(Precondition, "seed subgroup is not isotropic");
    }
    let g = m.group();
    let mut current = a.clone();
    // a rejected element stays rejected as the subgroup grows, so one pass suffices
    for x in g.elements() {
        if current.contains(&x) {
            continue;
        }
        let mut gens = current.basis_generators();
        gens.push(x);
        let candidate = Subgroup::span(g, &gens)?;
        if is_isotropic(&candidate, m)? {
            current = candidate;
        }
    }
    if polar(&current, m)? != current {
        bail!(Precondition, "greedy isotropic extension is not its own polar; the multiplier is not alternating");
    }
    Ok(current)
}

/// `(polar(A, m~), {x : 2x ∈ polar(A, m)})`, which must coincide for alternating `m`.
pub fn polar_tilde(a: &Subgroup, m: &Multiplier) -> Result<(Subgroup, Subgroup)> {
    let Some(b) = m.as_bicharacter().filter(Bicharacter::is_alternating) else {
        bail!(Precondition, "polar relation needs an alternating bicharacter");
    };
    let tilde = Multiplier::bicharacter(antisymmetrize(m)?)?;
    let lhs = polar(a, &tilde)?;
    let rhs = polar_bicharacter(a, &b)?.double_preimage();
    if lhs != rhs {
        let in_l: HashSet<GroupElement> = lhs.elements().into_iter().collect();
        let in_r: HashSet<GroupElement> = rhs.elements().into_iter().collect();
        let w = in_l.symmetric_difference(&in_r).min().cloned().expect("sets differ");
        bail!(Defect, "polar relation fails at {w}");
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::Phase;
    use proptest::prelude::*;

    fn symplectic(n: i64, d: usize) -> Multiplier {
        Multiplier::bicharacter(Bicharacter::standard_symplectic(n, d)).unwrap()
    }

    fn sub(g: &FinAbGroup, gens: &[Vec<i64>]) -> Subgroup {
        Subgroup::from_coords(g, gens).unwrap()
    }

    /// `B_ij = 1/2` for `i != j` on `F_2^r`.
    fn all_ones(r: usize) -> Multiplier {
        let g = FinAbGroup::power(2, r);
        let nums: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| (i != j) as i64).collect()).collect();
        Multiplier::bicharacter(Bicharacter::from_numerators(&g, &g, 2, &nums).unwrap()).unwrap()
    }

    #[test]
    fn polar_examples() {
        let m = symplectic(3, 1);
        let g = m.group().clone();
        assert_eq!(polar(&Subgroup::trivial(&g), &m).unwrap(), Subgroup::whole(&g));
        let line = sub(&g, &[vec![1, 0]]);
        assert_eq!(polar(&line, &m).unwrap(), line);
        assert!(is_maximal_isotropic(&line, &m).unwrap());
        assert!(!is_maximal_isotropic(&Subgroup::trivial(&g), &m).unwrap());

        let w = symplectic(4, 1);
        let g4 = w.group().clone();
        let l = sub(&g4, &[vec![2, 0], vec![0, 2]]);
        assert_eq!(polar(&l, &w).unwrap(), l);
        assert_eq!(polar_enumerated(&l, &w).unwrap(), l);

        let m9 = symplectic(9, 1);
        let g9 = m9.group().clone();
        assert!(is_maximal_isotropic(&sub(&g9, &[vec![3, 0], vec![0, 3]]), &m9).unwrap());
    }

    #[test]
    fn polar_rejects_foreign_subgroup() {
        let m = symplectic(3, 1);
        let other = FinAbGroup::power(3, 3);
        assert!(polar(&Subgroup::trivial(&other), &m).is_err());
    }

    #[test]
    fn greedy_extension() {
        let m = symplectic(3, 1);
        let g = m.group().clone();
        let a = extend_maximal(&Subgroup::trivial(&g), &m).unwrap();
        assert_eq!(a, sub(&g, &[vec![1, 0]]));
        assert_eq!(extend_maximal(&a, &m).unwrap(), a);

        let f = all_ones(4);
        let g = f.group().clone();
        let a = extend_maximal(&Subgroup::trivial(&g), &f).unwrap();
        assert_eq!(a.order(), 4);
        assert_eq!(a.order() * a.order(), g.order());

        let bad = sub(m.group(), &[vec![1, 0], vec![0, 1]]);
        assert!(extend_maximal(&bad, &m).is_err());
    }

    #[test]
    fn polar_relation_examples() {
        let m9 = symplectic(9, 1);
        let g9 = m9.group().clone();
        let a = sub(&g9, &[vec![3, 0], vec![0, 3]]);
        let (l, r) = polar_tilde(&a, &m9).unwrap();
        assert_eq!(l, a);
        assert_eq!(r, a);

        let w = symplectic(4, 1);
        let g4 = w.group().clone();
        let l4 = sub(&g4, &[vec![2, 0], vec![0, 2]]);
        let (l, r) = polar_tilde(&l4, &w).unwrap();
        assert_eq!(l, Subgroup::whole(&g4));
        assert_eq!(r, Subgroup::whole(&g4));

        let whole = Subgroup::whole(&g4);
        let tilde = Multiplier::bicharacter(antisymmetrize(&w).unwrap()).unwrap();
        assert_eq!(polar_tilde(&whole, &w).unwrap().0, polar(&whole, &tilde).unwrap());

        let z3 = FinAbGroup::cyclic(3);
        let sym = Multiplier::bicharacter(Bicharacter::new(&z3, vec![vec![Phase::from_ratio(1, 3)]]).unwrap()).unwrap();
        assert!(polar_tilde(&Subgroup::whole(&z3), &sym).is_err());
    }

    fn symplectic_and_subgroups() -> impl Strategy<Value = (Multiplier, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
        (prop_oneof![Just(2i64), Just(3), Just(4), Just(5), Just(6), Just(9)], 1usize..3)
            .prop_filter("order", |(n, d)| n.pow(2 * *d as u32) <= 10_000)
            .prop_flat_map(|(n, d)| {
                let gens = proptest::collection::vec(proptest::collection::vec(0..n, 2 * d), 0..3);
                (Just(symplectic(n, d)), gens.clone(), gens)
            })
    }

    proptest! {
        #[test]
        fn polar_laws((m, ga, gb) in symplectic_and_subgroups()) {
            let g = m.group().clone();
            let a = sub(&g, &ga);
            let b = Subgroup::span(&g, &[a.basis_generators(), sub(&g, &gb).basis_generators()].concat()).unwrap();
            let pa = polar(&a, &m).unwrap();
            let pb = polar(&b, &m).unwrap();
            prop_assert!(pb.is_subgroup_of(&pa));
            prop_assert!(a.is_subgroup_of(&polar(&pa, &m).unwrap()));
            prop_assert_eq!(polar(&polar(&pa, &m).unwrap(), &m).unwrap(), pa.clone());
            prop_assert_eq!(a.order() * pa.order(), g.order());
            if g.order() <= 1000 {
                prop_assert_eq!(polar_enumerated(&a, &m).unwrap(), pa.clone());
            }
            let (l, r) = polar_tilde(&a, &m).unwrap();
            prop_assert_eq!(l, r);
            let ext = extend_maximal(&Subgroup::trivial(&g), &m).unwrap();
            prop_assert_eq!(ext.order() * ext.order(), g.order());
            prop_assert!(is_maximal_isotropic(&ext, &m).unwrap());
        }
    }
}
