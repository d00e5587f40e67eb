mod common;

use proptest::prelude::*;
use weylkit::padic::{vacuum_profile, window_weyl};
use weylkit::vacuum::{clifford_basis, descend};
use weylkit::{window_group, Error, Phase};

#[test]
fn precision_does_not_change_vacuum_data() {
    for (p, d) in [(2u64, 1usize), (2, 2), (3, 1)] {
        let a = vacuum_profile(&window_group(p, 1, d).unwrap(), 1e-9).unwrap();
        let b = vacuum_profile(&window_group(p, 2, d).unwrap(), 1e-9).unwrap();
        assert_eq!((a.vacuum_dim, a.v2_order), (b.vacuum_dim, b.v2_order), "p={p} d={d}");
    }
}

#[test]
fn heisenberg_branch_follows_the_prime() {
    for (p, k, d) in common::WINDOWS {
        let w = window_group(p, k, d).unwrap();
        let b = w.multiplier().as_bicharacter().unwrap();
        assert!(b.is_nondegenerate());
        assert_eq!(weylkit::multiplier::is_heisenberg(w.multiplier()).unwrap(), p != 2);
    }
}

#[test]
fn profiles_are_deterministic() {
    let w = window_group(2, 1, 2).unwrap();
    let a = vacuum_profile(&w, 1e-9).unwrap();
    let b = vacuum_profile(&w, 1e-9).unwrap();
    assert_eq!(format!("{:?}", a), format!("{:?}", b));
    assert!(a.report.all_pass(), "{}", a.report);
    let gram = a.clifford_gram.unwrap();
    assert_eq!(gram.len(), 4);
    assert!(gram.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &v)| v == (i != j) as u8)));
}

#[test]
fn clifford_from_the_generic_search() {
    let w = window_group(2, 1, 2).unwrap();
    let rep = window_weyl::<f64>(&w).unwrap();
    let desc = descend(&rep, w.lattice()).unwrap();
    let c = clifford_basis(&desc).unwrap();
    assert_eq!(c.d(), 2);
    assert!(c.residual() < 1e-9);
    assert_eq!(c.commutant_dim, 1);
}

#[test]
fn composite_primes_are_rejected() {
    for p in [0, 1, 4, 9] {
        assert!(matches!(window_group(p, 1, 1), Err(Error::Input(_))));
    }
}

#[test]
fn oversized_windows_are_refused() {
    let w = window_group(3, 2, 2).unwrap();
    assert!(matches!(window_weyl::<f64>(&w), Err(Error::Resource(_))));
}

proptest! {
    /// The window phase `(2u·y₂ + y₁·y₂)/p^{2k}` ignores which representative of `u` or `y` is used.
    #[test]
    fn window_phase_is_representative_independent(
        u in 0i64..16, y1 in 0i64..16, y2 in 0i64..16, s in -3i64..3, t in -3i64..3, r in -3i64..3,
    ) {
        let n = 16i64;
        let phase = |u: i64, y1: i64, y2: i64| Phase::from_ratio((2 * u * y2 + y1 * y2) as i128, n as i128);
        prop_assert_eq!(phase(u, y1, y2), phase(u + s * n, y1 + t * n, y2 + r * n));
    }
}
