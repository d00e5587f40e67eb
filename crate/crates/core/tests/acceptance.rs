//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weylkit::isotropy::{polar, polar_tilde};
use weylkit::linalg::CMatrix;
use weylkit::multiplier::{antisymmetrize, check_multiplier, is_heisenberg, split_symmetric, sqrt_bicharacter};
use weylkit::padic::{vacuum_profile, VacuumProfile};
use weylkit::vacuum::{generated_subspace, structure_report, vacuum};
use weylkit::weyl::{check_rep_law_with, commutant_d, commutator_scalar_check_with, intertwiner};
use weylkit::{window_group, FinAbGroup, Multiplier, Phase, Subgroup};

use common::*;

const TOL: f64 = 1e-9;
const SEED: u64 = 0x5eed;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

struct Profiles(HashMap<(u64, u32, usize), (VacuumProfile, Duration)>);

impl Profiles {
    fn compute(windows: &[(u64, u32, usize)]) -> Self {
        let mut map = HashMap::new();
        for &(p, k, d) in windows {
            let t = Instant::now();
            let profile = vacuum_profile(&window_group(p, k, d).unwrap(), TOL).unwrap();
            map.insert((p, k, d), (profile, t.elapsed()));
        }
        Profiles(map)
    }

    fn get(&self, key: (u64, u32, usize)) -> &VacuumProfile {
        &self.0[&key].0
    }
}

const TWO_WINDOWS: [(u64, u32, usize); 4] = [(2, 1, 1), (2, 2, 1), (2, 1, 2), (2, 2, 2)];
const ODD_WINDOWS: [(u64, u32, usize); 3] = [(3, 1, 1), (3, 1, 2), (5, 1, 1)];

fn carrier_dimension(profiles: &Profiles) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for key in TWO_WINDOWS {
        let (pr, elapsed) = &profiles.0[&key];
        let ok = pr.vacuum_dim == 1 << key.2 && pr.v2_order == 1 << (2 * key.2) && elapsed.as_secs_f64() < 10.0;
        pass &= ok;
        parts.push(format!("{key:?}: dim H^L {} |V2| {} ({:.2}s)", pr.vacuum_dim, pr.v2_order, elapsed.as_secs_f64()));
    }
    Outcome::new(pass, parts.join("; "))
}

fn odd_vacuum(profiles: &Profiles) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for key in ODD_WINDOWS {
        let pr = profiles.get(key);
        let lines = pr.sector_dims.values().all(|&n| n == 1);
        pass &= pr.vacuum_dim == 1 && lines;
        parts.push(format!("{key:?}: dim H^L {}, {} sectors all lines: {lines}", pr.vacuum_dim, pr.sector_dims.len()));
    }
    Outcome::new(pass, parts.join("; "))
}

fn fermionic_relations(profiles: &Profiles) -> Outcome {
    let mut pass = true;
    let mut worst = 0.0f64;
    let mut pauli = Vec::new();
    for key in TWO_WINDOWS {
        let pr = profiles.get(key);
        let r = pr.clifford_residual_max.unwrap_or(f64::INFINITY);
        worst = worst.max(r);
        pass &= r <= TOL && pr.report.get("fermion.clifford gram").is_some_and(|c| c.pass);
        if key.2 == 1 {
            let c = pr.report.get("fermion.pauli_pair");
            pass &= c.is_some_and(|c| c.pass);
            pauli.push(format!("{key:?} pauli distance {:.1e}", c.and_then(|c| c.residual).unwrap_or(f64::NAN)));
        }
    }
    Outcome::new(pass, format!("max residual {worst:.1e} (tol {TOL:.0e}); {}", pauli.join(", ")))
}

fn exact_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut doubled: HashMap<Vec<i64>, Vec<Vec<Vec<Phase>>>> = HashMap::new();
    let mut failures = Vec::new();
    let mut sqrt_checked = 0;
    let mut exhausted = 0;
    for i in 0..1000 {
        let odd = i % 2 == 0;
        let g = if odd { random_group(&mut rng, 27, true) } else { random_group(&mut rng, 64, false) };
        let beta = random_bicharacter(&mut rng, &g);
        let m = random_cocycle(&mut rng, &beta);
        let mut fail = |what: &str| failures.push(format!("instance {i} on {g}: {what}"));
        if !check_multiplier(&m).all_pass() {
            fail("multiplier axioms");
        }
        let t = antisymmetrize(&m).unwrap();
        if !t.is_alternating() || g.elements().any(|x| g.elements().any(|y| t.eval(&x, &y) != m.eval(&x, &y) - m.eval(&y, &x))) {
            fail("antisymmetrization");
        }
        if t != antisymmetrize(&Multiplier::bicharacter(beta.clone()).unwrap()).unwrap() {
            fail("equivalence invariance of m~");
        }
        let alt = Multiplier::bicharacter(beta.antisymmetric_part()).unwrap();
        let a = random_subgroup(&mut rng, &g, 2);
        let extra = random_subgroup(&mut rng, &g, 1);
        let b = Subgroup::span(&g, &[a.basis_generators(), extra.basis_generators()].concat()).unwrap();
        let pa = polar(&a, &alt).unwrap();
        if !polar(&b, &alt).unwrap().is_subgroup_of(&pa) {
            fail("polar antitonicity");
        }
        if polar(&polar(&pa, &alt).unwrap(), &alt).unwrap() != pa {
            fail("polar^3 = polar");
        }
        match polar_tilde(&a, &alt) {
            Ok((l, r)) if l == r => {}
            _ => fail("polar of m~ is the half of the polar of m"),
        }
        if g.order() % 2 == 1 {
            sqrt_checked += 1;
            let s = sqrt_bicharacter(&beta).unwrap();
            if s.scale(2) != beta {
                fail("2 sqrt(beta) = beta");
            }
            if g.order() <= 27 {
                exhausted += 1;
                let table = doubled
                    .entry(g.moduli().to_vec())
                    .or_insert_with(|| all_bicharacters(&g).into_iter().map(|c| c.scale(2).matrix()).collect());
                let target = beta.matrix();
                let count = table.iter().filter(|d| **d == target).count();
                if count != 1 {
                    fail(&format!("{count} square roots"));
                }
            }
        }
    }
    let n = failures.len();
    let mut detail = format!("1000 instances, {sqrt_checked} with square roots ({exhausted} by exhaustion); {n} failures");
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    Outcome::new(n == 0, detail)
}

fn splitting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut failures = 0;
    for _ in 0..200 {
        let g = random_group(&mut rng, 64, false);
        let beta = random_symmetric_bicharacter(&mut rng, &g);
        let m = random_cocycle(&mut rng, &beta);
        match split_symmetric(&m, &Subgroup::whole(&g)) {
            Ok(c) if c.defect(&m).is_none() => {}
            _ => failures += 1,
        }
    }
    let z2 = FinAbGroup::cyclic(2);
    let m = Multiplier::from_table(&z2, vec![Phase::zero(), Phase::zero(), Phase::zero(), Phase::from_ratio(1, 2)]).unwrap();
    let c = split_symmetric(&m, &Subgroup::whole(&z2)).unwrap();
    let c1 = c.value(&z2.element(&[1]).unwrap()).clone();
    let growth = c1 == Phase::from_ratio(1, 4) && c.defect(&m).is_none();
    Outcome::new(failures == 0 && growth, format!("200 random symmetric cocycles, {failures} nonzero residuals; Z/2 with m(1,1)=1/2 gives c(1)={c1}"))
}

fn representation_laws(zoo: &[Model]) -> Outcome {
    let mut failed = Vec::new();
    let mut exhaustive = 0;
    for model in zoo {
        let law = check_rep_law_with(&model.rep, TOL, SEED);
        let comm = commutator_scalar_check_with(&model.rep, TOL, SEED);
        if model.rep.group().order() <= 512 {
            exhaustive += 1;
        }
        if !law.all_pass() || !comm.all_pass() {
            failed.push(model.name.clone());
        }
    }
    Outcome::new(failed.is_empty(), format!("{} models ({exhaustive} exhaustive); failures: {failed:?}", zoo.len()))
}

fn irreducibility() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (p, k, d) in ODD_WINDOWS {
        let c = commutant_d(&window_model(p, k, d).rep).unwrap();
        pass &= c == 1;
        parts.push(format!("window ({p},{k},{d}) commutant {c}"));
    }
    for d in 1..=3 {
        let c = commutant_d(&f2_model(d).rep).unwrap();
        pass &= c == 1;
        parts.push(format!("F_2^{} commutant {c}", 2 * d));
    }
    let pairs = [
        (symplectic_model(9, 1, &[vec![3, 0], vec![0, 3]]), symplectic_model(9, 1, &[vec![1, 0]])),
        (symplectic_model(3, 1, &[vec![1, 0]]), symplectic_model(3, 1, &[vec![0, 1]])),
        (window_model(3, 1, 1), symplectic_model(9, 1, &[vec![0, 1]])),
    ];
    for (a, b) in &pairs {
        let t = intertwiner(&a.rep, &b.rep).unwrap();
        let defect = t.normalized_unitary_defect().unwrap_or(f64::INFINITY);
        pass &= t.dimension == 1 && defect <= TOL;
        parts.push(format!("intertwiner dim {} unitary defect {defect:.1e}", t.dimension));
    }
    let w = symplectic_model(9, 1, &[vec![3, 0], vec![0, 3]]).rep;
    let ww = w.direct_sum(&w).unwrap();
    let c = commutant_d(&ww).unwrap();
    let t = intertwiner(&w, &ww).unwrap().dimension;
    pass &= c == 4 && t == 2;
    parts.push(format!("two copies: commutant {c}, intertwiner dim {t}"));
    Outcome::new(pass, parts.join("; "))
}

fn structure(zoo: &[Model]) -> Outcome {
    let mut failed = Vec::new();
    for model in zoo {
        let report = structure_report(&model.rep, &model.l, TOL).unwrap();
        let h = vacuum(&model.rep, &model.l).unwrap();
        let orthogonal = orthogonality_preserved(model, &h);
        if !report.all_pass() || !orthogonal {
            let names: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
            failed.push(format!("{} {names:?} orthogonality {orthogonal}", model.name));
        }
    }
    Outcome::new(failed.is_empty(), format!("{} models; failures: {failed:?}", zoo.len()))
}

/// Two copies of the vacuum in `W ⊕ W` generate orthogonal subspaces.
fn orthogonality_preserved(model: &Model, h: &CMatrix<f64>) -> bool {
    let n = model.rep.dim();
    if n > 512 {
        return true;
    }
    let ww = model.rep.direct_sum(&model.rep).unwrap();
    let mut k1 = CMatrix::<f64>::zeros(2 * n, h.ncols());
    let mut k2 = CMatrix::<f64>::zeros(2 * n, h.ncols());
    k1.view_mut((0, 0), (n, h.ncols())).copy_from(h);
    k2.view_mut((n, 0), (n, h.ncols())).copy_from(h);
    let g1 = generated_subspace(&ww, &model.l, &k1).unwrap();
    let g2 = generated_subspace(&ww, &model.l, &k2).unwrap();
    let overlap = weylkit::linalg::max_abs(&(g1.basis.adjoint() * &g2.basis));
    overlap <= TOL && g1.projection_residual <= TOL && g2.projection_residual <= TOL
}

fn descended_match(profiles: &Profiles) -> Outcome {
    let flags: Vec<String> = TWO_WINDOWS
        .iter()
        .map(|&key| {
            let pr = profiles.get(key);
            format!("{key:?}: m0~ = m''~ {:?}, literal m0 = m'' {:?}", pr.descended_tilde_matches, pr.descended_literal_matches)
        })
        .collect();
    let pass = TWO_WINDOWS.iter().all(|&key| profiles.get(key).descended_tilde_matches == Some(true));
    Outcome::new(pass, flags.join("; "))
}

fn scope_checks(profiles: &Profiles) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for key in TWO_WINDOWS {
        let w = window_group(key.0, key.1, key.2).unwrap();
        let heis = is_heisenberg(w.multiplier()).unwrap();
        let radical = antisymmetrize(w.multiplier()).unwrap().radical();
        let expected = Subgroup::whole(w.group()).image_under_scaling(1 << (2 * key.1 - 1));
        let pr = profiles.get(key);
        let ok = !heis && radical == expected && pr.commutant_full > 1 && pr.commutant_descended == 1;
        pass &= ok;
        parts.push(format!(
            "{key:?}: heisenberg {heis}, |rad m~| {}, commutant {} vs descended {}",
            radical.order(),
            pr.commutant_full,
            pr.commutant_descended
        ));
    }
    for key in ODD_WINDOWS {
        pass &= is_heisenberg(window_group(key.0, key.1, key.2).unwrap().multiplier()).unwrap();
    }
    Outcome::new(pass, parts.join("; "))
}

fn main() {
    let start = Instant::now();
    let profiles = Profiles::compute(&[TWO_WINDOWS.as_slice(), ODD_WINDOWS.as_slice()].concat());
    let zoo = zoo();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("carrier dimension", Box::new(|| carrier_dimension(&profiles))),
        ("odd-p vacuum", Box::new(|| odd_vacuum(&profiles))),
        ("fermionic relations", Box::new(|| fermionic_relations(&profiles))),
        ("exact algebra", Box::new(exact_algebra)),
        ("symmetric splitting", Box::new(splitting)),
        ("representation laws", Box::new(|| representation_laws(&zoo))),
        ("irreducibility and uniqueness", Box::new(irreducibility)),
        ("vacuum structure", Box::new(|| structure(&zoo))),
        ("descended multiplier", Box::new(|| descended_match(&profiles))),
        ("scope checks", Box::new(|| scope_checks(&profiles))),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        all &= outcome.pass;
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name} [{:.2}s]: {}", i + 1, t.elapsed().as_secs_f64(), outcome.detail);
    }
    println!("acceptance total {:.2}s", start.elapsed().as_secs_f64());
    if !all {
        std::process::exit(1);
    }
}
