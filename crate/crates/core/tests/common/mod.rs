#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use weylkit::multiplier::twist;
use weylkit::padic::window_weyl;
use weylkit::weyl::{induced_model, schrodinger_model};
use weylkit::{window_group, Bicharacter, FinAbGroup, GroupElement, Multiplier, Phase, Rep, SplittingData, Subgroup};

/// A representation together with the isotropic subgroup its vacuum is taken over.
pub struct Model {
    pub name: String,
    pub rep: Rep,
    pub l: Subgroup,
}

fn symplectic(n: i64, d: usize) -> Multiplier {
    Multiplier::bicharacter(Bicharacter::standard_symplectic(n, d)).unwrap()
}

fn sub(g: &FinAbGroup, gens: &[Vec<i64>]) -> Subgroup {
    Subgroup::from_coords(g, gens).unwrap()
}

/// First `d` coordinates of a rank `2d` group.
pub fn first_half(g: &FinAbGroup) -> Subgroup {
    let gens: Vec<GroupElement> = (0..g.rank() / 2).map(|i| g.basis_element(i)).collect();
    Subgroup::span(g, &gens).unwrap()
}

/// Induced model of the standard symplectic form on `(Z/n)^{2d}`.
pub fn symplectic_model(n: i64, d: usize, a: &[Vec<i64>]) -> Model {
    let m = symplectic(n, d);
    let a = sub(m.group(), a);
    let rep = induced_model(&m, &a, &SplittingData::zero(&a)).unwrap();
    Model { name: format!("symplectic (Z/{n})^{} over {a:?}", 2 * d), rep, l: a }
}

/// Schrödinger model of `F_2^d × F_2^d` with the dot-product pairing.
pub fn f2_model(d: usize) -> Model {
    let a = FinAbGroup::power(2, d);
    let half = Phase::from_ratio(1, 2);
    let matrix = (0..d).map(|i| (0..d).map(|j| if i == j { half.clone() } else { Phase::zero() }).collect()).collect();
    let rep: Rep = schrodinger_model(&Bicharacter::pairing(&a, &a, matrix).unwrap()).unwrap();
    let l = first_half(rep.group());
    Model { name: format!("schrodinger F_2^{d} x F_2^{d}"), rep, l }
}

pub fn z3_schrodinger() -> Model {
    let a = FinAbGroup::cyclic(3);
    let rep: Rep = schrodinger_model(&Bicharacter::pairing(&a, &a, vec![vec![Phase::from_ratio(1, 3)]]).unwrap()).unwrap();
    let l = first_half(rep.group());
    Model { name: "schrodinger Z/3 x Z/3".into(), rep, l }
}

pub fn window_model(p: u64, k: u32, d: usize) -> Model {
    let w = window_group(p, k, d).unwrap();
    Model { name: format!("window ({p},{k},{d})"), rep: window_weyl(&w).unwrap(), l: w.lattice().clone() }
}

/// Windows exercised by the suite.
pub const WINDOWS: [(u64, u32, usize); 8] = [(2, 1, 1), (2, 2, 1), (2, 1, 2), (2, 2, 2), (3, 1, 1), (3, 1, 2), (5, 1, 1), (3, 2, 1)];

/// Every model the structural checks run on.
pub fn zoo() -> Vec<Model> {
    let mut out = vec![
        z3_schrodinger(),
        f2_model(1),
        f2_model(2),
        f2_model(3),
        symplectic_model(9, 1, &[vec![3, 0], vec![0, 3]]),
        symplectic_model(9, 1, &[vec![1, 0]]),
        symplectic_model(3, 1, &[vec![0, 1]]),
        symplectic_model(5, 1, &[vec![1, 1]]),
        symplectic_model(3, 2, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]),
    ];
    let z9 = symplectic_model(9, 1, &[vec![3, 0], vec![0, 3]]);
    out.push(Model { name: "two copies of (Z/9)^2".into(), rep: z9.rep.direct_sum(&z9.rep).unwrap(), l: z9.l });
    out.extend(WINDOWS.iter().map(|&(p, k, d)| window_model(p, k, d)));
    out
}

/// Random moduli with product at most `max_order`; odd moduli only when `odd`.
pub fn random_group(rng: &mut ChaCha8Rng, max_order: i64, odd: bool) -> FinAbGroup {
    let choices: &[i64] = if odd { &[3, 5, 7, 9, 15, 25, 27] } else { &[2, 3, 4, 5, 6, 8, 9, 12, 16] };
    let rank = rng.random_range(1..=3);
    let mut moduli = Vec::new();
    let mut order = 1;
    for _ in 0..rank {
        let n = choices[rng.random_range(0..choices.len())];
        if order * n <= max_order {
            moduli.push(n);
            order *= n;
        }
    }
    if moduli.is_empty() {
        moduli.push(choices[0]);
    }
    FinAbGroup::new(moduli).unwrap()
}

/// Uniform bicharacter on `G × G`: entry `(i,j)` is a multiple of `1/gcd(n_i, n_j)`.
pub fn random_bicharacter(rng: &mut ChaCha8Rng, g: &FinAbGroup) -> Bicharacter {
    let n = g.moduli();
    let matrix = (0..n.len())
        .map(|i| {
            (0..n.len())
                .map(|j| {
                    let q = num_integer::gcd(n[i], n[j]);
                    Phase::from_ratio(rng.random_range(0..q) as i128, q as i128)
                })
                .collect()
        })
        .collect();
    Bicharacter::new(g, matrix).unwrap()
}

pub fn random_symmetric_bicharacter(rng: &mut ChaCha8Rng, g: &FinAbGroup) -> Bicharacter {
    let b = random_bicharacter(rng, g);
    let mut matrix = b.matrix();
    for i in 0..matrix.len() {
        for j in 0..i {
            matrix[i][j] = matrix[j][i].clone();
        }
    }
    Bicharacter::new(g, matrix).unwrap()
}

/// Random `a : G → Q/Z` with `a(0) = 0`, in index order.
pub fn random_twist(rng: &mut ChaCha8Rng, g: &FinAbGroup) -> Vec<Phase> {
    (0..g.order())
        .map(|i| if i == 0 { Phase::zero() } else { Phase::from_ratio(rng.random_range(0..24), 24) })
        .collect()
}

/// Bicharacter times a random coboundary, stored as a table.
pub fn random_cocycle(rng: &mut ChaCha8Rng, b: &Bicharacter) -> Multiplier {
    let a = random_twist(rng, b.group());
    twist(&Multiplier::bicharacter(b.clone()).unwrap(), &a).unwrap()
}

pub fn random_element(rng: &mut ChaCha8Rng, g: &FinAbGroup) -> GroupElement {
    let coords: Vec<i64> = g.moduli().iter().map(|&n| rng.random_range(0..n)).collect();
    g.element(&coords).unwrap()
}

pub fn random_subgroup(rng: &mut ChaCha8Rng, g: &FinAbGroup, max_gens: usize) -> Subgroup {
    let k = rng.random_range(0..=max_gens);
    let gens: Vec<GroupElement> = (0..k).map(|_| random_element(rng, g)).collect();
    Subgroup::span(g, &gens).unwrap()
}

/// Every bicharacter on `G × G`, as numerator matrices over `1/gcd(n_i, n_j)`.
pub fn all_bicharacters(g: &FinAbGroup) -> Vec<Bicharacter> {
    let n = g.moduli();
    let r = n.len();
    let sizes: Vec<i64> = (0..r * r).map(|k| num_integer::gcd(n[k / r], n[k % r])).collect();
    let total: i64 = sizes.iter().product();
    (0..total)
        .map(|mut idx| {
            let mut matrix = vec![vec![Phase::zero(); r]; r];
            for (k, &q) in sizes.iter().enumerate() {
                matrix[k / r][k % r] = Phase::from_ratio((idx % q) as i128, q as i128);
                idx /= q;
            }
            Bicharacter::new(g, matrix).unwrap()
        })
        .collect()
}
