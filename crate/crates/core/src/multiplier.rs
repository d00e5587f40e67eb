//! Multipliers (normalized Phase-valued 2-cocycles), bicharacters, and the
//! operations relating them: antisymmetrization, twisting by coboundaries,
//! square roots on 2-regular groups and explicit splitting of symmetric
//! cocycles.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{bail, Error, Result};
use crate::group::{FinAbGroup, GroupElement, Subgroup};
use crate::int::{solve_congruences, IntMatrix};
use crate::phase::Phase;
use crate::report::{Check, VerificationReport};

/// Groups up to this order get an exhaustive cocycle scan.
pub const EXHAUSTIVE_COCYCLE_LIMIT: u64 = 512;
/// Number of random triples tested above [`EXHAUSTIVE_COCYCLE_LIMIT`].
pub const SAMPLED_TRIPLES: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 0x5eed;
/// Largest group for which a full multiplication table is materialized.
pub const TABLE_LIMIT: u64 = 1024;

/// A bilinear map `A × B → Q/Z`, `β(x,y) = Σ x_i·B_ij·y_j`.
///
/// Entries are stored as numerators over the least common denominator,
/// which divides the exponent of both groups once the map is well defined.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bicharacter {
    left: FinAbGroup,
    right: FinAbGroup,
    den: i64,
    nums: Vec<i64>,
}

/// A bicharacter between two possibly different groups.
pub type Pairing = Bicharacter;

impl Bicharacter {
    /// Bicharacter on `group × group`.
    pub fn new(group: &FinAbGroup, matrix: Vec<Vec<Phase>>) -> Result<Self> {
        Self::pairing(group, group, matrix)
    }

    /// Bicharacter on `left × right`.
    pub fn pairing(left: &FinAbGroup, right: &FinAbGroup, matrix: Vec<Vec<Phase>>) -> Result<Self> {
        let (r, s) = (left.rank(), right.rank());
        if matrix.len() != r || matrix.iter().any(|row| row.len() != s) {
            bail!(Input, "bicharacter matrix must be {r}x{s}");
        }
        let mut den = BigInt::one();
        for (i, row) in matrix.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if !b.scale(left.moduli()[i]).is_zero() || !b.scale(right.moduli()[j]).is_zero() {
                    bail!(Input, "entry ({i},{j}) = {b} is not killed by the moduli {} and {}", left.moduli()[i], right.moduli()[j]);
                }
                den = den.lcm(&b.denom());
            }
        }
        let den = den.to_i64().expect("denominator divides a modulus");
        let nums = matrix
            .iter()
            .flatten()
            .map(|b| b.numer_over(&BigInt::from(den)).and_then(|n| n.to_i64()).expect("denominator divides lcm"))
            .collect();
        Ok(Bicharacter { left: left.clone(), right: right.clone(), den, nums })
    }

    /// Entries `nums[i][j] / den`.
    pub fn from_numerators(left: &FinAbGroup, right: &FinAbGroup, den: i64, nums: &[Vec<i64>]) -> Result<Self> {
        let matrix = nums.iter().map(|row| row.iter().map(|&n| Phase::new(n, den)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        Self::pairing(left, right, matrix)
    }

    pub fn zero(group: &FinAbGroup) -> Self {
        let r = group.rank();
        Bicharacter { left: group.clone(), right: group.clone(), den: 1, nums: vec![0; r * r] }
    }

    /// The standard form `(x_1·y_2 − x_2·y_1)/n` on `(Z/n)^d × (Z/n)^d`.
    pub fn standard_symplectic(n: i64, d: usize) -> Self {
        let g = FinAbGroup::power(n, 2 * d);
        let mut nums = vec![vec![0i64; 2 * d]; 2 * d];
        for i in 0..d {
            nums[i][d + i] = 1;
            nums[d + i][i] = -1;
        }
        Self::from_numerators(&g, &g, n, &nums).expect("well defined")
    }

    pub fn left(&self) -> &FinAbGroup {
        &self.left
    }

    pub fn right(&self) -> &FinAbGroup {
        &self.right
    }

    /// The group of a bicharacter on `G × G`.
    pub fn group(&self) -> &FinAbGroup {
        debug_assert!(self.is_square());
        &self.left
    }

    pub fn is_square(&self) -> bool {
        self.left == self.right
    }

    /// Least common denominator of the entries.
    pub fn denominator(&self) -> i64 {
        self.den
    }

    fn num(&self, i: usize, j: usize) -> i64 {
        self.nums[i * self.right.rank() + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Phase {
        Phase::from_ratio(self.num(i, j) as i128, self.den as i128)
    }

    pub fn matrix(&self) -> Vec<Vec<Phase>> {
        (0..self.left.rank()).map(|i| (0..self.right.rank()).map(|j| self.entry(i, j)).collect()).collect()
    }

    /// Numerator of `β(x,y)` over [`Self::denominator`], in `[0, den)`.
    pub fn eval_numerator(&self, x: &[i64], y: &[i64]) -> i64 {
        let den = self.den as i128;
        let s = self.right.rank();
        let mut acc = 0i128;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let mut row = 0i128;
            for (j, &yj) in y.iter().enumerate() {
                row += self.nums[i * s + j] as i128 * yj as i128;
            }
            acc = (acc + xi as i128 * row.rem_euclid(den)).rem_euclid(den);
        }
        acc as i64
    }

    pub fn eval(&self, x: &GroupElement, y: &GroupElement) -> Phase {
        Phase::from_ratio(self.eval_numerator(x.coords(), y.coords()) as i128, self.den as i128)
    }

    pub fn scale(&self, k: i64) -> Self {
        let nums = self.nums.iter().map(|&n| (n as i128 * k as i128).rem_euclid(self.den as i128) as i64).collect();
        Self::normalized(self.left.clone(), self.right.clone(), self.den, nums)
    }

    /// Reduces the common denominator after an entry-wise operation.
    fn normalized(left: FinAbGroup, right: FinAbGroup, den: i64, nums: Vec<i64>) -> Self {
        let g = nums.iter().fold(den, |acc, n| acc.gcd(n));
        Bicharacter { left, right, den: den / g, nums: nums.into_iter().map(|n| n / g).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn transpose(&self) -> Self {
        let matrix = (0..self.right.rank()).map(|j| (0..self.left.rank()).map(|i| self.entry(i, j)).collect()).collect();
        Self::pairing(&self.right, &self.left, matrix).expect("transpose of a well-defined map")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.left != other.left || self.right != other.right {
            bail!(Input, "cannot add bicharacters on different groups");
        }
        let matrix = self
            .matrix()
            .into_iter()
            .zip(other.matrix())
            .map(|(a, b)| a.into_iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Self::pairing(&self.left, &self.right, matrix)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `β(x,y) − β(y,x)`
    pub fn antisymmetric_part(&self) -> Self {
        self.sub(&self.transpose()).expect("square bicharacter")
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// `β(x,x) = 0` for all `x`; implies `β(x,y) + β(y,x) = 0`.
    pub fn is_alternating(&self) -> bool {
        let r = self.left.rank();
        self.is_square()
            && (0..r).all(|i| {
                self.num(i, i) == 0 && (0..r).all(|j| (self.num(i, j) + self.num(j, i)) % self.den == 0)
            })
    }

    /// `{x ∈ left : β(x, y) = 0 ∀y}`
    pub fn left_radical(&self) -> Subgroup {
        let (r, s) = (self.left.rank(), self.right.rank());
        let mut images = IntMatrix::<i128>::zeros(r, s);
        for i in 0..r {
            for j in 0..s {
                images.set(i, j, self.num(i, j) as i128);
            }
        }
        Subgroup::kernel_of(&self.left, &images, &vec![self.den as i128; s]).expect("well-defined bicharacter")
    }

    /// `{y ∈ right : β(x, y) = 0 ∀x}`
    pub fn right_radical(&self) -> Subgroup {
        self.transpose().left_radical()
    }

    pub fn radical(&self) -> Subgroup {
        self.left_radical()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.left.order() == self.right.order() && self.left_radical().order() == 1 && self.right_radical().order() == 1
    }

    pub fn is_symplectic(&self) -> bool {
        self.is_alternating() && self.is_nondegenerate()
    }
}

impl fmt::Debug for Bicharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.matrix().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
        write!(f, "Bicharacter({} x {}, {:?})", self.left, self.right, rows)
    }
}

#[derive(Clone)]
enum TableValues {
    /// Numerators over a common denominator.
    Small { den: i64, nums: Vec<i64> },
    Exact(Vec<Phase>),
}

/// Values of a multiplier indexed by `(index_of(x), index_of(y))`.
#[derive(Clone)]
pub struct Table {
    order: usize,
    values: TableValues,
}

impl Table {
    fn from_phases(order: usize, values: Vec<Phase>) -> Self {
        let mut den = BigInt::one();
        for v in &values {
            den = den.lcm(&v.denom());
        }
        let values = match den.to_i64().filter(|&d| d < 1 << 62) {
            Some(d) => {
                let big = BigInt::from(d);
                TableValues::Small {
                    den: d,
                    nums: values.iter().map(|v| v.numer_over(&big).and_then(|n| n.to_i64()).expect("common denominator")).collect(),
                }
            }
            None => TableValues::Exact(values),
        };
        Table { order, values }
    }

    fn get(&self, i: usize, j: usize) -> Phase {
        let k = i + self.order * j;
        match &self.values {
            TableValues::Small { den, nums } => Phase::from_ratio(nums[k] as i128, *den as i128),
            TableValues::Exact(v) => v[k].clone(),
        }
    }
}

/// How a multiplier's values are produced.
#[derive(Clone)]
pub enum Backing {
    Bicharacter(Bicharacter),
    Table(Arc<Table>),
    /// `m((a,b),(a',b')) = ⟨a',b⟩` on `A × B` for a pairing `⟨·,·⟩ : A × B → Q/Z`.
    WeylProduct(Pairing),
}

#[derive(Clone, Debug)]
struct CocycleVerdict {
    normalization_witness: Option<GroupElement>,
    cocycle_witness: Option<[GroupElement; 3]>,
    exhaustive: bool,
    triples: u64,
    seed: Option<u64>,
}

/// A normalized 2-cocycle `m : G × G → Q/Z`.
#[derive(Clone)]
pub struct Multiplier {
    group: FinAbGroup,
    backing: Backing,
    verdict: Arc<OnceLock<CocycleVerdict>>,
}

impl fmt::Debug for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.backing {
            Backing::Bicharacter(b) => format!("{b:?}"),
            Backing::Table(_) => "table".to_string(),
            Backing::WeylProduct(p) => format!("weyl product of {p:?}"),
        };
        write!(f, "Multiplier({} : {kind})", self.group)
    }
}

impl Multiplier {
    fn with_backing(group: FinAbGroup, backing: Backing) -> Self {
        Multiplier { group, backing, verdict: Arc::new(OnceLock::new()) }
    }

    pub fn bicharacter(b: Bicharacter) -> Result<Self> {
        if !b.is_square() {
            bail!(Input, "a multiplier needs a bicharacter on G x G");
        }
        Ok(Self::with_backing(b.left.clone(), Backing::Bicharacter(b)))
    }

    pub fn zero(group: &FinAbGroup) -> Self {
        Self::with_backing(group.clone(), Backing::Bicharacter(Bicharacter::zero(group)))
    }

    /// The product multiplier of `A × B` attached to a pairing `A × B → Q/Z`.
    pub fn weyl_product(pairing: Pairing) -> Self {
        Self::with_backing(pairing.left.product(&pairing.right), Backing::WeylProduct(pairing))
    }

    /// Table indexed by `index_of(x) + |G|·index_of(y)`.
    pub fn from_table(group: &FinAbGroup, values: Vec<Phase>) -> Result<Self> {
        let n = group.order();
        if n > TABLE_LIMIT {
            bail!(Resource, "multiplier tables are limited to groups of order {TABLE_LIMIT}, got {n}");
        }
        if values.len() as u64 != n * n {
            bail!(Input, "multiplier table for a group of order {n} needs {} entries, got {}", n * n, values.len());
        }
        Ok(Self::with_backing(group.clone(), Backing::Table(Arc::new(Table::from_phases(n as usize, values)))))
    }

    pub fn from_fn(group: &FinAbGroup, f: impl Fn(&GroupElement, &GroupElement) -> Phase) -> Result<Self> {
        let n = group.order();
        if n > TABLE_LIMIT {
            bail!(Resource, "multiplier tables are limited to groups of order {TABLE_LIMIT}, got {n}");
        }
        let els: Vec<GroupElement> = group.elements().collect();
        let mut values = Vec::with_capacity((n * n) as usize);
        for y in &els {
            for x in &els {
                values.push(f(x, y));
            }
        }
        Self::from_table(group, values)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    pub fn eval(&self, x: &GroupElement, y: &GroupElement) -> Phase {
        match &self.backing {
            Backing::Bicharacter(b) => b.eval(x, y),
            Backing::Table(t) => t.get(self.group.index_of(x) as usize, self.group.index_of(y) as usize),
            Backing::WeylProduct(p) => {
                let ra = p.left.rank();
                Phase::from_ratio(p.eval_numerator(&y.coords()[..ra], &x.coords()[ra..]) as i128, p.den as i128)
            }
        }
    }

    /// The bicharacter this multiplier equals, if any.
    pub fn as_bicharacter(&self) -> Option<Bicharacter> {
        match &self.backing {
            Backing::Bicharacter(b) => Some(b.clone()),
            Backing::WeylProduct(p) => {
                let (ra, rb) = (p.left.rank(), p.right.rank());
                let r = ra + rb;
                let mut matrix = vec![vec![Phase::zero(); r]; r];
                // x's B-part pairs with y's A-part
                for (j, row) in matrix.iter_mut().enumerate().skip(ra) {
                    for (i, entry) in row.iter_mut().enumerate().take(ra) {
                        *entry = p.entry(i, j - ra);
                    }
                }
                Some(Bicharacter::new(&self.group, matrix).expect("pairing entries are well defined"))
            }
            Backing::Table(_) => {
                let r = self.group.rank();
                let basis: Vec<GroupElement> = (0..r).map(|i| self.group.basis_element(i)).collect();
                let matrix = basis.iter().map(|x| basis.iter().map(|y| self.eval(x, y)).collect()).collect();
                let b = Bicharacter::new(&self.group, matrix).ok()?;
                let els: Vec<GroupElement> = self.group.elements().collect();
                let agrees = els.iter().all(|x| els.iter().all(|y| b.eval(x, y) == self.eval(x, y)));
                agrees.then_some(b)
            }
        }
    }

    /// Materialized table copy.
    pub fn to_table(&self) -> Result<Multiplier> {
        Multiplier::from_fn(&self.group, |x, y| self.eval(x, y))
    }

    /// Pointwise equality.
    pub fn same_values(&self, other: &Multiplier) -> bool {
        if self.group != other.group {
            return false;
        }
        if let (Backing::Bicharacter(a), Backing::Bicharacter(b)) = (&self.backing, &other.backing) {
            return a == b;
        }
        if let (Some(a), Some(b)) = (self.as_bicharacter(), other.as_bicharacter()) {
            return a == b;
        }
        let els: Vec<GroupElement> = self.group.elements().collect();
        els.iter().all(|x| els.iter().all(|y| self.eval(x, y) == other.eval(x, y)))
    }

    /// Pointwise difference `self − other`.
    pub fn sub(&self, other: &Multiplier) -> Result<Multiplier> {
        if self.group != other.group {
            bail!(Input, "multipliers live on different groups");
        }
        if let (Backing::Bicharacter(a), Backing::Bicharacter(b)) = (&self.backing, &other.backing) {
            return Multiplier::bicharacter(a.sub(b)?);
        }
        Multiplier::from_fn(&self.group, |x, y| self.eval(x, y) - other.eval(x, y))
    }

    fn verdict(&self) -> &CocycleVerdict {
        self.verdict.get_or_init(|| self.scan(DEFAULT_SEED))
    }

    pub fn is_cocycle(&self) -> bool {
        let v = self.verdict();
        v.normalization_witness.is_none() && v.cocycle_witness.is_none()
    }

    fn scan(&self, seed: u64) -> CocycleVerdict {
        let g = &self.group;
        let zero = g.zero();
        let normalization_witness = g.elements().find(|x| !self.eval(x, &zero).is_zero() || !self.eval(&zero, x).is_zero());
        let n = g.order();
        if n <= EXHAUSTIVE_COCYCLE_LIMIT {
            let cocycle_witness = self.exhaustive_witness();
            CocycleVerdict { normalization_witness, cocycle_witness, exhaustive: true, triples: n * n * n, seed: None }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut cocycle_witness = None;
            for _ in 0..SAMPLED_TRIPLES {
                let [x, y, z] = [0; 3].map(|_| g.element_at(rng.random_range(0..n)));
                if !self.cocycle_defect(&x, &y, &z).is_zero() {
                    cocycle_witness = Some([x, y, z]);
                    break;
                }
            }
            CocycleVerdict { normalization_witness, cocycle_witness, exhaustive: false, triples: SAMPLED_TRIPLES, seed: Some(seed) }
        }
    }

    /// `m(x+y,z) + m(x,y) − m(x,y+z) − m(y,z)`
    pub fn cocycle_defect(&self, x: &GroupElement, y: &GroupElement, z: &GroupElement) -> Phase {
        let g = &self.group;
        self.eval(&g.add(x, y), z) + self.eval(x, y) - self.eval(x, &g.add(y, z)) - self.eval(y, z)
    }

    fn exhaustive_witness(&self) -> Option<[GroupElement; 3]> {
        let g = &self.group;
        let n = g.order() as usize;
        let els: Vec<GroupElement> = g.elements().collect();
        let mut phases = Vec::with_capacity(n * n);
        for y in &els {
            for x in &els {
                phases.push(self.eval(x, y));
            }
        }
        let table = Table::from_phases(n, phases);
        let add: Vec<u32> = (0..n * n).map(|k| g.index_of(&g.add(&els[k % n], &els[k / n])) as u32).collect();
        let sum = |i: usize, j: usize| add[i + n * j] as usize;
        let found = match &table.values {
            TableValues::Small { den, nums } => {
                let t = |i: usize, j: usize| nums[i + n * j] as i128;
                let den = *den as i128;
                (0..n).into_par_iter().find_map_first(|x| {
                    for y in 0..n {
                        let (xy, mxy) = (sum(x, y), t(x, y));
                        for z in 0..n {
                            if (t(xy, z) + mxy - t(x, sum(y, z)) - t(y, z)) % den != 0 {
                                return Some((x, y, z));
                            }
                        }
                    }
                    None
                })
            }
            TableValues::Exact(_) => (0..n).into_par_iter().find_map_first(|x| {
                for y in 0..n {
                    for z in 0..n {
                        let d = table.get(sum(x, y), z) + table.get(x, y) - table.get(x, sum(y, z)) - table.get(y, z);
                        if !d.is_zero() {
                            return Some((x, y, z));
                        }
                    }
                }
                None
            }),
        };
        found.map(|(x, y, z)| [els[x].clone(), els[y].clone(), els[z].clone()])
    }
}

/// Normalization and cocycle identity, with witnesses on failure.
pub fn check_multiplier(m: &Multiplier) -> VerificationReport {
    check_multiplier_seeded(m, DEFAULT_SEED)
}

/// As [`check_multiplier`]; `seed` drives the sampling above the exhaustive limit.
pub fn check_multiplier_seeded(m: &Multiplier, seed: u64) -> VerificationReport {
    let v = if seed == DEFAULT_SEED { m.verdict().clone() } else { m.scan(seed) };
    let mut report = VerificationReport::new();
    let mut norm = Check::exact("normalization", v.normalization_witness.is_none());
    if let Some(x) = &v.normalization_witness {
        norm = norm.with_witness([x]);
    }
    report.push(norm);
    let mode = if v.exhaustive {
        format!("exhaustive over {} triples", v.triples)
    } else {
        format!("{} random triples, seed {}", v.triples, v.seed.unwrap_or_default())
    };
    let mut coc = Check::exact("cocycle", v.cocycle_witness.is_none()).with_detail(mode);
    if let Some(w) = &v.cocycle_witness {
        coc = coc.with_witness(w.iter());
    }
    report.push(coc);
    report
}

fn require_cocycle(m: &Multiplier) -> Result<()> {
    if !m.is_cocycle() {
        let r = check_multiplier(m);
        let w: Vec<String> = r.failures().flat_map(|c| c.witness.clone()).collect();
        bail!(Precondition, "not a normalized cocycle (witness {})", w.join(", "));
    }
    Ok(())
}

/// `m~(x,y) = m(x,y) − m(y,x)`, an alternating bicharacter.
pub fn antisymmetrize(m: &Multiplier) -> Result<Bicharacter> {
    if let Backing::Bicharacter(b) = &m.backing {
        return Ok(b.antisymmetric_part());
    }
    require_cocycle(m)?;
    let g = &m.group;
    let basis: Vec<GroupElement> = (0..g.rank()).map(|i| g.basis_element(i)).collect();
    let matrix = basis.iter().map(|x| basis.iter().map(|y| m.eval(x, y) - m.eval(y, x)).collect()).collect();
    let b = Bicharacter::new(g, matrix).map_err(|e| Error::Defect(format!("antisymmetrization is not a bicharacter: {e}")))?;
    if !b.is_alternating() {
        bail!(Defect, "antisymmetrization is not alternating");
    }
    Ok(b)
}

/// `m'(x,y) = m(x,y) + a(x) + a(y) − a(x+y)`, with `a` given in index order.
pub fn twist(m: &Multiplier, a: &[Phase]) -> Result<Multiplier> {
    let g = &m.group;
    if g.order() > TABLE_LIMIT {
        bail!(Resource, "twisting is limited to groups of order {TABLE_LIMIT}");
    }
    if a.len() as u64 != g.order() {
        bail!(Input, "twist needs {} values, got {}", g.order(), a.len());
    }
    if !a[0].is_zero() {
        bail!(Precondition, "twist function must vanish at 0, got {}", a[0]);
    }
    Multiplier::from_fn(g, |x, y| {
        let ix = g.index_of(x) as usize;
        let iy = g.index_of(y) as usize;
        let ixy = g.index_of(&g.add(x, y)) as usize;
        m.eval(x, y) + &a[ix] + &a[iy] - &a[ixy]
    })
}

/// As [`twist`] with `a` given as a function.
pub fn twist_fn(m: &Multiplier, a: impl Fn(&GroupElement) -> Phase) -> Result<Multiplier> {
    let values: Vec<Phase> = m.group.elements().map(|x| a(&x)).collect();
    twist(m, &values)
}

/// Equal antisymmetrizations.
pub fn equivalent(m1: &Multiplier, m2: &Multiplier) -> Result<bool> {
    if m1.group != m2.group {
        bail!(Input, "multipliers live on different groups ({} vs {})", m1.group, m2.group);
    }
    Ok(antisymmetrize(m1)? == antisymmetrize(m2)?)
}

/// The unique bicharacter `γ` with `2γ = β`, `γ(x,y) = 2·β(x/2, y/2)`.
pub fn sqrt_bicharacter(beta: &Bicharacter) -> Result<Bicharacter> {
    if !beta.is_square() {
        bail!(Input, "square root needs a bicharacter on G x G");
    }
    let g = beta.group();
    if !g.p_regularity(2)?.regular {
        bail!(Unsupported, "square roots need a 2-regular group, got {g}");
    }
    let h: Vec<i64> = g.moduli().iter().map(|n| (n + 1) / 2).collect();
    let r = g.rank();
    let matrix = (0..r).map(|i| (0..r).map(|j| beta.entry(i, j).scale(2 * h[i] * h[j])).collect()).collect();
    Bicharacter::new(g, matrix)
}

pub fn is_heisenberg(m: &Multiplier) -> Result<bool> {
    Ok(antisymmetrize(m)?.is_nondegenerate())
}

/// Radical `{x : β(x,y) = 0 ∀y}`.
pub fn radical(beta: &Bicharacter) -> Subgroup {
    beta.left_radical()
}

/// A function `c : A → Q/Z` on a subgroup, stored in index order of `A`'s elements.
#[derive(Clone, Debug)]
pub struct SplittingData {
    subgroup: Subgroup,
    elements: Vec<GroupElement>,
    values: Vec<Phase>,
    index: HashMap<GroupElement, usize>,
}

impl SplittingData {
    pub fn new(subgroup: &Subgroup, values: Vec<Phase>) -> Result<Self> {
        let elements = subgroup.elements();
        if elements.len() != values.len() {
            bail!(Input, "splitting needs {} values, got {}", elements.len(), values.len());
        }
        if !values[0].is_zero() {
            bail!(Input, "splitting must vanish at 0");
        }
        let index = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        Ok(SplittingData { subgroup: subgroup.clone(), elements, values, index })
    }

    pub fn zero(subgroup: &Subgroup) -> Self {
        let n = subgroup.order() as usize;
        Self::new(subgroup, vec![Phase::zero(); n]).expect("consistent lengths")
    }

    /// From `(element, value)` pairs covering the subgroup.
    pub fn from_pairs(subgroup: &Subgroup, pairs: &[(GroupElement, Phase)]) -> Result<Self> {
        let mut s = Self::zero(subgroup);
        let mut seen = vec![false; s.elements.len()];
        for (x, v) in pairs {
            let Some(&i) = s.index.get(x) else { bail!(Input, "{x} is not in the subgroup") };
            s.values[i] = v.clone();
            seen[i] = true;
        }
        if let Some(i) = seen.iter().position(|&b| !b) {
            bail!(Input, "splitting value for {} is missing", s.elements[i]);
        }
        if !s.values[0].is_zero() {
            bail!(Input, "splitting must vanish at 0");
        }
        Ok(s)
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn values(&self) -> &[Phase] {
        &self.values
    }

    pub fn get(&self, x: &GroupElement) -> Option<&Phase> {
        self.index.get(x).map(|&i| &self.values[i])
    }

    /// `c(x)`; panics if `x ∉ A`.
    pub fn value(&self, x: &GroupElement) -> &Phase {
        self.get(x).unwrap_or_else(|| panic!("{x} is outside the split subgroup"))
    }

    /// First pair with `m(a,b) ≠ c(a+b) − c(a) − c(b)`.
    pub fn defect(&self, m: &Multiplier) -> Option<(GroupElement, GroupElement)> {
        let g = m.group();
        for a in &self.elements {
            for b in &self.elements {
                let lhs = m.eval(a, b);
                let rhs = self.value(&g.add(a, b)) - self.value(a) - self.value(b);
                if lhs != rhs {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }
}

/// Subgroups above this order are only split when `m` vanishes on them.
pub const SPLIT_LIMIT: u64 = 4096;

/// Canonical `c : A → Q/Z` with `c(0) = 0` and `m(a,b) = c(a+b) − c(a) − c(b)`.
///
/// Solutions differ by characters of `A`; the one with the lexicographically
/// smallest numerator vector (elements in index order, common denominator
/// `D'`) is returned.
pub fn split_symmetric(m: &Multiplier, a: &Subgroup) -> Result<SplittingData> {
    let g = m.group();
    if a.ambient() != g {
        bail!(Input, "subgroup lives in {}, multiplier on {g}", a.ambient());
    }
    let gens = a.basis_generators();
    let vanishes = match m.as_bicharacter().filter(|_| !matches!(m.backing, Backing::Table(_))) {
        Some(b) => gens.iter().all(|x| gens.iter().all(|y| b.eval(x, y).is_zero())),
        None => a.order() <= SPLIT_LIMIT && {
            let els = a.elements();
            els.iter().all(|x| els.iter().all(|y| m.eval(x, y).is_zero()))
        },
    };
    if vanishes {
        return Ok(SplittingData::zero(a));
    }
    let n = a.order();
    if n > SPLIT_LIMIT {
        bail!(Resource, "splitting is limited to subgroups of order {SPLIT_LIMIT}, got {n}");
    }
    let els = a.elements();
    let index: HashMap<&GroupElement, usize> = els.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let n = els.len();
    let mut vals = Vec::with_capacity(n * n);
    for x in &els {
        for y in &els {
            vals.push(m.eval(x, y));
        }
    }
    let val = |i: usize, j: usize| &vals[i * n + j];
    for i in 0..n {
        for j in 0..i {
            if val(i, j) != val(j, i) {
                bail!(Precondition, "multiplier is not symmetric on the subgroup: m({}, {}) != m({}, {})", els[i], els[j], els[j], els[i]);
            }
        }
    }
    let sum: Vec<usize> = (0..n * n).map(|k| index[&g.add(&els[k / n], &els[k % n])]).collect();
    let gen_idx: Vec<usize> = gens.iter().map(|x| index[x]).collect();

    let mut den = BigInt::one();
    for v in &vals {
        den = den.lcm(&v.denom());
    }
    let exp = BigInt::from(a.exponent());
    let retries = (n as f64).log2().ceil() as usize;
    let mut modulus = &den * &exp;
    for _ in 0..=retries {
        let scale = &modulus / &den;
        let rows = (0..n).flat_map(|i| gen_idx.iter().map(move |&j| (i, j))).map(|(i, j)| {
            let mut row = vec![BigInt::zero(); n];
            row[i] += 1;
            row[j] += 1;
            row[sum[i * n + j]] -= 1;
            let rhs = -(val(i, j).numer_over(&den).expect("common denominator") * &scale);
            (row, rhs)
        });
        let mut zero_row = vec![BigInt::zero(); n];
        zero_row[0] = BigInt::one();
        let rows = std::iter::once((zero_row, BigInt::zero())).chain(rows);
        let solution = match modulus.to_i128().filter(|&d| d < 1i128 << 62) {
            Some(md) => solve_congruences::<i128, BigInt>(
                rows.map(|(r, b)| (r.iter().map(|x| x.to_i128().unwrap()).collect(), b.to_i128().unwrap())),
                n,
                &md,
            )
            .map(|v| v.into_iter().map(BigInt::from).collect::<Vec<_>>()),
            None => solve_congruences::<BigInt, BigInt>(rows, n, &modulus),
        };
        if let Some(c0) = solution {
            let residual_ok = (0..n).all(|i| {
                (0..n).all(|j| {
                    let lhs = &c0[sum[i * n + j]] - &c0[i] - &c0[j];
                    let rhs = val(i, j).numer_over(&den).unwrap() * &scale;
                    (lhs - rhs).mod_floor(&modulus).is_zero()
                })
            });
            if !residual_ok {
                break;
            }
            let c = canonical_splitting(a, &els, c0, &modulus);
            let values = c.into_iter().map(|num| Phase::new(num, modulus.clone()).expect("positive modulus")).collect();
            let out = SplittingData::new(a, values)?;
            if let Some((x, y)) = out.defect(m) {
                bail!(Defect, "splitting residual nonzero at ({x}, {y})");
            }
            return Ok(out);
        }
        modulus *= &exp;
    }
    // the only legitimate reason for failure is a non-cocycle input
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = val(sum[i * n + j], k) + val(i, j);
                let rhs = val(i, sum[j * n + k]) + val(j, k);
                if lhs != rhs {
                    bail!(Precondition, "multiplier is not a cocycle on the subgroup at ({}, {}, {})", els[i], els[j], els[k]);
                }
            }
        }
    }
    bail!(Defect, "no splitting found for a symmetric cocycle on a subgroup of order {n}")
}

/// Lexicographic minimum of `c0 + χ` over all characters `χ` of `A`.
fn canonical_splitting(a: &Subgroup, els: &[GroupElement], c0: Vec<BigInt>, modulus: &BigInt) -> Vec<BigInt> {
    let q = a.quotient(&Subgroup::trivial(a.ambient())).expect("trivial subgroup is contained");
    let dual = q.group().clone();
    let proj: Vec<GroupElement> = els.iter().map(|x| q.project(x)).collect();
    let steps: Vec<BigInt> = dual.moduli().iter().map(|&d| modulus / BigInt::from(d)).collect();
    let mut best = c0.clone();
    for t in dual.elements() {
        let cand: Vec<BigInt> = c0
            .iter()
            .zip(&proj)
            .map(|(c, p)| {
                let chi: BigInt = t.coords().iter().zip(p.coords()).zip(&steps).map(|((ti, pi), s)| BigInt::from(ti * pi) * s).sum();
                (c + chi).mod_floor(modulus)
            })
            .collect();
        if cand < best {
            best = cand;
        }
    }
    best
}
