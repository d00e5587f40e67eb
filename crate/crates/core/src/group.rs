//! Finite abelian groups `Z/n_1 × … × Z/n_r`, their elements, subgroups and
//! quotients.
//!
//! Elements are coordinate vectors. The canonical enumeration order
//! ("index order") is mixed radix with coordinate 0 varying fastest, so
//! `(1,0)` precedes `(0,1)`. Every "smallest element" choice in the crate
//! (coset sections, greedy extensions, lexicographic minimisation) refers to
//! this order.
//!
//! A subgroup is stored as the column Hermite form of its preimage lattice in
//! `Z^r`, which always contains the relation vectors `n_i·e_i`. Membership,
//! coset keys and quotients are all exact lattice computations.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{bail, Error, Result};
use crate::int::{column_echelon, integer_kernel, smith_decompose, IntMatrix};

/// Largest group order for which full enumeration is attempted.
pub const ENUMERATION_LIMIT: u64 = 1 << 22;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub(crate) Vec<i64>);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `Z/n_1 × … × Z/n_r` with `n_i >= 1`. The empty product is the trivial group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    moduli: Vec<i64>,
}

/// Result of [`FinAbGroup::p_regularity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PRegularity {
    pub divisible: bool,
    pub injective: bool,
    pub regular: bool,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FinAbGroup {
    pub fn new(moduli: Vec<i64>) -> Result<Self> {
        if let Some(n) = moduli.iter().find(|&&n| n < 1) {
            bail!(Input, "cyclic modulus {n} must be at least 1");
        }
        let g = FinAbGroup { moduli };
        if g.checked_order().is_none() {
            bail!(Resource, "group order overflows u64");
        }
        Ok(g)
    }

    pub fn cyclic(n: i64) -> Self {
        Self::new(vec![n]).expect("positive modulus")
    }

    /// `(Z/n)^r`
    pub fn power(n: i64, r: usize) -> Self {
        Self::new(vec![n; r]).expect("positive modulus")
    }

    pub fn trivial() -> Self {
        FinAbGroup { moduli: Vec::new() }
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    fn checked_order(&self) -> Option<u64> {
        self.moduli.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n as u64))
    }

    pub fn order(&self) -> u64 {
        self.checked_order().expect("order checked at construction")
    }

    pub fn exponent(&self) -> i64 {
        self.moduli.iter().fold(1, |acc, n| acc.lcm(n))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Direct product, coordinates concatenated.
    pub fn product(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        FinAbGroup::new(moduli).expect("product of valid groups")
    }

    /// Reduces `coords` into the group.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            bail!(Input, "element {coords:?} has {} coordinates, group {self} has rank {}", coords.len(), self.rank());
        }
        Ok(GroupElement(coords.iter().zip(&self.moduli).map(|(c, n)| c.rem_euclid(*n)).collect()))
    }

    /// Checks that `x` is a reduced element of this group.
    pub fn check(&self, x: &GroupElement) -> Result<()> {
        if x.len() != self.rank() || x.0.iter().zip(&self.moduli).any(|(c, n)| *c < 0 || c >= n) {
            bail!(Input, "{x} is not an element of {self}");
        }
        Ok(())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// Unit vector `e_i` (zero if `n_i = 1`).
    pub fn basis_element(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1 % self.moduli[i];
        GroupElement(c)
    }

    /// `e_i` for every coordinate with `n_i > 1`.
    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).filter(|&i| self.moduli[i] > 1).map(|i| self.basis_element(i)).collect()
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(x.0.iter().zip(&y.0).zip(&self.moduli).map(|((a, b), n)| (a + b) % n).collect())
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(x.0.iter().zip(&y.0).zip(&self.moduli).map(|((a, b), n)| (a - b).rem_euclid(*n)).collect())
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement(x.0.iter().zip(&self.moduli).map(|(a, n)| (-a).rem_euclid(*n)).collect())
    }

    pub fn scale(&self, x: &GroupElement, k: i64) -> GroupElement {
        GroupElement(
            x.0.iter().zip(&self.moduli).map(|(a, n)| ((*a as i128 * k as i128).rem_euclid(*n as i128)) as i64).collect(),
        )
    }

    pub fn double(&self, x: &GroupElement) -> GroupElement {
        self.scale(x, 2)
    }

    /// Position of `x` in index order.
    pub fn index_of(&self, x: &GroupElement) -> u64 {
        let mut idx = 0u64;
        let mut stride = 1u64;
        for (c, n) in x.0.iter().zip(&self.moduli) {
            idx += *c as u64 * stride;
            stride *= *n as u64;
        }
        idx
    }

    pub fn element_at(&self, mut idx: u64) -> GroupElement {
        GroupElement(
            self.moduli
                .iter()
                .map(|&n| {
                    let c = idx % n as u64;
                    idx /= n as u64;
                    c as i64
                })
                .collect(),
        )
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// Invariant factors `d_1 | d_2 | …` (factors equal to 1 dropped).
    pub fn invariant_factors(&self) -> Vec<i64> {
        let r = self.rank();
        let mut diag = IntMatrix::<i128>::zeros(r, r);
        for (i, &n) in self.moduli.iter().enumerate() {
            diag.set(i, i, n as i128);
        }
        smith_decompose(&diag).diagonal().into_iter().filter(|&d| d != 1).map(|d| d as i64).collect()
    }

    /// Isomorphic group in invariant-factor form. Idempotent.
    pub fn canonical(&self) -> FinAbGroup {
        FinAbGroup { moduli: self.invariant_factors() }
    }

    pub fn is_invariant_factor_form(&self) -> bool {
        self.moduli.iter().all(|&n| n > 1) && self.moduli.windows(2).all(|w| w[1] % w[0] == 0)
    }

    /// Is every nonzero element of order 2?
    pub fn is_elementary_2_group(&self) -> bool {
        self.moduli.iter().all(|&n| n == 1 || n == 2)
    }

    pub fn p_regularity(&self, p: u64) -> Result<PRegularity> {
        if !is_prime(p) {
            bail!(Input, "{p} is not prime");
        }
        let regular = self.moduli.iter().all(|&n| n as u64 % p != 0);
        // multiplication by p on a finite group is injective iff surjective
        Ok(PRegularity { divisible: regular, injective: regular, regular })
    }

    /// Unique `y` with `2y = x`.
    pub fn halve(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        if !self.p_regularity(2)?.regular {
            bail!(Unsupported, "halving needs a group of odd order, got {self}");
        }
        Ok(GroupElement(x.0.iter().zip(&self.moduli).map(|(c, n)| (c * ((n + 1) / 2)) % n).collect()))
    }

    /// Lift of the relation lattice `diag(n_i)` as `i128` columns.
    fn relation_columns(&self) -> Vec<Vec<i128>> {
        (0..self.rank())
            .map(|i| {
                let mut v = vec![0i128; self.rank()];
                v[i] = self.moduli[i] as i128;
                v
            })
            .collect()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.moduli.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({self})")
    }
}

/// A subgroup of a [`FinAbGroup`].
#[derive(Clone)]
pub struct Subgroup {
    ambient: FinAbGroup,
    generators: Vec<GroupElement>,
    /// Lower-triangular column Hermite form of the preimage lattice.
    basis: IntMatrix<i64>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(<{:?}> of order {} in {})", self.basis_generators(), self.order(), self.ambient)
    }
}

impl Subgroup {
    /// Smallest subgroup containing `gens`.
    pub fn span(ambient: &FinAbGroup, gens: &[GroupElement]) -> Result<Self> {
        for g in gens {
            ambient.check(g)?;
        }
        let r = ambient.rank();
        let mut cols: Vec<Vec<i128>> = gens.iter().map(|g| g.0.iter().map(|&c| c as i128).collect()).collect();
        cols.extend(ambient.relation_columns());
        let basis = if r == 0 {
            IntMatrix::zeros(0, 0)
        } else {
            let e = column_echelon(&IntMatrix::from_columns(r, &cols));
            debug_assert_eq!(e.pivots, (0..r).collect::<Vec<_>>());
            let mut b = IntMatrix::<i64>::zeros(r, r);
            for i in 0..r {
                for j in 0..=i {
                    b.set(i, j, *e.h.get(i, j) as i64);
                }
            }
            b
        };
        Ok(Subgroup { ambient: ambient.clone(), generators: gens.to_vec(), basis })
    }

    pub fn from_coords(ambient: &FinAbGroup, gens: &[Vec<i64>]) -> Result<Self> {
        let gens = gens.iter().map(|g| ambient.element(g)).collect::<Result<Vec<_>>>()?;
        Self::span(ambient, &gens)
    }

    pub fn trivial(ambient: &FinAbGroup) -> Self {
        Self::span(ambient, &[]).expect("trivial subgroup")
    }

    pub fn whole(ambient: &FinAbGroup) -> Self {
        Self::span(ambient, &ambient.generators()).expect("whole group")
    }

    /// Elements `x` of `ambient` with `Σ_i x_i·M[i][j] ≡ 0 (mod targets[j])` for all `j`.
    ///
    /// The map must be well defined on the group, i.e. `n_i·M[i][j] ≡ 0 (mod targets[j])`.
    pub fn kernel_of(ambient: &FinAbGroup, images: &IntMatrix<i128>, targets: &[i128]) -> Result<Self> {
        let (r, s) = (ambient.rank(), targets.len());
        assert_eq!(images.rows(), r);
        assert_eq!(images.cols(), s);
        for i in 0..r {
            for (j, t) in targets.iter().enumerate() {
                if (ambient.moduli[i] as i128 * images.get(i, j)).rem_euclid(*t) != 0 {
                    bail!(Input, "homomorphism is not well defined on coordinate {i}");
                }
            }
        }
        if r == 0 || s == 0 {
            return Ok(Self::whole(ambient));
        }
        // kernel of [Mᵀ | diag(t)] projected to the first r coordinates
        let mut system = IntMatrix::<i128>::zeros(s, r + s);
        for j in 0..s {
            for i in 0..r {
                system.set(j, i, *images.get(i, j));
            }
            system.set(j, r + j, targets[j]);
        }
        let gens = integer_kernel(&system)
            .into_iter()
            .map(|v| {
                GroupElement(
                    v[..r]
                        .iter()
                        .zip(&ambient.moduli)
                        .map(|(c, n)| c.rem_euclid(*n as i128) as i64)
                        .collect(),
                )
            })
            .collect::<Vec<_>>();
        Self::span(ambient, &gens)
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    /// Generators as supplied at construction.
    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Nonzero columns of the lattice basis, reduced into the group. They generate the subgroup.
    pub fn basis_generators(&self) -> Vec<GroupElement> {
        let r = self.ambient.rank();
        let mut out = Vec::new();
        for j in 0..r {
            let col: Vec<i64> = (0..r).map(|i| *self.basis.get(i, j)).collect();
            let g = self.ambient.element(&col).expect("rank matches");
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        out
    }

    pub fn lattice_basis(&self) -> &IntMatrix<i64> {
        &self.basis
    }

    /// `|ambient| / det(lattice)`.
    pub fn order(&self) -> u64 {
        let index: u64 = (0..self.ambient.rank()).map(|i| *self.basis.get(i, i) as u64).product();
        self.ambient.order() / index
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> i64 {
        self.basis_generators().iter().fold(1, |acc, x| acc.lcm(&element_order(&self.ambient, x)))
    }

    pub fn index(&self) -> u64 {
        self.ambient.order() / self.order()
    }

    /// Canonical representative of `x + A`, reduced against the lattice by
    /// forward substitution. Two elements share a coset iff their keys agree.
    pub fn coset_key(&self, x: &GroupElement) -> GroupElement {
        let r = self.ambient.rank();
        let mut v: Vec<i128> = x.0.iter().map(|&c| c as i128).collect();
        for i in 0..r {
            let h = *self.basis.get(i, i) as i128;
            let q = Integer::div_floor(&v[i], &h);
            if q != 0 {
                for (k, vk) in v.iter_mut().enumerate().skip(i) {
                    *vk -= q * *self.basis.get(k, i) as i128;
                }
            }
        }
        GroupElement(v.iter().zip(&self.ambient.moduli).map(|(c, n)| c.rem_euclid(*n as i128) as i64).collect())
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.len() == self.ambient.rank() && self.coset_key(x).is_zero()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && self.basis_generators().iter().all(|g| other.contains(g))
    }

    /// Coordinates `t` with `x = H·t` for a lift of `x` in the lattice.
    fn lattice_coords(&self, x: &[i128]) -> Vec<i128> {
        let r = self.ambient.rank();
        let mut v = x.to_vec();
        let mut t = vec![0i128; r];
        for i in 0..r {
            let h = *self.basis.get(i, i) as i128;
            debug_assert_eq!(v[i] % h, 0, "vector not in lattice");
            t[i] = v[i] / h;
            for (k, vk) in v.iter_mut().enumerate().skip(i) {
                *vk -= t[i] * *self.basis.get(k, i) as i128;
            }
        }
        t
    }

    /// All elements, in index order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let r = self.ambient.rank();
        let counts: Vec<i64> = (0..r).map(|i| self.ambient.moduli[i] / *self.basis.get(i, i)).collect();
        let total: u64 = counts.iter().map(|&c| c as u64).product();
        assert!(total <= ENUMERATION_LIMIT, "subgroup of order {total} is too large to enumerate");
        let mut out = Vec::with_capacity(total as usize);
        let mut t = vec![0i64; r];
        for _ in 0..total {
            let mut v = vec![0i128; r];
            for j in 0..r {
                if t[j] != 0 {
                    for (i, vi) in v.iter_mut().enumerate() {
                        *vi += t[j] as i128 * *self.basis.get(i, j) as i128;
                    }
                }
            }
            out.push(GroupElement(
                v.iter().zip(&self.ambient.moduli).map(|(c, n)| c.rem_euclid(*n as i128) as i64).collect(),
            ));
            for j in 0..r {
                t[j] += 1;
                if t[j] < counts[j] {
                    break;
                }
                t[j] = 0;
            }
        }
        out.sort_by_key(|x| self.ambient.index_of(x));
        out
    }

    /// `{x : 2x ∈ A}`
    pub fn double_preimage(&self) -> Subgroup {
        self.preimage_under_scaling(2)
    }

    /// `{x : kx ∈ A}`
    pub fn preimage_under_scaling(&self, k: i64) -> Subgroup {
        let q = Subgroup::whole(&self.ambient).quotient(self).expect("subgroup of the whole group");
        // x ↦ project(kx) = k·U·x  (mod d)
        let r = self.ambient.rank();
        let s = q.group.rank();
        let mut images = IntMatrix::<i128>::zeros(r, s);
        for i in 0..r {
            let e = self.ambient.basis_element(i);
            let pe = q.project(&e);
            for j in 0..s {
                images.set(i, j, k as i128 * pe.0[j] as i128);
            }
        }
        let targets: Vec<i128> = q.group.moduli.iter().map(|&d| d as i128).collect();
        Subgroup::kernel_of(&self.ambient, &images, &targets).expect("scaling descends to the quotient")
    }

    /// `{2a : a ∈ A}`
    pub fn double_image(&self) -> Subgroup {
        self.image_under_scaling(2)
    }

    pub fn image_under_scaling(&self, k: i64) -> Subgroup {
        let gens: Vec<GroupElement> = self.basis_generators().iter().map(|g| self.ambient.scale(g, k)).collect();
        Subgroup::span(&self.ambient, &gens).expect("images stay in the ambient group")
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.ambient, other.ambient);
        // x ∈ A ∩ B  iff  x ∈ A and its class in G/B vanishes
        let q = Subgroup::whole(&self.ambient).quotient(other).expect("subgroup");
        let gens = self.basis_generators();
        if gens.is_empty() {
            return self.clone();
        }
        // parametrise A by its generators and solve for the kernel of the composite map
        let s = q.group.rank();
        let k = gens.len();
        let mut images = IntMatrix::<i128>::zeros(k, s);
        let mut dom_moduli = Vec::with_capacity(k);
        for (i, g) in gens.iter().enumerate() {
            let pg = q.project(g);
            for j in 0..s {
                images.set(i, j, pg.0[j] as i128);
            }
            dom_moduli.push(element_order(&self.ambient, g));
        }
        let dom = FinAbGroup::new(dom_moduli).expect("positive orders");
        let targets: Vec<i128> = q.group.moduli.iter().map(|&d| d as i128).collect();
        let ker = Subgroup::kernel_of(&dom, &images, &targets).expect("well defined");
        let elems: Vec<GroupElement> = ker
            .basis_generators()
            .iter()
            .map(|c| {
                gens.iter().zip(&c.0).fold(self.ambient.zero(), |acc, (g, &t)| self.ambient.add(&acc, &self.ambient.scale(g, t)))
            })
            .collect();
        Subgroup::span(&self.ambient, &elems).expect("elements of the ambient group")
    }

    /// Quotient `self / sub`; `sub` must be contained in `self`.
    pub fn quotient(&self, sub: &Subgroup) -> Result<Quotient> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::Input("quotient by a subgroup that is not contained in the parent".into()));
        }
        let r = self.ambient.rank();
        // C = H_self⁻¹·H_sub, exact since Λ_sub ⊆ Λ_self
        let mut cmat = IntMatrix::<i128>::zeros(r, r);
        for j in 0..r {
            let col: Vec<i128> = (0..r).map(|i| *sub.basis.get(i, j) as i128).collect();
            let t = self.lattice_coords(&col);
            for i in 0..r {
                cmat.set(i, j, t[i]);
            }
        }
        let smith = smith_decompose(&cmat);
        let diag = smith.diagonal();
        let kept: Vec<usize> = (0..diag.len()).filter(|&i| diag[i] != 1).collect();
        let moduli: Vec<i64> = kept.iter().map(|&i| diag[i] as i64).collect();
        let group = FinAbGroup::new(moduli).expect("finite quotient");
        let mut proj = IntMatrix::<i128>::zeros(kept.len(), r);
        for (a, &i) in kept.iter().enumerate() {
            for j in 0..r {
                proj.set(a, j, *smith.u.get(i, j));
            }
        }
        let mut q = Quotient { parent: self.clone(), sub: sub.clone(), group, proj, section: Vec::new() };
        let mut section: Vec<Option<GroupElement>> = vec![None; q.group.order() as usize];
        let mut filled = 0;
        for x in self.elements() {
            let idx = q.group.index_of(&q.project(&x)) as usize;
            if section[idx].is_none() {
                section[idx] = Some(x);
                filled += 1;
                if filled == section.len() {
                    break;
                }
            }
        }
        q.section = section.into_iter().map(|s| s.expect("projection is onto")).collect();
        Ok(q)
    }

    /// Smallest representative of each coset of `self` in the ambient group.
    pub fn cosets(&self) -> Vec<GroupElement> {
        Subgroup::whole(&self.ambient).quotient(self).expect("subgroup of the whole group").section
    }
}

/// Additive order of `x`.
pub fn element_order(g: &FinAbGroup, x: &GroupElement) -> i64 {
    x.0.iter().zip(&g.moduli).fold(1, |acc, (c, n)| acc.lcm(&(n / c.gcd(n))))
}

/// `H/A` for subgroups `A ≤ H`, with an invariant-factor model of the quotient.
#[derive(Clone, Debug)]
pub struct Quotient {
    parent: Subgroup,
    sub: Subgroup,
    group: FinAbGroup,
    proj: IntMatrix<i128>,
    section: Vec<GroupElement>,
}

impl Quotient {
    /// The quotient group, in invariant-factor form.
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn parent(&self) -> &Subgroup {
        &self.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    /// Homomorphism `H → H/A`; `x` must lie in `H`.
    pub fn project(&self, x: &GroupElement) -> GroupElement {
        debug_assert!(self.parent.contains(x));
        let lift: Vec<i128> = x.0.iter().map(|&c| c as i128).collect();
        let t = self.parent.lattice_coords(&lift);
        let y = self.proj.mul_vec(&t);
        GroupElement(y.iter().zip(&self.group.moduli).map(|(c, d)| c.rem_euclid(*d as i128) as i64).collect())
    }

    /// Smallest element (index order) of the coset `q`.
    pub fn section(&self, q: &GroupElement) -> &GroupElement {
        &self.section[self.group.index_of(q) as usize]
    }

    /// Representatives in order of the quotient elements.
    pub fn representatives(&self) -> &[GroupElement] {
        &self.section
    }

    /// Lookup table from coset key (in the ambient group) to quotient index.
    pub fn key_table(&self) -> HashMap<GroupElement, usize> {
        self.section.iter().enumerate().map(|(i, r)| (self.sub.coset_key(r), i)).collect()
    }
}
