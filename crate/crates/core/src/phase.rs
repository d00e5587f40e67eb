//! Exact elements of the circle group, written additively as `Q/Z`.
//!
//! A [`Phase`] `q` stands for the unit complex number `exp(2πi·q)`. Values are
//! always kept in lowest terms with `0 <= num < den`. Denominators are
//! arbitrary precision; the common case of word-sized denominators avoids
//! heap allocation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// `den` fits in an `i64`; `0 <= num < den`.
    Small(i64, i64),
    /// Only used when `den > i64::MAX`.
    Big(BigInt, BigInt),
}

/// An exact element of `Q/Z`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Phase(Repr);

impl Phase {
    pub const fn zero() -> Self {
        Phase(Repr::Small(0, 1))
    }

    /// `num/den` reduced mod 1. Fails on a zero denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::Input("phase with zero denominator".into()));
        }
        Ok(Self::from_big(num.into(), den))
    }

    /// `num/den` reduced mod 1 for word-sized inputs. Panics if `den == 0`.
    pub fn from_ratio(num: i128, den: i128) -> Self {
        assert!(den != 0, "phase with zero denominator");
        let (mut num, mut den) = (num, den);
        if den < 0 {
            num = -num;
            den = -den;
        }
        num = num.rem_euclid(den);
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => Phase(Repr::Small(n, d)),
            _ => Self::from_big(BigInt::from(num), BigInt::from(den)),
        }
    }

    fn from_big(num: BigInt, den: BigInt) -> Self {
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        let num = num.mod_floor(&den);
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num / &g, den / &g) };
        match (num.to_i64(), den.to_i64()) {
            (Some(n), Some(d)) => Phase(Repr::Small(n, d)),
            _ => Phase(Repr::Big(num, den)),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(n, _) => n.clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(_, d) => d.clone(),
        }
    }

    /// `(num, den)` if the denominator fits in an `i64`.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match self.0 {
            Repr::Small(n, d) => Some((n, d)),
            Repr::Big(..) => None,
        }
    }

    /// Numerator of this phase written over denominator `den`, or `None` if
    /// `den` is not a multiple of the reduced denominator.
    pub fn numer_over(&self, den: &BigInt) -> Option<BigInt> {
        let (q, r) = den.div_rem(&self.denom());
        r.is_zero().then(|| self.numer() * q)
    }

    /// Integer multiple `k·q`.
    pub fn scale(&self, k: i64) -> Self {
        match self.0 {
            Repr::Small(n, d) => Self::from_ratio(n as i128 * k as i128, d as i128),
            Repr::Big(ref n, ref d) => Self::from_big(n * k, d.clone()),
        }
    }

    pub fn scale_big(&self, k: &BigInt) -> Self {
        Self::from_big(self.numer() * k, self.denom())
    }

    /// The real number in `[0, 1)` this phase represents.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(n, d) => {
                if d.bits() < 1000 {
                    return n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0);
                }
                let shift = d.bits() - 1000;
                let n = (n >> shift).to_f64().unwrap_or(0.0);
                let d = (d >> shift).to_f64().unwrap_or(1.0);
                n / d
            }
        }
    }

    /// `exp(2πi·q)`.
    pub fn to_complex<T: num_traits::Float>(&self) -> Complex<T> {
        let (s, c) = (std::f64::consts::TAU * self.to_f64()).sin_cos();
        Complex::new(T::from(c).unwrap(), T::from(s).unwrap())
    }

    /// Additive order of the phase, i.e. its reduced denominator.
    pub fn order(&self) -> BigInt {
        self.denom()
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::zero()
    }
}

impl<'a> Add<&'a Phase> for &'a Phase {
    type Output = Phase;
    fn add(self, rhs: &'a Phase) -> Phase {
        match (&self.0, &rhs.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                if d1 == d2 {
                    return Phase::from_ratio(*n1 as i128 + *n2 as i128, *d1 as i128);
                }
                let g = d1.gcd(d2) as i128;
                let l = (*d1 as i128 / g) * *d2 as i128;
                let num = *n1 as i128 * (l / *d1 as i128) + *n2 as i128 * (l / *d2 as i128);
                Phase::from_ratio(num, l)
            }
            _ => {
                let (n1, d1, n2, d2) = (self.numer(), self.denom(), rhs.numer(), rhs.denom());
                Phase::from_big(n1 * &d2 + n2 * &d1, d1 * d2)
            }
        }
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        &self + &rhs
    }
}

impl<'a> Add<&'a Phase> for Phase {
    type Output = Phase;
    fn add(self, rhs: &'a Phase) -> Phase {
        &self + rhs
    }
}

impl AddAssign<&Phase> for Phase {
    fn add_assign(&mut self, rhs: &Phase) {
        *self = &*self + rhs;
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = &*self + &rhs;
    }
}

impl Neg for &Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        match &self.0 {
            Repr::Small(0, _) => Phase::zero(),
            Repr::Small(n, d) => Phase(Repr::Small(d - n, *d)),
            Repr::Big(n, d) => Phase(Repr::Big(d - n, d.clone())),
        }
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        -&self
    }
}

impl<'a> Sub<&'a Phase> for &'a Phase {
    type Output = Phase;
    fn sub(self, rhs: &'a Phase) -> Phase {
        self + &(-rhs)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        &self - &rhs
    }
}

impl<'a> Sub<&'a Phase> for Phase {
    type Output = Phase;
    fn sub(self, rhs: &'a Phase) -> Phase {
        &self - rhs
    }
}

impl SubAssign<&Phase> for Phase {
    fn sub_assign(&mut self, rhs: &Phase) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::zero(), |acc, x| acc + x)
    }
}

impl Ord for Phase {
    /// Order of the representatives in `[0, 1)`.
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                (*n1 as i128 * *d2 as i128).cmp(&(*n2 as i128 * *d1 as i128))
            }
            _ => (self.numer() * other.denom()).cmp(&(other.numer() * self.denom())),
        }
    }
}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(0, _) => write!(f, "0"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(n, d) => write!(f, "{n}/{d}"),
        }
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({self})")
    }
}

impl FromStr for Phase {
    type Err = Error;

    /// Accepts `"num/den"` or a bare integer; the value is reduced mod 1.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("malformed phase literal {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Phase::new(n, d)
            }
            None => {
                let _: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Phase::zero())
            }
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: i128, d: i128) -> Phase {
        Phase::from_ratio(n, d)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(10, 9), p(1, 9));
        assert_eq!(p(-1, 2), p(1, 2));
        assert_eq!(p(6, 4), p(1, 2));
        assert_eq!(p(4, 4), Phase::zero());
        assert_eq!(p(3, -9).to_string(), "2/3");
        assert_eq!(Phase::zero().to_string(), "0");
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("1/9".parse::<Phase>().unwrap(), p(1, 9));
        assert_eq!("-1/4".parse::<Phase>().unwrap(), p(3, 4));
        assert_eq!("0".parse::<Phase>().unwrap(), Phase::zero());
        assert!("1/0".parse::<Phase>().is_err());
        assert!("x/2".parse::<Phase>().is_err());
    }

    #[test]
    fn big_denominators_round_trip() {
        let den = BigInt::from(3u8).pow(60);
        let a = Phase::new(1, den.clone()).unwrap();
        assert!(a.as_small().is_none());
        let b = a.scale_big(&den);
        assert!(b.is_zero());
        let sum = &a + &(-&a);
        assert!(sum.is_zero());
        assert_eq!(a.to_string().parse::<Phase>().unwrap(), a);
        assert!((a.to_f64() - 3f64.powi(-60)).abs() < 1e-40);
    }

    #[test]
    fn mixed_small_and_big() {
        let den = BigInt::from(2u8).pow(70);
        let a = Phase::new(BigInt::from(2u8).pow(69), den).unwrap();
        assert_eq!(a, p(1, 2));
        assert!(a.as_small().is_some());
    }

    #[test]
    fn complex_value() {
        let z = p(1, 4).to_complex::<f64>();
        assert!((z.re).abs() < 1e-15 && (z.im - 1.0).abs() < 1e-15);
    }

    fn phase_strategy() -> impl Strategy<Value = Phase> {
        (any::<i64>(), 1i64..10_000).prop_map(|(n, d)| p(n as i128, d as i128))
    }

    proptest! {
        #[test]
        fn abelian_group_laws(a in phase_strategy(), b in phase_strategy(), c in phase_strategy()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a + &(-&a)).is_zero());
            prop_assert_eq!(&a - &b, &a + &(-&b));
            let (n, d) = (a + b).as_small().unwrap();
            prop_assert!(0 <= n && n < d && n.gcd(&d) == 1);
        }

        #[test]
        fn scaling_is_repeated_addition(a in phase_strategy(), k in 0i64..20) {
            let mut acc = Phase::zero();
            for _ in 0..k { acc += &a; }
            prop_assert_eq!(a.scale(k), acc);
            prop_assert_eq!(a.scale(-k), -a.scale(k));
        }
    }
}
