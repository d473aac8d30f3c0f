//! Exact base fields: prime fields `F_p` and the rationals.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The base field `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    /// `F_p`, rejecting composite `p`.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// The default base field, `F_101`.
    pub fn default_prime() -> Self {
        FieldSpec::Prime(101)
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Fp {
                value: (n.rem_euclid(p as i64)) as u64,
                p,
            },
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// `num / den` in the field. Panics if `den` vanishes in the field.
    pub fn frac(self, num: i64, den: i64) -> Scalar {
        let d = self.int(den).inv().expect("denominator vanishes in the field");
        self.int(num) * d
    }

    /// A canonical label, `fp:<p>` or `q`.
    pub fn label(self) -> alloc::string::String {
        match self {
            FieldSpec::Prime(p) => alloc::format!("fp:{p}"),
            FieldSpec::Rationals => alloc::string::String::from("q"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Residues are kept in `[0, p)`, fractions reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { value: u64, p: u64 },
    Q(BigRational),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
            Scalar::Q(_) => FieldSpec::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Fp { value, p } => Scalar::Fp {
                value: pow_mod(*value, *p - 2, *p),
                p: *p,
            },
            Scalar::Q(q) => Scalar::Q(q.recip()),
        })
    }

    pub fn pow(&self, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field().one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * &base;
        }
        Some(acc)
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.field(), other.field(), "scalar field mismatch");
    }
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let m = p as u128;
    let mut base = (b % p) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order used only for deterministic containers.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Fp { value: a, p: pa }, Scalar::Fp { value: b, p: pb }) => (pa, a).cmp(&(pb, b)),
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp(b),
            (Scalar::Fp { .. }, Scalar::Q(_)) => Ordering::Less,
            (Scalar::Q(_), Scalar::Fp { .. }) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { value, .. } => write!(f, "{value}"),
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { value, p } => Scalar::Fp {
                value: (*p - *value) % *p,
                p: *p,
            },
            Scalar::Q(q) => Scalar::Q(-q),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Scalar {
    /// Integer value if the scalar is a (small) rational integer.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Scalar::Fp { value, .. } => Some(*value as i64),
            Scalar::Q(q) if q.is_integer() => {
                let n = q.numer();
                if n.abs() < BigInt::from(i64::MAX) {
                    alloc::string::ToString::to_string(n).parse().ok()
                } else {
                    None
                }
            }
            Scalar::Q(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let k = FieldSpec::prime(101).unwrap();
        let a = k.int(57);
        let b = k.int(-3);
        assert_eq!(b, k.int(98));
        assert_eq!(&a * &a.inv().unwrap(), k.one());
        assert_eq!(&a + &(-&a), k.zero());
        assert_eq!(k.frac(1, 2) * k.int(2), k.one());
    }

    #[test]
    fn composite_rejected() {
        assert_eq!(FieldSpec::prime(100), Err(Error::NotPrime(100)));
        assert!(FieldSpec::prime(1).is_err());
    }

    #[test]
    fn rationals_are_reduced() {
        let q = FieldSpec::Rationals;
        let x = q.frac(6, 4);
        assert_eq!(alloc::format!("{x}"), "3/2");
        assert_eq!(x.inv().unwrap(), q.frac(2, 3));
        assert!(q.zero().inv().is_none());
    }
}
