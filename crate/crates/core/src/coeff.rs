//! Coefficient domains: the integers, the rationals and prime fields.
//!
//! Coefficients are always carried as [`BigRational`]. The domain decides
//! which values are legal (integers only for ℤ, residues `0..p` for F_p) and
//! how the field operations behave.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Coeff = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientDomain {
    Integers,
    Rationals,
    PrimeField(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoefficientDomain {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientDomain::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientDomain::Integers)
    }

    pub fn characteristic(&self) -> Option<u64> {
        match self {
            CoefficientDomain::PrimeField(p) => Some(*p),
            _ => None,
        }
    }

    /// The field used for gcd and elimination: ℚ for ℤ, the domain itself otherwise.
    pub fn fraction_field(&self) -> Self {
        match self {
            CoefficientDomain::Integers => CoefficientDomain::Rationals,
            d => *d,
        }
    }

    pub fn ensure_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DomainMismatch(self.to_string(), other.to_string()))
        }
    }

    /// Brings a rational value into canonical form for this domain.
    pub fn reduce(&self, v: Coeff) -> Result<Coeff> {
        match self {
            CoefficientDomain::Integers => {
                if v.is_integer() {
                    Ok(v)
                } else {
                    Err(Error::InvalidCoefficient(v.to_string(), self.to_string()))
                }
            }
            CoefficientDomain::Rationals => Ok(v),
            CoefficientDomain::PrimeField(p) => {
                let p = BigInt::from(*p);
                let num = v.numer().mod_floor(&p);
                let den = v.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::InvalidCoefficient(v.to_string(), self.to_string()));
                }
                let inv = mod_inverse(&den, &p);
                Ok(Coeff::from_integer((num * inv).mod_floor(&p)))
            }
        }
    }

    pub fn from_int(&self, v: i64) -> Coeff {
        self.reduce(Coeff::from_integer(BigInt::from(v)))
            .expect("integers are valid in every domain")
    }

    pub fn one(&self) -> Coeff {
        Coeff::one()
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.wrap(a + b)
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.wrap(a - b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.wrap(a * b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.wrap(-a)
    }

    /// Exact quotient `a / b` inside the domain.
    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            CoefficientDomain::Integers => {
                let q = a / b;
                if q.is_integer() {
                    Ok(q)
                } else {
                    Err(Error::NotDivisible)
                }
            }
            CoefficientDomain::Rationals => Ok(a / b),
            CoefficientDomain::PrimeField(p) => {
                let p = BigInt::from(*p);
                let inv = mod_inverse(&b.to_integer(), &p);
                Ok(Coeff::from_integer((a.to_integer() * inv).mod_floor(&p)))
            }
        }
    }

    // results of ring operations on canonical inputs never need validation,
    // only the F_p residue reduction
    fn wrap(&self, v: Coeff) -> Coeff {
        match self {
            CoefficientDomain::PrimeField(p) => {
                Coeff::from_integer(v.to_integer().mod_floor(&BigInt::from(*p)))
            }
            _ => v,
        }
    }

    /// Parses a decimal coefficient string (`"−3"`, `"5/2"`) into this domain.
    pub fn parse_coeff(&self, s: &str) -> Result<Coeff> {
        let v = parse_rational(s)?;
        self.reduce(v)
    }
}

pub fn parse_rational(s: &str) -> Result<Coeff> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid coefficient {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Coeff::new(n, d))
    } else {
        Ok(Coeff::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
    }
}

/// Prints a coefficient as `n` or `n/d`, the inverse of [`parse_rational`].
pub fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    debug_assert!(e.gcd.is_one() || e.gcd == -BigInt::one());
    e.x.mod_floor(p)
}

/// Least common multiple of the denominators, always positive.
pub fn denominator_lcm<'a>(coeffs: impl IntoIterator<Item = &'a Coeff>) -> BigInt {
    coeffs
        .into_iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Gcd of the numerators of integral values, always non-negative.
pub fn integer_content<'a>(coeffs: impl IntoIterator<Item = &'a Coeff>) -> BigInt {
    coeffs
        .into_iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
        .abs()
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientDomain::Integers => write!(f, "Z"),
            CoefficientDomain::Rationals => write!(f, "Q"),
            CoefficientDomain::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for CoefficientDomain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(CoefficientDomain::Integers),
            "Q" => Ok(CoefficientDomain::Rationals),
            t => {
                let p = t
                    .strip_prefix('F')
                    .and_then(|n| n.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown domain {t:?}")))?;
                CoefficientDomain::prime_field(p)
            }
        }
    }
}

impl Serialize for CoefficientDomain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CoefficientDomain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
