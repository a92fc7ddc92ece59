//! Coefficient fields: the rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Choice of coefficient field for homology and minimalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum FieldSpec {
    #[default]
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// Brings a rational into canonical form for this field: unchanged over
    /// the rationals, a residue in `[0, p)` otherwise.
    pub fn canonical(&self, q: &BigRational) -> Result<BigRational> {
        match self {
            FieldSpec::Rationals => Ok(q.clone()),
            FieldSpec::PrimeField(p) => {
                let k = Zp::new(*p);
                let e = k.from_rational(q).ok_or_else(|| {
                    Error::Inconsistent(format!("denominator of {q} vanishes mod {p}"))
                })?;
                Ok(k.to_rational(&e))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::PrimeField(p) => write!(f, "ZZ/{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// `q` for the rationals, `p:<prime>` for a prime field.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" | "Q" | "QQ" => Ok(FieldSpec::Rationals),
            _ => {
                let p = s
                    .strip_prefix("p:")
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| Error::InvalidField(format!("expected `q` or `p:<prime>`, got `{s}`")))?;
                FieldSpec::prime(p)
            }
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic interface used by the elimination routines.
#[allow(clippy::wrong_self_convention)]
pub trait Field {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    fn to_rational(&self, a: &Self::Elem) -> BigRational;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(v)))
            .expect("integers embed in every field")
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

/// Integers modulo a prime `p < 2^31`.
#[derive(Clone, Copy, Debug)]
pub struct Zp {
    p: u64,
}

impl Zp {
    pub fn new(p: u32) -> Self {
        debug_assert!(is_prime(p));
        Zp { p: p as u64 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }
}

impl Field for Zp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let n = self.reduce_bigint(q.numer());
        let d = self.reduce_bigint(q.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(&n, &self.inv(&d)))
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
}

/// Formats a rational as `n` or `n/d`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}
