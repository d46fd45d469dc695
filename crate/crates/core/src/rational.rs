//! Exact dyadic weights and rational helpers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A nonnegative dyadic rational `num / 2^exp`, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigUint,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: BigUint, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_integer(v: u64) -> Self {
        Dyadic { num: BigUint::from(v), exp: 0 }
    }

    /// `Σ coefficients[i] · 2^{-i}`.
    pub fn from_coefficients(coefficients: &[u64]) -> Self {
        let top = coefficients.len().saturating_sub(1) as u32;
        let mut num = BigUint::zero();
        for (i, &a) in coefficients.iter().enumerate() {
            num += BigUint::from(a) << (top - i as u32);
        }
        Dyadic::new(num, top)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0).min(u64::from(self.exp)) as u32;
        self.num >>= tz;
        self.exp -= tz;
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    /// Denominator exponent: the value is `numerator / 2^exponent`.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num.clone()), BigInt::one() << self.exp)
    }

    /// Whether the value is at least the integer `m`.
    pub fn at_least(&self, m: u64) -> bool {
        self.num >= BigUint::from(m) << self.exp
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        (&self.num << (e - self.exp)).cmp(&(&other.num << (e - other.exp)))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigUint::one() << self.exp)
        }
    }
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Formats a rational as `a` or `a/b`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a` or `a/b`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((a, b)) => {
            let (a, b) = (a.trim().parse::<BigInt>().ok()?, b.trim().parse::<BigInt>().ok()?);
            (!b.is_zero()).then(|| BigRational::new(a, b))
        }
    }
}

pub fn floor(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}
