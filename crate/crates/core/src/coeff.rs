//! Series coefficients: exact rationals, or rational approximants carrying a
//! decimal precision for computations that need exp/log of real constants.

use crate::error::{Error, Result};
use num_bigint::{BigInt, Sign as IntSign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

pub const DEFAULT_NUMERIC_PRECISION: u32 = 50;
const GUARD_DIGITS: u32 = 10;

/// A real coefficient. `Exact` is an arbitrary rational in lowest terms;
/// `Numeric` is a rational approximant accurate to the stored number of
/// decimal digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Exact(BigRational),
    Numeric(BigRational, u32),
}

impl Coeff {
    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Coeff::Exact(BigRational::from_integer(n.into()))
    }

    pub fn ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        Coeff::Exact(BigRational::new(p.into(), q.into()))
    }

    pub fn zero() -> Self {
        Coeff::from_int(0)
    }

    pub fn one() -> Self {
        Coeff::from_int(1)
    }

    pub fn numeric(r: BigRational, precision: u32) -> Self {
        Coeff::Numeric(round(r, precision + GUARD_DIGITS), precision)
    }

    pub fn rational(&self) -> &BigRational {
        match self {
            Coeff::Exact(r) | Coeff::Numeric(r, _) => r,
        }
    }

    pub fn precision(&self) -> Option<u32> {
        match self {
            Coeff::Exact(_) => None,
            Coeff::Numeric(_, p) => Some(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational().is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rational().is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.rational().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.rational().is_negative()
    }

    /// True for integers, i.e. denominator 1.
    pub fn is_integer(&self) -> bool {
        self.rational().is_integer()
    }

    /// True for `m / 2^n`.
    pub fn is_dyadic(&self) -> bool {
        let mut d = self.rational().denom().clone();
        while (&d % 2u8).is_zero() {
            d /= 2;
        }
        d.is_one()
    }

    fn lift(&self, r: BigRational) -> Coeff {
        match self {
            Coeff::Exact(_) => Coeff::Exact(r),
            Coeff::Numeric(_, p) => Coeff::Numeric(r, *p),
        }
    }

    fn join(&self, other: &Coeff, r: BigRational) -> Coeff {
        match (self, other) {
            (Coeff::Exact(_), Coeff::Exact(_)) => Coeff::Exact(r),
            (a, b) => {
                let p = a.precision().into_iter().chain(b.precision()).min().unwrap();
                Coeff::Numeric(r, p)
            }
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        self.join(other, self.rational() + other.rational())
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.join(other, self.rational() - other.rational())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        self.join(other, self.rational() * other.rational())
    }

    pub fn neg(&self) -> Coeff {
        self.lift(-self.rational())
    }

    pub fn div(&self, other: &Coeff) -> Result<Coeff> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.join(other, self.rational() / other.rational()))
    }

    pub fn recip(&self) -> Result<Coeff> {
        Coeff::one().div(self)
    }

    /// Exponential. Exact mode only admits `exp(0) = 1`.
    pub fn exp(&self) -> Result<Coeff> {
        match self {
            Coeff::Exact(r) => {
                if r.is_zero() {
                    Ok(Coeff::one())
                } else {
                    Err(Error::CoefficientNotRepresentable(format!("exp({r})")))
                }
            }
            Coeff::Numeric(r, p) => Ok(Coeff::numeric(exp_rational(r, *p + GUARD_DIGITS), *p)),
        }
    }

    /// Natural logarithm. Exact mode only admits `log(1) = 0`.
    pub fn ln(&self) -> Result<Coeff> {
        if !self.is_positive() {
            return Err(Error::NotPositive);
        }
        match self {
            Coeff::Exact(r) => {
                if r.is_one() {
                    Ok(Coeff::zero())
                } else {
                    Err(Error::CoefficientNotRepresentable(format!("log({r})")))
                }
            }
            Coeff::Numeric(r, p) => Ok(Coeff::numeric(ln_rational(r, *p + GUARD_DIGITS), *p)),
        }
    }
}

impl PartialOrd for Coeff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coeff {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rational().cmp(other.rational())
    }
}

fn pow10(d: u32) -> BigInt {
    BigInt::from(10u8).pow(d)
}

/// Round to `digits` decimal places (ties away from zero).
fn round(r: BigRational, digits: u32) -> BigRational {
    let scale = pow10(digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    let (num, den) = (scaled.numer().clone(), scaled.denom().clone());
    let twice = BigInt::from(2u8) * &num + if num.sign() == IntSign::Minus { -&den } else { den.clone() };
    let rounded = twice / (BigInt::from(2u8) * den);
    BigRational::new(rounded, scale)
}

/// Taylor series for exp with argument reduction by halving.
fn exp_rational(x: &BigRational, digits: u32) -> BigRational {
    let one = BigRational::one();
    let mut halvings = 0u32;
    let mut x = x.clone();
    let half = BigRational::new(BigInt::one(), BigInt::from(2u8));
    while x.abs() > half {
        x /= BigRational::from_integer(BigInt::from(2u8));
        halvings += 1;
    }
    let tol = BigRational::new(BigInt::one(), pow10(digits + halvings + 5));
    let mut sum = one.clone();
    let mut term = one;
    let mut k = 1u64;
    while term.abs() > tol {
        term = term * &x / BigRational::from_integer(BigInt::from(k));
        sum += term.clone();
        k += 1;
    }
    for _ in 0..halvings {
        sum = round(&sum * &sum, digits + halvings + 5);
    }
    round(sum, digits)
}

/// ln via `ln(r) = k ln 2 + 2 atanh((m-1)/(m+1))` with `m` scaled into
/// `[2/3, 4/3)`.
fn ln_rational(r: &BigRational, digits: u32) -> BigRational {
    assert!(r.is_positive());
    let two = BigRational::from_integer(BigInt::from(2u8));
    let mut m = r.clone();
    let mut k = 0i64;
    let hi = BigRational::new(BigInt::from(4u8), BigInt::from(3u8));
    let lo = BigRational::new(BigInt::from(2u8), BigInt::from(3u8));
    while m >= hi {
        m /= &two;
        k += 1;
    }
    while m < lo {
        m *= &two;
        k -= 1;
    }
    let ln2 = atanh(&BigRational::new(BigInt::one(), BigInt::from(3u8)), digits) * &two;
    let u = (&m - BigRational::one()) / (&m + BigRational::one());
    let ln_m = atanh(&u, digits) * two;
    round(ln_m + ln2 * BigRational::from_integer(BigInt::from(k)), digits)
}

fn atanh(x: &BigRational, digits: u32) -> BigRational {
    let tol = BigRational::new(BigInt::one(), pow10(digits + 5));
    let x2 = x * x;
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut n = 1u64;
    loop {
        term = round(term * &x2, digits + 15);
        n += 2;
        let contrib = &term / BigRational::from_integer(BigInt::from(n));
        if contrib.abs() <= tol {
            break;
        }
        sum += contrib;
    }
    sum
}

/// Decimal rendering with `digits` fractional digits, trailing zeros trimmed.
pub fn decimal_string(r: &BigRational, digits: u32) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let scaled = round(abs, digits) * BigRational::from_integer(pow10(digits));
    let n = scaled.to_integer();
    let s = n.to_string();
    let (int_part, frac_part) = if s.len() > digits as usize {
        let split = s.len() - digits as usize;
        (s[..split].to_string(), s[split..].to_string())
    } else {
        ("0".to_string(), format!("{:0>width$}", s, width = digits as usize))
    };
    let frac = frac_part.trim_end_matches('0');
    let body = if frac.is_empty() {
        int_part
    } else {
        format!("{int_part}.{frac}")
    };
    if neg && body != "0" {
        format!("-{body}")
    } else {
        body
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Exact(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coeff::Numeric(r, p) => f.write_str(&decimal_string(r, *p)),
        }
    }
}
