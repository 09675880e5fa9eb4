//! Exact dyadic rationals `m / 2^n`, the values taken by finite sign-expansions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A dyadic rational in lowest terms: `numerator / 2^exponent` with the
/// numerator odd unless the exponent is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigInt>, exponent: u32) -> Self {
        let mut d = Dyadic { numerator: numerator.into(), exponent };
        d.reduce();
        d
    }

    pub fn zero() -> Self {
        Dyadic { numerator: BigInt::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        Dyadic { numerator: BigInt::one(), exponent: 0 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic { numerator: n.into(), exponent: 0 }
    }

    /// Halves of integers: `n / 2`.
    pub fn half(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n, 1)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exponent == 0
    }

    pub fn is_positive(&self) -> bool {
        self.numerator.is_positive()
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        while self.exponent > 0 && (&self.numerator % 2u8).is_zero() {
            self.numerator /= 2;
            self.exponent -= 1;
        }
    }

    /// Parses `p`, `-p`, or `p/q` with `q` a power of two.
    pub fn parse(s: &str) -> Option<Dyadic> {
        match s.split_once('/') {
            None => s.trim().parse::<BigInt>().ok().map(Dyadic::from_int),
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().ok()?;
                let q: BigInt = q.trim().parse().ok()?;
                if !q.is_positive() {
                    return None;
                }
                let mut e = 0u32;
                let mut q = q;
                while (&q % 2u8).is_zero() {
                    q /= 2;
                    e += 1;
                }
                if q.is_one() {
                    Some(Dyadic::new(p, e))
                } else {
                    None
                }
            }
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        // compare a/2^m and b/2^n over the common denominator
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &other.numerator << (e - other.exponent);
        a.cmp(&b)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exponent.max(rhs.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &rhs.numerator << (e - rhs.exponent);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &-rhs
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.numerator * &rhs.numerator, self.exponent + rhs.exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { numerator: -&self.numerator, exponent: self.exponent }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, BigInt::one() << self.exponent)
        }
    }
}
