//! Ordinals below epsilon-zero in Cantor normal form, with the Hessenberg
//! (natural, commutative) sum and product.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// Default cap on the nesting depth of exponent towers.
pub const DEFAULT_ORDINAL_DEPTH: usize = 16;

/// `w^(e_0)*c_0 + ... + w^(e_k)*c_k` with strictly decreasing exponents and
/// positive integer coefficients; the empty sum is 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal::default()
    }

    pub fn from_nat(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(Ordinal::zero(), n)] }
        }
    }

    pub fn omega() -> Self {
        Ordinal { terms: vec![(Ordinal::from_nat(1), 1)] }
    }

    /// `w^e * c`, discarded if `c = 0`.
    pub fn power(exponent: Ordinal, coefficient: u64) -> Self {
        if coefficient == 0 {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(exponent, coefficient)] }
        }
    }

    pub fn from_terms(mut terms: Vec<(Ordinal, u64)>) -> Self {
        terms.retain(|(_, c)| *c > 0);
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(Ordinal, u64)> = Vec::new();
        for (e, c) in terms {
            match merged.last_mut() {
                Some((pe, pc)) if *pe == e => *pc += c,
                _ => merged.push((e, c)),
            }
        }
        Ordinal { terms: merged }
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_nat(&self) -> Option<u64> {
        if self.is_zero() {
            Some(0)
        } else if self.terms.len() == 1 && self.terms[0].0.is_zero() {
            Some(self.terms[0].1)
        } else {
            None
        }
    }

    pub fn depth(&self) -> usize {
        self.terms.iter().map(|(e, _)| e.depth() + 1).max().unwrap_or(0)
    }

    fn check_depth(self) -> Result<Self> {
        let d = self.depth();
        if d > DEFAULT_ORDINAL_DEPTH {
            Err(Error::OrdinalOverflow(d, DEFAULT_ORDINAL_DEPTH))
        } else {
            Ok(self)
        }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        // lexicographic on the CNF term lists
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

pub fn ord_compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

/// Natural sum: merge the CNF term lists, adding coefficients at equal
/// exponents.
pub fn hess_add(a: &Ordinal, b: &Ordinal) -> Result<Ordinal> {
    let mut terms = a.terms.clone();
    terms.extend(b.terms.iter().cloned());
    Ordinal::from_terms(terms).check_depth()
}

/// Natural product: distribute, combining exponents with the natural sum and
/// multiplying coefficients.
pub fn hess_mul(a: &Ordinal, b: &Ordinal) -> Result<Ordinal> {
    let mut terms = Vec::new();
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            terms.push((hess_add(ea, eb)?, ca * cb));
        }
    }
    Ordinal::from_terms(terms).check_depth()
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                if e.is_zero() {
                    format!("{c}")
                } else if *c == 1 {
                    if e.as_nat() == Some(1) {
                        "w".to_string()
                    } else {
                        format!("w^({e})")
                    }
                } else if e.as_nat() == Some(1) {
                    format!("w*{c}")
                } else {
                    format!("w^({e})*{c}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Ordinal {
        Ordinal::omega()
    }

    fn n(k: u64) -> Ordinal {
        Ordinal::from_nat(k)
    }

    #[test]
    fn compare_examples() {
        assert!(w() > n(3));
        let w2 = Ordinal::power(n(2), 1);
        let a = hess_add(&w2, &n(1)).unwrap(); // w^2 + 1
        let b = hess_add(&w2, &w()).unwrap(); // w^2 + w
        assert!(a < b);
        let ww = Ordinal::power(w(), 1); // w^w
        let w5 = Ordinal::power(n(1), 5); // w*5
        assert!(ww > w5);
    }

    #[test]
    fn hessenberg_examples() {
        // (w+1) + (w+2) = w*2 + 3
        let a = hess_add(&w(), &n(1)).unwrap();
        let b = hess_add(&w(), &n(2)).unwrap();
        let s = hess_add(&a, &b).unwrap();
        assert_eq!(s, Ordinal::from_terms(vec![(n(1), 2), (n(0), 3)]));
        // (w+1)*(w+1) = w^2 + w*2 + 1
        let p = hess_mul(&a, &a).unwrap();
        assert_eq!(
            p,
            Ordinal::from_terms(vec![(n(2), 1), (n(1), 2), (n(0), 1)])
        );
        assert_eq!(hess_mul(&p, &n(1)).unwrap(), p);
    }

    #[test]
    fn display_cnf() {
        let x = Ordinal::from_terms(vec![(n(2), 1), (n(0), 3)]);
        assert_eq!(x.to_string(), "w^(2) + 3");
        assert_eq!(w().to_string(), "w");
        assert_eq!(Ordinal::zero().to_string(), "0");
    }

    #[test]
    fn depth_guard() {
        let mut t = Ordinal::from_nat(1);
        for _ in 0..=DEFAULT_ORDINAL_DEPTH {
            t = Ordinal::power(t, 1);
        }
        assert!(hess_mul(&t, &w()).is_err());
    }
}
