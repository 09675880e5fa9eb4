//! The dyadic fragment of No as finite sign-expansions.
//!
//! A finite `+`/`-` sequence is a surreal number born on a finite day; these
//! are exactly the dyadic rationals. Arithmetic is implemented by the Conway
//! option recursion over canonical options (the proper prefixes), with the
//! resulting value re-canonicalised through `simplest_in_gap`.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// A finite sign-expansion; its length is the birthday.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SignExpansion {
    signs: Vec<Sign>,
}

impl SignExpansion {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignExpansion { signs }
    }

    pub fn empty() -> Self {
        SignExpansion { signs: Vec::new() }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn birthday(&self) -> usize {
        self.signs.len()
    }

    /// Parses a string over `+`/`-` (empty string denotes 0).
    pub fn parse(s: &str) -> Option<SignExpansion> {
        let mut signs = Vec::new();
        for c in s.chars() {
            match c {
                '+' => signs.push(Sign::Plus),
                '-' => signs.push(Sign::Minus),
                _ => return None,
            }
        }
        Some(SignExpansion { signs })
    }

    /// The proper prefixes, i.e. all strictly simpler surreals.
    pub fn prefixes(&self) -> impl Iterator<Item = SignExpansion> + '_ {
        (0..self.signs.len()).map(move |k| SignExpansion { signs: self.signs[..k].to_vec() })
    }

    /// Canonical left options: prefixes below `self` in the value order.
    pub fn left_options(&self) -> Vec<SignExpansion> {
        self.prefixes().filter(|p| p < self).collect()
    }

    /// Canonical right options: prefixes above `self`.
    pub fn right_options(&self) -> Vec<SignExpansion> {
        self.prefixes().filter(|p| p > self).collect()
    }

    pub fn to_dyadic(&self) -> Dyadic {
        let mut value = Dyadic::zero();
        let mut step = Dyadic::one();
        let mut fractional = false;
        let mut prev: Option<Sign> = None;
        for &s in &self.signs {
            if let Some(p) = prev {
                if !fractional && p != s {
                    fractional = true;
                }
            }
            if fractional {
                step = &step * &Dyadic::half(1);
            }
            value = match s {
                Sign::Plus => &value + &step,
                Sign::Minus => &value - &step,
            };
            prev = Some(s);
        }
        value
    }

    pub fn from_dyadic(d: &Dyadic) -> SignExpansion {
        let mut x = SignExpansion::empty();
        loop {
            let v = x.to_dyadic();
            match v.cmp(d) {
                Ordering::Equal => return x,
                Ordering::Less => x.signs.push(Sign::Plus),
                Ordering::Greater => x.signs.push(Sign::Minus),
            }
        }
    }
}

impl PartialOrd for SignExpansion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignExpansion {
    /// Tree order: at the first difference, `-` < end-of-sequence < `+`.
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.signs.len().max(other.signs.len());
        for i in 0..n {
            let a = self.signs.get(i);
            let b = other.signs.get(i);
            let rank = |s: Option<&Sign>| match s {
                Some(Sign::Minus) => 0u8,
                None => 1,
                Some(Sign::Plus) => 2,
            };
            match rank(a).cmp(&rank(b)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for SignExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

pub fn compare(a: &SignExpansion, b: &SignExpansion) -> Ordering {
    a.cmp(b)
}

/// True iff `a` is a proper prefix of `b`.
pub fn is_simpler(a: &SignExpansion, b: &SignExpansion) -> bool {
    a.signs.len() < b.signs.len() && b.signs[..a.signs.len()] == a.signs[..]
}

pub fn birthday(a: &SignExpansion) -> usize {
    a.birthday()
}

/// The unique minimal-birthday sign expansion strictly between `left` and
/// `right` (either side may be empty). Descends the sign tree, stepping
/// towards the gap until neither endpoint set is in the way.
pub fn simplest_in_gap(left: &[Dyadic], right: &[Dyadic]) -> Result<SignExpansion> {
    if let (Some(l), Some(r)) = (left.iter().max(), right.iter().min()) {
        if l >= r {
            return Err(Error::GapViolation(l.to_string(), r.to_string()));
        }
    }
    let mut x = SignExpansion::empty();
    loop {
        let v = x.to_dyadic();
        if left.iter().any(|l| v <= *l) {
            x.signs.push(Sign::Plus);
        } else if right.iter().any(|r| v >= *r) {
            x.signs.push(Sign::Minus);
        } else {
            return Ok(x);
        }
    }
}

pub fn neg(a: &SignExpansion) -> SignExpansion {
    SignExpansion {
        signs: a
            .signs
            .iter()
            .map(|s| match s {
                Sign::Plus => Sign::Minus,
                Sign::Minus => Sign::Plus,
            })
            .collect(),
    }
}

type Memo = HashMap<(SignExpansion, SignExpansion), SignExpansion>;

/// `x + y = { x^L + y, x + y^L | x^R + y, x + y^R }`.
pub fn add(a: &SignExpansion, b: &SignExpansion) -> SignExpansion {
    let mut adds = Memo::new();
    add_rec(a, b, &mut adds)
}

fn add_rec(a: &SignExpansion, b: &SignExpansion, adds: &mut Memo) -> SignExpansion {
    let key = (a.clone(), b.clone());
    if let Some(r) = adds.get(&key) {
        return r.clone();
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for al in a.left_options() {
        left.push(add_rec(&al, b, adds).to_dyadic());
    }
    for bl in b.left_options() {
        left.push(add_rec(a, &bl, adds).to_dyadic());
    }
    for ar in a.right_options() {
        right.push(add_rec(&ar, b, adds).to_dyadic());
    }
    for br in b.right_options() {
        right.push(add_rec(a, &br, adds).to_dyadic());
    }
    let r = simplest_in_gap(&left, &right).expect("sum options always leave a gap");
    adds.insert(key, r.clone());
    r
}

/// `xy = { x^L y + x y^L - x^L y^L, x^R y + x y^R - x^R y^R | ... }`.
pub fn mul(a: &SignExpansion, b: &SignExpansion) -> SignExpansion {
    let mut muls = Memo::new();
    let mut adds = Memo::new();
    mul_rec(a, b, &mut muls, &mut adds)
}

fn mul_rec(a: &SignExpansion, b: &SignExpansion, muls: &mut Memo, adds: &mut Memo) -> SignExpansion {
    let key = (a.clone(), b.clone());
    if let Some(r) = muls.get(&key) {
        return r.clone();
    }
    // x'y + xy' - x'y' for an option pair (x', y')
    let corner = |x: &SignExpansion, y: &SignExpansion, muls: &mut Memo, adds: &mut Memo| {
        let s = add_rec(&mul_rec(x, b, muls, adds), &mul_rec(a, y, muls, adds), adds);
        add_rec(&s, &neg(&mul_rec(x, y, muls, adds)), adds).to_dyadic()
    };
    let (al, ar) = (a.left_options(), a.right_options());
    let (bl, br) = (b.left_options(), b.right_options());
    let mut left = Vec::new();
    let mut right = Vec::new();
    for x in &al {
        for y in &bl {
            left.push(corner(x, y, muls, adds));
        }
        for y in &br {
            right.push(corner(x, y, muls, adds));
        }
    }
    for x in &ar {
        for y in &br {
            left.push(corner(x, y, muls, adds));
        }
        for y in &bl {
            right.push(corner(x, y, muls, adds));
        }
    }
    let r = simplest_in_gap(&left, &right).expect("product options always leave a gap");
    muls.insert(key, r.clone());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn se(s: &str) -> SignExpansion {
        SignExpansion::parse(s).unwrap()
    }

    #[test]
    fn tree_order() {
        // +-+ < + < ++-
        assert!(se("+-+") < se("+"));
        assert!(se("+") < se("++-"));
        assert_eq!(compare(&se(""), &se("")), Ordering::Equal);
        // dyadic oracle: -1 < 1/4
        assert!(se("-") < se("+--"));
    }

    #[test]
    fn simpler_is_strict_prefix_order() {
        assert!(is_simpler(&se(""), &se("+")));
        assert!(is_simpler(&se("+"), &se("+-")));
        assert!(!is_simpler(&se("+"), &se("-+")));
        assert!(!is_simpler(&se("+"), &se("+")));
    }

    #[test]
    fn birthdays() {
        assert_eq!(birthday(&se("")), 0);
        assert_eq!(birthday(&se("+-")), 2);
        let three_quarters = SignExpansion::from_dyadic(&Dyadic::new(3, 2));
        assert_eq!(three_quarters, se("+-+"));
        assert_eq!(birthday(&three_quarters), 3);
    }

    #[test]
    fn dyadic_roundtrip() {
        assert_eq!(se("++").to_dyadic(), Dyadic::from_int(2));
        assert_eq!(SignExpansion::from_dyadic(&Dyadic::new(-1, 1)), se("-+"));
        let d = Dyadic::new(13, 3);
        assert_eq!(SignExpansion::from_dyadic(&d).to_dyadic(), d);
    }

    #[test]
    fn simplest_in_gap_examples() {
        assert_eq!(simplest_in_gap(&[], &[]).unwrap(), se(""));
        assert_eq!(
            simplest_in_gap(&[Dyadic::zero()], &[Dyadic::one()]).unwrap(),
            se("+-")
        );
        // {5/8} | {7/8} -> 3/4
        let x = simplest_in_gap(&[Dyadic::new(5, 3)], &[Dyadic::new(7, 3)]).unwrap();
        assert_eq!(x.to_dyadic(), Dyadic::new(3, 2));
        assert!(simplest_in_gap(&[Dyadic::one()], &[Dyadic::zero()]).is_err());
    }

    #[test]
    fn arithmetic_matches_examples() {
        // 1 + 1/2 = 3/2
        assert_eq!(add(&se("+"), &se("+-")).to_dyadic(), Dyadic::new(3, 1));
        assert_eq!(neg(&se("+-")), se("-+"));
        let half = se("+-");
        assert_eq!(mul(&half, &half).to_dyadic(), Dyadic::new(1, 2));
    }

    #[test]
    fn simplest_in_gap_empty_sides() {
        // (-inf, -5) -> -6, ( 5, inf ) -> 6
        let m5 = Dyadic::from_int(-5);
        assert_eq!(simplest_in_gap(&[], &[m5]).unwrap().to_dyadic(), Dyadic::from_int(-6));
        let p5 = Dyadic::from_int(5);
        assert_eq!(simplest_in_gap(&[p5], &[]).unwrap().to_dyadic(), Dyadic::from_int(6));
    }
}
