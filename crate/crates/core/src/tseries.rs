//! Exponential normal forms `f = sum e^(g_i) r_i` over the log-atomic
//! ladder. Atoms carry the signed lambda subscript: `Atom(0)` is `w`,
//! `Atom(-n)` is `log_n(w)`, `Atom(n)` is `exp_n(w)`.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::fmt;

/// A monomial of the exponential normal form: a ladder atom, or `e^gamma`
/// for a purely infinite exponent series.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TMonomial {
    Atom(i64),
    Exp(TSeries),
}

impl TMonomial {
    /// The constant monomial `e^0 = 1`.
    pub fn one() -> Self {
        TMonomial::Exp(TSeries::zero())
    }

    /// Normalizing constructor: `e^(lambda_s)` collapses to the atom with
    /// subscript `s+1`.
    pub fn from_exponent(gamma: TSeries) -> Self {
        if gamma.terms.len() == 1 && gamma.terms[0].1.is_one() {
            if let TMonomial::Atom(s) = gamma.terms[0].0 {
                return TMonomial::Atom(s + 1);
            }
        }
        TMonomial::Exp(gamma)
    }

    /// The exponent series: `log` of this monomial, exactly.
    pub fn exponent(&self) -> TSeries {
        match self {
            TMonomial::Atom(s) => TSeries::atom(s - 1),
            TMonomial::Exp(g) => g.clone(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, TMonomial::Exp(g) if g.is_zero())
    }

    pub fn mul(&self, other: &TMonomial) -> TMonomial {
        TMonomial::from_exponent(self.exponent().add(&other.exponent()))
    }

    pub fn inv(&self) -> TMonomial {
        TMonomial::from_exponent(self.exponent().neg())
    }

    /// Integer power, via scaling the exponent.
    pub fn pow(&self, n: i64) -> TMonomial {
        TMonomial::from_exponent(self.exponent().scale(&Coeff::from_int(n)))
    }

    fn to_json(&self) -> Value {
        match self {
            TMonomial::Atom(s) => json!({ "atom": s }),
            TMonomial::Exp(g) => json!({ "exp": g.to_json() }),
        }
    }
}

impl PartialOrd for TMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TMonomial::Atom(a), TMonomial::Atom(b)) => a.cmp(b),
            _ => self.exponent().cmp(&other.exponent()),
        }
    }
}

/// A transseries of the fragment: finitely many terms with strictly
/// decreasing monomials and nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TSeries {
    terms: Vec<(TMonomial, Coeff)>,
}

/// A truncated computation in the transseries engine; mirrors the Conway
/// side's remainder-bound contract.
#[derive(Debug, Clone)]
pub struct TsTruncated {
    pub value: TSeries,
    pub remainder_bound: Option<TMonomial>,
    pub order_used: usize,
}

impl TsTruncated {
    pub fn exact(value: TSeries, order_used: usize) -> Self {
        TsTruncated { value, remainder_bound: None, order_used }
    }

    pub fn is_exact(&self) -> bool {
        self.remainder_bound.is_none()
    }
}

impl TSeries {
    pub fn zero() -> Self {
        TSeries { terms: Vec::new() }
    }

    pub fn from_coeff(c: Coeff) -> Self {
        TSeries::from_terms(vec![(TMonomial::one(), c)])
    }

    pub fn from_int(n: i64) -> Self {
        TSeries::from_coeff(Coeff::from_int(n))
    }

    /// The ladder atom with signed subscript `s`, as a one-term series.
    pub fn atom(s: i64) -> Self {
        TSeries { terms: vec![(TMonomial::Atom(s), Coeff::one())] }
    }

    pub fn monomial(m: TMonomial) -> Self {
        TSeries::from_terms(vec![(m, Coeff::one())])
    }

    pub fn from_terms(mut terms: Vec<(TMonomial, Coeff)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(TMonomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((pm, pc)) if *pm == m => *pc = pc.add(&c),
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        TSeries { terms: merged }
    }

    pub fn terms(&self) -> &[(TMonomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&TMonomial, &Coeff)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn is_positive(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_positive())
    }

    /// True iff the value exceeds every natural number.
    pub fn is_large(&self) -> bool {
        self.leading()
            .is_some_and(|(m, c)| c.is_positive() && m.exponent().is_positive())
    }

    pub fn as_coeff(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &TSeries) -> TSeries {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        TSeries::from_terms(terms)
    }

    pub fn neg(&self) -> TSeries {
        TSeries {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &TSeries) -> TSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> TSeries {
        if c.is_zero() {
            return TSeries::zero();
        }
        TSeries {
            terms: self.terms.iter().map(|(m, r)| (m.clone(), r.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &TSeries) -> TSeries {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca.mul(cb)));
            }
        }
        TSeries::from_terms(terms)
    }

    /// Split into purely infinite, real-constant, and infinitesimal parts.
    pub fn decompose(&self) -> (TSeries, Coeff, TSeries) {
        let mut up = Vec::new();
        let mut real = Coeff::zero();
        let mut down = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent();
            if e.is_positive() {
                up.push((m.clone(), c.clone()));
            } else if e.is_zero() {
                real = c.clone();
            } else {
                down.push((m.clone(), c.clone()));
            }
        }
        (TSeries { terms: up }, real, TSeries { terms: down })
    }

    /// Drop every term not strictly above the bound monomial.
    pub fn truncate_at(&self, bound: &TMonomial) -> TSeries {
        TSeries {
            terms: self.terms.iter().filter(|(m, _)| m > bound).cloned().collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "terms": self
                .terms
                .iter()
                .map(|(m, c)| json!({ "monomial": m.to_json(), "coeff": c.to_string() }))
                .collect::<Vec<_>>()
        })
    }
}

impl PartialOrd for TSeries {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TSeries {
    fn cmp(&self, other: &Self) -> Ordering {
        // sign of self - other, read off term by term
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(&other.terms) {
            match ma.cmp(mb) {
                Ordering::Greater => {
                    return if ca.is_positive() { Ordering::Greater } else { Ordering::Less }
                }
                Ordering::Less => {
                    return if cb.is_positive() { Ordering::Less } else { Ordering::Greater }
                }
                Ordering::Equal => match ca.cmp(cb) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
        match self.terms.len().cmp(&other.terms.len()) {
            Ordering::Greater => {
                let c = &self.terms[other.terms.len()].1;
                if c.is_positive() { Ordering::Greater } else { Ordering::Less }
            }
            Ordering::Less => {
                let c = &other.terms[self.terms.len()].1;
                if c.is_positive() { Ordering::Less } else { Ordering::Greater }
            }
            Ordering::Equal => Ordering::Equal,
        }
    }
}

fn mono_pow_nat(m: &TMonomial, n: usize) -> TMonomial {
    TMonomial::from_exponent(m.exponent().scale(&Coeff::from_int(n as i64)))
}

/// `exp(f) = e^(f_up) exp(f_real) exp(f_down)`: the first factor is an exact
/// monomial, the last a Taylor truncation.
pub fn exp_ts(f: &TSeries, order: usize) -> Result<TsTruncated> {
    let (up, real, down) = f.decompose();
    let mono = TMonomial::from_exponent(up);
    let coeff = real.exp()?;
    let order = order.max(1);
    if down.is_zero() {
        let value = TSeries::from_terms(vec![(mono, coeff)]);
        return Ok(TsTruncated::exact(value, order));
    }
    let mut sum = TSeries::zero();
    let mut power = TSeries::from_int(1);
    let mut fact = Coeff::one();
    for i in 0..order {
        if i > 0 {
            power = power.mul(&down);
            fact = fact.div(&Coeff::from_int(i as i64)).unwrap();
        }
        sum = sum.add(&power.scale(&fact));
    }
    let down_lead = down.leading().unwrap().0.clone();
    let bound = mono_pow_nat(&down_lead, order).mul(&mono);
    let head = TSeries::from_terms(vec![(mono, coeff)]);
    let value = head.mul(&sum).truncate_at(&bound);
    Ok(TsTruncated { value, remainder_bound: Some(bound), order_used: order })
}

/// `log(f) = gamma + log(r) + log(1+eps)` for `f = e^gamma r (1+eps)`.
pub fn log_ts(f: &TSeries, order: usize) -> Result<TsTruncated> {
    if !f.is_positive() {
        return Err(Error::NotPositive);
    }
    let (lead_mono, lead_coeff) = {
        let (m, c) = f.leading().unwrap();
        (m.clone(), c.clone())
    };
    let head = lead_mono.exponent().add(&TSeries::from_coeff(lead_coeff.ln()?));
    let unit = f.mul(&TSeries::from_terms(vec![(lead_mono.inv(), lead_coeff.recip()?)]));
    let eps = unit.sub(&TSeries::from_int(1));
    if eps.is_zero() {
        return Ok(TsTruncated::exact(head, order));
    }
    let order = order.max(1);
    let mut series = TSeries::zero();
    let mut power = TSeries::from_int(1);
    for n in 1..=order {
        power = power.mul(&eps);
        series = series.add(&power.scale(&Coeff::ratio(if n % 2 == 0 { -1 } else { 1 }, n as i64)));
    }
    let bound = mono_pow_nat(&eps.leading().unwrap().0.clone(), order + 1);
    let value = head.add(&series.truncate_at(&bound));
    Ok(TsTruncated { value, remainder_bound: Some(bound), order_used: order })
}

/// Inverse via the geometric expansion, as on the Conway side.
pub fn inverse_ts(f: &TSeries, order: usize) -> Result<TsTruncated> {
    let (lead_mono, lead_coeff) = match f.leading() {
        None => return Err(Error::DivisionByZero),
        Some((m, c)) => (m.clone(), c.clone()),
    };
    let order = order.max(1);
    let inv_lead = TSeries::from_terms(vec![(lead_mono.inv(), lead_coeff.recip()?)]);
    let eps = f.mul(&inv_lead).sub(&TSeries::from_int(1));
    if eps.is_zero() {
        return Ok(TsTruncated::exact(inv_lead, order));
    }
    let mut series = TSeries::from_int(1);
    let mut power = TSeries::from_int(1);
    for _ in 1..order {
        power = power.mul(&eps.neg());
        series = series.add(&power);
    }
    let eps_lead = eps.leading().unwrap().0.clone();
    let bound = mono_pow_nat(&eps_lead, order).mul(&lead_mono.inv());
    let value = series.mul(&inv_lead).truncate_at(&bound);
    Ok(TsTruncated { value, remainder_bound: Some(bound), order_used: order })
}

pub fn divide_ts(f: &TSeries, g: &TSeries, order: usize) -> Result<TsTruncated> {
    let inv = inverse_ts(g, order)?;
    let raw = f.mul(&inv.value);
    match inv.remainder_bound {
        None => Ok(TsTruncated::exact(raw, inv.order_used)),
        Some(b) => {
            let f_lead = match f.leading() {
                None => return Ok(TsTruncated::exact(TSeries::zero(), inv.order_used)),
                Some((m, _)) => m.clone(),
            };
            let bound = b.mul(&f_lead);
            Ok(TsTruncated {
                value: raw.truncate_at(&bound),
                remainder_bound: Some(bound),
                order_used: inv.order_used,
            })
        }
    }
}

impl fmt::Display for TMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TMonomial::Atom(0) => f.write_str("w"),
            TMonomial::Atom(s) if *s < 0 => write!(f, "log_{}(w)", -s),
            TMonomial::Atom(s) => write!(f, "exp_{}(w)", s),
            TMonomial::Exp(g) => write!(f, "E^({g})"),
        }
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    if c.is_negative() && self.terms.len() > 1 {
                        format!("({c})")
                    } else {
                        c.to_string()
                    }
                } else if c.is_one() {
                    m.to_string()
                } else if c.is_negative() {
                    format!("{m}*({c})")
                } else {
                    format!("{m}*{c}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> TSeries {
        TSeries::atom(0)
    }

    #[test]
    fn atom_normalization() {
        // e^(lambda_s) = lambda_{s+1}
        assert_eq!(TMonomial::from_exponent(w()), TMonomial::Atom(1));
        assert_eq!(TMonomial::from_exponent(TSeries::atom(-2)), TMonomial::Atom(-1));
        assert_eq!(TMonomial::from_exponent(TSeries::zero()), TMonomial::one());
        // 2w does not collapse
        let double = w().scale(&Coeff::from_int(2));
        assert!(matches!(TMonomial::from_exponent(double), TMonomial::Exp(_)));
    }

    #[test]
    fn monomial_order() {
        // exp(w) > w^2 = e^(2 log w) > w > log w > 1 > 1/w
        let w2 = TMonomial::from_exponent(TSeries::atom(-1).scale(&Coeff::from_int(2)));
        let winv = TMonomial::Atom(0).inv();
        assert!(TMonomial::Atom(1) > w2);
        assert!(w2 > TMonomial::Atom(0));
        assert!(TMonomial::Atom(0) > TMonomial::Atom(-1));
        assert!(TMonomial::Atom(-1) > TMonomial::one());
        assert!(TMonomial::one() > winv);
    }

    #[test]
    fn series_order_and_sign() {
        let a = w().add(&TSeries::from_int(1));
        let b = w();
        assert!(a > b);
        assert!(b < a);
        assert!(w().neg() < TSeries::from_int(-5));
        assert!(w().is_large());
        assert!(!TSeries::from_int(7).is_large());
    }

    #[test]
    fn ring_ops() {
        // (w + 1)(w - 1) = w^2 - 1
        let p = w().add(&TSeries::from_int(1));
        let q = w().sub(&TSeries::from_int(1));
        let prod = p.mul(&q);
        let w2 = TSeries::monomial(TMonomial::Atom(0).pow(2));
        assert_eq!(prod, w2.sub(&TSeries::from_int(1)));
        assert_eq!(p.sub(&p), TSeries::zero());
    }

    #[test]
    fn exp_examples() {
        // exp(w) = the atom exp_1(w), exactly
        let r = exp_ts(&w(), 4).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.value, TSeries::atom(1));
        // exp(1/w) = 1 + 1/w + 1/(2w^2) + O(w^-3)
        let winv = TSeries::monomial(TMonomial::Atom(0).inv());
        let r = exp_ts(&winv, 3).unwrap();
        let expected = TSeries::from_int(1)
            .add(&winv)
            .add(&TSeries::monomial(TMonomial::Atom(0).pow(-2)).scale(&Coeff::ratio(1, 2)));
        assert_eq!(r.value, expected);
        assert_eq!(r.remainder_bound.unwrap(), TMonomial::Atom(0).pow(-3));
        assert!(exp_ts(&TSeries::from_int(1), 3).is_err()); // exact mode
    }

    #[test]
    fn log_examples() {
        // log(w) = the atom log_1(w), exactly
        let r = log_ts(&w(), 4).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.value, TSeries::atom(-1));
        // log(exp(w)) = w
        assert_eq!(log_ts(&TSeries::atom(1), 4).unwrap().value, w());
        // log(w + 1) = log w + 1/w - 1/(2w^2) + O(w^-3)
        let r = log_ts(&w().add(&TSeries::from_int(1)), 2).unwrap();
        let winv = TSeries::monomial(TMonomial::Atom(0).inv());
        let expected = TSeries::atom(-1)
            .add(&winv)
            .add(&TSeries::monomial(TMonomial::Atom(0).pow(-2)).scale(&Coeff::ratio(-1, 2)));
        assert_eq!(r.value, expected);
        assert!(log_ts(&w().neg(), 2).is_err());
    }

    #[test]
    fn exp_log_roundtrip() {
        // log(exp(w^2*3 + w)) recovers the argument exactly
        let gamma = TSeries::from_terms(vec![
            (TMonomial::Atom(0).pow(2), Coeff::from_int(3)),
            (TMonomial::Atom(0), Coeff::one()),
        ]);
        let e = exp_ts(&gamma, 4).unwrap();
        assert!(e.is_exact());
        let back = log_ts(&e.value, 4).unwrap();
        assert!(back.is_exact());
        assert_eq!(back.value, gamma);
    }

    #[test]
    fn inverse_example() {
        // 1/(w+1) = 1/w - 1/w^2 + 1/w^3 + O(w^-4)
        let r = inverse_ts(&w().add(&TSeries::from_int(1)), 3).unwrap();
        let t = |k: i64, c: i64| TSeries::monomial(TMonomial::Atom(0).pow(k)).scale(&Coeff::from_int(c));
        let expected = t(-1, 1).add(&t(-2, -1)).add(&t(-3, 1));
        assert_eq!(r.value, expected);
        assert_eq!(r.remainder_bound.unwrap(), TMonomial::Atom(0).pow(-4));
        // product with the original is 1 up to the bound
        let check = r.value.mul(&w().add(&TSeries::from_int(1)));
        let diff = check.sub(&TSeries::from_int(1));
        assert!(diff.leading().unwrap().0 <= &TMonomial::Atom(0).pow(-3));
    }

    #[test]
    fn text_format() {
        assert_eq!(w().to_string(), "w");
        assert_eq!(TSeries::atom(-2).to_string(), "log_2(w)");
        assert_eq!(TSeries::atom(3).to_string(), "exp_3(w)");
        let f = TSeries::from_terms(vec![
            (TMonomial::Atom(1), Coeff::from_int(3)),
            (TMonomial::one(), Coeff::from_int(-2)),
            (TMonomial::Atom(0).inv(), Coeff::one()),
        ]);
        assert_eq!(f.to_string(), "exp_1(w)*3 + (-2) + E^(log_1(w)*(-1))");
        assert_eq!(TSeries::zero().to_string(), "0");
    }
}
