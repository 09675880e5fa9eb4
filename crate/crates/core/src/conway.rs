//! Hereditarily finite Conway normal forms: the workbench's central number
//! type. A value is a finite sum `w^(x_0)*r_0 + ... + w^(x_k)*r_k` with
//! strictly decreasing surreal exponents and nonzero real coefficients.

use crate::coeff::Coeff;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;
use std::cmp::Ordering;
use std::fmt;

/// Default cap on hereditary exponent nesting.
pub const DEFAULT_DEPTH_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Surreal {
    /// `(exponent, coefficient)` pairs, exponents strictly decreasing,
    /// coefficients nonzero.
    terms: Vec<(Surreal, Coeff)>,
}

/// `w^(exponent)` — the simplest positive element of its Archimedean class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exponent: Surreal,
}

/// Dominance relation between two nonzero values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// Strictly smaller Archimedean class.
    Prec,
    /// Same Archimedean class (equal leading monomials).
    Asymp,
    /// Strictly larger Archimedean class.
    Succ,
}

/// Result of an operation whose exact value may have infinite support: the
/// kept terms plus a monomial bound on everything omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedResult {
    pub value: Surreal,
    pub remainder_bound: Option<Monomial>,
    pub order_used: usize,
}

impl TruncatedResult {
    pub fn exact(value: Surreal, order: usize) -> Self {
        TruncatedResult { value, remainder_bound: None, order_used: order }
    }

    pub fn is_exact(&self) -> bool {
        self.remainder_bound.is_none()
    }
}

impl Surreal {
    pub fn zero() -> Self {
        Surreal::default()
    }

    pub fn from_coeff(c: Coeff) -> Self {
        if c.is_zero() {
            Surreal::zero()
        } else {
            Surreal { terms: vec![(Surreal::zero(), c)] }
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Surreal::from_coeff(Coeff::Exact(num_rational::BigRational::from_integer(n.into())))
    }

    pub fn omega() -> Self {
        Surreal::monomial(Surreal::from_int(1))
    }

    /// The omega-map: `x -> w^(x)` as a one-term normal form.
    pub fn monomial(exponent: Surreal) -> Self {
        Surreal { terms: vec![(exponent, Coeff::one())] }
    }

    pub fn term(exponent: Surreal, coeff: Coeff) -> Self {
        if coeff.is_zero() {
            Surreal::zero()
        } else {
            Surreal { terms: vec![(exponent, coeff)] }
        }
    }

    /// Normalising constructor: sorts, merges equal exponents, drops zeros.
    pub fn from_terms(terms: Vec<(Surreal, Coeff)>) -> Self {
        let mut terms: Vec<(Surreal, Coeff)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Surreal, Coeff)> = Vec::new();
        for (e, c) in terms {
            match out.last_mut() {
                Some((pe, pc)) if *pe == e => *pc = pc.add(&c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Surreal { terms: out }
    }

    pub fn terms(&self) -> &[(Surreal, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.terms.first().map(|(_, c)| c.is_positive()).unwrap_or(false)
    }

    pub fn leading(&self) -> Option<(&Surreal, &Coeff)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.leading().map(|(e, _)| Monomial { exponent: e.clone() })
    }

    /// Constant values report their coefficient (zero included).
    pub fn as_coeff(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 if self.terms[0].0.is_zero() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn as_dyadic(&self) -> Option<Dyadic> {
        let c = self.as_coeff()?;
        if !c.is_dyadic() {
            return None;
        }
        let r = c.rational();
        let mut e = 0u32;
        let mut d = r.denom().clone();
        while (&d % 2u8).is_zero() {
            d /= 2;
            e += 1;
        }
        Some(Dyadic::new(r.numer().clone(), e))
    }

    pub fn from_dyadic(d: &Dyadic) -> Surreal {
        Surreal::from_coeff(Coeff::ratio(
            d.numerator().clone(),
            BigInt::from(1) << d.exponent(),
        ))
    }

    /// The CNF ordinal denoted by this value, if exponents are hereditarily
    /// ordinals and coefficients positive integers.
    pub fn as_ordinal(&self) -> Option<Ordinal> {
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            let eo = e.as_ordinal()?;
            let r = c.rational();
            if !r.is_integer() || !c.is_positive() {
                return None;
            }
            let n: u64 = r.numer().try_into().ok()?;
            terms.push((eo, n));
        }
        Some(Ordinal::from_terms(terms))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    /// All exponents strictly positive (vacuously true for 0).
    pub fn is_purely_infinite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_positive())
    }

    /// Leading monomial strictly below 1, i.e. the value is infinitesimal.
    pub fn is_infinitesimal(&self) -> bool {
        self.terms.iter().all(|(e, _)| !e.is_zero() && !e.is_positive())
    }

    /// Exceeds every natural number.
    pub fn is_infinite(&self) -> bool {
        self.leading().map(|(e, c)| e.is_positive() && c.is_positive()).unwrap_or(false)
    }

    pub fn depth(&self) -> usize {
        self.terms.iter().map(|(e, _)| e.depth() + 1).max().unwrap_or(0)
    }

    pub fn check_depth(&self, limit: usize) -> Result<()> {
        let d = self.depth();
        if d > limit {
            Err(Error::DepthExceeded(d, limit))
        } else {
            Ok(())
        }
    }

    pub fn scale(&self, c: &Coeff) -> Surreal {
        if c.is_zero() {
            return Surreal::zero();
        }
        Surreal { terms: self.terms.iter().map(|(e, r)| (e.clone(), r.mul(c))).collect() }
    }
}

impl PartialOrd for Surreal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surreal {
    /// Lexicographic leading-term comparison: larger exponents dominate.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut i = 0;
        loop {
            match (self.terms.get(i), other.terms.get(i)) {
                (None, None) => return Ordering::Equal,
                (None, Some((_, c))) => {
                    return if c.is_positive() { Ordering::Less } else { Ordering::Greater }
                }
                (Some((_, c)), None) => {
                    return if c.is_positive() { Ordering::Greater } else { Ordering::Less }
                }
                (Some((ea, ca)), Some((eb, cb))) => {
                    if ea == eb {
                        match ca.cmp(cb) {
                            Ordering::Equal => {
                                i += 1;
                                continue;
                            }
                            ord => return ord,
                        }
                    }
                    // differing exponents: the bigger monomial decides by the
                    // sign of its coefficient
                    return if ea > eb {
                        if ca.is_positive() { Ordering::Greater } else { Ordering::Less }
                    } else if cb.is_positive() {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
        }
    }
}

pub fn surreal_compare(f: &Surreal, g: &Surreal) -> Ordering {
    f.cmp(g)
}

pub fn add(f: &Surreal, g: &Surreal) -> Surreal {
    let mut terms = f.terms.clone();
    terms.extend(g.terms.iter().cloned());
    Surreal::from_terms(terms)
}

pub fn neg(f: &Surreal) -> Surreal {
    Surreal { terms: f.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
}

pub fn sub(f: &Surreal, g: &Surreal) -> Surreal {
    add(f, &neg(g))
}

/// Convolution product; monomials multiply through the omega-map
/// homomorphism `w^x * w^y = w^(x+y)`.
pub fn mul(f: &Surreal, g: &Surreal) -> Surreal {
    let mut terms = Vec::new();
    for (ea, ca) in &f.terms {
        for (eb, cb) in &g.terms {
            terms.push((add(ea, eb), ca.mul(cb)));
        }
    }
    Surreal::from_terms(terms)
}

pub fn omega_pow(x: &Surreal) -> Surreal {
    Surreal::monomial(x.clone())
}

/// `W(x)^r = W(x*r)`: a real power of a monomial is a monomial.
pub fn monomial_rpow(m: &Monomial, r: &Coeff) -> Monomial {
    Monomial { exponent: m.exponent.scale(r) }
}

/// `x = x_up + x_real + x_down` split by the sign of the exponents.
pub fn decompose(f: &Surreal) -> (Surreal, Coeff, Surreal) {
    let mut up = Vec::new();
    let mut real = Coeff::zero();
    let mut down = Vec::new();
    for (e, c) in &f.terms {
        if e.is_positive() {
            up.push((e.clone(), c.clone()));
        } else if e.is_zero() {
            real = c.clone();
        } else {
            down.push((e.clone(), c.clone()));
        }
    }
    (Surreal { terms: up }, real, Surreal { terms: down })
}

/// `f <= g` in the dominance (Archimedean) preorder.
pub fn preceq(f: &Surreal, g: &Surreal) -> bool {
    match (f.leading(), g.leading()) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some((ef, _)), Some((eg, _))) => ef <= eg,
    }
}

pub fn prec(f: &Surreal, g: &Surreal) -> bool {
    preceq(f, g) && !preceq(g, f)
}

pub fn asymp(f: &Surreal, g: &Surreal) -> bool {
    preceq(f, g) && preceq(g, f)
}

/// Equal leading terms: `f - g` is strictly dominated by `f`.
pub fn sim(f: &Surreal, g: &Surreal) -> bool {
    match (f.leading(), g.leading()) {
        (None, None) => true,
        (Some((ef, cf)), Some((eg, cg))) => ef == eg && cf == cg,
        _ => false,
    }
}

pub fn dominance(f: &Surreal, g: &Surreal) -> Dominance {
    if prec(f, g) {
        Dominance::Prec
    } else if asymp(f, g) {
        Dominance::Asymp
    } else {
        Dominance::Succ
    }
}

/// Drop every term of `f` that is not strictly above the bound monomial.
fn truncate_at(f: &Surreal, bound: &Monomial) -> Surreal {
    Surreal {
        terms: f.terms.iter().filter(|(e, _)| *e > bound.exponent).cloned().collect(),
    }
}

/// Multiplicative inverse via the Neumann geometric expansion
/// `f^-1 = n^-1 r^-1 (1 - eps + eps^2 - ...)`, truncated after `order`
/// powers. The remainder bound is the leading monomial of the first omitted
/// power.
pub fn inverse_truncated(f: &Surreal, order: usize) -> Result<TruncatedResult> {
    let (lead_exp, lead_coeff) = match f.leading() {
        None => return Err(Error::DivisionByZero),
        Some((e, c)) => (e.clone(), c.clone()),
    };
    let order = order.max(1);
    let inv_mono = Surreal::monomial(neg(&lead_exp));
    let inv_lead = mul(&inv_mono, &Surreal::from_coeff(lead_coeff.recip()?));
    // eps = f / (r * n) - 1, an exact infinitesimal
    let eps = sub(&mul(f, &inv_lead), &Surreal::from_int(1));
    if eps.is_zero() {
        return Ok(TruncatedResult::exact(inv_lead, order));
    }
    let mut series = Surreal::from_int(1);
    let mut power = Surreal::from_int(1);
    for _ in 1..order {
        power = mul(&power, &neg(&eps));
        series = add(&series, &power);
    }
    // bound: leading monomial of n^-1 r^-1 eps^order
    let eps_lead = eps.leading().unwrap().0.clone();
    let mut bound_exp = neg(&lead_exp);
    for _ in 0..order {
        bound_exp = add(&bound_exp, &eps_lead);
    }
    let bound = Monomial { exponent: bound_exp };
    let value = truncate_at(&mul(&series, &inv_lead), &bound);
    Ok(TruncatedResult { value, remainder_bound: Some(bound), order_used: order })
}

pub fn divide_truncated(f: &Surreal, g: &Surreal, order: usize) -> Result<TruncatedResult> {
    let inv = inverse_truncated(g, order)?;
    let raw = mul(f, &inv.value);
    match inv.remainder_bound {
        None => Ok(TruncatedResult::exact(raw, inv.order_used)),
        Some(b) => {
            let f_lead = match f.leading() {
                None => return Ok(TruncatedResult::exact(Surreal::zero(), inv.order_used)),
                Some((e, _)) => e.clone(),
            };
            let bound = Monomial { exponent: add(&b.exponent, &f_lead) };
            Ok(TruncatedResult {
                value: truncate_at(&raw, &bound),
                remainder_bound: Some(bound),
                order_used: inv.order_used,
            })
        }
    }
}

/// Extension of a real-analytic germ: `sum taylor(i) * eps^i` for an
/// infinitesimal `eps`, truncated after `order` powers. `taylor(i)` must
/// yield the `i`-th Taylor coefficient (derivative over `i!`).
pub fn analytic_extend(
    taylor: &mut dyn FnMut(usize) -> Coeff,
    eps: &Surreal,
    order: usize,
) -> Result<TruncatedResult> {
    if !eps.is_infinitesimal() {
        return Err(Error::NotInfinitesimal);
    }
    let order = order.max(1);
    if eps.is_zero() {
        return Ok(TruncatedResult::exact(Surreal::from_coeff(taylor(0)), order));
    }
    let mut sum = Surreal::zero();
    let mut power = Surreal::from_int(1);
    for i in 0..order {
        if i > 0 {
            power = mul(&power, eps);
        }
        sum = add(&sum, &power.scale(&taylor(i)));
    }
    let eps_lead = eps.leading().unwrap().0.clone();
    let mut bound_exp = Surreal::zero();
    for _ in 0..order {
        bound_exp = add(&bound_exp, &eps_lead);
    }
    let bound = Monomial { exponent: bound_exp };
    Ok(TruncatedResult {
        value: truncate_at(&sum, &bound),
        remainder_bound: Some(bound),
        order_used: order,
    })
}

/// True iff `g` is an initial segment of `f`'s term list.
pub fn is_truncation(g: &Surreal, f: &Surreal) -> bool {
    g.terms.len() <= f.terms.len() && f.terms[..g.terms.len()] == g.terms[..]
}

pub fn sum_family(fs: &[Surreal]) -> Surreal {
    let mut terms = Vec::new();
    for f in fs {
        terms.extend(f.terms.iter().cloned());
    }
    Surreal::from_terms(terms)
}

/// The order-preserving ring embedding of CNF ordinals.
pub fn embed(o: &Ordinal) -> Surreal {
    Surreal::from_terms(
        o.terms()
            .iter()
            .map(|(e, c)| (embed(e), Coeff::from_int(*c)))
            .collect(),
    )
}

// --- canonical text / JSON forms -------------------------------------------

fn coeff_string(c: &Coeff) -> String {
    let s = c.to_string();
    if c.is_negative() {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for Surreal {
    /// Canonical text form: `w^(X)*C` terms joined by " + ", with `w^(1)`
    /// printed as `w`, `w^(0)*C` as `C`, and unit coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // a lone constant prints bare; inside a sum, negatives get parens
        if self.terms.len() == 1 && self.terms[0].0.is_zero() {
            return f.write_str(&self.terms[0].1.to_string());
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                if e.is_zero() {
                    coeff_string(c)
                } else {
                    let base = if *e == Surreal::from_int(1) {
                        "w".to_string()
                    } else {
                        format!("w^({e})")
                    };
                    if c.is_one() {
                        base
                    } else {
                        format!("{base}*{}", coeff_string(c))
                    }
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Surreal {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "terms": self
                .terms
                .iter()
                .map(|(e, c)| json!({"exp": e.to_json(), "coeff": c.to_string()}))
                .collect::<Vec<_>>()
        })
    }
}
