//! The Gonshor exponential and logarithm on the supported fragment, via the
//! mutually inverse exponent-transport maps g and h and their strongly linear
//! extensions G and H.

use crate::coeff::Coeff;
use crate::conway::{
    self, add, analytic_extend, mul, neg, sub, Monomial, Surreal, TruncatedResult,
};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::sign::{self, SignExpansion};

/// The argument classes on which g is computable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GhSupport {
    PositiveDyadic(Dyadic),
    OrdinalBelowEps0,
    /// A monomial `W(-b-1)` for an ordinal `b`.
    NegatedOrdinalMonomial,
}

/// `ind(x)`: the unique `c` with `x ~ w^c`, i.e. the leading exponent.
pub fn ind(x: &Surreal) -> Result<Surreal> {
    x.leading().map(|(e, _)| e.clone()).ok_or(Error::ZeroArgument)
}

/// Classifies a positive argument of g, or reports why it is unsupported.
pub fn g_support(x: &Surreal) -> Result<GhSupport> {
    if let Some(d) = x.as_dyadic() {
        if d.is_positive() {
            return Ok(GhSupport::PositiveDyadic(d));
        }
    }
    if x.as_ordinal().is_some() && !x.is_zero() {
        return Ok(GhSupport::OrdinalBelowEps0);
    }
    if x.is_monomial() {
        let e = &x.terms()[0].0;
        // e = -b-1 for an ordinal b
        if sub(&neg(e), &Surreal::from_int(1)).as_ordinal().is_some() {
            return Ok(GhSupport::NegatedOrdinalMonomial);
        }
    }
    Err(Error::UnsupportedExponent(x.to_string()))
}

/// Option recursion `g(x) = {ind(x), g(x')} | {g(x'')}` on positive dyadics,
/// with the left options filtered to positive values.
fn g_dyadic(x: &SignExpansion) -> Dyadic {
    let mut left = vec![Dyadic::zero()]; // ind of a finite value
    for p in x.left_options() {
        if p.to_dyadic().is_positive() {
            left.push(g_dyadic(&p));
        }
    }
    let right: Vec<Dyadic> = x.right_options().iter().map(g_dyadic).collect();
    sign::simplest_in_gap(&left, &right)
        .expect("g options always leave a gap")
        .to_dyadic()
}

/// Gonshor's g, partial: positive dyadics (option recursion), ordinals below
/// epsilon-zero (identity), and monomials `W(-b-1)` (mapped to `-b`).
pub fn g(x: &Surreal) -> Result<Surreal> {
    if !x.is_positive() {
        return Err(Error::NotPositive);
    }
    match g_support(x)? {
        GhSupport::PositiveDyadic(d) => {
            Ok(Surreal::from_dyadic(&g_dyadic(&SignExpansion::from_dyadic(&d))))
        }
        GhSupport::OrdinalBelowEps0 => Ok(x.clone()),
        GhSupport::NegatedOrdinalMonomial => {
            let e = &x.terms()[0].0;
            Ok(add(e, &Surreal::from_int(1)))
        }
    }
}

/// The inverse of g: `h(d) = d` on positive dyadics and nonzero ordinals,
/// `h(x) = W(x-1)` for `x = 0` or a negated ordinal.
pub fn h(x: &Surreal) -> Result<Surreal> {
    if let Some(d) = x.as_dyadic() {
        if d.is_positive() {
            return Ok(x.clone());
        }
    }
    if !x.is_zero() && x.as_ordinal().is_some() {
        return Ok(x.clone());
    }
    if x.is_zero() || neg(x).as_ordinal().is_some() {
        return Ok(Surreal::monomial(sub(x, &Surreal::from_int(1))));
    }
    Err(Error::UnsupportedExponent(x.to_string()))
}

/// Strongly linear termwise g on a purely infinite argument.
pub fn big_g(gamma: &Surreal) -> Result<Surreal> {
    if !gamma.is_purely_infinite() {
        return Err(Error::NotPurelyInfinite);
    }
    let mut terms = Vec::new();
    for (e, c) in gamma.terms() {
        terms.push((g(e)?, c.clone()));
    }
    Ok(Surreal::from_terms(terms))
}

/// Strongly linear termwise h; maps any supported value into the purely
/// infinite class.
pub fn big_h(x: &Surreal) -> Result<Surreal> {
    let mut terms = Vec::new();
    for (e, c) in x.terms() {
        terms.push((h(e)?, c.clone()));
    }
    Ok(Surreal::from_terms(terms))
}

fn exp_taylor(i: usize, cache: &mut Vec<Coeff>) -> Coeff {
    while cache.len() <= i {
        let k = cache.len();
        let prev = cache[k - 1].clone();
        cache.push(prev.div(&Coeff::from_int(k as i64)).unwrap());
    }
    cache[i].clone()
}

/// `exp(f) = exp(f_up) exp(f_real) exp(f_down)`: an exact monomial through
/// G, a real coefficient, and a truncated Taylor factor.
pub fn exp(f: &Surreal, order: usize) -> Result<TruncatedResult> {
    let (up, real, down) = conway::decompose(f);
    let mono = Surreal::monomial(big_g(&up)?);
    let real_factor = real.exp()?;
    let mut cache = vec![Coeff::one()];
    let taylor = analytic_extend(&mut |i| exp_taylor(i, &mut cache), &down, order)?;
    let exact_part = mono.scale(&real_factor);
    let value = mul(&exact_part, &taylor.value);
    let remainder_bound = taylor.remainder_bound.map(|b| Monomial {
        exponent: add(&b.exponent, &exact_part.terms()[0].0),
    });
    Ok(TruncatedResult { value, remainder_bound, order_used: taylor.order_used })
}

/// Exact logarithm of a monomial: `log W(x) = H(x)`.
pub fn log_monomial(m: &Monomial) -> Result<Surreal> {
    big_h(&m.exponent)
}

/// `log(f) = log(r) + H(x) + log(1+eps)` for `f = r W(x) (1+eps)`.
pub fn log(f: &Surreal, order: usize) -> Result<TruncatedResult> {
    if !f.is_positive() {
        return Err(Error::NotPositive);
    }
    let (lead_exp, lead_coeff) = f.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
    let log_mono = big_h(&lead_exp)?;
    let log_coeff = lead_coeff.ln()?;
    // eps = f / (r * W(x)) - 1
    let unit = mul(
        f,
        &Surreal::monomial(neg(&lead_exp)).scale(&lead_coeff.recip()?),
    );
    let eps = sub(&unit, &Surreal::from_int(1));
    let head = add(&log_mono, &Surreal::from_coeff(log_coeff));
    if eps.is_zero() {
        return Ok(TruncatedResult::exact(head, order));
    }
    let order = order.max(1);
    let mut series = Surreal::zero();
    let mut power = Surreal::from_int(1);
    for n in 1..=order {
        power = mul(&power, &eps);
        let sign = if n % 2 == 0 { -1 } else { 1 };
        series = add(&series, &power.scale(&Coeff::ratio(sign, n as i64)));
    }
    let eps_lead = eps.leading().unwrap().0.clone();
    let mut bound_exp = Surreal::zero();
    for _ in 0..=order {
        bound_exp = add(&bound_exp, &eps_lead);
    }
    let bound = Monomial { exponent: bound_exp };
    let value = add(
        &head,
        &Surreal::from_terms(
            series
                .terms()
                .iter()
                .filter(|(e, _)| *e > bound.exponent)
                .cloned()
                .collect(),
        ),
    );
    Ok(TruncatedResult { value, remainder_bound: Some(bound), order_used: order })
}

/// Finite instance of `prod W(x_i) = W(sum x_i)`.
pub fn prod_monomials(ms: &[Monomial]) -> Monomial {
    let mut e = Surreal::zero();
    for m in ms {
        e = add(&e, &m.exponent);
    }
    Monomial { exponent: e }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conway::sum_family;

    fn w() -> Surreal {
        Surreal::omega()
    }

    fn int(n: i64) -> Surreal {
        Surreal::from_int(n)
    }

    fn winv() -> Surreal {
        Surreal::monomial(int(-1))
    }

    #[test]
    fn ind_examples() {
        assert_eq!(ind(&int(5)).unwrap(), int(0));
        let f = add(&Surreal::monomial(int(2)).scale(&Coeff::from_int(3)), &w());
        assert_eq!(ind(&f).unwrap(), int(2));
        assert_eq!(ind(&winv()).unwrap(), int(-1));
        assert!(ind(&Surreal::zero()).is_err());
    }

    #[test]
    fn g_examples() {
        assert_eq!(g(&int(3)).unwrap(), int(3));
        let half = Surreal::from_coeff(Coeff::ratio(1, 2));
        assert_eq!(g(&half).unwrap(), half);
        assert_eq!(g(&w()).unwrap(), w());
        // unsupported: mixed infinite + finite
        assert!(g(&add(&w(), &half)).is_err());
        assert!(g(&neg(&int(1))).is_err());
    }

    #[test]
    fn h_examples() {
        assert_eq!(h(&int(1)).unwrap(), int(1));
        assert_eq!(h(&Surreal::zero()).unwrap(), winv());
        // g(h(x)) = x on supported samples
        for x in [
            int(1),
            int(7),
            Surreal::from_coeff(Coeff::ratio(3, 4)),
            w(),
            Surreal::zero(),
            neg(&int(2)),
            neg(&w()),
        ] {
            assert_eq!(g(&h(&x).unwrap()).unwrap(), x, "g(h(x)) != x for {x}");
        }
    }

    #[test]
    fn big_h_and_g() {
        assert_eq!(big_h(&w()).unwrap(), w());
        assert_eq!(big_h(&int(1)).unwrap(), Surreal::monomial(winv()));
        for x in [w(), add(&w(), &int(2)), Surreal::monomial(w())] {
            let hx = big_h(&x).unwrap();
            assert!(hx.is_purely_infinite());
            assert_eq!(big_g(&hx).unwrap(), x);
        }
        assert!(big_g(&int(1)).is_err());
    }

    #[test]
    fn exp_examples() {
        // exp(w) = W(w)
        assert_eq!(exp(&w(), 4).unwrap().value, Surreal::monomial(w()));
        assert!(exp(&w(), 4).unwrap().is_exact());
        assert_eq!(exp(&Surreal::zero(), 4).unwrap().value, int(1));
        let r = exp(&winv(), 3).unwrap();
        let expected = sum_family(&[
            int(1),
            winv(),
            Surreal::monomial(int(-2)).scale(&Coeff::ratio(1, 2)),
        ]);
        assert_eq!(r.value, expected);
        assert_eq!(r.remainder_bound.unwrap().exponent, int(-3));
        // exact mode cannot exponentiate a real constant
        assert!(exp(&int(1), 3).is_err());
    }

    #[test]
    fn log_examples() {
        // log(w) = w^(w^(-1))
        let lw = log(&w(), 4).unwrap();
        assert!(lw.is_exact());
        assert_eq!(lw.value, Surreal::monomial(winv()));
        assert_eq!(log(&int(1), 4).unwrap().value, Surreal::zero());
        let r = log(&add(&w(), &int(1)), 2).unwrap();
        let expected = sum_family(&[
            Surreal::monomial(winv()),
            winv(),
            Surreal::monomial(int(-2)).scale(&Coeff::ratio(-1, 2)),
        ]);
        assert_eq!(r.value, expected);
        assert_eq!(r.remainder_bound.unwrap().exponent, int(-3));
        assert!(log(&neg(&int(1)), 2).is_err());
        assert!(log(&int(2), 2).is_err()); // exact mode, log of constant
    }

    #[test]
    fn exp_log_roundtrip_monomial() {
        // log(exp(w^2 * 3 + w)) = the original purely infinite value
        let gamma = add(&Surreal::monomial(int(2)).scale(&Coeff::from_int(3)), &w());
        let e = exp(&gamma, 4).unwrap();
        assert!(e.is_exact());
        let back = log(&e.value, 4).unwrap();
        assert!(back.is_exact());
        assert_eq!(back.value, gamma);
    }

    #[test]
    fn prod_monomial_examples() {
        let m = |e: Surreal| Monomial { exponent: e };
        assert_eq!(prod_monomials(&[m(int(1)), m(int(1))]).exponent, int(2));
        assert_eq!(prod_monomials(&[]).exponent, Surreal::zero());
        assert_eq!(prod_monomials(&[m(w()), m(neg(&w()))]).exponent, Surreal::zero());
    }
}
