//! The surreal derivation on the fragment, via path derivatives with the
//! simplest prederivation, and composition `f o x`.

use crate::error::{Error, Result};
use crate::transstruct::{paths, LadderAtom, Path};
use crate::tseries::{exp_ts, log_ts, TMonomial, TSeries, TsTruncated};
use std::collections::HashMap;

/// A map `D` from ladder atoms to positive values, extended to paths by
/// `D(P_n) = P_n D(P_{n+1})`.
pub struct Prederivation {
    rule: Box<dyn Fn(LadderAtom) -> Result<TSeries>>,
}

impl Prederivation {
    pub fn new(rule: impl Fn(LadderAtom) -> Result<TSeries> + 'static) -> Self {
        Prederivation { rule: Box::new(rule) }
    }

    /// The simplest prederivation restricted to the ladder.
    pub fn simplest() -> Self {
        Prederivation::new(|a| d_simplest(a))
    }

    pub fn apply(&self, atom: LadderAtom) -> Result<TSeries> {
        (self.rule)(atom)
    }
}

/// `D(lambda_{-n}) = 1/(w log(w) ... log_{n-1}(w))`,
/// `D(lambda_n) = exp(w) exp_2(w) ... exp_n(w)`, as exact monomials.
pub fn d_simplest(atom: LadderAtom) -> Result<TSeries> {
    let s = atom.index;
    if s.unsigned_abs() as usize > crate::conway::DEFAULT_DEPTH_LIMIT {
        return Err(Error::DepthExceeded(
            s.unsigned_abs() as usize,
            crate::conway::DEFAULT_DEPTH_LIMIT,
        ));
    }
    let mut exponent = TSeries::zero();
    if s >= 1 {
        for k in 0..s {
            exponent = exponent.add(&TSeries::atom(k));
        }
    } else {
        for k in 1..=(-s) {
            exponent = exponent.sub(&TSeries::atom(-k));
        }
    }
    Ok(TSeries::monomial(TMonomial::from_exponent(exponent)))
}

/// `(prod_{m<n} P_m) D(P_n)` at the terminal cut; the terminal step's
/// coefficient factors out through `D(lambda) = lambda D(log lambda)`.
pub fn path_derivative(p: &Path, d: &Prederivation) -> Result<TSeries> {
    let last = p.steps.len() - 1;
    let mut prod = TSeries::from_coeff(p.steps[last].0.clone());
    for (c, m) in &p.steps[..last] {
        prod = prod.mul(&TSeries::from_terms(vec![(m.clone(), c.clone())]));
    }
    Ok(prod.mul(&d.apply(p.terminal)?))
}

/// `df = sum of the path derivatives over P(f)`; exact, and zero exactly on
/// real constants.
pub fn derive(f: &TSeries) -> Result<TSeries> {
    let d = Prederivation::simplest();
    let mut sum = TSeries::zero();
    for p in paths(f) {
        sum = sum.add(&path_derivative(&p, &d)?);
    }
    Ok(sum)
}

struct ComposeCtx {
    x: TSeries,
    order: usize,
    atoms: HashMap<i64, TSeries>,
    exact: bool,
}

impl ComposeCtx {
    /// `lambda_k o x`: iterated exp (k > 0) or log (k < 0) of `x`.
    fn atom_image(&mut self, k: i64) -> Result<TSeries> {
        if let Some(v) = self.atoms.get(&k) {
            return Ok(v.clone());
        }
        let v = if k == 0 {
            self.x.clone()
        } else if k > 0 {
            let prev = self.atom_image(k - 1)?;
            self.note(exp_ts(&prev, self.order)?)
        } else {
            let prev = self.atom_image(k + 1)?;
            self.note(log_ts(&prev, self.order)?)
        };
        self.atoms.insert(k, v.clone());
        Ok(v)
    }

    fn note(&mut self, r: TsTruncated) -> TSeries {
        if !r.is_exact() {
            self.exact = false;
        }
        r.value
    }

    fn series(&mut self, f: &TSeries) -> Result<TSeries> {
        let mut out = TSeries::zero();
        for (m, c) in f.terms() {
            let image = match m {
                TMonomial::Atom(k) => self.atom_image(*k)?,
                TMonomial::Exp(g) if g.is_zero() => TSeries::from_int(1),
                TMonomial::Exp(g) => {
                    let sub = self.series(g)?;
                    let e = exp_ts(&sub, self.order)?;
                    self.note(e)
                }
            };
            out = out.add(&image.scale(c));
        }
        Ok(out)
    }
}

/// Structural substitution `w -> x` pushed through the exponential normal
/// form: atoms map to iterated exp/log of `x`, `e^gamma` to
/// `exp(gamma o x)`. Exact when no truncation occurs along the way; the
/// reported bound is otherwise the smallest computed monomial.
pub fn compose(f: &TSeries, x: &TSeries, order: usize) -> Result<TsTruncated> {
    if !x.is_large() {
        return Err(Error::NotInfinite);
    }
    let mut ctx = ComposeCtx {
        x: x.clone(),
        order: order.max(1),
        atoms: HashMap::new(),
        exact: true,
    };
    let value = ctx.series(f)?;
    if ctx.exact {
        Ok(TsTruncated::exact(value, ctx.order))
    } else {
        let bound = value.terms().last().map(|(m, _)| m.clone());
        Ok(TsTruncated { value, remainder_bound: bound, order_used: ctx.order })
    }
}

/// The leading `n` terms of a series.
pub fn head_terms(f: &TSeries, n: usize) -> TSeries {
    TSeries::from_terms(f.terms().iter().take(n).cloned().collect())
}

/// `d(f o g) = (df o g) dg`, compared on the first `order` terms.  When
/// either composition truncates, the sides are only comparable on the terms
/// both actually carry: differentiating a truncated series loses the tail
/// that the product on the right still sees.
pub fn check_chain_rule(f: &TSeries, g: &TSeries, order: usize) -> Result<bool> {
    let cf = compose(f, g, order)?;
    let cdf = compose(&derive(f)?, g, order)?;
    let lhs = derive(&cf.value)?;
    let rhs = cdf.value.mul(&derive(g)?);
    if cf.is_exact() && cdf.is_exact() {
        return Ok(head_terms(&lhs, order) == head_terms(&rhs, order));
    }
    let n = order.min(lhs.terms().len()).min(rhs.terms().len());
    Ok(head_terms(&lhs, n) == head_terms(&rhs, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Coeff;
    use crate::transstruct::{dominant_path, ladder};

    fn w() -> TSeries {
        TSeries::atom(0)
    }

    fn wpow(k: i64) -> TSeries {
        TSeries::monomial(TMonomial::Atom(0).pow(k))
    }

    fn atom(k: i64) -> LadderAtom {
        LadderAtom { index: k }
    }

    #[test]
    fn d_simplest_examples() {
        assert_eq!(d_simplest(atom(0)).unwrap(), TSeries::from_int(1));
        // D(lambda_{-2}) = 1/(w log w)
        let expected = TSeries::monomial(TMonomial::from_exponent(
            TSeries::atom(-1).add(&TSeries::atom(-2)).neg(),
        ));
        assert_eq!(d_simplest(atom(-2)).unwrap(), expected);
        // D(lambda_2) = exp(w) exp_2(w)
        let expected = TSeries::monomial(TMonomial::from_exponent(
            w().add(&TSeries::atom(1)),
        ));
        assert_eq!(d_simplest(atom(2)).unwrap(), expected);
        assert!(d_simplest(atom(40)).is_err());
    }

    #[test]
    fn prederivation_coherence() {
        // D(lambda_s) = lambda_s * D(lambda_{s-1})
        for s in -5..=5 {
            let lhs = d_simplest(atom(s)).unwrap();
            let rhs = TSeries::atom(s).mul(&d_simplest(atom(s - 1)).unwrap());
            assert_eq!(lhs, rhs, "coherence at s = {s}");
        }
    }

    #[test]
    fn path_derivative_examples() {
        let d = Prederivation::simplest();
        let p = dominant_path(&w()).unwrap();
        assert_eq!(path_derivative(&p, &d).unwrap(), TSeries::from_int(1));
        let p = dominant_path(&ladder(1).unwrap()).unwrap();
        assert_eq!(path_derivative(&p, &d).unwrap(), ladder(1).unwrap());
        let p = dominant_path(&ladder(-1).unwrap()).unwrap();
        assert_eq!(path_derivative(&p, &d).unwrap(), wpow(-1));
    }

    #[test]
    fn derive_examples() {
        assert_eq!(derive(&w()).unwrap(), TSeries::from_int(1));
        assert_eq!(derive(&TSeries::from_int(7)).unwrap(), TSeries::zero());
        let ew = ladder(1).unwrap();
        assert_eq!(derive(&ew).unwrap(), ew);
        // d(w^2) = 2w
        assert_eq!(derive(&wpow(2)).unwrap(), w().scale(&Coeff::from_int(2)));
        // d(1/w) = -1/w^2
        assert_eq!(
            derive(&wpow(-1)).unwrap(),
            wpow(-2).scale(&Coeff::from_int(-1))
        );
    }

    #[test]
    fn derive_is_linear_and_leibniz() {
        let a = wpow(2).add(&w().scale(&Coeff::from_int(3)));
        let b = ladder(1).unwrap().add(&TSeries::from_int(1));
        assert_eq!(
            derive(&a.add(&b)).unwrap(),
            derive(&a).unwrap().add(&derive(&b).unwrap())
        );
        let lhs = derive(&a.mul(&b)).unwrap();
        let rhs = a
            .mul(&derive(&b).unwrap())
            .add(&b.mul(&derive(&a).unwrap()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_examples() {
        let x = ladder(1).unwrap();
        // w o x = x, exact
        let r = compose(&w(), &x, 4).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.value, x);
        // r o x = r
        let r = compose(&TSeries::from_int(5), &x, 4).unwrap();
        assert_eq!(r.value, TSeries::from_int(5));
        // log w o exp w = w, exact
        let r = compose(&ladder(-1).unwrap(), &x, 4).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.value, w());
        assert!(compose(&w(), &TSeries::from_int(2), 4).is_err());
    }

    #[test]
    fn compose_truncates_with_bound() {
        // log w o (w + 1) = log(w + 1), truncated
        let x = w().add(&TSeries::from_int(1));
        let r = compose(&ladder(-1).unwrap(), &x, 2).unwrap();
        assert!(!r.is_exact());
        let expected = TSeries::atom(-1)
            .add(&wpow(-1))
            .add(&wpow(-2).scale(&Coeff::ratio(-1, 2)));
        assert_eq!(r.value, expected);
    }

    #[test]
    fn chain_rule_samples() {
        let x = ladder(1).unwrap();
        assert!(check_chain_rule(&wpow(2), &x, 4).unwrap());
        assert!(check_chain_rule(&w(), &wpow(2), 4).unwrap());
        assert!(check_chain_rule(&ladder(-1).unwrap(), &wpow(2), 4).unwrap());
    }

    #[test]
    fn composition_is_monotone() {
        // derive(f) > 0 and x < y gives f o x < f o y
        let f = wpow(2).add(&w());
        let x = w();
        let y = w().add(&TSeries::from_int(1));
        let fx = compose(&f, &x, 4).unwrap().value;
        let fy = compose(&f, &y, 4).unwrap().value;
        assert!(fx < fy);
    }
}
