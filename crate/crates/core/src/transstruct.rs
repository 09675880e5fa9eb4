//! Structure theory of the fragment: the log-atomic ladder, levels, paths,
//! nested truncation rank, transseries membership, and the bridge between
//! the exponential and Conway normal forms.

use crate::coeff::Coeff;
use crate::conway::{self, Surreal, DEFAULT_DEPTH_LIMIT};
use crate::error::{Error, Result};
use crate::explog;
use crate::ordinal::Ordinal;
use crate::tseries::{TMonomial, TSeries};

/// A log-atomic ladder element, identified by its signed lambda subscript:
/// index `-n` is `log_n(w)`, index `n > 0` is `exp_n(w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LadderAtom {
    pub index: i64,
}

/// A descent through the non-constant terms of iterated exponents, ending
/// at a ladder atom. The atom stands for the unique continuation
/// `P_n = log_n(lambda)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub steps: Vec<(Coeff, TMonomial)>,
    pub terminal: LadderAtom,
}

/// Relative level of two infinite values under iterated logarithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Lower,
    Same,
    Higher,
}

/// The ladder atom with signed subscript `n`, as a one-term series.
pub fn ladder(n: i64) -> Result<TSeries> {
    if n.unsigned_abs() as usize > DEFAULT_DEPTH_LIMIT {
        return Err(Error::DepthExceeded(n.unsigned_abs() as usize, DEFAULT_DEPTH_LIMIT));
    }
    Ok(TSeries::atom(n))
}

/// `lambda_{-alpha} = W(W(-alpha))` for an ordinal subscript, on the Conway
/// side.
pub fn lambda_ordinal(alpha: &Ordinal) -> Result<Surreal> {
    if alpha.depth() + 2 > DEFAULT_DEPTH_LIMIT {
        return Err(Error::OrdinalOverflow(alpha.depth() + 2, DEFAULT_DEPTH_LIMIT));
    }
    Ok(Surreal::monomial(Surreal::monomial(conway::neg(
        &conway::embed(alpha),
    ))))
}

/// True iff every iterated exact logarithm of `f` stays a single monomial
/// with coefficient 1 until it reaches a ladder atom.
pub fn is_log_atomic(f: &TSeries) -> Result<bool> {
    if !f.is_large() {
        return Err(Error::NotInfinite);
    }
    let mut cur = f.clone();
    loop {
        if cur.terms().len() != 1 || !cur.terms()[0].1.is_one() {
            return Ok(false);
        }
        match &cur.terms()[0].0 {
            TMonomial::Atom(_) => return Ok(true),
            TMonomial::Exp(g) => cur = g.clone(),
        }
    }
}

/// Compares the levels of two infinite values by iterating the dominant
/// logarithm (the leading-monomial skeleton) up to the depth cap.
pub fn level_compare(x: &TSeries, y: &TSeries) -> Result<Level> {
    if !x.is_large() || !y.is_large() {
        return Err(Error::NotInfinite);
    }
    let mut a = x.clone();
    let mut b = y.clone();
    for _ in 0..=DEFAULT_DEPTH_LIMIT {
        let (ma, _) = a.leading().ok_or(Error::NotInfinite)?;
        let (mb, _) = b.leading().ok_or(Error::NotInfinite)?;
        if ma == mb {
            return Ok(Level::Same);
        }
        if let (TMonomial::Atom(i), TMonomial::Atom(j)) = (ma, mb) {
            return Ok(if i < j { Level::Lower } else { Level::Higher });
        }
        let (na, nb) = (ma.exponent(), mb.exponent());
        a = na;
        b = nb;
    }
    Err(Error::DepthExceeded(DEFAULT_DEPTH_LIMIT + 1, DEFAULT_DEPTH_LIMIT))
}

fn term_paths(m: &TMonomial, c: &Coeff) -> Vec<Path> {
    match m {
        TMonomial::Atom(k) => vec![Path {
            steps: vec![(c.clone(), m.clone())],
            terminal: LadderAtom { index: *k },
        }],
        TMonomial::Exp(gamma) => {
            let mut out = Vec::new();
            for (m2, c2) in gamma.terms() {
                if m2.is_one() {
                    continue;
                }
                for mut p in term_paths(m2, c2) {
                    p.steps.insert(0, (c.clone(), m.clone()));
                    out.push(p);
                }
            }
            out
        }
    }
}

/// Every descent through non-constant terms of iterated exponents; empty
/// exactly for real constants.
pub fn paths(f: &TSeries) -> Vec<Path> {
    let mut out = Vec::new();
    for (m, c) in f.terms() {
        if m.is_one() {
            continue;
        }
        out.extend(term_paths(m, c));
    }
    out
}

/// The path following leading terms of `f - f_real` at every level.
pub fn dominant_path(f: &TSeries) -> Result<Path> {
    let (m, c) = f
        .terms()
        .iter()
        .find(|(m, _)| !m.is_one())
        .ok_or(Error::NoPath)?;
    let mut steps = vec![(c.clone(), m.clone())];
    let mut cur = m.clone();
    loop {
        match cur {
            TMonomial::Atom(k) => {
                return Ok(Path { steps, terminal: LadderAtom { index: k } })
            }
            TMonomial::Exp(gamma) => {
                let (m2, c2) = gamma
                    .terms()
                    .iter()
                    .find(|(m, _)| !m.is_one())
                    .ok_or(Error::NoPath)?;
                steps.push((c2.clone(), m2.clone()));
                cur = m2.clone();
            }
        }
    }
}

fn coeff_is_unit(c: &Coeff) -> bool {
    c.is_one() || c.neg().is_one()
}

/// The least index after which every step has coefficient +-1 and a zero
/// tail below the chosen term of the exponent.
pub fn verify_t4(p: &Path) -> usize {
    let mut cutoff = 0;
    for (n, (c, m)) in p.steps.iter().enumerate() {
        let mut ok = coeff_is_unit(c);
        if ok && n + 1 < p.steps.len() {
            // the next step's term must be the smallest term of this exponent
            let gamma = m.exponent();
            ok = gamma.terms().last().map(|(lm, _)| lm) == Some(&p.steps[n + 1].1);
        }
        if !ok {
            cutoff = n + 1;
        }
    }
    cutoff
}

/// Decides the nested-truncation preorder on finite representations.
pub fn nested_trunc_leq(f: &TSeries, g: &TSeries) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(ntl(f, g))
}

fn ntl(f: &TSeries, g: &TSeries) -> bool {
    if f == g {
        return true;
    }
    let ft = f.terms();
    let gt = g.terms();
    let mut j = 0;
    while j < ft.len() && j < gt.len() && ft[j] == gt[j] {
        j += 1;
    }
    if ft.len() == j {
        // f is a nonzero truncation of g
        return j >= 1;
    }
    if ft.len() != j + 1 || gt.len() <= j {
        return false;
    }
    let (mf, cf) = &ft[j];
    let (mg, cg) = &gt[j];
    if !coeff_is_unit(cf) || cf.is_positive() != cg.is_positive() {
        return false;
    }
    let (ef, eg) = (mf.exponent(), mg.exponent());
    if ef == eg {
        return true;
    }
    !ef.is_zero() && !eg.is_zero() && ntl(&ef, &eg)
}

/// One-step strict predecessors under the nested-truncation rules, on
/// normal-form representations.
fn nr_predecessors(f: &TSeries) -> Vec<TSeries> {
    let terms = f.terms();
    let (m, r) = terms.last().expect("nonzero");
    if terms.len() == 1 && coeff_is_unit(r) && matches!(m, TMonomial::Atom(_)) {
        return Vec::new();
    }
    let prefix: Vec<_> = terms[..terms.len() - 1].to_vec();
    let mut out = Vec::new();
    if !prefix.is_empty() {
        out.push(TSeries::from_terms(prefix.clone()));
    }
    let sign = if r.is_positive() { Coeff::one() } else { Coeff::from_int(-1) };
    if !coeff_is_unit(r) {
        let mut t = prefix.clone();
        t.push((m.clone(), sign));
        out.push(TSeries::from_terms(t));
    } else {
        let gamma = m.exponent();
        if !gamma.is_zero() {
            for gp in nr_predecessors(&gamma) {
                let mp = TMonomial::from_exponent(gp);
                // normal form: the new last monomial must stay the smallest
                if let Some((pm, _)) = prefix.last() {
                    if *pm <= mp {
                        continue;
                    }
                }
                let mut t = prefix.clone();
                t.push((mp, sign.clone()));
                out.push(TSeries::from_terms(t));
            }
        }
    }
    out
}

/// The nested truncation rank, by well-founded recursion over one-step
/// predecessors (finite on this fragment).
pub fn nr(f: &TSeries) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(nr_inner(f))
}

fn nr_inner(f: &TSeries) -> usize {
    nr_predecessors(f)
        .iter()
        .map(|p| nr_inner(p) + 1)
        .max()
        .unwrap_or(0)
}

/// `(depth, subscript)` for every branch's first ladder-atom value.
fn branch_atoms(f: &TSeries, depth: usize, acc: &mut Vec<(usize, i64)>) {
    for (m, _) in f.terms() {
        match m {
            TMonomial::Exp(g) if g.is_zero() => {}
            TMonomial::Atom(k) => acc.push((depth + 1, k - 1)),
            TMonomial::Exp(g) => branch_atoms(g, depth + 1, acc),
        }
    }
}

/// The least `(m, n)` such that every branch of `f` is at `log_k(w)` with
/// `k <= m` by step `n`; both bounds exist for every representable value.
pub fn t_bounds(f: &TSeries) -> (usize, usize) {
    let mut atoms = Vec::new();
    branch_atoms(f, 0, &mut atoms);
    // a branch at lambda_j (depth d) sits at lambda_{j-t} at step d+t
    let n = atoms
        .iter()
        .map(|(d, j)| d + (*j).max(0) as usize)
        .max()
        .unwrap_or(0);
    let m = atoms
        .iter()
        .map(|(d, j)| (n - d) as i64 - j)
        .max()
        .unwrap_or(0);
    (m.max(0) as usize, n)
}

/// Membership in the transseries field: a uniform `(m, n)` branch bound.
pub fn in_t(f: &TSeries) -> bool {
    let _ = t_bounds(f);
    true
}

/// Membership in the EL-series field: a uniform `n`-only branch bound.
pub fn in_tel(f: &TSeries) -> bool {
    let _ = t_bounds(f);
    true
}

/// The Conway value of the ladder atom with subscript `k`.
fn atom_conway(k: i64) -> Surreal {
    if k <= 0 {
        // lambda_{-n} = W(W(-n))
        Surreal::monomial(Surreal::monomial(Surreal::from_int(k)))
    } else {
        // lambda_k = W(lambda_{k-1})
        Surreal::monomial(atom_conway(k - 1))
    }
}

/// The atom subscript `j` with `W(e) = lambda_j`, if `e` has that shape.
fn recognize_mono(e: &Surreal) -> Option<i64> {
    if let Some(d) = e.as_dyadic() {
        return if d == crate::dyadic::Dyadic::one() { Some(0) } else { None };
    }
    if !e.is_monomial() || !e.terms()[0].1.is_one() {
        return None;
    }
    let e2 = &e.terms()[0].0;
    if let Some(d) = e2.as_dyadic() {
        if d.is_integer() && !d.is_positive() && !d.is_zero() {
            use num_traits::ToPrimitive;
            return d.numerator().to_i64();
        }
        return None;
    }
    match recognize_mono(e2) {
        Some(j) if j >= 0 => Some(j + 1),
        _ => None,
    }
}

/// Conversion to Conway normal form via `e^gamma = W(G(gamma))`.
pub fn to_conway(f: &TSeries) -> Result<Surreal> {
    let mut parts = Vec::new();
    for (m, c) in f.terms() {
        let mono = match m {
            TMonomial::Atom(k) => atom_conway(*k),
            TMonomial::Exp(g) if g.is_zero() => Surreal::from_int(1),
            TMonomial::Exp(g) => Surreal::monomial(explog::big_g(&to_conway(g)?)?),
        };
        parts.push(mono.scale(c));
    }
    Ok(conway::sum_family(&parts))
}

/// Conversion from Conway normal form via `W(x) = e^{H(x)}`; partial, since
/// H must be defined on every exponent encountered.
pub fn from_conway(x: &Surreal) -> Result<TSeries> {
    let mut terms = Vec::new();
    for (e, c) in x.terms() {
        let m = if e.is_zero() {
            TMonomial::one()
        } else if let Some(j) = recognize_mono(e) {
            TMonomial::Atom(j)
        } else {
            TMonomial::from_exponent(from_conway(&explog::big_h(e)?)?)
        };
        terms.push((m, c.clone()));
    }
    Ok(TSeries::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> TSeries {
        TSeries::atom(0)
    }

    fn wpow(k: i64) -> TSeries {
        TSeries::monomial(TMonomial::Atom(0).pow(k))
    }

    #[test]
    fn ladder_examples() {
        assert_eq!(ladder(0).unwrap(), w());
        assert_eq!(ladder(-1).unwrap().to_string(), "log_1(w)");
        assert_eq!(ladder(1).unwrap().to_string(), "exp_1(w)");
        assert!(ladder(17).is_err());
    }

    #[test]
    fn lambda_ordinal_examples() {
        assert_eq!(lambda_ordinal(&Ordinal::zero()).unwrap(), Surreal::omega());
        assert_eq!(
            lambda_ordinal(&Ordinal::from_nat(1)).unwrap().to_string(),
            "w^(w^(-1))"
        );
        assert_eq!(
            lambda_ordinal(&Ordinal::omega()).unwrap().to_string(),
            "w^(w^(w*(-1)))"
        );
    }

    #[test]
    fn log_atomic_examples() {
        assert!(is_log_atomic(&ladder(1).unwrap()).unwrap());
        assert!(is_log_atomic(&w()).unwrap());
        assert!(!is_log_atomic(&wpow(2)).unwrap());
        assert!(!is_log_atomic(&w().add(&TSeries::from_int(1))).unwrap());
        assert!(is_log_atomic(&TSeries::from_int(3)).is_err());
    }

    #[test]
    fn level_examples() {
        assert_eq!(level_compare(&w(), &wpow(2)).unwrap(), Level::Same);
        assert_eq!(level_compare(&w(), &ladder(1).unwrap()).unwrap(), Level::Lower);
        assert_eq!(level_compare(&w(), &w()).unwrap(), Level::Same);
        assert_eq!(level_compare(&ladder(1).unwrap(), &w()).unwrap(), Level::Higher);
        assert!(level_compare(&w(), &TSeries::from_int(2)).is_err());
    }

    #[test]
    fn path_examples() {
        assert!(paths(&TSeries::from_int(5)).is_empty());
        let ps = paths(&ladder(1).unwrap());
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].terminal, LadderAtom { index: 1 });
        // e^w + log w: two paths, dominant starts at e^w
        let f = ladder(1).unwrap().add(&ladder(-1).unwrap());
        assert_eq!(paths(&f).len(), 2);
        let d = dominant_path(&f).unwrap();
        assert_eq!(d.steps[0].1, TMonomial::Atom(1));
        assert!(dominant_path(&TSeries::from_int(2)).is_err());
    }

    #[test]
    fn t4_examples() {
        let p = dominant_path(&ladder(2).unwrap()).unwrap();
        assert_eq!(verify_t4(&p), 0);
        let f = TSeries::monomial(TMonomial::Atom(1)).scale(&Coeff::from_int(3));
        let p = dominant_path(&f).unwrap();
        assert_eq!(verify_t4(&p), 1);
    }

    #[test]
    fn nested_trunc_examples() {
        // e^w <| e^(w + log w)
        let ew = TSeries::monomial(TMonomial::Atom(1));
        let big = TSeries::monomial(TMonomial::from_exponent(
            w().add(&ladder(-1).unwrap()),
        ));
        assert!(nested_trunc_leq(&ew, &big).unwrap());
        assert!(!nested_trunc_leq(&big, &ew).unwrap());
        // truncation: w <| w + 1
        let f = w().add(&TSeries::from_int(1));
        assert!(nested_trunc_leq(&w(), &f).unwrap());
        assert!(nested_trunc_leq(&f, &f).unwrap());
        assert!(nested_trunc_leq(&TSeries::zero(), &f).is_err());
    }

    #[test]
    fn nr_examples() {
        for k in [-2, -1, 0, 1, 2] {
            assert_eq!(nr(&ladder(k).unwrap()).unwrap(), 0, "nr(ladder({k}))");
        }
        // nr(e^w * 3) = nr(e^w) + 1 = 1
        let f = TSeries::monomial(TMonomial::Atom(1)).scale(&Coeff::from_int(3));
        assert_eq!(nr(&f).unwrap(), 1);
        // inverse atoms also have rank 0
        assert_eq!(nr(&wpow(-1)).unwrap(), 0);
        // a proper truncation strictly decreases nr
        let g = f.add(&TSeries::from_int(2));
        assert!(nr(&f).unwrap() < nr(&g).unwrap());
    }

    #[test]
    fn membership_and_bounds() {
        let f = ladder(1).unwrap().add(&ladder(-1).unwrap());
        assert!(in_t(&f));
        assert!(in_tel(&f));
        // at step 1 the branches sit at log_0(w) and log_2(w)
        assert_eq!(t_bounds(&f), (2, 1));
        assert_eq!(t_bounds(&TSeries::from_int(3)), (0, 0));
        // w itself reaches log-atomic territory immediately
        let (_, n) = t_bounds(&w());
        assert_eq!(n, 1);
    }

    #[test]
    fn conway_roundtrip() {
        // to_conway(e^w) = W(w)
        let ew = TSeries::monomial(TMonomial::Atom(1));
        assert_eq!(to_conway(&ew).unwrap(), Surreal::monomial(Surreal::omega()));
        // from_conway(w) = the atom w
        assert_eq!(from_conway(&Surreal::omega()).unwrap(), w());
        for f in [
            w(),
            ladder(-2).unwrap(),
            ladder(2).unwrap(),
            wpow(2).add(&w().scale(&Coeff::from_int(3))).add(&TSeries::from_int(1)),
            wpow(-1),
        ] {
            let x = to_conway(&f).unwrap();
            assert_eq!(from_conway(&x).unwrap(), f, "roundtrip of {f}");
        }
        // ring-preservation samples
        let a = w().add(&TSeries::from_int(1));
        let b = wpow(2);
        assert_eq!(
            to_conway(&a.mul(&b)).unwrap(),
            conway::mul(&to_conway(&a).unwrap(), &to_conway(&b).unwrap())
        );
    }
}
