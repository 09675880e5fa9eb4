//! Evaluation and rendering behind the `surreal` binary.

pub mod parser;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use parser::{parse, Expr, ParseError};
use serde_json::json;
use surreal_core::coeff::Coeff;
use surreal_core::conway::{self, Surreal};
use surreal_core::diffcomp;
use surreal_core::dyadic::Dyadic;
use surreal_core::error::Error;
use surreal_core::sign;
use surreal_core::transstruct::{self, Level};
use surreal_core::tseries::{
    divide_ts, exp_ts, inverse_ts, log_ts, TMonomial, TSeries, TsTruncated,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub order: usize,
    /// `None` is exact mode; `Some(p)` evaluates real constants to `p`
    /// decimal digits.
    pub precision: Option<u32>,
    pub depth: usize,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config { order: 8, precision: None, depth: 16, format: Format::Text }
    }
}

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Lib(Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Lib(e) => e.code(),
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Parse(e) => e.to_string(),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// An evaluated value with the coarsest remainder bound met along the way.
#[derive(Debug, Clone)]
pub struct Eval {
    pub value: TSeries,
    pub bound: Option<TMonomial>,
}

impl Eval {
    fn exact(value: TSeries) -> Self {
        Eval { value, bound: None }
    }

    fn of(r: TsTruncated) -> Self {
        Eval { value: r.value, bound: r.remainder_bound }
    }

    fn clip(mut self) -> Self {
        if let Some(b) = &self.bound {
            self.value = self.value.truncate_at(b);
        }
        self
    }
}

fn join_bounds(a: Option<TMonomial>, b: Option<TMonomial>) -> Option<TMonomial> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x >= y { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Translate a bound through multiplication by a value with the given
/// leading monomial.
fn shift_bound(b: &Option<TMonomial>, lead: Option<&TMonomial>) -> Option<TMonomial> {
    match (b, lead) {
        (Some(b), Some(m)) => Some(b.mul(m)),
        (Some(b), None) => Some(b.clone()),
        (None, _) => None,
    }
}

fn lit_coeff(r: &BigRational, cfg: &Config) -> Coeff {
    match cfg.precision {
        None => Coeff::Exact(r.clone()),
        Some(p) => Coeff::numeric(r.clone(), p),
    }
}

fn dyadic_of(r: &BigRational) -> CliResult<Dyadic> {
    let mut d = r.denom().clone();
    let mut k = 0u32;
    let two = BigInt::from(2);
    while (&d % &two).is_zero() {
        d /= &two;
        k += 1;
    }
    if !d.is_one() {
        return Err(Error::CoefficientNotRepresentable(format!(
            "endpoint {r} is not dyadic"
        ))
        .into());
    }
    Ok(Dyadic::new(r.numer().clone(), k))
}

/// The exponent as a rational literal, unwrapping a leading minus.
fn literal_exponent(e: &Expr) -> Option<BigRational> {
    match e {
        Expr::Number(r) => Some(r.clone()),
        Expr::Neg(inner) => literal_exponent(inner).map(|r| -r),
        _ => None,
    }
}

pub fn eval(e: &Expr, cfg: &Config) -> CliResult<Eval> {
    match e {
        Expr::Number(r) => Ok(Eval::exact(TSeries::from_coeff(lit_coeff(r, cfg)))),
        Expr::Omega => Ok(Eval::exact(TSeries::atom(0))),
        Expr::Neg(a) => {
            let a = eval(a, cfg)?;
            Ok(Eval { value: a.value.neg(), bound: a.bound })
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let x = eval(a, cfg)?;
            let y = eval(b, cfg)?;
            let rhs = if matches!(e, Expr::Sub(..)) { y.value.neg() } else { y.value };
            Ok(Eval {
                value: x.value.add(&rhs),
                bound: join_bounds(x.bound, y.bound),
            }
            .clip())
        }
        Expr::Mul(a, b) => {
            let x = eval(a, cfg)?;
            let y = eval(b, cfg)?;
            let bound = join_bounds(
                shift_bound(&x.bound, y.value.leading().map(|(m, _)| m)),
                shift_bound(&y.bound, x.value.leading().map(|(m, _)| m)),
            );
            Ok(Eval { value: x.value.mul(&y.value), bound }.clip())
        }
        Expr::Div(a, b) => {
            let x = eval(a, cfg)?;
            let y = eval(b, cfg)?;
            let q = divide_ts(&x.value, &y.value, cfg.order)?;
            let inv_lead = y.value.leading().map(|(m, _)| m.inv());
            let bound = join_bounds(
                q.remainder_bound,
                join_bounds(
                    shift_bound(&x.bound, inv_lead.as_ref()),
                    shift_bound(&y.bound, q.value.leading().map(|(m, _)| m)),
                ),
            );
            Ok(Eval { value: q.value, bound }.clip())
        }
        Expr::Pow(a, b) => pow(a, b, cfg),
        Expr::Exp(a) => {
            let x = eval(a, cfg)?;
            let r = exp_ts(&x.value, cfg.order)?;
            let extra = shift_bound(&x.bound, r.value.leading().map(|(m, _)| m));
            let bound = join_bounds(r.remainder_bound, extra);
            Ok(Eval { value: r.value, bound }.clip())
        }
        Expr::Log(k, a) => {
            let mut cur = eval(a, cfg)?;
            for _ in 0..*k {
                let r = log_ts(&cur.value, cfg.order)?;
                cur = Eval {
                    value: r.value,
                    bound: join_bounds(r.remainder_bound, cur.bound),
                }
                .clip();
            }
            Ok(cur)
        }
        Expr::Derive(a) => {
            let x = eval(a, cfg)?;
            let d = diffcomp::derive(&x.value)?;
            Ok(Eval { value: d, bound: x.bound }.clip())
        }
        Expr::Compose(f, x) => {
            let fv = eval(f, cfg)?;
            let xv = eval(x, cfg)?;
            let r = diffcomp::compose(&fv.value, &xv.value, cfg.order)?;
            let bound = join_bounds(r.remainder_bound, join_bounds(fv.bound, xv.bound));
            Ok(Eval { value: r.value, bound }.clip())
        }
        Expr::OmegaPow(a) => {
            let x = eval(a, cfg)?;
            let conway = transstruct::to_conway(&x.value)?;
            let mono = surreal_core::conway::Surreal::monomial(conway);
            Ok(Eval {
                value: transstruct::from_conway(&mono)?,
                bound: x.bound,
            })
        }
        Expr::Simplest(left, right) => {
            let l: Vec<Dyadic> = left.iter().map(|r| dyadic_of(r)).collect::<CliResult<_>>()?;
            let r: Vec<Dyadic> = right.iter().map(|r| dyadic_of(r)).collect::<CliResult<_>>()?;
            let s = sign::simplest_in_gap(&l, &r)?;
            let d = s.to_dyadic();
            let v = BigRational::new(
                d.numerator().clone(),
                BigInt::from(2).pow(d.exponent()),
            );
            Ok(Eval::exact(TSeries::from_coeff(lit_coeff(&v, cfg))))
        }
    }
}

fn pow(a: &Expr, b: &Expr, cfg: &Config) -> CliResult<Eval> {
    let base = eval(a, cfg)?;
    if let Some(r) = literal_exponent(b) {
        // W(x)^r = W(x*r), exactly, for a unit monomial base
        if base.value.terms().len() == 1 && base.value.terms()[0].1.is_one() {
            let m = &base.value.terms()[0].0;
            let scaled = TMonomial::from_exponent(m.exponent().scale(&Coeff::Exact(r)));
            return Ok(Eval { value: TSeries::monomial(scaled), bound: base.bound });
        }
        if r.is_integer() {
            if let Some(n) = r.numer().to_i64() {
                return int_pow(base, n, cfg);
            }
        }
    }
    let expo = eval(b, cfg)?;
    // A unit-monomial base stays in the omega-map reading for any exponent:
    // W(e)^x = W(e*x).  This is what makes the printed normal form
    // re-parseable — `w^(w^(-1))` must evaluate to itself, not to
    // exp(w^(-1) log w).
    if base.value.terms().len() == 1 && base.value.terms()[0].1.is_one() {
        let e = transstruct::to_conway(&base.value)?.terms()[0].0.clone();
        let scaled = conway::mul(&e, &transstruct::to_conway(&expo.value)?);
        let value = transstruct::from_conway(&Surreal::monomial(scaled))?;
        return Ok(Eval { value, bound: join_bounds(base.bound, expo.bound) });
    }
    // a^b = exp(b log(a))
    let lg = log_ts(&base.value, cfg.order)?;
    let gamma = expo.value.mul(&lg.value);
    let r = exp_ts(&gamma, cfg.order)?;
    let lead = r.value.leading().map(|(m, _)| m.clone());
    let log_err = join_bounds(lg.remainder_bound, base.bound);
    let gamma_err = join_bounds(
        shift_bound(&log_err, expo.value.leading().map(|(m, _)| m)),
        expo.bound,
    );
    let bound = join_bounds(r.remainder_bound, shift_bound(&gamma_err, lead.as_ref()));
    Ok(Eval { value: r.value, bound }.clip())
}

fn int_pow(base: Eval, n: i64, cfg: &Config) -> CliResult<Eval> {
    let mut acc = TSeries::from_int(1);
    for _ in 0..n.unsigned_abs() {
        acc = acc.mul(&base.value);
    }
    let mut out = if n < 0 {
        Eval::of(inverse_ts(&acc, cfg.order)?)
    } else {
        Eval::exact(acc)
    };
    out.bound = join_bounds(out.bound, base.bound);
    Ok(out.clip())
}

/// Conway-form text when the g-map supports every exponent, the
/// exponential-form text otherwise.
pub fn render_value(v: &TSeries) -> String {
    match transstruct::to_conway(v) {
        Ok(x) => x.to_string(),
        Err(_) => v.to_string(),
    }
}

pub fn render_monomial(m: &TMonomial) -> String {
    render_value(&TSeries::monomial(m.clone()))
}

/// Output of one evaluation: stdout text, optional stderr diagnostic.
pub struct Rendered {
    pub out: String,
    pub diag: Option<String>,
}

pub fn render(e: &Eval, cfg: &Config) -> Rendered {
    match cfg.format {
        Format::Text => Rendered {
            out: render_value(&e.value),
            diag: e.bound.as_ref().map(|b| format!("remainder bound: {}", render_monomial(b))),
        },
        Format::Json => {
            let mut obj = json!({
                "ok": true,
                "text": render_value(&e.value),
                "value": e.value.to_json(),
            });
            if let Ok(x) = transstruct::to_conway(&e.value) {
                obj["conway"] = x.to_json();
            }
            if let Some(b) = &e.bound {
                obj["remainder_bound"] = json!(render_monomial(b));
            }
            Rendered { out: obj.to_string(), diag: None }
        }
    }
}

pub fn render_error(err: &CliError, cfg: &Config) -> String {
    match cfg.format {
        Format::Text => format!("error: {}", err.message()),
        Format::Json => json!({
            "ok": false,
            "error": err.message(),
            "code": err.code(),
        })
        .to_string(),
    }
}

/// Nesting depth of a monomial: ladder atoms count their subscript,
/// exponential monomials count one level per nesting.
fn mono_depth(m: &TMonomial) -> usize {
    match m {
        TMonomial::Atom(k) => k.unsigned_abs() as usize,
        TMonomial::Exp(gamma) => 1 + series_depth(gamma),
    }
}

fn series_depth(f: &TSeries) -> usize {
    f.terms().iter().map(|(m, _)| mono_depth(m)).max().unwrap_or(0)
}

fn check_depth(v: Eval, cfg: &Config) -> CliResult<Eval> {
    let d = series_depth(&v.value);
    if d > cfg.depth {
        return Err(CliError::Lib(surreal_core::Error::DepthExceeded(d, cfg.depth)));
    }
    Ok(v)
}

pub fn eval_line(input: &str, cfg: &Config) -> CliResult<Eval> {
    check_depth(eval(&parse(input)?, cfg)?, cfg)
}

// ---- variable rendering for `expand` ----

/// `gamma / log(x)` when every term divides cleanly, for `x^(..)` display.
fn log_quotient(gamma: &TSeries) -> Option<TSeries> {
    let mut terms = Vec::new();
    for (m, c) in gamma.terms() {
        match m {
            TMonomial::Atom(-1) => terms.push((TMonomial::one(), c.clone())),
            TMonomial::Exp(delta) => {
                if !delta.terms().iter().any(|(dm, _)| *dm == TMonomial::Atom(-2)) {
                    return None;
                }
                let q = TMonomial::from_exponent(delta.sub(&TSeries::atom(-2)));
                terms.push((q, c.clone()));
            }
            _ => return None,
        }
    }
    Some(TSeries::from_terms(terms))
}

fn xmono(m: &TMonomial) -> String {
    match m {
        TMonomial::Atom(0) => "x".to_string(),
        TMonomial::Atom(s) if *s < 0 => format!("log_{}(x)", -s),
        TMonomial::Atom(s) => format!("exp_{}(x)", s),
        TMonomial::Exp(g) if g.is_zero() => "1".to_string(),
        TMonomial::Exp(g) => match log_quotient(g) {
            Some(q) => format!("x^({})", xseries(&q)),
            None => format!("e^({})", xseries(g)),
        },
    }
}

/// The series over a real variable `x` in place of `w`.
pub fn xseries(f: &TSeries) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let n = f.terms().len();
    let parts: Vec<String> = f
        .terms()
        .iter()
        .map(|(m, c)| {
            if m.is_one() {
                if c.is_negative() && n > 1 {
                    format!("({c})")
                } else {
                    c.to_string()
                }
            } else if c.is_one() {
                xmono(m)
            } else if c.is_negative() {
                format!("{}*({c})", xmono(m))
            } else {
                format!("{}*{c}", xmono(m))
            }
        })
        .collect();
    parts.join(" + ")
}

/// First `n_terms` of the normal form plus the formal-variable rendering.
pub fn expand(input: &str, n_terms: usize, cfg: &Config) -> CliResult<Rendered> {
    let e = eval_line(input, cfg)?;
    let kept = diffcomp::head_terms(&e.value, n_terms);
    let tail = e
        .value
        .terms()
        .get(n_terms)
        .map(|(m, _)| m.clone())
        .or(e.bound.clone());
    let mut xline = xseries(&kept);
    if let Some(t) = &tail {
        if kept.is_zero() {
            xline = format!("O({})", xmono(t));
        } else {
            xline = format!("{xline} + O({})", xmono(t));
        }
    }
    match cfg.format {
        Format::Text => Ok(Rendered {
            out: format!("{}\n~ {}", render_value(&kept), xline),
            diag: e.bound.as_ref().map(|b| format!("remainder bound: {}", render_monomial(b))),
        }),
        Format::Json => Ok(Rendered {
            out: json!({
                "ok": true,
                "text": render_value(&kept),
                "variable": xline,
                "value": kept.to_json(),
            })
            .to_string(),
            diag: None,
        }),
    }
}

// ---- structural subcommands ----

pub fn signexp(arg: &str) -> CliResult<String> {
    let trimmed = arg.trim();
    if !trimmed.is_empty() && trimmed.chars().all(|c| c == '+' || c == '-') {
        // sign string to dyadic
        let signs: Vec<sign::Sign> = trimmed
            .chars()
            .map(|c| if c == '+' { sign::Sign::Plus } else { sign::Sign::Minus })
            .collect();
        let se = sign::SignExpansion::new(signs);
        return Ok(se.to_dyadic().to_string());
    }
    let r: BigRational = trimmed.parse().map_err(|_| {
        CliError::Parse(ParseError {
            position: 1,
            expected: vec!["a dyadic rational or a sign string".to_string()],
            found: format!("'{trimmed}'"),
        })
    })?;
    let d = dyadic_of(&r)?;
    let se = sign::SignExpansion::from_dyadic(&d);
    let s: String = se
        .signs()
        .iter()
        .map(|s| if *s == sign::Sign::Plus { '+' } else { '-' })
        .collect();
    Ok(if s.is_empty() { "(empty)".to_string() } else { s })
}

pub fn rank(input: &str, cfg: &Config) -> CliResult<String> {
    let e = eval_line(input, cfg)?;
    Ok(transstruct::nr(&e.value)?.to_string())
}

pub fn paths_cmd(input: &str, cfg: &Config) -> CliResult<String> {
    let e = eval_line(input, cfg)?;
    let ps = transstruct::paths(&e.value);
    if ps.is_empty() {
        return Ok("no paths (real constant)".to_string());
    }
    let mut lines = Vec::new();
    for (i, p) in ps.iter().enumerate() {
        let steps: Vec<String> = p
            .steps
            .iter()
            .map(|(c, m)| {
                if c.is_one() {
                    m.to_string()
                } else {
                    format!("{m}*({c})")
                }
            })
            .collect();
        let atom = TMonomial::Atom(p.terminal.index);
        lines.push(format!(
            "path {}: {} -> atom {}",
            i + 1,
            steps.join(" => "),
            atom
        ));
    }
    Ok(lines.join("\n"))
}

pub fn level_cmd(x: &str, y: &str, cfg: &Config) -> CliResult<String> {
    let a = eval_line(x, cfg)?;
    let b = eval_line(y, cfg)?;
    let l = transstruct::level_compare(&a.value, &b.value)?;
    Ok(match l {
        Level::Lower => "lower",
        Level::Same => "same",
        Level::Higher => "higher",
    }
    .to_string())
}
