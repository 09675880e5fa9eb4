//! Recursive-descent parser for workbench expressions.
//!
//! Grammar:
//! ```text
//! expr    := term (('+'|'-') term)*
//! term    := factor (('*'|'/') factor)*
//! factor  := base ('^' factor)?
//! base    := NUMBER | 'w' | 'exp' '(' expr ')' | 'log' ('_' NAT)? '(' expr ')'
//!          | 'D' '(' expr ')' | 'compose' '(' expr ',' expr ')'
//!          | 'W' '(' expr ')' | 'simplest' '(' '{' list '}' ',' '{' list '}' ')'
//!          | '(' expr ')' | '-' base
//! NUMBER  := integer or p/q
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(BigRational),
    Omega,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Exp(Box<Expr>),
    /// `log_k`, with `k >= 1` iterations.
    Log(u32, Box<Expr>),
    Derive(Box<Expr>),
    Compose(Box<Expr>, Box<Expr>),
    /// The omega-map `W(x)`, distinct from exponentiation.
    OmegaPow(Box<Expr>),
    Simplest(Vec<BigRational>, Vec<BigRational>),
}

/// Parse failure at a 1-based column, with the token set that would have
/// been accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at column {}: expected {}, found {}",
            self.position,
            self.expected.join(" | "),
            self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(BigRational),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number(r) => format!("'{r}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".to_string(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lex = Lexer { src: src.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        loop {
            lex.skip_ws();
            let col = lex.pos + 1;
            if lex.pos >= lex.src.len() {
                out.push((Tok::End, col));
                return Ok(out);
            }
            let c = lex.src[lex.pos] as char;
            let tok = if c.is_ascii_digit() {
                Tok::Number(lex.number()?)
            } else if c.is_ascii_alphabetic() {
                Tok::Ident(lex.ident())
            } else if "+-*/^(){},".contains(c) {
                lex.pos += 1;
                Tok::Sym(c)
            } else {
                return Err(ParseError {
                    position: col,
                    expected: vec!["a token".to_string()],
                    found: format!("'{c}'"),
                });
            };
            out.push((tok, col));
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap()
    }

    fn number(&mut self) -> Result<BigRational, ParseError> {
        let p = self.digits();
        if self.pos < self.src.len() && self.src[self.pos] == b'/' {
            // p/q only when a digit follows the slash; otherwise the slash
            // is division
            if self.pos + 1 < self.src.len() && (self.src[self.pos + 1] as char).is_ascii_digit() {
                self.pos += 1;
                let q = self.digits();
                if q == BigInt::from(0) {
                    return Err(ParseError {
                        position: self.pos,
                        expected: vec!["a nonzero denominator".to_string()],
                        found: "'0'".to_string(),
                    });
                }
                return Ok(BigRational::new(p, q));
            }
        }
        Ok(BigRational::from_integer(p))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && ((self.src[self.pos] as char).is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string()
    }
}

pub struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: Lexer::tokens(input)?, idx: 0 };
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.idx].0
    }

    fn col(&self) -> usize {
        self.toks[self.idx].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].0.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn err(&self, expected: &[&str]) -> ParseError {
        ParseError {
            position: self.col(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn eat_sym(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&[&format!("'{c}'")]))
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.err(&["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Sym('/') => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if *self.peek() == Tok::Sym('^') {
            self.bump();
            let exp = self.factor()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    const BASE_EXPECTED: &'static [&'static str] = &[
        "a number", "'w'", "'exp'", "'log'", "'D'", "'compose'", "'W'", "'simplest'", "'('", "'-'",
    ];

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Number(r) => {
                self.bump();
                Ok(Expr::Number(r))
            }
            Tok::Sym('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.base()?)))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.eat_sym(')')?;
                Ok(e)
            }
            Tok::Ident(name) => self.call(&name),
            _ => Err(self.err(Self::BASE_EXPECTED)),
        }
    }

    fn unary(&mut self, wrap: impl Fn(Box<Expr>) -> Expr) -> Result<Expr, ParseError> {
        self.bump();
        self.eat_sym('(')?;
        let e = self.expr()?;
        self.eat_sym(')')?;
        Ok(wrap(Box::new(e)))
    }

    fn call(&mut self, name: &str) -> Result<Expr, ParseError> {
        match name {
            "w" => {
                self.bump();
                Ok(Expr::Omega)
            }
            "exp" => self.unary(Expr::Exp),
            "D" => self.unary(Expr::Derive),
            "W" => self.unary(Expr::OmegaPow),
            "log" => self.unary(|e| Expr::Log(1, e)),
            "compose" => {
                self.bump();
                self.eat_sym('(')?;
                let f = self.expr()?;
                self.eat_sym(',')?;
                let x = self.expr()?;
                self.eat_sym(')')?;
                Ok(Expr::Compose(Box::new(f), Box::new(x)))
            }
            "simplest" => {
                self.bump();
                self.eat_sym('(')?;
                let left = self.brace_list()?;
                self.eat_sym(',')?;
                let right = self.brace_list()?;
                self.eat_sym(')')?;
                Ok(Expr::Simplest(left, right))
            }
            _ => {
                // log_k
                if let Some(k) = name.strip_prefix("log_") {
                    if let Ok(k) = k.parse::<u32>() {
                        return self.unary(|e| Expr::Log(k.max(1), e));
                    }
                }
                Err(self.err(Self::BASE_EXPECTED))
            }
        }
    }

    fn brace_list(&mut self) -> Result<Vec<BigRational>, ParseError> {
        self.eat_sym('{')?;
        let mut out = Vec::new();
        if *self.peek() == Tok::Sym('}') {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.signed_number()?);
            match self.peek() {
                Tok::Sym(',') => {
                    self.bump();
                }
                Tok::Sym('}') => {
                    self.bump();
                    return Ok(out);
                }
                _ => return Err(self.err(&["','", "'}'"])),
            }
        }
    }

    fn signed_number(&mut self) -> Result<BigRational, ParseError> {
        let neg = if *self.peek() == Tok::Sym('-') {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Number(r) => {
                self.bump();
                Ok(if neg { -r } else { r })
            }
            _ => Err(self.err(&["a number"])),
        }
    }
}
