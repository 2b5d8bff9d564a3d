//! Parser for the polynomial text format shared by every command.
//!
//! Terms look like `T^8+T^6+1`, `T^4+z*T^2+(z+1)*T+(z+1)` or
//! `(T^2+z*T)*a+T^3`. Whitespace is ignored. The parser produces a small
//! expression tree which each ring evaluates with its own variable table.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {found:?} at offset {offset}")]
    Unexpected { found: char, offset: usize },
    #[error("unexpected end of input")]
    Eof,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("exponent `{0}` out of range")]
    BadExponent(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Var(String),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

/// A commutative ring that expressions can be evaluated into.
pub trait ExprRing: Sized + Clone {
    fn zero(&self) -> Self;
    fn from_int(&self, n: u64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Expr {
    /// Evaluates the tree. `unit` supplies the ring context (its value is
    /// ignored); `var` resolves identifiers.
    pub fn eval<R, F>(&self, unit: &R, var: &F) -> Result<R, ParseError>
    where
        R: ExprRing,
        F: Fn(&str) -> Option<R>,
    {
        match self {
            Expr::Int(n) => Ok(unit.from_int(*n)),
            Expr::Var(name) => var(name).ok_or_else(|| ParseError::UnknownSymbol(name.clone())),
            Expr::Sum(terms) => {
                let mut acc = unit.zero();
                for (negate, t) in terms {
                    let v = t.eval(unit, var)?;
                    acc = if *negate { acc.sub(&v) } else { acc.add(&v) };
                }
                Ok(acc)
            }
            Expr::Product(fs) => {
                let mut acc = unit.from_int(1);
                for f in fs {
                    acc = acc.mul(&f.eval(unit, var)?);
                }
                Ok(acc)
            }
            Expr::Pow(b, e) => Ok(b.eval(unit, var)?.pow(*e)),
        }
    }

    /// Identifiers appearing in the expression, in first-seen order.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Sum(ts) => ts.iter().for_each(|(_, t)| t.collect_vars(out)),
            Expr::Product(fs) => fs.iter().for_each(|f| f.collect_vars(out)),
            Expr::Pow(b, _) => b.collect_vars(out),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let chars: Vec<(usize, char)> = input
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser { chars, pos: 0 };
    let e = p.sum()?;
    if let Some(&(offset, found)) = p.chars.get(p.pos) {
        return Err(ParseError::Unexpected { found, offset });
    }
    Ok(e)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn unexpected(&self) -> ParseError {
        match self.chars.get(self.pos) {
            Some(&(offset, found)) => ParseError::Unexpected { found, offset },
            None => ParseError::Eof,
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut negate = false;
        if self.peek() == Some('-') {
            negate = true;
            self.pos += 1;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        loop {
            terms.push((negate, self.product()?));
            match self.peek() {
                Some('+') => negate = false,
                Some('-') => negate = true,
                _ => break,
            }
            self.pos += 1;
        }
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(Expr::Sum(terms))
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.power()?];
        while self.peek() == Some('*') {
            self.pos += 1;
            factors.push(self.power()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        Ok(Expr::Product(factors))
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.unexpected());
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| ParseError::BadExponent(digits.clone()))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                d.parse()
                    .map(Expr::Int)
                    .map_err(|_| ParseError::Invalid(format!("integer `{d}` too large")))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(c) = self.peek().filter(|c| c.is_alphanumeric() || *c == '_') {
                    s.push(c);
                    self.pos += 1;
                }
                Ok(Expr::Var(s))
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Formats `coeff*var^exp` style monomials, shared by the printers.
pub(crate) fn monomial(var: &str, exp: usize) -> String {
    match exp {
        0 => String::new(),
        1 => var.to_string(),
        e => format!("{var}^{e}"),
    }
}

/// Joins a coefficient string and a monomial. Multi-term coefficients are
/// parenthesised.
pub(crate) fn term(coeff: &str, mono: &str) -> String {
    let wrapped = if coeff.contains('+') || coeff.contains('-') {
        format!("({coeff})")
    } else {
        coeff.to_string()
    };
    match (coeff, mono.is_empty()) {
        (_, true) => wrapped,
        ("1", false) => mono.to_string(),
        _ => format!("{wrapped}*{mono}"),
    }
}
