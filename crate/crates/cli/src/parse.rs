//! Polynomial and matrix expressions.
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor (("*" factor) | ("/" integer))*
//! factor := atom ["^" integer]
//! atom   := integer | identifier | "(" expr ")"
//! matrix := "[" row (";" row)* "]"      row := expr ("," expr)*
//! ```
//! Juxtaposition is rejected: `2X` and `X Y` are errors.

use std::sync::Arc;

use diffalg::module::RMatrix;
use diffalg::quotient::QuotientRing;
use diffalg::{PolyRing, Polynomial};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { line, col, message: message.into() }
    }

    /// Moves a column inside a value to its position on a file line.
    pub fn at_line(mut self, line: usize, col_offset: usize) -> Self {
        self.line = line;
        self.col += col_offset;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(chars[start..i].iter().collect()), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()[],;".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else if c == '−' {
            out.push((Tok::Op('-'), col));
            i += 1;
        } else {
            return Err(ParseError::new(1, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a Arc<PolyRing>, text: &str) -> Result<Self, ParseError> {
        let toks = tokenize(text)?;
        Ok(Parser { ring, toks, pos: 0, end: text.chars().count() + 1 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(1, self.col(), message))
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), ParseError> {
        if self.eat(op) {
            Ok(())
        } else {
            self.err(format!("expected '{op}'"))
        }
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                let v = s.parse::<u64>().or_else(|_| self.err(format!("integer {s} is too large")))?;
                self.pos += 1;
                Ok(v)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let neg = self.eat('-');
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let col = self.col();
                let d = self.integer()?;
                let inv = self.ring.field.from_i64(d as i64).inv();
                match inv {
                    Some(c) => acc = acc.scale(&c),
                    None => return Err(ParseError::new(1, col, "division by zero in the coefficient field")),
                }
            } else if matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_)) | Some(Tok::Op('('))) {
                return self.err("implicit multiplication is not allowed; use '*'");
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.integer()?;
            let e = u32::try_from(e).or_else(|_| self.err("exponent is too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let c = constant(self.ring, &s);
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                let i = match self.ring.var_index(&name) {
                    Ok(i) => i,
                    Err(_) => return self.err(format!("unknown variable {name}")),
                };
                self.pos += 1;
                Ok(Polynomial::var(self.ring, i))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of expression"),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => self.err("unexpected trailing input"),
        }
    }
}

/// Reduces a decimal integer into the coefficient field digit by digit.
fn constant(ring: &PolyRing, digits: &str) -> diffalg::Scalar {
    let f = ring.field;
    let ten = f.from_i64(10);
    digits.bytes().fold(f.zero(), |acc, b| &(&acc * &ten) + &f.from_i64((b - b'0') as i64))
}

pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(ring, text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// `[a, b; c, d]`, rows separated by `;`.
pub fn parse_matrix(ring: &Arc<QuotientRing>, text: &str) -> Result<RMatrix, ParseError> {
    let mut p = Parser::new(ring.ambient(), text)?;
    p.expect('[')?;
    let mut rows: Vec<Vec<Polynomial>> = vec![Vec::new()];
    loop {
        rows.last_mut().expect("nonempty").push(p.expr()?);
        if p.eat(',') {
            continue;
        }
        if p.eat(';') {
            rows.push(Vec::new());
            continue;
        }
        p.expect(']')?;
        break;
    }
    p.finish()?;
    let ncols = rows[0].len();
    if let Some(r) = rows.iter().position(|r| r.len() != ncols) {
        return Err(ParseError::new(1, 1, format!("row {} has {} entries, expected {ncols}", r + 1, rows[r].len())));
    }
    RMatrix::from_rows(ring, ncols, rows).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use diffalg::Field;

    fn ring(field: Field) -> Arc<PolyRing> {
        PolyRing::new(field, &["X", "Y", "Z"]).unwrap()
    }

    #[test]
    fn binomials_and_constants() {
        let s = ring(Field::Prime(2));
        let x = Polynomial::var(&s, 0);
        let y = Polynomial::var(&s, 1);
        let z = Polynomial::var(&s, 2);
        assert_eq!(parse_polynomial(&s, "X*Z - Y^2").unwrap(), &(&x * &z) - &y.pow(2));
        assert!(parse_polynomial(&s, "0").unwrap().is_zero());
        assert_eq!(parse_polynomial(&s, "X^2*Y^2").unwrap(), &x.pow(2) * &y.pow(2));
        // 2 = 0 in characteristic 2
        assert!(parse_polynomial(&s, "2*X + 4").unwrap().is_zero());
    }

    #[test]
    fn rationals() {
        let s = ring(Field::Rationals);
        let p = parse_polynomial(&s, "-(X + 1/2)^2").unwrap();
        assert_eq!(p.to_string(), "-X^2 - X - 1/4");
    }

    #[test]
    fn errors_carry_columns() {
        let s = ring(Field::Rationals);
        let e = parse_polynomial(&s, "X + W").unwrap_err();
        assert_eq!((e.col, e.message.as_str()), (5, "unknown variable W"));
        let e = parse_polynomial(&s, "2X").unwrap_err();
        assert_eq!(e.col, 2);
        assert!(e.message.contains("implicit multiplication"));
        assert_eq!(parse_polynomial(&s, "(X").unwrap_err().col, 3);
        assert!(parse_polynomial(&s, "X^").is_err());
        assert!(parse_polynomial(&s, "X $ Y").is_err());
    }

    #[test]
    fn matrices() {
        let s = ring(Field::Prime(2));
        let r = QuotientRing::new(&s, vec![Polynomial::var(&s, 0).pow(2)]).unwrap();
        let m = parse_matrix(&r, "[Y^2; 0]").unwrap();
        assert_eq!((m.nrows(), m.ncols()), (2, 1));
        assert!(parse_matrix(&r, "[X, Y; Z]").is_err());
    }
}
