//! Text documents naming an algebra, optional multiplicities and partition, and polynomials.
//!
//! ```text
//! # comment
//! algebra: H
//! k: 0,-1/4,-1/4
//! partition: {1|2,3}
//! poly f = (1)*1*x0 + (1)*i*x1
//! ```

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{make_algebra, AlgebraSpec, AlgebraTable, Element, Frame};
use crate::operators::Multiplicities;
use crate::partition::Partition;
use crate::polynomial::{Monomial, Poly};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub algebra: AlgebraSpec,
    pub frame: Frame,
    pub k: Option<Multiplicities>,
    pub partition: Option<Partition>,
    pub polys: Vec<(String, Poly)>,
}

impl InputDocument {
    pub fn table(&self) -> &Arc<AlgebraTable> {
        self.frame.algebra_arc()
    }
}

impl fmt::Display for InputDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra: {}", self.algebra)?;
        if let Some(k) = &self.k {
            writeln!(f, "k: {k}")?;
        }
        if let Some(p) = &self.partition {
            writeln!(f, "partition: {p}")?;
        }
        for (name, p) in &self.polys {
            writeln!(f, "poly {name} = {p}")?;
        }
        Ok(())
    }
}

pub fn parse_document(text: &str) -> Result<InputDocument, ParseError> {
    let mut algebra: Option<(AlgebraSpec, Frame)> = None;
    let mut k = None;
    let mut partition: Option<Partition> = None;
    let mut polys: Vec<(String, Poly)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let col_of = |sub: &str| sub.as_ptr() as usize - raw.as_ptr() as usize + 1;
        if let Some(rest) = trimmed.strip_prefix("poly ") {
            let Some((_, frame)) = &algebra else {
                return Err(ParseError::new(
                    line_no,
                    indent + 1,
                    "`algebra:` must come before polynomials",
                ));
            };
            let Some((name, expr)) = rest.split_once('=') else {
                return Err(ParseError::new(
                    line_no,
                    col_of(rest),
                    "expected `poly <name> = <expression>`",
                ));
            };
            let name = name.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(ParseError::new(
                    line_no,
                    col_of(rest),
                    format!("invalid polynomial name `{name}`"),
                ));
            }
            if polys.iter().any(|(n, _)| n == name) {
                return Err(ParseError::new(
                    line_no,
                    col_of(rest),
                    format!("duplicate polynomial `{name}`"),
                ));
            }
            let poly = parse_poly_at(frame, expr, line_no, col_of(expr))?;
            polys.push((name.to_string(), poly));
            continue;
        }
        let Some((key, value)) = trimmed.split_once(':') else {
            return Err(ParseError::new(
                line_no,
                indent + 1,
                "expected `key: value` or `poly name = ...`",
            ));
        };
        let vcol = col_of(value);
        let value = value.trim();
        match key.trim() {
            "algebra" => {
                if algebra.is_some() {
                    return Err(ParseError::new(line_no, indent + 1, "algebra given twice"));
                }
                let spec: AlgebraSpec = value
                    .parse()
                    .map_err(|e| ParseError::new(line_no, vcol, format!("{e}")))?;
                let (_, frame) = make_algebra(spec);
                algebra = Some((spec, frame));
            }
            "k" => {
                let parsed: Multiplicities = value
                    .parse()
                    .map_err(|e| ParseError::new(line_no, vcol, format!("{e}")))?;
                k = Some(parsed);
            }
            "partition" => {
                let parsed: Partition = value
                    .parse()
                    .map_err(|e| ParseError::new(line_no, vcol, format!("{e}")))?;
                partition = Some(parsed);
            }
            other => {
                return Err(ParseError::new(
                    line_no,
                    indent + 1,
                    format!("unknown key `{other}`"),
                ));
            }
        }
    }
    let Some((spec, frame)) = algebra else {
        return Err(ParseError::new(1, 1, "missing `algebra:` line"));
    };
    let n = frame.n();
    if let Some(kv) = &k {
        if kv.n() != n {
            return Err(ParseError::new(
                1,
                1,
                format!("k has {} entries but the algebra has {n} units", kv.n()),
            ));
        }
    }
    if let Some(p) = &partition {
        if p.n() != n {
            return Err(ParseError::new(
                1,
                1,
                format!("partition covers [{}] but the algebra has {n} units", p.n()),
            ));
        }
    }
    Ok(InputDocument {
        algebra: spec,
        frame,
        k,
        partition,
        polys,
    })
}

/// Parses one polynomial expression such as `(1/2)*i*x1^2 - 3*x0`.
pub fn parse_poly(frame: &Frame, text: &str) -> Result<Poly, ParseError> {
    parse_poly_at(frame, text, 1, 1)
}

fn parse_poly_at(
    frame: &Frame,
    text: &str,
    line: usize,
    column: usize,
) -> Result<Poly, ParseError> {
    let tokens = tokenize(text, line, column)?;
    let mut parser = Parser {
        frame,
        tokens,
        pos: 0,
        line,
        end_column: column + text.len(),
    };
    let p = parser.expr()?;
    if let Some(t) = parser.tokens.get(parser.pos) {
        return Err(ParseError::new(
            line,
            t.column,
            format!("unexpected `{}`", t.kind),
        ));
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Number(Rational),
    Ident(String),
    Sym(char),
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Number(r) => write!(f, "{r}"),
            Kind::Ident(s) => write!(f, "{s}"),
            Kind::Sym(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Kind,
    column: usize,
}

fn tokenize(text: &str, line: usize, column: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (offset, c) = chars[i];
        let col = column + text[..offset].chars().count();
        if c.is_whitespace() {
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Token {
                kind: Kind::Sym(c),
                column: col,
            });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = offset;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let end = chars.get(i).map_or(text.len(), |t| t.0);
            let value: num_bigint::BigInt = text[start..end].parse().expect("digits");
            out.push(Token {
                kind: Kind::Number(Rational::from_integer(value)),
                column: col,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = offset;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let end = chars.get(i).map_or(text.len(), |t| t.0);
            out.push(Token {
                kind: Kind::Ident(text[start..end].to_string()),
                column: col,
            });
        } else {
            return Err(ParseError::new(
                line,
                col,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    frame: &'a Frame,
    tokens: Vec<Token>,
    pos: usize,
    line: usize,
    end_column: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Kind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.end_column, |t| t.column)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column(), message)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Kind::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = multiply(&acc, &rhs);
            } else if self.eat('/') {
                let col = self.column();
                let rhs = self.unary()?;
                let divisor = rhs
                    .terms()
                    .next()
                    .filter(|(m, a)| rhs.len() == 1 && m.degree() == 0 && a.is_real())
                    .map(|(_, a)| a.real_part().clone())
                    .ok_or_else(|| {
                        ParseError::new(self.line, col, "can only divide by a nonzero number")
                    })?;
                if divisor.is_zero() {
                    return Err(ParseError::new(self.line, col, "division by zero"));
                }
                acc = acc.scale(&divisor.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.column();
        let exponent = match self.peek() {
            Some(Kind::Number(r)) if r.is_integer() => {
                let e = r.to_integer();
                self.pos += 1;
                u32::try_from(e)
                    .map_err(|_| ParseError::new(self.line, col, "exponent too large"))?
            }
            _ => {
                return Err(ParseError::new(
                    self.line,
                    col,
                    "expected a nonnegative integer exponent",
                ))
            }
        };
        let one = Poly::constant(self.frame, self.frame.algebra().one());
        Ok((0..exponent).fold(one, |acc, _| multiply(&acc, &base)))
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let frame = self.frame;
        let col = self.column();
        match self.peek().cloned() {
            Some(Kind::Number(r)) => {
                self.pos += 1;
                Ok(Poly::constant(frame, frame.algebra().real(r)))
            }
            Some(Kind::Ident(name)) => {
                self.pos += 1;
                if let Some(index) = variable_index(&name) {
                    if index > frame.n() {
                        return Err(ParseError::new(
                            self.line,
                            col,
                            format!("variable `{name}` exceeds x{}", frame.n()),
                        ));
                    }
                    return Ok(Poly::var(frame, index));
                }
                match frame.algebra().basis_index(&name) {
                    Some(b) => Ok(Poly::constant(frame, frame.algebra().basis(b))),
                    None => Err(ParseError::new(
                        self.line,
                        col,
                        format!("unknown basis name `{name}` for {}", frame.algebra().name()),
                    )),
                }
            }
            Some(Kind::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(other) => Err(ParseError::new(
                self.line,
                col,
                format!("unexpected `{other}`"),
            )),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

fn variable_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Product with real commuting variables: `(sum m a)(sum m' b) = sum m m' (a b)`.
fn multiply(f: &Poly, g: &Poly) -> Poly {
    let alg = f.frame().algebra();
    let mut out = Poly::zero(f.frame());
    for (m, a) in f.terms() {
        for (m2, b) in g.terms() {
            out.add_term(m.mul(m2), &alg.mul(a, b));
        }
    }
    out
}

/// Parses a single element such as `(1/2)*1 + (-1)*e12`.
pub fn parse_element(frame: &Frame, text: &str) -> Result<Element, ParseError> {
    let p = parse_poly(frame, text)?;
    if p.degree().is_some_and(|d| d > 0) {
        return Err(ParseError::new(1, 1, "expected a constant"));
    }
    Ok(p.coefficient(&Monomial::one(frame.n() + 1))
        .cloned()
        .unwrap_or_else(|| frame.algebra().zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn parses_examples() {
        let doc = parse_document("algebra: H\npoly f = (1)*x0 + (i)*x1").unwrap();
        assert_eq!(doc.polys.len(), 1);
        assert_eq!(doc.polys[0].1.to_string(), "(1)*1*x0 + (1)*i*x1");
        let doc = parse_document("algebra: Cl(0,3)\npoly g = (e12)*x1^2").unwrap();
        assert_eq!(doc.polys[0].1.to_string(), "(1)*e12*x1^2");
        let err = parse_document("algebra: H\npoly h = (e5)*x0").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.column, 11);
        assert!(err.message.contains("unknown basis name"));
    }

    #[test]
    fn round_trip() {
        let text = "# sample\nalgebra: Cl(0,3)\nk: -1/3,-1/3,-1/3\npartition: {1|2,3}\n\
                    poly f = ((1/2)*1 + (-1)*e12)*x1*x2 - 3*x0^2/4\npoly g = 0\n";
        let doc = parse_document(text).unwrap();
        let again = parse_document(&doc.to_string()).unwrap();
        assert_eq!(doc, again);
        assert_eq!(doc.k.as_ref().unwrap().kappa(), int(-1));
        let f = &doc.polys[0].1;
        assert_eq!(f.len(), 2);
        assert!(doc.polys[1].1.is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_document("poly f = x0").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse_document("algebra: H\n\npoly f = x0 + x7").unwrap_err();
        assert_eq!((e.line, e.column), (3, 15));
        let e = parse_document("algebra: H\npoly f = (x0").unwrap_err();
        assert!(e.message.contains("`)`"));
        let e = parse_document("algebra: H\nk: 1,2").unwrap_err();
        assert!(e.message.contains("k has 2 entries"));
        assert!(parse_document("algebra: Z").is_err());
        assert!(parse_document("algebra: H\npoly f = x0 / x1").is_err());
        assert!(parse_document("algebra: H\npoly f = x0 $").is_err());
    }

    #[test]
    fn element_parsing_and_products() {
        let frame = make_algebra(AlgebraSpec::Quaternions).1;
        let e = parse_element(&frame, "(1/2)*1 + (-1)*k").unwrap();
        assert_eq!(frame.algebra().format_element(&e), "(1/2)*1 + (-1)*k");
        let ij = parse_element(&frame, "i*j").unwrap();
        assert_eq!(ij, frame.algebra().basis(3));
        let p = parse_poly(&frame, "(x1 + x2)^2").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(
            parse_element(&frame, "-2/3").unwrap(),
            frame.algebra().real(rat(-2, 3))
        );
    }
}
