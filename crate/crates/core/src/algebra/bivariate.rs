//! Polynomials in X with coefficients in F_q[t], and their text syntax.
//!
//! Grammar, with implicit multiplication between adjacent factors:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*'? unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'X' | 't' | '(' expr ')'
//! ```
//!
//! Integer literals are reduced mod p.

use std::collections::BTreeMap;

use super::field::Field;
use super::fq::{Embedding, Fq, FqField};
use super::poly::{Poly, PolyRing};
use super::ratfunc::{format_poly_in, RationalFunctionField};
use super::squarefree::RPoly;
use crate::error::AlgebraError;

/// Largest exponent accepted by the parser.
pub const MAX_PARSED_EXPONENT: u64 = 4096;

/// Σ_i c_i(t) X^i.
#[derive(Clone, Debug, PartialEq)]
pub struct XPoly {
    field: FqField,
    coeffs: Vec<Poly<Fq>>,
}

impl XPoly {
    pub fn new(field: &FqField, coeffs: Vec<Poly<Fq>>) -> Self {
        let ring = PolyRing::new(field.clone());
        let mut coeffs: Vec<Poly<Fq>> = coeffs
            .into_iter()
            .map(|c| ring.from_coeffs(c.into_coeffs()))
            .collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        XPoly {
            field: field.clone(),
            coeffs,
        }
    }

    /// From a table of (X-degree, t-degree) ↦ coefficient.
    pub fn from_terms(field: &FqField, terms: &BTreeMap<(usize, usize), Fq>) -> Self {
        let xdeg = terms.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        let mut rows: Vec<Vec<Fq>> = vec![Vec::new(); xdeg];
        for (&(i, j), &c) in terms {
            let row = &mut rows[i];
            if row.len() <= j {
                row.resize(j + 1, Fq::ZERO);
            }
            row[j] = field.add(&row[j], &c);
        }
        let ring = PolyRing::new(field.clone());
        XPoly::new(
            field,
            rows.into_iter().map(|r| ring.from_coeffs(r)).collect(),
        )
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Poly<Fq>] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.coeffs() == [Fq::ONE])
    }

    /// Coefficients of X^i as dense vectors in t.
    pub fn dense(&self) -> Vec<Vec<Fq>> {
        self.coeffs.iter().map(|c| c.coeffs().to_vec()).collect()
    }

    pub fn to_ratfunc(&self, k: &RationalFunctionField) -> RPoly {
        let ring = PolyRing::new(k.clone());
        ring.from_coeffs(self.coeffs.iter().map(|c| k.from_poly(c.clone())).collect())
    }

    /// The polynomial with t replaced by t^m.
    pub fn substitute_t_power(&self, m: usize) -> XPoly {
        let ring = PolyRing::new(self.field.clone());
        XPoly::new(
            &self.field,
            self.coeffs.iter().map(|c| ring.inflate(c, m)).collect(),
        )
    }

    pub fn embed(&self, e: &Embedding) -> XPoly {
        let ring = PolyRing::new(e.target().clone());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| ring.from_coeffs(c.coeffs().iter().map(|&a| e.apply(a)).collect()))
            .collect();
        XPoly::new(e.target(), coeffs)
    }
}

impl std::fmt::Display for XPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let xs = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            let cs = format_poly_in(&self.field, c, "t");
            let single_term = !cs.contains(" + ");
            parts.push(match (i, cs.as_str()) {
                (0, _) => cs,
                (_, "1") => xs,
                _ if single_term => format!("{cs}*{xs}"),
                _ => format!("({cs})*{xs}"),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

type Terms = BTreeMap<(usize, usize), u64>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    p: u64,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> AlgebraError {
        AlgebraError::Parse {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<u64, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().map_err(|_| AlgebraError::Parse {
            column: start + 1,
            message: "integer too large".into(),
        })
    }

    fn add(&self, a: &Terms, b: &Terms, sign: u64) -> Terms {
        let mut out = a.clone();
        for (k, v) in b {
            let e = out.entry(*k).or_insert(0);
            *e = (*e + v * sign) % self.p;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    fn mul(&self, a: &Terms, b: &Terms) -> Terms {
        let mut out = Terms::new();
        for (ka, va) in a {
            for (kb, vb) in b {
                let e = out.entry((ka.0 + kb.0, ka.1 + kb.1)).or_insert(0);
                *e = (*e + va * vb) % self.p;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    fn expr(&mut self) -> Result<Terms, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.add(&acc, &t, 1);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.add(&acc, &t, self.p - 1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Terms, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(c) if c.is_ascii_digit() || matches!(c, b'X' | b'x' | b't' | b'(') => {}
                _ => return Ok(acc),
            }
            let f = self.unary()?;
            acc = self.mul(&acc, &f);
        }
    }

    fn unary(&mut self) -> Result<Terms, AlgebraError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(self.add(&Terms::new(), &inner, self.p - 1));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Terms, AlgebraError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.integer()?;
        if e > MAX_PARSED_EXPONENT {
            return Err(self.err(format!("exponent exceeds {MAX_PARSED_EXPONENT}")));
        }
        let mut acc = Terms::from([((0, 0), 1 % self.p)]);
        acc.retain(|_, v| *v != 0);
        for _ in 0..e {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Terms, AlgebraError> {
        let mut t = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                return Ok(Terms::from([((0, 0), n % self.p)])
                    .into_iter()
                    .filter(|(_, v)| *v != 0)
                    .collect());
            }
            Some(b'X') | Some(b'x') => Terms::from([((1, 0), 1)]),
            Some(b't') => Terms::from([((0, 1), 1)]),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                return Ok(inner);
            }
            Some(c) => return Err(self.err(format!("unexpected character '{}'", c as char))),
            None => return Err(self.err("unexpected end of input")),
        };
        self.pos += 1;
        t.retain(|_, v| *v != 0);
        Ok(t)
    }
}

/// Parses a polynomial in X and t with coefficients reduced into F_p ⊆ `field`.
pub fn parse_xpoly(s: &str, field: &FqField) -> Result<XPoly, AlgebraError> {
    let mut parser = Parser {
        src: s.as_bytes(),
        pos: 0,
        p: field.p() as u64,
    };
    let terms = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.err("unexpected trailing input"));
    }
    let terms = terms
        .into_iter()
        .map(|(k, v)| (k, field.from_int(v as i64)))
        .collect();
    Ok(XPoly::from_terms(field, &terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let f3 = FqField::prime(3).unwrap();
        let f = parse_xpoly("X^2 - t^3", &f3).unwrap();
        assert_eq!(f.to_string(), "X^2 + 2*t^3");
        assert!(f.is_monic());
        let g = parse_xpoly("(X + t)^3 - 4X", &f3).unwrap();
        assert_eq!(g.to_string(), "X^3 + 2*X + t^3");
        let h = parse_xpoly("2 t X + 3", &f3).unwrap();
        assert_eq!(h.to_string(), "2*t*X");
        assert_eq!(parse_xpoly("X - X", &f3).unwrap().to_string(), "0");
    }

    #[test]
    fn parse_errors_have_columns() {
        let f2 = FqField::prime(2).unwrap();
        assert_eq!(
            parse_xpoly("X + y", &f2).unwrap_err(),
            AlgebraError::Parse {
                column: 5,
                message: "unexpected character 'y'".into()
            }
        );
        assert!(matches!(
            parse_xpoly("(X + 1", &f2),
            Err(AlgebraError::Parse { column: 7, .. })
        ));
        assert!(matches!(
            parse_xpoly("X^", &f2),
            Err(AlgebraError::Parse { .. })
        ));
    }

    #[test]
    fn substitution() {
        let f3 = FqField::prime(3).unwrap();
        let f = parse_xpoly("X^2 - t^3", &f3).unwrap();
        assert_eq!(f.substitute_t_power(2).to_string(), "X^2 + 2*t^6");
    }
}
