//! Integer-coefficient polynomial expressions over a finite field.

use std::collections::BTreeMap;

use ptl_core::arith::{Field, FieldElement, Poly};

use crate::spec::ParseError;

/// Largest total degree an expression may reach.
const MAX_DEGREE: u64 = 1 << 16;

/// Sparse multivariate polynomial: exponent vector to nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    pub terms: BTreeMap<Vec<u32>, FieldElement>,
    nvars: usize,
}

impl MPoly {
    fn zero(nvars: usize) -> Self {
        Self { terms: BTreeMap::new(), nvars }
    }

    fn constant(c: FieldElement, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    fn var(i: usize, f: &Field, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, f.one());
        p
    }

    fn add(&self, other: &Self, f: &Field) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let v = match out.terms.get(e) {
                Some(a) => f.add(a, c),
                None => c.clone(),
            };
            if v.is_zero() {
                out.terms.remove(e);
            } else {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    fn neg(&self, f: &Field) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), f.neg(c))).collect(), nvars: self.nvars }
    }

    fn mul(&self, other: &Self, f: &Field) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let term = Self { terms: BTreeMap::from([(e, f.mul(c1, c2))]), nvars: self.nvars };
                out = out.add(&term, f);
            }
        }
        out
    }

    fn degree(&self) -> u64 {
        self.terms.keys().map(|e| e.iter().map(|&d| d as u64).sum()).max().unwrap_or(0)
    }

    /// Univariate view in variable `i`; other variables must not occur.
    pub fn to_poly(&self, i: usize) -> Option<Poly> {
        let mut coeffs: Vec<FieldElement> = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &d)| j != i && d != 0) {
                return None;
            }
            let d = e[i] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, FieldElement::zero());
            }
            coeffs[d] = c.clone();
        }
        Some(Poly::from_coeffs(coeffs))
    }

    /// Coefficients of `x^k` (variable `i`) as univariate polynomials in variable `j`.
    pub fn split(&self, i: usize, j: usize) -> Option<Vec<Poly>> {
        let top = self.terms.keys().map(|e| e[i] as usize).max().unwrap_or(0);
        let mut out = Vec::new();
        for k in 0..=top {
            let part = MPoly {
                terms: self
                    .terms
                    .iter()
                    .filter(|(e, _)| e[i] as usize == k)
                    .map(|(e, c)| {
                        let mut e = e.clone();
                        e[i] = 0;
                        (e, c.clone())
                    })
                    .collect(),
                nvars: self.nvars,
            };
            out.push(part.to_poly(j)?);
        }
        Some(out)
    }

    /// The constant term, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(FieldElement::zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }
}

/// Parses `text` (found at byte `base` of the whole input) as a polynomial in the
/// given variables. The letter `t` denotes the generator of an extension field.
pub fn parse(text: &str, base: usize, vars: &[char], field: &Field) -> Result<MPoly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, base, vars, field };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected {:?}", p.src[p.pos] as char)));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
    vars: &'a [char],
    field: &'a Field,
}

impl Parser<'_> {
    fn error(&self, message: String) -> ParseError {
        ParseError { offset: self.base + self.pos, message }
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

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let f = self.field;
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg(f)
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, f);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg(f), f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = self.multiply(acc)?;
                }
                // implicit product: `3x`, `2(x+1)`, `x(x-1)`
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = self.multiply(acc)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn multiply(&mut self, acc: MPoly) -> Result<MPoly, ParseError> {
        let start = self.pos;
        let rhs = self.factor()?;
        if acc.degree() + rhs.degree() > MAX_DEGREE {
            self.pos = start;
            return Err(self.error(format!("degree exceeds {MAX_DEGREE}")));
        }
        Ok(acc.mul(&rhs, self.field))
    }

    fn factor(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let e = self.integer_u64()?;
        if base.degree().saturating_mul(e) > MAX_DEGREE {
            self.pos = start;
            return Err(self.error(format!("degree exceeds {MAX_DEGREE}")));
        }
        let f = self.field;
        let mut out = MPoly::constant(f.one(), base.nvars);
        let mut b = base;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&b, f);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b, f);
            }
        }
        Ok(out)
    }

    fn integer_u64(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer".into()));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        digits.parse().map_err(|_| ParseError { offset: self.base + start, message: "integer too large".into() })
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        let f = self.field;
        let n = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                // reduce digit by digit so arbitrarily long literals are fine
                let p = f.characteristic();
                let mut r = 0u64;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    r = ((r as u128 * 10 + (self.src[self.pos] - b'0') as u128) % p as u128) as u64;
                    self.pos += 1;
                }
                Ok(MPoly::constant(f.from_u64(r), n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let ch = c as char;
                if let Some(i) = self.vars.iter().position(|&v| v == ch) {
                    self.pos += 1;
                    return Ok(MPoly::var(i, f, n));
                }
                if ch == 't' {
                    return match f.generator() {
                        Some(g) => {
                            self.pos += 1;
                            Ok(MPoly::constant(g, n))
                        }
                        None => Err(self.error(format!("{f} is a prime field and has no generator t"))),
                    };
                }
                Err(self.error(format!("unknown symbol {ch:?}")))
            }
            Some(c) => Err(self.error(format!("unexpected {:?}", c as char))),
            None => Err(self.error("unexpected end of expression".into())),
        }
    }
}
