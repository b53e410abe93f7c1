//! Curve specifications: `kind;field;body`.
//!
//! ```text
//! spec  := kind ';' field ';' body
//! kind  := "hyp" | "sup" | "add"
//! field := 'F' p ['^' k]
//! hyp   := 'h=' poly(x)
//! sup   := 'm=' int ';a=' int,... ';b=' elem,...
//! add   := 'A=' poly(y) ';h=' poly(x)
//! ```
//!
//! Whitespace is ignored; `t` is the generator of `F_{p^k}`.

use std::fmt;

use ptl_core::arith::Field;
use ptl_core::curves::{AdditiveCoverModel, CurveModel, HyperellipticModel, SuperellipticModel};
use ptl_core::families::HyperellipticFamily;
use thiserror::Error;

use crate::expr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset into the original text.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)
    }
}

/// A `;`-separated section with its byte offset.
#[derive(Clone, Copy)]
struct Section<'a> {
    text: &'a str,
    offset: usize,
}

impl<'a> Section<'a> {
    fn trimmed(self) -> Self {
        let lead = self.text.len() - self.text.trim_start().len();
        Section { text: self.text.trim(), offset: self.offset + lead }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { offset: self.offset, message: message.into() }
    }

    /// Value of `key=value`, whitespace around `=` allowed.
    fn value(self, key: &str) -> Result<Section<'a>, ParseError> {
        let s = self.trimmed();
        let Some((k, v)) = s.text.split_once('=') else {
            return Err(s.err(format!("expected {key}=...")));
        };
        if k.trim() != key {
            return Err(s.err(format!("expected {key}=..., found {:?}", k.trim())));
        }
        Ok(Section { text: v, offset: s.offset + k.len() + 1 })
    }
}

fn sections(text: &str) -> Vec<Section<'_>> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == ';' {
            out.push(Section { text: &text[start..i], offset: start });
            start = i + 1;
        }
    }
    out.push(Section { text: &text[start..], offset: start });
    out
}

fn parse_uint(s: Section<'_>) -> Result<u64, ParseError> {
    let t = s.trimmed();
    let compact: String = t.text.chars().filter(|c| !c.is_whitespace()).collect();
    compact.parse().map_err(|_| t.err(format!("expected a nonnegative integer, found {:?}", t.text)))
}

/// `F p` or `F p^k`.
pub fn parse_field(text: &str, offset: usize) -> Result<Field, ParseError> {
    let s = Section { text, offset }.trimmed();
    let Some(rest) = s.text.strip_prefix('F') else {
        return Err(s.err("field must look like F<p> or F<p>^<k>"));
    };
    let rest_section = Section { text: rest, offset: s.offset + 1 };
    let (p, k) = match rest.split_once('^') {
        Some((p, k)) => {
            let k_offset = s.offset + 1 + p.len() + 1;
            (parse_uint(Section { text: p, offset: s.offset + 1 })?, parse_uint(Section { text: k, offset: k_offset })?)
        }
        None => (parse_uint(rest_section)?, 1),
    };
    if k == 0 {
        return Err(s.err("extension degree must be positive"));
    }
    Field::new(p, k as usize).map_err(|e| s.err(e.to_string()))
}

fn header(text: &str) -> Result<(&str, Field, Vec<Section<'_>>), ParseError> {
    let parts = sections(text);
    if parts.len() < 3 {
        return Err(ParseError { offset: text.len(), message: "expected kind;field;body".into() });
    }
    let kind = parts[0].trimmed();
    let field = parse_field(parts[1].text, parts[1].offset)?;
    Ok((kind.text, field, parts))
}

/// Parses a curve specification into a model; model validity is not checked here.
pub fn parse_curve_spec(text: &str) -> Result<CurveModel, ParseError> {
    let (kind, field, parts) = header(text)?;
    let expect = |n: usize| -> Result<(), ParseError> {
        if parts.len() != n {
            let s = parts.get(n).copied().unwrap_or(parts[parts.len() - 1]);
            return Err(s.err(format!("{kind} specs have {n} ';'-separated sections, found {}", parts.len())));
        }
        Ok(())
    };
    match kind {
        "hyp" => {
            expect(3)?;
            let body = parts[2].value("h")?;
            let h = expr::parse(body.text, body.offset, &['x'], &field)?.to_poly(0).unwrap();
            Ok(CurveModel::Hyperelliptic(HyperellipticModel { field, h }))
        }
        "sup" => {
            expect(5)?;
            let m = parts[2].value("m")?;
            let m_val = parse_uint(m)?;
            if m_val > u32::MAX as u64 {
                return Err(m.err("m is too large"));
            }
            let a = parts[3].value("a")?;
            let mut exponents = Vec::new();
            for item in sections_by(a, ',') {
                let v = parse_uint(item)?;
                if v > u32::MAX as u64 {
                    return Err(item.err("exponent is too large"));
                }
                exponents.push(v as u32);
            }
            let b = parts[4].value("b")?;
            let mut branch_points = Vec::new();
            for item in sections_by(b, ',') {
                let e = expr::parse(item.text, item.offset, &[], &field)?;
                branch_points.push(e.as_constant().unwrap());
            }
            Ok(CurveModel::Superelliptic(SuperellipticModel { field, m: m_val as u32, branch_points, exponents }))
        }
        "add" => {
            expect(4)?;
            let a = parts[2].value("A")?;
            let additive = expr::parse(a.text, a.offset, &['y'], &field)?.to_poly(0).unwrap();
            let h = parts[3].value("h")?;
            let h = expr::parse(h.text, h.offset, &['x'], &field)?.to_poly(0).unwrap();
            Ok(CurveModel::AdditiveCover(AdditiveCoverModel { field, additive, h }))
        }
        other => Err(parts[0].trimmed().err(format!("unknown curve kind {other:?} (expected hyp, sup or add)"))),
    }
}

fn sections_by(s: Section<'_>, sep: char) -> Vec<Section<'_>> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.text.char_indices() {
        if c == sep {
            out.push(Section { text: &s.text[start..i], offset: s.offset + start });
            start = i + 1;
        }
    }
    out.push(Section { text: &s.text[start..], offset: s.offset + start });
    out
}

/// `hyp;field;h=poly(x, u)`: a one-parameter hyperelliptic family in `u`.
pub fn parse_family_spec(text: &str) -> Result<HyperellipticFamily, ParseError> {
    let (kind, field, parts) = header(text)?;
    if kind != "hyp" {
        return Err(parts[0].trimmed().err("only hyp families can be scanned"));
    }
    if parts.len() != 3 {
        return Err(parts[parts.len() - 1].err("hyp specs have 3 ';'-separated sections"));
    }
    let body = parts[2].value("h")?;
    let poly = expr::parse(body.text, body.offset, &['x', 'u'], &field)?;
    let coeffs = poly.split(0, 1).unwrap();
    Ok(HyperellipticFamily { field, coeffs })
}

/// Comma-separated nonnegative integers.
pub fn parse_int_list(text: &str) -> Result<Vec<u32>, ParseError> {
    sections_by(Section { text, offset: 0 }, ',')
        .into_iter()
        .map(|s| {
            let v = parse_uint(s)?;
            u32::try_from(v).map_err(|_| s.err("value is too large"))
        })
        .collect()
}
