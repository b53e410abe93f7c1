//! Curve models, validity diagnostics, genus formulas and exact point counts.
//!
//! Three families are supported:
//!
//! * hyperelliptic `y^2 = h(x)` in odd characteristic;
//! * superelliptic `y^m = Π (x - b_i)^{a_i}` with every branch exponent prime to `m`
//!   (the point at infinity is a branch point when `m ∤ Σ a_i`, and then its
//!   exponent `-Σ a_i mod m` must be prime to `m` as well);
//! * additive covers `A(y) = h(x)` with `A` an additive polynomial, which covers
//!   Artin–Schreier and Hermitian curves.
//!
//! Points are counted over `F_{q^s}` by mapping the model into a tabulated copy of
//! `F_{p^{ks}}` through an explicit embedding of the base field.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{ArithError, Embedding, Field, FieldElement, Poly, TableField};
use crate::budget;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticModel {
    pub field: Field,
    pub h: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperellipticModel {
    pub field: Field,
    pub m: u32,
    pub branch_points: Vec<FieldElement>,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveCoverModel {
    pub field: Field,
    /// Additive polynomial in `y`: only monomials `y^{p^j}`.
    pub additive: Poly,
    pub h: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveModel {
    Hyperelliptic(HyperellipticModel),
    Superelliptic(SuperellipticModel),
    AdditiveCover(AdditiveCoverModel),
}

/// A violated model invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    CharacteristicTwo,
    SeparabilityViolation,
    GenusZero,
    DegreeTooSmall { degree: Option<usize> },
    DegreeDividesByP { degree: usize },
    MDivisibleByP { m: u32 },
    MTooSmall { m: u32 },
    LengthMismatch { points: usize, exponents: usize },
    ExponentOutOfRange { index: usize, exponent: u32 },
    GcdRestriction { index: Option<usize>, exponent: u32 },
    DuplicateBranchPoint { index: usize },
    TooFewBranchPoints { count: usize },
    NotAdditive { degree: usize },
    InseparableAdditive,
    TrivialAdditive,
    AdditiveTooLarge { degree: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            CharacteristicTwo => write!(f, "hyperelliptic models need odd characteristic"),
            SeparabilityViolation => write!(f, "h is not separable (gcd(h, h') != 1)"),
            GenusZero => write!(f, "model has genus zero"),
            DegreeTooSmall { degree } => write!(f, "degree {degree:?} too small for positive genus"),
            DegreeDividesByP { degree } => write!(f, "deg h = {degree} is divisible by p"),
            MDivisibleByP { m } => write!(f, "cover degree {m} is divisible by p"),
            MTooSmall { m } => write!(f, "cover degree {m} < 2"),
            LengthMismatch { points, exponents } => {
                write!(f, "{points} branch points but {exponents} exponents")
            }
            ExponentOutOfRange { index, exponent } => {
                write!(f, "exponent a_{} = {exponent} not in [1, m-1]", index + 1)
            }
            GcdRestriction { index: Some(i), exponent } => {
                write!(f, "gcd(m, a_{}) != 1 for a_{} = {exponent}", i + 1, i + 1)
            }
            GcdRestriction { index: None, exponent } => {
                write!(f, "gcd(m, a_inf) != 1 for the exponent {exponent} at infinity")
            }
            DuplicateBranchPoint { index } => write!(f, "branch point b_{} repeats", index + 1),
            TooFewBranchPoints { count } => write!(f, "only {count} branch points (need >= 3)"),
            NotAdditive { degree } => write!(f, "A has a non-additive monomial y^{degree}"),
            InseparableAdditive => write!(f, "A has no linear term"),
            TrivialAdditive => write!(f, "A must have degree p^e with e >= 1"),
            AdditiveTooLarge { degree } => write!(f, "deg A = {degree} exceeds q^6"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("invalid model: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidModel(Vec<Violation>),
    #[error("{what} = {value} exceeds the enumeration budget {limit}")]
    BudgetExceeded { what: &'static str, value: u128, limit: u64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl SuperellipticModel {
    /// Exponent of the branch point at infinity, `0` when infinity is unbranched.
    pub fn infinity_exponent(&self) -> u32 {
        let m = self.m as u64;
        let s: u64 = self.exponents.iter().map(|&a| a as u64).sum();
        ((m - s % m) % m) as u32
    }

    /// The full inertia type, with the exponent at infinity appended when nonzero.
    pub fn inertia_type(&self) -> Vec<u32> {
        let mut a = self.exponents.clone();
        let inf = self.infinity_exponent();
        if inf != 0 {
            a.push(inf);
        }
        a
    }

    /// `Π (x - b_i)^{a_i}`.
    pub fn defining_polynomial(&self) -> Poly {
        let f = &self.field;
        self.branch_points.iter().zip(&self.exponents).fold(Poly::constant(f.one()), |acc, (b, &a)| {
            let lin = Poly::from_coeffs(vec![f.neg(b), f.one()]);
            acc.mul(&lin.pow(a as u64, None, f), f)
        })
    }
}

impl AdditiveCoverModel {
    /// `(j, α_j)` for the monomials `α_j y^{p^j}`, or `None` if `A` is not additive.
    pub fn additive_terms(&self) -> Option<Vec<(u32, FieldElement)>> {
        let p = self.field.characteristic() as usize;
        let mut out = Vec::new();
        for (d, c) in self.additive.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut e = 0u32;
            let mut pe = 1usize;
            while pe < d {
                pe *= p;
                e += 1;
            }
            if pe != d {
                return None;
            }
            out.push((e, c.clone()));
        }
        Some(out)
    }

    /// `Q = deg A`.
    pub fn additive_degree(&self) -> usize {
        self.additive.degree().unwrap_or(0)
    }
}

impl CurveModel {
    pub fn field(&self) -> &Field {
        match self {
            CurveModel::Hyperelliptic(m) => &m.field,
            CurveModel::Superelliptic(m) => &m.field,
            CurveModel::AdditiveCover(m) => &m.field,
        }
    }

    /// Every violated invariant; empty when the model is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        match self {
            CurveModel::Hyperelliptic(model) => {
                let f = &model.field;
                if f.characteristic() == 2 {
                    out.push(Violation::CharacteristicTwo);
                }
                match model.h.degree() {
                    Some(d) if d >= 3 => {}
                    degree => out.push(Violation::DegreeTooSmall { degree }),
                }
                if !model.h.is_zero() && !model.h.is_separable(f) {
                    out.push(Violation::SeparabilityViolation);
                }
            }
            CurveModel::Superelliptic(model) => {
                let p = model.field.characteristic();
                let m = model.m;
                if m < 2 {
                    out.push(Violation::MTooSmall { m });
                    return out;
                }
                if (m as u64).is_multiple_of(p) {
                    out.push(Violation::MDivisibleByP { m });
                }
                if model.branch_points.len() != model.exponents.len() {
                    out.push(Violation::LengthMismatch {
                        points: model.branch_points.len(),
                        exponents: model.exponents.len(),
                    });
                }
                for (i, &a) in model.exponents.iter().enumerate() {
                    if a == 0 || a >= m {
                        out.push(Violation::ExponentOutOfRange { index: i, exponent: a });
                    } else if a.gcd(&m) != 1 {
                        out.push(Violation::GcdRestriction { index: Some(i), exponent: a });
                    }
                }
                for (i, b) in model.branch_points.iter().enumerate() {
                    if model.branch_points[..i].contains(b) {
                        out.push(Violation::DuplicateBranchPoint { index: i });
                    }
                }
                let inf = model.infinity_exponent();
                if inf != 0 && inf.gcd(&m) != 1 {
                    out.push(Violation::GcdRestriction { index: None, exponent: inf });
                }
                let count = model.branch_points.len() + usize::from(inf != 0);
                if count < 3 {
                    out.push(Violation::TooFewBranchPoints { count });
                }
            }
            CurveModel::AdditiveCover(model) => {
                let f = &model.field;
                let p = f.characteristic() as usize;
                match model.additive_terms() {
                    None => out.push(Violation::NotAdditive { degree: model.additive_degree() }),
                    Some(terms) => {
                        if !terms.iter().any(|(e, _)| *e == 0) {
                            out.push(Violation::InseparableAdditive);
                        }
                        if model.additive_degree() < p {
                            out.push(Violation::TrivialAdditive);
                        }
                    }
                }
                let limit = (f.order() as u128).pow(6);
                if model.additive_degree() as u128 > limit {
                    out.push(Violation::AdditiveTooLarge { degree: model.additive_degree() });
                }
                match model.h.degree() {
                    Some(d) if d >= 2 => {
                        if d % p == 0 {
                            out.push(Violation::DegreeDividesByP { degree: d });
                        }
                    }
                    degree => out.push(Violation::DegreeTooSmall { degree }),
                }
            }
        }
        out
    }

    fn ensure_valid(&self) -> Result<(), CurveError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(CurveError::InvalidModel(v))
        }
    }

    pub fn genus(&self) -> Result<u64, CurveError> {
        self.ensure_valid()?;
        Ok(match self {
            CurveModel::Hyperelliptic(model) => (model.h.degree().unwrap() as u64 - 1) / 2,
            CurveModel::Superelliptic(model) => superelliptic_genus(model.m, &model.inertia_type()),
            CurveModel::AdditiveCover(model) => {
                let q = model.additive_degree() as u64;
                let d = model.h.degree().unwrap() as u64;
                (q - 1) * (d - 1) / 2
            }
        })
    }

    /// `#C(F_{q^s})` for the smooth projective model.
    pub fn count_points(&self, s: u32) -> Result<u64, CurveError> {
        self.ensure_valid()?;
        let base = self.field();
        let limit = budget::enumeration_limit();
        let big = (base.order() as u128).checked_pow(s).unwrap_or(u128::MAX);
        if s == 0 || big > limit as u128 {
            return Err(CurveError::BudgetExceeded { what: "q^s", value: big, limit });
        }
        let ext = Field::new(base.characteristic(), base.degree() * s as usize)?;
        let emb = Embedding::new(base, &ext)?;
        let table = TableField::new(&ext)?;
        Ok(match self {
            CurveModel::Hyperelliptic(model) => count_hyperelliptic(model, &emb, &table),
            CurveModel::Superelliptic(model) => count_superelliptic(model, &emb, &table),
            CurveModel::AdditiveCover(model) => count_additive(model, &emb, &table),
        })
    }
}

/// `1 + ((N - 2) m - Σ gcd(a_i, m)) / 2` for a full inertia type (infinity included).
pub fn superelliptic_genus(m: u32, inertia: &[u32]) -> u64 {
    let n = inertia.len() as i64;
    let s: i64 = inertia.iter().map(|&a| a.gcd(&m) as i64).sum();
    (1 + ((n - 2) * m as i64 - s) / 2) as u64
}

fn poly_codes(poly: &Poly, emb: &Embedding, table: &TableField) -> Vec<u32> {
    poly.coeffs().iter().map(|c| table.index(&emb.map(c))).collect()
}

fn count_hyperelliptic(model: &HyperellipticModel, emb: &Embedding, t: &TableField) -> u64 {
    let h = poly_codes(&model.h, emb, t);
    let affine: u64 = (0..t.order())
        .map(|x| match t.eval(&h, x) {
            0 => 1,
            v if t.is_square(v) => 2,
            _ => 0,
        })
        .sum();
    let deg = h.len() - 1;
    let infinity = if deg % 2 == 1 {
        1
    } else if t.is_square(h[deg]) {
        2
    } else {
        0
    };
    affine + infinity
}

fn count_superelliptic(model: &SuperellipticModel, emb: &Embedding, t: &TableField) -> u64 {
    let group = t.order() as u64 - 1;
    let d = (model.m as u64).gcd(&group);
    let branch: Vec<u32> = model.branch_points.iter().map(|b| t.index(&emb.map(b))).collect();
    let mut affine = 0u64;
    for x in 0..t.order() {
        if branch.contains(&x) {
            continue;
        }
        let log: u64 = branch
            .iter()
            .zip(&model.exponents)
            .map(|(&b, &a)| t.log(t.sub(x, b)).unwrap() as u64 * a as u64 % group)
            .sum::<u64>()
            % group.max(1);
        if log.is_multiple_of(d) {
            affine += d;
        }
    }
    let infinity = if model.infinity_exponent() == 0 { d } else { 1 };
    affine + branch.len() as u64 + infinity
}

fn count_additive(model: &AdditiveCoverModel, emb: &Embedding, t: &TableField) -> u64 {
    let p = t.field().characteristic() as u32;
    let dim = t.field().degree();
    let terms: Vec<(u32, u32)> =
        model.additive_terms().expect("validated").into_iter().map(|(e, c)| (e, t.index(&emb.map(&c)))).collect();
    let apply = |y: u32| terms.iter().fold(0, |acc, &(e, c)| t.add(acc, t.mul(c, t.frobenius(y, e))));
    // Image of the F_p-linear map A, spanned by the images of the basis p^i.
    let mut echelon: Vec<Vec<u32>> = Vec::new();
    let digits = |mut v: u32| -> Vec<u32> {
        (0..dim)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    };
    let mut place = 1u32;
    for _ in 0..dim {
        let mut row = digits(apply(place));
        reduce_row(&mut row, &echelon, p);
        if let Some(pivot) = row.iter().position(|&c| c != 0) {
            let inv = crate::arith::inv_mod(row[pivot] as u64, p as u64) as u32;
            for c in row.iter_mut() {
                *c = (*c as u64 * inv as u64 % p as u64) as u32;
            }
            echelon.push(row);
        }
        place = place.wrapping_mul(p);
    }
    let rank = echelon.len();
    let kernel = (p as u64).pow((dim - rank) as u32);
    let mut in_image = vec![false; t.order() as usize];
    let basis: Vec<u32> = echelon.iter().map(|row| row.iter().rev().fold(0u32, |acc, &c| acc * p + c)).collect();
    let mut span = vec![0u32];
    for &b in &basis {
        let mut next = Vec::with_capacity(span.len() * p as usize);
        for &v in &span {
            let mut w = v;
            for _ in 0..p {
                next.push(w);
                w = t.add(w, b);
            }
        }
        span = next;
    }
    for v in span {
        in_image[v as usize] = true;
    }
    let h = poly_codes(&model.h, emb, t);
    let affine: u64 = (0..t.order()).filter(|&x| in_image[t.eval(&h, x) as usize]).count() as u64 * kernel;
    affine + 1
}

fn reduce_row(row: &mut [u32], echelon: &[Vec<u32>], p: u32) {
    for e in echelon {
        let pivot = e.iter().position(|&c| c != 0).unwrap();
        let c = row[pivot];
        if c != 0 {
            for (r, &x) in row.iter_mut().zip(e) {
                *r = ((*r as u64 + (p - c) as u64 * x as u64) % p as u64) as u32;
            }
        }
    }
}
