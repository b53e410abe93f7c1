//! Exact arithmetic in prime fields, explicit extension fields and univariate
//! polynomials over them.

mod field;
mod poly;
mod table;

pub(crate) use field::inv_mod;
pub use field::{is_prime, Embedding, Field, FieldElement, MAX_FIELD_ORDER};
pub use poly::{Poly, GCD_CROSS_CHECK_DEGREE};
pub use table::TableField;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    InvalidDegree,
    #[error("modulus is not monic irreducible over the prime field")]
    InvalidModulus,
    #[error("{what} exceeds the budget of {limit}")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("the zero polynomial has no finite root count")]
    ZeroPolynomial,
    #[error("no embedding of {from} into {to}")]
    NoEmbedding { from: String, to: String },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// Builds `F_{p^k}`; see [`Field::new`].
pub fn field_make(p: u64, k: usize) -> Result<Field, ArithError> {
    Field::new(p, k)
}

/// `x^{p^e}`.
pub fn frobenius(field: &Field, x: &FieldElement, e: u32) -> FieldElement {
    field.frobenius(x, e)
}

pub fn poly_pow(field: &Field, h: &Poly, e: u64, dmax: Option<usize>) -> Poly {
    h.pow(e, dmax, field)
}

pub fn poly_root_count(f: &Poly, field: &Field) -> Result<usize, ArithError> {
    f.root_count(field)
}

#[cfg(test)]
mod tests;
