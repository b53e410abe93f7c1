//! p-torsion invariants of curves over small finite fields: Cartier–Manin
//! matrices, point counts and L-polynomials, Newton polygons, Ekedahl–Oort
//! combinatorics, and the numerology of cyclic covers of the projective line.

pub mod arith;
pub mod budget;
pub mod cartier;
pub mod curves;
pub mod cyclic;
pub mod families;
pub mod polygon;
pub mod strata;
pub mod zeta;
