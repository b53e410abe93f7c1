//! L-polynomials from point counts and their Newton polygons.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::budget;
use crate::curves::{CurveError, CurveModel};
use crate::polygon::{ceil_div, NewtonPolygon, Slope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("q^g = {value} exceeds the enumeration budget {limit}")]
    BudgetExceeded { value: u128, limit: u64 },
    #[error("Newton's identity at s = {s} is not divisible by s")]
    NonIntegralCoefficient { s: usize },
    #[error("N_{s} = {count} violates the Weil bound")]
    WeilBoundViolation { s: usize, count: u64 },
}

/// `L(T) = Σ c_i T^i` of degree `2g`, normalised so that `c_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    coeffs: Vec<BigInt>,
    q: u64,
    genus: usize,
}

impl LPolynomial {
    /// Builds `L` from `N_1..N_g`, completing the upper half with the functional
    /// equation.
    pub fn from_counts(q: u64, counts: &[u64]) -> Result<Self, ZetaError> {
        let g = counts.len();
        let qb = BigInt::from(q);
        for (i, &n) in counts.iter().enumerate() {
            let s = i + 1;
            let qs = qb.pow(s as u32);
            let dev = BigInt::from(n) - &qs - 1;
            if &dev * &dev > BigInt::from(4 * g * g) * &qs {
                return Err(ZetaError::WeilBoundViolation { s, count: n });
            }
        }
        let power_sums: Vec<BigInt> =
            counts.iter().enumerate().map(|(i, &n)| qb.pow(i as u32 + 1) + 1 - BigInt::from(n)).collect();
        let mut c = vec![BigInt::one()];
        for s in 1..=g {
            let mut acc = BigInt::zero();
            for i in 1..=s {
                acc -= &power_sums[i - 1] * &c[s - i];
            }
            let (quot, rem) = acc.div_rem(&BigInt::from(s));
            if !rem.is_zero() {
                return Err(ZetaError::NonIntegralCoefficient { s });
            }
            c.push(quot);
        }
        for i in (0..g).rev() {
            let v = qb.pow((g - i) as u32) * &c[i];
            c.push(v);
        }
        Ok(Self { coeffs: c, q, genus: g })
    }

    /// Coefficients `c_0..c_{2g}`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `P(T) = T^{2g} L(1/T)` coefficient of `T^{2g-j}`, i.e. `c_j`.
    pub fn charpoly_coefficient(&self, j: usize) -> &BigInt {
        &self.coeffs[j]
    }

    /// `#C(F_{q^s})` for `s = 1..=n`, read off `L` by Newton's identities.
    pub fn predicted_counts(&self, n: usize) -> Vec<BigInt> {
        let qb = BigInt::from(self.q);
        let c = |i: usize| self.coeffs.get(i).cloned().unwrap_or_default();
        let mut sums: Vec<BigInt> = Vec::with_capacity(n);
        for s in 1..=n {
            let mut v = -c(s) * BigInt::from(s);
            for i in 1..s {
                v -= c(i) * &sums[s - i - 1];
            }
            sums.push(v);
        }
        sums.iter().enumerate().map(|(i, ps)| qb.pow(i as u32 + 1) + 1 - ps).collect()
    }
}

impl fmt::Display for LPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    write!(f, "T")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Counts `N_1..N_g` (concurrently) and assembles the L-polynomial.
pub fn l_polynomial(model: &CurveModel) -> Result<LPolynomial, ZetaError> {
    let g = model.genus()? as usize;
    let q = model.field().order();
    let limit = budget::enumeration_limit();
    let top = (q as u128).checked_pow(g as u32).unwrap_or(u128::MAX);
    if top > limit as u128 {
        return Err(ZetaError::BudgetExceeded { value: top, limit });
    }
    let counts: Vec<u64> = (1..=g as u32).into_par_iter().map(|s| model.count_points(s)).collect::<Result<_, _>>()?;
    LPolynomial::from_counts(q, &counts)
}

/// `v_p(n)`, `None` for zero.
pub fn valuation(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = n.div_rem(&pb);
        if !rem.is_zero() {
            return Some(v);
        }
        n = quot;
        v += 1;
    }
}

fn characteristic(q: u64) -> u64 {
    (2..=q).find(|d| q.is_multiple_of(*d)).unwrap_or(q)
}

/// Lower convex hull of `(i, v_p(c_i)/r)`, where `q = p^r`.
pub fn newton_polygon(l: &LPolynomial, r: u32) -> NewtonPolygon {
    let p = characteristic(l.q);
    let points: Vec<(usize, Slope)> = l
        .coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| valuation(c, p).map(|v| (i, Slope::new(v as i64, r as i64))))
        .collect();
    NewtonPolygon::lower_hull(&points).expect("hull of an L-polynomial is a valid polygon")
}

pub fn p_rank_from_np(np: &NewtonPolygon) -> usize {
    np.p_rank()
}

/// `p^{⌈jr/2⌉} | a_j` for `1 ≤ j ≤ g`.
pub fn is_supersingular_manin(l: &LPolynomial, r: u32) -> bool {
    let p = characteristic(l.q);
    (1..=l.genus).all(|j| {
        let need = ceil_div(j as i64 * r as i64, 2) as u64;
        valuation(l.charpoly_coefficient(j), p).is_none_or(|v| v >= need)
    })
}

/// `c_i` as `i64` when it fits; convenience for tests and display.
pub fn coeffs_i64(l: &LPolynomial) -> Option<Vec<i64>> {
    l.coeffs.iter().map(ToPrimitive::to_i64).collect()
}
