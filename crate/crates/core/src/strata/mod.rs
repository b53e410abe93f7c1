//! Newton polygon strata and Ekedahl–Oort types of principally polarized abelian
//! varieties.

mod eo;

use std::cmp::Ordering;

use thiserror::Error;

use crate::polygon::{self, NewtonPolygon, PolygonError, Slope};

pub use eo::{eo_add_ordinary, eo_enumerate, eo_invariants, eo_label, EoInvariants, EoType, YoungType, MAX_EO_GENUS};

/// A symmetric polygon of even length `2g` with no curve attached.
pub type SymmetricNp = NewtonPolygon;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },
    #[error("enumerating 2^{g} types exceeds the budget (g <= {limit})")]
    BudgetExceeded { g: usize, limit: usize },
    #[error("invalid Ekedahl-Oort type {0:?}")]
    InvalidEo(Vec<u32>),
    #[error("invalid Young type {0:?} for genus {1}")]
    InvalidYoung(Vec<u32>, usize),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

/// Position of `ξ1` relative to `ξ2`; `Below` means `ξ1 ≤ ξ2`, i.e. `ξ1` lies on or
/// above `ξ2` as a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NpOrder {
    Equal,
    Below,
    Above,
    Incomparable,
}

impl NpOrder {
    pub fn as_str(self) -> &'static str {
        match self {
            NpOrder::Equal => "equal",
            NpOrder::Below => "below",
            NpOrder::Above => "above",
            NpOrder::Incomparable => "incomparable",
        }
    }
}

pub fn np_compare(a: &SymmetricNp, b: &SymmetricNp) -> Result<NpOrder, StrataError> {
    if a.genus() != b.genus() {
        return Err(StrataError::GenusMismatch { left: a.genus(), right: b.genus() });
    }
    Ok(match polygon::compare(a, b) {
        Some(Ordering::Equal) => NpOrder::Equal,
        Some(Ordering::Less) => NpOrder::Below,
        Some(Ordering::Greater) => NpOrder::Above,
        None => NpOrder::Incomparable,
    })
}

/// `#{(x, y) ∈ Z² : 1 ≤ x ≤ g, 0 ≤ y < x, y ≥ ξ(x)}`.
pub fn sdim(xi: &SymmetricNp) -> usize {
    let g = xi.genus();
    (1..=g)
        .map(|x| {
            let h = xi.height(x);
            (0..x).filter(|&y| Slope::from_integer(y as i64) >= h).count()
        })
        .sum()
}

/// `⌊g²/4⌋`.
pub fn ss_locus_dim(g: usize) -> usize {
    let d = g * g / 4;
    debug_assert_eq!(d, sdim(&NewtonPolygon::supersingular(g)));
    d
}

/// `ξ ⊕ ord^e`.
pub fn np_add_ordinary(xi: &SymmetricNp, e: usize) -> SymmetricNp {
    if e == 0 {
        return xi.clone();
    }
    xi.direct_sum(&NewtonPolygon::ordinary(e))
}

/// All symmetric polygons of genus `g`, sorted from ordinary downwards by
/// decreasing `sdim`, ties broken by display string.
pub fn symmetric_nps(g: usize) -> Vec<SymmetricNp> {
    // Each block contributes `b` to the genus: ord and ss contribute 1, a pair
    // (a/b, (b-a)/b) with a < b/2 contributes b.
    let mut blocks: Vec<(Slope, usize)> = vec![(Slope::from_integer(0), 1), (Slope::new(1, 2), 1)];
    for b in 3..=g as i64 {
        for a in 1..b {
            if 2 * a < b && num_integer::gcd(a, b) == 1 {
                blocks.push((Slope::new(a, b), b as usize));
            }
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        blocks: &[(Slope, usize)],
        start: usize,
        left: usize,
        chosen: &mut Vec<(Slope, usize)>,
        out: &mut Vec<SymmetricNp>,
    ) {
        if left == 0 {
            let mut segs = Vec::new();
            for &(s, b) in chosen.iter() {
                if s == Slope::new(1, 2) {
                    segs.push((s, 2));
                } else {
                    segs.push((s, b));
                    segs.push((Slope::from_integer(1) - s, b));
                }
            }
            out.push(NewtonPolygon::symmetric(segs).expect("block sums are symmetric"));
            return;
        }
        for i in start..blocks.len() {
            if blocks[i].1 <= left {
                chosen.push(blocks[i]);
                rec(blocks, i, left - blocks[i].1, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(&blocks, 0, g, &mut chosen, &mut out);
    out.sort_by(|a, b| sdim(b).cmp(&sdim(a)).then_with(|| a.to_string().cmp(&b.to_string())));
    out
}

/// Whether `A_g[ξ]` has codimension larger than `dim M_g` in `A_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnlikelyReport {
    pub g: usize,
    pub dim_ag: usize,
    pub dim_mg: usize,
    pub codim: usize,
    pub unlikely: bool,
}

pub fn unlikely_audit(g: usize, xi: &SymmetricNp) -> Result<UnlikelyReport, StrataError> {
    if xi.genus() != g {
        return Err(StrataError::GenusMismatch { left: g, right: xi.genus() });
    }
    let dim_ag = g * (g + 1) / 2;
    let dim_mg = if g >= 2 { 3 * g - 3 } else { g };
    let codim = dim_ag - sdim(xi);
    Ok(UnlikelyReport { g, dim_ag, dim_mg, codim, unlikely: codim > dim_mg })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn np(s: &str) -> SymmetricNp {
        s.parse().unwrap()
    }

    #[test]
    fn sdim_examples() {
        assert_eq!(sdim(&np("(1/4,3/4)")), 6);
        assert_eq!(sdim(&np("(2/5,3/5)")), 7);
        for g in 1..=8 {
            assert_eq!(sdim(&NewtonPolygon::ordinary(g)), g * (g + 1) / 2);
            assert_eq!(sdim(&NewtonPolygon::supersingular(g)), g * g / 4);
        }
        assert_eq!(ss_locus_dim(4), 4);
        assert_eq!(ss_locus_dim(1), 0);
        assert_eq!(ss_locus_dim(9), 20);
    }

    #[test]
    fn compare_examples() {
        let ord = NewtonPolygon::ordinary(3);
        let ss = NewtonPolygon::supersingular(3);
        assert_eq!(np_compare(&ss, &ord).unwrap(), NpOrder::Below);
        assert_eq!(np_compare(&ord, &ss).unwrap(), NpOrder::Above);
        assert_eq!(np_compare(&ord, &ord).unwrap(), NpOrder::Equal);
        assert_eq!(np_compare(&np("(1/4,3/4)"), &np("ord+ss^3")).unwrap(), NpOrder::Incomparable);
        assert!(matches!(np_compare(&ord, &NewtonPolygon::ordinary(2)), Err(StrataError::GenusMismatch { .. })));
    }

    #[test]
    fn add_ordinary() {
        assert_eq!(np_add_ordinary(&NewtonPolygon::supersingular(1), 1), np("ord+ss"));
        assert_eq!(np_add_ordinary(&np("(1/3,2/3)"), 0), np("(1/3,2/3)"));
    }

    #[test]
    fn unlikely_examples() {
        let r = unlikely_audit(9, &NewtonPolygon::supersingular(9)).unwrap();
        assert_eq!((r.dim_ag, r.dim_mg, r.codim, r.unlikely), (45, 24, 25, true));
        let r = unlikely_audit(4, &NewtonPolygon::supersingular(4)).unwrap();
        assert_eq!((r.codim, r.unlikely), (6, false));
        let r = unlikely_audit(5, &NewtonPolygon::ordinary(5)).unwrap();
        assert_eq!((r.codim, r.unlikely), (0, false));
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=6).map(|g| symmetric_nps(g).len()).collect();
        assert_eq!(counts, vec![2, 3, 5, 8, 13, 20]);
        assert_eq!(symmetric_nps(3)[0], NewtonPolygon::ordinary(3));
    }

    #[test]
    fn partial_order_axioms() {
        for g in 1..=4 {
            let all = symmetric_nps(g);
            for a in &all {
                assert_eq!(np_compare(a, a).unwrap(), NpOrder::Equal);
                for b in &all {
                    let ab = np_compare(a, b).unwrap();
                    if a != b {
                        assert_ne!(ab, NpOrder::Equal, "antisymmetry {a} {b}");
                    }
                    for c in &all {
                        if ab == NpOrder::Below && np_compare(b, c).unwrap() == NpOrder::Below {
                            assert_eq!(np_compare(a, c).unwrap(), NpOrder::Below);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn chains_bounded_by_dimension() {
        for g in 1..=4 {
            let all = symmetric_nps(g);
            let ord = NewtonPolygon::ordinary(g);
            // longest strict chain from each polygon up to ord, by memoised search
            let mut longest = vec![None; all.len()];
            fn chain(i: usize, all: &[SymmetricNp], memo: &mut Vec<Option<usize>>) -> usize {
                if let Some(v) = memo[i] {
                    return v;
                }
                let v = (0..all.len())
                    .filter(|&j| np_compare(&all[i], &all[j]).unwrap() == NpOrder::Below)
                    .map(|j| 1 + chain(j, all, memo))
                    .max()
                    .unwrap_or(0);
                memo[i] = Some(v);
                v
            }
            for (i, xi) in all.iter().enumerate() {
                let len = chain(i, &all, &mut longest);
                assert!(sdim(&ord) - sdim(xi) >= len, "g={g} {xi}");
            }
        }
    }
}
