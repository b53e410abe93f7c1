//! Newton polygons as multisets of exact rational slopes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Slope = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("slope {0} outside [0, 1]")]
    SlopeOutOfRange(Slope),
    #[error("slope {slope} has multiplicity {mult}, not a multiple of its denominator")]
    NonIntegralBreakpoint { slope: Slope, mult: usize },
    #[error("not symmetric: slope {0} and its complement have different multiplicities")]
    NotSymmetric(Slope),
    #[error("empty polygon")]
    Empty,
    #[error("cannot parse polygon {0:?}")]
    Parse(String),
}

/// Lower convex polygon stored as `(slope, multiplicity)` pairs with distinct slopes,
/// ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NewtonPolygon {
    segments: Vec<(Slope, usize)>,
}

impl NewtonPolygon {
    /// Merges and sorts the given slopes; zero multiplicities are dropped. No
    /// symmetry requirement.
    pub fn from_segments(segments: impl IntoIterator<Item = (Slope, usize)>) -> Result<Self, PolygonError> {
        let mut segs: Vec<(Slope, usize)> = Vec::new();
        for (s, m) in segments {
            if m == 0 {
                continue;
            }
            if s < Slope::zero() || s > Slope::one() {
                return Err(PolygonError::SlopeOutOfRange(s));
            }
            match segs.iter_mut().find(|(t, _)| *t == s) {
                Some((_, n)) => *n += m,
                None => segs.push((s, m)),
            }
        }
        segs.sort();
        for &(s, m) in &segs {
            if m % *s.denom() as usize != 0 {
                return Err(PolygonError::NonIntegralBreakpoint { slope: s, mult: m });
            }
        }
        Ok(Self { segments: segs })
    }

    /// A polygon that must be symmetric (`mult(λ) = mult(1-λ)`), as for an abelian
    /// variety.
    pub fn symmetric(segments: impl IntoIterator<Item = (Slope, usize)>) -> Result<Self, PolygonError> {
        let np = Self::from_segments(segments)?;
        if np.segments.is_empty() {
            return Err(PolygonError::Empty);
        }
        for &(s, m) in &np.segments {
            if np.multiplicity(Slope::one() - s) != m {
                return Err(PolygonError::NotSymmetric(s));
            }
        }
        Ok(np)
    }

    pub fn ordinary(g: usize) -> Self {
        Self::symmetric([(Slope::zero(), g), (Slope::one(), g)]).unwrap()
    }

    pub fn supersingular(g: usize) -> Self {
        Self::symmetric([(Slope::new(1, 2), 2 * g)]).unwrap()
    }

    pub fn segments(&self) -> &[(Slope, usize)] {
        &self.segments
    }

    /// Total length `Σ mult` (= 2g for abelian varieties).
    pub fn length(&self) -> usize {
        self.segments.iter().map(|&(_, m)| m).sum()
    }

    /// Half the length.
    pub fn genus(&self) -> usize {
        self.length() / 2
    }

    pub fn multiplicity(&self, s: Slope) -> usize {
        self.segments.iter().find(|(t, _)| *t == s).map_or(0, |&(_, m)| m)
    }

    /// Slope-0 multiplicity.
    pub fn p_rank(&self) -> usize {
        self.multiplicity(Slope::zero())
    }

    pub fn is_supersingular(&self) -> bool {
        self.segments.len() == 1 && self.segments[0].0 == Slope::new(1, 2)
    }

    /// Height of the polygon at abscissa `x` (0 ≤ x ≤ length).
    pub fn height(&self, x: usize) -> Slope {
        let mut remaining = x as i64;
        let mut y = Slope::zero();
        for &(s, m) in &self.segments {
            let step = remaining.min(m as i64);
            y += s * step;
            remaining -= step;
            if remaining == 0 {
                break;
            }
        }
        y
    }

    /// Terminal point `(length, height(length))`.
    pub fn end_height(&self) -> Slope {
        self.height(self.length())
    }

    /// Integral vertices where the slope changes, including both endpoints.
    pub fn breakpoints(&self) -> Vec<(usize, Slope)> {
        let mut out = vec![(0, Slope::zero())];
        let mut x = 0;
        for &(_, m) in &self.segments {
            x += m;
            out.push((x, self.height(x)));
        }
        out
    }

    /// `self ⊕ other`: union of slope multisets.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_segments(self.segments.iter().chain(&other.segments).copied()).unwrap()
    }

    /// Flattened slope list, ascending, each slope repeated by multiplicity.
    pub fn slope_list(&self) -> Vec<Slope> {
        self.segments.iter().flat_map(|&(s, m)| std::iter::repeat_n(s, m)).collect()
    }

    /// Lower convex hull of the points `(x, y)`; points may be missing (infinite y).
    pub fn lower_hull(points: &[(usize, Slope)]) -> Result<Self, PolygonError> {
        let mut hull: Vec<(usize, Slope)> = Vec::new();
        for &pt in points {
            while hull.len() >= 2 {
                let (x1, y1) = hull[hull.len() - 2];
                let (x2, y2) = hull[hull.len() - 1];
                // drop the middle point if it lies on or above the chord
                let lhs = (y2 - y1) * (pt.0 as i64 - x1 as i64);
                let rhs = (pt.1 - y1) * (x2 as i64 - x1 as i64);
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let segments = hull.windows(2).map(|w| {
            let dx = w[1].0 - w[0].0;
            ((w[1].1 - w[0].1) / dx as i64, dx)
        });
        Self::from_segments(segments)
    }
}

/// Partial order on polygons with common endpoints: `a ≤ b` when `a` lies on or
/// above `b` (supersingular ≤ ordinary).
pub fn compare(a: &NewtonPolygon, b: &NewtonPolygon) -> Option<Ordering> {
    if a.length() != b.length() || a.end_height() != b.end_height() {
        return None;
    }
    let (mut above, mut below) = (false, false);
    for x in 0..=a.length() {
        match a.height(x).cmp(&b.height(x)) {
            Ordering::Greater => above = true,
            Ordering::Less => below = true,
            Ordering::Equal => {}
        }
    }
    match (above, below) {
        (false, false) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (true, true) => None,
    }
}

/// Compact notation: `ord^a`, `ss^b` and `(λ,1-λ)^c` joined by `+`, where
/// `(λ,1-λ)` with `λ = r/s` stands for slope `λ` and `1-λ`, each with multiplicity `s`.
/// Polygons that are not symmetric fall back to the raw slope list.
impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symmetric = self.segments.iter().all(|&(s, m)| self.multiplicity(Slope::one() - s) == m);
        if !symmetric {
            let parts: Vec<String> = self.segments.iter().map(|(s, m)| format!("{s}x{m}")).collect();
            return write!(f, "[{}]", parts.join(","));
        }
        let power = |n: usize| if n == 1 { String::new() } else { format!("^{n}") };
        let mut parts = Vec::new();
        for &(s, m) in &self.segments {
            if s == Slope::zero() {
                parts.push(format!("ord{}", power(m)));
            } else if s < Slope::new(1, 2) {
                let d = *s.denom() as usize;
                parts.push(format!("({},{}){}", s, Slope::one() - s, power(m / d)));
            }
        }
        let half = self.multiplicity(Slope::new(1, 2));
        if half > 0 {
            parts.push(format!("ss{}", power(half / 2)));
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for NewtonPolygon {
    type Err = PolygonError;

    /// Accepts the display notation, or a comma-separated slope list with optional
    /// `xN` multiplicities (`1/4x4,3/4x4`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || PolygonError::Parse(s.to_string());
        let parse_slope = |t: &str| -> Result<Slope, PolygonError> {
            match t.split_once('/') {
                Some((a, b)) => {
                    let (a, b): (i64, i64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
                    if b == 0 {
                        return Err(bad());
                    }
                    Ok(Slope::new(a, b))
                }
                None => Ok(Slope::from_integer(t.parse().map_err(|_| bad())?)),
            }
        };
        if text.is_empty() {
            return Err(bad());
        }
        let is_compact = text.starts_with("ord") || text.starts_with("ss") || text.starts_with('(');
        let mut segs = Vec::new();
        if is_compact {
            for term in text.split('+') {
                let (body, n) = match term.rsplit_once('^') {
                    Some((b, n)) if !b.is_empty() => (b, n.parse::<usize>().map_err(|_| bad())?),
                    _ => (term, 1),
                };
                if body == "ord" {
                    segs.push((Slope::zero(), n));
                    segs.push((Slope::one(), n));
                } else if body == "ss" {
                    segs.push((Slope::new(1, 2), 2 * n));
                } else if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
                    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
                    let (a, b) = (parse_slope(a)?, parse_slope(b)?);
                    if a + b != Slope::one() {
                        return Err(bad());
                    }
                    let d = *a.denom() as usize;
                    segs.push((a, d * n));
                    segs.push((b, d * n));
                } else {
                    return Err(bad());
                }
            }
            return Self::from_segments(segs);
        }
        for term in text.trim_start_matches('[').trim_end_matches(']').split(',') {
            let (s, m) = match term.split_once('x') {
                Some((s, m)) => (s, m.parse::<usize>().map_err(|_| bad())?),
                None => (term, 1),
            };
            segs.push((parse_slope(s)?, m));
        }
        Self::from_segments(segs)
    }
}

/// `⌈a/b⌉` for positive `b`.
pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn np(s: &str) -> NewtonPolygon {
        s.parse().unwrap()
    }

    #[test]
    fn display_round_trip() {
        for s in ["(1/4,3/4)+ss^2", "ord^2+ss^4", "(1/3,2/3)^2+ss", "ss^6", "ord^3", "ord+(1/3,2/3)+ss^2"] {
            assert_eq!(np(s).to_string(), s);
        }
        assert_eq!(np("1/4x4,3/4x4,1/2x4"), np("(1/4,3/4)+ss^2"));
    }

    #[test]
    fn validation() {
        assert!(matches!(
            NewtonPolygon::symmetric([(Slope::new(1, 3), 2), (Slope::new(2, 3), 2)]),
            Err(PolygonError::NonIntegralBreakpoint { .. })
        ));
        assert!(matches!(
            NewtonPolygon::symmetric([(Slope::zero(), 1), (Slope::new(1, 2), 2)]),
            Err(PolygonError::NotSymmetric(_))
        ));
        assert!(matches!(NewtonPolygon::from_segments([(Slope::new(3, 2), 2)]), Err(PolygonError::SlopeOutOfRange(_))));
    }

    #[test]
    fn ordering() {
        let ord = NewtonPolygon::ordinary(3);
        let ss = NewtonPolygon::supersingular(3);
        assert_eq!(compare(&ss, &ord), Some(Ordering::Less));
        assert_eq!(compare(&ord, &ord), Some(Ordering::Equal));
        assert_eq!(compare(&np("(1/4,3/4)"), &np("ord+ss^3")), None);
        assert_eq!(compare(&np("(1/3,2/3)"), &np("ord+ss^2")), Some(Ordering::Less));
    }

    #[test]
    fn hull() {
        let pts = [(0, Slope::zero()), (1, Slope::zero()), (2, Slope::one())];
        assert_eq!(NewtonPolygon::lower_hull(&pts).unwrap(), NewtonPolygon::ordinary(1));
        let pts = [(0, Slope::zero()), (2, Slope::one()), (4, Slope::from_integer(2))];
        assert_eq!(NewtonPolygon::lower_hull(&pts).unwrap(), NewtonPolygon::supersingular(2));
    }
}
