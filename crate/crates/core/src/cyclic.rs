//! Monodromy data of cyclic covers of the projective line: signatures, Shimura
//! dimensions, special families and Frobenius-orbit Newton polygons.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::budget;
use crate::curves::superelliptic_genus;
use crate::polygon::{self, NewtonPolygon, Slope};
use crate::strata::sdim;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclicError {
    #[error("invalid monodromy datum: {0}")]
    InvalidDatum(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("signature entry f_{n} is not an integer")]
    NonIntegralSignature { n: u32 },
    #[error("p = {p} is not coprime to m = {m}")]
    NotCoprime { m: u32, p: u64 },
    #[error("f_t + f_(m-t) is not constant on the orbit {orbit:?}")]
    InconsistentSignature { orbit: Vec<u32> },
    #[error("m = {0} must be odd")]
    EvenModulus(u32),
    #[error("{what} = {value} exceeds the enumeration budget {limit}")]
    BudgetExceeded { what: &'static str, value: u128, limit: u64 },
}

/// `(m, N, a)` with `a_i ∈ [1, m-1]`, `gcd(m, a) = 1` and `Σ a_i ≡ 0 mod m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonodromyDatum {
    m: u32,
    a: Vec<u32>,
}

impl MonodromyDatum {
    pub fn new(m: u32, a: Vec<u32>) -> Result<Self, CyclicError> {
        let bad = |msg: String| Err(CyclicError::InvalidDatum(msg));
        if m < 2 {
            return bad(format!("m = {m} < 2"));
        }
        if a.len() < 3 {
            return bad(format!("N = {} < 3", a.len()));
        }
        if let Some(x) = a.iter().find(|&&x| x == 0 || x >= m) {
            return bad(format!("a_i = {x} not in [1, {}]", m - 1));
        }
        if a.iter().fold(m, |g, &x| g.gcd(&x)) != 1 {
            return bad(format!("gcd(m, a) != 1 for m = {m}, a = {a:?}"));
        }
        if a.iter().map(|&x| x as u64).sum::<u64>() % m as u64 != 0 {
            return bad(format!("sum of a = {a:?} not divisible by {m}"));
        }
        Ok(Self { m, a })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    /// Number of branch points `N`.
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn genus(&self) -> u64 {
        superelliptic_genus(self.m, &self.a)
    }
}

impl fmt::Display for MonodromyDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(u32::to_string).collect();
        write!(f, "({},{},({}))", self.m, self.a.len(), a.join(","))
    }
}

/// `(f_1, …, f_{m-1})`: dimensions of the eigenspaces of `μ_m` on holomorphic
/// differentials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    m: u32,
    f: Vec<u32>,
}

impl Signature {
    pub fn new(m: u32, f: Vec<u32>) -> Result<Self, CyclicError> {
        if m < 2 || f.len() != m as usize - 1 {
            return Err(CyclicError::InvalidSignature(format!(
                "expected {} entries for m = {m}, got {}",
                m.saturating_sub(1),
                f.len()
            )));
        }
        Ok(Self { m, f })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn values(&self) -> &[u32] {
        &self.f
    }

    /// `f_n` for `n` taken mod `m`; `f_0 = 0`.
    pub fn get(&self, n: u32) -> u32 {
        match n % self.m {
            0 => 0,
            r => self.f[r as usize - 1],
        }
    }

    pub fn genus(&self) -> u64 {
        self.f.iter().map(|&x| x as u64).sum()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.f.iter().map(u32::to_string).collect();
        write!(f, "({})", v.join(","))
    }
}

/// Least element of `{sorted(c·a mod m) : c ∈ (Z/m)^*}`.
pub fn datum_canonicalize(datum: &MonodromyDatum) -> MonodromyDatum {
    let m = datum.m;
    (1..m)
        .filter(|c| c.gcd(&m) == 1)
        .map(|c| {
            let mut a: Vec<u32> = datum.a.iter().map(|&x| (c * x) % m).collect();
            a.sort_unstable();
            a
        })
        .min()
        .map(|a| MonodromyDatum { m, a })
        .unwrap()
}

fn is_canonical(m: u32, sorted: &[u32]) -> bool {
    let mut buf = vec![0; sorted.len()];
    for c in 2..m {
        if c.gcd(&m) != 1 {
            continue;
        }
        for (b, &x) in buf.iter_mut().zip(sorted) {
            *b = (c * x) % m;
        }
        buf.sort_unstable();
        if buf.as_slice() < sorted {
            return false;
        }
    }
    true
}

/// `f_n = -1 + Σ_i ⟨-n a_i / m⟩`.
pub fn signature(datum: &MonodromyDatum) -> Result<Signature, CyclicError> {
    let m = datum.m as u64;
    let mut f = Vec::with_capacity(m as usize - 1);
    for n in 1..m {
        let num: u64 = datum.a.iter().map(|&x| (m - (n * x as u64) % m) % m).sum();
        if !num.is_multiple_of(m) || num == 0 {
            return Err(CyclicError::NonIntegralSignature { n: n as u32 });
        }
        f.push((num / m - 1) as u32);
    }
    let sig = Signature { m: datum.m, f };
    assert_eq!(sig.genus(), datum.genus(), "signature does not sum to the genus for {datum}");
    Ok(sig)
}

/// `Σ_{1 ≤ n < m/2} f_n f_{m-n} + ε`, with `ε = f_{m/2}(f_{m/2}+1)/2` for even `m`.
pub fn shimura_dim(sig: &Signature) -> u64 {
    let m = sig.m;
    let mut d: u64 = (1..m.div_ceil(2)).map(|n| sig.get(n) as u64 * sig.get(m - n) as u64).sum();
    if m.is_multiple_of(2) {
        let h = sig.get(m / 2) as u64;
        d += h * (h + 1) / 2;
    }
    d
}

/// `dim S_γ = N - 3`.
pub fn is_special(datum: &MonodromyDatum) -> Result<bool, CyclicError> {
    Ok(shimura_dim(&signature(datum)?) == datum.n() as u64 - 3)
}

/// Canonical special data with `4 ≤ N ≤ n_max` and `2 ≤ m ≤ m_max`, sorted by
/// `(N, m, a)`.
pub fn special_scan(m_max: u32, n_max: usize) -> Result<Vec<MonodromyDatum>, CyclicError> {
    if m_max > 40 || n_max > 8 {
        return Err(CyclicError::BudgetExceeded {
            what: "scan range",
            value: m_max.max(n_max as u32) as u128,
            limit: 40,
        });
    }
    // the last entry is forced by the sum condition, so the work is the number of
    // sorted (N-1)-tuples
    let work: u128 =
        (2..=m_max).flat_map(|m| (4..=n_max).map(move |n| binomial(m as u128 + n as u128 - 3, n as u128 - 1))).sum();
    let limit = budget::enumeration_limit();
    if work > limit as u128 {
        return Err(CyclicError::BudgetExceeded { what: "special scan size", value: work, limit });
    }
    let jobs: Vec<(usize, u32)> = (4..=n_max).flat_map(|n| (2..=m_max).map(move |m| (n, m))).collect();
    let found: Vec<Vec<MonodromyDatum>> = jobs
        .par_iter()
        .map(|&(n, m)| {
            let mut out = Vec::new();
            let mut a = vec![1u32; n];
            sorted_tuples(m, n, 0, 1, &mut a, &mut out);
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn sorted_tuples(m: u32, n: usize, pos: usize, min: u32, a: &mut Vec<u32>, out: &mut Vec<MonodromyDatum>) {
    if pos == n - 1 {
        let s: u32 = a[..pos].iter().sum();
        let last = (m - s % m) % m;
        if last < min || last == 0 {
            return;
        }
        a[pos] = last;
        if a.iter().fold(m, |g, &x| g.gcd(&x)) != 1 || !is_canonical(m, a) {
            return;
        }
        let datum = MonodromyDatum { m, a: a.clone() };
        if is_special(&datum).unwrap_or(false) {
            out.push(datum);
        }
        return;
    }
    for x in min..m {
        a[pos] = x;
        sorted_tuples(m, n, pos + 1, x, a, out);
    }
}

/// One row of the table of one-dimensional special families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoonenRow {
    pub label: &'static str,
    pub m: u32,
    pub a: &'static [u32],
    pub g: u32,
    pub f: &'static [u32],
}

/// The fourteen one-dimensional special families (`N = 4`).
pub const MOONEN_TABLE: &[MoonenRow] = &[
    MoonenRow { label: "M[1]", m: 2, a: &[1, 1, 1, 1], g: 1, f: &[1] },
    MoonenRow { label: "M[3]", m: 3, a: &[1, 1, 2, 2], g: 2, f: &[1, 1] },
    MoonenRow { label: "M[4]", m: 4, a: &[1, 2, 2, 3], g: 2, f: &[1, 0, 1] },
    MoonenRow { label: "M[5]", m: 6, a: &[2, 3, 3, 4], g: 2, f: &[1, 0, 0, 0, 1] },
    MoonenRow { label: "M[7]", m: 4, a: &[1, 1, 1, 1], g: 3, f: &[2, 1, 0] },
    MoonenRow { label: "M[9]", m: 6, a: &[1, 3, 4, 4], g: 3, f: &[1, 1, 0, 0, 1] },
    MoonenRow { label: "M[11]", m: 5, a: &[1, 3, 3, 3], g: 4, f: &[1, 2, 0, 1] },
    MoonenRow { label: "M[12]", m: 6, a: &[1, 1, 1, 3], g: 4, f: &[2, 1, 1, 0, 0] },
    MoonenRow { label: "M[13]", m: 6, a: &[1, 1, 2, 2], g: 4, f: &[2, 1, 0, 1, 0] },
    MoonenRow { label: "M[15]", m: 8, a: &[2, 4, 5, 5], g: 5, f: &[1, 1, 0, 0, 2, 0, 1] },
    MoonenRow { label: "M[17]", m: 7, a: &[2, 4, 4, 4], g: 6, f: &[1, 2, 0, 2, 0, 1] },
    MoonenRow { label: "M[18]", m: 10, a: &[3, 5, 6, 6], g: 6, f: &[1, 1, 0, 1, 0, 0, 2, 0, 1] },
    MoonenRow { label: "M[19]", m: 9, a: &[3, 5, 5, 5], g: 7, f: &[1, 2, 0, 2, 0, 1, 0, 1] },
    MoonenRow { label: "M[20]", m: 12, a: &[4, 6, 7, 7], g: 7, f: &[1, 1, 0, 1, 0, 0, 2, 0, 1, 0, 1] },
];

/// The four two-dimensional special families (`N = 5`), as `(label, m, a)`.
pub const SPECIAL_N5: &[(&str, u32, &[u32])] = &[
    ("M[6]", 3, &[1, 1, 1, 1, 2]),
    ("M[8]", 4, &[1, 1, 2, 2, 2]),
    ("M[14]", 6, &[2, 2, 2, 3, 3]),
    ("M[16]", 5, &[1, 1, 1, 1, 1]),
];

/// An orbit of `t ↦ p·t` on `Z/m - {0}`, listed as `t, pt, p²t, …` from its least
/// element, with the index of the orbit of `-t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub elements: Vec<u32>,
    pub dual: usize,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_self_dual(&self, index: usize) -> bool {
        self.dual == index
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub m: u32,
    pub p: u64,
    pub orbits: Vec<Orbit>,
}

pub fn orbits(m: u32, p: u64) -> Result<OrbitDecomposition, CyclicError> {
    if m < 2 || p.gcd(&(m as u64)) != 1 {
        return Err(CyclicError::NotCoprime { m, p });
    }
    let pm = (p % m as u64) as u32;
    let mut owner = vec![usize::MAX; m as usize];
    let mut list: Vec<Orbit> = Vec::new();
    for t in 1..m {
        if owner[t as usize] != usize::MAX {
            continue;
        }
        let mut elements = Vec::new();
        let mut x = t;
        loop {
            owner[x as usize] = list.len();
            elements.push(x);
            x = ((x as u64 * pm as u64) % m as u64) as u32;
            if x == t {
                break;
            }
        }
        list.push(Orbit { elements, dual: 0 });
    }
    for o in list.iter_mut() {
        o.dual = owner[(m - o.elements[0]) as usize];
    }
    Ok(OrbitDecomposition { m, p, orbits: list })
}

/// Height `f_t + f_{-t}` of the eigenspaces in an orbit.
fn orbit_height(sig: &Signature, orbit: &Orbit) -> Result<u32, CyclicError> {
    let m = sig.m;
    let h = sig.get(orbit.elements[0]) + sig.get(m - orbit.elements[0]);
    if orbit.elements.iter().any(|&t| sig.get(t) + sig.get(m - t) != h) {
        return Err(CyclicError::InconsistentSignature { orbit: orbit.elements.clone() });
    }
    Ok(h)
}

/// Slopes of the maximal polygon on one orbit: for `j = 1..h`, slope
/// `#{t ∈ o : f_t ≥ j}/#o` with multiplicity `#o`.
fn orbit_mu_ordinary(sig: &Signature, orbit: &Orbit) -> Result<NewtonPolygon, CyclicError> {
    let h = orbit_height(sig, orbit)?;
    let d = orbit.len();
    let segs = (1..=h).map(|j| {
        let c = orbit.elements.iter().filter(|&&t| sig.get(t) >= j).count();
        (Slope::new(c as i64, d as i64), d)
    });
    let np = NewtonPolygon::from_segments(segs).expect("orbit slopes are integral");
    debug_assert!(np.segments().iter().all(|&(_, n)| n % d == 0));
    debug_assert!(np.segments().len() <= h as usize);
    Ok(np)
}

fn check_coprime(m: u32, p: u64) -> Result<OrbitDecomposition, CyclicError> {
    orbits(m, p)
}

/// Kottwitz's maximal (μ-ordinary) polygon for signature `f` at `p`.
pub fn mu_ordinary(sig: &Signature, p: u64) -> Result<NewtonPolygon, CyclicError> {
    let dec = check_coprime(sig.m, p)?;
    let mut total = NewtonPolygon::from_segments([]).unwrap();
    for orbit in &dec.orbits {
        total = total.direct_sum(&orbit_mu_ordinary(sig, orbit)?);
    }
    let sym = NewtonPolygon::symmetric(total.segments().to_vec());
    assert!(sym.is_ok() || total.length() == 0, "mu-ordinary polygon is not symmetric: {total}");
    Ok(total)
}

/// `Σ_o #o · min_{t ∈ o} f_t`.
pub fn p_rank_bound(sig: &Signature, p: u64) -> Result<u64, CyclicError> {
    let dec = check_coprime(sig.m, p)?;
    Ok(dec.orbits.iter().map(|o| o.len() as u64 * o.elements.iter().map(|&t| sig.get(t)).min().unwrap() as u64).sum())
}

/// Minimal polygon: on each orbit the straight line from `(0, 0)` to
/// `(#o·h, Σ_{t∈o} f_t)`.
pub fn basic_polygon(sig: &Signature, p: u64) -> Result<NewtonPolygon, CyclicError> {
    let dec = check_coprime(sig.m, p)?;
    let mut segs = Vec::new();
    for orbit in &dec.orbits {
        let h = orbit_height(sig, orbit)?;
        let len = orbit.len() * h as usize;
        if len > 0 {
            let rise: u32 = orbit.elements.iter().map(|&t| sig.get(t)).sum();
            segs.push((Slope::new(rise as i64, len as i64), len));
        }
    }
    Ok(NewtonPolygon::from_segments(segs).expect("orbit lines have integral endpoints"))
}

/// Admissible polygons (all products of per-orbit polygons on or above the
/// maximal one) and the minimal, basic, element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSet {
    pub mu_ordinary: NewtonPolygon,
    pub basic: NewtonPolygon,
    /// Sorted by decreasing `sdim`, then by display string.
    pub polygons: Vec<NewtonPolygon>,
}

/// Largest `2g` accepted by [`admissible_set`].
pub const MAX_ADMISSIBLE_HEIGHT: u64 = 28;

pub fn admissible_set(sig: &Signature, p: u64) -> Result<AdmissibleSet, CyclicError> {
    let dec = check_coprime(sig.m, p)?;
    let height = 2 * sig.genus();
    if height > MAX_ADMISSIBLE_HEIGHT {
        return Err(CyclicError::BudgetExceeded { what: "2g", value: height as u128, limit: MAX_ADMISSIBLE_HEIGHT });
    }
    let limit = budget::enumeration_limit();
    // per unit (a self-dual orbit, or an orbit paired with its dual), the list of
    // possible contributions
    let mut units: Vec<Vec<NewtonPolygon>> = Vec::new();
    for (i, orbit) in dec.orbits.iter().enumerate() {
        if orbit.dual < i {
            continue;
        }
        let mu = orbit_mu_ordinary(sig, orbit)?;
        let d = orbit.len();
        let len = mu.length();
        let top = mu.end_height();
        let mut found = Vec::new();
        let mut path = Vec::new();
        convex_paths(len, *top.numer() as usize, d, 0, 0, None, &mut path, &mut found);
        let mut options = Vec::new();
        for segs in found {
            let xi = NewtonPolygon::from_segments(segs).unwrap();
            if !matches!(polygon::compare(&xi, &mu), Some(o) if o.is_le()) {
                continue;
            }
            if orbit.is_self_dual(i) {
                if xi.length() == 0 || NewtonPolygon::symmetric(xi.segments().to_vec()).is_ok() {
                    options.push(xi);
                }
            } else {
                let dual =
                    NewtonPolygon::from_segments(xi.segments().iter().map(|&(s, n)| (Slope::from_integer(1) - s, n)))
                        .unwrap();
                options.push(xi.direct_sum(&dual));
            }
            if options.len() as u64 > limit {
                return Err(CyclicError::BudgetExceeded {
                    what: "admissible polygons",
                    value: options.len() as u128,
                    limit,
                });
            }
        }
        units.push(options);
    }
    let mut all: BTreeSet<NewtonPolygon> = BTreeSet::new();
    all.insert(NewtonPolygon::from_segments([]).unwrap());
    for options in &units {
        let mut next = BTreeSet::new();
        for base in &all {
            for o in options {
                next.insert(base.direct_sum(o));
            }
        }
        if next.len() as u64 > limit {
            return Err(CyclicError::BudgetExceeded { what: "admissible polygons", value: next.len() as u128, limit });
        }
        all = next;
    }
    let mu_ord = mu_ordinary(sig, p)?;
    let mut polygons: Vec<NewtonPolygon> = all.into_iter().collect();
    polygons.sort_by(|a, b| sdim(b).cmp(&sdim(a)).then_with(|| a.to_string().cmp(&b.to_string())));
    let basic = basic_polygon(sig, p)?;
    debug_assert!(polygons.iter().all(|x| matches!(polygon::compare(&basic, x), Some(o) if o.is_le())));
    assert!(polygons.contains(&mu_ord) && polygons.contains(&basic));
    Ok(AdmissibleSet { mu_ordinary: mu_ord, basic, polygons })
}

/// Lower convex lattice paths from `(x, y)` to `(len, top)` whose horizontal
/// steps are multiples of `d`, with slopes strictly increasing and in `[0, 1]`.
#[allow(clippy::too_many_arguments)]
fn convex_paths(
    len: usize,
    top: usize,
    d: usize,
    x: usize,
    y: usize,
    prev: Option<Slope>,
    path: &mut Vec<(Slope, usize)>,
    out: &mut Vec<Vec<(Slope, usize)>>,
) {
    if x == len {
        if y == top {
            out.push(path.clone());
        }
        return;
    }
    let rest = Slope::new((top - y) as i64, (len - x) as i64);
    for dx in (d..=len - x).step_by(d) {
        for dy in 0..=dx.min(top - y) {
            let s = Slope::new(dy as i64, dx as i64);
            if prev.is_some_and(|p| s <= p) || s > rest || (s == rest && dx != len - x) {
                continue;
            }
            path.push((s, dx));
            convex_paths(len, top, d, x + dx, y + dy, Some(s), path, out);
            path.pop();
        }
    }
}

/// Polygon of `y^m = x^{a_1}(x-1)^{a_2}` (a datum with `N = 3`) at `p`.
pub fn cm_newton_polygon(datum: &MonodromyDatum, p: u64) -> Result<NewtonPolygon, CyclicError> {
    if datum.n() != 3 {
        return Err(CyclicError::InvalidDatum(format!("expected N = 3, got N = {}", datum.n())));
    }
    mu_ordinary(&signature(datum)?, p)
}

/// Multiplicative order of `p` modulo `m`.
pub fn multiplicative_order(p: u64, m: u32) -> Result<u32, CyclicError> {
    if m < 2 || p.gcd(&(m as u64)) != 1 {
        return Err(CyclicError::NotCoprime { m, p });
    }
    let m64 = m as u64;
    let base = p % m64;
    let mut x = base;
    let mut k = 1;
    while x != 1 % m64 {
        x = x * base % m64;
        k += 1;
    }
    Ok(k)
}

/// `ord_m(p)` even with `p^{ord/2} ≡ -1 mod m`: sufficient for `y^m = x(x-1)` to be
/// supersingular.
pub fn ss_criterion_cm(m: u32, p: u64) -> Result<bool, CyclicError> {
    if m.is_multiple_of(2) {
        return Err(CyclicError::EvenModulus(m));
    }
    let f = multiplicative_order(p, m)?;
    if f % 2 == 1 {
        return Ok(false);
    }
    let m64 = m as u64;
    let half = (0..f / 2).fold(1u64, |acc, _| acc * (p % m64) % m64);
    Ok(half == m64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn datum(m: u32, a: &[u32]) -> MonodromyDatum {
        MonodromyDatum::new(m, a.to_vec()).unwrap()
    }

    fn np(s: &str) -> NewtonPolygon {
        s.parse().unwrap()
    }

    #[test]
    fn datum_validation() {
        assert!(MonodromyDatum::new(4, vec![2, 2, 2, 2]).is_err());
        assert!(MonodromyDatum::new(5, vec![1, 1, 1, 1]).is_err());
        assert!(MonodromyDatum::new(5, vec![0, 1, 4]).is_err());
        assert!(MonodromyDatum::new(5, vec![1, 4]).is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(datum_canonicalize(&datum(5, &[1, 3, 3, 3])), datum_canonicalize(&datum(5, &[2, 1, 1, 1])));
        assert_eq!(datum_canonicalize(&datum(3, &[1, 1, 2, 2])), datum(3, &[1, 1, 2, 2]));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&datum(5, &[1, 1, 1, 1, 1])).unwrap().values(), &[3, 2, 1, 0]);
        assert_eq!(signature(&datum(9, &[1, 1, 1, 6])).unwrap().values(), &[2, 2, 1, 1, 1, 0, 0, 0]);
        assert_eq!(signature(&datum(7, &[2, 4, 4, 4])).unwrap().values(), &[1, 2, 0, 2, 0, 1]);
    }

    #[test]
    fn dimension_examples() {
        let sig = |m, f: &[u32]| Signature::new(m, f.to_vec()).unwrap();
        assert_eq!(shimura_dim(&sig(5, &[3, 2, 1, 0])), 2);
        assert_eq!(shimura_dim(&sig(6, &[1, 0, 0, 0, 1])), 1);
        assert_eq!(shimura_dim(&sig(7, &[1, 2, 0, 2, 0, 1])), 1);
        assert!(is_special(&datum(5, &[1, 1, 1, 1, 1])).unwrap());
        assert!(is_special(&datum(12, &[4, 6, 7, 7])).unwrap());
        assert!(!is_special(&datum(13, &[1, 1, 1, 10])).unwrap());
    }

    #[test]
    fn moonen_rows() {
        for row in MOONEN_TABLE {
            let d = datum(row.m, row.a);
            let sig = signature(&d).unwrap();
            assert_eq!(sig.values(), row.f, "{}", row.label);
            assert_eq!(d.genus(), row.g as u64, "{}", row.label);
            assert!(is_special(&d).unwrap(), "{}", row.label);
        }
    }

    #[test]
    fn scan_small() {
        let found = special_scan(12, 5).unwrap();
        let n4: Vec<_> = found.iter().filter(|d| d.n() == 4).collect();
        assert_eq!(n4.len(), 14);
        for row in MOONEN_TABLE {
            let c = datum_canonicalize(&datum(row.m, row.a));
            assert!(n4.contains(&&c), "{}", row.label);
        }
        let n5: Vec<_> = found.iter().filter(|d| d.n() == 5).cloned().collect();
        let mut expected: Vec<_> = SPECIAL_N5.iter().map(|&(_, m, a)| datum(m, a)).collect();
        expected.sort_by_key(|d| d.m());
        assert_eq!(n5, expected);
    }

    #[test]
    fn orbit_examples() {
        let o = orbits(5, 2).unwrap();
        assert_eq!(o.orbits.len(), 1);
        assert_eq!(o.orbits[0].elements, vec![1, 2, 4, 3]);
        let o = orbits(9, 2).unwrap();
        assert_eq!(o.orbits[0].elements, vec![1, 2, 4, 8, 7, 5]);
        assert_eq!(o.orbits[1].elements, vec![3, 6]);
        let o = orbits(5, 4).unwrap();
        assert_eq!(o.orbits[0].elements, vec![1, 4]);
        assert_eq!(o.orbits[1].elements, vec![2, 3]);
        assert!(orbits(6, 3).is_err());
    }

    #[test]
    fn kottwitz_examples() {
        let f16 = Signature::new(5, vec![3, 2, 1, 0]).unwrap();
        for p in [2, 3, 7, 13] {
            assert_eq!(mu_ordinary(&f16, p).unwrap(), np("(1/4,3/4)+ss^2"));
            assert_eq!(p_rank_bound(&f16, p).unwrap(), 0);
        }
        for p in [19, 29] {
            assert_eq!(mu_ordinary(&f16, p).unwrap(), np("ord^2+ss^4"));
            assert_eq!(p_rank_bound(&f16, p).unwrap(), 2);
        }
        let f19 = Signature::new(9, vec![2, 2, 1, 1, 1, 0, 0, 0]).unwrap();
        for p in [2, 5, 11, 23] {
            assert_eq!(mu_ordinary(&f19, p).unwrap(), np("(1/3,2/3)^2+ss"));
        }
        assert_eq!(mu_ordinary(&f19, 17).unwrap(), np("ord^2+ss^5"));
        assert_eq!(admissible_set(&f16, 2).unwrap().basic, NewtonPolygon::supersingular(6));
        assert_eq!(admissible_set(&f19, 17).unwrap().basic, NewtonPolygon::supersingular(7));
    }

    #[test]
    fn inconsistent_signature() {
        let bad = Signature::new(5, vec![3, 0, 1, 0]).unwrap();
        assert!(matches!(mu_ordinary(&bad, 2), Err(CyclicError::InconsistentSignature { .. })));
    }

    #[test]
    fn cm_examples() {
        assert!(cm_newton_polygon(&datum(13, &[1, 1, 11]), 2).unwrap().is_supersingular());
        assert!(cm_newton_polygon(&datum(14, &[1, 1, 12]), 3).unwrap().is_supersingular());
        // 5 is a square mod 19
        assert!(!cm_newton_polygon(&datum(19, &[1, 1, 17]), 5).unwrap().is_supersingular());
        assert!(ss_criterion_cm(13, 2).unwrap());
        assert!(!ss_criterion_cm(13, 3).unwrap());
        assert!(ss_criterion_cm(19, 2).unwrap());
        assert!(ss_criterion_cm(14, 3).is_err());
    }

    fn sorted_data(m: u32, n: usize) -> Vec<MonodromyDatum> {
        let mut out = Vec::new();
        let mut a = vec![1; n];
        fn rec(m: u32, n: usize, pos: usize, min: u32, a: &mut Vec<u32>, out: &mut Vec<MonodromyDatum>) {
            if pos == n {
                if let Ok(d) = MonodromyDatum::new(m, a.clone()) {
                    out.push(d);
                }
                return;
            }
            for x in min..m {
                a[pos] = x;
                rec(m, n, pos + 1, x, a, out);
            }
        }
        rec(m, n, 0, 1, &mut a, &mut out);
        out
    }

    #[test]
    fn signature_sums_to_genus() {
        for m in 2..=12 {
            for n in 3..=6 {
                for d in sorted_data(m, n) {
                    // independent of the library genus routine: Riemann–Hurwitz with
                    // ramification indices m / gcd(a_i, m)
                    let ram: u64 = d.a().iter().map(|&x| (m - m.gcd(&x)) as u64).sum();
                    let g = (ram + 2 - 2 * m as u64) / 2;
                    assert_eq!(signature(&d).unwrap().genus(), g, "{d}");
                }
            }
        }
    }

    #[test]
    fn p_rank_bound_is_slope_zero_multiplicity() {
        for m in 2..=12u32 {
            for n in 3..=5 {
                for d in sorted_data(m, n) {
                    let sig = signature(&d).unwrap();
                    for r in (1..m).filter(|r| r.gcd(&m) == 1) {
                        let mu = mu_ordinary(&sig, r as u64 + m as u64).unwrap();
                        assert_eq!(mu.p_rank() as u64, p_rank_bound(&sig, r as u64 + m as u64).unwrap());
                        assert_eq!(mu.length() as u64, 2 * sig.genus());
                    }
                }
            }
        }
    }

    #[test]
    fn basic_is_minimal() {
        for m in 2..=9u32 {
            for d in sorted_data(m, 4).into_iter().chain(sorted_data(m, 5)) {
                let sig = signature(&d).unwrap();
                if 2 * sig.genus() > 16 {
                    continue;
                }
                for r in (1..m).filter(|r| r.gcd(&m) == 1) {
                    let set = admissible_set(&sig, (r + m) as u64).unwrap();
                    for xi in &set.polygons {
                        let c = polygon::compare(&set.basic, xi).unwrap();
                        assert!(c.is_le());
                        assert!(polygon::compare(xi, &set.mu_ordinary).unwrap().is_le());
                        assert!(NewtonPolygon::symmetric(xi.segments().to_vec()).is_ok());
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn canonicalization_is_orbit_invariant(
            idx in 0usize..1000,
            c in 1u32..40,
            perm in any::<u64>(),
        ) {
            let all = sorted_data(10, 4);
            let d = &all[idx % all.len()];
            let c = (1..10).filter(|x| x.gcd(&10) == 1).nth(c as usize % 4).unwrap();
            let mut a: Vec<u32> = d.a().iter().map(|&x| x * c % 10).collect();
            let k = a.len();
            a.rotate_left(perm as usize % k);
            a.swap(0, (perm as usize / 7) % k);
            let moved = MonodromyDatum::new(10, a).unwrap();
            let canon = datum_canonicalize(d);
            prop_assert_eq!(datum_canonicalize(&moved), canon.clone());
            prop_assert_eq!(datum_canonicalize(&canon), canon);
        }
    }
}
