//! One-parameter scans and closed-form identities: supersingular Legendre
//! parameters and j-invariants, the Eichler–Deuring mass, non-ordinary censuses and
//! a genus identity for towers of Artin–Schreier covers.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{inv_mod, is_prime, ArithError, Field, FieldElement, Poly};
use crate::budget;
use crate::cartier::{a_number, cartier_matrix_hyperelliptic, p_rank};
use crate::curves::{CurveError, CurveModel, HyperellipticModel};

/// Largest prime accepted by the elliptic routines.
pub const MAX_ELLIPTIC_PRIME: u64 = 2000;

/// Largest parameter space accepted by [`nonordinary_census`].
pub const MAX_CENSUS_PARAMETERS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamiliesError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} is outside the supported range")]
    OutOfRange(u64),
    #[error("{what} = {value} exceeds the budget {limit}")]
    BudgetExceeded { what: &'static str, value: u128, limit: u64 },
    #[error("{delta} has a base-{p} digit other than 0 or 1")]
    BadDigits { p: u64, delta: u64 },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

fn check_elliptic_prime(p: u64) -> Result<(), FamiliesError> {
    if !is_prime(p) {
        return Err(FamiliesError::NotPrime(p));
    }
    if p < 5 {
        return Err(FamiliesError::OutOfRange(p));
    }
    if p > MAX_ELLIPTIC_PRIME {
        return Err(FamiliesError::BudgetExceeded { what: "p", value: p as u128, limit: MAX_ELLIPTIC_PRIME });
    }
    Ok(())
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `D(λ) = [x^{p-1}] (x(x-1)(x-λ))^{(p-1)/2}` over `F_p`, coefficients ascending.
///
/// Evaluates the coefficient at `(p+1)/2` sample values of `λ` and interpolates.
pub fn deuring_polynomial(p: u64) -> Result<Vec<u64>, FamiliesError> {
    check_elliptic_prime(p)?;
    let n = ((p - 1) / 2) as usize;
    // binomials C(n, j) mod p
    let mut binom = vec![1u64; n + 1];
    for j in 1..=n {
        binom[j] = mul_mod(binom[j - 1], mul_mod((n - j + 1) as u64, inv_mod(j as u64, p), p), p);
    }
    let sign = |k: usize| if k.is_multiple_of(2) { 1 } else { p - 1 };
    // [x^i] (x-1)^n = C(n, i) (-1)^{n-i}
    let minus_one: Vec<u64> = (0..=n).map(|i| mul_mod(binom[i], sign(n - i), p)).collect();
    // [x^{p-1}] x^n (x-1)^n (x-λ)^n = [x^n] (x-1)^n (x-λ)^n
    let sample = |lambda: u64| -> u64 {
        let neg = (p - lambda) % p;
        let mut pow = vec![1u64; n + 1];
        for k in 1..=n {
            pow[k] = mul_mod(pow[k - 1], neg, p);
        }
        (0..=n).fold(0, |acc, i| {
            // [x^{n-i}] (x-λ)^n = C(n, n-i) (-λ)^i
            (acc + mul_mod(minus_one[i], mul_mod(binom[n - i], pow[i], p), p)) % p
        })
    };
    let xs: Vec<u64> = (0..=n as u64).collect();
    let ys: Vec<u64> = xs.iter().map(|&x| sample(x)).collect();
    Ok(interpolate(&xs, &ys, p))
}

/// Newton-form interpolation through `(x_i, y_i)` over `F_p`, returned in the monomial
/// basis.
fn interpolate(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let k = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..k {
        for i in (level..k).rev() {
            let num = (dd[i] + p - dd[i - 1]) % p;
            let den = (xs[i] + p - xs[i - level]) % p;
            dd[i] = mul_mod(num, inv_mod(den, p), p);
        }
    }
    // Horner on the Newton basis
    let mut out = vec![0u64; k];
    for i in (0..k).rev() {
        // out = out * (x - xs[i]) + dd[i]
        let mut next = vec![0u64; k];
        for j in 0..k {
            if out[j] == 0 {
                continue;
            }
            if j + 1 < k {
                next[j + 1] = (next[j + 1] + out[j]) % p;
            }
            next[j] = (next[j] + mul_mod(out[j], (p - xs[i] % p) % p, p)) % p;
        }
        next[0] = (next[0] + dd[i]) % p;
        out = next;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn lift(coeffs: &[u64], field: &Field) -> Poly {
    Poly::from_coeffs(coeffs.iter().map(|&c| field.from_u64(c)).collect())
}

/// Supersingular Legendre parameters `λ ∈ F_{p²} \ {0, 1}`, sorted by field index.
pub fn legendre_ss_parameters(p: u64) -> Result<(Field, Vec<FieldElement>), FamiliesError> {
    let d = deuring_polynomial(p)?;
    let f2 = Field::new(p, 2)?;
    let poly = lift(&d, &f2);
    if poly.degree() != Some(((p - 1) / 2) as usize) {
        return Err(FamiliesError::Inconsistent(format!("D(λ) has the wrong degree for p = {p}")));
    }
    if poly.gcd(&poly.derivative(&f2), &f2).degree() != Some(0) {
        return Err(FamiliesError::Inconsistent(format!("D(λ) is not squarefree for p = {p}")));
    }
    let roots: Vec<FieldElement> = poly.roots(&f2)?.into_iter().filter(|r| !r.is_zero() && *r != f2.one()).collect();
    Ok((f2, roots))
}

/// Number of `λ` with `y² = x(x-1)(x-λ)` supersingular.
pub fn legendre_ss_count(p: u64) -> Result<usize, FamiliesError> {
    let (_, roots) = legendre_ss_parameters(p)?;
    if roots.len() as u64 != (p - 1) / 2 {
        return Err(FamiliesError::Inconsistent(format!(
            "found {} supersingular parameters for p = {p}, expected {}",
            roots.len(),
            (p - 1) / 2
        )));
    }
    Ok(roots.len())
}

/// `j(λ) = 2^8 (λ² - λ + 1)³ / (λ² (λ - 1)²)`.
pub fn legendre_j(lambda: &FieldElement, f: &Field) -> FieldElement {
    let one = f.one();
    let l2 = f.mul(lambda, lambda);
    let num = f.pow(&f.add(&f.sub(&l2, lambda), &one), 3);
    let lm1 = f.sub(lambda, &one);
    let den = f.mul(&l2, &f.mul(&lm1, &lm1));
    f.mul(&f.from_u64(256), &f.div(&num, &den).expect("λ is not 0 or 1"))
}

/// `⌊p/12⌋ + ε` with `ε = 0, 1, 1, 2` for `p ≡ 1, 5, 7, 11 mod 12`; one class for
/// `p = 2, 3`.
pub fn ss_j_formula(p: u64) -> u64 {
    if p < 5 {
        return 1;
    }
    p / 12
        + match p % 12 {
            5 | 7 => 1,
            11 => 2,
            _ => 0,
        }
}

/// Supersingular j-invariants in `F_{p²}`, sorted by field index.
pub fn ss_j_invariants(p: u64) -> Result<(Field, Vec<FieldElement>), FamiliesError> {
    if p == 2 || p == 3 {
        // j = 0 = 1728
        let f2 = Field::new(p, 2)?;
        return Ok((f2.clone(), vec![f2.zero()]));
    }
    let (f2, roots) = legendre_ss_parameters(p)?;
    let js: BTreeSet<u64> = roots.iter().map(|l| f2.to_index(&legendre_j(l, &f2))).collect();
    let js = js.into_iter().map(|i| f2.from_index(i)).collect();
    Ok((f2, js))
}

pub fn ss_j_count(p: u64) -> Result<usize, FamiliesError> {
    let (_, js) = ss_j_invariants(p)?;
    if js.len() as u64 != ss_j_formula(p) {
        return Err(FamiliesError::Inconsistent(format!(
            "{} supersingular j-invariants for p = {p}, expected {}",
            js.len(),
            ss_j_formula(p)
        )));
    }
    Ok(js.len())
}

/// `(Σ 1/#Aut(E), (p-1)/24)` over supersingular `E` up to isomorphism.
pub fn mass_formula_check(p: u64) -> Result<(Ratio<i64>, Ratio<i64>), FamiliesError> {
    let expected = Ratio::new(p as i64 - 1, 24);
    let mass = match p {
        2 => Ratio::new(1, 24),
        3 => Ratio::new(1, 12),
        _ => {
            let (f2, js) = ss_j_invariants(p)?;
            let j1728 = f2.from_u64(1728);
            js.iter()
                .map(|j| {
                    let aut = if j.is_zero() {
                        6
                    } else if *j == j1728 {
                        4
                    } else {
                        2
                    };
                    Ratio::new(1, aut)
                })
                .sum()
        }
    };
    if mass != expected {
        return Err(FamiliesError::Inconsistent(format!("mass {mass} != {expected} for p = {p}")));
    }
    Ok((mass, expected))
}

/// `y² = h(x, u)` with `h = Σ_i c_i(u) x^i` and a single parameter `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticFamily {
    pub field: Field,
    /// `c_i(u)` as polynomials in `u`.
    pub coeffs: Vec<Poly>,
}

impl HyperellipticFamily {
    pub fn specialize(&self, u: &FieldElement) -> HyperellipticModel {
        let h = Poly::from_coeffs(self.coeffs.iter().map(|c| c.eval(u, &self.field)).collect());
        HyperellipticModel { field: self.field.clone(), h }
    }

    /// `x(x-1)(x-u)`.
    pub fn legendre(field: &Field) -> Self {
        let c = |v: &[i64]| Poly::from_ints(field, v);
        Self { field: field.clone(), coeffs: vec![c(&[]), c(&[0, 1]), c(&[-1, -1]), c(&[1])] }
    }
}

/// Outcome of a parameter scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub field: Field,
    /// Parameters at which the model is valid.
    pub scanned: u64,
    /// Parameters skipped because the fibre is singular or degenerate.
    pub excluded: u64,
    pub genus: Option<u64>,
    pub non_ordinary: u64,
    pub by_p_rank: BTreeMap<usize, u64>,
    pub by_a_number: BTreeMap<usize, u64>,
    /// `non_ordinary / q^{3g-4}`.
    pub heuristic_ratio: Option<BigRational>,
    pub elapsed: Duration,
}

/// Classifies every fibre of the family by p-rank and a-number; non-ordinary means
/// `det` of the Cartier–Manin matrix vanishes.
pub fn nonordinary_census(family: &HyperellipticFamily) -> Result<ScanReport, FamiliesError> {
    let start = Instant::now();
    let q = family.field.order();
    let limit = budget::enumeration_limit().min(MAX_CENSUS_PARAMETERS);
    if q > limit {
        return Err(FamiliesError::BudgetExceeded { what: "parameters", value: q as u128, limit });
    }
    let results: Vec<Option<(u64, usize, usize)>> = (0..q)
        .into_par_iter()
        .map(|i| {
            let model = family.specialize(&family.field.from_index(i));
            let curve = CurveModel::Hyperelliptic(model.clone());
            if !curve.validate().is_empty() {
                return Ok(None);
            }
            let g = curve.genus()?;
            let m = cartier_matrix_hyperelliptic(&model)?;
            Ok(Some((g, p_rank(&m), a_number(&m))))
        })
        .collect::<Result<_, FamiliesError>>()?;
    let mut report = ScanReport {
        field: family.field.clone(),
        scanned: 0,
        excluded: 0,
        genus: None,
        non_ordinary: 0,
        by_p_rank: BTreeMap::new(),
        by_a_number: BTreeMap::new(),
        heuristic_ratio: None,
        elapsed: Duration::ZERO,
    };
    for r in results {
        let Some((g, f, a)) = r else {
            report.excluded += 1;
            continue;
        };
        if report.genus.is_some_and(|h| h != g) {
            return Err(FamiliesError::Inconsistent("fibres of different genus".into()));
        }
        report.genus = Some(g);
        report.scanned += 1;
        *report.by_p_rank.entry(f).or_default() += 1;
        *report.by_a_number.entry(a).or_default() += 1;
        if (f as u64) < g {
            report.non_ordinary += 1;
        }
    }
    if let Some(g) = report.genus {
        let e = 3 * g as i64 - 4;
        let scale = BigRational::from_integer(BigInt::from(q)).pow(e as i32);
        report.heuristic_ratio = Some(BigRational::from_integer(report.non_ordinary.into()) / scale);
    }
    debug_assert_eq!(report.by_p_rank.values().sum::<u64>(), report.scanned);
    report.elapsed = start.elapsed();
    Ok(report)
}

/// `δ = Σ_i p^{s_i}(1 + p + … + p^{r_i})` with maximal runs of base-`p` ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CkpDecomposition {
    pub p: u64,
    pub delta: u64,
    /// `(s_i, r_i)`, lowest run first.
    pub runs: Vec<(u32, u32)>,
    /// The run-by-run sum, equal to `δ p (p-1)/2`.
    pub genus: BigInt,
}

pub fn ckp_decompose(p: u64, delta: u64) -> Result<Vec<(u32, u32)>, FamiliesError> {
    if !is_prime(p) {
        return Err(FamiliesError::NotPrime(p));
    }
    if delta == 0 {
        return Err(FamiliesError::BadDigits { p, delta });
    }
    let mut runs: Vec<(u32, u32)> = Vec::new();
    let (mut rest, mut pos) = (delta, 0u32);
    let mut current: Option<(u32, u32)> = None;
    while rest > 0 {
        match rest % p {
            0 => {
                runs.extend(current.take());
            }
            1 => {
                current = Some(match current {
                    Some((s, r)) => (s, r + 1),
                    None => (pos, 0),
                });
            }
            _ => return Err(FamiliesError::BadDigits { p, delta }),
        }
        rest /= p;
        pos += 1;
    }
    runs.extend(current);
    for w in runs.windows(2) {
        let ((s0, r0), (s1, _)) = (w[0], w[1]);
        if s1 < s0 + r0 + 2 {
            return Err(FamiliesError::BadDigits { p, delta });
        }
    }
    Ok(runs)
}

/// Evaluates `Σ_i (p^{d_i}-1)/(p-1) · Π_{j<i} p^{d_j} · p^{u_i} · (p-1)/2` with
/// `d_i = r_i + 1` and `u_i = s_i + 1 - Σ_{j<i} d_j`, and checks it against
/// `δ p (p-1)/2`.
pub fn ckp_genus_identity(p: u64, delta: u64) -> Result<CkpDecomposition, FamiliesError> {
    let runs = ckp_decompose(p, delta)?;
    let pb = BigInt::from(p);
    let mut twice = BigInt::zero();
    let mut prefix = 0u32;
    for &(s, r) in &runs {
        let d = r + 1;
        let geometric = (pb.pow(d) - 1u32) / (&pb - 1u32);
        let u = s + 1 - prefix;
        twice += geometric * pb.pow(prefix) * pb.pow(u) * (&pb - 1u32);
        prefix += d;
    }
    if (&twice % 2u32) != BigInt::zero() {
        return Err(FamiliesError::Inconsistent(format!("odd sum for p = {p}, δ = {delta}")));
    }
    let genus = twice / 2u32;
    let expected = BigInt::from(delta) * &pb * (&pb - 1u32) / 2u32;
    if genus != expected {
        return Err(FamiliesError::Inconsistent(format!("run sum {genus} != {expected} for p = {p}, δ = {delta}")));
    }
    Ok(CkpDecomposition { p, delta, runs, genus })
}
