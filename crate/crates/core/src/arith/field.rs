use std::fmt;
use std::sync::Arc;

use super::poly::Poly;
use super::ArithError;

/// Largest field order `field_make` will construct.
pub const MAX_FIELD_ORDER: u64 = 1 << 40;

/// An element of `F_p[t]/(modulus)`, stored little-endian in powers of the
/// generator `t` with trailing zero coefficients trimmed, so that every element
/// has exactly one representation and the zero element is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients in powers of the generator; implicit zeros past the end.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn from_raw(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }
}

struct FieldData {
    p: u64,
    degree: usize,
    /// Monic modulus, `degree + 1` coefficients, little-endian. Empty for prime fields.
    modulus: Vec<u64>,
    order: u64,
}

/// Descriptor of a finite field `F_{p^k}`, realised as a single extension of `F_p`.
///
/// Cloning is cheap; all arithmetic goes through the descriptor.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.degree == other.0.degree && self.0.modulus == other.0.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        if self.0.degree > 1 {
            write!(f, " mod {:?}", self.0.modulus)?;
        }
        Ok(())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.degree == 1 {
            write!(f, "F{}", self.0.p)
        } else {
            write!(f, "F{}^{}", self.0.p, self.0.degree)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n` without multiplicity, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn checked_order(p: u64, k: usize) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..k {
        q = q.checked_mul(p)?;
        if q > MAX_FIELD_ORDER {
            return None;
        }
    }
    Some(q)
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self, ArithError> {
        Self::new(p, 1)
    }

    /// `F_{p^k}` with the lexicographically first monic irreducible modulus,
    /// scanning `(c_{k-1}, …, c_0)` in ascending numeric order.
    pub fn new(p: u64, k: usize) -> Result<Self, ArithError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(ArithError::NotPrime(p));
        }
        if k == 0 {
            return Err(ArithError::InvalidDegree);
        }
        let order =
            checked_order(p, k).ok_or(ArithError::BudgetExceeded { what: "field order", limit: MAX_FIELD_ORDER })?;
        if k == 1 {
            return Ok(Self(Arc::new(FieldData { p, degree: 1, modulus: Vec::new(), order })));
        }
        let base = Self::new(p, 1)?;
        for code in 0..order {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                coeffs.push(c % p);
                c /= p;
            }
            coeffs.push(1);
            if coeffs[0] == 0 {
                continue;
            }
            let candidate = Poly::from_coeffs(coeffs.iter().map(|&c| base.from_u64(c)).collect());
            if candidate.is_irreducible(&base) {
                return Ok(Self(Arc::new(FieldData { p, degree: k, modulus: coeffs, order })));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Builds `F_p[t]/(modulus)` from an explicit monic modulus, checking irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, ArithError> {
        let base = Self::prime(p)?;
        let k = modulus.len().checked_sub(1).ok_or(ArithError::InvalidDegree)?;
        if k == 0 || modulus[k] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(ArithError::InvalidModulus);
        }
        let order =
            checked_order(p, k).ok_or(ArithError::BudgetExceeded { what: "field order", limit: MAX_FIELD_ORDER })?;
        if k == 1 {
            return Ok(base);
        }
        let poly = Poly::from_coeffs(modulus.iter().map(|&c| base.from_u64(c)).collect());
        if !poly.is_irreducible(&base) {
            return Err(ArithError::InvalidModulus);
        }
        Ok(Self(Arc::new(FieldData { p, degree: k, modulus, order })))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Defining modulus, absent for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        if self.0.degree == 1 {
            None
        } else {
            Some(&self.0.modulus)
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::zero()
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { coeffs: vec![1] }
    }

    /// The generator `t` of the extension; `None` for prime fields.
    pub fn generator(&self) -> Option<FieldElement> {
        (self.0.degree > 1).then(|| FieldElement { coeffs: vec![0, 1] })
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        FieldElement::from_raw(vec![n % self.0.p])
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        FieldElement::from_raw(vec![n.rem_euclid(p) as u64])
    }

    /// Element with the given coefficients in powers of the generator; reduced mod p
    /// and mod the modulus.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        let p = self.0.p;
        let mut raw: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
        self.reduce(&mut raw);
        FieldElement::from_raw(raw)
    }

    /// Fixed-length coefficient vector (length = degree).
    pub fn coefficients(&self, x: &FieldElement) -> Vec<u64> {
        let mut v = x.coeffs.clone();
        v.resize(self.0.degree, 0);
        v
    }

    /// Integer code `Σ c_i p^i` in `[0, q)`.
    pub fn to_index(&self, x: &FieldElement) -> u64 {
        x.coeffs.iter().rev().fold(0, |acc, &c| acc * self.0.p + c)
    }

    pub fn from_index(&self, mut n: u64) -> FieldElement {
        let mut raw = Vec::with_capacity(self.0.degree);
        for _ in 0..self.0.degree {
            raw.push(n % self.0.p);
            n /= self.0.p;
        }
        FieldElement::from_raw(raw)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.order).map(move |i| self.from_index(i))
    }

    pub fn is_prime_element(&self, x: &FieldElement) -> bool {
        x.coeffs.len() <= 1
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.0.p;
        let n = a.coeffs.len().max(b.coeffs.len());
        let raw = (0..n)
            .map(|i| {
                let s = a.coeffs.get(i).copied().unwrap_or(0) + b.coeffs.get(i).copied().unwrap_or(0);
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        FieldElement::from_raw(raw)
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.0.p;
        FieldElement::from_raw(a.coeffs.iter().map(|&c| if c == 0 { 0 } else { p - c }).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::zero();
        }
        let p = self.0.p;
        let mut raw = vec![0u64; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                raw[i + j] = (raw[i + j] + x * y % p) % p;
            }
        }
        self.reduce(&mut raw);
        FieldElement::from_raw(raw)
    }

    pub fn scale(&self, a: &FieldElement, c: u64) -> FieldElement {
        let p = self.0.p;
        let c = c % p;
        FieldElement::from_raw(a.coeffs.iter().map(|&x| x * c % p).collect())
    }

    fn reduce(&self, raw: &mut Vec<u64>) {
        let k = self.0.degree;
        let p = self.0.p;
        if raw.len() <= k {
            return;
        }
        if k == 1 {
            // prime field: no generator, higher terms are meaningless
            raw.truncate(1);
            return;
        }
        let modulus = &self.0.modulus;
        for i in (k..raw.len()).rev() {
            let c = raw[i];
            if c == 0 {
                continue;
            }
            raw[i] = 0;
            for j in 0..k {
                let t = c * modulus[j] % p;
                raw[i - k + j] = (raw[i - k + j] + p - t) % p;
            }
        }
        raw.truncate(k);
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        if self.0.degree == 1 {
            return Some(self.from_u64(inv_mod(a.coeffs[0], self.0.p)));
        }
        Some(self.pow(a, self.0.order - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `x^{p^e}` by repeated p-th powering.
    pub fn frobenius(&self, x: &FieldElement, e: u32) -> FieldElement {
        if self.0.degree == 1 {
            return x.clone();
        }
        let e = e as usize % self.0.degree;
        let mut y = x.clone();
        for _ in 0..e {
            y = self.pow(&y, self.0.p);
        }
        y
    }

    /// Quadratic residuosity for odd characteristic; zero counts as a square.
    pub fn is_square(&self, x: &FieldElement) -> bool {
        if x.is_zero() || self.0.p == 2 {
            return true;
        }
        self.pow(x, (self.0.order - 1) / 2) == self.one()
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(p as i128) as u64
}

/// An embedding `F_{p^a} ↪ F_{p^b}` determined by the image of the generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    image_of_generator: FieldElement,
}

impl Embedding {
    /// Finds the smallest-index root of the source modulus in the target field by
    /// exhaustive search.
    pub fn new(source: &Field, target: &Field) -> Result<Self, ArithError> {
        if source.characteristic() != target.characteristic() || !target.degree().is_multiple_of(source.degree()) {
            return Err(ArithError::NoEmbedding { from: source.to_string(), to: target.to_string() });
        }
        let image_of_generator = match source.modulus() {
            None => target.zero(),
            Some(modulus) => {
                if source == target {
                    source.generator().expect("extension has a generator")
                } else {
                    let lifted = Poly::from_coeffs(modulus.iter().map(|&c| target.from_u64(c)).collect());
                    target
                        .elements()
                        .find(|x| lifted.eval(x, target).is_zero())
                        .ok_or_else(|| ArithError::NoEmbedding { from: source.to_string(), to: target.to_string() })?
                }
            }
        };
        Ok(Self { source: source.clone(), target: target.clone(), image_of_generator })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn map(&self, x: &FieldElement) -> FieldElement {
        let t = &self.target;
        let mut acc = t.zero();
        for &c in x.coeffs().iter().rev() {
            acc = t.add(&t.mul(&acc, &self.image_of_generator), &t.from_u64(c));
        }
        acc
    }

    pub fn map_poly(&self, f: &Poly) -> Poly {
        Poly::from_coeffs(f.coeffs().iter().map(|c| self.map(c)).collect())
    }
}
