use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, FieldElement};
use super::ArithError;
use crate::budget;

/// Degree bound below which `root_count` also cross-checks against `gcd(f, X^q - X)`.
pub const GCD_CROSS_CHECK_DEGREE: usize = 64;

/// Dense univariate polynomial over a finite field, low degree first, normalised
/// so the leading coefficient is nonzero (the zero polynomial is empty).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Integer coefficients, low degree first, reduced mod p.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: FieldElement, degree: usize) -> Self {
        let mut coeffs = vec![FieldElement::zero(); degree];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn x(field: &Field) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self, f: &Field) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &Field) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Self, f: &Field) -> Self {
        self.add(&other.neg(f), f)
    }

    pub fn scale(&self, c: &FieldElement, f: &Field) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &Self, f: &Field) -> Self {
        self.mul_trunc(other, None, f)
    }

    /// Product with every coefficient above `dmax` dropped.
    pub fn mul_trunc(&self, other: &Self, dmax: Option<usize>, f: &Field) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(d) = dmax {
            len = len.min(d + 1);
        }
        let mut out = vec![FieldElement::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] = f.add(&out[i + j], &f.mul(a, b));
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// `self^e` by binary exponentiation, truncating every intermediate above `dmax`.
    pub fn pow(&self, mut e: u64, dmax: Option<usize>, f: &Field) -> Self {
        let mut acc = Self::constant(f.one());
        let mut base = self.truncate(dmax);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_trunc(&base, dmax, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_trunc(&base, dmax, f);
            }
        }
        acc
    }

    fn truncate(&self, dmax: Option<usize>) -> Self {
        match dmax {
            Some(d) if self.coeffs.len() > d + 1 => Self::from_coeffs(self.coeffs[..=d].to_vec()),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, x: &FieldElement, f: &Field) -> FieldElement {
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative(&self, f: &Field) -> Self {
        Self::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.scale(c, i as u64)).collect())
    }

    pub fn monic(&self, f: &Field) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&f.inv(lc).expect("nonzero leading coefficient"), f),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self, f: &Field) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = f.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![FieldElement::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(&rem[i], &lc_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = f.sub(&rem[k], &f.mul(&c, dc));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self, f: &Field) -> Self {
        self.divrem(divisor, f).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self, f: &Field) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn is_separable(&self, f: &Field) -> bool {
        !self.is_zero() && self.gcd(&self.derivative(f), f).degree() == Some(0)
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, mut e: u64, modulus: &Self, f: &Field) -> Self {
        let mut acc = Self::constant(f.one()).rem(modulus, f);
        let mut base = self.rem(modulus, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(modulus, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f).rem(modulus, f);
            }
        }
        acc
    }

    /// Distinct-degree irreducibility test: no factor of degree `d ≤ n/2`, i.e.
    /// `gcd(X^{q^d} - X, self) = 1` for each such `d`.
    pub fn is_irreducible(&self, f: &Field) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let x = Self::x(f);
        let mut frob = x.clone();
        for _ in 1..=n / 2 {
            frob = frob.powmod(f.order(), self, f);
            if self.gcd(&frob.sub(&x, f), f).degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// `gcd(self, X^q - X)`: the product of the distinct linear factors.
    fn split_part(&self, f: &Field) -> Self {
        let x = Self::x(f);
        let xq = x.powmod(f.order(), self, f);
        self.gcd(&xq.sub(&x, f), f)
    }

    /// Number of distinct roots in `f`.
    ///
    /// Exhaustive evaluation when the field fits the enumeration budget, cross-checked
    /// against `deg gcd(self, X^q - X)` for small degrees; beyond the budget only the
    /// gcd route is used.
    pub fn root_count(&self, f: &Field) -> Result<usize, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let deg = self.degree().unwrap();
        let by_gcd = || self.split_part(f).degree().unwrap_or(0);
        if f.order() > budget::enumeration_limit() {
            return Ok(by_gcd());
        }
        let exhaustive = f.elements().filter(|x| self.eval(x, f).is_zero()).count();
        if deg <= GCD_CROSS_CHECK_DEGREE {
            let g = by_gcd();
            if g != exhaustive {
                return Err(ArithError::Inconsistent(format!("root count {exhaustive} by evaluation but {g} by gcd")));
            }
        }
        Ok(exhaustive)
    }

    /// Distinct roots in `f`, sorted by field index.
    pub fn roots(&self, f: &Field) -> Result<Vec<FieldElement>, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let mut out = Vec::new();
        if f.order() <= 4096 || f.order() <= self.degree().unwrap() as u64 * 8 {
            out.extend(f.elements().filter(|x| self.eval(x, f).is_zero()));
        } else {
            let g = self.split_part(f);
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            split_linear(&g, f, &mut rng, &mut out);
            out.sort_by_key(|x| f.to_index(x));
        }
        Ok(out)
    }
}

/// Equal-degree splitting of a monic squarefree product of linear factors.
fn split_linear(g: &Poly, f: &Field, rng: &mut ChaCha8Rng, out: &mut Vec<FieldElement>) {
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            let root = f.neg(&f.div(&g.coeff(0), &g.coeff(1)).unwrap());
            out.push(root);
            return;
        }
        _ => {}
    }
    let one = Poly::constant(f.one());
    loop {
        let a = f.from_index(rng.gen_range(0..f.order()));
        let candidate = if f.characteristic() == 2 {
            // Absolute trace of a·X: an F_2-valued function splitting the roots.
            let ax = Poly::monomial(a, 1).rem(g, f);
            let mut term = ax.clone();
            let mut trace = ax;
            for _ in 1..f.degree() {
                term = term.mul(&term, f).rem(g, f);
                trace = trace.add(&term, f);
            }
            trace
        } else {
            let shifted = Poly::from_coeffs(vec![a, f.one()]);
            shifted.powmod((f.order() - 1) / 2, g, f).sub(&one, f)
        };
        let h = g.gcd(&candidate, f);
        let dh = h.degree().unwrap_or(0);
        if dh > 0 && Some(dh) < g.degree() {
            let (rest, _) = g.divrem(&h, f);
            split_linear(&h, f, rng, out);
            split_linear(&rest.monic(f), f, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_identity_exponent() {
        let f = Field::prime(5).unwrap();
        let h = Poly::from_ints(&f, &[1, 0, 0, 0, 0, 1]);
        assert_eq!(h.pow(1, None, &f), h);
    }

    #[test]
    fn pow_square_of_x3_plus_x_mod_5() {
        let f = Field::prime(5).unwrap();
        let h = Poly::from_ints(&f, &[0, 1, 0, 1]);
        assert_eq!(h.pow(2, None, &f), Poly::from_ints(&f, &[0, 0, 1, 0, 2, 0, 1]));
    }

    #[test]
    fn pow_truncated() {
        let f = Field::prime(5).unwrap();
        let h = Poly::from_ints(&f, &[1, 0, 0, 1]);
        assert_eq!(h.pow(2, Some(4), &f), Poly::from_ints(&f, &[1, 0, 0, 2]));
    }

    #[test]
    fn root_counts() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(Poly::from_ints(&f3, &[1, 0, 1]).root_count(&f3).unwrap(), 0);
        assert_eq!(Poly::from_ints(&f3, &[0, -1, 0, 1]).root_count(&f3).unwrap(), 3);
        let f25 = Field::new(5, 2).unwrap();
        assert_eq!(Poly::from_ints(&f25, &[1, 4, 1]).root_count(&f25).unwrap(), 2);
        assert_eq!(Poly::zero().root_count(&f3), Err(ArithError::ZeroPolynomial));
    }

    #[test]
    fn repeated_roots_counted_once() {
        let f = Field::prime(7).unwrap();
        // (x-1)^2 (x-2)
        let p = Poly::from_ints(&f, &[-1, 1]).pow(2, None, &f).mul(&Poly::from_ints(&f, &[-2, 1]), &f);
        assert_eq!(p.root_count(&f).unwrap(), 2);
    }

    #[test]
    fn splitting_matches_exhaustive_in_large_fields() {
        for (p, k) in [(101u64, 2usize), (2, 13)] {
            let f = Field::new(p, k).unwrap();
            let roots: Vec<_> = (1..=6u64).map(|i| f.from_index(i * 37 + 5)).collect();
            let mut poly = Poly::constant(f.one());
            for r in &roots {
                poly = poly.mul(&Poly::from_coeffs(vec![f.neg(r), f.one()]), &f);
            }
            let found = poly.roots(&f).unwrap();
            let mut expected = roots.clone();
            expected.sort_by_key(|x| f.to_index(x));
            expected.dedup();
            assert_eq!(found, expected);
        }
    }

    #[test]
    fn divrem_reconstructs() {
        let f = Field::new(3, 2).unwrap();
        let a = Poly::from_ints(&f, &[1, 2, 0, 1, 1, 2]);
        let b = Poly::from_ints(&f, &[2, 0, 1]);
        let (q, r) = a.divrem(&b, &f);
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
