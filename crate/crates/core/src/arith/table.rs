use super::field::{prime_factors, Field, FieldElement};
use super::ArithError;
use crate::budget;

/// A finite field small enough to tabulate: elements are integer codes
/// `Σ c_i p^i`, multiplication goes through discrete-log tables.
///
/// Used by the point counters, which touch every element of `F_{q^s}`.
pub struct TableField {
    field: Field,
    p: u32,
    order: u32,
    digits: usize,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl TableField {
    pub fn new(field: &Field) -> Result<Self, ArithError> {
        let limit = budget::enumeration_limit().min(u32::MAX as u64);
        if field.order() > limit {
            return Err(ArithError::BudgetExceeded { what: "tabulated field order", limit });
        }
        let order = field.order();
        let group = order - 1;
        let factors = prime_factors(group);
        let one = field.one();
        let generator = (1..order)
            .map(|i| field.from_index(i))
            .find(|g| factors.iter().all(|&l| field.pow(g, group / l) != one))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; group as usize];
        let mut log = vec![u32::MAX; order as usize];
        let mut cur = one;
        for (e, slot) in exp.iter_mut().enumerate() {
            let idx = field.to_index(&cur) as u32;
            *slot = idx;
            log[idx as usize] = e as u32;
            cur = field.mul(&cur, &generator);
        }
        Ok(Self {
            field: field.clone(),
            p: field.characteristic() as u32,
            order: order as u32,
            digits: field.degree(),
            exp,
            log,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn index(&self, x: &FieldElement) -> u32 {
        self.field.to_index(x) as u32
    }

    pub fn element(&self, i: u32) -> FieldElement {
        self.field.from_index(i as u64)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.digits == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.digits {
            let s = a % self.p + b % self.p;
            out += place * if s >= self.p { s - self.p } else { s };
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.digits {
            let d = a % self.p;
            out += place * if d == 0 { 0 } else { self.p - d };
            a /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let group = self.order as u64 - 1;
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % group;
        self.exp[e as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let group = self.order as u64 - 1;
        let l = (self.log[a as usize] as u128 * e as u128 % group as u128) as usize;
        self.exp[l]
    }

    /// Discrete log with respect to the table's primitive element; `None` at zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize].is_multiple_of(2)
    }

    /// Horner evaluation of a polynomial given by coefficient codes, low degree first.
    pub fn eval(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// `x^{p^e}`.
    pub fn frobenius(&self, x: u32, e: u32) -> u32 {
        self.pow(x, (self.p as u64).pow(e))
    }
}
