//! Cartier–Manin matrices of hyperelliptic curves and the p-rank and a-number
//! read off them.
//!
//! Convention: [`cartier_matrix_hyperelliptic`] returns the *modified* matrix `M`
//! with `m_{i,j} = [x^{pi-j}] h^{(p-1)/2}` in the basis `x^{j-1} dx/y`. The
//! *unmodified* matrix is `M~ = M^{(p)}` (entries raised to the p-th power), and the
//! p-rank is the rank of `M~^{(p^{g-1})} ··· M~^{(p)} M~`, twists accumulating on
//! the left factor. No other ordering is computed.

use crate::arith::{Field, FieldElement, Poly};
use crate::curves::{AdditiveCoverModel, CurveError, CurveModel, HyperellipticModel, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    Modified,
    Unmodified,
}

/// A square matrix over `F_q` standing for a p^{-1}-linear operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMatrix {
    field: Field,
    rows: Vec<Vec<FieldElement>>,
    convention: Convention,
}

impl SemilinearMatrix {
    /// Panics if `rows` is not square.
    pub fn new(field: Field, rows: Vec<Vec<FieldElement>>, convention: Convention) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { field, rows, convention }
    }

    pub fn identity(field: Field, n: usize, convention: Convention) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect();
        Self::new(field, rows, convention)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Entrywise `x ↦ x^{p^e}` (same convention tag).
    pub fn twist(&self, e: u32) -> Self {
        let rows = self.rows.iter().map(|r| r.iter().map(|x| self.field.frobenius(x, e)).collect()).collect();
        Self { field: self.field.clone(), rows, convention: self.convention }
    }

    pub fn to_unmodified(&self) -> Self {
        match self.convention {
            Convention::Unmodified => self.clone(),
            Convention::Modified => Self { convention: Convention::Unmodified, ..self.twist(1) },
        }
    }

    pub fn to_modified(&self) -> Self {
        match self.convention {
            Convention::Modified => self.clone(),
            Convention::Unmodified => {
                let k = self.field.degree() as u32;
                Self { convention: Convention::Modified, ..self.twist(k - 1) }
            }
        }
    }

    /// Ordinary matrix product `self · other` (tag of `self`).
    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&self.rows[i][k], &other.rows[k][j]))))
                    .collect()
            })
            .collect();
        Self { field: f.clone(), rows, convention: self.convention }
    }

    pub fn rank(&self) -> usize {
        rank(&self.field, self.rows.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(FieldElement::is_zero)
    }
}

fn rank(f: &Field, mut rows: Vec<Vec<FieldElement>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = f.inv(&rows[r][c]).unwrap();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = f.mul(&row[c], &inv);
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        r += 1;
    }
    r
}

/// Modified Cartier–Manin matrix of `y^2 = h(x)`.
pub fn cartier_matrix_hyperelliptic(model: &HyperellipticModel) -> Result<SemilinearMatrix, CurveError> {
    let curve = CurveModel::Hyperelliptic(model.clone());
    let g = curve.genus()? as usize;
    let f = &model.field;
    let p = f.characteristic() as usize;
    let power = model.h.pow((p as u64 - 1) / 2, Some(p * g - 1), f);
    let rows = (1..=g).map(|i| (1..=g).map(|j| power.coeff(p * i - j)).collect()).collect();
    Ok(SemilinearMatrix::new(f.clone(), rows, Convention::Modified))
}

/// Corank of the Cartier operator.
pub fn a_number(m: &SemilinearMatrix) -> usize {
    m.dim() - m.to_modified().rank()
}

/// Rank of `M~^{(p^{g-1})} ··· M~^{(p)} M~` with `M~` the unmodified matrix.
pub fn p_rank(m: &SemilinearMatrix) -> usize {
    let base = m.to_unmodified();
    let mut product = base.clone();
    for t in 1..m.dim() as u32 {
        product = base.twist(t).mul(&product);
    }
    product.rank()
}

/// `[x^{p-1}] h^{(p-1)/2} = 0` for a separable cubic `h` in odd characteristic.
pub fn elliptic_is_supersingular(h: &Poly, field: &Field) -> Result<bool, CurveError> {
    let p = field.characteristic();
    let mut bad = Vec::new();
    if p == 2 {
        bad.push(Violation::CharacteristicTwo);
    }
    if h.degree() != Some(3) {
        bad.push(Violation::DegreeTooSmall { degree: h.degree() });
    } else if !h.is_separable(field) {
        bad.push(Violation::SeparabilityViolation);
    }
    if !bad.is_empty() {
        return Err(CurveError::InvalidModel(bad));
    }
    let power = h.pow((p - 1) / 2, Some(p as usize - 1), field);
    Ok(power.coeff(p as usize - 1).is_zero())
}

/// Deuring–Shafarevich with a single branch point at infinity: `(Q - 1)(B - 1) = 0`.
pub fn p_rank_additive_cover(model: &AdditiveCoverModel) -> Result<u64, CurveError> {
    let curve = CurveModel::AdditiveCover(model.clone());
    curve.genus()?;
    let q = model.additive_degree() as u64;
    let branch_points = 1u64;
    Ok((q - 1) * (branch_points - 1))
}
