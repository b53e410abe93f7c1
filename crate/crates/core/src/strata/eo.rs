use std::fmt;

use super::StrataError;

/// Largest genus for which [`eo_enumerate`] will list all `2^g` types.
pub const MAX_EO_GENUS: usize = 24;

/// Final type `ν = [ν_1, …, ν_g]` with `ν_1 ∈ {0, 1}` and `ν_i ≤ ν_{i+1} ≤ ν_i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EoType {
    nu: Vec<u32>,
}

/// Strictly decreasing sequence `μ_1 > μ_2 > … > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YoungType {
    mu: Vec<u32>,
}

impl EoType {
    pub fn new(nu: Vec<u32>) -> Result<Self, StrataError> {
        let mut prev = 0;
        for &v in &nu {
            if v < prev || v > prev + 1 {
                return Err(StrataError::InvalidEo(nu));
            }
            prev = v;
        }
        if nu.is_empty() {
            return Err(StrataError::InvalidEo(nu));
        }
        Ok(Self { nu })
    }

    pub fn ordinary(g: usize) -> Self {
        Self { nu: (1..=g as u32).collect() }
    }

    pub fn superspecial(g: usize) -> Self {
        Self { nu: vec![0; g] }
    }

    pub fn nu(&self) -> &[u32] {
        &self.nu
    }

    pub fn genus(&self) -> usize {
        self.nu.len()
    }

    /// `μ_j = #{i : i - ν_i ≥ j}`.
    pub fn young(&self) -> YoungType {
        let defects: Vec<u32> = self.nu.iter().enumerate().map(|(i, &v)| i as u32 + 1 - v).collect();
        let top = defects.iter().copied().max().unwrap_or(0);
        YoungType { mu: (1..=top).map(|j| defects.iter().filter(|&&d| d >= j).count() as u32).collect() }
    }

    /// Inverse of [`EoType::young`]: `i - ν_i = #{j : μ_j ≥ g - i + 1}`.
    pub fn from_young(g: usize, young: &YoungType) -> Result<Self, StrataError> {
        if young.mu.first().is_some_and(|&m| m as usize > g) {
            return Err(StrataError::InvalidYoung(young.mu.clone(), g));
        }
        let nu = (1..=g)
            .map(|i| {
                let d = young.mu.iter().filter(|&&m| m as usize > g - i).count();
                (i - d) as u32
            })
            .collect();
        Self::new(nu)
    }
}

impl fmt::Display for EoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nu.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl YoungType {
    pub fn new(mu: Vec<u32>) -> Result<Self, StrataError> {
        let ok = mu.windows(2).all(|w| w[0] > w[1]) && mu.last().is_none_or(|&m| m > 0);
        if !ok {
            return Err(StrataError::InvalidYoung(mu, 0));
        }
        Ok(Self { mu })
    }

    pub fn mu(&self) -> &[u32] {
        &self.mu
    }
}

impl fmt::Display for YoungType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mu.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.mu.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `2^g` types in lexicographic order of `ν`.
pub fn eo_enumerate(g: usize) -> Result<Vec<EoType>, StrataError> {
    if g == 0 || g > MAX_EO_GENUS || (1u64 << g) > crate::budget::enumeration_limit() {
        return Err(StrataError::BudgetExceeded { g, limit: MAX_EO_GENUS });
    }
    // bit g-1-i of the code is the increment ν_{i+1} - ν_i, so codes ascend lexicographically
    Ok((0u32..1 << g)
        .map(|code| {
            let mut v = 0;
            let nu = (0..g)
                .map(|i| {
                    v += (code >> (g - 1 - i)) & 1;
                    v
                })
                .collect();
            EoType { nu }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EoInvariants {
    pub p_rank: usize,
    pub a_number: usize,
    pub young: YoungType,
    pub dim: usize,
    pub codim: usize,
}

pub fn eo_invariants(nu: &EoType) -> EoInvariants {
    let g = nu.genus();
    let p_rank = (1..=g).rev().find(|&i| nu.nu[i - 1] as usize == i).unwrap_or(0);
    let a_number = g - nu.nu[g - 1] as usize;
    let young = nu.young();
    let mu1 = young.mu.first().copied().unwrap_or(0) as usize;
    assert_eq!(p_rank, g - mu1, "p-rank formulas disagree for {nu}");
    assert_eq!(a_number, young.mu.len(), "a-number formulas disagree for {nu}");
    let dim: usize = nu.nu.iter().map(|&v| v as usize).sum();
    EoInvariants { p_rank, a_number, young, dim, codim: g * (g + 1) / 2 - dim }
}

/// `[1, …, e, e + ν_1, …, e + ν_g]`.
pub fn eo_add_ordinary(nu: &EoType, e: usize) -> EoType {
    let e32 = e as u32;
    EoType { nu: (1..=e32).chain(nu.nu.iter().map(|&v| v + e32)).collect() }
}

/// Conventional group-scheme names for genus at most 3.
pub fn eo_label(nu: &EoType) -> Option<&'static str> {
    Some(match nu.nu.as_slice() {
        [1] => "L",
        [0] => "I_{1,1}",
        [1, 2] => "L^2",
        [1, 1] => "L+I_{1,1}",
        [0, 1] => "I_{2,1}",
        [0, 0] => "(I_{1,1})^2",
        [1, 2, 3] => "L^3",
        [1, 2, 2] => "L^2+I_{1,1}",
        [1, 1, 2] => "L+I_{2,1}",
        [1, 1, 1] => "L+(I_{1,1})^2",
        [0, 1, 2] => "I_{3,1}",
        [0, 1, 1] => "I_{3,2}",
        [0, 0, 1] => "I_{1,1}+I_{2,1}",
        [0, 0, 0] => "(I_{1,1})^3",
        _ => return None,
    })
}
