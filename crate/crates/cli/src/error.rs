use ptl_core::arith::ArithError;
use ptl_core::curves::CurveError;
use ptl_core::cyclic::CyclicError;
use ptl_core::families::FamiliesError;
use ptl_core::polygon::PolygonError;
use ptl_core::strata::StrataError;
use ptl_core::zeta::ZetaError;
use thiserror::Error;

use crate::spec::ParseError;

/// Errors grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Invalid(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse_error",
            CliError::Invalid(_) => "invalid_input",
            CliError::Budget(_) => "budget_exceeded",
            CliError::Internal(_) => "internal_inconsistency",
        }
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        match e {
            ArithError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            ArithError::Inconsistent(_) => CliError::Internal(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::InvalidModel(_) => CliError::Invalid(e.to_string()),
            CurveError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            CurveError::Arith(a) => a.into(),
        }
    }
}

impl From<ZetaError> for CliError {
    fn from(e: ZetaError) -> Self {
        match e {
            ZetaError::Curve(c) => c.into(),
            ZetaError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            ZetaError::NonIntegralCoefficient { .. } | ZetaError::WeilBoundViolation { .. } => {
                CliError::Internal(e.to_string())
            }
        }
    }
}

impl From<StrataError> for CliError {
    fn from(e: StrataError) -> Self {
        match e {
            StrataError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<PolygonError> for CliError {
    fn from(e: PolygonError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<CyclicError> for CliError {
    fn from(e: CyclicError) -> Self {
        match e {
            CyclicError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            CyclicError::NonIntegralSignature { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<FamiliesError> for CliError {
    fn from(e: FamiliesError) -> Self {
        match e {
            FamiliesError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            FamiliesError::Inconsistent(_) => CliError::Internal(e.to_string()),
            FamiliesError::Arith(a) => a.into(),
            FamiliesError::Curve(c) => c.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}
