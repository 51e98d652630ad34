use thiserror::Error;

use crate::approx::ApproxFeasibilityReport;
use crate::pair_solver::InfeasibilityCertificate;
use crate::realization::FeasibilityReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {detail}")]
    Dimension { op: &'static str, detail: String },

    #[error("invalid scalar {text:?}: {reason}")]
    Scalar { text: String, reason: &'static str },

    #[error("matrix is not a {{1}}-inverse of {what}")]
    NotG1Inverse { what: &'static str },

    #[error("no common solution: {}", .0.failed_conditions().join(", "))]
    NoCommonSolution(Box<InfeasibilityCertificate>),

    #[error("no realization exists: {}", .0.failed_conditions().join(", "))]
    Infeasible(Box<FeasibilityReport>),

    #[error(
        "no realization within tolerance: {} (residuals: kernel {:e}, image {:e}, interlock {:e})",
        .0.failed_conditions().join(", "),
        .0.kernel_residual,
        .0.image_residual,
        .0.interlock_residual
    )]
    ApproxInfeasible(Box<ApproxFeasibilityReport>),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("{location}: {message}")]
    Document { location: String, message: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn doc(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Document {
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn dim(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Dimension {
            op,
            detail: detail.into(),
        }
    }
}
