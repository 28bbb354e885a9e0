use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// Interpolation nodes do not determine a unique polynomial of the requested degree.
    #[error("nodes are not unisolvent: rank drop at pivot {pivot} (rank {rank} < {required})")]
    Unisolvence {
        pivot: usize,
        rank: usize,
        required: usize,
    },

    /// Least-squares nodes are not determining for the requested degree.
    #[error("nodes are not polynomial-determining: rank {rank} < {required}")]
    NotDetermining { rank: usize, required: usize },

    #[error("singular triangular system: diagonal entry {index} is {value:e}")]
    SingularSystem { index: usize, value: f64 },

    /// NNLS hit its iteration cap; `best` holds the last feasible iterate.
    #[error("NNLS did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        best: Vec<f64>,
    },

    #[error("point extraction failed: {0}")]
    ExtractionFailure(String),

    #[error("compressed moments off by {residual:e} (tolerance {tol:e})")]
    QualityFailure { residual: f64, tol: f64 },

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for failures caused by the numerics rather than by the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NumericalFailure(_)
                | Error::Unisolvence { .. }
                | Error::NotDetermining { .. }
                | Error::SingularSystem { .. }
                | Error::NonConvergence { .. }
                | Error::ExtractionFailure(_)
                | Error::QualityFailure { .. }
        )
    }
}
