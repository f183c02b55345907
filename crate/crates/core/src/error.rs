use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// Caller passed arguments that make no sense for the operation
    /// (empty factor list, bad subsystem index, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// A value violates a documented invariant (non-Hermitian input,
    /// non-unit trace, negative eigenvalue, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// Invalid configuration value.
    #[error("config error: {0}")]
    Config(String),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    /// A gap between coupled levels vanished numerically.
    #[error("degenerate gap {gap:e} between coupled levels")]
    DegenerateGap { gap: f64 },

    /// The ground state of the instantaneous Hamiltonian is not unique.
    #[error("degenerate ground state (gap {gap:e})")]
    DegenerateGroundState { gap: f64 },

    /// Input is formally valid but numerically degenerate (e.g. zero purity).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error on {path}: {message}")]
    Csv { path: PathBuf, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Whether the error stems from bad input or configuration rather than a
    /// runtime failure. The CLI maps this to its exit code.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Usage(_) | Error::Validation(_) | Error::Config(_)
        )
    }
}
