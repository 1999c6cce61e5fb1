use thiserror::Error;

/// Errors raised by matrix validation, spectral functionals and state constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("trace is not 1 (got {trace})")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPositive { eigenvalue: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {offdiag:.3e})")]
    NoConvergence { sweeps: usize, offdiag: f64 },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid photon-number distribution: {0}")]
    InvalidDistribution(String),

    #[error("reference dimension {0} is too small (need at least 2)")]
    DimensionTooSmall(usize),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Fock truncation too severe: residual {residual:.3e} exceeds {limit:.1e}")]
    TruncationTooSevere { residual: f64, limit: f64 },

    #[error("complex amplitudes are not supported by the damped closed form")]
    ComplexAmplitudeUnsupported,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
