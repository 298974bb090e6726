use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimension {0} outside the supported range 1..=64")]
    InvalidDimension(usize),
    #[error("expected {expected} entries, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not Hermitian (relative defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})")]
    NotPsd { min_eig: f64 },
    #[error("matrix is not invertible (min eigenvalue {min_eig:.3e} <= {eps:.1e})")]
    NotInvertible { min_eig: f64, eps: f64 },
    #[error("weight is not positive definite (min eigenvalue {min_eig:.3e} <= {eps:.1e})")]
    NotPositiveDefinite { min_eig: f64, eps: f64 },
    #[error("vector is not a unit vector (norm {norm})")]
    NotUnitVector { norm: f64 },
    #[error("lambda = {0} is outside [0, 1]")]
    LambdaOutOfRange(f64),
    #[error("element is not a-positive")]
    NotAPositive,
    #[error("elements are not (a,lambda)-parallel (defect {defect:.3e})")]
    NotParallel { defect: f64 },
    #[error("dimension {n} exceeds the oracle limit {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("direction has zero (a,lambda)-norm")]
    ZeroDirection,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
