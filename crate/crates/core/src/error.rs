use thiserror::Error;

/// Errors raised by the numerical kernel, state and channel constructors and
/// the distinguishability routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max |m - m^dagger| = {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite value in input")]
    NonFinite,
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),
    #[error("trace is {trace:.12}, expected 1")]
    NotNormalized { trace: f64 },
    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
    #[error("unitary is not in SU(2) (|det - 1| = {residual:.3e})")]
    NotSpecialUnitary { residual: f64 },
    #[error("Kraus operators are not trace preserving (completeness residual {residual:.3e})")]
    NotTracePreserving { residual: f64 },
    #[error("measurement vectors do not resolve the identity (residual {residual:.3e})")]
    IncompletePovm { residual: f64 },
    #[error("unitaries are identical up to a global phase; no finite number of copies suffices")]
    Never,
    #[error("ensemble is empty")]
    EmptyEnsemble,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown property suite `{0}`")]
    UnknownSuite(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
