use thiserror::Error;

/// Errors raised by the numerical layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {0} outside supported range 2..=8")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("trace is {re} + {im}i, expected 1")]
    InvalidTrace { re: f64, im: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPsd(f64),

    #[error("Bloch vector length {0} exceeds 1")]
    BlochOutOfBall(f64),

    #[error("Jacobi eigensolver did not converge (off-diagonal residual {residual:.3e} after {sweeps} sweeps)")]
    EigenNonConvergence { residual: f64, sweeps: usize },

    #[error("fidelity {0} outside [0, 1] beyond rounding tolerance")]
    FidelityOutOfRange(f64),

    #[error("QFI ill-posed: pure state with radial velocity (r.v = {0:.3e})")]
    IllPosedQfi(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integration failed at step {step}: {reason}")]
    IntegrationFailure { step: usize, reason: String },

    #[error("no stationary state found: {0}")]
    NoStationaryState(String),

    #[error("numerical failure at grid index {index}: {source}")]
    AtGridIndex {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("non-finite speed at grid index {0}")]
    NonFiniteSpeed(usize),

    #[error("average speed undefined for zero horizon")]
    UndefinedAverage,

    #[error("inconsistency: Bures angle {angle} exceeds path length {length} (tolerance {tolerance})")]
    AngleExceedsLength { angle: f64, length: f64, tolerance: f64 },

    #[error("initial state is not pure (purity {0})")]
    MixedInitialState(f64),

    #[error("frozen dynamics: average {0} speed is zero")]
    FrozenDynamics(&'static str),

    #[error("model: {0}")]
    Model(String),
}

impl Error {
    pub(crate) fn at(self, index: usize) -> Error {
        Error::AtGridIndex {
            index,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
