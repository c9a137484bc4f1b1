use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// `PrecisionLoss` and `Indeterminate` are "we could not certify an answer"
/// outcomes; the rest are genuine failures of a precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroDivision,
    #[error("coefficient root unavailable in Q: {0}")]
    CoeffRootUnavailable(String),
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("pole at the expansion center")]
    PoleAtCenter,
    #[error("pole inside the disk")]
    PoleInDisk,
    #[error("infinite Weierstrass degree")]
    InfiniteWdeg,
    #[error("hyperbolic distance is undefined for Type I points")]
    TypeIUnsupported,
    #[error("the two points coincide")]
    SamePoint,
    #[error("invalid phi1: {0}")]
    InvalidPhi1(String),
    #[error("point is not fixed")]
    NotFixed,
    #[error("map is not a contraction: rdeg*q = {0}")]
    NotContracting(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    /// True for the outcomes that mean "not decidable at this precision / over Q".
    pub fn is_indeterminate(&self) -> bool {
        matches!(
            self,
            Error::PrecisionLoss(_) | Error::Indeterminate(_) | Error::CoeffRootUnavailable(_)
        )
    }

    pub(crate) fn precision(msg: impl Into<String>) -> Self {
        Error::PrecisionLoss(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
