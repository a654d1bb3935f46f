use fock_core::FockError;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum QscError {
    Fock(FockError),
    /// An operation needed a specific adaptedness kind.
    KindContract { expected: &'static str, got: &'static str },
    /// A process value fails the adaptedness declared by its kind.
    AdaptednessViolation { time_index: usize, residual: f64 },
    GridMismatch,
    WrongLength { expected: usize, got: usize },
    /// A closed-martingale operation got a process that is not a martingale
    /// or has no closing operator.
    NotAClosedMartingale(String),
}

impl fmt::Display for QscError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QscError::Fock(e) => write!(f, "{e}"),
            QscError::KindContract { expected, got } => {
                write!(f, "contract error: expected a {expected} process, got {got}")
            }
            QscError::AdaptednessViolation { time_index, residual } => write!(
                f,
                "process value at index {time_index} violates its adaptedness (residual {residual:.3e})"
            ),
            QscError::GridMismatch => write!(f, "processes live on different grids"),
            QscError::WrongLength { expected, got } => {
                write!(f, "expected {expected} operators, got {got}")
            }
            QscError::NotAClosedMartingale(msg) => write!(f, "not a closed martingale: {msg}"),
        }
    }
}

impl std::error::Error for QscError {}

impl From<FockError> for QscError {
    fn from(e: FockError) -> Self {
        QscError::Fock(e)
    }
}
