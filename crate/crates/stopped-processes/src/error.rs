use fock_core::FockError;
use qsc_integrals::QscError;
use std::fmt;
use stopping_times::QstError;

#[derive(Debug, Clone, PartialEq)]
pub enum StopError {
    Fock(FockError),
    Qsc(QscError),
    Qst(QstError),
    /// The operation needs a martingale with a closing operator.
    NotAClosedMartingale(String),
    /// Wrong adaptedness kind for this stopping operation.
    KindContract { expected: &'static str, got: &'static str },
    GridMismatch,
}

impl fmt::Display for StopError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StopError::Fock(e) => write!(f, "{e}"),
            StopError::Qsc(e) => write!(f, "{e}"),
            StopError::Qst(e) => write!(f, "{e}"),
            StopError::NotAClosedMartingale(msg) => write!(f, "not a closed martingale: {msg}"),
            StopError::KindContract { expected, got } => {
                write!(f, "contract error: expected a {expected} process, got {got}")
            }
            StopError::GridMismatch => write!(f, "values live on different grids"),
        }
    }
}

impl std::error::Error for StopError {}

impl From<FockError> for StopError {
    fn from(e: FockError) -> Self {
        StopError::Fock(e)
    }
}

impl From<QscError> for StopError {
    fn from(e: QscError) -> Self {
        StopError::Qsc(e)
    }
}

impl From<QstError> for StopError {
    fn from(e: QstError) -> Self {
        StopError::Qst(e)
    }
}
