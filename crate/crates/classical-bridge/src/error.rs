use fock_core::FockError;
use std::fmt;
use stopping_times::QstError;

#[derive(Debug, Clone, PartialEq)]
pub enum BridgeError {
    Fock(FockError),
    Qst(QstError),
    /// The Poisson flavour needs `dt < 1` (one Bernoulli jump per cell).
    CellProbabilityOutOfRange { dt: f64 },
    /// A classical stopping time whose level sets look into the future.
    TauNotAdapted { time_index: usize },
    /// Operation only defined for the counting (Poisson) flavour.
    WrongFlavor,
    WrongLength { expected: usize, got: usize },
}

impl fmt::Display for BridgeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BridgeError::Fock(e) => write!(f, "{e}"),
            BridgeError::Qst(e) => write!(f, "{e}"),
            BridgeError::CellProbabilityOutOfRange { dt } => {
                write!(f, "poisson flavour needs dt < 1, got {dt}")
            }
            BridgeError::TauNotAdapted { time_index } => {
                write!(f, "stopping rule looks beyond coordinate {time_index}")
            }
            BridgeError::WrongFlavor => write!(f, "operation requires the poisson flavour"),
            BridgeError::WrongLength { expected, got } => {
                write!(f, "expected {expected} values, got {got}")
            }
        }
    }
}

impl std::error::Error for BridgeError {}

impl From<FockError> for BridgeError {
    fn from(e: FockError) -> Self {
        BridgeError::Fock(e)
    }
}

impl From<QstError> for BridgeError {
    fn from(e: QstError) -> Self {
        BridgeError::Qst(e)
    }
}
