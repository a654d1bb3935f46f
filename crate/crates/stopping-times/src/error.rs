use crate::qst::TimePoint;
use fock_core::FockError;
use qsc_integrals::QscError;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum QstError {
    Fock(FockError),
    Qsc(QscError),
    /// An atom fails `P = P² = P†`.
    AtomNotProjection { at: TimePoint, residual: f64 },
    /// Two atoms fail orthogonality.
    AtomsNotOrthogonal { residual: f64 },
    /// The atoms do not sum to the identity.
    AtomsDontResolveIdentity { residual: f64 },
    /// A cumulative projection is not identity adapted at its own time.
    CumulativeNotAdapted { time_index: usize, residual: f64 },
    /// The atom at time zero must be 0 or I.
    ZeroAtomNotScalar,
    GridMismatch,
    MalformedPartition(String),
    /// Lattice reconstruction left residuals beyond the eigenvalue tolerance.
    LatticeTolerance(String),
    Json(String),
}

impl fmt::Display for QstError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QstError::Fock(e) => write!(f, "{e}"),
            QstError::Qsc(e) => write!(f, "{e}"),
            QstError::AtomNotProjection { at, residual } => {
                write!(f, "atom at {at:?} is not a projection (residual {residual:.3e})")
            }
            QstError::AtomsNotOrthogonal { residual } => {
                write!(f, "atoms are not mutually orthogonal (residual {residual:.3e})")
            }
            QstError::AtomsDontResolveIdentity { residual } => {
                write!(f, "atoms do not sum to the identity (residual {residual:.3e})")
            }
            QstError::CumulativeNotAdapted { time_index, residual } => write!(
                f,
                "cumulative projection at index {time_index} is not identity adapted (residual {residual:.3e})"
            ),
            QstError::ZeroAtomNotScalar => {
                write!(f, "the atom at time zero must be 0 or the identity")
            }
            QstError::GridMismatch => write!(f, "stopping times live on different grids"),
            QstError::MalformedPartition(msg) => write!(f, "malformed partition: {msg}"),
            QstError::LatticeTolerance(msg) => write!(f, "lattice tolerance exceeded: {msg}"),
            QstError::Json(msg) => write!(f, "stopping-time JSON: {msg}"),
        }
    }
}

impl std::error::Error for QstError {}

impl From<FockError> for QstError {
    fn from(e: FockError) -> Self {
        QstError::Fock(e)
    }
}

impl From<QscError> for QstError {
    fn from(e: QscError) -> Self {
        QstError::Qsc(e)
    }
}
