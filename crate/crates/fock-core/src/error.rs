use std::fmt;

/// Errors raised by grid construction and operator/vector plumbing.
#[derive(Debug, Clone, PartialEq)]
pub enum FockError {
    /// Bad grid parameters (cell count out of range, non-positive horizon).
    Config(String),
    /// A sample vector or amplitude vector has the wrong length.
    Shape { expected: usize, got: usize },
    /// Cell or time index outside the grid.
    IndexOutOfRange { index: usize, bound: usize },
    /// Two values built over different grids were combined.
    GridMismatch,
    /// Matrix dimension does not match the grid dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// An operator flagged (or required) as a projection fails `P² = P = P†`.
    NotAProjection { residual: f64 },
    /// Dense matrices above this grid size are refused outright.
    DenseBudget { n_cells: usize, max: usize },
}

impl fmt::Display for FockError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FockError::Config(msg) => write!(f, "configuration error: {msg}"),
            FockError::Shape { expected, got } => {
                write!(f, "shape error: expected length {expected}, got {got}")
            }
            FockError::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
            FockError::GridMismatch => write!(f, "values live on different grids"),
            FockError::DimensionMismatch { expected, got } => {
                write!(f, "matrix dimension {got} does not match grid dimension {expected}")
            }
            FockError::NotAProjection { residual } => {
                write!(f, "operator is not a projection (residual {residual:.3e})")
            }
            FockError::DenseBudget { n_cells, max } => {
                write!(f, "dense operators limited to {max} cells, requested {n_cells}")
            }
        }
    }
}

impl std::error::Error for FockError {}
