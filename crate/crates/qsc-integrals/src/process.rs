//! Grid-indexed operator families with a declared adaptedness kind and an
//! optional closing operator at infinity.

use crate::error::QscError;
use fock_core::{
    e_projection, eps_exact, is_identity_adapted, is_vacuum_adapted, pi_id, pi_vac, FockOperator,
    Grid,
};

/// Multiplicity space dimension. The calculus here is scalar-noise
/// (`mul = ℂ`), so every `I_mul ⊗ ·` decoration is the identity.
pub const MUL_DIM: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProcessKind {
    /// No adaptedness requirement.
    General,
    /// `X_j` commutes with `E_j` for all `j`.
    Adapted,
    /// Vacuum adapted: `E_j X_j E_j = X_j`.
    Vacuum,
    /// Identity adapted: `X_j = X_past ⊗ I_future` at every `j`.
    Identity,
}

impl ProcessKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProcessKind::General => "general",
            ProcessKind::Adapted => "adapted",
            ProcessKind::Vacuum => "vacuum",
            ProcessKind::Identity => "identity",
        }
    }
}

/// A process `(X_{t_j})_{j=0..n}` plus an optional value at infinity.
/// When no closing is supplied the value at infinity is the zero operator.
#[derive(Clone, Debug)]
pub struct Process {
    grid: Grid,
    kind: ProcessKind,
    ops: Vec<FockOperator>,
    closing: Option<FockOperator>,
}

impl Process {
    pub fn new(
        grid: Grid,
        kind: ProcessKind,
        ops: Vec<FockOperator>,
        closing: Option<FockOperator>,
    ) -> Result<Process, QscError> {
        if ops.len() != grid.n_cells() + 1 {
            return Err(QscError::WrongLength { expected: grid.n_cells() + 1, got: ops.len() });
        }
        for (j, op) in ops.iter().enumerate() {
            if !op.grid().same_as(&grid) {
                return Err(QscError::GridMismatch);
            }
            let ok = match kind {
                ProcessKind::General => true,
                ProcessKind::Adapted => {
                    let e = e_projection(grid, j)?;
                    let comm = op.mul(&e).frobenius_diff(&e.mul(op));
                    comm <= eps_exact(&grid)
                }
                ProcessKind::Vacuum => is_vacuum_adapted(op, j)?,
                ProcessKind::Identity => is_identity_adapted(op, j)?,
            };
            if !ok {
                let residual = match kind {
                    ProcessKind::Vacuum => op.frobenius_diff(&pi_vac(op, j)?),
                    ProcessKind::Identity => op.frobenius_diff(&pi_id(op, j)?),
                    _ => f64::NAN,
                };
                return Err(QscError::AdaptednessViolation { time_index: j, residual });
            }
        }
        if let Some(c) = &closing {
            if !c.grid().same_as(&grid) {
                return Err(QscError::GridMismatch);
            }
        }
        Ok(Process { grid, kind, ops, closing })
    }

    pub fn from_fn(
        grid: Grid,
        kind: ProcessKind,
        f: impl FnMut(usize) -> FockOperator,
    ) -> Result<Process, QscError> {
        let ops = (0..=grid.n_cells()).map(f).collect();
        Process::new(grid, kind, ops, None)
    }

    /// Constant process with the operator as every value (and as closing).
    pub fn constant(op: FockOperator, kind: ProcessKind) -> Result<Process, QscError> {
        let grid = *op.grid();
        let ops = vec![op.clone(); grid.n_cells() + 1];
        Process::new(grid, kind, ops, Some(op))
    }

    /// The closed vacuum-adapted martingale `π̌(Z) = (E_j Z E_j)_j`, closed by `Z`.
    pub fn closed_vacuum_martingale(z: &FockOperator) -> Result<Process, QscError> {
        let grid = *z.grid();
        let ops = (0..=grid.n_cells())
            .map(|j| pi_vac(z, j))
            .collect::<Result<Vec<_>, _>>()?;
        Process::new(grid, ProcessKind::Vacuum, ops, Some(z.clone()))
    }

    /// The closed identity-adapted martingale `π̂(Z)`, closed by `Z`.
    pub fn closed_identity_martingale(z: &FockOperator) -> Result<Process, QscError> {
        let grid = *z.grid();
        let ops = (0..=grid.n_cells())
            .map(|j| pi_id(z, j))
            .collect::<Result<Vec<_>, _>>()?;
        Process::new(grid, ProcessKind::Identity, ops, Some(z.clone()))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn kind(&self) -> ProcessKind {
        self.kind
    }

    pub fn value(&self, j: usize) -> &FockOperator {
        &self.ops[j]
    }

    pub fn values(&self) -> &[FockOperator] {
        &self.ops
    }

    /// Value at infinity: the closing operator, or zero when none was given.
    pub fn closing(&self) -> FockOperator {
        self.closing.clone().unwrap_or_else(|| FockOperator::zero(self.grid))
    }

    pub fn closing_opt(&self) -> Option<&FockOperator> {
        self.closing.as_ref()
    }

    pub fn with_closing(mut self, closing: FockOperator) -> Process {
        self.closing = Some(closing);
        self
    }

    /// Pointwise product, with the best kind the two factors support.
    pub fn pointwise_mul(&self, other: &Process) -> Result<Process, QscError> {
        if !self.grid.same_as(&other.grid) {
            return Err(QscError::GridMismatch);
        }
        let kind = match (self.kind, other.kind) {
            (a, b) if a == b => a,
            (ProcessKind::General, _) | (_, ProcessKind::General) => ProcessKind::General,
            _ => ProcessKind::Adapted,
        };
        let ops = (0..=self.grid.n_cells())
            .map(|j| self.ops[j].mul(&other.ops[j]))
            .collect();
        let closing = match (&self.closing, &other.closing) {
            (Some(a), Some(b)) => Some(a.mul(b)),
            _ => None,
        };
        Process::new(self.grid, kind, ops, closing)
    }

    /// True when `E_j · X_∞ · E_j = X_j E_j` for every `j` (so the closing
    /// operator really closes the martingale).
    pub fn is_closed_by_its_closing(&self) -> Result<bool, QscError> {
        let closing = match &self.closing {
            Some(c) => c.clone(),
            None => return Ok(false),
        };
        let tol = eps_exact(&self.grid);
        for j in 0..=self.grid.n_cells() {
            let e = e_projection(self.grid, j)?;
            let lhs = e.mul(&closing).mul(&e);
            let rhs = self.ops[j].mul(&e);
            if lhs.frobenius_diff(&rhs) > tol {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Martingale test: `E_j X_k E_j = X_j E_j` for all `j ≤ k`.
pub fn is_martingale(x: &Process) -> Result<bool, QscError> {
    if x.kind() == ProcessKind::General {
        return Err(QscError::KindContract { expected: "adapted", got: "general" });
    }
    let grid = *x.grid();
    let tol = eps_exact(&grid);
    for j in 0..=grid.n_cells() {
        let e = e_projection(grid, j)?;
        let xje = x.value(j).mul(&e);
        for k in j..=grid.n_cells() {
            let lhs = e.mul(x.value(k)).mul(&e);
            if lhs.frobenius_diff(&xje) > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
