//! Meet and join of stopping times through their cumulative families:
//! `(S ∧ T)([0,t]) = S([0,t]) ∨ T([0,t])` and dually for `S ∨ T`.

use crate::error::QstError;
use crate::qst::{from_parts_unchecked, QuantumStoppingTime, TimePoint};
use fock_core::{
    eigh, join_projections, meet_projections, spectral_projector, FockOperator, Grid,
};
use std::collections::BTreeMap;

fn rebuild_from_cumulatives(
    grid: Grid,
    cumulative: Vec<FockOperator>,
) -> Result<QuantumStoppingTime, QstError> {
    let mut atoms: BTreeMap<TimePoint, FockOperator> = BTreeMap::new();
    let mut prev = FockOperator::zero(grid);
    for (j, c) in cumulative.iter().enumerate() {
        let raw = c.sub(&prev);
        if raw.frobenius_norm() > 1e-9 {
            // Differences of nested projections are projections; clip the
            // eigenvalue leakage the spectral lattice ops leave behind.
            let eig = eigh(raw.matrix());
            if eig.values.iter().any(|&l| l < -1e-6 || (l > 1e-6 && l < 1.0 - 1e-6)) {
                return Err(QstError::LatticeTolerance(format!(
                    "cumulative difference at index {j} has interior spectrum"
                )));
            }
            let proj = spectral_projector(&eig, |l| l > 0.5);
            atoms.insert(
                TimePoint::Finite(j),
                FockOperator::from_matrix(grid, proj)?,
            );
        }
        prev = c.clone();
    }
    let inf = FockOperator::identity(grid).sub(&prev);
    if inf.frobenius_norm() > 1e-9 {
        let eig = eigh(inf.matrix());
        let proj = spectral_projector(&eig, |l| l > 0.5);
        atoms.insert(TimePoint::Infinity, FockOperator::from_matrix(grid, proj)?);
    }
    let candidate = from_parts_unchecked(grid, atoms);
    QuantumStoppingTime::new(grid, candidate.atoms().clone())
        .map_err(|e| QstError::LatticeTolerance(format!("reconstructed atoms invalid: {e}")))
}

/// `S ∧ T`, with cumulative projections `S([0,t]) ∨ T([0,t])`.
pub fn qst_meet(
    s: &QuantumStoppingTime,
    t: &QuantumStoppingTime,
) -> Result<QuantumStoppingTime, QstError> {
    if !s.grid().same_as(t.grid()) {
        return Err(QstError::GridMismatch);
    }
    let grid = *s.grid();
    let mut cumulative = Vec::with_capacity(grid.n_cells() + 1);
    for j in 0..=grid.n_cells() {
        let cs = s.cumulative(j).into_projection_checked()?;
        let ct = t.cumulative(j).into_projection_checked()?;
        cumulative.push(join_projections(&cs, &ct)?);
    }
    rebuild_from_cumulatives(grid, cumulative)
}

/// `S ∨ T`, with cumulative projections `S([0,t]) ∧ T([0,t])`.
pub fn qst_join(
    s: &QuantumStoppingTime,
    t: &QuantumStoppingTime,
) -> Result<QuantumStoppingTime, QstError> {
    if !s.grid().same_as(t.grid()) {
        return Err(QstError::GridMismatch);
    }
    let grid = *s.grid();
    let mut cumulative = Vec::with_capacity(grid.n_cells() + 1);
    for j in 0..=grid.n_cells() {
        let cs = s.cumulative(j).into_projection_checked()?;
        let ct = t.cumulative(j).into_projection_checked()?;
        cumulative.push(meet_projections(&cs, &ct)?);
    }
    rebuild_from_cumulatives(grid, cumulative)
}
