//! Quantum stopping times: projection-valued measures on the grid times plus
//! infinity whose cumulative projections are identity adapted.

use crate::error::QstError;
use fock_core::{
    eps_exact, is_identity_adapted, min_eigenvalue, pi_id, FockOperator, Grid, EPS_LATTICE,
};
use std::collections::BTreeMap;

/// A support point: a grid time index or infinity. `Finite(j)` refers to the
/// grid time `t_j`; the horizon index `n` is a finite point, with infinity
/// kept distinct so that mass at infinity stops nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TimePoint {
    Finite(usize),
    Infinity,
}

impl TimePoint {
    pub fn is_finite(&self) -> bool {
        matches!(self, TimePoint::Finite(_))
    }
}

/// A quantum stopping time: mutually orthogonal atom projections summing to
/// the identity, indexed by support points, with every cumulative projection
/// `S([0, t_j])` identity adapted at `t_j` and `S({0}) ∈ {0, I}`.
#[derive(Clone, Debug)]
pub struct QuantumStoppingTime {
    grid: Grid,
    atoms: BTreeMap<TimePoint, FockOperator>,
}

impl QuantumStoppingTime {
    pub fn new(
        grid: Grid,
        atoms: BTreeMap<TimePoint, FockOperator>,
    ) -> Result<QuantumStoppingTime, QstError> {
        let tol = eps_exact(&grid);
        for (at, op) in &atoms {
            if !op.grid().same_as(&grid) {
                return Err(QstError::GridMismatch);
            }
            if let TimePoint::Finite(j) = at {
                if *j > grid.n_cells() {
                    return Err(QstError::Fock(fock_core::FockError::IndexOutOfRange {
                        index: *j,
                        bound: grid.n_cells() + 1,
                    }));
                }
            }
            let idem = op.mul(op).frobenius_diff(op);
            let herm = op.frobenius_diff(&op.adjoint());
            let residual = idem.max(herm);
            if residual > tol {
                return Err(QstError::AtomNotProjection { at: *at, residual });
            }
        }
        // Pairwise orthogonality.
        let list: Vec<&FockOperator> = atoms.values().collect();
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let residual = list[i].mul(list[j]).frobenius_norm();
                if residual > tol {
                    return Err(QstError::AtomsNotOrthogonal { residual });
                }
            }
        }
        // Total mass.
        let mut total = FockOperator::zero(grid);
        for op in atoms.values() {
            total = total.add(op);
        }
        let residual = total.frobenius_diff(&FockOperator::identity(grid));
        if residual > tol {
            return Err(QstError::AtomsDontResolveIdentity { residual });
        }
        // The atom at zero is scalar: 0 or I.
        if let Some(op) = atoms.get(&TimePoint::Finite(0)) {
            let zero = op.frobenius_norm() <= tol;
            let one = op.frobenius_diff(&FockOperator::identity(grid)) <= tol;
            if !zero && !one {
                return Err(QstError::ZeroAtomNotScalar);
            }
        }
        let st = QuantumStoppingTime { grid, atoms };
        // Cumulative adaptedness at every grid time.
        for j in 0..=grid.n_cells() {
            let c = st.cumulative(j);
            if !is_identity_adapted(&c, j)? {
                let residual = c.frobenius_diff(&pi_id(&c, j)?);
                return Err(QstError::CumulativeNotAdapted { time_index: j, residual });
            }
        }
        Ok(st)
    }

    /// The non-random time `t_j` (or infinity): a single atom `I`.
    pub fn deterministic(grid: Grid, at: TimePoint) -> QuantumStoppingTime {
        let mut atoms = BTreeMap::new();
        atoms.insert(at, FockOperator::identity(grid));
        QuantumStoppingTime { grid, atoms }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn atoms(&self) -> &BTreeMap<TimePoint, FockOperator> {
        &self.atoms
    }

    /// Support points with a stored atom (zero atoms may appear if supplied).
    pub fn support(&self) -> Vec<TimePoint> {
        self.atoms.keys().copied().collect()
    }

    /// `S({at})`, the zero operator when no atom is stored there.
    pub fn atom(&self, at: TimePoint) -> FockOperator {
        self.atoms.get(&at).cloned().unwrap_or_else(|| FockOperator::zero(self.grid))
    }

    /// `S([0, t_j])`.
    pub fn cumulative(&self, j: usize) -> FockOperator {
        let mut acc = FockOperator::zero(self.grid);
        for (at, op) in &self.atoms {
            if let TimePoint::Finite(i) = at {
                if *i <= j {
                    acc = acc.add(op);
                }
            }
        }
        acc
    }

    /// `S((t_j, ∞]) = I − S([0, t_j])`.
    pub fn tail(&self, j: usize) -> FockOperator {
        FockOperator::identity(self.grid).sub(&self.cumulative(j))
    }

    /// `S([t_{j0}, t_{j1}])` over the closed index interval; pass
    /// `TimePoint::Infinity` as the upper end to include the mass at infinity.
    pub fn interval_mass(&self, from: TimePoint, to: TimePoint) -> Result<FockOperator, QstError> {
        if to < from {
            return Err(QstError::MalformedPartition(format!("empty interval {from:?}..{to:?}")));
        }
        let mut acc = FockOperator::zero(self.grid);
        for (at, op) in &self.atoms {
            if *at >= from && *at <= to {
                acc = acc.add(op);
            }
        }
        Ok(acc)
    }
}

/// Partial order: `S ≤ T` iff `S([0,t]) ≥ T([0,t])` for all `t`, decided by
/// the smallest eigenvalue of the differences.
pub fn qst_le(s: &QuantumStoppingTime, t: &QuantumStoppingTime) -> Result<bool, QstError> {
    if !s.grid().same_as(t.grid()) {
        return Err(QstError::GridMismatch);
    }
    for j in 0..=s.grid().n_cells() {
        let diff = s.cumulative(j).sub(&t.cumulative(j));
        if min_eigenvalue(diff.matrix()) < -EPS_LATTICE {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `S ∧ t_j`: atoms strictly before `j` kept, all remaining mass moved to `j`.
pub fn qst_min_const(s: &QuantumStoppingTime, j: usize) -> QuantumStoppingTime {
    let grid = *s.grid();
    let mut atoms = BTreeMap::new();
    let mut kept = FockOperator::zero(grid);
    for (at, op) in s.atoms() {
        if let TimePoint::Finite(i) = at {
            if *i < j {
                atoms.insert(*at, op.clone());
                kept = kept.add(op);
            }
        }
    }
    let rest = FockOperator::identity(grid).sub(&kept);
    if rest.frobenius_norm() > 0.5 * eps_exact(&grid) {
        let merged = match atoms.remove(&TimePoint::Finite(j)) {
            Some(prev) => prev.add(&rest),
            None => rest,
        };
        atoms.insert(TimePoint::Finite(j), merged);
    }
    QuantumStoppingTime { grid, atoms }
}

pub(crate) fn from_parts_unchecked(
    grid: Grid,
    atoms: BTreeMap<TimePoint, FockOperator>,
) -> QuantumStoppingTime {
    QuantumStoppingTime { grid, atoms }
}
