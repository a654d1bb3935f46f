//! The particle-count stopping family: `S_n` stops as soon as more than
//! `n_level` particles have appeared, and its time projection coincides with
//! the projection onto at most `n_level + 1` particles.

use crate::error::QstError;
use crate::qst::{from_parts_unchecked, QuantumStoppingTime, TimePoint};
use fock_core::{CMatrix, Complex64, FockOperator, Grid, C_ONE, C_ZERO};
use std::collections::BTreeMap;

fn weight_below(mask: usize, j: usize) -> u32 {
    (mask & ((1usize << j) - 1)).count_ones()
}

/// `S_n([0,t_j])` keeps the masks with more than `n_level` occupied cells
/// before `t_j`; the atoms are the first-crossing indicators.
pub fn chaos_qst(grid: Grid, n_level: usize) -> Result<QuantumStoppingTime, QstError> {
    let dim = grid.dim();
    let n = grid.n_cells();
    let mut diag: BTreeMap<TimePoint, Vec<Complex64>> = BTreeMap::new();
    for m in 0..dim {
        let mut at = TimePoint::Infinity;
        for j in 1..=n {
            if weight_below(m, j) > n_level as u32 {
                at = TimePoint::Finite(j);
                break;
            }
        }
        diag.entry(at).or_insert_with(|| vec![C_ZERO; dim])[m] = C_ONE;
    }
    let atoms = diag
        .into_iter()
        .map(|(at, d)| {
            (at, FockOperator::from_matrix(grid, CMatrix::diagonal(&d)).expect("square"))
        })
        .collect();
    Ok(from_parts_unchecked(grid, atoms))
}

/// Projection onto total particle number at most `n_level`.
pub fn chaos_projection(grid: Grid, n_level: usize) -> Result<FockOperator, QstError> {
    let dim = grid.dim();
    let diag: Vec<Complex64> = (0..dim)
        .map(|m| if (m as u64).count_ones() as usize <= n_level { C_ONE } else { C_ZERO })
        .collect();
    Ok(FockOperator::from_matrix(grid, CMatrix::diagonal(&diag))?)
}

/// Operator-norm distance between the diagonal of `E_{S_{n_level}}` and the
/// diagonal of `P_{n_level+1}`, computed mask by mask so grids up to the
/// full 16-cell budget stay cheap.
pub fn chaos_residual_diagonal(n_cells: usize, n_level: usize) -> f64 {
    let dim = 1usize << n_cells;
    let mut worst = 0.0f64;
    for m in 0..dim {
        // stopping index: first j with more than n_level particles before j
        let mut stop: Option<usize> = None;
        for j in 1..=n_cells {
            if weight_below(m, j) > n_level as u32 {
                stop = Some(j);
                break;
            }
        }
        // E_S diagonal entry: the atom at the stopping index pairs with E_j,
        // which keeps the mask iff no cell at or beyond j is occupied.
        let e_s = match stop {
            None => 1.0, // mass at infinity, E_∞ = I
            Some(j) => {
                if m >> j == 0 {
                    1.0
                } else {
                    0.0
                }
            }
        };
        let p: f64 = if (m as u64).count_ones() as usize <= n_level + 1 { 1.0 } else { 0.0 };
        worst = worst.max((e_s - p).abs());
    }
    worst
}
