use crate::error::FockError;

/// Hard cap on the number of time cells; the space dimension is `2^n_cells`.
pub const MAX_CELLS: usize = 16;

/// Dense operators stop here. Vectors and structure-aware code may still use
/// grids up to [`MAX_CELLS`].
pub const MAX_DENSE_CELLS: usize = 12;

/// A uniform partition of `[0, t_max]` into `n_cells` cells of width `dt`.
///
/// Each cell carries one two-level mode, so the toy Fock space has dimension
/// `2^n_cells` and basis vectors indexed by occupation bitmasks (bit `k` set
/// means cell `k` is occupied). Grid time `t_j = j·dt` sits between cells
/// `j-1` and `j`; the space factorises exactly as past ⊗ future there.
#[derive(Clone, Copy, Debug)]
pub struct Grid {
    n_cells: usize,
    t_max: f64,
    dt: f64,
}

impl Grid {
    pub fn new(n_cells: usize, t_max: f64) -> Result<Grid, FockError> {
        if n_cells == 0 || n_cells > MAX_CELLS {
            return Err(FockError::Config(format!(
                "n_cells must be in 1..={MAX_CELLS}, got {n_cells}"
            )));
        }
        if t_max.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || !t_max.is_finite() {
            return Err(FockError::Config(format!("t_max must be positive, got {t_max}")));
        }
        let dt = t_max / n_cells as f64;
        Ok(Grid { n_cells, t_max, dt })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Hilbert-space dimension `2^n_cells`.
    pub fn dim(&self) -> usize {
        1 << self.n_cells
    }

    /// Grid time `t_j = j·dt` for `j = 0..=n_cells`.
    pub fn time(&self, j: usize) -> f64 {
        j as f64 * self.dt
    }

    /// Refined grid with `factor` times as many cells over the same horizon.
    pub fn refine(&self, factor: usize) -> Result<Grid, FockError> {
        Grid::new(self.n_cells * factor, self.t_max)
    }

    pub fn same_as(&self, other: &Grid) -> bool {
        self.n_cells == other.n_cells && self.t_max == other.t_max
    }

    pub(crate) fn check_cell(&self, k: usize) -> Result<(), FockError> {
        if k >= self.n_cells {
            Err(FockError::IndexOutOfRange { index: k, bound: self.n_cells })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_time_index(&self, j: usize) -> Result<(), FockError> {
        if j > self.n_cells {
            Err(FockError::IndexOutOfRange { index: j, bound: self.n_cells + 1 })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_dense(&self) -> Result<(), FockError> {
        if self.n_cells > MAX_DENSE_CELLS {
            Err(FockError::DenseBudget { n_cells: self.n_cells, max: MAX_DENSE_CELLS })
        } else {
            Ok(())
        }
    }
}

/// Frobenius-norm tolerance for identities that hold exactly in the model:
/// `1e-10 · 2^n_cells` absorbs double-precision accumulation across products.
pub fn eps_exact(grid: &Grid) -> f64 {
    1e-10 * grid.dim() as f64
}

/// Eigenvalue tolerance for the spectral projection-lattice routines.
pub const EPS_LATTICE: f64 = 1e-8;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_arithmetic() {
        let g = Grid::new(1, 1.0).unwrap();
        assert_eq!(g.dt(), 1.0);
        assert_eq!(g.dim(), 2);
        let g = Grid::new(4, 1.0).unwrap();
        assert_eq!(g.dt(), 0.25);
        assert_eq!(g.dim(), 16);
        assert!((g.dt() * g.n_cells() as f64 - g.t_max()).abs() < 1e-14 * g.t_max());
    }

    #[test]
    fn grid_bounds() {
        assert!(Grid::new(17, 1.0).is_err());
        assert!(Grid::new(0, 1.0).is_err());
        assert!(Grid::new(4, 0.0).is_err());
        assert!(Grid::new(4, -1.0).is_err());
        assert!(Grid::new(16, 2.0).is_ok());
    }
}
