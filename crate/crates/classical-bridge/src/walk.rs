//! Bernoulli-coordinate models of the toy Fock space. Outcome masks carry
//! one coordinate per cell (up/down for the symmetric walk, jump/no-jump for
//! the counting walk); the chaos basis of products of centred normalised
//! coordinates matches the occupation basis, giving the unitary `U`.

use crate::error::BridgeError;
use fock_core::{CMatrix, Complex64, FockOperator, FockVector, Grid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkFlavor {
    /// p = 1/2 per cell; ±1 coordinates; Brownian motion in the limit.
    Symmetric,
    /// p = dt per cell; counting coordinates; Poisson process in the limit.
    Poisson,
}

#[derive(Clone, Debug)]
pub struct WalkModel {
    grid: Grid,
    flavor: WalkFlavor,
    jump_prob: f64,
    /// `u[ω, m] = √p_ω · χ_m(ω)`: maps Fock coordinates to L² coordinates in
    /// the `δ_ω/√p_ω` basis. Unitary; column 0 is the constant function.
    u: CMatrix,
}

pub fn walk_model(grid: Grid, flavor: WalkFlavor) -> Result<WalkModel, BridgeError> {
    let p = match flavor {
        WalkFlavor::Symmetric => 0.5,
        WalkFlavor::Poisson => {
            if grid.dt() >= 1.0 {
                return Err(BridgeError::CellProbabilityOutOfRange { dt: grid.dt() });
            }
            grid.dt()
        }
    };
    if grid.n_cells() > fock_core::MAX_DENSE_CELLS {
        return Err(BridgeError::Fock(fock_core::FockError::DenseBudget {
            n_cells: grid.n_cells(),
            max: fock_core::MAX_DENSE_CELLS,
        }));
    }
    let n = grid.n_cells();
    let dim = grid.dim();
    // centred normalised coordinate values at ξ = 1 and ξ = 0
    let y1 = ((1.0 - p) / p).sqrt();
    let y0 = -(p / (1.0 - p)).sqrt();
    let mut u = CMatrix::zeros(dim, dim);
    for omega in 0..dim {
        let jumps = (omega as u32).count_ones() as i32;
        let p_omega = p.powi(jumps) * (1.0 - p).powi(n as i32 - jumps);
        let sqrt_p = p_omega.sqrt();
        for m in 0..dim {
            let mut chi = 1.0f64;
            for k in 0..n {
                if m & (1 << k) != 0 {
                    chi *= if omega & (1 << k) != 0 { y1 } else { y0 };
                }
            }
            u[(omega, m)] = Complex64::new(sqrt_p * chi, 0.0);
        }
    }
    Ok(WalkModel { grid, flavor, jump_prob: p, u })
}

impl WalkModel {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn flavor(&self) -> WalkFlavor {
        self.flavor
    }

    pub fn jump_prob(&self) -> f64 {
        self.jump_prob
    }

    pub fn basis(&self) -> &CMatrix {
        &self.u
    }

    /// Probability of an outcome mask.
    pub fn prob(&self, omega: usize) -> f64 {
        let n = self.grid.n_cells() as i32;
        let jumps = (omega as u32).count_ones() as i32;
        self.jump_prob.powi(jumps) * (1.0 - self.jump_prob).powi(n - jumps)
    }

    /// Fock-side operator of multiplication by a function of the outcome:
    /// `U† diag(f) U`.
    pub fn multiplication_operator(
        &self,
        values: &[Complex64],
    ) -> Result<FockOperator, BridgeError> {
        let dim = self.grid.dim();
        if values.len() != dim {
            return Err(BridgeError::WrongLength { expected: dim, got: values.len() });
        }
        let diag = CMatrix::diagonal(values);
        let mat = self.u.adjoint().matmul(&diag).matmul(&self.u);
        Ok(FockOperator::from_matrix(self.grid, mat)?)
    }

    /// L² coordinates (in the δ/√p basis) of a Fock vector.
    pub fn to_l2(&self, v: &FockVector) -> Vec<Complex64> {
        self.u.apply(v.amplitudes())
    }

    /// Function values on outcomes of a Fock vector: `(Uv)(ω)/√p_ω`.
    pub fn to_function(&self, v: &FockVector) -> Vec<Complex64> {
        self.to_l2(v)
            .into_iter()
            .enumerate()
            .map(|(omega, c)| c / self.prob(omega).sqrt())
            .collect()
    }

    /// Fock-side conjugation of an L²-basis matrix: `U† A U`.
    pub fn to_fock(&self, a: &CMatrix) -> Result<FockOperator, BridgeError> {
        let mat = self.u.adjoint().matmul(a).matmul(&self.u);
        Ok(FockOperator::from_matrix(self.grid, mat)?)
    }

    /// L²-basis form of a Fock operator: `U Z U†`.
    pub fn from_fock(&self, z: &FockOperator) -> CMatrix {
        self.u.matmul(z.matrix()).matmul(&self.u.adjoint())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_is_unitary_and_maps_vacuum_to_ones() {
        for (flavor, n, t_max) in [
            (WalkFlavor::Symmetric, 3usize, 1.0),
            (WalkFlavor::Poisson, 4, 1.0),
        ] {
            let grid = Grid::new(n, t_max).unwrap();
            let model = walk_model(grid, flavor).unwrap();
            let u = model.basis();
            let utu = u.adjoint().matmul(u);
            assert!(utu.diff_frobenius(&CMatrix::identity(grid.dim())) <= 1e-12);
            // U Ω = the constant-one random variable (√p_ω coordinates)
            let omega_vec = FockVector::vacuum(grid);
            let ones = model.to_function(&omega_vec);
            for c in ones {
                assert!((c - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn symmetric_single_cell_matches_hand_basis() {
        // one cell: chaos basis (1, X)/ with X = ±1; U columns are
        // (√p, √p) and (√p·X(ω)).
        let grid = Grid::new(1, 1.0).unwrap();
        let model = walk_model(grid, WalkFlavor::Symmetric).unwrap();
        let r = 0.5f64.sqrt();
        let u = model.basis();
        assert!((u[(0, 0)].re - r).abs() < 1e-14);
        assert!((u[(1, 0)].re - r).abs() < 1e-14);
        assert!((u[(0, 1)].re + r).abs() < 1e-14); // no-jump outcome: X = −1
        assert!((u[(1, 1)].re - r).abs() < 1e-14);
    }

    #[test]
    fn poisson_rejects_coarse_grids() {
        let grid = Grid::new(1, 1.0).unwrap();
        assert!(matches!(
            walk_model(grid, WalkFlavor::Poisson),
            Err(BridgeError::CellProbabilityOutOfRange { .. })
        ));
    }
}
