//! Vectors of the toy Fock space, indexed by occupation bitmasks, and the
//! discrete coherent (exponential) vectors built from step-function samples.

use crate::error::FockError;
use crate::grid::Grid;
use crate::matrix::C_ZERO;
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct FockVector {
    grid: Grid,
    amp: Vec<Complex64>,
}

impl FockVector {
    pub fn new(grid: Grid, amp: Vec<Complex64>) -> Result<FockVector, FockError> {
        if amp.len() != grid.dim() {
            return Err(FockError::Shape { expected: grid.dim(), got: amp.len() });
        }
        Ok(FockVector { grid, amp })
    }

    pub fn zero(grid: Grid) -> FockVector {
        FockVector { grid, amp: vec![C_ZERO; grid.dim()] }
    }

    /// The vacuum `ε(0) = (1, 0, …, 0)`.
    pub fn vacuum(grid: Grid) -> FockVector {
        let mut amp = vec![C_ZERO; grid.dim()];
        amp[0] = Complex64::new(1.0, 0.0);
        FockVector { grid, amp }
    }

    /// Discrete coherent vector `ε(f) = ⊗_k (1, f_k√dt)`: the amplitude of
    /// mask `m` is `∏_{k ∈ m} f_k√dt`, so `amp[0] = 1` always.
    pub fn exponential(grid: Grid, samples: &[Complex64]) -> Result<FockVector, FockError> {
        if samples.len() != grid.n_cells() {
            return Err(FockError::Shape { expected: grid.n_cells(), got: samples.len() });
        }
        let sqrt_dt = grid.dt().sqrt();
        let dim = grid.dim();
        let mut amp = vec![Complex64::new(1.0, 0.0); dim];
        for m in 1..dim {
            let k = m.trailing_zeros() as usize;
            amp[m] = amp[m & (m - 1)] * samples[k] * sqrt_dt;
        }
        Ok(FockVector { grid, amp })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amp
    }

    /// Inner product, conjugate-linear in `self` and linear in `other`.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        self.amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let amp = self.amp.iter().zip(&other.amp).map(|(a, b)| a + b).collect();
        FockVector { grid: self.grid, amp }
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let amp = self.amp.iter().zip(&other.amp).map(|(a, b)| a - b).collect();
        FockVector { grid: self.grid, amp }
    }

    pub fn scale(&self, c: Complex64) -> FockVector {
        FockVector { grid: self.grid, amp: self.amp.iter().map(|a| a * c).collect() }
    }

    /// Annihilation `a_k`: moves the amplitude of each mask with cell `k`
    /// occupied down to the mask with it emptied.
    pub fn annihilate(&self, k: usize) -> Result<FockVector, FockError> {
        self.grid.check_cell(k)?;
        let bit = 1usize << k;
        let mut amp = vec![C_ZERO; self.amp.len()];
        for (m, &a) in self.amp.iter().enumerate() {
            if m & bit != 0 {
                amp[m ^ bit] = a;
            }
        }
        Ok(FockVector { grid: self.grid, amp })
    }

    /// Creation `a†_k`, the adjoint of [`annihilate`](Self::annihilate).
    pub fn create(&self, k: usize) -> Result<FockVector, FockError> {
        self.grid.check_cell(k)?;
        let bit = 1usize << k;
        let mut amp = vec![C_ZERO; self.amp.len()];
        for (m, &a) in self.amp.iter().enumerate() {
            if m & bit == 0 {
                amp[m | bit] = a;
            }
        }
        Ok(FockVector { grid: self.grid, amp })
    }

    /// Projects cells `≥ j` onto the vacuum: keeps masks below `2^j`.
    pub fn project_past(&self, j: usize) -> Result<FockVector, FockError> {
        self.grid.check_time_index(j)?;
        let cut = 1usize << j;
        let amp = self
            .amp
            .iter()
            .enumerate()
            .map(|(m, &a)| if m < cut { a } else { C_ZERO })
            .collect();
        Ok(FockVector { grid: self.grid, amp })
    }
}

/// Adapted gradient `D_k = E_k ∘ a_k`: on coherent vectors
/// `D_k ε(f) = f_k√dt · ε(1_{[0,t_k)} f)`.
pub fn adapted_gradient(x: &FockVector, k: usize) -> Result<FockVector, FockError> {
    x.annihilate(k)?.project_past(k)
}

/// Plain gradient `∇_k = a_k`: `∇_k ε(f) = f_k√dt · ε(f with cell k vacuumed)`.
pub fn gradient(x: &FockVector, k: usize) -> Result<FockVector, FockError> {
    x.annihilate(k)
}

/// `⟨ε(f), ε(g)⟩ = ∏_k (1 + conj(f_k) g_k dt)`, without building the vectors.
pub fn coherent_inner(grid: &Grid, f: &[Complex64], g: &[Complex64]) -> Complex64 {
    let dt = grid.dt();
    f.iter()
        .zip(g)
        .map(|(a, b)| Complex64::new(1.0, 0.0) + a.conj() * b * dt)
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vacuum_is_exponential_of_zero() {
        let g = Grid::new(2, 1.0).unwrap();
        let v = FockVector::vacuum(g);
        let e0 = FockVector::exponential(g, &[C_ZERO, C_ZERO]).unwrap();
        assert_eq!(v.amplitudes(), e0.amplitudes());
        assert!((v.inner(&v) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn two_cell_exponential_by_hand() {
        // grid(2, 1.0), f = (1, 1): amplitudes (1, √.5, √.5, .5) over masks 00,01,10,11.
        let g = Grid::new(2, 1.0).unwrap();
        let f = [c(1.0, 0.0), c(1.0, 0.0)];
        let e = FockVector::exponential(g, &f).unwrap();
        let r = 0.5f64.sqrt();
        let expect = [c(1.0, 0.0), c(r, 0.0), c(r, 0.0), c(0.5, 0.0)];
        for (a, b) in e.amplitudes().iter().zip(&expect) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn annihilation_on_coherent() {
        // a_k ε(f) = f_k√dt ε(f with cell k zeroed)
        let g = Grid::new(3, 1.5).unwrap();
        let f = [c(0.3, -0.2), c(1.1, 0.4), c(-0.8, 0.9)];
        let e = FockVector::exponential(g, &f).unwrap();
        for k in 0..3 {
            let lhs = e.annihilate(k).unwrap();
            let mut fz = f;
            fz[k] = C_ZERO;
            let rhs = FockVector::exponential(g, &fz)
                .unwrap()
                .scale(f[k] * g.dt().sqrt());
            assert!(lhs.sub(&rhs).norm() < 1e-14);
        }
    }

    #[test]
    fn adapted_gradient_examples() {
        let g = Grid::new(3, 1.0).unwrap();
        // D_k Ω = 0
        let omega = FockVector::vacuum(g);
        for k in 0..3 {
            assert!(adapted_gradient(&omega, k).unwrap().norm() < 1e-15);
        }
        // D_0 ε(f) = f_0 √dt Ω
        let f = [c(0.7, 0.1), c(-0.3, 0.5), c(0.2, 0.2)];
        let e = FockVector::exponential(g, &f).unwrap();
        let d0 = adapted_gradient(&e, 0).unwrap();
        let rhs = omega.scale(f[0] * g.dt().sqrt());
        assert!(d0.sub(&rhs).norm() < 1e-14);
    }
}
