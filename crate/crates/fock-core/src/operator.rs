//! Operators on the toy Fock space: per-cell creation/annihilation/number,
//! the time projections `E_j`, past-factor compression and ampliation, and
//! the vacuum-adapted (`π̌`) and identity-adapted (`π̂`) compressions.

use crate::error::FockError;
use crate::grid::{eps_exact, Grid};
use crate::matrix::{CMatrix, C_ONE, C_ZERO};
use crate::vector::FockVector;
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellKind {
    Create,
    Annihilate,
    Number,
}

#[derive(Clone, Debug)]
pub struct FockOperator {
    grid: Grid,
    mat: CMatrix,
    projection: bool,
}

impl FockOperator {
    pub fn from_matrix(grid: Grid, mat: CMatrix) -> Result<FockOperator, FockError> {
        if !mat.is_square() || mat.rows() != grid.dim() {
            return Err(FockError::DimensionMismatch { expected: grid.dim(), got: mat.rows() });
        }
        Ok(FockOperator { grid, mat, projection: false })
    }

    pub fn zero(grid: Grid) -> FockOperator {
        FockOperator { grid, mat: CMatrix::zeros(grid.dim(), grid.dim()), projection: false }
    }

    pub fn identity(grid: Grid) -> FockOperator {
        FockOperator { grid, mat: CMatrix::identity(grid.dim()), projection: true }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn is_flagged_projection(&self) -> bool {
        self.projection
    }

    /// Validates `P = P² = P†` at the exact-tier tolerance and flags the value.
    pub fn into_projection_checked(mut self) -> Result<FockOperator, FockError> {
        let tol = eps_exact(&self.grid);
        let idem = self.mat.matmul(&self.mat).diff_frobenius(&self.mat);
        let herm = self.mat.diff_frobenius(&self.mat.adjoint());
        let residual = idem.max(herm);
        if residual > tol {
            return Err(FockError::NotAProjection { residual });
        }
        self.projection = true;
        Ok(self)
    }

    pub(crate) fn flagged_projection(grid: Grid, mat: CMatrix) -> FockOperator {
        FockOperator { grid, mat, projection: true }
    }

    pub fn mul(&self, other: &FockOperator) -> FockOperator {
        FockOperator { grid: self.grid, mat: self.mat.matmul(&other.mat), projection: false }
    }

    pub fn add(&self, other: &FockOperator) -> FockOperator {
        FockOperator { grid: self.grid, mat: self.mat.add(&other.mat), projection: false }
    }

    pub fn sub(&self, other: &FockOperator) -> FockOperator {
        FockOperator { grid: self.grid, mat: self.mat.sub(&other.mat), projection: false }
    }

    pub fn scale(&self, c: Complex64) -> FockOperator {
        FockOperator { grid: self.grid, mat: self.mat.scale(c), projection: false }
    }

    pub fn adjoint(&self) -> FockOperator {
        FockOperator { grid: self.grid, mat: self.mat.adjoint(), projection: self.projection }
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        FockVector::new(self.grid, self.mat.apply(v.amplitudes())).expect("dimensions agree")
    }

    pub fn frobenius_diff(&self, other: &FockOperator) -> f64 {
        self.mat.diff_frobenius(&other.mat)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.frobenius_norm()
    }

    /// `⟨Ω, Z Ω⟩`, the vacuum state.
    pub fn vacuum_state(&self) -> Complex64 {
        self.mat[(0, 0)]
    }

    /// `a†_k · self · a_k` computed by index transport, with no products.
    pub fn gauge_sandwich(&self, k: usize) -> Result<FockOperator, FockError> {
        self.grid.check_cell(k)?;
        let bit = 1usize << k;
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for m in 0..d {
            if m & bit == 0 {
                continue;
            }
            for mp in 0..d {
                if mp & bit == 0 {
                    continue;
                }
                out[(m, mp)] = self.mat[(m ^ bit, mp ^ bit)];
            }
        }
        Ok(FockOperator { grid: self.grid, mat: out, projection: false })
    }

    /// `self · a_k` by index transport.
    pub fn mul_annihilate_right(&self, k: usize) -> Result<FockOperator, FockError> {
        self.grid.check_cell(k)?;
        let bit = 1usize << k;
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for m in 0..d {
            for mp in 0..d {
                if mp & bit != 0 {
                    out[(m, mp)] = self.mat[(m, mp ^ bit)];
                }
            }
        }
        Ok(FockOperator { grid: self.grid, mat: out, projection: false })
    }

    /// `a†_k · self` by index transport.
    pub fn mul_create_left(&self, k: usize) -> Result<FockOperator, FockError> {
        self.grid.check_cell(k)?;
        let bit = 1usize << k;
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for m in 0..d {
            if m & bit == 0 {
                continue;
            }
            for mp in 0..d {
                out[(m, mp)] = self.mat[(m ^ bit, mp)];
            }
        }
        Ok(FockOperator { grid: self.grid, mat: out, projection: false })
    }

    /// `E_j · self · E_j`: zeroes every row and column whose mask has an
    /// occupied cell at or beyond `j`.
    pub fn e_sandwich(&self, j: usize) -> Result<FockOperator, FockError> {
        self.grid.check_time_index(j)?;
        let cut = 1usize << j;
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for m in 0..cut.min(d) {
            for mp in 0..cut.min(d) {
                out[(m, mp)] = self.mat[(m, mp)];
            }
        }
        Ok(FockOperator { grid: self.grid, mat: out, projection: false })
    }
}

/// Unnormalised cell operator acting on cell `k`'s two-level factor:
/// annihilate maps occupied to empty, create is its adjoint, number counts.
pub fn cell_op(grid: Grid, k: usize, kind: CellKind) -> Result<FockOperator, FockError> {
    grid.check_cell(k)?;
    grid.check_dense()?;
    let bit = 1usize << k;
    let d = grid.dim();
    let mut mat = CMatrix::zeros(d, d);
    for m in 0..d {
        match kind {
            CellKind::Annihilate => {
                if m & bit != 0 {
                    mat[(m ^ bit, m)] = C_ONE;
                }
            }
            CellKind::Create => {
                if m & bit == 0 {
                    mat[(m | bit, m)] = C_ONE;
                }
            }
            CellKind::Number => {
                if m & bit != 0 {
                    mat[(m, m)] = C_ONE;
                }
            }
        }
    }
    Ok(FockOperator { grid, mat, projection: kind == CellKind::Number })
}

/// The time projection `E_{t_j} = I_{<j} ⊗ |Ω⟩⟨Ω|_{≥j}`: keeps the masks with
/// no occupied cell at or beyond `j`. `E_0` is the vacuum projector and
/// `E_{n}` is the identity.
pub fn e_projection(grid: Grid, j: usize) -> Result<FockOperator, FockError> {
    grid.check_time_index(j)?;
    grid.check_dense()?;
    let d = grid.dim();
    let cut = 1usize << j;
    let mut mat = CMatrix::zeros(d, d);
    for m in 0..d.min(cut) {
        mat[(m, m)] = C_ONE;
    }
    Ok(FockOperator { grid, mat, projection: true })
}

/// Reads the past-factor block of `Z` at the cut `j`: the submatrix over
/// masks below `2^j` (future cells in the vacuum on both sides).
pub fn compress_past(z: &FockOperator, j: usize) -> Result<CMatrix, FockError> {
    z.grid().check_time_index(j)?;
    let cut = 1usize << j;
    Ok(CMatrix::from_fn(cut, cut, |m, mp| z.matrix()[(m, mp)]))
}

/// Ampliates a past-factor operator to the whole space: `X ⊗ I_future`.
pub fn ampliate_past(grid: Grid, x: &CMatrix, j: usize) -> Result<FockOperator, FockError> {
    grid.check_time_index(j)?;
    grid.check_dense()?;
    let cut = 1usize << j;
    if !x.is_square() || x.rows() != cut {
        return Err(FockError::DimensionMismatch { expected: cut, got: x.rows() });
    }
    let d = grid.dim();
    let mask = cut - 1;
    let mut mat = CMatrix::zeros(d, d);
    for m in 0..d {
        let (mf, mp_past) = (m & !mask, m & mask);
        for past in 0..cut {
            let v = x[(mp_past, past)];
            if v != C_ZERO {
                mat[(m, mf | past)] = v;
            }
        }
    }
    Ok(FockOperator { grid, mat, projection: false })
}

/// Vacuum-adapted compression `π̌(Z)_j = E_j Z E_j`.
pub fn pi_vac(z: &FockOperator, j: usize) -> Result<FockOperator, FockError> {
    z.e_sandwich(j)
}

/// Identity-adapted compression `π̂(Z)_j`: the past block of `E_j Z E_j`
/// ampliated by the identity on the future factor. At `j = 0` this is
/// `⟨Ω, ZΩ⟩·I`.
pub fn pi_id(z: &FockOperator, j: usize) -> Result<FockOperator, FockError> {
    let block = compress_past(z, j)?;
    ampliate_past(*z.grid(), &block, j)
}

pub fn is_vacuum_adapted(z: &FockOperator, j: usize) -> Result<bool, FockError> {
    let tol = eps_exact(z.grid());
    Ok(z.frobenius_diff(&pi_vac(z, j)?) <= tol)
}

pub fn is_identity_adapted(z: &FockOperator, j: usize) -> Result<bool, FockError> {
    let tol = eps_exact(z.grid());
    Ok(z.frobenius_diff(&pi_id(z, j)?) <= tol)
}

/// Largest singular value.
pub fn operator_norm(z: &FockOperator) -> f64 {
    crate::eigen::operator_norm(z.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::FockVector;

    fn grid2() -> Grid {
        Grid::new(2, 1.0).unwrap()
    }

    #[test]
    fn single_cell_annihilator_matrix() {
        let g = Grid::new(1, 1.0).unwrap();
        let a = cell_op(g, 0, CellKind::Annihilate).unwrap();
        // σ⁻ = [[0,1],[0,0]]
        assert_eq!(a.matrix()[(0, 1)], C_ONE);
        assert_eq!(a.matrix()[(0, 0)], C_ZERO);
        assert_eq!(a.matrix()[(1, 0)], C_ZERO);
        assert_eq!(a.matrix()[(1, 1)], C_ZERO);
    }

    #[test]
    fn ccr_truncation_on_each_cell() {
        let g = grid2();
        for k in 0..2 {
            let a = cell_op(g, k, CellKind::Annihilate).unwrap();
            let ad = cell_op(g, k, CellKind::Create).unwrap();
            let anti = ad.mul(&a).add(&a.mul(&ad));
            assert!(anti.frobenius_diff(&FockOperator::identity(g)) < 1e-14);
            let n = cell_op(g, k, CellKind::Number).unwrap();
            assert!(ad.mul(&a).frobenius_diff(&n) < 1e-14);
            assert!(ad.frobenius_diff(&a.adjoint()) < 1e-14);
        }
    }

    #[test]
    fn e_projection_endpoints() {
        let g = grid2();
        let e0 = e_projection(g, 0).unwrap();
        assert_eq!(e0.matrix()[(0, 0)], C_ONE);
        assert!((e0.matrix().trace() - C_ONE).norm() < 1e-15);
        let en = e_projection(g, 2).unwrap();
        assert!(en.frobenius_diff(&FockOperator::identity(g)) < 1e-15);
    }

    #[test]
    fn e_projection_cuts_coherent_vectors() {
        // n=2, j=1, f=(1,1), dt=.5: E_1 ε(f) has amplitudes (1, √.5, 0, 0).
        let g = grid2();
        let f = [C_ONE, C_ONE];
        let e = FockVector::exponential(g, &f).unwrap();
        let cut = e_projection(g, 1).unwrap().apply(&e);
        let r = 0.5f64.sqrt();
        let expect = [1.0, r, 0.0, 0.0];
        for (a, b) in cut.amplitudes().iter().zip(&expect) {
            assert!((a - Complex64::new(*b, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn compress_ampliate_round_trip() {
        let g = grid2();
        let x = CMatrix::from_fn(2, 2, |i, j| Complex64::new((i + 2 * j) as f64, 1.0));
        let amp = ampliate_past(g, &x, 1).unwrap();
        let back = compress_past(&amp, 1).unwrap();
        assert!(back.diff_frobenius(&x) < 1e-15);
        // compress(I, j) = I_{2^j}, compress(E_j, j) = I_{2^j}
        let id = FockOperator::identity(g);
        assert!(compress_past(&id, 1).unwrap().diff_frobenius(&CMatrix::identity(2)) < 1e-15);
        let e1 = e_projection(g, 1).unwrap();
        assert!(compress_past(&e1, 1).unwrap().diff_frobenius(&CMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn pi_maps_at_the_endpoints() {
        let g = grid2();
        let z = FockOperator::from_matrix(
            g,
            CMatrix::from_fn(4, 4, |i, j| Complex64::new((i * 4 + j) as f64, (i as f64) - (j as f64))),
        )
        .unwrap();
        // at j = n both compressions are the identity map
        assert!(pi_vac(&z, 2).unwrap().frobenius_diff(&z) < 1e-14);
        assert!(pi_id(&z, 2).unwrap().frobenius_diff(&z) < 1e-14);
        // π̌(Z)_0 = ⟨Ω,ZΩ⟩ |Ω⟩⟨Ω|, π̂(Z)_0 = ⟨Ω,ZΩ⟩ I
        let v = z.vacuum_state();
        let p0 = pi_vac(&z, 0).unwrap();
        let want = e_projection(g, 0).unwrap().scale(v);
        assert!(p0.frobenius_diff(&want) < 1e-14);
        let i0 = pi_id(&z, 0).unwrap();
        assert!(i0.frobenius_diff(&FockOperator::identity(g).scale(v)) < 1e-14);
        // π̂(E_j)_j = I
        let e1 = e_projection(g, 1).unwrap();
        assert!(pi_id(&e1, 1).unwrap().frobenius_diff(&FockOperator::identity(g)) < 1e-14);
    }

    #[test]
    fn adaptedness_checks() {
        let g = grid2();
        let e1 = e_projection(g, 1).unwrap();
        assert!(is_vacuum_adapted(&e1, 1).unwrap());
        // cell ops on past cells are identity adapted; on future cells they are not
        let n0 = cell_op(g, 0, CellKind::Number).unwrap();
        assert!(is_identity_adapted(&n0, 1).unwrap());
        let n1 = cell_op(g, 1, CellKind::Number).unwrap();
        assert!(!is_identity_adapted(&n1, 1).unwrap());
    }

    #[test]
    fn index_transport_matches_products() {
        let g = grid2();
        let z = FockOperator::from_matrix(
            g,
            CMatrix::from_fn(4, 4, |i, j| Complex64::new((3 * i + j) as f64, (i as f64) * 0.5 - j as f64)),
        )
        .unwrap();
        for k in 0..2 {
            let a = cell_op(g, k, CellKind::Annihilate).unwrap();
            let ad = cell_op(g, k, CellKind::Create).unwrap();
            assert!(z.gauge_sandwich(k).unwrap().frobenius_diff(&ad.mul(&z).mul(&a)) < 1e-13);
            assert!(z.mul_annihilate_right(k).unwrap().frobenius_diff(&z.mul(&a)) < 1e-13);
            assert!(z.mul_create_left(k).unwrap().frobenius_diff(&ad.mul(&z)) < 1e-13);
        }
        for j in 0..=2 {
            let e = e_projection(g, j).unwrap();
            assert!(z.e_sandwich(j).unwrap().frobenius_diff(&e.mul(&z).mul(&e)) < 1e-13);
        }
    }

    #[test]
    fn vacuum_state_examples() {
        let g = grid2();
        assert!((FockOperator::identity(g).vacuum_state() - C_ONE).norm() < 1e-15);
        for j in 0..=2 {
            assert!((e_projection(g, j).unwrap().vacuum_state() - C_ONE).norm() < 1e-15);
        }
        for k in 0..2 {
            assert!(cell_op(g, k, CellKind::Number).unwrap().vacuum_state().norm() < 1e-15);
        }
    }
}
