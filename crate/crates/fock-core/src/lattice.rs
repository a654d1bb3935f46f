//! Meet and join of orthogonal projections, computed spectrally: the meet is
//! the eigenspace of `P + Q` with eigenvalues at 2, the join is the
//! complement of the meet of the complements.

use crate::eigen::{eigh, spectral_projector};
use crate::error::FockError;
use crate::grid::{Grid, EPS_LATTICE};
use crate::matrix::CMatrix;
use crate::operator::FockOperator;
use num_complex::Complex64;
use rand::Rng;

fn require_projection(p: &FockOperator) -> Result<(), FockError> {
    if p.is_flagged_projection() {
        Ok(())
    } else {
        p.clone().into_projection_checked().map(|_| ())
    }
}

/// Projection onto `range(P) ∩ range(Q)`.
pub fn meet_projections(p: &FockOperator, q: &FockOperator) -> Result<FockOperator, FockError> {
    require_projection(p)?;
    require_projection(q)?;
    if !p.grid().same_as(q.grid()) {
        return Err(FockError::GridMismatch);
    }
    let sum = p.matrix().add(q.matrix());
    let eig = eigh(&sum);
    let proj = spectral_projector(&eig, |lambda| lambda >= 2.0 - EPS_LATTICE);
    Ok(FockOperator::flagged_projection(*p.grid(), proj))
}

/// Projection onto `range(P) + range(Q)`, via `P ∨ Q = (P⊥ ∧ Q⊥)⊥`.
pub fn join_projections(p: &FockOperator, q: &FockOperator) -> Result<FockOperator, FockError> {
    require_projection(p)?;
    require_projection(q)?;
    if !p.grid().same_as(q.grid()) {
        return Err(FockError::GridMismatch);
    }
    let id = FockOperator::identity(*p.grid());
    let meet = meet_projections(
        &FockOperator::flagged_projection(*p.grid(), id.matrix().sub(p.matrix())),
        &FockOperator::flagged_projection(*p.grid(), id.matrix().sub(q.matrix())),
    )?;
    Ok(FockOperator::flagged_projection(*p.grid(), id.matrix().sub(meet.matrix())))
}

/// Haar-ish random unitary from QR of a complex Gaussian matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    g.orthonormalized_columns()
}

/// Random Hermitian with entries of order one.
pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    g.add(&g.adjoint()).scale(Complex64::new(0.5, 0.0))
}

/// Random projection of the given rank: `U diag(1,…,1,0,…,0) U†`.
pub fn random_projection_matrix(dim: usize, rank: usize, rng: &mut impl Rng) -> CMatrix {
    assert!(rank <= dim);
    let u = random_unitary(dim, rng);
    let mut p = CMatrix::zeros(dim, dim);
    for r in 0..rank {
        for i in 0..dim {
            let vi = u[(i, r)];
            for j in 0..dim {
                p[(i, j)] += vi * u[(j, r)].conj();
            }
        }
    }
    p
}

/// Random orthogonal projection that is identity adapted at time `j`: a
/// random projector on the past factor, ampliated by the identity on the
/// future. Reproducible from the caller's seeded stream.
pub fn random_adapted_projection(
    grid: Grid,
    j: usize,
    rng: &mut impl Rng,
) -> Result<FockOperator, FockError> {
    grid.check_time_index(j)?;
    let d_past = 1usize << j;
    let rank = if d_past == 1 {
        // at j = 0 the only adapted projections are 0 and I
        if rng.gen::<bool>() {
            1
        } else {
            0
        }
    } else {
        rng.gen_range(1..d_past)
    };
    let block = random_projection_matrix(d_past, rank, rng);
    let op = crate::operator::ampliate_past(grid, &block, j)?;
    Ok(FockOperator::flagged_projection(grid, op.matrix().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::e_projection;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn meet_of_nested_time_projections() {
        let g = Grid::new(3, 1.0).unwrap();
        for i in 0..=3usize {
            for j in 0..=3usize {
                let ei = e_projection(g, i).unwrap();
                let ej = e_projection(g, j).unwrap();
                let m = meet_projections(&ei, &ej).unwrap();
                let emin = e_projection(g, i.min(j)).unwrap();
                assert!(m.frobenius_diff(&emin) < 1e-10);
            }
        }
    }

    #[test]
    fn meet_with_self_and_identity() {
        let g = Grid::new(2, 1.0).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let p = random_adapted_projection(g, 2, &mut rng).unwrap();
        assert!(meet_projections(&p, &p).unwrap().frobenius_diff(&p) < 1e-9);
        let id = FockOperator::identity(g);
        assert!(meet_projections(&p, &id).unwrap().frobenius_diff(&p) < 1e-9);
    }

    #[test]
    fn commuting_meet_is_the_product() {
        let g = Grid::new(3, 1.0).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(99);
        // commuting pair: common eigenbasis, 0/1 diagonals
        let u = random_unitary(g.dim(), &mut rng);
        let da: Vec<Complex64> =
            (0..g.dim()).map(|_| Complex64::new(if rng.gen::<bool>() { 1.0 } else { 0.0 }, 0.0)).collect();
        let db: Vec<Complex64> =
            (0..g.dim()).map(|_| Complex64::new(if rng.gen::<bool>() { 1.0 } else { 0.0 }, 0.0)).collect();
        let p = FockOperator::flagged_projection(
            g,
            u.matmul(&CMatrix::diagonal(&da)).matmul(&u.adjoint()),
        );
        let q = FockOperator::flagged_projection(
            g,
            u.matmul(&CMatrix::diagonal(&db)).matmul(&u.adjoint()),
        );
        let m = meet_projections(&p, &q).unwrap();
        assert!(m.frobenius_diff(&p.mul(&q)) < 1e-9);
        let j = join_projections(&p, &q).unwrap();
        let want = p.add(&q).sub(&p.mul(&q));
        assert!(j.frobenius_diff(&want) < 1e-9);
    }

    #[test]
    fn alternating_products_cross_check() {
        // von Neumann: (PQP)^m → P ∧ Q strongly.
        let g = Grid::new(2, 1.0).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let p = FockOperator::flagged_projection(g, random_projection_matrix(4, 2, &mut rng));
        let q = FockOperator::flagged_projection(g, random_projection_matrix(4, 3, &mut rng));
        let meet = meet_projections(&p, &q).unwrap();
        let mut alt = p.mul(&q).mul(&p);
        for _ in 0..200 {
            alt = p.mul(&q).mul(&p).mul(&alt);
        }
        assert!(alt.frobenius_diff(&meet) < 1e-5);
    }

    #[test]
    fn random_adapted_projection_is_adapted_and_reproducible() {
        let g = Grid::new(3, 1.0).unwrap();
        for j in 0..=3 {
            let mut rng = ChaCha20Rng::seed_from_u64(42);
            let p = random_adapted_projection(g, j, &mut rng).unwrap();
            assert!(crate::operator::is_identity_adapted(&p, j).unwrap());
            assert!(p.clone().into_projection_checked().is_ok());
            let mut rng2 = ChaCha20Rng::seed_from_u64(42);
            let p2 = random_adapted_projection(g, j, &mut rng2).unwrap();
            assert!(p.frobenius_diff(&p2) == 0.0);
        }
    }

    #[test]
    fn rejects_non_projection_input() {
        let g = Grid::new(2, 1.0).unwrap();
        let not_p = FockOperator::identity(g).scale(Complex64::new(0.5, 0.0));
        let id = FockOperator::identity(g);
        assert!(matches!(
            meet_projections(&not_p, &id),
            Err(FockError::NotAProjection { .. })
        ));
    }
}
