//! Seeded random processes and integrand quadruples for suites and the lab.

use crate::error::QscError;
use crate::integrals::QSIntegrands;
use crate::process::{Process, ProcessKind};
use fock_core::{pi_id, pi_vac, CMatrix, Complex64, FockOperator, Grid};
use rand::Rng;

/// Dense noise scaled to operator norm of order one, independent of the
/// grid size, so residuals stay comparable across refinement levels.
pub fn random_operator(grid: Grid, rng: &mut impl Rng) -> FockOperator {
    let d = grid.dim();
    let scale = 1.0 / (d as f64).sqrt();
    let mat = CMatrix::from_fn(d, d, |_, _| {
        Complex64::new(scale * (rng.gen::<f64>() - 0.5), scale * (rng.gen::<f64>() - 0.5))
    });
    FockOperator::from_matrix(grid, mat).expect("dimensions agree")
}

/// Random process of the requested kind, built by compressing dense noise.
pub fn random_process(grid: Grid, kind: ProcessKind, rng: &mut impl Rng) -> Process {
    let ops: Vec<FockOperator> = (0..=grid.n_cells())
        .map(|j| {
            let raw = random_operator(grid, rng);
            match kind {
                ProcessKind::Vacuum => pi_vac(&raw, j).expect("index in range"),
                ProcessKind::Identity => pi_id(&raw, j).expect("index in range"),
                // adapted-but-not-finer: identity-adapted plus a vacuum-adapted perturbation
                ProcessKind::Adapted => {
                    let a = pi_id(&raw, j).expect("index in range");
                    let b = pi_vac(&random_operator(grid, rng), j).expect("index in range");
                    a.add(&b)
                }
                ProcessKind::General => raw,
            }
        })
        .collect();
    Process::new(grid, kind, ops, None).expect("constructed values satisfy the kind")
}

/// Random semimartingale quadruple of the given kind. The initial value is a
/// scalar multiple of the appropriate time-zero compression.
pub fn random_quadruple(grid: Grid, kind: ProcessKind, rng: &mut impl Rng) -> QSIntegrands {
    assert!(matches!(kind, ProcessKind::Vacuum | ProcessKind::Identity));
    let initial = {
        let raw = random_operator(grid, rng);
        match kind {
            ProcessKind::Vacuum => pi_vac(&raw, 0).expect("index 0"),
            _ => pi_id(&raw, 0).expect("index 0"),
        }
    };
    QSIntegrands::new(
        initial,
        random_process(grid, kind, rng),
        random_process(grid, kind, rng),
        random_process(grid, kind, rng),
        random_process(grid, kind, rng),
    )
    .expect("kinds agree by construction")
}

/// Random gauge-only quadruple (annihilation, creation and time integrands
/// all zero); products with these are exact in the discrete model.
pub fn random_gauge_only(grid: Grid, kind: ProcessKind, rng: &mut impl Rng) -> QSIntegrands {
    let zero = Process::constant(FockOperator::zero(grid), kind).expect("zero is adapted");
    let initial = {
        let raw = random_operator(grid, rng);
        match kind {
            ProcessKind::Vacuum => pi_vac(&raw, 0).expect("index 0"),
            _ => pi_id(&raw, 0).expect("index 0"),
        }
    };
    QSIntegrands::new(
        initial,
        random_process(grid, kind, rng),
        zero.clone(),
        zero.clone(),
        zero,
    )
    .expect("kinds agree by construction")
}

/// Random martingale quadruple: time integrand zero.
pub fn random_martingale_quadruple(
    grid: Grid,
    kind: ProcessKind,
    rng: &mut impl Rng,
) -> Result<QSIntegrands, QscError> {
    let zero = Process::constant(FockOperator::zero(grid), kind)?;
    let initial = {
        let raw = random_operator(grid, rng);
        match kind {
            ProcessKind::Vacuum => pi_vac(&raw, 0)?,
            _ => pi_id(&raw, 0)?,
        }
    };
    QSIntegrands::new(
        initial,
        random_process(grid, kind, rng),
        random_process(grid, kind, rng),
        random_process(grid, kind, rng),
        zero,
    )
}
