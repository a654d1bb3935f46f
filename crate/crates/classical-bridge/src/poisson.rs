//! The counting-walk bridge: the jump-time counting identity, its quantum
//! transport through `U`, and the scalar law of the jump times against the
//! gamma moments.

use crate::error::BridgeError;
use crate::stopping::{jump_time, ClassicalStoppingTime};
use crate::walk::{WalkFlavor, WalkModel};
use fock_core::{cell_op, CellKind, Complex64, FockOperator};
use stopping_times::TimePoint;

/// Discrete counting increment on cell `k`:
/// `ΔN_k = n_k + √dt(a_k + a†_k) + dt·I`.
pub fn counting_increment(model: &WalkModel, k: usize) -> Result<FockOperator, BridgeError> {
    let grid = *model.grid();
    let sqrt_dt = Complex64::new(grid.dt().sqrt(), 0.0);
    let dt = Complex64::new(grid.dt(), 0.0);
    let n = cell_op(grid, k, CellKind::Number)?;
    let a = cell_op(grid, k, CellKind::Annihilate)?;
    let ad = cell_op(grid, k, CellKind::Create)?;
    Ok(n.add(&a.add(&ad).scale(sqrt_dt)).add(&FockOperator::identity(grid).scale(dt)))
}

#[derive(Clone, Debug)]
pub struct PoissonSdeReport {
    /// Max deviation of the pathwise counting identity; zero in exact math.
    pub classical_residual: f64,
    /// Frobenius deviation of the quantum-transported identity, normalised
    /// by dimension; an order-dt Bernoulli/Poisson gap.
    pub quantum_residual: f64,
}

/// Checks, up to grid index `j`,
/// `1_{τ_m ≤ t_j} = Σ_{k<j} (1_{τ_{m−1} ≤ t_k} − 1_{τ_m ≤ t_k}) Δν_k`
/// pathwise (exactly), and the same identity transported by `U` with the
/// quantum counting increments (an order-dt residual).
pub fn poisson_sde_check(
    model: &WalkModel,
    n_jump: usize,
    j: usize,
) -> Result<PoissonSdeReport, BridgeError> {
    if model.flavor() != WalkFlavor::Poisson {
        return Err(BridgeError::WrongFlavor);
    }
    assert!(n_jump >= 1, "the identity needs a previous jump time");
    let grid = *model.grid();
    let dim = grid.dim();
    let tau_prev = jump_time(model, n_jump - 1)?;
    let tau = jump_time(model, n_jump)?;
    let stopped = |t: &ClassicalStoppingTime, bound: usize| -> Vec<f64> {
        (0..dim)
            .map(|w| if t.at(w) <= TimePoint::Finite(bound) { 1.0 } else { 0.0 })
            .collect()
    };

    // classical, path by path
    let mut classical_residual = 0.0f64;
    for omega in 0..dim {
        let lhs = stopped(&tau, j)[omega];
        let mut rhs = 0.0;
        for k in 0..j {
            let jumped = if omega & (1 << k) != 0 { 1.0 } else { 0.0 };
            rhs += (stopped(&tau_prev, k)[omega] - stopped(&tau, k)[omega]) * jumped;
        }
        classical_residual = classical_residual.max((lhs - rhs).abs());
    }

    // quantum transport
    let lhs_q = model.multiplication_operator(
        &stopped(&tau, j).iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>(),
    )?;
    let mut rhs_q = FockOperator::zero(grid);
    for k in 0..j {
        let vals: Vec<Complex64> = (0..dim)
            .map(|w| {
                let d = stopped(&tau_prev, k)[w] - stopped(&tau, k)[w];
                Complex64::new(d, 0.0)
            })
            .collect();
        let f = model.multiplication_operator(&vals)?;
        rhs_q = rhs_q.add(&f.mul(&counting_increment(model, k)?));
    }
    let quantum_residual = lhs_q.frobenius_diff(&rhs_q) / (dim as f64).sqrt();
    Ok(PoissonSdeReport { classical_residual, quantum_residual })
}

/// Scalar law of the `m`-th jump time of Bernoulli(dt) cells over the
/// horizon `t_max` (no Fock objects, so long horizons are fine). Returns the
/// conditional mean and variance given stopping before the horizon, and the
/// truncated mass.
pub fn jump_law_moments(dt: f64, t_max: f64, m: usize) -> (f64, f64, f64) {
    assert!(m >= 1 && dt > 0.0 && dt < 1.0);
    let steps = (t_max / dt).round() as usize;
    let mut mass = 0.0f64;
    let mut mean = 0.0f64;
    let mut second = 0.0f64;
    // P(τ_m = j·dt) = C(j−1, m−1) p^m (1−p)^{j−m}
    let mut log_choose = 0.0f64; // log C(j−1, m−1) built incrementally
    for j in m..=steps {
        if j > m {
            // C(j−1, m−1) = C(j−2, m−1)·(j−1)/(j−m)
            log_choose += ((j - 1) as f64).ln() - ((j - m) as f64).ln();
        }
        let logp = log_choose + (m as f64) * dt.ln() + ((j - m) as f64) * (1.0 - dt).ln();
        let p = logp.exp();
        let t = j as f64 * dt;
        mass += p;
        mean += t * p;
        second += t * t * p;
    }
    let mean_c = mean / mass;
    let var_c = second / mass - mean_c * mean_c;
    (mean_c, var_c, 1.0 - mass)
}
