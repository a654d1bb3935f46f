//! Identity-adapted (Coquio) stopping: the discrete double sum, the gauge
//! extension `Z_Ŝ`, the vacuum/identity decomposition of `π̂`, the
//! identity-adapted integral forms of the time projection and the defect of
//! multiplicativity.

use crate::error::StopError;
use crate::stop_vac::{join_points, stop_op_vac};
use fock_core::{e_projection, pi_id, pi_vac, FockOperator, Grid};
use qsc_integrals::Process;
use stopping_times::{time_projection, QuantumStoppingTime, TimePoint};

fn e_at(grid: Grid, at: TimePoint) -> Result<FockOperator, StopError> {
    Ok(match at {
        TimePoint::Finite(j) => e_projection(grid, j)?,
        TimePoint::Infinity => FockOperator::identity(grid),
    })
}

fn pi_id_at(z: &FockOperator, at: TimePoint) -> Result<FockOperator, StopError> {
    Ok(match at {
        TimePoint::Finite(j) => pi_id(z, j)?,
        TimePoint::Infinity => z.clone(),
    })
}

fn x_at(x: &Process, at: TimePoint) -> FockOperator {
    match at {
        TimePoint::Finite(j) => x.value(j).clone(),
        TimePoint::Infinity => x.closing(),
    }
}

/// Discrete identity-adapted stopping:
/// `X_T̂ = Σ_{i,j} π̂(E_{t_i} T_i X_{t_i∨t_j} T_j E_{t_j})_{t_i∨t_j}`.
pub fn stop_process_discrete_id(
    x: &Process,
    t: &QuantumStoppingTime,
) -> Result<FockOperator, StopError> {
    if !x.grid().same_as(t.grid()) {
        return Err(StopError::GridMismatch);
    }
    let grid = *x.grid();
    let mut acc = FockOperator::zero(grid);
    for (ai, ti) in t.atoms() {
        for (aj, tj) in t.atoms() {
            let at = join_points(*ai, *aj);
            let inner = e_at(grid, *ai)?
                .mul(ti)
                .mul(&x_at(x, at))
                .mul(tj)
                .mul(&e_at(grid, *aj)?);
            acc = acc.add(&pi_id_at(&inner, at)?);
        }
    }
    Ok(acc)
}

/// Coquio's stopped operator
/// `Z_Ŝ = Z_Š + Σ_k a†_k S([0,t_k]) π̂(Z_Š)_k S([0,t_k]) a_k`.
pub fn stop_op_id(z: &FockOperator, s: &QuantumStoppingTime) -> Result<FockOperator, StopError> {
    let grid = *z.grid();
    let z_vac = stop_op_vac(z, s)?;
    let mut acc = z_vac.clone();
    for k in 0..grid.n_cells() {
        let c = s.cumulative(k);
        let integrand = c.mul(&pi_id(&z_vac, k)?).mul(&c);
        acc = acc.add(&integrand.gauge_sandwich(k)?);
    }
    Ok(acc)
}

/// The gauge correction alone: `Z_Ŝ − Z_Š`.
pub fn stop_op_id_gauge_part(
    z: &FockOperator,
    s: &QuantumStoppingTime,
) -> Result<FockOperator, StopError> {
    let grid = *z.grid();
    let z_vac = stop_op_vac(z, s)?;
    let mut acc = FockOperator::zero(grid);
    for k in 0..grid.n_cells() {
        let c = s.cumulative(k);
        let integrand = c.mul(&pi_id(&z_vac, k)?).mul(&c);
        acc = acc.add(&integrand.gauge_sandwich(k)?);
    }
    Ok(acc)
}

/// Decomposition of the identity-adapted compression into the vacuum-adapted
/// one plus a gauge tail:
/// `π̂(Z)_j = π̌(Z)_j + Σ_{k ≥ j} a†_k π̂(π̌(Z)_j)_k a_k`.
/// Returns `(π̌(Z)_j, tail)`.
pub fn mint_decompose(
    z: &FockOperator,
    j: usize,
) -> Result<(FockOperator, FockOperator), StopError> {
    let grid = *z.grid();
    let vac = pi_vac(z, j)?;
    let mut tail = FockOperator::zero(grid);
    for k in j..grid.n_cells() {
        tail = tail.add(&pi_id(&vac, k)?.gauge_sandwich(k)?);
    }
    Ok((vac, tail))
}

/// The three discrete evaluations of the identity-adapted integral form of
/// the time projection at `j`:
/// `π̂(E_S)_j`,
/// `I − Σ_{k<j} a†_k C_k π̂(E_S)_k C_k a_k`, and
/// `E_S + Σ_{k≥j} a†_k C_k π̂(E_S)_k C_k a_k`.
pub fn idtpint_check(
    s: &QuantumStoppingTime,
    j: usize,
) -> Result<(FockOperator, FockOperator, FockOperator), StopError> {
    let grid = *s.grid();
    let es = time_projection(s)?;
    let lhs = pi_id(&es, j)?;
    let term = |k: usize| -> Result<FockOperator, StopError> {
        let c = s.cumulative(k);
        Ok(c.mul(&pi_id(&es, k)?).mul(&c).gauge_sandwich(k)?)
    };
    let mut head = FockOperator::zero(grid);
    for k in 0..j {
        head = head.add(&term(k)?);
    }
    let rhs1 = FockOperator::identity(grid).sub(&head);
    let mut tail = FockOperator::zero(grid);
    for k in j..grid.n_cells() {
        tail = tail.add(&term(k)?);
    }
    let rhs2 = es.add(&tail);
    Ok((lhs, rhs1, rhs2))
}

/// Both sides of the multiplicativity defect of Coquio stopping, in the
/// compact remark form:
/// `Z_Ŝ W_Ŝ − (Z_Ŝ W)_Ŝ`
/// versus
/// `−Σ_k a†_k C_k π̂(Z_Š)_k (I−C_k) π̂(W_Š)_k C_k a_k`.
///
/// The two sides agree for deterministic times, for `W = I` and on a large
/// structured class, but not for arbitrary `Z`, `W`: the compact form drops
/// the non-multiplicativity of the compression on the product `Z_Š W_Š`, and
/// that term survives refinement. [`noncomm_defect_exact`] carries it.
pub fn noncomm_defect(
    z: &FockOperator,
    w: &FockOperator,
    s: &QuantumStoppingTime,
) -> Result<(FockOperator, FockOperator), StopError> {
    let grid = *z.grid();
    let z_id = stop_op_id(z, s)?;
    let w_id = stop_op_id(w, s)?;
    let zw_id = stop_op_id(&z_id.mul(w), s)?;
    let lhs = z_id.mul(&w_id).sub(&zw_id);
    let z_vac = stop_op_vac(z, s)?;
    let w_vac = stop_op_vac(w, s)?;
    let mut rhs = FockOperator::zero(grid);
    for k in 0..grid.n_cells() {
        let c = s.cumulative(k);
        let gap = s.tail(k);
        let integrand = c
            .mul(&pi_id(&z_vac, k)?)
            .mul(&gap)
            .mul(&pi_id(&w_vac, k)?)
            .mul(&c);
        rhs = rhs.add(&integrand.gauge_sandwich(k)?);
    }
    Ok((lhs, rhs.scale(fock_core::Complex64::new(-1.0, 0.0))))
}

/// The multiplicativity defect with its full gauge integrand. Writing
/// `Y_Z = Z_Ŝ − Z_Š` and `M^Z_k = C_k π̂(Z_Š)_k C_k`, the defect equals the
/// gauge integral of
/// `(Y_Z)_k M^W_k + M^Z_k (Y_W)_k + M^Z_k M^W_k − C_k π̂(Z_Š W_Š)_k C_k`
/// cell by cell; the compact remark form keeps only the part of this with
/// `π̂(Z_Š W_Š)` replaced by `π̂(Z_Š)π̂(W_Š)` and the running gauge values
/// dropped. Returns `(Z_Ŝ W_Ŝ − (Z_Ŝ W)_Ŝ, exact right-hand side)`.
pub fn noncomm_defect_exact(
    z: &FockOperator,
    w: &FockOperator,
    s: &QuantumStoppingTime,
) -> Result<(FockOperator, FockOperator), StopError> {
    let grid = *z.grid();
    let z_id = stop_op_id(z, s)?;
    let w_id = stop_op_id(w, s)?;
    let zw_id = stop_op_id(&z_id.mul(w), s)?;
    let lhs = z_id.mul(&w_id).sub(&zw_id);
    let z_vac = stop_op_vac(z, s)?;
    let w_vac = stop_op_vac(w, s)?;
    let zw_vac = z_vac.mul(&w_vac);
    let mut rhs = FockOperator::zero(grid);
    let mut running_z = FockOperator::zero(grid);
    let mut running_w = FockOperator::zero(grid);
    for k in 0..grid.n_cells() {
        let c = s.cumulative(k);
        let mz = c.mul(&pi_id(&z_vac, k)?).mul(&c);
        let mw = c.mul(&pi_id(&w_vac, k)?).mul(&c);
        let integrand = running_z
            .mul(&mw)
            .add(&mz.mul(&running_w))
            .add(&mz.mul(&mw))
            .sub(&c.mul(&pi_id(&zw_vac, k)?).mul(&c));
        rhs = rhs.add(&integrand.gauge_sandwich(k)?);
        running_z = running_z.add(&mz.gauge_sandwich(k)?);
        running_w = running_w.add(&mw.gauge_sandwich(k)?);
    }
    Ok((lhs, rhs))
}
