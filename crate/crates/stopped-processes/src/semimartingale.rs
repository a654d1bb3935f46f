//! Stopping regular Ω-semimartingales: the stopped integrand quadruple and
//! its agreement with the martingale-plus-FV composite.

use crate::error::StopError;
use crate::fv::{stop_fv_vac, FVProcess};
use crate::stop_vac::stop_op_vac;
use fock_core::FockOperator;
use qsc_integrals::{Process, ProcessKind, QSIntegrands};
use stopping_times::{time_projection, QuantumStoppingTime};

/// The stopped quadruple of a vacuum-adapted semimartingale at `S`:
/// gauge `S((s,∞]) N S((s,∞])`, annihilation `E_S P S((s,∞])`,
/// creation `S((s,∞]) Q E_S`, time `E_S R E_S − S([0,s]) E_S R E_S S([0,s])`.
pub fn stop_semimartingale_vac(
    x: &QSIntegrands,
    s: &QuantumStoppingTime,
) -> Result<QSIntegrands, StopError> {
    if x.kind() != ProcessKind::Vacuum {
        return Err(StopError::KindContract { expected: "vacuum", got: x.kind().name() });
    }
    if !x.grid().same_as(s.grid()) {
        return Err(StopError::GridMismatch);
    }
    let grid = *x.grid();
    let es = time_projection(s)?;
    let n = Process::from_fn(grid, ProcessKind::Vacuum, |j| {
        let tail = s.tail(j);
        tail.mul(x.gauge().value(j)).mul(&tail)
    })?;
    let p = Process::from_fn(grid, ProcessKind::Vacuum, |j| {
        es.mul(x.annihilation().value(j)).mul(&s.tail(j))
    })?;
    let q = Process::from_fn(grid, ProcessKind::Vacuum, |j| {
        s.tail(j).mul(x.creation().value(j)).mul(&es)
    })?;
    let r = Process::from_fn(grid, ProcessKind::Vacuum, |j| {
        let c = s.cumulative(j);
        let core = es.mul(x.time().value(j)).mul(&es);
        core.sub(&c.mul(&core).mul(&c))
    })?;
    Ok(QSIntegrands::new(x.initial().clone(), n, p, q, r)?)
}

/// The reference value `X_Š = M_Š + Y_Š`: the closed martingale part stopped
/// as `E_S M_∞ E_S`, plus the FV part stopped with the killed time integral.
pub fn stopped_semimartingale_value(
    x: &QSIntegrands,
    s: &QuantumStoppingTime,
) -> Result<FockOperator, StopError> {
    let m = x.martingale_part()?;
    let m_stopped = stop_op_vac(&m.closing(), s)?;
    let y = FVProcess::new(x.time().clone())?;
    let y_stopped = stop_fv_vac(&y, s)?;
    Ok(m_stopped.add(&y_stopped))
}
