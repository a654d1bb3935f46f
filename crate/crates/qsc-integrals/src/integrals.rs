//! The four discrete integrals and semimartingale evaluation.
//!
//! Left-point (Itô) convention on cell `k`:
//!   gauge        `a†_k N_k a_k`
//!   annihilation `√dt · P_k a_k`
//!   creation     `√dt · a†_k Q_k`
//!   time         `dt · R_k`
//! which reproduces the weak characterisations on coherent vectors exactly.

use crate::error::QscError;
use crate::process::{Process, ProcessKind};
use fock_core::{is_vacuum_adapted, Complex64, FockOperator, Grid};

fn require_integrand(p: &Process) -> Result<(), QscError> {
    match p.kind() {
        ProcessKind::Vacuum | ProcessKind::Identity => Ok(()),
        other => Err(QscError::KindContract { expected: "vacuum or identity", got: other.name() }),
    }
}

fn check_range(grid: &Grid, j_end: usize) -> Result<(), QscError> {
    if j_end > grid.n_cells() {
        Err(QscError::Fock(fock_core::FockError::IndexOutOfRange {
            index: j_end,
            bound: grid.n_cells() + 1,
        }))
    } else {
        Ok(())
    }
}

/// `Σ_{k < j_end} a†_k N_k a_k`.
pub fn gauge_integral(n: &Process, j_end: usize) -> Result<FockOperator, QscError> {
    require_integrand(n)?;
    check_range(n.grid(), j_end)?;
    let mut acc = FockOperator::zero(*n.grid());
    for k in 0..j_end {
        acc = acc.add(&n.value(k).gauge_sandwich(k)?);
    }
    Ok(acc)
}

/// `Σ_{k < j_end} √dt · P_k a_k`.
pub fn annihilation_integral(p: &Process, j_end: usize) -> Result<FockOperator, QscError> {
    require_integrand(p)?;
    check_range(p.grid(), j_end)?;
    let sqrt_dt = Complex64::new(p.grid().dt().sqrt(), 0.0);
    let mut acc = FockOperator::zero(*p.grid());
    for k in 0..j_end {
        acc = acc.add(&p.value(k).mul_annihilate_right(k)?.scale(sqrt_dt));
    }
    Ok(acc)
}

/// `Σ_{k < j_end} √dt · a†_k Q_k`.
pub fn creation_integral(q: &Process, j_end: usize) -> Result<FockOperator, QscError> {
    require_integrand(q)?;
    check_range(q.grid(), j_end)?;
    let sqrt_dt = Complex64::new(q.grid().dt().sqrt(), 0.0);
    let mut acc = FockOperator::zero(*q.grid());
    for k in 0..j_end {
        acc = acc.add(&q.value(k).mul_create_left(k)?.scale(sqrt_dt));
    }
    Ok(acc)
}

/// `Σ_{k < j_end} dt · R_k`.
pub fn time_integral(r: &Process, j_end: usize) -> Result<FockOperator, QscError> {
    require_integrand(r)?;
    check_range(r.grid(), j_end)?;
    let dt = Complex64::new(r.grid().dt(), 0.0);
    let mut acc = FockOperator::zero(*r.grid());
    for k in 0..j_end {
        acc = acc.add(&r.value(k).scale(dt));
    }
    Ok(acc)
}

/// Integrand quadruple `(N, P, Q, R)` of a semimartingale
/// `X_j = X_0 + ∫N dΛ + ∫P dA + ∫Q dA† + ∫R dt`, all of one adaptedness kind.
#[derive(Clone, Debug)]
pub struct QSIntegrands {
    initial: FockOperator,
    gauge: Process,
    annihilation: Process,
    creation: Process,
    time: Process,
}

impl QSIntegrands {
    pub fn new(
        initial: FockOperator,
        gauge: Process,
        annihilation: Process,
        creation: Process,
        time: Process,
    ) -> Result<QSIntegrands, QscError> {
        let grid = *gauge.grid();
        let kind = gauge.kind();
        for p in [&annihilation, &creation, &time] {
            if !p.grid().same_as(&grid) {
                return Err(QscError::GridMismatch);
            }
            if p.kind() != kind {
                return Err(QscError::KindContract { expected: kind.name(), got: p.kind().name() });
            }
        }
        require_integrand(&gauge)?;
        if !initial.grid().same_as(&grid) {
            return Err(QscError::GridMismatch);
        }
        // The initial value must carry the same adaptedness at time zero.
        let ok = match kind {
            ProcessKind::Vacuum => is_vacuum_adapted(&initial, 0)?,
            ProcessKind::Identity => fock_core::is_identity_adapted(&initial, 0)?,
            _ => unreachable!(),
        };
        if !ok {
            return Err(QscError::AdaptednessViolation { time_index: 0, residual: f64::NAN });
        }
        Ok(QSIntegrands { initial, gauge, annihilation, creation, time })
    }

    pub fn zero(grid: Grid, kind: ProcessKind) -> QSIntegrands {
        let z = || Process::constant(FockOperator::zero(grid), kind).expect("zero is adapted");
        QSIntegrands {
            initial: FockOperator::zero(grid),
            gauge: z(),
            annihilation: z(),
            creation: z(),
            time: z(),
        }
    }

    pub fn grid(&self) -> &Grid {
        self.gauge.grid()
    }

    pub fn kind(&self) -> ProcessKind {
        self.gauge.kind()
    }

    pub fn initial(&self) -> &FockOperator {
        &self.initial
    }

    pub fn gauge(&self) -> &Process {
        &self.gauge
    }

    pub fn annihilation(&self) -> &Process {
        &self.annihilation
    }

    pub fn creation(&self) -> &Process {
        &self.creation
    }

    pub fn time(&self) -> &Process {
        &self.time
    }

    /// `X_j = X_0 + (∫N dΛ + ∫P dA + ∫Q dA† + ∫R dt)_j`.
    pub fn eval(&self, j: usize) -> Result<FockOperator, QscError> {
        Ok(self
            .initial
            .add(&gauge_integral(&self.gauge, j)?)
            .add(&annihilation_integral(&self.annihilation, j)?)
            .add(&creation_integral(&self.creation, j)?)
            .add(&time_integral(&self.time, j)?))
    }

    /// The increment `X_{k+1} − X_k` assembled directly from the integrands.
    pub fn increment(&self, k: usize) -> Result<FockOperator, QscError> {
        let sqrt_dt = Complex64::new(self.grid().dt().sqrt(), 0.0);
        let dt = Complex64::new(self.grid().dt(), 0.0);
        Ok(self
            .gauge
            .value(k)
            .gauge_sandwich(k)?
            .add(&self.annihilation.value(k).mul_annihilate_right(k)?.scale(sqrt_dt))
            .add(&self.creation.value(k).mul_create_left(k)?.scale(sqrt_dt))
            .add(&self.time.value(k).scale(dt)))
    }

    /// Evaluates at every grid time and wraps the result as a process of the
    /// declared kind, closed by the horizon value.
    pub fn as_process(&self) -> Result<Process, QscError> {
        let grid = *self.grid();
        let ops = (0..=grid.n_cells())
            .map(|j| self.eval(j))
            .collect::<Result<Vec<_>, _>>()?;
        let closing = ops[grid.n_cells()].clone();
        Process::new(grid, self.kind(), ops, Some(closing))
    }

    /// Martingale part `X_0 + ∫N dΛ + ∫P dA + ∫Q dA†` as a closed process.
    pub fn martingale_part(&self) -> Result<Process, QscError> {
        let grid = *self.grid();
        let eval_m = |j: usize| -> Result<FockOperator, QscError> {
            Ok(self
                .initial
                .add(&gauge_integral(&self.gauge, j)?)
                .add(&annihilation_integral(&self.annihilation, j)?)
                .add(&creation_integral(&self.creation, j)?))
        };
        let ops = (0..=grid.n_cells()).map(eval_m).collect::<Result<Vec<_>, _>>()?;
        let closing = ops[grid.n_cells()].clone();
        Process::new(grid, self.kind(), ops, Some(closing))
    }

    /// FV part `∫R dt` as a closed process.
    pub fn fv_part(&self) -> Result<Process, QscError> {
        let grid = *self.grid();
        let ops = (0..=grid.n_cells())
            .map(|j| time_integral(&self.time, j))
            .collect::<Result<Vec<_>, _>>()?;
        let closing = ops[grid.n_cells()].clone();
        Process::new(grid, self.kind(), ops, Some(closing))
    }

    /// Checks that the declared quadruple reproduces a target process at
    /// every grid time; returns the largest Frobenius residual.
    pub fn max_residual_against(&self, target: &Process) -> Result<f64, QscError> {
        let mut worst = 0.0f64;
        for j in 0..=self.grid().n_cells() {
            worst = worst.max(self.eval(j)?.frobenius_diff(target.value(j)));
        }
        Ok(worst)
    }
}

/// Checks `eval` against the per-time values of the quadruple's own process
/// form; mainly a self-consistency helper for suites.
pub fn semimartingale_eval(x: &QSIntegrands, j: usize) -> Result<FockOperator, QscError> {
    x.eval(j)
}

/// Recovers the integrand quadruple from the increments of a semimartingale,
/// block by block: on cell `k` the increment splits over the four corners of
/// the cell-`k` matrix-unit decomposition, so the quadruple is unique.
pub fn recover_integrands(x: &QSIntegrands) -> Result<QSIntegrands, QscError> {
    let grid = *x.grid();
    let kind = x.kind();
    let dt = grid.dt();
    let sqrt_dt = dt.sqrt();
    let d = grid.dim();
    let mut ns = Vec::new();
    let mut ps = Vec::new();
    let mut qs = Vec::new();
    let mut rs = Vec::new();
    for k in 0..grid.n_cells() {
        let u = x.eval(k + 1)?.sub(&x.eval(k)?);
        let bit = 1usize << k;
        let mut nm = fock_core::CMatrix::zeros(d, d);
        let mut pm = fock_core::CMatrix::zeros(d, d);
        let mut qm = fock_core::CMatrix::zeros(d, d);
        let mut rm = fock_core::CMatrix::zeros(d, d);
        for m in 0..d {
            if m & bit != 0 {
                continue;
            }
            for mp in 0..d {
                if mp & bit != 0 {
                    continue;
                }
                let r00 = u.matrix()[(m, mp)] / dt;
                let corner11 = u.matrix()[(m | bit, mp | bit)];
                rm[(m, mp)] = r00;
                pm[(m, mp)] = u.matrix()[(m, mp | bit)] / sqrt_dt;
                qm[(m, mp)] = u.matrix()[(m | bit, mp)] / sqrt_dt;
                // Identity-adapted time integrands copy onto the occupied
                // corner; vacuum-adapted ones vanish there.
                nm[(m, mp)] = if kind == ProcessKind::Identity {
                    corner11 - r00 * dt
                } else {
                    corner11
                };
            }
        }
        // Extend each block from the cell-k-empty corner back to a full
        // operator of the declared kind: identity-adapted integrands act as
        // the identity on cell k, vacuum-adapted ones vanish outside it.
        if kind == ProcessKind::Identity {
            for mat in [&mut nm, &mut pm, &mut qm, &mut rm] {
                for m in 0..d {
                    if m & bit != 0 {
                        continue;
                    }
                    for mp in 0..d {
                        if mp & bit != 0 {
                            continue;
                        }
                        mat[(m | bit, mp | bit)] = mat[(m, mp)];
                    }
                }
            }
        }
        ns.push(FockOperator::from_matrix(grid, nm)?);
        ps.push(FockOperator::from_matrix(grid, pm)?);
        qs.push(FockOperator::from_matrix(grid, qm)?);
        rs.push(FockOperator::from_matrix(grid, rm)?);
    }
    // Pad the horizon slot, which no increment ever reads.
    for v in [&mut ns, &mut ps, &mut qs, &mut rs] {
        v.push(FockOperator::zero(grid));
    }
    QSIntegrands::new(
        x.initial().clone(),
        Process::new(grid, kind, ns, None)?,
        Process::new(grid, kind, ps, None)?,
        Process::new(grid, kind, qs, None)?,
        Process::new(grid, kind, rs, None)?,
    )
}
