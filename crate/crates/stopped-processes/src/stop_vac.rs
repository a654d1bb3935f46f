//! Vacuum-adapted stopping: `Z_Š = E_S Z E_S`, the stopped algebra's
//! conditional expectation, discrete double-sum stopping of processes, the
//! stopped-martingale process and the two-point martingale characterisation.

use crate::error::StopError;
use fock_core::{
    e_projection, eps_exact, random_adapted_projection, Complex64, FockOperator, FockVector, Grid,
    EPS_LATTICE,
};
use qsc_integrals::{is_martingale, Process, ProcessKind};
use rand::Rng;
use std::collections::BTreeMap;
use stopping_times::{
    qst_min_const, time_projection, QuantumStoppingTime, TimePoint,
};

/// `Z_Š := E_S Z E_S`.
pub fn stop_op_vac(z: &FockOperator, s: &QuantumStoppingTime) -> Result<FockOperator, StopError> {
    let es = time_projection(s)?;
    Ok(es.mul(z).mul(&es))
}

/// Value of `E` at a support point: `E_{t_j}` or the identity at infinity.
fn e_at(grid: Grid, at: TimePoint) -> Result<FockOperator, StopError> {
    Ok(match at {
        TimePoint::Finite(j) => e_projection(grid, j)?,
        TimePoint::Infinity => FockOperator::identity(grid),
    })
}

/// Process value at a support point, the closing operator at infinity.
fn x_at(x: &Process, at: TimePoint) -> FockOperator {
    match at {
        TimePoint::Finite(j) => x.value(j).clone(),
        TimePoint::Infinity => x.closing(),
    }
}

pub(crate) fn join_points(a: TimePoint, b: TimePoint) -> TimePoint {
    a.max(b)
}

/// Discrete vacuum-adapted stopping of a process:
/// `X_Ť = Σ_{i,j} T_i E_{t_i} X_{t_i ∨ t_j} E_{t_j} T_j`.
pub fn stop_process_discrete_vac(
    x: &Process,
    t: &QuantumStoppingTime,
) -> Result<FockOperator, StopError> {
    if !x.grid().same_as(t.grid()) {
        return Err(StopError::GridMismatch);
    }
    let grid = *x.grid();
    let mut acc = FockOperator::zero(grid);
    for (ai, ti) in t.atoms() {
        let left = ti.mul(&e_at(grid, *ai)?);
        for (aj, tj) in t.atoms() {
            let mid = x_at(x, join_points(*ai, *aj));
            let right = e_at(grid, *aj)?.mul(tj);
            acc = acc.add(&left.mul(&mid).mul(&right));
        }
    }
    Ok(acc)
}

/// `Z^Š := (Z_{Š∧t_j})_j`, a vacuum-adapted martingale closed by `Z_Š`.
pub fn stopped_martingale_process(
    z: &FockOperator,
    s: &QuantumStoppingTime,
) -> Result<Process, StopError> {
    let grid = *z.grid();
    let ops = (0..=grid.n_cells())
        .map(|j| stop_op_vac(z, &qst_min_const(s, j)))
        .collect::<Result<Vec<_>, _>>()?;
    let closing = stop_op_vac(z, s)?;
    Ok(Process::new(grid, ProcessKind::Vacuum, ops, Some(closing))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopFlavor {
    Vacuum,
    Identity,
}

/// Stops a closed martingale: `M_Š = E_S M_∞ E_S` for the vacuum flavour,
/// `M_Ŝ = (M_∞)_Ŝ` for the identity (Coquio) flavour.
pub fn stop_closed_martingale(
    m: &Process,
    s: &QuantumStoppingTime,
    flavor: StopFlavor,
) -> Result<FockOperator, StopError> {
    if m.closing_opt().is_none() {
        return Err(StopError::NotAClosedMartingale("no closing operator".into()));
    }
    if !is_martingale(m)? {
        return Err(StopError::NotAClosedMartingale("martingale property fails".into()));
    }
    if !m.is_closed_by_its_closing()? {
        return Err(StopError::NotAClosedMartingale(
            "closing operator does not close the process".into(),
        ));
    }
    let closing = m.closing();
    match flavor {
        StopFlavor::Vacuum => stop_op_vac(&closing, s),
        StopFlavor::Identity => crate::stop_id::stop_op_id(&closing, s),
    }
}

/// Reproducible probe of the stopped algebra `{E_S Z E_S}`.
#[derive(Clone, Debug)]
pub struct StoppedAlgebraProbe {
    pub stopping_time: QuantumStoppingTime,
    pub samples: Vec<FockOperator>,
    pub seed: u64,
}

impl StoppedAlgebraProbe {
    pub fn with_random_samples(
        stopping_time: QuantumStoppingTime,
        count: usize,
        seed: u64,
    ) -> StoppedAlgebraProbe {
        let grid = *stopping_time.grid();
        let mut rng = fock_core::stream(seed, &[0x5a17]);
        let samples = (0..count)
            .map(|_| qsc_integrals::random_operator(grid, &mut rng))
            .collect();
        StoppedAlgebraProbe { stopping_time, samples, seed }
    }
}

/// Conditional-expectation report for `Φ(Z) = E_S Z E_S`: idempotence on the
/// range, the bimodule identity `Φ(Φ(Z) W Φ(V)) = Φ(Z)Φ(W)Φ(V)`, positivity
/// of `Φ(Z†Z)` and preservation of the vacuum state.
#[derive(Clone, Debug)]
pub struct CondExpReport {
    pub idempotent_residual: f64,
    pub bimodule_residual: f64,
    pub positivity_min_eig: f64,
    pub vacuum_state_residual: f64,
    pub pass: bool,
}

pub fn conditional_expectation_probe(
    probe: &StoppedAlgebraProbe,
) -> Result<CondExpReport, StopError> {
    let s = &probe.stopping_time;
    let grid = *s.grid();
    let tol = eps_exact(&grid);
    let es = time_projection(s)?;
    let phi = |z: &FockOperator| es.mul(z).mul(&es);

    let mut idem = 0.0f64;
    let mut bimod = 0.0f64;
    let mut pos = f64::INFINITY;
    let mut vac = 0.0f64;
    for z in &probe.samples {
        let pz = phi(z);
        idem = idem.max(phi(&pz).frobenius_diff(&pz));
        vac = vac.max((pz.vacuum_state() - z.vacuum_state()).norm());
        let herm = z.adjoint().mul(z);
        pos = pos.min(fock_core::min_eigenvalue(phi(&herm).matrix()));
    }
    for win in probe.samples.windows(3) {
        if let [z, w, v] = win {
            let lhs = phi(&phi(z).mul(w).mul(&phi(v)));
            let rhs = phi(z).mul(&phi(w)).mul(&phi(v));
            bimod = bimod.max(lhs.frobenius_diff(&rhs));
        }
    }
    let pass = idem <= tol && bimod <= tol && pos >= -EPS_LATTICE && vac <= tol;
    Ok(CondExpReport {
        idempotent_residual: idem,
        bimodule_residual: bimod,
        positivity_min_eig: pos,
        vacuum_state_residual: vac,
        pass,
    })
}

/// Witness produced when the two-point stopping family detects a drift.
#[derive(Clone, Debug)]
pub struct MgCharWitness {
    pub early: usize,
    pub late: usize,
    pub violation: f64,
    pub stopping_time: QuantumStoppingTime,
}

#[derive(Clone, Debug)]
pub struct MgCharReport {
    pub is_martingale: bool,
    pub max_violation: f64,
    pub witness: Option<MgCharWitness>,
}

/// Tests the martingale property through vacuum expectations of stopped
/// values: an adapted process is a martingale iff `𝔼_Ω[X_Ť] = 𝔼_Ω[X_0]` for
/// every discrete stopping time. Probes deterministic times plus seeded
/// two-point times `{t_s: P, t_t: P⊥}` with `P` a random adapted projection.
pub fn mgchar_test(
    x: &Process,
    probes_per_pair: usize,
    seed: u64,
) -> Result<MgCharReport, StopError> {
    if x.kind() == ProcessKind::General {
        return Err(StopError::KindContract { expected: "adapted", got: "general" });
    }
    let grid = *x.grid();
    let tol = eps_exact(&grid);
    let base = x.value(0).vacuum_state();
    let mut worst = 0.0f64;
    let mut witness: Option<MgCharWitness> = None;

    let check = |t: &QuantumStoppingTime,
                     early: usize,
                     late: usize,
                     worst: &mut f64,
                     witness: &mut Option<MgCharWitness>|
     -> Result<(), StopError> {
        let stopped = stop_process_discrete_vac(x, t)?;
        let violation = (stopped.vacuum_state() - base).norm();
        if violation > *worst {
            *worst = violation;
            if violation > tol {
                *witness = Some(MgCharWitness {
                    early,
                    late,
                    violation,
                    stopping_time: t.clone(),
                });
            }
        }
        Ok(())
    };

    for t_idx in 0..=grid.n_cells() {
        let det = QuantumStoppingTime::deterministic(grid, TimePoint::Finite(t_idx));
        check(&det, t_idx, t_idx, &mut worst, &mut witness)?;
    }
    for s_idx in 1..grid.n_cells() {
        for t_idx in s_idx + 1..=grid.n_cells() {
            for probe in 0..probes_per_pair {
                let mut rng =
                    fock_core::stream(seed, &[s_idx as u64, t_idx as u64, probe as u64]);
                let p = random_adapted_projection(grid, s_idx, &mut rng)?;
                let complement = FockOperator::identity(grid).sub(&p);
                let mut atoms = BTreeMap::new();
                if p.frobenius_norm() > 0.0 {
                    atoms.insert(TimePoint::Finite(s_idx), p.clone());
                }
                if complement.frobenius_norm() > 0.0 {
                    atoms.insert(TimePoint::Finite(t_idx), complement);
                }
                let t = QuantumStoppingTime::new(grid, atoms)?;
                check(&t, s_idx, t_idx, &mut worst, &mut witness)?;
            }
        }
    }
    Ok(MgCharReport { is_martingale: worst <= tol, max_violation: worst, witness })
}

/// Random adapted projection re-export for probe construction in suites.
pub fn two_point_stopping_time(
    grid: Grid,
    early: usize,
    late: usize,
    rng: &mut impl Rng,
) -> Result<QuantumStoppingTime, StopError> {
    assert!(early >= 1 && early < late && late <= grid.n_cells());
    let p = random_adapted_projection(grid, early, rng)?;
    let complement = FockOperator::identity(grid).sub(&p);
    let mut atoms = BTreeMap::new();
    if p.frobenius_norm() > 0.0 {
        atoms.insert(TimePoint::Finite(early), p);
    }
    if complement.frobenius_norm() > 0.0 {
        atoms.insert(TimePoint::Finite(late), complement);
    }
    Ok(QuantumStoppingTime::new(grid, atoms)?)
}

/// Vacuum expectation `𝔼_Ω[Z] = ⟨Ω, Z Ω⟩` as a complex number; here so call
/// sites read like the statements they check.
pub fn vacuum_expectation(z: &FockOperator) -> Complex64 {
    z.vacuum_state()
}

/// Convenience: coherent probe vectors for norm identities.
pub fn coherent_probe(grid: Grid, rng: &mut impl Rng) -> FockVector {
    let f: Vec<Complex64> = (0..grid.n_cells())
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    FockVector::exponential(grid, &f).expect("length matches")
}
