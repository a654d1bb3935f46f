//! Grid-refinement studies: how the discrete residuals of the non-exact
//! identities vanish (or provably do not) as dt halves. Items that need the
//! full 16-cell grid use structure-aware evaluations instead of dense
//! matrices.

use crate::bigcoherent::{ProductOp, ProductVec, StructuredQuadruple, VecSum};
use crate::config::LabConfig;
use crate::report::{ratio_band_verdict, ConvergenceReport, ConvergenceRow, Verdict};
use crate::suite::{RunCtx, REGISTRY};
use fock_core::*;
use qsc_integrals::*;
use rayon::prelude::*;
use std::collections::BTreeMap;
use stopped_processes::*;
use stopping_times::*;

const C1: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// One measured level: (cells-or-steps, dt, residual_fro, residual_op).
type LevelResult = Option<(usize, f64, f64, f64)>;

#[derive(Clone, Copy)]
pub enum VerdictKind {
    /// O(dt): monotone, final coarse/fine ratio in [1.6, 2.4], with the
    /// machine-floor promotion rule.
    RatioBand,
    /// Per-level bound `residual ≤ bound(dt)`.
    Threshold(fn(f64) -> f64),
    /// Informational measurement; never fails.
    Measured,
}

pub struct ConvergenceItem {
    pub name: &'static str,
    pub module: &'static str,
    pub run: fn(&LabConfig, usize) -> LevelResult,
    pub verdict: VerdictKind,
    pub note: &'static str,
}

fn level_cells(config: &LabConfig, level: usize) -> usize {
    config.n_cells << level
}

// ---- chaos projection (mask-diagonal fast path) -----------------------------

fn run_chaos(config: &LabConfig, level: usize) -> LevelResult {
    let cells = level_cells(config, level);
    if cells > MAX_CELLS {
        return None;
    }
    let dt = config.t_max / cells as f64;
    let n_level = 1usize;
    let worst = chaos_residual_diagonal(cells, n_level);
    // Frobenius over the diagonal difference
    let mut fro = 0.0f64;
    for m in 0..(1usize << cells) {
        let mut stop: Option<usize> = None;
        for j in 1..=cells {
            if (m & ((1 << j) - 1)).count_ones() as usize > n_level {
                stop = Some(j);
                break;
            }
        }
        let e_s = match stop {
            None => 1.0,
            Some(j) => {
                if m >> j == 0 {
                    1.0
                } else {
                    0.0
                }
            }
        };
        let p: f64 = if (m as u64).count_ones() as usize <= n_level + 1 { 1.0 } else { 0.0 };
        fro += (e_s - p) * (e_s - p);
    }
    Some((cells, dt, fro.sqrt(), worst))
}

// ---- Itô-product residuals through the product-state calculus ---------------

fn structured_quadruple(
    n: usize,
    dt: f64,
    vacuum: bool,
    coeffs: [Complex64; 4],
    with_gauge: bool,
) -> StructuredQuadruple {
    let base = |k: usize, c: Complex64| -> ProductOp {
        if vacuum {
            ProductOp::e_projection(n, k, c)
        } else {
            ProductOp::scaled_identity(n, c)
        }
    };
    let zero = ProductOp::scaled_identity(n, Complex64::new(0.0, 0.0));
    StructuredQuadruple {
        n,
        dt,
        initial: if vacuum {
            ProductOp::e_projection(n, 0, Complex64::new(0.2, -0.1))
        } else {
            ProductOp::scaled_identity(n, Complex64::new(0.2, -0.1))
        },
        gauge: (0..n)
            .map(|k| if with_gauge { base(k, coeffs[0]) } else { zero.clone() })
            .collect(),
        annihilation: (0..n).map(|k| base(k, coeffs[1])).collect(),
        creation: (0..n).map(|k| base(k, coeffs[2])).collect(),
        time: (0..n).map(|k| base(k, coeffs[3])).collect(),
    }
}

fn ito_residual_structured(n: usize, dt: f64, vacuum: bool) -> (f64, f64) {
    // Two fixed quadruples; for identity kind the gauge parts stay zero and
    // the left factor has no annihilation / the right no creation part, so
    // the product formula is the continuum-correct one and the residual is
    // pure discretisation.
    let (x, y) = if vacuum {
        (
            structured_quadruple(
                n,
                dt,
                true,
                [
                    Complex64::new(0.9, 0.1),
                    Complex64::new(0.4, -0.3),
                    Complex64::new(-0.2, 0.5),
                    Complex64::new(0.3, 0.2),
                ],
                true,
            ),
            structured_quadruple(
                n,
                dt,
                true,
                [
                    Complex64::new(0.5, -0.6),
                    Complex64::new(-0.7, 0.2),
                    Complex64::new(0.6, 0.4),
                    Complex64::new(0.1, -0.5),
                ],
                true,
            ),
        )
    } else {
        let mut x = structured_quadruple(
            n,
            dt,
            false,
            [
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(-0.2, 0.5),
                Complex64::new(0.3, 0.2),
            ],
            false,
        );
        let mut y = structured_quadruple(
            n,
            dt,
            false,
            [
                Complex64::new(0.0, 0.0),
                Complex64::new(-0.7, 0.2),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.1, -0.5),
            ],
            false,
        );
        // left factor: creation+time; right factor: annihilation+time
        x.annihilation = (0..n).map(|_| ProductOp::scaled_identity(n, Complex64::new(0.0, 0.0))).collect();
        y.creation = (0..n).map(|_| ProductOp::scaled_identity(n, Complex64::new(0.0, 0.0))).collect();
        (x, y)
    };
    let probe: Vec<Complex64> = (0..n).map(|_| Complex64::new(1.0, 0.0)).collect();
    let probe2: Vec<Complex64> = (0..n).map(|_| Complex64::new(0.6, -0.4)).collect();
    let eps = VecSum::single(ProductVec::coherent(&probe, dt));
    let eps2 = VecSum::single(ProductVec::coherent(&probe2, dt));
    let direct = x.eval(n).apply(&y.eval(n).apply(&eps));
    let formula = x.product_formula_eval(&y, n).apply(&eps);
    let diff = direct.sub(&formula);
    let vec_residual = diff.norm() / eps.norm();
    let weak_residual = eps2.inner(&diff).norm() / (eps2.norm() * eps.norm());
    (vec_residual, weak_residual)
}

fn run_ito_identity(config: &LabConfig, level: usize) -> LevelResult {
    let cells = level_cells(config, level);
    if cells > MAX_CELLS {
        return None;
    }
    let dt = config.t_max / cells as f64;
    let (fro, op) = ito_residual_structured(cells, dt, false);
    Some((cells, dt, fro, op))
}

fn run_ito_general(config: &LabConfig, level: usize) -> LevelResult {
    let cells = level_cells(config, level);
    if cells > MAX_CELLS {
        return None;
    }
    let dt = config.t_max / cells as f64;
    let (fro, op) = ito_residual_structured(cells, dt, true);
    Some((cells, dt, fro, op))
}

// ---- scalar items ------------------------------------------------------------

fn run_coherent_exponential(config: &LabConfig, level: usize) -> LevelResult {
    let cells = level_cells(config, level);
    if cells > MAX_CELLS {
        return None;
    }
    let dt = config.t_max / cells as f64;
    // ⟨ε(1), ε(1)⟩ = (1+dt)^n → e^{t_max}
    let value = (1.0 + dt).powi(cells as i32);
    let target = config.t_max.exp();
    let gap = (target - value).abs();
    Some((cells, dt, gap, gap))
}

fn run_poisson_gamma(config: &LabConfig, level: usize) -> LevelResult {
    // scalar probability over Bernoulli(dt) cells; the horizon is extended
    // until the truncated mass is negligible, so no cell cap applies
    let base_dt = config.t_max / config.n_cells as f64;
    let dt = base_dt / (1 << level) as f64;
    let t_max = 12.0;
    let m = 1usize;
    let (mean, var, trunc) = classical_bridge::jump_law_moments(dt, t_max, m);
    if trunc > 1e-3 {
        return None;
    }
    let steps = (t_max / dt).round() as usize;
    Some((steps, dt, (mean - m as f64).abs(), (var - m as f64).abs()))
}

// ---- dense O(dt) defects ------------------------------------------------------

fn run_switch_time_defect(config: &LabConfig, level: usize) -> LevelResult {
    let cells = level_cells(config, level);
    if cells > 8 {
        return None;
    }
    let grid = Grid::new(cells, config.t_max).unwrap();
    // scalar·E_k integrands lift across grids
    let scalar_vac = |c: Complex64| {
        Process::from_fn(grid, ProcessKind::Vacuum, |j| {
            e_projection(grid, j).unwrap().scale(c)
        })
        .unwrap()
    };
    let x = QSIntegrands::new(
        e_projection(grid, 0).unwrap().scale(Complex64::new(0.2, -0.1)),
        scalar_vac(Complex64::new(0.9, 0.1)),
        scalar_vac(Complex64::new(0.4, -0.3)),
        scalar_vac(Complex64::new(-0.2, 0.5)),
        scalar_vac(Complex64::new(0.3, 0.2)),
    )
    .unwrap();
    let probe: Vec<Complex64> = (0..cells).map(|_| Complex64::new(0.8, -0.5)).collect();
    let vector = switch_naive_vector_residual(&x, &probe).unwrap();
    let frobenius = switch_naive_residual(&x).unwrap();
    Some((cells, grid.dt(), vector, frobenius))
}

fn run_poisson_sde_quantum(config: &LabConfig, level: usize) -> LevelResult {
    let cells = level_cells(config, level);
    if cells > 8 || config.t_max / cells as f64 >= 1.0 {
        return None;
    }
    let grid = Grid::new(cells, config.t_max).unwrap();
    let model = classical_bridge::walk_model(grid, classical_bridge::WalkFlavor::Poisson).unwrap();
    let report = classical_bridge::poisson_sde_check(&model, 1, cells).unwrap();
    Some((cells, grid.dt(), report.quantum_residual, report.quantum_residual))
}

// ---- persistent deviations (measured) ----------------------------------------

fn lift_matrix(coarse_cells: usize, m: usize) -> CMatrix {
    let (dc, df) = (1usize << coarse_cells, 1usize << (coarse_cells * m));
    let mut v = CMatrix::zeros(df, dc);
    let amp = 1.0 / (m as f64).sqrt();
    for cm in 0..dc {
        let occupied: Vec<usize> = (0..coarse_cells).filter(|k| cm & (1 << k) != 0).collect();
        let combos = m.pow(occupied.len() as u32);
        for combo in 0..combos {
            let mut fine = 0usize;
            let mut c = combo;
            let mut weight = 1.0;
            for &cell in &occupied {
                fine |= 1 << (cell * m + c % m);
                c /= m;
                weight *= amp;
            }
            v[(fine, cm)] = Complex64::new(weight, 0.0);
        }
    }
    v
}

fn run_noncomm_defect_remark(config: &LabConfig, level: usize) -> LevelResult {
    // isometric cell-splitting lift of one fixed coarse configuration; the
    // deviation of the compact remark formula does not decay
    let m = 1usize << level;
    let cells = 2 * m;
    if cells > 8 {
        return None;
    }
    let coarse = Grid::new(2, config.t_max).unwrap();
    let mut rng = stream(config.seed, &[name_hash("noncomm-defect-remark")]);
    let z2 = random_operator(coarse, &mut rng);
    let w2 = random_operator(coarse, &mut rng);
    let fine = Grid::new(cells, config.t_max).unwrap();
    let v = lift_matrix(2, m);
    let lift = |z: &FockOperator| {
        FockOperator::from_matrix(fine, v.matmul(z.matrix()).matmul(&v.adjoint())).unwrap()
    };
    let v0 = lift_matrix(1, m);
    let n_block = CMatrix::from_fn(2, 2, |i, j| {
        if i == 1 && j == 1 {
            C1
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let atom_block = v0.matmul(&n_block).matmul(&v0.adjoint());
    let atom = ampliate_past(fine, &atom_block, m).unwrap();
    let rest = FockOperator::identity(fine).sub(&atom);
    let mut atoms = BTreeMap::new();
    atoms.insert(TimePoint::Finite(m), atom);
    atoms.insert(TimePoint::Infinity, rest);
    let s = QuantumStoppingTime::new(fine, atoms).unwrap();
    let (lhs, rhs) = noncomm_defect(&lift(&z2), &lift(&w2), &s).unwrap();
    let gap = operator_norm(&lhs.sub(&rhs));
    Some((cells, fine.dt(), gap, gap))
}

fn run_idstop_open_question(config: &LabConfig, level: usize) -> LevelResult {
    let cells = level_cells(config, level);
    if cells > 6 {
        return None;
    }
    let grid = Grid::new(cells, config.t_max).unwrap();
    let mut worst = 0.0f64;
    for case in 0..6u64 {
        let mut rng = stream(config.seed, &[name_hash("idstop-open-question"), case, level as u64]);
        let z = random_operator(grid, &mut rng);
        let t = random_qst(grid, &mut rng);
        let s = qst_min_const(&t, 1 + (case as usize) % cells);
        let z_s = stop_op_id(&z, &s).unwrap();
        let restopped = stop_op_id(&z_s, &t).unwrap();
        worst = worst.max(restopped.frobenius_diff(&z_s) / (grid.dim() as f64).sqrt());
    }
    Some((cells, grid.dt(), worst, worst))
}

pub const CONVERGENCE_REGISTRY: &[ConvergenceItem] = &[
    ConvergenceItem {
        name: "chaos-projection",
        module: "stopping-times",
        run: run_chaos,
        verdict: VerdictKind::RatioBand,
        note: "the particle-count stopping family: here the time projection equals the \
               number cutoff exactly, so the residual sits at the machine floor and is \
               promoted rather than rate-fitted",
    },
    ConvergenceItem {
        name: "ito-product-identity",
        module: "qsc-integrals",
        run: run_ito_identity,
        verdict: VerdictKind::RatioBand,
        note: "identity-adapted quadruples with dA/dA†/dt parts; probe-vector residual of \
               the product formula, one order in dt",
    },
    ConvergenceItem {
        name: "ito-product-general",
        module: "qsc-integrals",
        run: run_ito_general,
        verdict: VerdictKind::RatioBand,
        note: "vacuum-adapted quadruples with all four parts: the dA†dA/dt cross terms \
               leave a dt-linear defect, matching the exact correction quadruple",
    },
    ConvergenceItem {
        name: "coherent-exponential",
        module: "fock-core",
        run: run_coherent_exponential,
        verdict: VerdictKind::RatioBand,
        note: "⟨ε(1), ε(1)⟩ = (1+dt)^(t_max/dt) against e^t_max",
    },
    ConvergenceItem {
        name: "poisson-gamma-moments",
        module: "classical-bridge",
        run: run_poisson_gamma,
        verdict: VerdictKind::Threshold(|dt| 3.0 * dt),
        note: "Bernoulli(dt) first-jump law against the gamma moments (mean and variance 1); \
               run at a horizon long enough that the truncated mass is below 1e-3",
    },
    ConvergenceItem {
        name: "switch-time-defect",
        module: "qsc-integrals",
        run: run_switch_time_defect,
        verdict: VerdictKind::RatioBand,
        note: "naive representation switch (no dt-weighted gauge compensation): the \
               coherent-probe residual in the fro column decays linearly, while the \
               Frobenius defect in the op column persists, since identity-adapted gauge \
               integration does not preserve boundedness",
    },
    ConvergenceItem {
        name: "poisson-sde-quantum",
        module: "classical-bridge",
        run: run_poisson_sde_quantum,
        verdict: VerdictKind::RatioBand,
        note: "quantum transport of the counting identity; the Bernoulli/Poisson gap decays \
               roughly linearly in dt",
    },
    ConvergenceItem {
        name: "noncomm-defect-remark",
        module: "stopped-processes",
        run: run_noncomm_defect_remark,
        verdict: VerdictKind::Measured,
        note: "deviation of the compact multiplicativity-defect formula under isometric \
               refinement of a fixed configuration: it does not decay, which is why the \
               suite asserts the full-integrand form instead",
    },
    ConvergenceItem {
        name: "idstop-open-question",
        module: "stopped-processes",
        run: run_idstop_open_question,
        verdict: VerdictKind::Measured,
        note: "measured defect of re-stopping the Coquio-stopped operator at a later time; \
               recorded, never asserted",
    },
];

#[derive(Debug)]
pub enum ConvergeError {
    UnknownIdentity { requested: String, known: Vec<String> },
}

impl std::fmt::Display for ConvergeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConvergeError::UnknownIdentity { requested, known } => {
                writeln!(f, "unknown identity '{requested}'; known names:")?;
                for name in known {
                    writeln!(f, "  {name}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for ConvergeError {}

pub fn known_convergence_items() -> Vec<String> {
    let mut names: Vec<String> =
        CONVERGENCE_REGISTRY.iter().map(|i| i.name.to_string()).collect();
    names.extend(REGISTRY.iter().map(|d| d.name.to_string()));
    names
}

fn run_convergence_item(config: &LabConfig, item: &ConvergenceItem) -> ConvergenceReport {
    let mut rows = Vec::new();
    let mut residuals = Vec::new();
    let mut prev: Option<f64> = None;
    for level in 0..config.refinement_levels {
        if let Some((cells, dt, fro, op)) = (item.run)(config, level) {
            // rates are fitted on the fro column; op carries the companion
            // measure (operator-norm-like, or a second probe)
            let tracked = fro;
            let ratio = prev.map(|p| if tracked > 0.0 { p / tracked } else { f64::INFINITY });
            rows.push(ConvergenceRow {
                identity: item.name.to_string(),
                n_cells: cells,
                dt,
                residual_fro: fro,
                residual_op: op,
                ratio,
            });
            residuals.push(tracked);
            prev = Some(tracked);
        }
    }
    let verdict = match item.verdict {
        VerdictKind::RatioBand => ratio_band_verdict(&residuals, 1.6, 2.4),
        VerdictKind::Threshold(bound) => {
            if rows.iter().all(|r| r.residual_fro <= bound(r.dt) && r.residual_op <= bound(r.dt)) {
                Verdict::WithinBounds
            } else {
                Verdict::Failed
            }
        }
        VerdictKind::Measured => Verdict::Measured,
    };
    ConvergenceReport {
        identity: item.name.to_string(),
        module: item.module,
        rows,
        verdict,
        note: item.note.to_string(),
    }
}

/// Runs an exact-suite identity across the refinement levels; residuals stay
/// at the exact tolerance on every level.
fn run_exact_as_convergence(
    config: &LabConfig,
    def: &crate::suite::IdentityDef,
) -> ConvergenceReport {
    let mut rows = Vec::new();
    let mut prev: Option<f64> = None;
    let mut all_within = true;
    for level in 0..config.refinement_levels {
        let cells = level_cells(config, level);
        if cells > 8 {
            continue;
        }
        let grid = Grid::new(cells, config.t_max).unwrap();
        let tol = config.tol_for(cells);
        let ctx = RunCtx { grid, seed: config.seed, cases: 10, tol };
        let residual = (def.run)(&ctx);
        let tol_eff = def.tol_override.map_or(tol, |t| t.max(tol));
        all_within &= residual <= tol_eff;
        let ratio = prev.map(|p| if residual > 0.0 { p / residual } else { f64::INFINITY });
        rows.push(ConvergenceRow {
            identity: def.name.to_string(),
            n_cells: cells,
            dt: grid.dt(),
            residual_fro: residual,
            residual_op: residual,
            ratio,
        });
        prev = Some(residual);
    }
    ConvergenceReport {
        identity: def.name.to_string(),
        module: def.module,
        rows,
        verdict: if all_within { Verdict::ExactPromoted } else { Verdict::Failed },
        note: "exact-tier identity re-measured across levels; residuals stay at the \
               tolerance floor"
            .to_string(),
    }
}

/// Runs the named items (or every registered convergence item when `names`
/// is empty) across the configured refinement levels.
pub fn run_convergence(
    config: &LabConfig,
    names: &[String],
) -> Result<Vec<ConvergenceReport>, ConvergeError> {
    let mut selected: Vec<usize> = Vec::new();
    let mut exact_selected: Vec<usize> = Vec::new();
    if names.is_empty() {
        selected.extend(0..CONVERGENCE_REGISTRY.len());
    } else {
        for name in names {
            if let Some(i) = CONVERGENCE_REGISTRY.iter().position(|d| d.name == name) {
                selected.push(i);
            } else if let Some(i) = REGISTRY.iter().position(|d| d.name == name) {
                exact_selected.push(i);
            } else {
                return Err(ConvergeError::UnknownIdentity {
                    requested: name.clone(),
                    known: known_convergence_items(),
                });
            }
        }
    }
    let mut reports: Vec<(usize, ConvergenceReport)> = selected
        .par_iter()
        .map(|&i| (i, run_convergence_item(config, &CONVERGENCE_REGISTRY[i])))
        .collect();
    let offset = CONVERGENCE_REGISTRY.len();
    let mut exact_reports: Vec<(usize, ConvergenceReport)> = exact_selected
        .par_iter()
        .map(|&i| (offset + i, run_exact_as_convergence(config, &REGISTRY[i])))
        .collect();
    reports.append(&mut exact_reports);
    reports.sort_by_key(|(i, _)| *i);
    Ok(reports.into_iter().map(|(_, r)| r).collect())
}
