//! The exact-identity registry. Each entry measures the worst residual of
//! one identity over seeded random cases at the configured grid size; the
//! suite passes when every residual sits inside the exact-tier tolerance.

use crate::config::LabConfig;
use crate::report::IdentityReport;
use fock_core::*;
use qsc_integrals::*;
use rand::Rng;
use rayon::prelude::*;
use stopped_processes::*;
use stopping_times::*;

#[derive(Clone, Copy)]
pub struct RunCtx {
    pub grid: Grid,
    pub seed: u64,
    pub cases: usize,
    pub tol: f64,
}

impl RunCtx {
    pub fn rng(&self, name: &str, case: u64) -> rand_chacha::ChaCha20Rng {
        stream(self.seed, &[name_hash(name), case])
    }
}

pub struct IdentityDef {
    pub name: &'static str,
    pub module: &'static str,
    /// Residual the identity must keep below its tolerance.
    pub run: fn(&RunCtx) -> f64,
    /// Some identities go through eigensolvers and carry a looser floor.
    pub tol_override: Option<f64>,
}

fn coherent(grid: Grid, rng: &mut impl rand::Rng) -> FockVector {
    let f: Vec<Complex64> = (0..grid.n_cells())
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    FockVector::exponential(grid, &f).unwrap()
}


// ---- fock-core ------------------------------------------------------------

fn run_fock_structure(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let n = grid.n_cells();
    let mut worst = 0.0f64;
    for i in 0..=n {
        for j in 0..=n {
            let prod = e_projection(grid, i).unwrap().mul(&e_projection(grid, j).unwrap());
            worst = worst.max(prod.frobenius_diff(&e_projection(grid, i.min(j)).unwrap()));
        }
    }
    for j in 0..n {
        let lhs = e_projection(grid, j + 1).unwrap().sub(&e_projection(grid, j).unwrap());
        let rhs = e_projection(grid, j).unwrap().gauge_sandwich(j).unwrap();
        worst = worst.max(lhs.frobenius_diff(&rhs));
    }
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("fock-structure", case);
        let f: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let g: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let ef = FockVector::exponential(grid, &f).unwrap();
        let eg = FockVector::exponential(grid, &g).unwrap();
        worst = worst.max((ef.inner(&eg) - coherent_inner(&grid, &f, &g)).norm());
    }
    worst
}

fn run_compression_homomorphism(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("compression-homomorphism", case);
        let j = (case as usize) % (grid.n_cells() + 1);
        let z = pi_id(&random_operator(grid, &mut rng), j).unwrap();
        let w = pi_id(&random_operator(grid, &mut rng), j).unwrap();
        let zw = z.mul(&w);
        worst = worst.max(pi_id(&zw, j).unwrap().frobenius_diff(&zw));
        let lhs = pi_vac(&zw, j).unwrap();
        let rhs = pi_vac(&z, j).unwrap().mul(&pi_vac(&w, j).unwrap());
        worst = worst.max(lhs.frobenius_diff(&rhs));
        // identity-adapted compressions commute with every future cell op
        for k in j..grid.n_cells() {
            let c = cell_op(grid, k, CellKind::Number).unwrap();
            worst = worst.max(z.mul(&c).frobenius_diff(&c.mul(&z)));
        }
    }
    worst
}

fn run_projection_lattice(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for i in 0..=grid.n_cells() {
        for j in 0..=grid.n_cells() {
            let m = meet_projections(
                &e_projection(grid, i).unwrap(),
                &e_projection(grid, j).unwrap(),
            )
            .unwrap();
            worst = worst.max(m.frobenius_diff(&e_projection(grid, i.min(j)).unwrap()));
        }
    }
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("projection-lattice-laws", case);
        let u = random_unitary(grid.dim(), &mut rng);
        let pick = |rng: &mut rand_chacha::ChaCha20Rng| {
            let d: Vec<Complex64> = (0..grid.dim())
                .map(|_| Complex64::new(if rng.gen::<bool>() { 1.0 } else { 0.0 }, 0.0))
                .collect();
            FockOperator::from_matrix(grid, u.matmul(&CMatrix::diagonal(&d)).matmul(&u.adjoint()))
                .unwrap()
                .into_projection_checked()
                .unwrap()
        };
        let p = pick(&mut rng);
        let q = pick(&mut rng);
        worst = worst.max(meet_projections(&p, &q).unwrap().frobenius_diff(&p.mul(&q)));
        let join = join_projections(&p, &q).unwrap();
        worst = worst.max(join.frobenius_diff(&p.add(&q).sub(&p.mul(&q))));
        let r = random_adapted_projection(grid, (case as usize) % (grid.n_cells() + 1), &mut rng)
            .unwrap();
        worst = worst.max(meet_projections(&r, &r).unwrap().frobenius_diff(&r));
    }
    worst
}

// ---- qsc-integrals --------------------------------------------------------

fn run_weak_characterisation(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let n = grid.n_cells();
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("integral-weak-characterisation", case);
        let kind = if case % 2 == 0 { ProcessKind::Vacuum } else { ProcessKind::Identity };
        let proc = random_process(grid, kind, &mut rng);
        let f: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let g: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let ef = FockVector::exponential(grid, &f).unwrap();
        let eg = FockVector::exponential(grid, &g).unwrap();
        let j_end = n;
        let lhs = ef.inner(&gauge_integral(&proc, j_end).unwrap().apply(&eg));
        let mut rhs = Complex64::new(0.0, 0.0);
        for k in 0..j_end {
            let mut fk = f.clone();
            let mut gk = g.clone();
            fk[k] = Complex64::new(0.0, 0.0);
            gk[k] = Complex64::new(0.0, 0.0);
            let efk = FockVector::exponential(grid, &fk).unwrap();
            let egk = FockVector::exponential(grid, &gk).unwrap();
            rhs += f[k].conj() * g[k] * grid.dt() * efk.inner(&proc.value(k).apply(&egk));
        }
        worst = worst.max((lhs - rhs).norm());
        // annihilation weak identity
        let lhs_a = ef.inner(&annihilation_integral(&proc, j_end).unwrap().apply(&eg));
        let mut rhs_a = Complex64::new(0.0, 0.0);
        for k in 0..j_end {
            let mut gk = g.clone();
            gk[k] = Complex64::new(0.0, 0.0);
            let egk = FockVector::exponential(grid, &gk).unwrap();
            rhs_a += g[k] * grid.dt() * ef.inner(&proc.value(k).apply(&egk));
        }
        worst = worst.max((lhs_a - rhs_a).norm());
    }
    worst
}

fn run_martingale_part(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("martingale-part", case);
        let m = random_martingale_quadruple(grid, ProcessKind::Vacuum, &mut rng).unwrap();
        if !is_martingale(&m.as_process().unwrap()).unwrap() {
            worst = worst.max(1.0);
        }
        let drift = Process::constant(e_projection(grid, 0).unwrap(), ProcessKind::Vacuum).unwrap();
        let bad = QSIntegrands::new(
            m.initial().clone(),
            m.gauge().clone(),
            m.annihilation().clone(),
            m.creation().clone(),
            drift,
        )
        .unwrap();
        if is_martingale(&bad.as_process().unwrap()).unwrap() {
            worst = worst.max(1.0);
        }
    }
    worst
}

fn run_ito_product_vacuum(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("ito-product-vacuum", case);
        let x = random_quadruple(grid, ProcessKind::Vacuum, &mut rng);
        let g = random_gauge_only(grid, ProcessKind::Vacuum, &mut rng);
        worst = worst.max(ito_product_residual(&x, &g).unwrap());
        worst = worst.max(ito_product_residual(&g, &x).unwrap());
        // completed-product identity: formula + dt corrections = product
        let y = random_quadruple(grid, ProcessKind::Vacuum, &mut rng);
        let formula = ito_product(&x, &y).unwrap();
        let corr = ito_discrete_corrections(&x, &y).unwrap();
        for j in [grid.n_cells() / 2, grid.n_cells()] {
            let direct = x.eval(j).unwrap().mul(&y.eval(j).unwrap());
            let completed = formula.eval(j).unwrap().add(&corr.eval(j).unwrap());
            worst = worst.max(direct.frobenius_diff(&completed));
        }
    }
    worst
}

fn run_weak_ito_gauge(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("weak-ito-gauge", case);
        let kind = if case % 2 == 0 { ProcessKind::Vacuum } else { ProcessKind::Identity };
        let n = random_process(grid, kind, &mut rng);
        let np = random_process(grid, kind, &mut rng);
        let x = coherent(grid, &mut rng);
        let xp = coherent(grid, &mut rng);
        let j = grid.n_cells();
        let (lhs, rhs) = weak_ito_gauge(&x, &xp, &n, &np, j).unwrap();
        worst = worst.max((lhs - rhs).norm());
    }
    worst
}

fn run_conjugate_tail(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("conjugate-tail", case);
        let j_start = 1 + (case as usize) % grid.n_cells();
        let n = random_process(grid, ProcessKind::Identity, &mut rng);
        let z = random_adapted_projection(grid, j_start, &mut rng).unwrap();
        let w = pi_id(&random_operator(grid, &mut rng), j_start).unwrap();
        let rhs = conjugate_tail_integral(&z, &w, &n, j_start).unwrap();
        let mut tail = FockOperator::zero(grid);
        for k in j_start..grid.n_cells() {
            tail = tail.add(&n.value(k).gauge_sandwich(k).unwrap());
        }
        worst = worst.max(z.mul(&tail).mul(&w).frobenius_diff(&rhs));
    }
    worst
}

fn run_gauge_norm_bound(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("gauge-norm-bound", case);
        let f: Vec<Complex64> = (0..grid.n_cells())
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let vac = random_process(grid, ProcessKind::Vacuum, &mut rng);
        let (lhs, bound) = gauge_norm_estimate(&vac, &f).unwrap();
        worst = worst.max((lhs - bound).max(0.0)); // vacuum: C_f = 1 must bound
        let idk = random_process(grid, ProcessKind::Identity, &mut rng);
        let (lhs, bound) = gauge_norm_estimate(&idk, &f).unwrap();
        worst = worst.max((lhs - bound).max(0.0));
    }
    worst
}

fn run_switch_representation(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("switch-representation", case);
        let x = random_quadruple(grid, ProcessKind::Vacuum, &mut rng);
        worst = worst.max(switch_residual(&x).unwrap());
    }
    worst
}

fn run_integrator_independence(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("integrator-independence", case);
        let kind = if case % 2 == 0 { ProcessKind::Vacuum } else { ProcessKind::Identity };
        let x = random_quadruple(grid, kind, &mut rng);
        let rec = recover_integrands(&x).unwrap();
        for k in 0..grid.n_cells() {
            worst = worst.max(rec.gauge().value(k).frobenius_diff(x.gauge().value(k)));
            worst = worst.max(rec.annihilation().value(k).frobenius_diff(x.annihilation().value(k)));
            worst = worst.max(rec.creation().value(k).frobenius_diff(x.creation().value(k)));
            worst = worst.max(rec.time().value(k).frobenius_diff(x.time().value(k)));
        }
    }
    worst
}

// ---- stopping-times --------------------------------------------------------

fn run_pvm_algebra(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let n = grid.n_cells();
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("pvm-algebra", case);
        let s = random_qst(grid, &mut rng);
        if validate(&s).is_err() {
            worst = worst.max(1.0);
            continue;
        }
        for j in 0..n {
            let cj = s.cumulative(j);
            let cj1 = s.cumulative(j + 1);
            worst = worst.max(cj1.mul(&cj).frobenius_diff(&cj));
        }
        let mid = n / 2;
        let a = s.interval_mass(TimePoint::Finite(0), TimePoint::Finite(mid)).unwrap();
        let b = s.interval_mass(TimePoint::Finite(mid + 1), TimePoint::Infinity).unwrap();
        worst = worst.max(a.mul(&b).frobenius_norm());
        let all = s.interval_mass(TimePoint::Finite(0), TimePoint::Infinity).unwrap();
        worst = worst.max(all.frobenius_diff(&FockOperator::identity(grid)));
    }
    worst
}

fn run_refinement_monotone(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let n = grid.n_cells();
    // nested chain by repeated bisection, ending at the full grid
    let chains: Vec<Vec<usize>> = {
        let mut c = vec![vec![0, n]];
        loop {
            let last = c.last().unwrap();
            let mut next = Vec::new();
            for w in last.windows(2) {
                next.push(w[0]);
                if w[1] - w[0] > 1 {
                    next.push((w[0] + w[1]) / 2);
                }
            }
            next.push(n);
            if &next == last {
                break;
            }
            c.push(next);
        }
        c
    };
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("refinement-monotone", case);
        let s = random_qst(grid, &mut rng);
        let es = time_projection(&s).unwrap();
        let mut prev: Option<FockOperator> = None;
        for chain in &chains {
            let coarse = time_projection_coarse(&s, chain).unwrap();
            if let Some(p) = &prev {
                worst = worst.max((-min_eigenvalue(p.sub(&coarse).matrix())).max(0.0));
            }
            worst = worst.max((-min_eigenvalue(coarse.sub(&es).matrix())).max(0.0));
            prev = Some(coarse);
        }
        worst = worst.max(prev.unwrap().frobenius_diff(&es));
    }
    worst
}

fn run_time_projection_integral(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("time-projection-integral", case);
        let s = random_qst(grid, &mut rng);
        let es = time_projection(&s).unwrap();
        let (f1, f2) = time_projection_integral(&s).unwrap();
        worst = worst.max(f1.frobenius_diff(&es));
        worst = worst.max(f2.frobenius_diff(&es));
        worst = worst.max(time_projection_integral_id(&s).unwrap().frobenius_diff(&es));
    }
    worst
}

fn run_time_projection_order(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("time-projection-order", case);
        let s = random_qst(grid, &mut rng);
        let es = time_projection(&s).unwrap();
        for j in 0..=grid.n_cells() {
            let ej = e_projection(grid, j).unwrap();
            let wedge = time_projection_wedge(&s, j).unwrap();
            worst = worst.max(es.mul(&ej).frobenius_diff(&wedge));
            worst = worst.max(ej.mul(&es).frobenius_diff(&wedge));
        }
        // commuting cumulative families commute downstream
        let a = random_diagonal_qst(grid, &mut rng);
        let b = random_diagonal_qst(grid, &mut rng);
        let ea = time_projection(&a).unwrap();
        let eb = time_projection(&b).unwrap();
        worst = worst.max(ea.mul(&eb).frobenius_diff(&eb.mul(&ea)));
    }
    worst
}

fn run_time_projection_lattice(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("time-projection-lattice", case);
        let s = random_qst(grid, &mut rng);
        let t = random_qst(grid, &mut rng);
        let es = time_projection(&s).unwrap();
        let et = time_projection(&t).unwrap();
        let meet = qst_meet(&s, &t).unwrap();
        worst = worst
            .max(time_projection(&meet).unwrap().frobenius_diff(&meet_projections(&es, &et).unwrap()));
        let join = qst_join(&s, &t).unwrap();
        worst = worst
            .max(time_projection(&join).unwrap().frobenius_diff(&join_projections(&es, &et).unwrap()));
    }
    worst
}

fn run_wedge_const(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("wedge-const", case);
        let s = random_qst(grid, &mut rng);
        let es = time_projection(&s).unwrap();
        for j in 0..=grid.n_cells() {
            let rhs = e_s_wedge_const(&s, j).unwrap();
            worst = worst.max(rhs.frobenius_diff(&time_projection_wedge(&s, j).unwrap()));
            worst = worst.max(rhs.frobenius_diff(&es.mul(&e_projection(grid, j).unwrap())));
        }
    }
    worst
}

fn run_es_gradient(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("es-gradient", case);
        let s = random_qst(grid, &mut rng);
        let t = random_qst(grid, &mut rng);
        let x = coherent(grid, &mut rng);
        let (lhs, rhs) = es_distance_sq(&s, &t, &x).unwrap();
        worst = worst.max((lhs - rhs).abs());
        let (pl, pr) = es_pythagoras(&s, &x).unwrap();
        worst = worst.max((pl - pr).abs());
    }
    worst
}

fn run_qst_order(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("qst-order", case);
        let s = random_qst(grid, &mut rng);
        if !qst_le(&s, &s).unwrap() {
            worst = worst.max(1.0);
        }
        let t = 1 + (case as usize) % grid.n_cells();
        let st = qst_min_const(&s, t);
        if !qst_le(&st, &s).unwrap() {
            worst = worst.max(1.0);
        }
        for u in 0..=t {
            let su = qst_min_const(&s, u);
            let nested = qst_min_const(&st, u);
            for j in 0..=grid.n_cells() {
                worst = worst.max(nested.cumulative(j).frobenius_diff(&su.cumulative(j)));
            }
        }
    }
    worst
}

// ---- stopped-processes ------------------------------------------------------

fn run_stopped_algebra(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("stopped-algebra-condexp", case);
        let s = random_qst(grid, &mut rng);
        let probe = StoppedAlgebraProbe::with_random_samples(s, 5, ctx.seed ^ case);
        let report = conditional_expectation_probe(&probe).unwrap();
        worst = worst.max(report.idempotent_residual);
        worst = worst.max(report.bimodule_residual);
        worst = worst.max(report.vacuum_state_residual);
        worst = worst.max((-report.positivity_min_eig - EPS_LATTICE).max(0.0));
    }
    worst
}

fn run_closed_compression_martingales(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("closed-compression-martingales", case);
        let z = random_operator(grid, &mut rng);
        let m = Process::closed_vacuum_martingale(&z).unwrap();
        if !is_martingale(&m).unwrap() || !m.is_closed_by_its_closing().unwrap() {
            worst = worst.max(1.0);
        }
        let mi = Process::closed_identity_martingale(&z).unwrap();
        if !is_martingale(&mi).unwrap() {
            worst = worst.max(1.0);
        }
        let s = random_qst(grid, &mut rng);
        let family = stopped_martingale_process(&z, &s).unwrap();
        if !is_martingale(&family).unwrap() || !family.is_closed_by_its_closing().unwrap() {
            worst = worst.max(1.0);
        }
        let m_stopped = stop_op_vac(&z, &s).unwrap();
        let want0 = e_projection(grid, 0).unwrap().scale(m_stopped.vacuum_state());
        worst = worst.max(family.value(0).frobenius_diff(&want0));
    }
    worst
}

fn run_discrete_double_stop(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("discrete-double-stop", case);
        let x = random_process(grid, ProcessKind::Adapted, &mut rng);
        let t = random_qst(grid, &mut rng);
        let x_vac = stop_process_discrete_vac(&x, &t).unwrap();
        let x_id = stop_process_discrete_id(&x, &t).unwrap();
        let cp = |z: &FockOperator| Process::constant(z.clone(), ProcessKind::General).unwrap();
        worst = worst.max(stop_process_discrete_vac(&cp(&x_vac), &t).unwrap().frobenius_diff(&x_vac));
        worst = worst.max(stop_process_discrete_vac(&cp(&x_id), &t).unwrap().frobenius_diff(&x_vac));
        worst = worst.max(stop_process_discrete_id(&cp(&x_vac), &t).unwrap().frobenius_diff(&x_id));
        worst = worst.max(stop_process_discrete_id(&cp(&x_id), &t).unwrap().frobenius_diff(&x_id));
    }
    worst
}

fn run_discrete_stop_adapted(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("discrete-stop-adapted", case);
        let x = random_process(grid, ProcessKind::Adapted, &mut rng);
        let t = random_qst(grid, &mut rng);
        let x_vac = stop_process_discrete_vac(&x, &t).unwrap();
        let x_id = stop_process_discrete_id(&x, &t).unwrap();
        let et = time_projection(&t).unwrap();
        worst = worst.max(x_id.mul(&et).frobenius_diff(&x_vac));
        worst = worst.max(et.mul(&x_id).frobenius_diff(&x_vac));
        let j = (case as usize) % (grid.n_cells() + 1);
        let c = t.cumulative(j);
        let wedge = qst_min_const(&t, j);
        let lhs = c.mul(&x_vac).mul(&c);
        let rhs = c.mul(&stop_process_discrete_vac(&x, &wedge).unwrap()).mul(&c);
        worst = worst.max(lhs.frobenius_diff(&rhs));
        let lhs_id = c.mul(&x_id).mul(&c);
        let rhs_id = c.mul(&stop_process_discrete_id(&x, &wedge).unwrap()).mul(&c);
        worst = worst.max(lhs_id.frobenius_diff(&rhs_id));
    }
    worst
}

fn run_discrete_stop_compress(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("discrete-stop-compress", case);
        let x = random_process(grid, ProcessKind::Adapted, &mut rng);
        let t = random_qst(grid, &mut rng);
        let j = (case as usize) % (grid.n_cells() + 1);
        let wedge = qst_min_const(&t, j);
        let w_vac = stop_process_discrete_vac(&x, &wedge).unwrap();
        worst = worst.max(w_vac.e_sandwich(j).unwrap().frobenius_diff(&w_vac));
        let w_id = stop_process_discrete_id(&x, &wedge).unwrap();
        worst = worst.max(pi_id(&w_id, j).unwrap().frobenius_diff(&w_id));
    }
    worst
}

fn run_discrete_closed_martingale(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("discrete-closed-martingale", case);
        let z = random_operator(grid, &mut rng);
        let m = Process::closed_vacuum_martingale(&z).unwrap();
        let t = random_qst(grid, &mut rng);
        let et = time_projection(&t).unwrap();
        let stopped = stop_process_discrete_vac(&m, &t).unwrap();
        worst = worst.max(stopped.frobenius_diff(&et.mul(m.value(grid.n_cells())).mul(&et)));
        worst = worst.max((stopped.vacuum_state() - m.value(0).vacuum_state()).norm());
        let j = (case as usize) % (grid.n_cells() + 1);
        let wedge = qst_min_const(&t, j);
        let w_vac = stop_process_discrete_vac(&m, &wedge).unwrap();
        worst = worst.max(stopped.e_sandwich(j).unwrap().frobenius_diff(&w_vac));
        let m_id = stop_process_discrete_id(&m, &t).unwrap();
        let w_id = stop_process_discrete_id(&m, &wedge).unwrap();
        worst = worst.max(pi_id(&m_id, j).unwrap().frobenius_diff(&w_id));
    }
    worst
}

fn run_martingale_characterisation(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut disagreements = 0usize;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("martingale-characterisation", case);
        let x = if case % 2 == 0 {
            Process::closed_vacuum_martingale(&random_operator(grid, &mut rng)).unwrap()
        } else {
            let m = Process::closed_vacuum_martingale(&random_operator(grid, &mut rng)).unwrap();
            let bump = random_process(grid, ProcessKind::Vacuum, &mut rng);
            let ops = (0..=grid.n_cells())
                .map(|j| m.value(j).add(&bump.value(j).scale(Complex64::new(grid.time(j), 0.0))))
                .collect();
            Process::new(grid, ProcessKind::Vacuum, ops, None).unwrap()
        };
        let direct = is_martingale(&x).unwrap();
        let via = mgchar_test(&x, 2, ctx.seed ^ (case << 8)).unwrap();
        if direct != via.is_martingale {
            disagreements += 1;
        }
        if !direct && via.witness.is_none() {
            disagreements += 1;
        }
    }
    disagreements as f64
}

fn run_closed_martingale_stop(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("closed-martingale-stop", case);
        let z = random_operator(grid, &mut rng);
        let s = random_qst(grid, &mut rng);
        let es = time_projection(&s).unwrap();
        let m_stopped = stop_op_vac(&z, &s).unwrap();
        worst = worst.max(es.mul(&m_stopped).mul(&es).frobenius_diff(&m_stopped));
        let j = (case as usize) % (grid.n_cells() + 1);
        let wedge = qst_min_const(&s, j);
        let m_wedge = stop_op_vac(&z, &wedge).unwrap();
        worst = worst.max(m_wedge.e_sandwich(j).unwrap().frobenius_diff(&m_wedge));
        worst = worst.max(m_stopped.e_sandwich(j).unwrap().frobenius_diff(&m_wedge));
        let c = s.cumulative(j);
        worst = worst.max(
            c.mul(&m_stopped).mul(&c).frobenius_diff(&c.mul(&m_wedge).mul(&c)),
        );
    }
    worst
}

fn run_optional_sampling_vac(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("optional-sampling-vac", case);
        let z = random_operator(grid, &mut rng);
        let t = random_qst(grid, &mut rng);
        let m_t = stop_op_vac(&z, &t).unwrap();
        let j = 1 + (case as usize) % grid.n_cells();
        let s = qst_min_const(&t, j);
        let m_s = stop_op_vac(&z, &s).unwrap();
        worst = worst.max(stop_op_vac(&m_s, &t).unwrap().frobenius_diff(&m_s));
        worst = worst.max(stop_op_vac(&m_t, &s).unwrap().frobenius_diff(&m_s));
        // every tenth case exercises a lattice pair
        if case % 10 == 0 {
            let t2 = random_qst(grid, &mut rng);
            if let Ok(meet) = qst_meet(&t, &t2) {
                let m_meet = stop_op_vac(&z, &meet).unwrap();
                worst = worst.max(stop_op_vac(&m_meet, &t).unwrap().frobenius_diff(&m_meet) / 100.0);
            }
        }
    }
    worst
}

fn run_optional_sampling_id(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("optional-sampling-id", case);
        let z = random_operator(grid, &mut rng);
        let t = random_qst(grid, &mut rng);
        let m_t_hat = stop_op_id(&z, &t).unwrap();
        let j = 1 + (case as usize) % grid.n_cells();
        let s = qst_min_const(&t, j);
        let lhs = stop_op_id(&m_t_hat, &s).unwrap();
        let rhs = stop_op_id(&z, &s).unwrap();
        worst = worst.max(lhs.frobenius_diff(&rhs));
    }
    worst
}

fn run_vac_id_decomposition(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("vac-id-decomposition", case);
        let z = random_operator(grid, &mut rng);
        for j in 0..=grid.n_cells() {
            let (vac, tail) = mint_decompose(&z, j).unwrap();
            worst = worst.max(vac.add(&tail).frobenius_diff(&pi_id(&z, j).unwrap()));
        }
    }
    worst
}

fn run_id_stop_integral(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("id-stop-integral", case);
        let z = random_operator(grid, &mut rng);
        let s = random_qst(grid, &mut rng);
        let via_op = stop_op_id(&z, &s).unwrap();
        let m_vac = Process::closed_vacuum_martingale(&z).unwrap();
        worst = worst.max(stop_process_discrete_id(&m_vac, &s).unwrap().frobenius_diff(&via_op));
        let m_id = Process::closed_identity_martingale(&z).unwrap();
        worst = worst.max(stop_process_discrete_id(&m_id, &s).unwrap().frobenius_diff(&via_op));
    }
    worst
}

fn run_id_stop_norm(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("id-stop-norm", case);
        let z = random_operator(grid, &mut rng);
        let s = random_qst(grid, &mut rng);
        let z_vac = stop_op_vac(&z, &s).unwrap();
        let z_id = stop_op_id(&z, &s).unwrap();
        let es = time_projection(&s).unwrap();
        worst = worst.max(es.mul(&z_id).frobenius_diff(&z_vac));
        worst = worst.max((operator_norm(&z_id) - operator_norm(&z) - 1e-8).max(0.0));
        let theta = coherent(grid, &mut rng);
        let lhs = z_id.apply(&theta).norm_sqr() - z_vac.apply(&theta).norm_sqr();
        let mut rhs = 0.0;
        for k in 0..grid.n_cells() {
            let c = s.cumulative(k);
            let m = c.mul(&pi_id(&z_vac, k).unwrap()).mul(&c);
            rhs += m.apply(&gradient(&theta, k).unwrap()).norm_sqr();
        }
        worst = worst.max((lhs - rhs).abs());
    }
    worst
}

fn run_stop_idempotents(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("stop-idempotents", case);
        let z = random_operator(grid, &mut rng);
        let s = random_qst(grid, &mut rng);
        let z_vac = stop_op_vac(&z, &s).unwrap();
        let z_id = stop_op_id(&z, &s).unwrap();
        worst = worst.max(stop_op_vac(&z_vac, &s).unwrap().frobenius_diff(&z_vac));
        worst = worst.max(stop_op_vac(&z_id, &s).unwrap().frobenius_diff(&z_vac));
        worst = worst.max(stop_op_id(&z_vac, &s).unwrap().frobenius_diff(&z_id));
        worst = worst.max(stop_op_id(&z_id, &s).unwrap().frobenius_diff(&z_id));
        let es = time_projection(&s).unwrap();
        worst = worst.max(es.mul(&z_id).frobenius_diff(&z_vac));
    }
    worst
}

fn run_time_projection_id_form(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("time-projection-id-form", case);
        let s = random_qst(grid, &mut rng);
        for j in 0..=grid.n_cells() {
            let (lhs, rhs1, rhs2) = idtpint_check(&s, j).unwrap();
            worst = worst.max(lhs.frobenius_diff(&rhs1));
            worst = worst.max(lhs.frobenius_diff(&rhs2));
        }
    }
    worst
}

fn run_noncomm_defect_exact(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("noncomm-defect-exact", case);
        let z = random_operator(grid, &mut rng);
        let w = random_operator(grid, &mut rng);
        let s = random_qst(grid, &mut rng);
        let (lhs, rhs) = noncomm_defect_exact(&z, &w, &s).unwrap();
        worst = worst.max(lhs.frobenius_diff(&rhs));
        // the compact remark form vanishes against the identity
        let (l0, r0) = noncomm_defect(&z, &FockOperator::identity(grid), &s).unwrap();
        worst = worst.max(l0.frobenius_norm().max(r0.frobenius_norm()));
    }
    worst
}

fn run_fv_stop(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("fv-stop", case);
        let kind = if case % 2 == 0 { ProcessKind::Vacuum } else { ProcessKind::Identity };
        let y = FVProcess::new(random_process(grid, kind, &mut rng)).unwrap();
        let s = random_qst(grid, &mut rng);
        let stopped = stop_fv_vac(&y, &s).unwrap();
        let es = time_projection(&s).unwrap();
        worst = worst.max(es.mul(&stopped).mul(&es).frobenius_diff(&stopped));
        worst = worst.max(
            stopped.frobenius_diff(&stop_process_discrete_vac(&y.as_process().unwrap(), &s).unwrap()),
        );
        let j = (case as usize) % (grid.n_cells() + 1);
        let (lhs, rhs) = fv_wedge_identity(&y, &s, j).unwrap();
        worst = worst.max(lhs.frobenius_diff(&rhs));
    }
    worst
}

fn run_fv_id_stop(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("fv-id-stop", case);
        let kind = if case % 2 == 0 { ProcessKind::Vacuum } else { ProcessKind::Identity };
        let y = FVProcess::new(random_process(grid, kind, &mut rng)).unwrap();
        let t = random_qst(grid, &mut rng);
        let j = (case as usize) % (grid.n_cells() + 1);
        let (compression, gauge, time) = idfvint_decompose(&y, j).unwrap();
        let sum = compression.add(&gauge).sub(&time);
        worst = worst.max(sum.frobenius_diff(&pi_id(&y.value(j), j).unwrap()));
        let via_formula = stop_fv_id_discrete(&y, &t).unwrap();
        let via_sum = stop_process_discrete_id(&y.as_process().unwrap(), &t).unwrap();
        worst = worst.max(via_formula.frobenius_diff(&via_sum));
        let et = time_projection(&t).unwrap();
        worst = worst.max(et.mul(&via_formula).frobenius_diff(&stop_fv_vac(&y, &t).unwrap()));
        worst = worst.max(killed_gauge_term(&y, &t).unwrap().frobenius_norm());
    }
    worst
}

fn run_fv_decomposition(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("fv-decomposition", case);
        let kind = if case % 2 == 0 { ProcessKind::Vacuum } else { ProcessKind::Identity };
        let z = random_operator(grid, &mut rng);
        let m = match kind {
            ProcessKind::Vacuum => Process::closed_vacuum_martingale(&z).unwrap(),
            _ => Process::closed_identity_martingale(&z).unwrap(),
        };
        let y = FVProcess::new(random_process(grid, kind, &mut rng)).unwrap();
        let ops: Vec<FockOperator> =
            (0..=grid.n_cells()).map(|j| m.value(j).add(&y.value(j))).collect();
        let x = Process::new(grid, kind, ops, None).unwrap();
        let (m_rec, y_rec) = decompose_semimartingale(&x).unwrap();
        for j in 0..=grid.n_cells() {
            worst = worst.max(m_rec.value(j).frobenius_diff(m.value(j)));
            worst = worst.max(y_rec.value(j).frobenius_diff(&y.value(j)));
        }
    }
    worst
}

fn run_semimartingale_stop(ctx: &RunCtx) -> f64 {
    let grid = ctx.grid;
    let mut worst = 0.0f64;
    for case in 0..ctx.cases as u64 {
        let mut rng = ctx.rng("semimartingale-stop", case);
        let x = random_quadruple(grid, ProcessKind::Vacuum, &mut rng);
        let s = random_qst(grid, &mut rng);
        let stopped = stop_semimartingale_vac(&x, &s).unwrap();
        let value = stopped.eval(grid.n_cells()).unwrap();
        worst = worst.max(value.frobenius_diff(&stopped_semimartingale_value(&x, &s).unwrap()));
    }
    worst
}

// ---- classical-bridge --------------------------------------------------------

fn run_classical_conditional_expectation(ctx: &RunCtx) -> f64 {
    use classical_bridge::*;
    let n = ctx.grid.n_cells().clamp(2, 4);
    let grid = Grid::new(n, ctx.grid.t_max()).unwrap();
    let mut worst = 0.0f64;
    for (fi, flavor) in [WalkFlavor::Symmetric, WalkFlavor::Poisson].iter().enumerate() {
        let model = walk_model(grid, *flavor).unwrap();
        for j in 0..=n {
            let fock_side = model.from_fock(&e_projection(grid, j).unwrap());
            worst = worst.max(fock_side.diff_frobenius(&conditioning_matrix(&model, j)));
        }
        for case in 0..ctx.cases.max(20) as u64 {
            let mut rng = ctx.rng("classical-conditional-expectation", case ^ ((fi as u64) << 32));
            let tau = random_adapted_tau(&model, &mut rng);
            let qst = classical_st_to_qst(&model, &tau).unwrap();
            let lhs = model.from_fock(&time_projection(&qst).unwrap());
            worst = worst.max(lhs.diff_frobenius(&conditional_expectation_matrix(&model, &tau)));
        }
    }
    worst
}

fn run_classical_counting_identity(ctx: &RunCtx) -> f64 {
    use classical_bridge::*;
    let n = ctx.grid.n_cells().min(6);
    let grid = Grid::new(n, 1.0).unwrap();
    let model = walk_model(grid, WalkFlavor::Poisson).unwrap();
    let mut worst = 0.0f64;
    for m in 1..=2usize {
        for j in 0..=n {
            let report = poisson_sde_check(&model, m, j).unwrap();
            worst = worst.max(report.classical_residual);
        }
    }
    worst
}

pub const REGISTRY: &[IdentityDef] = &[
    IdentityDef { name: "fock-structure", module: "fock-core", run: run_fock_structure, tol_override: None },
    IdentityDef { name: "compression-homomorphism", module: "fock-core", run: run_compression_homomorphism, tol_override: None },
    IdentityDef { name: "projection-lattice-laws", module: "fock-core", run: run_projection_lattice, tol_override: Some(1e-7) },
    IdentityDef { name: "integral-weak-characterisation", module: "qsc-integrals", run: run_weak_characterisation, tol_override: None },
    IdentityDef { name: "martingale-part", module: "qsc-integrals", run: run_martingale_part, tol_override: Some(0.5) },
    IdentityDef { name: "ito-product-vacuum", module: "qsc-integrals", run: run_ito_product_vacuum, tol_override: None },
    IdentityDef { name: "weak-ito-gauge", module: "qsc-integrals", run: run_weak_ito_gauge, tol_override: None },
    IdentityDef { name: "conjugate-tail", module: "qsc-integrals", run: run_conjugate_tail, tol_override: None },
    IdentityDef { name: "gauge-norm-bound", module: "qsc-integrals", run: run_gauge_norm_bound, tol_override: None },
    IdentityDef { name: "switch-representation", module: "qsc-integrals", run: run_switch_representation, tol_override: None },
    IdentityDef { name: "integrator-independence", module: "qsc-integrals", run: run_integrator_independence, tol_override: None },
    IdentityDef { name: "pvm-algebra", module: "stopping-times", run: run_pvm_algebra, tol_override: None },
    IdentityDef { name: "refinement-monotone", module: "stopping-times", run: run_refinement_monotone, tol_override: Some(1e-8) },
    IdentityDef { name: "time-projection-integral", module: "stopping-times", run: run_time_projection_integral, tol_override: None },
    IdentityDef { name: "time-projection-order", module: "stopping-times", run: run_time_projection_order, tol_override: None },
    IdentityDef { name: "time-projection-lattice", module: "stopping-times", run: run_time_projection_lattice, tol_override: Some(1e-6) },
    IdentityDef { name: "wedge-const", module: "stopping-times", run: run_wedge_const, tol_override: None },
    IdentityDef { name: "es-gradient", module: "stopping-times", run: run_es_gradient, tol_override: None },
    IdentityDef { name: "qst-order", module: "stopping-times", run: run_qst_order, tol_override: None },
    IdentityDef { name: "stopped-algebra-condexp", module: "stopped-processes", run: run_stopped_algebra, tol_override: None },
    IdentityDef { name: "closed-compression-martingales", module: "stopped-processes", run: run_closed_compression_martingales, tol_override: None },
    IdentityDef { name: "discrete-double-stop", module: "stopped-processes", run: run_discrete_double_stop, tol_override: None },
    IdentityDef { name: "discrete-stop-adapted", module: "stopped-processes", run: run_discrete_stop_adapted, tol_override: None },
    IdentityDef { name: "discrete-stop-compress", module: "stopped-processes", run: run_discrete_stop_compress, tol_override: None },
    IdentityDef { name: "discrete-closed-martingale", module: "stopped-processes", run: run_discrete_closed_martingale, tol_override: None },
    IdentityDef { name: "martingale-characterisation", module: "stopped-processes", run: run_martingale_characterisation, tol_override: Some(0.5) },
    IdentityDef { name: "closed-martingale-stop", module: "stopped-processes", run: run_closed_martingale_stop, tol_override: None },
    IdentityDef { name: "optional-sampling-vac", module: "stopped-processes", run: run_optional_sampling_vac, tol_override: Some(1e-7) },
    IdentityDef { name: "optional-sampling-id", module: "stopped-processes", run: run_optional_sampling_id, tol_override: None },
    IdentityDef { name: "vac-id-decomposition", module: "stopped-processes", run: run_vac_id_decomposition, tol_override: None },
    IdentityDef { name: "id-stop-integral", module: "stopped-processes", run: run_id_stop_integral, tol_override: None },
    IdentityDef { name: "id-stop-norm", module: "stopped-processes", run: run_id_stop_norm, tol_override: None },
    IdentityDef { name: "stop-idempotents", module: "stopped-processes", run: run_stop_idempotents, tol_override: None },
    IdentityDef { name: "time-projection-id-form", module: "stopped-processes", run: run_time_projection_id_form, tol_override: None },
    IdentityDef { name: "noncomm-defect-exact", module: "stopped-processes", run: run_noncomm_defect_exact, tol_override: None },
    IdentityDef { name: "fv-stop", module: "stopped-processes", run: run_fv_stop, tol_override: None },
    IdentityDef { name: "fv-id-stop", module: "stopped-processes", run: run_fv_id_stop, tol_override: None },
    IdentityDef { name: "fv-decomposition", module: "stopped-processes", run: run_fv_decomposition, tol_override: None },
    IdentityDef { name: "semimartingale-stop", module: "stopped-processes", run: run_semimartingale_stop, tol_override: None },
    IdentityDef { name: "classical-conditional-expectation", module: "classical-bridge", run: run_classical_conditional_expectation, tol_override: None },
    IdentityDef { name: "classical-counting-identity", module: "classical-bridge", run: run_classical_counting_identity, tol_override: None },
];

pub fn known_identities() -> Vec<&'static str> {
    REGISTRY.iter().map(|d| d.name).collect()
}

pub struct SuiteOutcome {
    pub reports: Vec<IdentityReport>,
    pub all_pass: bool,
}

/// Runs every registered identity in a worker pool; results come back in
/// registry order regardless of completion order.
pub fn run_suite(config: &LabConfig) -> SuiteOutcome {
    run_suite_filtered(config, None)
}

pub fn run_suite_filtered(config: &LabConfig, only: Option<&[String]>) -> SuiteOutcome {
    let grid = Grid::new(config.n_cells, config.t_max).expect("validated config");
    let tol = config.tol_for(config.n_cells);
    let defs: Vec<&IdentityDef> = REGISTRY
        .iter()
        .filter(|d| only.is_none_or(|names| names.iter().any(|n| n == d.name)))
        .collect();
    let mut reports: Vec<(usize, IdentityReport)> = defs
        .par_iter()
        .enumerate()
        .map(|(idx, def)| {
            let ctx = RunCtx { grid, seed: config.seed, cases: config.cases_per_identity, tol };
            let max_residual = (def.run)(&ctx);
            let tol_final = def.tol_override.map_or(tol, |t| t.max(tol));
            (
                idx,
                IdentityReport {
                    name: def.name,
                    module: def.module,
                    cases: config.cases_per_identity,
                    max_residual,
                    tol: tol_final,
                    pass: max_residual <= tol_final,
                },
            )
        })
        .collect();
    reports.sort_by_key(|(idx, _)| *idx);
    let reports: Vec<IdentityReport> = reports.into_iter().map(|(_, r)| r).collect();
    let all_pass = reports.iter().all(|r| r.pass);
    SuiteOutcome { reports, all_pass }
}
