//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test -p lab-cli --test acceptance -- --nocapture`.

use fock_core::*;
use lab_cli::*;
use qsc_integrals::{is_martingale, Process, ProcessKind};
use std::collections::BTreeMap;
use stopped_processes::{mgchar_test, stop_op_vac};
use stopping_times::*;

/// Criterion 1: the exact-identity suite at 6 cells, 100 seeded cases per
/// identity, tolerance 1e-10·2^6, all identities passing.
#[test]
fn criterion_1_exact_suite() {
    let config = LabConfig::default();
    assert_eq!(config.n_cells, 6);
    assert_eq!(config.cases_per_identity, 100);
    let started = std::time::Instant::now();
    let outcome = run_suite(&config);
    let elapsed = started.elapsed();
    for report in &outcome.reports {
        println!("  {}", report.line());
    }
    assert!(outcome.reports.len() >= 40);
    assert!(outcome.all_pass, "exact suite has failures");
    assert!(
        elapsed.as_secs() < 120,
        "suite took {elapsed:?}, budget is 120 s"
    );
    println!(
        "[PASS] criterion 1: {} exact identities at 6 cells, 100 cases each, in {elapsed:?}",
        outcome.reports.len()
    );
}

/// Criterion 2: the worked two-cell example reproduced bit for bit by all
/// three time-projection routes.
#[test]
fn criterion_2_worked_example() {
    let grid = Grid::new(2, 1.0).unwrap();
    let n0 = cell_op(grid, 0, CellKind::Number).unwrap();
    let mut atoms = BTreeMap::new();
    atoms.insert(TimePoint::Finite(1), n0.clone());
    atoms.insert(TimePoint::Infinity, FockOperator::identity(grid).sub(&n0));
    let s = QuantumStoppingTime::new(grid, atoms).unwrap();

    let direct = time_projection(&s).unwrap();
    let (form1, form2) = time_projection_integral(&s).unwrap();
    let id_form = time_projection_integral_id(&s).unwrap();
    // E_S = diag(1,1,1,0), entry for entry, no tolerance
    for m in 0..4usize {
        for mp in 0..4usize {
            let want = if m == mp && m != 3 { 1.0 } else { 0.0 };
            for (route, op) in
                [("direct", &direct), ("gauge", &form1), ("gauge-2", &form2), ("identity", &id_form)]
            {
                let entry = op.matrix()[(m, mp)];
                assert!(
                    entry.re == want && entry.im == 0.0,
                    "route {route} entry ({m},{mp}) = {entry}"
                );
            }
        }
    }
    // I − E_S = |11⟩⟨11|
    let complement = FockOperator::identity(grid).sub(&direct);
    for m in 0..4usize {
        for mp in 0..4usize {
            let want = if m == 3 && mp == 3 { 1.0 } else { 0.0 };
            assert!(complement.matrix()[(m, mp)].re == want);
            assert!(complement.matrix()[(m, mp)].im == 0.0);
        }
    }
    println!("[PASS] criterion 2: two-cell E_S = diag(1,1,1,0) bit-for-bit on all three routes");
}

/// Criterion 3: on grids up to 4 cells, U E_T U† equals the classical
/// conditional-expectation matrix for a family of at least 20 adapted
/// stopping rules, within 1e-10.
#[test]
fn criterion_3_classical_bridge() {
    use classical_bridge::*;
    let mut checked = 0usize;
    for flavor in [WalkFlavor::Symmetric, WalkFlavor::Poisson] {
        for n in 2..=4usize {
            let grid = Grid::new(n, 1.0).unwrap();
            let model = walk_model(grid, flavor).unwrap();
            let mut family: Vec<ClassicalStoppingTime> = Vec::new();
            for j in 0..=n {
                family.push(ClassicalStoppingTime::constant(&model, TimePoint::Finite(j)));
            }
            family.push(ClassicalStoppingTime::constant(&model, TimePoint::Infinity));
            if flavor == WalkFlavor::Symmetric {
                for level in [1i32, -1, 2, -2] {
                    family.push(first_passage(&model, level));
                }
            } else {
                for m in 1..=4usize {
                    family.push(jump_time(&model, m).unwrap());
                }
            }
            let mut case = 0u64;
            while family.len() < 21 {
                let mut rng = stream(20260808, &[case, n as u64]);
                family.push(random_adapted_tau(&model, &mut rng));
                case += 1;
            }
            assert!(family.len() >= 20);
            for tau in &family {
                let tau = ClassicalStoppingTime::new(&model, tau.values().to_vec()).unwrap();
                let qst = classical_st_to_qst(&model, &tau).unwrap();
                let lhs = model.from_fock(&time_projection(&qst).unwrap());
                let rhs = conditional_expectation_matrix(&model, &tau);
                assert!(lhs.diff_frobenius(&rhs) <= 1e-10);
                checked += 1;
            }
        }
    }
    println!(
        "[PASS] criterion 3: U·E_T·U† = classical conditional expectation for {checked} adapted rules"
    );
}

/// Criterion 4: the convergent suite, three grid levels from 4 cells.
#[test]
fn criterion_4_convergent_suite() {
    let config = LabConfig { n_cells: 4, refinement_levels: 3, ..LabConfig::default() };
    config.validate_for_convergence().unwrap();
    let started = std::time::Instant::now();
    let names: Vec<String> = [
        "chaos-projection",
        "ito-product-identity",
        "poisson-gamma-moments",
        "coherent-exponential",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let reports = run_convergence(&config, &names).unwrap();
    let elapsed = started.elapsed();
    let by_name = |name: &str| reports.iter().find(|r| r.identity == name).unwrap();

    // (a) chaos residual: exactly zero in this model, passing through the
    // promotion rule rather than a fitted rate
    let chaos = by_name("chaos-projection");
    assert!(matches!(chaos.verdict, Verdict::ExactPromoted | Verdict::LinearDecay));
    assert_eq!(chaos.rows.len(), 3);
    assert_eq!(chaos.rows[0].n_cells, 4);
    assert_eq!(chaos.rows[2].n_cells, 16);
    println!("  (a) chaos-projection: {}", chaos.verdict.label());

    // (b) identity-kind Itô residual: ratio per doubling inside [1.6, 2.4]
    let ito = by_name("ito-product-identity");
    assert_eq!(ito.verdict, Verdict::LinearDecay);
    for row in ito.rows.iter().skip(1) {
        let r = row.ratio.unwrap();
        assert!((1.6..=2.4).contains(&r), "ratio {r}");
    }
    println!("  (b) ito-product-identity ratios: {:?}",
        ito.rows.iter().filter_map(|r| r.ratio.map(|x| (x * 1e3).round() / 1e3)).collect::<Vec<_>>());

    // (c) jump-time law against the gamma moments within 3·dt·m
    let poisson = by_name("poisson-gamma-moments");
    assert_eq!(poisson.verdict, Verdict::WithinBounds);
    for row in &poisson.rows {
        assert!(row.residual_fro <= 3.0 * row.dt, "mean gap {}", row.residual_fro);
        assert!(row.residual_op <= 3.0 * row.dt, "variance gap {}", row.residual_op);
    }
    println!("  (c) poisson-gamma-moments: within 3·dt·m at every level");

    // (d) ⟨ε(1), ε(1)⟩ against e: the 4-cell value is (1.25)^4 = 2.44140625
    let coherent = by_name("coherent-exponential");
    assert_eq!(coherent.verdict, Verdict::LinearDecay);
    let four_cell_value = std::f64::consts::E - coherent.rows[0].residual_fro;
    assert!((four_cell_value - 2.44140625).abs() < 1e-12);
    println!(
        "  (d) coherent-exponential: 4-cell value {:.4}, gap ratios {:?}",
        four_cell_value,
        coherent.rows.iter().filter_map(|r| r.ratio.map(|x| (x * 1e3).round() / 1e3)).collect::<Vec<_>>()
    );

    assert!(elapsed.as_secs() < 60, "convergent suite took {elapsed:?}");
    println!("[PASS] criterion 4: convergent suite (4 → 16 cells) in {elapsed:?}");
}

/// Criterion 5: byte-identical reports under an identical configuration.
#[test]
fn criterion_5_determinism() {
    let config = LabConfig { n_cells: 4, refinement_levels: 2, ..LabConfig::default() };
    let names: Vec<String> =
        vec!["ito-product-general".into(), "coherent-exponential".into()];
    let csv_a = {
        let reports = run_convergence(&config, &names).unwrap();
        let rows: Vec<ConvergenceRow> =
            reports.iter().flat_map(|r| r.rows.iter().cloned()).collect();
        rows_to_csv(&rows)
    };
    let csv_b = {
        let reports = run_convergence(&config, &names).unwrap();
        let rows: Vec<ConvergenceRow> =
            reports.iter().flat_map(|r| r.rows.iter().cloned()).collect();
        rows_to_csv(&rows)
    };
    assert_eq!(csv_a.as_bytes(), csv_b.as_bytes());
    // JSON mirrors the same rows
    let reports = run_convergence(&config, &names).unwrap();
    let rows: Vec<ConvergenceRow> =
        reports.iter().flat_map(|r| r.rows.iter().cloned()).collect();
    let parsed: Vec<ConvergenceRow> = serde_json::from_str(&rows_to_json(&rows)).unwrap();
    assert_eq!(parsed, rows);
    println!("[PASS] criterion 5: identical seed gives byte-identical CSV; JSON round-trips");
}

/// Criterion 6: negative controls — bad stopping times rejected, drifts
/// caught, and the two-point witness produced.
#[test]
fn criterion_6_negative_controls() {
    let grid = Grid::new(2, 1.0).unwrap();
    // a future-dependent atom is rejected
    let n1 = cell_op(grid, 1, CellKind::Number).unwrap();
    let mut atoms = BTreeMap::new();
    atoms.insert(TimePoint::Finite(1), n1.clone());
    atoms.insert(TimePoint::Infinity, FockOperator::identity(grid).sub(&n1));
    assert!(matches!(
        QuantumStoppingTime::new(grid, atoms),
        Err(QstError::CumulativeNotAdapted { time_index: 1, .. })
    ));

    // the time integral of the identity is not a martingale
    let grid4 = Grid::new(4, 1.0).unwrap();
    let drift = Process::from_fn(grid4, ProcessKind::Adapted, |j| {
        FockOperator::identity(grid4).scale(Complex64::new(grid4.time(j), 0.0))
    })
    .unwrap();
    assert!(!is_martingale(&drift).unwrap());

    // and the characterisation produces a two-point witness
    let report = mgchar_test(&drift, 2, 99).unwrap();
    assert!(!report.is_martingale);
    let witness = report.witness.expect("a drift must be caught with a witness");
    assert!(witness.violation > eps_exact(&grid4));
    assert!(witness.early <= witness.late);
    // the witness really is a stopping time that breaks the expectation
    let stopped =
        stopped_processes::stop_process_discrete_vac(&drift, &witness.stopping_time).unwrap();
    let base = drift.value(0).vacuum_state();
    assert!((stopped.vacuum_state() - base).norm() > eps_exact(&grid4));
    // sanity: E_S Z E_S of the witness time is still a legal stopped value
    let _ = stop_op_vac(&FockOperator::identity(grid4), &witness.stopping_time).unwrap();
    println!(
        "[PASS] criterion 6: validation rejects future atoms; drift caught with witness at ({}, {})",
        witness.early, witness.late
    );
}
