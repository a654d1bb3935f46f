//! Discrete stopping of processes: double-stopping idempotence, adaptedness
//! of the stopped families, the closed-martingale collapse and the
//! vacuum-expectation martingale characterisation.

use fock_core::*;
use qsc_integrals::*;
use stopped_processes::*;
use stopping_times::*;

fn const_process(z: &FockOperator) -> Process {
    Process::constant(z.clone(), ProcessKind::General).unwrap()
}

fn random_adapted_process(grid: Grid, seed: u64) -> Process {
    let mut rng = stream(seed, &[0xada9]);
    random_process(grid, ProcessKind::Adapted, &mut rng)
}

fn random_closed_vac_martingale(grid: Grid, seed: u64) -> Process {
    let mut rng = stream(seed, &[0xc105]);
    Process::closed_vacuum_martingale(&random_operator(grid, &mut rng)).unwrap()
}

#[test]
fn constant_processes_stop_to_sandwiches() {
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    for case in 0..10u64 {
        let mut rng = stream(301, &[case]);
        let z = random_operator(grid, &mut rng);
        let t = random_qst(grid, &mut rng);
        let zc = const_process(&z);
        // X ≡ Z: X_Ť = E_T Z E_T = Z_Ť, and I_Ť = E_T
        let vac = stop_process_discrete_vac(&zc, &t).unwrap();
        assert!(vac.frobenius_diff(&stop_op_vac(&z, &t).unwrap()) <= tol);
        let ic = const_process(&FockOperator::identity(grid));
        let et = time_projection(&t).unwrap();
        assert!(stop_process_discrete_vac(&ic, &t).unwrap().frobenius_diff(&et) <= tol);
        // I_T̂ = I
        let id_stop = stop_process_discrete_id(&ic, &t).unwrap();
        assert!(id_stop.frobenius_diff(&FockOperator::identity(grid)) <= tol);
    }
}

#[test]
fn deterministic_stopping_is_compression() {
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    let x = random_adapted_process(grid, 11);
    for j in 0..=4usize {
        let det = QuantumStoppingTime::deterministic(grid, TimePoint::Finite(j));
        // X_{čt} = π̌(X)_t and X_{ĥt} = π̂(X)_t
        let vac = stop_process_discrete_vac(&x, &det).unwrap();
        assert!(vac.frobenius_diff(&pi_vac(x.value(j), j).unwrap()) <= tol);
        let id = stop_process_discrete_id(&x, &det).unwrap();
        assert!(id.frobenius_diff(&pi_id(x.value(j), j).unwrap()) <= tol);
    }
}

#[test]
fn twostops_prop_6_3() {
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    for case in 0..15u64 {
        let mut rng = stream(307, &[case]);
        let x = random_process(grid, ProcessKind::Adapted, &mut rng);
        let t = random_qst(grid, &mut rng);
        let x_vac = stop_process_discrete_vac(&x, &t).unwrap();
        let x_id = stop_process_discrete_id(&x, &t).unwrap();
        // (X_Ť)_Ť = X_Ť
        let a = stop_process_discrete_vac(&const_process(&x_vac), &t).unwrap();
        assert!(a.frobenius_diff(&x_vac) <= tol);
        // (X_T̂)_Ť = X_Ť
        let b = stop_process_discrete_vac(&const_process(&x_id), &t).unwrap();
        assert!(b.frobenius_diff(&x_vac) <= tol);
        // (X_Ť)_T̂ = X_T̂
        let c = stop_process_discrete_id(&const_process(&x_vac), &t).unwrap();
        assert!(c.frobenius_diff(&x_id) <= tol);
        // (X_T̂)_T̂ = X_T̂
        let d = stop_process_discrete_id(&const_process(&x_id), &t).unwrap();
        assert!(d.frobenius_diff(&x_id) <= tol);
    }
}

#[test]
fn proc_adaptedness_prop_6_4() {
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    for case in 0..15u64 {
        let mut rng = stream(311, &[case]);
        let x = random_process(grid, ProcessKind::Adapted, &mut rng);
        let t = random_qst(grid, &mut rng);
        let x_vac = stop_process_discrete_vac(&x, &t).unwrap();
        let x_id = stop_process_discrete_id(&x, &t).unwrap();
        let et = time_projection(&t).unwrap();
        // X_T̂ E_T = E_T X_T̂ = X_Ť
        assert!(x_id.mul(&et).frobenius_diff(&x_vac) <= tol);
        assert!(et.mul(&x_id).frobenius_diff(&x_vac) <= tol);
        // T([0,t]) X_Ť T([0,t]) = T([0,t]) X_{Ť∧t} T([0,t]) and the T̂ analog
        for j in 0..=4usize {
            let c = t.cumulative(j);
            let wedge = qst_min_const(&t, j);
            let lhs = c.mul(&x_vac).mul(&c);
            let rhs = c.mul(&stop_process_discrete_vac(&x, &wedge).unwrap()).mul(&c);
            assert!(lhs.frobenius_diff(&rhs) <= tol);
            let lhs_id = c.mul(&x_id).mul(&c);
            let rhs_id = c.mul(&stop_process_discrete_id(&x, &wedge).unwrap()).mul(&c);
            assert!(lhs_id.frobenius_diff(&rhs_id) <= tol);
        }
    }
}

#[test]
fn stopped_family_adaptedness_prop_6_5() {
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    for case in 0..15u64 {
        let mut rng = stream(313, &[case]);
        let x = random_process(grid, ProcessKind::Adapted, &mut rng);
        let t = random_qst(grid, &mut rng);
        for j in 0..=4usize {
            let wedge = qst_min_const(&t, j);
            let xw_vac = stop_process_discrete_vac(&x, &wedge).unwrap();
            // E_t X_{Ť∧t} E_t = X_{Ť∧t}: the stopped family is vacuum adapted
            assert!(xw_vac.e_sandwich(j).unwrap().frobenius_diff(&xw_vac) <= tol);
            assert!(is_vacuum_adapted(&xw_vac, j).unwrap());
            // π̂(X_{T̂∧t})_t = X_{T̂∧t}: the Coquio family is identity adapted
            let xw_id = stop_process_discrete_id(&x, &wedge).unwrap();
            assert!(pi_id(&xw_id, j).unwrap().frobenius_diff(&xw_id) <= tol);
            assert!(is_identity_adapted(&xw_id, j).unwrap());
        }
    }
}

#[test]
fn closed_martingales_collapse_lemma_6_6() {
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    for case in 0..15u64 {
        let m = random_closed_vac_martingale(grid, case);
        assert!(is_martingale(&m).unwrap());
        assert!(m.is_closed_by_its_closing().unwrap());
        let mut rng = stream(317, &[case]);
        let t = random_qst(grid, &mut rng);
        let et = time_projection(&t).unwrap();
        // M_Ť = E_T M_{horizon} E_T = E_T M_∞ E_T
        let stopped = stop_process_discrete_vac(&m, &t).unwrap();
        let collapse = et.mul(m.value(4)).mul(&et);
        assert!(stopped.frobenius_diff(&collapse) <= tol);
        let closed = stop_closed_martingale(&m, &t, StopFlavor::Vacuum).unwrap();
        assert!(stopped.frobenius_diff(&closed) <= tol);
        // vacuum-state preservation
        assert!((stopped.vacuum_state() - m.value(0).vacuum_state()).norm() <= tol);
    }
}

#[test]
fn stopped_martingales_stay_martingales() {
    // E_t M_Ť E_t = M_{Ť∧t} and π̂(M_T̂)_t = M_{T̂∧t}; the families are
    // martingales closed by M_Ť (resp. M_T̂).
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    for case in 0..10u64 {
        let m = random_closed_vac_martingale(grid, 1000 + case);
        let mut rng = stream(331, &[case]);
        let t = random_qst(grid, &mut rng);
        let m_vac = stop_process_discrete_vac(&m, &t).unwrap();
        let m_id = stop_process_discrete_id(&m, &t).unwrap();
        let mut vac_family = Vec::new();
        let mut id_family = Vec::new();
        for j in 0..=4usize {
            let wedge = qst_min_const(&t, j);
            let w_vac = stop_process_discrete_vac(&m, &wedge).unwrap();
            let w_id = stop_process_discrete_id(&m, &wedge).unwrap();
            assert!(m_vac.e_sandwich(j).unwrap().frobenius_diff(&w_vac) <= tol);
            assert!(pi_id(&m_id, j).unwrap().frobenius_diff(&w_id) <= tol);
            vac_family.push(w_vac);
            id_family.push(w_id);
        }
        let vac_proc =
            Process::new(grid, ProcessKind::Vacuum, vac_family, Some(m_vac.clone())).unwrap();
        assert!(is_martingale(&vac_proc).unwrap());
        assert!(vac_proc.is_closed_by_its_closing().unwrap());
        let id_proc =
            Process::new(grid, ProcessKind::Identity, id_family, Some(m_id.clone())).unwrap();
        assert!(is_martingale(&id_proc).unwrap());
    }
}

#[test]
fn martingale_characterisation_thm_6_9() {
    let grid = Grid::new(4, 1.0).unwrap();
    // (E_j)_j passes
    let e = Process::new(
        grid,
        ProcessKind::Vacuum,
        (0..=4).map(|j| e_projection(grid, j).unwrap()).collect(),
        Some(FockOperator::identity(grid)),
    )
    .unwrap();
    let report = mgchar_test(&e, 2, 77).unwrap();
    assert!(report.is_martingale && report.witness.is_none());

    // the time integral of I fails, with a deterministic witness
    let drift = Process::from_fn(grid, ProcessKind::Adapted, |j| {
        FockOperator::identity(grid).scale(Complex64::new(grid.time(j), 0.0))
    })
    .unwrap();
    let report = mgchar_test(&drift, 2, 78).unwrap();
    assert!(!report.is_martingale);
    let w = report.witness.expect("drift must produce a witness");
    assert!(w.violation > eps_exact(&grid));

    // agreement with is_martingale across a mixed population
    let mut agree = 0usize;
    for case in 0..60u64 {
        let mut rng = stream(337, &[case]);
        let x = if case % 2 == 0 {
            Process::closed_vacuum_martingale(&random_operator(grid, &mut rng)).unwrap()
        } else {
            // perturb a martingale by a drift term of random sign structure
            let m = Process::closed_vacuum_martingale(&random_operator(grid, &mut rng)).unwrap();
            let bump = random_process(grid, ProcessKind::Vacuum, &mut rng);
            let ops = (0..=4)
                .map(|j| {
                    let t = grid.time(j);
                    m.value(j).add(&bump.value(j).scale(Complex64::new(t, 0.0)))
                })
                .collect();
            Process::new(grid, ProcessKind::Vacuum, ops, None).unwrap()
        };
        let direct = is_martingale(&x).unwrap();
        let via_stopping = mgchar_test(&x, 2, 1000 + case).unwrap().is_martingale;
        if direct == via_stopping {
            agree += 1;
        }
    }
    assert_eq!(agree, 60);
}

#[test]
fn stopped_algebra_conditional_expectation_prop_4_2() {
    let grid = Grid::new(5, 1.0).unwrap();
    for case in 0..8u64 {
        let mut rng = stream(347, &[case]);
        let s = random_qst(grid, &mut rng);
        let probe = StoppedAlgebraProbe::with_random_samples(s.clone(), 6, 400 + case);
        let report = conditional_expectation_probe(&probe).unwrap();
        assert!(report.pass, "case {case}: {report:?}");
        // Φ(I) = E_S and the vacuum state of E_S is 1
        let es = time_projection(&s).unwrap();
        let phi_i = stop_op_vac(&FockOperator::identity(grid), &s).unwrap();
        assert!(phi_i.frobenius_diff(&es) <= eps_exact(&grid));
        assert!((es.vacuum_state() - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
    }
    // deterministic 0: Φ(Z) = ⟨Ω, ZΩ⟩ |Ω⟩⟨Ω|
    let s0 = QuantumStoppingTime::deterministic(grid, TimePoint::Finite(0));
    let mut rng = stream(349, &[0]);
    let z = random_operator(grid, &mut rng);
    let phi = stop_op_vac(&z, &s0).unwrap();
    let want = e_projection(grid, 0).unwrap().scale(z.vacuum_state());
    assert!(phi.frobenius_diff(&want) <= eps_exact(&grid));
}
