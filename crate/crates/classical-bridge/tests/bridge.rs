//! The walk-model bridge: conditioning matches the time projections, stopped
//! conditioning matches `E_T`, jump times are ordered, and the counting
//! identity transports with an order-dt gap.

use classical_bridge::*;
use fock_core::*;
use stopping_times::*;

fn adapted_family(model: &WalkModel, count: usize) -> Vec<ClassicalStoppingTime> {
    let n = model.grid().n_cells();
    let mut family = Vec::new();
    for j in 0..=n {
        family.push(ClassicalStoppingTime::constant(model, TimePoint::Finite(j)));
    }
    family.push(ClassicalStoppingTime::constant(model, TimePoint::Infinity));
    if model.flavor() == WalkFlavor::Symmetric {
        for level in [1i32, -1, 2, -2] {
            family.push(first_passage(model, level));
        }
    } else {
        for m in 1..=3usize {
            family.push(jump_time(model, m).unwrap());
        }
    }
    let mut case = 0u64;
    while family.len() < count {
        let mut rng = stream(9001, &[case]);
        family.push(random_adapted_tau(model, &mut rng));
        case += 1;
    }
    family
}

#[test]
fn conditioning_on_first_coordinates_is_e_projection() {
    for flavor in [WalkFlavor::Symmetric, WalkFlavor::Poisson] {
        let grid = Grid::new(4, 1.0).unwrap();
        let model = walk_model(grid, flavor).unwrap();
        for j in 0..=4usize {
            let fock_side = model.from_fock(&e_projection(grid, j).unwrap());
            let classical = conditioning_matrix(&model, j);
            assert!(fock_side.diff_frobenius(&classical) <= 1e-11);
        }
    }
}

#[test]
fn stopped_conditioning_matches_the_time_projection() {
    // U E_T U† equals the conditional-expectation matrix at τ for a family
    // of at least 20 adapted stopping rules, n ≤ 4, exactly.
    for flavor in [WalkFlavor::Symmetric, WalkFlavor::Poisson] {
        for n in 2..=4usize {
            let grid = Grid::new(n, 1.0).unwrap();
            let model = walk_model(grid, flavor).unwrap();
            let family = adapted_family(&model, 21);
            assert!(family.len() >= 20);
            for (idx, tau) in family.iter().enumerate() {
                let tau = ClassicalStoppingTime::new(&model, tau.values().to_vec())
                    .unwrap_or_else(|e| panic!("family member {idx} not adapted: {e}"));
                let qst = classical_st_to_qst(&model, &tau).unwrap();
                let et = time_projection(&qst).unwrap();
                let lhs = model.from_fock(&et);
                let rhs = conditional_expectation_matrix(&model, &tau);
                assert!(
                    lhs.diff_frobenius(&rhs) <= 1e-10,
                    "flavor {flavor:?} n {n} member {idx}"
                );
            }
        }
    }
}

#[test]
fn conditional_expectation_two_routes_agree() {
    let grid = Grid::new(3, 1.0).unwrap();
    let model = walk_model(grid, WalkFlavor::Symmetric).unwrap();
    for case in 0..20u64 {
        let mut rng = stream(9100, &[case]);
        let tau = random_adapted_tau(&model, &mut rng);
        use rand::Rng;
        let x: Vec<Complex64> = (0..grid.dim())
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        // classical route
        let ce = conditional_expectation(&model, &x, &tau).unwrap();
        // quantum route: E_T applied in the Fock picture
        let qst = classical_st_to_qst(&model, &tau).unwrap();
        let et = time_projection(&qst).unwrap();
        // function x as a Fock vector: amplitudes U†(√p·x)
        let l2: Vec<Complex64> = (0..grid.dim())
            .map(|w| x[w] * model.prob(w).sqrt())
            .collect();
        let fock_x = FockVector::new(grid, model.basis().apply_adjoint(&l2)).unwrap();
        let projected = et.apply(&fock_x);
        let back = model.to_function(&projected);
        for (a, b) in ce.iter().zip(&back) {
            assert!((a - b).norm() <= 1e-11, "case {case}");
        }
    }
    // endpoints: τ ≡ horizon keeps X, τ ≡ 0 averages it
    let tau_h = ClassicalStoppingTime::constant(&model, TimePoint::Finite(3));
    let x: Vec<Complex64> = (0..8).map(|w| Complex64::new(w as f64, -1.0)).collect();
    let kept = conditional_expectation(&model, &x, &tau_h).unwrap();
    for (a, b) in kept.iter().zip(&x) {
        assert!((a - b).norm() <= 1e-12);
    }
    let tau_0 = ClassicalStoppingTime::constant(&model, TimePoint::Finite(0));
    let avg = conditional_expectation(&model, &x, &tau_0).unwrap();
    let mean: Complex64 =
        (0..8).map(|w| x[w] * model.prob(w)).sum();
    for a in avg {
        assert!((a - mean).norm() <= 1e-12);
    }
}

#[test]
fn future_dependent_rules_are_rejected() {
    let grid = Grid::new(3, 1.0).unwrap();
    let model = walk_model(grid, WalkFlavor::Symmetric).unwrap();
    // stop at 1 iff coordinate 2 (the future) fired
    let tau: Vec<TimePoint> = (0..grid.dim())
        .map(|w| {
            if w & 0b100 != 0 {
                TimePoint::Finite(1)
            } else {
                TimePoint::Finite(2)
            }
        })
        .collect();
    assert!(matches!(
        ClassicalStoppingTime::new(&model, tau),
        Err(BridgeError::TauNotAdapted { .. })
    ));
}

#[test]
fn jump_times_are_ordered() {
    let grid = Grid::new(4, 1.0).unwrap();
    let model = walk_model(grid, WalkFlavor::Poisson).unwrap();
    // τ_0 ≡ 0 and on the all-jumps path τ_m = t_m
    let t0 = jump_time(&model, 0).unwrap();
    assert!(t0.values().iter().all(|&v| v == TimePoint::Finite(0)));
    let all = grid.dim() - 1;
    for m in 1..=4usize {
        assert_eq!(jump_time(&model, m).unwrap().at(all), TimePoint::Finite(m));
    }
    // pointwise order transports to the quantum order
    for m in 0..3usize {
        let a = jump_time(&model, m).unwrap();
        let b = jump_time(&model, m + 1).unwrap();
        for w in 0..grid.dim() {
            assert!(a.at(w) <= b.at(w));
        }
        let qa = classical_st_to_qst(&model, &a).unwrap();
        let qb = classical_st_to_qst(&model, &b).unwrap();
        assert!(qst_le(&qa, &qb).unwrap());
    }
}

#[test]
fn poisson_counting_identity_and_quantum_gap() {
    let grid = Grid::new(4, 1.0).unwrap();
    let model = walk_model(grid, WalkFlavor::Poisson).unwrap();
    // no-jump path: both sides vanish at every horizon
    let tau1 = jump_time(&model, 1).unwrap();
    assert_eq!(tau1.at(0), TimePoint::Infinity);
    for j in 0..=4usize {
        let report = poisson_sde_check(&model, 1, j).unwrap();
        assert_eq!(report.classical_residual, 0.0);
        assert!(report.quantum_residual.is_finite());
    }
    // the quantum residual decays roughly linearly in dt
    let coarse = {
        let model = walk_model(Grid::new(4, 1.0).unwrap(), WalkFlavor::Poisson).unwrap();
        poisson_sde_check(&model, 1, 4).unwrap().quantum_residual
    };
    let fine = {
        let model = walk_model(Grid::new(8, 1.0).unwrap(), WalkFlavor::Poisson).unwrap();
        poisson_sde_check(&model, 1, 8).unwrap().quantum_residual
    };
    let ratio = coarse / fine;
    assert!(
        (1.2..=3.2).contains(&ratio),
        "expected rough halving, got {coarse:.3e} → {fine:.3e} (ratio {ratio:.2})"
    );
}
