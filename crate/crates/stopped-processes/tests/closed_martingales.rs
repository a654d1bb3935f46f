//! Stopping closed martingales: the vacuum-flavour properties, both
//! optional-sampling theorems, the vacuum/identity decomposition, the gauge
//! extension `Z_Ŝ` with its norm bound, the stopping idempotents and the
//! multiplicativity defect.

use fock_core::*;
use qsc_integrals::*;
use stopped_processes::*;
use stopping_times::*;

fn random_z(grid: Grid, seed: u64) -> FockOperator {
    let mut rng = stream(seed, &[0x0b5]);
    random_operator(grid, &mut rng)
}

fn random_s(grid: Grid, seed: u64) -> QuantumStoppingTime {
    let mut rng = stream(seed, &[0x57]);
    random_qst(grid, &mut rng)
}

#[test]
fn closed_martingale_stopping_theorem() {
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    for case in 0..15u64 {
        let z = random_z(grid, case);
        let m = Process::closed_vacuum_martingale(&z).unwrap();
        let s = random_s(grid, case);
        let es = time_projection(&s).unwrap();
        let m_stopped = stop_closed_martingale(&m, &s, StopFlavor::Vacuum).unwrap();
        // (i) M_Š = E_S M_Š E_S
        assert!(es.mul(&m_stopped).mul(&es).frobenius_diff(&m_stopped) <= tol);
        // I_Š = E_S
        let i_stopped = stop_op_vac(&FockOperator::identity(grid), &s).unwrap();
        assert!(i_stopped.frobenius_diff(&es) <= tol);
        // M = (E_j) closed by I stops to E_S
        let e_mart = Process::closed_vacuum_martingale(&FockOperator::identity(grid)).unwrap();
        let e_stop = stop_closed_martingale(&e_mart, &s, StopFlavor::Vacuum).unwrap();
        assert!(e_stop.frobenius_diff(&es) <= tol);
        for j in 0..=4usize {
            let wedge = qst_min_const(&s, j);
            let m_wedge = stop_op_vac(&z, &wedge).unwrap();
            // (ii) E_t M_{Š∧t} E_t = M_{Š∧t}
            assert!(m_wedge.e_sandwich(j).unwrap().frobenius_diff(&m_wedge) <= tol);
            // (iii) M^Š_t = E_t M_Š E_t = E_{S∧t} M_Š E_{S∧t}
            assert!(m_stopped.e_sandwich(j).unwrap().frobenius_diff(&m_wedge) <= tol);
            let e_wedge = time_projection(&wedge).unwrap();
            let via_wedge = e_wedge.mul(&m_stopped).mul(&e_wedge);
            assert!(via_wedge.frobenius_diff(&m_wedge) <= tol);
            // (iv) S([0,t]) M_Š S([0,t]) = S([0,t]) M_{Š∧t} S([0,t])
            let c = s.cumulative(j);
            let lhs = c.mul(&m_stopped).mul(&c);
            let rhs = c.mul(&m_wedge).mul(&c);
            assert!(lhs.frobenius_diff(&rhs) <= tol);
        }
        // the stopped-martingale process is a closed vacuum martingale
        let family = stopped_martingale_process(&z, &s).unwrap();
        assert!(is_martingale(&family).unwrap());
        assert!(family.is_closed_by_its_closing().unwrap());
        // j = 0 value is the vacuum expectation of M_Š times E_0
        let want0 = e_projection(grid, 0).unwrap().scale(m_stopped.vacuum_state());
        assert!(family.value(0).frobenius_diff(&want0) <= tol);
        // vacuum-state preservation for arbitrary stopping times (Prop 7.2)
        assert!((m_stopped.vacuum_state() - m.value(0).vacuum_state()).norm() <= tol);
    }
}

#[test]
fn optional_sampling_vacuum_flavour() {
    let grid = Grid::new(4, 1.0).unwrap();
    let _tol = eps_exact(&grid);
    for case in 0..12u64 {
        let z = random_z(grid, 100 + case);
        let m = Process::closed_vacuum_martingale(&z).unwrap();
        let t = random_s(grid, 100 + case);
        // comparable pairs: S = T∧t_j (cheap) and S = T∧T' via the lattice
        let mut pairs: Vec<QuantumStoppingTime> =
            (0..=4).map(|j| qst_min_const(&t, j)).collect();
        let t2 = random_s(grid, 500 + case);
        pairs.push(qst_meet(&t, &t2).unwrap());
        let m_t = stop_closed_martingale(&m, &t, StopFlavor::Vacuum).unwrap();
        for s in pairs {
            assert!(qst_le(&s, &t).unwrap());
            let m_s = stop_closed_martingale(&m, &s, StopFlavor::Vacuum).unwrap();
            // (M_Š)_Ť = M_Š = (M_Ť)_Š
            let a = stop_op_vac(&m_s, &t).unwrap();
            let b = stop_op_vac(&m_t, &s).unwrap();
            assert!(a.frobenius_diff(&m_s) <= 1e-6, "case {case}");
            assert!(b.frobenius_diff(&m_s) <= 1e-6, "case {case}");
        }
    }
}

#[test]
fn optional_sampling_identity_flavour() {
    let grid = Grid::new(4, 1.0).unwrap();
    for case in 0..12u64 {
        let z = random_z(grid, 200 + case);
        let m = Process::closed_vacuum_martingale(&z).unwrap();
        let t = random_s(grid, 200 + case);
        let m_t_hat = stop_closed_martingale(&m, &t, StopFlavor::Identity).unwrap();
        for j in 0..=4usize {
            let s = qst_min_const(&t, j);
            // (M_T̂)_Ŝ = M_Ŝ
            let lhs = stop_op_id(&m_t_hat, &s).unwrap();
            let rhs = stop_op_id(&z, &s).unwrap();
            assert!(lhs.frobenius_diff(&rhs) <= 1e-7, "case {case} j {j}");
        }
    }
}

#[test]
fn vacuum_identity_decomposition_prop_7_4() {
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    for case in 0..15u64 {
        let z = random_z(grid, 300 + case);
        for j in 0..=4usize {
            let (vac, tail) = mint_decompose(&z, j).unwrap();
            assert!(vac.frobenius_diff(&pi_vac(&z, j).unwrap()) <= tol);
            let sum = vac.add(&tail);
            assert!(sum.frobenius_diff(&pi_id(&z, j).unwrap()) <= tol, "case {case} j {j}");
        }
        // j = n: (Z, 0)
        let (vac, tail) = mint_decompose(&z, 4).unwrap();
        assert!(vac.frobenius_diff(&z) <= tol);
        assert!(tail.frobenius_norm() <= tol);
    }
    // Z = E_j at j: (E_j, I − E_j)
    for j in 0..=4usize {
        let ej = e_projection(grid, j).unwrap();
        let (vac, tail) = mint_decompose(&ej, j).unwrap();
        assert!(vac.frobenius_diff(&ej) <= tol);
        let want = FockOperator::identity(grid).sub(&ej);
        assert!(tail.frobenius_diff(&want) <= tol);
    }
}

#[test]
fn id_stopping_agrees_with_the_gauge_extension_lemma_7_6() {
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    for case in 0..15u64 {
        let z = random_z(grid, 400 + case);
        let s = random_s(grid, 400 + case);
        let via_op = stop_op_id(&z, &s).unwrap();
        // stopping the closed vacuum martingale π̌(Z) in the Coquio sense
        let m_vac = Process::closed_vacuum_martingale(&z).unwrap();
        let via_proc = stop_process_discrete_id(&m_vac, &s).unwrap();
        assert!(via_op.frobenius_diff(&via_proc) <= tol, "vacuum-closed case {case}");
        // and the closed identity martingale π̂(Z)
        let m_id = Process::closed_identity_martingale(&z).unwrap();
        let via_proc_id = stop_process_discrete_id(&m_id, &s).unwrap();
        assert!(via_op.frobenius_diff(&via_proc_id) <= tol, "identity-closed case {case}");
        // flavor dispatch in stop_closed_martingale
        let flavored = stop_closed_martingale(&m_vac, &s, StopFlavor::Identity).unwrap();
        assert!(flavored.frobenius_diff(&via_op) <= tol);
    }
}

#[test]
fn gauge_extension_norm_bound_thm_7_7() {
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    for case in 0..15u64 {
        let z = random_z(grid, 500 + case);
        let s = random_s(grid, 500 + case);
        let z_vac = stop_op_vac(&z, &s).unwrap();
        let z_id = stop_op_id(&z, &s).unwrap();
        let es = time_projection(&s).unwrap();
        // E_S kills the gauge part: E_S Z_Ŝ = Z_Š
        let gauge = stop_op_id_gauge_part(&z, &s).unwrap();
        assert!(es.mul(&gauge).frobenius_norm() <= tol);
        assert!(es.mul(&z_id).frobenius_diff(&z_vac) <= tol);
        // ‖Z_Ŝ‖ ≤ ‖Z‖
        assert!(operator_norm(&z_id) <= operator_norm(&z) + 1e-8, "case {case}");
        // Pythagoras on coherent vectors:
        // ‖Z_Ŝ θ‖² − ‖Z_Š θ‖² = Σ_k ‖C_k π̂(Z_Š)_k C_k ∇_k θ‖²
        let mut rng = stream(97, &[case]);
        let theta = coherent_probe(grid, &mut rng);
        let lhs = z_id.apply(&theta).norm_sqr() - z_vac.apply(&theta).norm_sqr();
        let mut rhs = 0.0;
        for k in 0..4 {
            let c = s.cumulative(k);
            let m = c.mul(&pi_id(&z_vac, k).unwrap()).mul(&c);
            rhs += m.apply(&gradient(&theta, k).unwrap()).norm_sqr();
        }
        assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()), "case {case}");
    }
    // deterministic S collapses to the identity-adapted compression
    let z = random_z(grid, 999);
    for j in 0..=4usize {
        let det = QuantumStoppingTime::deterministic(grid, TimePoint::Finite(j));
        let viaop = stop_op_id(&z, &det).unwrap();
        assert!(viaop.frobenius_diff(&pi_id(&z, j).unwrap()) <= tol);
    }
    // I_Ŝ = I
    let s = random_s(grid, 1001);
    let i_hat = stop_op_id(&FockOperator::identity(grid), &s).unwrap();
    assert!(i_hat.frobenius_diff(&FockOperator::identity(grid)) <= tol);
}

#[test]
fn stopping_idempotents_prop_7_8() {
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    for case in 0..15u64 {
        let z = random_z(grid, 600 + case);
        let s = random_s(grid, 600 + case);
        let z_vac = stop_op_vac(&z, &s).unwrap();
        let z_id = stop_op_id(&z, &s).unwrap();
        // (Z_Š)_Š = Z_Š
        assert!(stop_op_vac(&z_vac, &s).unwrap().frobenius_diff(&z_vac) <= tol);
        // (Z_Ŝ)_Š = Z_Š
        assert!(stop_op_vac(&z_id, &s).unwrap().frobenius_diff(&z_vac) <= tol);
        // (Z_Š)_Ŝ = Z_Ŝ
        assert!(stop_op_id(&z_vac, &s).unwrap().frobenius_diff(&z_id) <= tol);
        // (Z_Ŝ)_Ŝ = Z_Ŝ
        assert!(stop_op_id(&z_id, &s).unwrap().frobenius_diff(&z_id) <= tol);
        // E_S Z_Ŝ = Z_Š
        let es = time_projection(&s).unwrap();
        assert!(es.mul(&z_id).frobenius_diff(&z_vac) <= tol);
    }
}

#[test]
fn identity_adapted_time_projection_integrals_prop_7_9() {
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    for case in 0..15u64 {
        let s = random_s(grid, 700 + case);
        for j in 0..=4usize {
            let (lhs, rhs1, rhs2) = idtpint_check(&s, j).unwrap();
            assert!(lhs.frobenius_diff(&rhs1) <= tol, "case {case} j {j}");
            assert!(lhs.frobenius_diff(&rhs2) <= tol, "case {case} j {j}");
        }
        // j = 0: π̂(E_S)_0 = 𝔼_Ω[E_S]·I = I
        let (lhs, _, _) = idtpint_check(&s, 0).unwrap();
        assert!(lhs.frobenius_diff(&FockOperator::identity(grid)) <= tol);
        // j = n: everything equals E_S
        let es = time_projection(&s).unwrap();
        let (lhs, rhs1, _) = idtpint_check(&s, 4).unwrap();
        assert!(lhs.frobenius_diff(&es) <= tol);
        assert!(rhs1.frobenius_diff(&es) <= tol);
    }
}

#[test]
fn multiplicativity_defect_formula() {
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    // The full-integrand form is an identity: exact on random instances,
    // including the worked two-cell stopping time.
    for case in 0..15u64 {
        let z = random_z(grid, 800 + case);
        let w = random_z(grid, 900 + case);
        let s = random_s(grid, 800 + case);
        let (lhs, rhs) = noncomm_defect_exact(&z, &w, &s).unwrap();
        assert!(lhs.frobenius_diff(&rhs) <= tol, "case {case}");
        // W = I: Z_Ŝ·I_Ŝ = Z_Ŝ = (Z_Ŝ)_Ŝ, both sides vanish
        let (l0, r0) = noncomm_defect(&z, &FockOperator::identity(grid), &s).unwrap();
        assert!(l0.frobenius_norm() <= tol && r0.frobenius_norm() <= tol);
    }
    // deterministic S: both sides of the compact form vanish
    let z = random_z(grid, 111);
    let w = random_z(grid, 222);
    for j in 0..=4usize {
        let det = QuantumStoppingTime::deterministic(grid, TimePoint::Finite(j));
        let (l, r) = noncomm_defect(&z, &w, &det).unwrap();
        assert!(l.frobenius_norm() <= tol);
        assert!(r.frobenius_norm() <= tol);
    }
    // the worked two-cell example, by brute force
    let grid2 = Grid::new(2, 1.0).unwrap();
    let n0 = cell_op(grid2, 0, CellKind::Number).unwrap();
    let mut atoms = std::collections::BTreeMap::new();
    atoms.insert(TimePoint::Finite(1), n0.clone());
    atoms.insert(TimePoint::Infinity, FockOperator::identity(grid2).sub(&n0));
    let s2 = QuantumStoppingTime::new(grid2, atoms).unwrap();
    let z = random_z(grid2, 333);
    let w = random_z(grid2, 444);
    let (l, r) = noncomm_defect_exact(&z, &w, &s2).unwrap();
    assert!(l.frobenius_diff(&r) <= eps_exact(&grid2));
    // the compact remark form drops the compression cross term; on this
    // example with dense Z, W the deviation is visible and refinement-stable
    // (the lab tracks it), so it is measured rather than asserted here.
    let (l_remark, r_remark) = noncomm_defect(&z, &w, &s2).unwrap();
    let deviation = l_remark.frobenius_diff(&r_remark);
    println!("remark-form deviation on the worked example: {deviation:.3e}");
    assert!(deviation.is_finite());
}

#[test]
fn open_question_measurement_never_asserted() {
    // Whether (Z_Ŝ)_T̂ = Z_Ŝ for S ≤ T is measured and reported only.
    let grid = Grid::new(4, 1.0).unwrap();
    let mut max_defect = 0.0f64;
    for case in 0..10u64 {
        let z = random_z(grid, 1200 + case);
        let t = random_s(grid, 1200 + case);
        for j in 1..4usize {
            let s = qst_min_const(&t, j);
            let z_s_hat = stop_op_id(&z, &s).unwrap();
            let restopped = stop_op_id(&z_s_hat, &t).unwrap();
            max_defect = max_defect.max(restopped.frobenius_diff(&z_s_hat));
        }
    }
    println!("open-question defect max over sampled pairs: {max_defect:.6e}");
    assert!(max_defect.is_finite());
}
