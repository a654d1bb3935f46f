//! Structural invariants of the toy Fock space.

use fock_core::*;
use proptest::prelude::*;
use rand::Rng;

fn random_op(grid: Grid, rng: &mut impl Rng) -> FockOperator {
    let d = grid.dim();
    let mat = CMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    FockOperator::from_matrix(grid, mat).unwrap()
}

#[test]
fn nested_time_projections_multiply_to_the_minimum() {
    let grid = Grid::new(5, 1.0).unwrap();
    let tol = 1e-12 * grid.dim() as f64;
    for i in 0..=5usize {
        for j in 0..=5usize {
            let ei = e_projection(grid, i).unwrap();
            let ej = e_projection(grid, j).unwrap();
            let emin = e_projection(grid, i.min(j)).unwrap();
            assert!(ei.mul(&ej).frobenius_diff(&emin) <= tol);
        }
    }
}

#[test]
fn gauge_telescope_per_cell() {
    // E_{j+1} − E_j = a†_j E_j a_j, exactly.
    let grid = Grid::new(6, 1.0).unwrap();
    for j in 0..6 {
        let lhs = e_projection(grid, j + 1).unwrap().sub(&e_projection(grid, j).unwrap());
        let rhs = e_projection(grid, j).unwrap().gauge_sandwich(j).unwrap();
        assert!(lhs.frobenius_diff(&rhs) == 0.0);
    }
}

#[test]
fn compressions_are_multiplicative_on_adapted_operators() {
    // π̂ and π̌ are multiplicative when the factors commute with E_j; in
    // particular on identity-adapted pairs, where both reduce to the
    // past-factor homomorphism.
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    for case in 0..20 {
        let mut rng = stream(11, &[case]);
        for j in 0..=4usize {
            let z = pi_id(&random_op(grid, &mut rng), j).unwrap();
            let w = pi_id(&random_op(grid, &mut rng), j).unwrap();
            let zw = z.mul(&w);
            assert!(pi_id(&zw, j).unwrap().frobenius_diff(&zw) <= tol);
            let lhs_vac = pi_vac(&zw, j).unwrap();
            let rhs_vac = pi_vac(&z, j).unwrap().mul(&pi_vac(&w, j).unwrap());
            assert!(lhs_vac.frobenius_diff(&rhs_vac) <= tol);
        }
    }
}

#[test]
fn identity_adapted_compression_commutes_with_future_cells() {
    let grid = Grid::new(4, 1.0).unwrap();
    let tol = eps_exact(&grid);
    let mut rng = stream(23, &[0]);
    for j in 0..=4usize {
        let z = pi_id(&random_op(grid, &mut rng), j).unwrap();
        for k in j..4 {
            for kind in [CellKind::Create, CellKind::Annihilate, CellKind::Number] {
                let c = cell_op(grid, k, kind).unwrap();
                assert!(z.mul(&c).frobenius_diff(&c.mul(&z)) <= tol);
            }
        }
    }
}

#[test]
fn lattice_laws_on_commuting_projections() {
    let grid = Grid::new(3, 1.0).unwrap();
    for case in 0..10u64 {
        let mut rng = stream(31, &[case]);
        let u = random_unitary(grid.dim(), &mut rng);
        let pick = |rng: &mut rand_chacha::ChaCha20Rng| -> Vec<Complex64> {
            (0..grid.dim())
                .map(|_| Complex64::new(if rng.gen::<bool>() { 1.0 } else { 0.0 }, 0.0))
                .collect()
        };
        let da = pick(&mut rng);
        let db = pick(&mut rng);
        let p = FockOperator::from_matrix(grid, u.matmul(&CMatrix::diagonal(&da)).matmul(&u.adjoint()))
            .unwrap()
            .into_projection_checked()
            .unwrap();
        let q = FockOperator::from_matrix(grid, u.matmul(&CMatrix::diagonal(&db)).matmul(&u.adjoint()))
            .unwrap()
            .into_projection_checked()
            .unwrap();
        let comm = p.mul(&q).frobenius_diff(&q.mul(&p));
        assert!(comm < 1e-12);
        assert!(meet_projections(&p, &q).unwrap().frobenius_diff(&p.mul(&q)) < 1e-8);
    }
}

#[test]
fn coherent_vectors_are_linearly_independent() {
    // Totality: 2^n random coherent vectors have nonsingular Gram matrix.
    // Decided on the normalised spectrum, since the raw determinant
    // underflows long before the set degenerates.
    for n in 1..=4usize {
        let grid = Grid::new(n, 1.0).unwrap();
        let mut rng = stream(47, &[n as u64]);
        let count = grid.dim();
        let samples: Vec<Vec<Complex64>> = (0..count)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let phase = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
                        let r = 1.0 + 2.0 * rng.gen::<f64>();
                        Complex64::new(r * phase.cos(), r * phase.sin())
                    })
                    .collect()
            })
            .collect();
        let norms: Vec<f64> = samples
            .iter()
            .map(|f| coherent_inner(&grid, f, f).re.sqrt())
            .collect();
        let gram = CMatrix::from_fn(count, count, |i, j| {
            coherent_inner(&grid, &samples[i], &samples[j]) / (norms[i] * norms[j])
        });
        assert!(gram.determinant().norm() > 0.0);
        let eig = eigh(&gram);
        let (lo, hi) = (eig.values[0], eig.values[count - 1]);
        assert!(lo > 1e-9 * hi, "Gram spectrum collapsed: {lo:.3e} vs {hi:.3e}");
    }
}

#[test]
fn operator_norm_examples() {
    let grid = Grid::new(4, 1.0).unwrap();
    for j in 0..=4 {
        assert!((operator_norm(&e_projection(grid, j).unwrap()) - 1.0).abs() < 1e-10);
    }
    assert_eq!(operator_norm(&FockOperator::zero(grid)), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn coherent_inner_product_formula(
        n in 1usize..5,
        t_max in 0.25f64..4.0,
        raw in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 10),
    ) {
        let grid = Grid::new(n, t_max).unwrap();
        let f: Vec<Complex64> = raw.iter().take(n).map(|&(a, b)| Complex64::new(a, b)).collect();
        let g: Vec<Complex64> = raw.iter().rev().take(n).map(|&(a, b)| Complex64::new(b, a)).collect();
        let ef = FockVector::exponential(grid, &f).unwrap();
        let eg = FockVector::exponential(grid, &g).unwrap();
        let direct = ef.inner(&eg);
        let formula = coherent_inner(&grid, &f, &g);
        prop_assert!((direct - formula).norm() <= 1e-12 * (1.0 + formula.norm()));
    }

    #[test]
    fn grid_construction_contract(n in 1usize..17, t_max in 0.01f64..100.0) {
        let grid = Grid::new(n, t_max).unwrap();
        prop_assert!((grid.dt() * n as f64 - t_max).abs() <= 1e-14 * t_max);
        prop_assert_eq!(grid.dim(), 1usize << n);
    }
}
