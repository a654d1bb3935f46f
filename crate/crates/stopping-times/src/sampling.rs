//! Seeded random stopping times.
//!
//! The flag construction grows an increasing family of adapted projections
//! directly: at each support point the new cumulative adds a random
//! projection built inside the kernel of the previous one, so no
//! eigensolves are needed and orthogonality is exact by construction.

use crate::error::QstError;
use crate::qst::{from_parts_unchecked, QuantumStoppingTime, TimePoint};
use fock_core::{ampliate_past, CMatrix, Complex64, FockOperator, Grid, C_ONE, C_ZERO};
use rand::Rng;
use std::collections::BTreeMap;

fn random_unitary_block(dim: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    })
    .orthonormalized_columns()
}

/// Random stopping time with a generically non-commuting cumulative family.
/// Support points are drawn from `1..=n`; part of the mass may survive to
/// infinity.
pub fn random_qst(grid: Grid, rng: &mut impl Rng) -> QuantumStoppingTime {
    let n = grid.n_cells();
    let support_size = rng.gen_range(1..=3usize.min(n));
    let mut points: Vec<usize> = Vec::new();
    while points.len() < support_size {
        let j = rng.gen_range(1..=n);
        if !points.contains(&j) {
            points.push(j);
        }
    }
    points.sort_unstable();

    let mut atoms: BTreeMap<TimePoint, FockOperator> = BTreeMap::new();
    // Columns of an orthonormal frame for the current cumulative's range,
    // expressed in the past factor of the latest support point.
    let mut frame: Option<(usize, CMatrix)> = None; // (cut index, columns)
    for &j in &points {
        let d = 1usize << j;
        let (prev_cut, prev_cols) = match &frame {
            None => (0usize, CMatrix::zeros(1, 0)),
            Some((cut, cols)) => (*cut, cols.clone()),
        };
        // Lift the previous range frame from the past factor at prev_cut to
        // the past factor at j: tensor each column with the future cell
        // basis of cells prev_cut..j.
        let lift_factor = 1usize << (j - prev_cut);
        let prev_rank = prev_cols.cols();
        let lifted_rank = prev_rank * lift_factor;
        let mut lifted = CMatrix::zeros(d, lifted_rank);
        for c in 0..prev_rank {
            for f in 0..lift_factor {
                for r in 0..(1usize << prev_cut) {
                    lifted[(f * (1 << prev_cut) + r, f * prev_rank + c)] = prev_cols[(r, c)];
                }
            }
        }
        // Orthonormal basis of the kernel: complete the lifted frame to a
        // full unitary by Gram–Schmidt against random vectors.
        let kernel_dim = d - lifted_rank;
        let grow = if kernel_dim == 0 {
            0
        } else {
            rng.gen_range(if atoms.is_empty() { 1 } else { 0 }..=kernel_dim)
        };
        let mut new_cols = lifted.clone();
        if grow > 0 {
            // random vectors projected off the current span, then mixed
            let mut basis: Vec<Vec<Complex64>> = (0..lifted_rank)
                .map(|c| (0..d).map(|r| lifted[(r, c)]).collect())
                .collect();
            let mut added = 0usize;
            while added < grow {
                let mut v: Vec<Complex64> = (0..d)
                    .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                    .collect();
                for _ in 0..2 {
                    for q in &basis {
                        let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                        for (x, qv) in v.iter_mut().zip(q) {
                            *x -= proj * qv;
                        }
                    }
                }
                let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm < 1e-8 {
                    continue;
                }
                for x in v.iter_mut() {
                    *x /= norm;
                }
                basis.push(v);
                added += 1;
            }
            new_cols = CMatrix::from_fn(d, lifted_rank + grow, |r, c| basis[c][r]);
        }
        // Mix the newly added directions among themselves.
        if grow > 1 {
            let mix = random_unitary_block(grow, rng);
            let mut mixed = new_cols.clone();
            for r in 0..d {
                for c in 0..grow {
                    let mut acc = C_ZERO;
                    for k in 0..grow {
                        acc += new_cols[(r, lifted_rank + k)] * mix[(k, c)];
                    }
                    mixed[(r, lifted_rank + c)] = acc;
                }
            }
            new_cols = mixed;
        }
        // Atom at j: projection onto the newly added directions, ampliated.
        let mut atom_block = CMatrix::zeros(d, d);
        for c in lifted_rank..new_cols.cols() {
            for r in 0..d {
                let vr = new_cols[(r, c)];
                if vr == C_ZERO {
                    continue;
                }
                for r2 in 0..d {
                    atom_block[(r, r2)] += vr * new_cols[(r2, c)].conj();
                }
            }
        }
        if new_cols.cols() > lifted_rank {
            let atom = ampliate_past(grid, &atom_block, j).expect("cut in range");
            atoms.insert(TimePoint::Finite(j), atom);
        }
        frame = Some((j, new_cols));
    }
    // Mass at infinity: whatever the cumulative never captured.
    let mut total = FockOperator::zero(grid);
    for op in atoms.values() {
        total = total.add(op);
    }
    let inf = FockOperator::identity(grid).sub(&total);
    if inf.frobenius_norm() > 1e-12 {
        atoms.insert(TimePoint::Infinity, inf);
    }
    from_parts_unchecked(grid, atoms)
}

/// Random stopping time whose atoms are diagonal in the occupation basis:
/// the stopping rule is a classical adapted first-passage over bit patterns.
/// Any two of these commute.
pub fn random_diagonal_qst(grid: Grid, rng: &mut impl Rng) -> QuantumStoppingTime {
    let n = grid.n_cells();
    let dim = grid.dim();
    // stop at j when the masked past pattern hits a trigger set
    let thresholds: Vec<f64> = (0..=n).map(|_| rng.gen::<f64>() * 0.7).collect();
    let salts: Vec<u64> = (0..=n).map(|_| rng.gen()).collect();
    let tau = |m: usize| -> TimePoint {
        for j in 1..=n {
            let past = m & ((1 << j) - 1);
            let mut h = (past as u64) ^ salts[j];
            h ^= h >> 33;
            h = h.wrapping_mul(0xff51afd7ed558ccd);
            h ^= h >> 33;
            let u = (h >> 11) as f64 / (1u64 << 53) as f64;
            if u < thresholds[j] {
                return TimePoint::Finite(j);
            }
        }
        TimePoint::Infinity
    };
    let mut diag: BTreeMap<TimePoint, Vec<Complex64>> = BTreeMap::new();
    for m in 0..dim {
        let at = tau(m);
        let entry = diag.entry(at).or_insert_with(|| vec![C_ZERO; dim]);
        entry[m] = C_ONE;
    }
    let atoms = diag
        .into_iter()
        .map(|(at, d)| {
            let op = FockOperator::from_matrix(grid, CMatrix::diagonal(&d)).expect("square");
            (at, op)
        })
        .collect();
    from_parts_unchecked(grid, atoms)
}

/// Validates a sampled stopping time; used by tests to confirm the
/// constructions land inside the contract.
pub fn validate(s: &QuantumStoppingTime) -> Result<QuantumStoppingTime, QstError> {
    QuantumStoppingTime::new(*s.grid(), s.atoms().clone())
}
