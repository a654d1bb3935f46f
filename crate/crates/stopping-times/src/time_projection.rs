//! The time projection `E_S` of a stopping time: direct sum over atoms,
//! coarse-partition versions, both gauge-integral representations, the
//! identity-adapted integral form, the pre-S space and the gradient
//! decompositions of `‖E_S x‖` and `‖(E_S − E_T) x‖`.

use crate::error::QstError;
use crate::qst::{qst_min_const, QuantumStoppingTime, TimePoint};
use fock_core::{
    adapted_gradient, e_projection, eigh, pi_id, FockOperator, FockVector,
};
use qsc_integrals::{gauge_integral, Process, ProcessKind};

/// `E_S = S({0})E_0 + Σ_j S({t_j})E_j + S({∞})·I`.
pub fn time_projection(s: &QuantumStoppingTime) -> Result<FockOperator, QstError> {
    let grid = *s.grid();
    let mut acc = FockOperator::zero(grid);
    for (at, op) in s.atoms() {
        let e = match at {
            TimePoint::Finite(j) => e_projection(grid, *j)?,
            TimePoint::Infinity => FockOperator::identity(grid),
        };
        acc = acc.add(&op.mul(&e));
    }
    Ok(acc.into_projection_checked()?)
}

/// `E_S^π` for a sub-partition of the grid (indices strictly increasing,
/// starting at 0 and ending at `n`): the coarse sum
/// `S({0})E_0 + Σ_i S((π_{i−1}, π_i]) E_{π_i} + S({∞})`.
pub fn time_projection_coarse(
    s: &QuantumStoppingTime,
    partition: &[usize],
) -> Result<FockOperator, QstError> {
    let grid = *s.grid();
    let n = grid.n_cells();
    if partition.first() != Some(&0) || partition.last() != Some(&n) {
        return Err(QstError::MalformedPartition(format!(
            "partition must start at 0 and end at {n}"
        )));
    }
    if partition.windows(2).any(|w| w[0] >= w[1]) {
        return Err(QstError::MalformedPartition("indices must strictly increase".into()));
    }
    let mut acc = s.atom(TimePoint::Finite(0)).mul(&e_projection(grid, 0)?);
    for w in partition.windows(2) {
        let mass = s.cumulative(w[1]).sub(&s.cumulative(w[0]));
        acc = acc.add(&mass.mul(&e_projection(grid, w[1])?));
    }
    acc = acc.add(&s.atom(TimePoint::Infinity));
    Ok(acc.into_projection_checked()?)
}

/// Both gauge-integral representations of the time projection:
/// `I − ∫ S([0,s]) E_s dΛ` and `E_0 + ∫ S((s,∞]) E_s dΛ`.
pub fn time_projection_integral(
    s: &QuantumStoppingTime,
) -> Result<(FockOperator, FockOperator), QstError> {
    let grid = *s.grid();
    let killed = Process::from_fn(grid, ProcessKind::Vacuum, |j| {
        s.cumulative(j).mul(&e_projection(grid, j).expect("index in range"))
    })?;
    let surviving = Process::from_fn(grid, ProcessKind::Vacuum, |j| {
        s.tail(j).mul(&e_projection(grid, j).expect("index in range"))
    })?;
    let n = grid.n_cells();
    let from_complement =
        FockOperator::identity(grid).sub(&gauge_integral(&killed, n)?);
    let from_vacuum = e_projection(grid, 0)?.add(&gauge_integral(&surviving, n)?);
    Ok((from_complement, from_vacuum))
}

/// Identity-adapted integral form
/// `E_S = I − Σ_k a†_k S([0,t_k]) π̂(E_S)_k S([0,t_k]) a_k`.
pub fn time_projection_integral_id(s: &QuantumStoppingTime) -> Result<FockOperator, QstError> {
    let grid = *s.grid();
    let es = time_projection(s)?;
    let mut acc = FockOperator::zero(grid);
    for k in 0..grid.n_cells() {
        let c = s.cumulative(k);
        let integrand = c.mul(&pi_id(&es, k)?).mul(&c);
        acc = acc.add(&integrand.gauge_sandwich(k)?);
    }
    Ok(FockOperator::identity(grid).sub(&acc))
}

/// Orthonormal basis of the pre-S space `range(E_S)`.
pub fn pre_s_space(s: &QuantumStoppingTime) -> Result<Vec<FockVector>, QstError> {
    let grid = *s.grid();
    let es = time_projection(s)?;
    let eig = eigh(es.matrix());
    let mut basis = Vec::new();
    for (idx, &lambda) in eig.values.iter().enumerate() {
        if lambda > 0.5 {
            let amp: Vec<_> = (0..grid.dim()).map(|i| eig.vectors[(i, idx)]).collect();
            basis.push(FockVector::new(grid, amp)?);
        }
    }
    Ok(basis)
}

/// `E_{S∧t_j} = S([0,t_j]) E_S + S((t_j,∞]) E_j`; equals
/// `time_projection(S ∧ t_j)` and `E_S E_j` exactly.
pub fn e_s_wedge_const(s: &QuantumStoppingTime, j: usize) -> Result<FockOperator, QstError> {
    let es = time_projection(s)?;
    let ej = e_projection(*s.grid(), j)?;
    Ok(s.cumulative(j).mul(&es).add(&s.tail(j).mul(&ej)))
}

/// Both sides of `‖(E_S − E_T)x‖² = Σ_k ‖(S([0,t_k]) − T([0,t_k])) D_k x‖²`.
pub fn es_distance_sq(
    s: &QuantumStoppingTime,
    t: &QuantumStoppingTime,
    x: &FockVector,
) -> Result<(f64, f64), QstError> {
    if !s.grid().same_as(t.grid()) {
        return Err(QstError::GridMismatch);
    }
    let es = time_projection(s)?;
    let et = time_projection(t)?;
    let lhs = es.apply(x).sub(&et.apply(x)).norm_sqr();
    let mut rhs = 0.0;
    for k in 0..s.grid().n_cells() {
        let d = adapted_gradient(x, k)?;
        let diff = s.cumulative(k).sub(&t.cumulative(k));
        rhs += diff.apply(&d).norm_sqr();
    }
    Ok((lhs, rhs))
}

/// Both sides of the Pythagoras identity
/// `‖E_S x‖² = ‖E_0 x‖² + Σ_k ‖S((t_k,∞]) D_k x‖²`.
pub fn es_pythagoras(
    s: &QuantumStoppingTime,
    x: &FockVector,
) -> Result<(f64, f64), QstError> {
    let es = time_projection(s)?;
    let lhs = es.apply(x).norm_sqr();
    let mut rhs = e_projection(*s.grid(), 0)?.apply(x).norm_sqr();
    for k in 0..s.grid().n_cells() {
        let d = adapted_gradient(x, k)?;
        rhs += s.tail(k).apply(&d).norm_sqr();
    }
    Ok((lhs, rhs))
}

/// `E_{S ∧ t_j}` computed through `qst_min_const`, for cross-checks.
pub fn time_projection_wedge(
    s: &QuantumStoppingTime,
    j: usize,
) -> Result<FockOperator, QstError> {
    time_projection(&qst_min_const(s, j))
}
