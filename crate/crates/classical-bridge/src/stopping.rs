//! Classical stopping times on the walk models, their quantum counterparts
//! by conjugation, and the exact finite-probability conditional expectation.

use crate::error::BridgeError;
use crate::walk::{WalkFlavor, WalkModel};
use fock_core::{CMatrix, Complex64, FockOperator, C_ONE, C_ZERO};
use rand::Rng;
use std::collections::BTreeMap;
use stopping_times::{QuantumStoppingTime, TimePoint};

/// A stopping rule on outcome masks. `tau[ω]` is the grid index at which the
/// path `ω` stops, or infinity when it never does within the horizon.
#[derive(Clone, Debug)]
pub struct ClassicalStoppingTime {
    tau: Vec<TimePoint>,
}

impl ClassicalStoppingTime {
    /// Validates adaptedness: whether `τ ≤ t_j` may depend only on the first
    /// `j` coordinates.
    pub fn new(model: &WalkModel, tau: Vec<TimePoint>) -> Result<ClassicalStoppingTime, BridgeError> {
        let n = model.grid().n_cells();
        let dim = model.grid().dim();
        if tau.len() != dim {
            return Err(BridgeError::WrongLength { expected: dim, got: tau.len() });
        }
        for j in 0..=n {
            let mask = (1usize << j) - 1;
            let mut seen: Vec<Option<bool>> = vec![None; 1 << j];
            for (omega, at) in tau.iter().enumerate() {
                let stopped = *at <= TimePoint::Finite(j);
                let class = omega & mask;
                match seen[class] {
                    None => seen[class] = Some(stopped),
                    Some(prev) => {
                        if prev != stopped {
                            return Err(BridgeError::TauNotAdapted { time_index: j });
                        }
                    }
                }
            }
        }
        Ok(ClassicalStoppingTime { tau })
    }

    pub fn constant(model: &WalkModel, at: TimePoint) -> ClassicalStoppingTime {
        ClassicalStoppingTime { tau: vec![at; model.grid().dim()] }
    }

    pub fn values(&self) -> &[TimePoint] {
        &self.tau
    }

    pub fn at(&self, omega: usize) -> TimePoint {
        self.tau[omega]
    }
}

/// The quantum stopping time `A ↦ multiplication by 1_{τ∈A}`, conjugated to
/// the Fock side.
pub fn classical_st_to_qst(
    model: &WalkModel,
    tau: &ClassicalStoppingTime,
) -> Result<QuantumStoppingTime, BridgeError> {
    let grid = *model.grid();
    let dim = grid.dim();
    let mut groups: BTreeMap<TimePoint, Vec<Complex64>> = BTreeMap::new();
    for (omega, at) in tau.values().iter().enumerate() {
        groups.entry(*at).or_insert_with(|| vec![C_ZERO; dim])[omega] = C_ONE;
    }
    let mut atoms = BTreeMap::new();
    for (at, indicator) in groups {
        atoms.insert(at, model.multiplication_operator(&indicator)?);
    }
    Ok(QuantumStoppingTime::new(grid, atoms)?)
}

/// Exact conditional expectation `ω ↦ E[X | F_{τ(ω)}](ω)`, with the full
/// path revealed on `{τ = ∞}`.
pub fn conditional_expectation(
    model: &WalkModel,
    x: &[Complex64],
    tau: &ClassicalStoppingTime,
) -> Result<Vec<Complex64>, BridgeError> {
    let grid = *model.grid();
    let dim = grid.dim();
    if x.len() != dim {
        return Err(BridgeError::WrongLength { expected: dim, got: x.len() });
    }
    let mut out = vec![C_ZERO; dim];
    for omega in 0..dim {
        match tau.at(omega) {
            TimePoint::Infinity => out[omega] = x[omega],
            TimePoint::Finite(j) => {
                let mask = (1usize << j) - 1;
                let class = omega & mask;
                let mut num = C_ZERO;
                let mut den = 0.0f64;
                for (other, value) in x.iter().enumerate() {
                    if other & mask == class {
                        let p = model.prob(other);
                        num += value * p;
                        den += p;
                    }
                }
                out[omega] = num / den;
            }
        }
    }
    Ok(out)
}

/// The conditional-expectation matrix in the `δ_ω/√p_ω` basis; Hermitian,
/// and equal to `U E_T U†` for the corresponding quantum stopping time.
pub fn conditional_expectation_matrix(
    model: &WalkModel,
    tau: &ClassicalStoppingTime,
) -> CMatrix {
    let dim = model.grid().dim();
    let mut ce = CMatrix::zeros(dim, dim);
    for omega in 0..dim {
        match tau.at(omega) {
            TimePoint::Infinity => ce[(omega, omega)] = C_ONE,
            TimePoint::Finite(j) => {
                let mask = (1usize << j) - 1;
                let class = omega & mask;
                let mut den = 0.0f64;
                for other in 0..dim {
                    if other & mask == class {
                        den += model.prob(other);
                    }
                }
                let sp_omega = model.prob(omega).sqrt();
                for other in 0..dim {
                    if other & mask == class {
                        let w = sp_omega * model.prob(other).sqrt() / den;
                        ce[(omega, other)] = Complex64::new(w, 0.0);
                    }
                }
            }
        }
    }
    ce
}

/// First time the symmetric walk hits `level` (a nonzero integer).
pub fn first_passage(model: &WalkModel, level: i32) -> ClassicalStoppingTime {
    let grid = *model.grid();
    let n = grid.n_cells();
    let tau = (0..grid.dim())
        .map(|omega| {
            let mut pos = 0i32;
            for j in 1..=n {
                pos += if omega & (1 << (j - 1)) != 0 { 1 } else { -1 };
                if pos == level {
                    return TimePoint::Finite(j);
                }
            }
            TimePoint::Infinity
        })
        .collect();
    ClassicalStoppingTime { tau }
}

/// The `m`-th jump time of the counting walk; `jump_time(0) ≡ 0`.
pub fn jump_time(model: &WalkModel, m: usize) -> Result<ClassicalStoppingTime, BridgeError> {
    if model.flavor() != WalkFlavor::Poisson {
        return Err(BridgeError::WrongFlavor);
    }
    let grid = *model.grid();
    let n = grid.n_cells();
    let tau = (0..grid.dim())
        .map(|omega| {
            if m == 0 {
                return TimePoint::Finite(0);
            }
            let mut count = 0usize;
            for j in 1..=n {
                if omega & (1 << (j - 1)) != 0 {
                    count += 1;
                    if count == m {
                        return TimePoint::Finite(j);
                    }
                }
            }
            TimePoint::Infinity
        })
        .collect();
    Ok(ClassicalStoppingTime { tau })
}

/// Seeded adapted stopping rule: stop at the first index whose past pattern
/// trips a hashed trigger.
pub fn random_adapted_tau(model: &WalkModel, rng: &mut impl Rng) -> ClassicalStoppingTime {
    let grid = *model.grid();
    let n = grid.n_cells();
    let thresholds: Vec<f64> = (0..=n).map(|_| rng.gen::<f64>() * 0.6).collect();
    let salts: Vec<u64> = (0..=n).map(|_| rng.gen()).collect();
    let tau = (0..grid.dim())
        .map(|omega| {
            for j in 1..=n {
                let past = (omega & ((1 << j) - 1)) as u64;
                let mut h = past ^ salts[j];
                h ^= h >> 33;
                h = h.wrapping_mul(0xff51afd7ed558ccd);
                h ^= h >> 33;
                let u = (h >> 11) as f64 / (1u64 << 53) as f64;
                if u < thresholds[j] {
                    return TimePoint::Finite(j);
                }
            }
            TimePoint::Infinity
        })
        .collect();
    ClassicalStoppingTime { tau }
}

/// `E_j` conjugated to the walk picture equals conditioning on the first `j`
/// coordinates; exposed for the bridge suites.
pub fn conditioning_matrix(model: &WalkModel, j: usize) -> CMatrix {
    let tau = ClassicalStoppingTime {
        tau: vec![TimePoint::Finite(j); model.grid().dim()],
    };
    conditional_expectation_matrix(model, &tau)
}


/// Quantum-side multiplication operator of an indicator; helper for tests.
pub fn indicator_operator(
    model: &WalkModel,
    pred: impl Fn(usize) -> bool,
) -> Result<FockOperator, BridgeError> {
    let dim = model.grid().dim();
    let vals: Vec<Complex64> =
        (0..dim).map(|w| if pred(w) { C_ONE } else { C_ZERO }).collect();
    model.multiplication_operator(&vals)
}
