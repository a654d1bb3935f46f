//! Quantum stopping times on the grid: projection-valued measures with
//! identity-adapted cumulative projections, their meet/join lattice, and the
//! time projection `E_S` with all of its representations.

mod chaos;
mod error;
mod json;
mod lattice;
mod qst;
mod sampling;
mod time_projection;

pub use chaos::{chaos_projection, chaos_qst, chaos_residual_diagonal};
pub use error::QstError;
pub use json::{qst_from_json, qst_to_json, MatrixJson, QstJson};
pub use lattice::{qst_join, qst_meet};
pub use qst::{qst_le, qst_min_const, QuantumStoppingTime, TimePoint};
pub use sampling::{random_diagonal_qst, random_qst, validate};
pub use time_projection::{
    e_s_wedge_const, es_distance_sq, es_pythagoras, pre_s_space, time_projection,
    time_projection_coarse, time_projection_integral, time_projection_integral_id,
    time_projection_wedge,
};
