//! A finite-dimensional workbench for Fock-space stopping theory.
//!
//! Time is cut into `n` cells of width `dt`; each cell carries a two-level
//! mode, so the space is `⊗_k ℂ²` with occupation-bitmask basis and the
//! past/future factorisation `𝔉 = 𝔉_{t)} ⊗ 𝔉_{[t}` holds exactly at every
//! grid time. This crate provides the space itself: vectors and coherent
//! vectors, cell operators, the time projections `E_t`, vacuum- and
//! identity-adapted compressions, adapted gradients, and the projection
//! lattice used by quantum stopping times.

mod csvio;
mod eigen;
mod error;
mod grid;
mod lattice;
mod matrix;
mod operator;
mod rng;
mod vector;

pub use csvio::{read_operator_csv, write_operator_csv, write_vector_csv};
pub use eigen::{eigh, min_eigenvalue, spectral_projector, HermitianEigen};
pub use error::FockError;
pub use grid::{eps_exact, Grid, EPS_LATTICE, MAX_CELLS, MAX_DENSE_CELLS};
pub use lattice::{
    join_projections, meet_projections, random_adapted_projection, random_hermitian,
    random_projection_matrix, random_unitary,
};
pub use matrix::{CMatrix, C_ONE, C_ZERO};
pub use operator::{
    ampliate_past, cell_op, compress_past, e_projection, is_identity_adapted, is_vacuum_adapted,
    operator_norm, pi_id, pi_vac, CellKind, FockOperator,
};
pub use rng::{name_hash, stream};
pub use vector::{adapted_gradient, coherent_inner, gradient, FockVector};

pub use num_complex::Complex64;
