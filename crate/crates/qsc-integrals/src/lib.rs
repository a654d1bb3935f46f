//! Discrete quantum stochastic calculus on the toy Fock space: processes
//! with a declared adaptedness kind, the four integrals against `dΛ`, `dA`,
//! `dA†` and `dt`, semimartingale quadruples, Itô product formulas and the
//! switch between vacuum- and identity-adapted representations.

mod csvio;
mod error;
mod integrals;
mod ito;
mod process;
mod sampling;

pub use csvio::{read_quadruple_csv, write_quadruple_csv};
pub use error::QscError;
pub use integrals::{
    annihilation_integral, creation_integral, gauge_integral, recover_integrands,
    semimartingale_eval, time_integral, QSIntegrands,
};
pub use ito::{
    conjugate_tail_integral, gauge_norm_estimate, ito_discrete_corrections, ito_product,
    ito_product_formula, ito_product_residual, switch_naive_residual, switch_naive_vector_residual,
    switch_representation,
    switch_residual, weak_ito_gauge,
};
pub use process::{is_martingale, Process, ProcessKind, MUL_DIM};
pub use sampling::{
    random_gauge_only, random_martingale_quadruple, random_operator, random_process,
    random_quadruple,
};
