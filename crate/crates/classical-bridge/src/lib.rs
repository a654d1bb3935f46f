//! Classical pictures of the toy Fock space: the symmetric random walk and
//! the Bernoulli counting walk, classical stopping times and their quantum
//! counterparts, and the identification of the time projection at a stopping
//! time with the classical conditional expectation.

mod error;
mod poisson;
mod stopping;
mod walk;

pub use error::BridgeError;
pub use poisson::{
    counting_increment, jump_law_moments, poisson_sde_check, PoissonSdeReport,
};
pub use stopping::{
    classical_st_to_qst, conditional_expectation, conditional_expectation_matrix,
    conditioning_matrix, first_passage, indicator_operator, jump_time, random_adapted_tau,
    ClassicalStoppingTime,
};
pub use walk::{walk_model, WalkFlavor, WalkModel};
