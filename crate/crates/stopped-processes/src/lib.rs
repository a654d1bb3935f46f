//! Stopping of operators, processes, martingales, FV processes and
//! semimartingales — both in the vacuum-adapted sense `Z_Š = E_S Z E_S` and
//! the identity-adapted (Coquio) sense `Z_Ŝ = Z_Š + ∫ S π̂(Z_Š) S dΛ` — plus
//! the stopped algebras and both optional-sampling theorems.

mod error;
mod fv;
mod semimartingale;
mod stop_id;
mod stop_vac;

pub use error::StopError;
pub use fv::{
    decompose_semimartingale, e_proj, fv_compress, fv_wedge_identity, idfvint_decompose,
    killed_gauge_term, stop_fv_id_discrete, stop_fv_vac, FVProcess,
};
pub use semimartingale::{stop_semimartingale_vac, stopped_semimartingale_value};
pub use stop_id::{
    idtpint_check, mint_decompose, noncomm_defect, noncomm_defect_exact, stop_op_id,
    stop_op_id_gauge_part, stop_process_discrete_id,
};
pub use stop_vac::{
    conditional_expectation_probe, coherent_probe, mgchar_test, stop_closed_martingale,
    stop_op_vac, stop_process_discrete_vac, stopped_martingale_process, two_point_stopping_time,
    vacuum_expectation, CondExpReport, MgCharReport, MgCharWitness, StopFlavor,
    StoppedAlgebraProbe,
};
