//! Batch driver for the stopping-time workbench: the exact-identity suite,
//! grid-refinement convergence studies, scenario files and reports.

pub mod bigcoherent;
pub mod config;
pub mod converge;
pub mod demo;
pub mod report;
pub mod scenario;
pub mod suite;

pub use config::LabConfig;
pub use converge::{known_convergence_items, run_convergence, ConvergeError};
pub use report::{
    emit_report, rows_to_csv, rows_to_json, ConvergenceReport, ConvergenceRow, IdentityReport,
    ReportFormat, Verdict, CSV_HEADER,
};
pub use scenario::{run_scenario, ScenarioCheck, SCENARIO_CHECKS};
pub use suite::{known_identities, run_suite, run_suite_filtered, SuiteOutcome};
