//! Scenario files: JSON descriptions naming a process builder, a stopping
//! time and the identities to check on them.

use crate::config::LabConfig;
use fock_core::*;
use qsc_integrals::*;
use serde::Deserialize;
use stopped_processes::*;
use stopping_times::*;

#[derive(Deserialize)]
pub struct ScenarioFile {
    pub grid: GridSpec,
    pub builder: BuilderSpec,
    pub stopping_time: StoppingSpec,
    pub checks: Vec<String>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Deserialize)]
pub struct GridSpec {
    pub n_cells: usize,
    pub t_max: f64,
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum BuilderSpec {
    ClosedMartingale,
    Fv,
    Semimartingale,
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StoppingSpec {
    Deterministic { index: usize },
    SeededRandom { seed: u64 },
    Explicit(stopping_times::QstJson),
}

#[derive(Debug)]
pub struct ScenarioCheck {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug)]
pub enum ScenarioError {
    Parse(String),
    Build(String),
    UnknownCheck { requested: String, known: Vec<&'static str> },
}

impl std::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScenarioError::Parse(m) => write!(f, "scenario parse: {m}"),
            ScenarioError::Build(m) => write!(f, "scenario build: {m}"),
            ScenarioError::UnknownCheck { requested, known } => {
                write!(f, "unknown check '{requested}'; known: {}", known.join(", "))
            }
        }
    }
}

impl std::error::Error for ScenarioError {}

pub const SCENARIO_CHECKS: &[&str] = &[
    "closed-martingale-stop",
    "optional-sampling",
    "stop-idempotents",
    "fv-stop",
    "semimartingale-stop",
];

pub fn run_scenario(config: &LabConfig, text: &str) -> Result<Vec<ScenarioCheck>, ScenarioError> {
    let file: ScenarioFile =
        serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
    let grid = Grid::new(file.grid.n_cells, file.grid.t_max)
        .map_err(|e| ScenarioError::Build(e.to_string()))?;
    let seed = file.seed.unwrap_or(config.seed);
    let tol = config.tol_for(grid.n_cells());

    let s = match &file.stopping_time {
        StoppingSpec::Deterministic { index } => {
            QuantumStoppingTime::deterministic(grid, TimePoint::Finite(*index))
        }
        StoppingSpec::SeededRandom { seed } => {
            let mut rng = stream(*seed, &[0x5ce]);
            random_qst(grid, &mut rng)
        }
        StoppingSpec::Explicit(json) => {
            qst_from_json(grid, json).map_err(|e| ScenarioError::Build(e.to_string()))?
        }
    };

    let mut rng = stream(seed, &[0xb1d]);
    let z = random_operator(grid, &mut rng);
    let quadruple = random_quadruple(grid, ProcessKind::Vacuum, &mut rng);
    let fv = FVProcess::new(random_process(grid, ProcessKind::Vacuum, &mut rng))
        .map_err(|e| ScenarioError::Build(e.to_string()))?;

    let mut out = Vec::new();
    for check in &file.checks {
        let residual = match check.as_str() {
            "closed-martingale-stop" => {
                let m = Process::closed_vacuum_martingale(&z)
                    .map_err(|e| ScenarioError::Build(e.to_string()))?;
                let stopped = stop_closed_martingale(&m, &s, StopFlavor::Vacuum)
                    .map_err(|e| ScenarioError::Build(e.to_string()))?;
                let es = time_projection(&s).map_err(|e| ScenarioError::Build(e.to_string()))?;
                es.mul(&stopped).mul(&es).frobenius_diff(&stopped)
            }
            "optional-sampling" => {
                let t = &s;
                let wedge = qst_min_const(t, grid.n_cells() / 2);
                let m_s = stop_op_vac(&z, &wedge).unwrap();
                stop_op_vac(&m_s, t).unwrap().frobenius_diff(&m_s)
            }
            "stop-idempotents" => {
                let z_vac = stop_op_vac(&z, &s).unwrap();
                let z_id = stop_op_id(&z, &s).unwrap();
                let mut worst = stop_op_vac(&z_id, &s).unwrap().frobenius_diff(&z_vac);
                worst = worst.max(stop_op_id(&z_vac, &s).unwrap().frobenius_diff(&z_id));
                worst
            }
            "fv-stop" => {
                let stopped = stop_fv_vac(&fv, &s).unwrap();
                let direct =
                    stop_process_discrete_vac(&fv.as_process().unwrap(), &s).unwrap();
                stopped.frobenius_diff(&direct)
            }
            "semimartingale-stop" => {
                let stopped = stop_semimartingale_vac(&quadruple, &s).unwrap();
                let value = stopped.eval(grid.n_cells()).unwrap();
                value.frobenius_diff(&stopped_semimartingale_value(&quadruple, &s).unwrap())
            }
            other => {
                return Err(ScenarioError::UnknownCheck {
                    requested: other.to_string(),
                    known: SCENARIO_CHECKS.to_vec(),
                })
            }
        };
        out.push(ScenarioCheck {
            name: check.clone(),
            residual,
            tol,
            pass: residual <= tol,
        });
    }
    Ok(out)
}
