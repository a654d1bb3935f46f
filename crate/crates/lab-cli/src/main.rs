//! `fockstop`: run the exact suite, the convergence lab, the worked demo or
//! a scenario file.
//!
//! Exit codes: 0 all pass, 1 identity violation or unwritable output,
//! 2 usage/config errors.

use lab_cli::*;
use std::path::PathBuf;
use std::process::ExitCode;

const USAGE: &str = "\
fockstop — finite workbench for Fock-space stopping times

USAGE:
    fockstop suite   [--config FILE] [--seed N] [--cells N] [--cases N]
    fockstop converge [--ids a,b,c] [--levels K] [--cells N] [--seed N]
                      [--config FILE] [--out DIR] [--format csv|md|json]
    fockstop demo
    fockstop scenario FILE [--config FILE]
    fockstop list

The config file is JSON with the fields n_cells, t_max, seed,
cases_per_identity, tol_exact, refinement_levels. FOCKSTOP_SEED overrides
the seed.";

struct Args {
    flags: Vec<(String, String)>,
    positional: Vec<String>,
}

fn parse_args(args: &[String]) -> Result<Args, String> {
    let mut flags = Vec::new();
    let mut positional = Vec::new();
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        if let Some(name) = a.strip_prefix("--") {
            let value = args
                .get(i + 1)
                .ok_or_else(|| format!("flag --{name} needs a value"))?
                .clone();
            flags.push((name.to_string(), value));
            i += 2;
        } else {
            positional.push(a.clone());
            i += 1;
        }
    }
    Ok(Args { flags, positional })
}

impl Args {
    fn flag(&self, name: &str) -> Option<&str> {
        self.flags.iter().rev().find(|(n, _)| n == name).map(|(_, v)| v.as_str())
    }
}

fn load_config(args: &Args, default_cells: usize) -> Result<LabConfig, String> {
    let mut config = match args.flag("config") {
        Some(path) => LabConfig::from_file(&PathBuf::from(path)).map_err(|e| e.to_string())?,
        None => LabConfig { n_cells: default_cells, ..LabConfig::default() },
    };
    if let Some(seed) = args.flag("seed") {
        config.seed = seed.parse().map_err(|_| format!("bad --seed {seed}"))?;
    }
    if let Some(cells) = args.flag("cells") {
        config.n_cells = cells.parse().map_err(|_| format!("bad --cells {cells}"))?;
    }
    if let Some(cases) = args.flag("cases") {
        config.cases_per_identity =
            cases.parse().map_err(|_| format!("bad --cases {cases}"))?;
    }
    if let Some(levels) = args.flag("levels") {
        config.refinement_levels =
            levels.parse().map_err(|_| format!("bad --levels {levels}"))?;
    }
    let config = config.with_env_seed();
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let Some(command) = argv.first() else {
        eprintln!("{USAGE}");
        return ExitCode::from(2);
    };
    let args = match parse_args(&argv[1..]) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("{e}\n\n{USAGE}");
            return ExitCode::from(2);
        }
    };

    match command.as_str() {
        "suite" => {
            let config = match load_config(&args, 6) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            println!(
                "exact suite: {} cells, t_max {}, seed {}, {} cases per identity",
                config.n_cells, config.t_max, config.seed, config.cases_per_identity
            );
            let outcome = run_suite(&config);
            for report in &outcome.reports {
                println!("{}", report.line());
            }
            let failed = outcome.reports.iter().filter(|r| !r.pass).count();
            println!(
                "{} identities, {} failed",
                outcome.reports.len(),
                failed
            );
            if outcome.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        "converge" => {
            let config = match load_config(&args, 4) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            if let Err(e) = config.validate_for_convergence() {
                eprintln!("{e}");
                return ExitCode::from(2);
            }
            let names: Vec<String> = args
                .flag("ids")
                .map(|s| s.split(',').map(|x| x.trim().to_string()).collect())
                .unwrap_or_default();
            let reports = match run_convergence(&config, &names) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let rows: Vec<ConvergenceRow> =
                reports.iter().flat_map(|r| r.rows.iter().cloned()).collect();
            print!("{}", rows_to_csv(&rows));
            let mut any_fail = false;
            for r in &reports {
                println!("# {:<26} {}", r.identity, r.verdict.label());
                any_fail |= !r.verdict.passed();
            }
            if let Some(out) = args.flag("out") {
                let dir = PathBuf::from(out);
                let formats = match args.flag("format") {
                    None => vec![ReportFormat::Csv, ReportFormat::Md, ReportFormat::Json],
                    Some("csv") => vec![ReportFormat::Csv],
                    Some("md") => vec![ReportFormat::Md],
                    Some("json") => vec![ReportFormat::Json],
                    Some(other) => {
                        eprintln!("unknown format {other}");
                        return ExitCode::from(2);
                    }
                };
                for format in formats {
                    if let Err(e) = emit_report(&reports, format, &dir) {
                        eprintln!("cannot write report: {e}");
                        return ExitCode::from(1);
                    }
                }
            }
            if any_fail {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        "demo" => {
            print!("{}", lab_cli::demo::run_demo());
            ExitCode::SUCCESS
        }
        "scenario" => {
            let Some(path) = args.positional.first() else {
                eprintln!("scenario needs a file\n\n{USAGE}");
                return ExitCode::from(2);
            };
            let config = match load_config(&args, 4) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {path}: {e}");
                    return ExitCode::from(2);
                }
            };
            match run_scenario(&config, &text) {
                Ok(checks) => {
                    let mut ok = true;
                    for c in &checks {
                        println!(
                            "{} {:<26} residual={:.3e} tol={:.3e}",
                            if c.pass { "PASS" } else { "FAIL" },
                            c.name,
                            c.residual,
                            c.tol
                        );
                        ok &= c.pass;
                    }
                    if ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("{e}");
                    ExitCode::from(2)
                }
            }
        }
        "list" => {
            println!("exact identities:");
            for name in known_identities() {
                println!("  {name}");
            }
            println!("convergence items:");
            for item in lab_cli::converge::CONVERGENCE_REGISTRY {
                println!("  {}", item.name);
            }
            ExitCode::SUCCESS
        }
        other => {
            eprintln!("unknown command {other}\n\n{USAGE}");
            ExitCode::from(2)
        }
    }
}
