//! Report types and emission: per-identity pass lines, convergence rows with
//! the fixed CSV schema, grouped markdown and mirrored JSON.

use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub name: &'static str,
    pub module: &'static str,
    pub cases: usize,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl IdentityReport {
    pub fn line(&self) -> String {
        format!(
            "{} {:<34} max_residual={:.3e} tol={:.3e} ({} cases)",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.max_residual,
            self.tol,
            self.cases
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ConvergenceRow {
    pub identity: String,
    pub n_cells: usize,
    pub dt: f64,
    pub residual_fro: f64,
    pub residual_op: f64,
    /// residual of the previous (coarser) level divided by this one;
    /// absent on the first level.
    pub ratio: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Ratio inside the O(dt) band with monotone non-increase.
    LinearDecay,
    /// Residuals at the machine floor; nothing left to decay.
    ExactPromoted,
    /// Bounds held at every level.
    WithinBounds,
    /// Recorded measurement; no pass/fail semantics.
    Measured,
    Failed,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        !matches!(self, Verdict::Failed)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::LinearDecay => "O(dt) decay",
            Verdict::ExactPromoted => "exact (promoted)",
            Verdict::WithinBounds => "within bounds",
            Verdict::Measured => "measured",
            Verdict::Failed => "FAILED",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub identity: String,
    pub module: &'static str,
    pub rows: Vec<ConvergenceRow>,
    pub verdict: Verdict,
    pub note: String,
}

pub const CSV_HEADER: &str = "identity,n_cells,dt,residual_fro,residual_op,ratio";

pub fn rows_to_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let ratio = r.ratio.map(|x| format!("{x:.4}")).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{:.6},{:.6e},{:.6e},{}\n",
            r.identity, r.n_cells, r.dt, r.residual_fro, r.residual_op, ratio
        ));
    }
    out
}

pub fn reports_to_markdown(reports: &[ConvergenceReport]) -> String {
    let mut out = String::from("# Convergence report\n");
    let mut modules: Vec<&'static str> = reports.iter().map(|r| r.module).collect();
    modules.dedup();
    let mut seen = std::collections::BTreeSet::new();
    for module in modules {
        if !seen.insert(module) {
            continue;
        }
        out.push_str(&format!("\n## {module}\n\n"));
        out.push_str("| identity | n_cells | dt | residual_fro | residual_op | ratio | verdict |\n");
        out.push_str("|---|---|---|---|---|---|---|\n");
        for r in reports.iter().filter(|r| r.module == module) {
            for (i, row) in r.rows.iter().enumerate() {
                let ratio = row.ratio.map(|x| format!("{x:.3}")).unwrap_or_else(|| "-".into());
                let verdict = if i + 1 == r.rows.len() { r.verdict.label() } else { "" };
                out.push_str(&format!(
                    "| {} | {} | {:.4} | {:.3e} | {:.3e} | {} | {} |\n",
                    row.identity, row.n_cells, row.dt, row.residual_fro, row.residual_op, ratio, verdict
                ));
            }
        }
        for r in reports.iter().filter(|r| r.module == module) {
            if !r.note.is_empty() {
                out.push_str(&format!("\n*{}*: {}\n", r.identity, r.note));
            }
        }
    }
    out
}

pub fn rows_to_json(rows: &[ConvergenceRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialise")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Md,
    Json,
}

/// Writes the requested report file into `out_dir`; returns the path.
pub fn emit_report(
    reports: &[ConvergenceReport],
    format: ReportFormat,
    out_dir: &Path,
) -> std::io::Result<std::path::PathBuf> {
    std::fs::create_dir_all(out_dir)?;
    let rows: Vec<ConvergenceRow> =
        reports.iter().flat_map(|r| r.rows.iter().cloned()).collect();
    let (name, payload) = match format {
        ReportFormat::Csv => ("convergence.csv", rows_to_csv(&rows)),
        ReportFormat::Md => ("convergence.md", reports_to_markdown(reports)),
        ReportFormat::Json => ("convergence.json", rows_to_json(&rows)),
    };
    let path = out_dir.join(name);
    let mut file = std::fs::File::create(&path)?;
    file.write_all(payload.as_bytes())?;
    Ok(path)
}

/// Verdict for a sequence of residuals expected to vanish linearly in dt.
/// Residuals at the machine floor are promoted to exact; otherwise the decay
/// must be monotone non-increasing with the final ratio inside the band.
pub fn ratio_band_verdict(residuals: &[f64], lo: f64, hi: f64) -> Verdict {
    const PROMOTE_FLOOR: f64 = 100.0 * f64::EPSILON;
    if residuals.iter().all(|&r| r <= PROMOTE_FLOOR) {
        return Verdict::ExactPromoted;
    }
    if residuals.len() < 2 {
        return Verdict::Measured;
    }
    let monotone = residuals.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9));
    let last = residuals[residuals.len() - 1];
    let prev = residuals[residuals.len() - 2];
    if last <= PROMOTE_FLOOR {
        return Verdict::ExactPromoted;
    }
    let ratio = prev / last;
    if monotone && ratio >= lo && ratio <= hi {
        Verdict::LinearDecay
    } else {
        Verdict::Failed
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_result_set_gives_header_only_csv() {
        assert_eq!(rows_to_csv(&[]), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn ratio_band_promotion() {
        assert_eq!(ratio_band_verdict(&[0.0, 0.0, 0.0], 1.6, 2.4), Verdict::ExactPromoted);
        assert_eq!(ratio_band_verdict(&[0.4, 0.2, 0.1], 1.6, 2.4), Verdict::LinearDecay);
        assert_eq!(ratio_band_verdict(&[0.4, 0.39, 0.38], 1.6, 2.4), Verdict::Failed);
        assert_eq!(ratio_band_verdict(&[0.1, 0.2, 0.4], 1.6, 2.4), Verdict::Failed);
    }
}
