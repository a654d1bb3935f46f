//! CSV form of an integrand quadruple, one matrix entry per row:
//! `part,time_index,row,col,re,im` with parts
//! `initial|gauge|annihilation|creation|time`. Zero entries are skipped.

use crate::error::QscError;
use crate::integrals::QSIntegrands;
use crate::process::{Process, ProcessKind};
use fock_core::{CMatrix, Complex64, FockOperator, Grid};
use std::io::{self, Write};

const PARTS: [&str; 5] = ["initial", "gauge", "annihilation", "creation", "time"];

pub fn write_quadruple_csv<W: Write>(w: &mut W, x: &QSIntegrands) -> io::Result<()> {
    writeln!(w, "part,time_index,row,col,re,im")?;
    let mut dump = |part: &str, j: usize, op: &FockOperator| -> io::Result<()> {
        for r in 0..op.dim() {
            for c in 0..op.dim() {
                let v = op.matrix()[(r, c)];
                if v.re != 0.0 || v.im != 0.0 {
                    writeln!(w, "{part},{j},{r},{c},{:.17e},{:.17e}", v.re, v.im)?;
                }
            }
        }
        Ok(())
    };
    dump("initial", 0, x.initial())?;
    for j in 0..=x.grid().n_cells() {
        dump("gauge", j, x.gauge().value(j))?;
        dump("annihilation", j, x.annihilation().value(j))?;
        dump("creation", j, x.creation().value(j))?;
        dump("time", j, x.time().value(j))?;
    }
    Ok(())
}

pub fn read_quadruple_csv(
    grid: Grid,
    kind: ProcessKind,
    text: &str,
) -> Result<QSIntegrands, QscError> {
    let d = grid.dim();
    let slots = grid.n_cells() + 1;
    let mut initial = CMatrix::zeros(d, d);
    let mut parts: Vec<Vec<CMatrix>> =
        (0..4).map(|_| (0..slots).map(|_| CMatrix::zeros(d, d)).collect()).collect();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with("part,") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(QscError::WrongLength { expected: 6, got: fields.len() });
        }
        let bad = |what: &str| {
            QscError::Fock(fock_core::FockError::Config(format!(
                "quadruple csv line {}: bad {what}",
                lineno + 1
            )))
        };
        let j: usize = fields[1].parse().map_err(|_| bad("time_index"))?;
        let r: usize = fields[2].parse().map_err(|_| bad("row"))?;
        let c: usize = fields[3].parse().map_err(|_| bad("col"))?;
        let re: f64 = fields[4].parse().map_err(|_| bad("re"))?;
        let im: f64 = fields[5].parse().map_err(|_| bad("im"))?;
        if r >= d || c >= d || j >= slots {
            return Err(bad("index range"));
        }
        let v = Complex64::new(re, im);
        match fields[0] {
            "initial" => initial[(r, c)] = v,
            "gauge" => parts[0][j][(r, c)] = v,
            "annihilation" => parts[1][j][(r, c)] = v,
            "creation" => parts[2][j][(r, c)] = v,
            "time" => parts[3][j][(r, c)] = v,
            other => {
                return Err(QscError::Fock(fock_core::FockError::Config(format!(
                    "unknown part '{other}', expected one of {PARTS:?}"
                ))))
            }
        }
    }
    let mut processes = parts.into_iter().map(|mats| {
        let ops = mats
            .into_iter()
            .map(|m| FockOperator::from_matrix(grid, m))
            .collect::<Result<Vec<_>, _>>()?;
        Process::new(grid, kind, ops, None)
    });
    let gauge = processes.next().unwrap()?;
    let annihilation = processes.next().unwrap()?;
    let creation = processes.next().unwrap()?;
    let time = processes.next().unwrap()?;
    QSIntegrands::new(
        FockOperator::from_matrix(grid, initial)?,
        gauge,
        annihilation,
        creation,
        time,
    )
}
