//! CSV serialisation of operators and vectors, row-major with `re,im` pairs.

use crate::error::FockError;
use crate::grid::Grid;
use crate::matrix::CMatrix;
use crate::operator::FockOperator;
use crate::vector::FockVector;
use num_complex::Complex64;
use std::io::{self, Write};

pub fn write_operator_csv<W: Write>(w: &mut W, z: &FockOperator) -> io::Result<()> {
    let d = z.dim();
    for i in 0..d {
        let mut line = String::with_capacity(d * 8);
        for j in 0..d {
            if j > 0 {
                line.push(',');
            }
            let v = z.matrix()[(i, j)];
            line.push_str(&format!("{:.17e},{:.17e}", v.re, v.im));
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

pub fn write_vector_csv<W: Write>(w: &mut W, v: &FockVector) -> io::Result<()> {
    let mut line = String::new();
    for (i, a) in v.amplitudes().iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        line.push_str(&format!("{:.17e},{:.17e}", a.re, a.im));
    }
    writeln!(w, "{line}")
}

pub fn read_operator_csv(grid: Grid, text: &str) -> Result<FockOperator, FockError> {
    let d = grid.dim();
    let mut mat = CMatrix::zeros(d, d);
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.len() != d {
        return Err(FockError::Shape { expected: d, got: lines.len() });
    }
    for (i, line) in lines.iter().enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 2 * d {
            return Err(FockError::Shape { expected: 2 * d, got: cells.len() });
        }
        for j in 0..d {
            let re: f64 = cells[2 * j].trim().parse().map_err(|_| {
                FockError::Config(format!("bad float at row {i} col {j}"))
            })?;
            let im: f64 = cells[2 * j + 1].trim().parse().map_err(|_| {
                FockError::Config(format!("bad float at row {i} col {j}"))
            })?;
            mat[(i, j)] = Complex64::new(re, im);
        }
    }
    FockOperator::from_matrix(grid, mat)
}
