//! JSON form of a stopping time: `{"support": [...], "atoms": [...]}` with
//! atoms as inline real/imaginary matrices. Consumed by the lab's scenario
//! files.

use crate::error::QstError;
use crate::qst::{QuantumStoppingTime, TimePoint};
use fock_core::{CMatrix, Complex64, FockOperator, Grid};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
pub struct QstJson {
    /// Support points: grid indices as numbers, infinity as the string "inf".
    pub support: Vec<serde_json::Value>,
    pub atoms: Vec<MatrixJson>,
}

impl MatrixJson {
    pub fn from_operator(op: &FockOperator) -> MatrixJson {
        let d = op.dim();
        let re = (0..d).map(|i| (0..d).map(|j| op.matrix()[(i, j)].re).collect()).collect();
        let im = (0..d).map(|i| (0..d).map(|j| op.matrix()[(i, j)].im).collect()).collect();
        MatrixJson { re, im }
    }

    pub fn to_operator(&self, grid: Grid) -> Result<FockOperator, QstError> {
        let d = grid.dim();
        if self.re.len() != d || self.im.len() != d {
            return Err(QstError::Json(format!("expected a {d}x{d} matrix")));
        }
        let mat = CMatrix::from_fn(d, d, |i, j| Complex64::new(self.re[i][j], self.im[i][j]));
        Ok(FockOperator::from_matrix(grid, mat)?)
    }
}

pub fn qst_to_json(s: &QuantumStoppingTime) -> QstJson {
    let mut support = Vec::new();
    let mut atoms = Vec::new();
    for (at, op) in s.atoms() {
        support.push(match at {
            TimePoint::Finite(j) => serde_json::json!(j),
            TimePoint::Infinity => serde_json::json!("inf"),
        });
        atoms.push(MatrixJson::from_operator(op));
    }
    QstJson { support, atoms }
}

pub fn qst_from_json(grid: Grid, json: &QstJson) -> Result<QuantumStoppingTime, QstError> {
    if json.support.len() != json.atoms.len() {
        return Err(QstError::Json("support and atoms lengths differ".into()));
    }
    let mut atoms = BTreeMap::new();
    for (at, m) in json.support.iter().zip(&json.atoms) {
        let point = if at.as_str() == Some("inf") {
            TimePoint::Infinity
        } else if let Some(j) = at.as_u64() {
            TimePoint::Finite(j as usize)
        } else {
            return Err(QstError::Json(format!("bad support point {at}")));
        };
        atoms.insert(point, m.to_operator(grid)?);
    }
    QuantumStoppingTime::new(grid, atoms)
}
