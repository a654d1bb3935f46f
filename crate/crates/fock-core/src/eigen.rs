//! Hermitian eigensolver (cyclic complex Jacobi) plus the spectral helpers the
//! projection lattice and norm computations sit on.

use crate::matrix::{CMatrix, C_ZERO};
use num_complex::Complex64;

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending; column
/// `i` of `vectors` is the eigenvector for `values[i]`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// Cyclic Jacobi for complex Hermitian matrices. The input is symmetrised
/// first, so tiny non-Hermitian noise is tolerated.
pub fn eigh(matrix: &CMatrix) -> HermitianEigen {
    assert!(matrix.is_square(), "eigh needs a square matrix");
    let n = matrix.rows();
    let mut a = matrix.add(&matrix.adjoint()).scale(Complex64::new(0.5, 0.0));
    let mut v = CMatrix::identity(n);
    if n == 1 {
        return HermitianEigen { values: vec![a[(0, 0)].re], vectors: v };
    }

    let scale = a.frobenius_norm().max(1.0);
    let tol = 1e-14 * scale;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let g = a[(p, q)];
                let gn = g.norm();
                if gn <= tol / (n as f64) {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let u = g / gn;
                let tau = (aqq - app) / (2.0 * gn);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Columns: col_p ← c·col_p − s·ū·col_q, col_q ← s·col_p + c·ū·col_q.
                let (cs, su) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0) * u.conj());
                let (s_plain, cu) = (Complex64::new(s, 0.0), Complex64::new(c, 0.0) * u.conj());
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = cs * aip - su * aiq;
                    a[(i, q)] = s_plain * aip + cu * aiq;
                }
                // Rows: row_p ← c·row_p − s·u·row_q, row_q ← s·row_p + c·u·row_q.
                let su_r = Complex64::new(s, 0.0) * u;
                let cu_r = Complex64::new(c, 0.0) * u;
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = cs * apj - su_r * aqj;
                    a[(q, j)] = s_plain * apj + cu_r * aqj;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = cs * vip - su * viq;
                    v[(i, q)] = s_plain * vip + cu * viq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    HermitianEigen { values, vectors }
}

/// Orthogonal projection onto the span of the eigenvectors whose eigenvalue
/// satisfies `select`.
pub fn spectral_projector(eig: &HermitianEigen, select: impl Fn(f64) -> bool) -> CMatrix {
    let n = eig.vectors.rows();
    let mut p = CMatrix::zeros(n, n);
    for (idx, &lambda) in eig.values.iter().enumerate() {
        if !select(lambda) {
            continue;
        }
        for i in 0..n {
            let vi = eig.vectors[(i, idx)];
            if vi == C_ZERO {
                continue;
            }
            for j in 0..n {
                let vj = eig.vectors[(j, idx)];
                p[(i, j)] += vi * vj.conj();
            }
        }
    }
    p
}

pub fn min_eigenvalue(matrix: &CMatrix) -> f64 {
    let eig = eigh(matrix);
    eig.values.first().copied().unwrap_or(0.0)
}

/// Largest singular value. Exact (via `eigh` of `A†A`) for dimensions up to
/// 256; power iteration on `A†A` above that.
pub fn operator_norm(matrix: &CMatrix) -> f64 {
    let fro = matrix.frobenius_norm();
    if fro == 0.0 {
        return 0.0;
    }
    let n = matrix.rows();
    if matrix.is_square() && n <= 256 {
        let ata = matrix.adjoint().matmul(matrix);
        let eig = eigh(&ata);
        return eig.values.last().copied().unwrap_or(0.0).max(0.0).sqrt();
    }
    // Power iteration with a deterministic start spread over all coordinates.
    let cols = matrix.cols();
    let mut v: Vec<Complex64> = (0..cols)
        .map(|i| {
            let x = ((i as u64).wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407) >> 11)
                as f64
                / (1u64 << 53) as f64;
            Complex64::new(1.0 + x, 0.5 - x)
        })
        .collect();
    let norm0 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in v.iter_mut() {
        *z /= norm0;
    }
    let mut sigma = 0.0f64;
    for _ in 0..2000 {
        let w = matrix.apply(&v);
        let s = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if s == 0.0 {
            return 0.0;
        }
        let mut u = matrix.apply_adjoint(&w);
        let un = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in u.iter_mut() {
            *z /= un;
        }
        v = u;
        if (s - sigma).abs() <= 1e-13 * s {
            return s;
        }
        sigma = s;
    }
    sigma
}
