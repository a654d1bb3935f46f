//! Matrix-free calculus on product states, for grids too large for dense
//! operators. Operators here are sums of scalar multiples of cell-local
//! tensor factors, which covers the scalar-coefficient quadruples and the
//! `E_j`-sandwich structure the convergence studies need; vectors are sums
//! of product states, with inner products factoring cell by cell.

use num_complex::Complex64;

const C0: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const C1: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// 2×2 cell factor, row-major.
pub type Cell = [Complex64; 4];

pub const CELL_ID: Cell = [C1, C0, C0, C1];
pub const CELL_ANNIHILATE: Cell = [C0, C1, C0, C0];
pub const CELL_CREATE: Cell = [C0, C0, C1, C0];
pub const CELL_NUMBER: Cell = [C0, C0, C0, C1];
pub const CELL_VACUUM: Cell = [C1, C0, C0, C0];

/// Scalar multiple of a tensor product of cell factors.
#[derive(Clone, Debug)]
pub struct ProductOp {
    pub coeff: Complex64,
    pub cells: Vec<Cell>,
}

impl ProductOp {
    pub fn identity(n: usize) -> ProductOp {
        ProductOp { coeff: C1, cells: vec![CELL_ID; n] }
    }

    pub fn scaled_identity(n: usize, c: Complex64) -> ProductOp {
        ProductOp { coeff: c, cells: vec![CELL_ID; n] }
    }

    /// Identity everywhere except one cell.
    pub fn at_cell(n: usize, k: usize, cell: Cell, coeff: Complex64) -> ProductOp {
        let mut cells = vec![CELL_ID; n];
        cells[k] = cell;
        ProductOp { coeff, cells }
    }

    /// `E_j`: vacuum factor on every cell at or beyond `j`.
    pub fn e_projection(n: usize, j: usize, coeff: Complex64) -> ProductOp {
        let mut cells = vec![CELL_ID; n];
        for item in cells.iter_mut().take(n).skip(j) {
            *item = CELL_VACUUM;
        }
        ProductOp { coeff, cells }
    }

    pub fn mul(&self, other: &ProductOp) -> ProductOp {
        let cells = self
            .cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| {
                [
                    a[0] * b[0] + a[1] * b[2],
                    a[0] * b[1] + a[1] * b[3],
                    a[2] * b[0] + a[3] * b[2],
                    a[2] * b[1] + a[3] * b[3],
                ]
            })
            .collect();
        ProductOp { coeff: self.coeff * other.coeff, cells }
    }

    pub fn scale(&self, c: Complex64) -> ProductOp {
        ProductOp { coeff: self.coeff * c, cells: self.cells.clone() }
    }

    pub fn apply(&self, v: &ProductVec) -> ProductVec {
        let cells = self
            .cells
            .iter()
            .zip(&v.cells)
            .map(|(m, x)| [m[0] * x[0] + m[1] * x[1], m[2] * x[0] + m[3] * x[1]])
            .collect();
        ProductVec { coeff: self.coeff * v.coeff, cells }
    }
}

/// Sum of product operators.
#[derive(Clone, Debug, Default)]
pub struct OpSum(pub Vec<ProductOp>);

impl OpSum {
    pub fn zero() -> OpSum {
        OpSum(Vec::new())
    }

    pub fn single(op: ProductOp) -> OpSum {
        OpSum(vec![op])
    }

    pub fn add(&mut self, other: &OpSum) {
        self.0.extend(other.0.iter().cloned());
    }

    pub fn push(&mut self, op: ProductOp) {
        self.0.push(op);
    }

    pub fn scale(&self, c: Complex64) -> OpSum {
        OpSum(self.0.iter().map(|op| op.scale(c)).collect())
    }

    pub fn mul_op(&self, rhs: &ProductOp) -> OpSum {
        OpSum(self.0.iter().map(|op| op.mul(rhs)).collect())
    }

    pub fn lmul_op(&self, lhs: &ProductOp) -> OpSum {
        OpSum(self.0.iter().map(|op| lhs.mul(op)).collect())
    }

    pub fn apply(&self, v: &VecSum) -> VecSum {
        let mut out = Vec::with_capacity(self.0.len() * v.0.len());
        for op in &self.0 {
            for x in &v.0 {
                out.push(op.apply(x));
            }
        }
        VecSum(out)
    }

    pub fn terms(&self) -> usize {
        self.0.len()
    }
}

/// Scalar multiple of a product state.
#[derive(Clone, Debug)]
pub struct ProductVec {
    pub coeff: Complex64,
    pub cells: Vec<[Complex64; 2]>,
}

impl ProductVec {
    /// Coherent state `⊗(1, f_k√dt)`.
    pub fn coherent(samples: &[Complex64], dt: f64) -> ProductVec {
        let r = dt.sqrt();
        ProductVec {
            coeff: C1,
            cells: samples.iter().map(|f| [C1, f * r]).collect(),
        }
    }

    pub fn inner(&self, other: &ProductVec) -> Complex64 {
        let mut acc = self.coeff.conj() * other.coeff;
        for (a, b) in self.cells.iter().zip(&other.cells) {
            acc *= a[0].conj() * b[0] + a[1].conj() * b[1];
            if acc == C0 {
                return C0;
            }
        }
        acc
    }
}

/// Sum of product states.
#[derive(Clone, Debug, Default)]
pub struct VecSum(pub Vec<ProductVec>);

impl VecSum {
    pub fn single(v: ProductVec) -> VecSum {
        VecSum(vec![v])
    }

    pub fn sub(&self, other: &VecSum) -> VecSum {
        let mut out = self.0.clone();
        out.extend(other.0.iter().map(|v| ProductVec {
            coeff: -v.coeff,
            cells: v.cells.clone(),
        }));
        VecSum(out)
    }

    pub fn norm(&self) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in &self.0 {
            for b in &self.0 {
                acc += a.inner(b);
            }
        }
        acc.re.max(0.0).sqrt()
    }

    pub fn inner(&self, other: &VecSum) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in &self.0 {
            for b in &other.0 {
                acc += a.inner(b);
            }
        }
        acc
    }
}

/// A semimartingale quadruple whose integrands are single product operators
/// per cell, e.g. scalar constants (identity kind) or scalars times `E_k`
/// (vacuum kind).
pub struct StructuredQuadruple {
    pub n: usize,
    pub dt: f64,
    pub initial: ProductOp,
    pub gauge: Vec<ProductOp>,
    pub annihilation: Vec<ProductOp>,
    pub creation: Vec<ProductOp>,
    pub time: Vec<ProductOp>,
}

impl StructuredQuadruple {
    /// Increment `X_{k+1} − X_k` as a sum of product operators.
    pub fn increment(&self, k: usize) -> OpSum {
        let sqrt_dt = Complex64::new(self.dt.sqrt(), 0.0);
        let dt = Complex64::new(self.dt, 0.0);
        let n = self.n;
        let a = ProductOp::at_cell(n, k, CELL_ANNIHILATE, C1);
        let ad = ProductOp::at_cell(n, k, CELL_CREATE, C1);
        let mut sum = OpSum::zero();
        sum.push(ad.mul(&self.gauge[k]).mul(&a));
        sum.push(self.annihilation[k].mul(&a).scale(sqrt_dt));
        sum.push(ad.mul(&self.creation[k]).scale(sqrt_dt));
        sum.push(self.time[k].scale(dt));
        sum
    }

    pub fn eval(&self, j: usize) -> OpSum {
        let mut acc = OpSum::single(self.initial.clone());
        for k in 0..j {
            acc.add(&self.increment(k));
        }
        acc
    }

    /// Evaluation of the product-formula quadruple of `self · other` at `j`.
    pub fn product_formula_eval(&self, other: &StructuredQuadruple, j: usize) -> OpSum {
        let n = self.n;
        let sqrt_dt = Complex64::new(self.dt.sqrt(), 0.0);
        let dt = Complex64::new(self.dt, 0.0);
        let mut acc = OpSum::single(self.initial.mul(&other.initial));
        let mut x = OpSum::single(self.initial.clone());
        let mut y = OpSum::single(other.initial.clone());
        for k in 0..j {
            let a = ProductOp::at_cell(n, k, CELL_ANNIHILATE, C1);
            let ad = ProductOp::at_cell(n, k, CELL_CREATE, C1);
            // gauge: N N'
            acc.push(ad.mul(&self.gauge[k]).mul(&other.gauge[k]).mul(&a));
            // annihilation: (X P' + P N') a
            let mut p_term = x.mul_op(&other.annihilation[k]);
            p_term.push(self.annihilation[k].mul(&other.gauge[k]));
            acc.add(&p_term.mul_op(&a).scale(sqrt_dt));
            // creation: a† (Q X' + N Q')
            let mut q_term = y.lmul_op(&self.creation[k]);
            q_term.push(self.gauge[k].mul(&other.creation[k]));
            acc.add(&q_term.lmul_op(&ad).scale(sqrt_dt));
            // time: X R' + R X' + P Q'
            let mut r_term = x.mul_op(&other.time[k]);
            r_term.add(&y.lmul_op(&self.time[k]));
            r_term.push(self.annihilation[k].mul(&other.creation[k]));
            acc.add(&r_term.scale(dt));
            x.add(&self.increment(k));
            y.add(&other.increment(k));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coherent_norms_factor() {
        let f = vec![Complex64::new(1.0, 0.5); 4];
        let v = ProductVec::coherent(&f, 0.25);
        let direct: f64 = f.iter().map(|z| 1.0 + z.norm_sqr() * 0.25).product();
        assert!((v.inner(&v).re - direct).abs() < 1e-13);
    }

    #[test]
    fn e_projection_on_coherent_cuts_the_tail() {
        let f = vec![Complex64::new(0.7, -0.3); 3];
        let v = VecSum::single(ProductVec::coherent(&f, 1.0 / 3.0));
        let e1 = OpSum::single(ProductOp::e_projection(3, 1, C1));
        let cut = e1.apply(&v);
        let mut expected_f = f.clone();
        expected_f[1] = Complex64::new(0.0, 0.0);
        expected_f[2] = Complex64::new(0.0, 0.0);
        let want = VecSum::single(ProductVec::coherent(&expected_f, 1.0 / 3.0));
        assert!(cut.sub(&want).norm() < 1e-13);
    }
}
