//! Quaternions, quaternion matrices and the complex linear algebra behind them.
//!
//! A quaternion `z + w e2` (with `z = x0 + x1 e1`, `w = x2 + x3 e1`) is carried to
//! the complex 2x2 block `[[z, w], [-conj(w), conj(z)]]`. Every norm, eigenvalue,
//! solve and square root on quaternion matrices goes through this embedding.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative tolerance for the chi-range and Hermitian checks.
pub const TOL_SYM: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.x0, q.x1, q.x2, q.x3]
    }
}

impl From<f64> for Quaternion {
    fn from(x: f64) -> Self {
        Quaternion::real(x)
    }
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion { x0: 0.0, x1: 0.0, x2: 0.0, x3: 0.0 };
    pub const ONE: Quaternion = Quaternion { x0: 1.0, x1: 0.0, x2: 0.0, x3: 0.0 };
    pub const E1: Quaternion = Quaternion { x0: 0.0, x1: 1.0, x2: 0.0, x3: 0.0 };
    pub const E2: Quaternion = Quaternion { x0: 0.0, x1: 0.0, x2: 1.0, x3: 0.0 };
    pub const E3: Quaternion = Quaternion { x0: 0.0, x1: 0.0, x2: 0.0, x3: 1.0 };

    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Quaternion { x0, x1, x2, x3 }
    }

    pub const fn real(x0: f64) -> Self {
        Quaternion { x0, x1: 0.0, x2: 0.0, x3: 0.0 }
    }

    /// Imaginary unit `e_j`, `j` in 1..=3.
    pub fn unit(j: usize) -> Self {
        match j {
            1 => Self::E1,
            2 => Self::E2,
            3 => Self::E3,
            _ => panic!("imaginary unit index {j} out of range 1..=3"),
        }
    }

    /// Component `x_j`, `j` in 0..=3.
    pub fn component(&self, j: usize) -> f64 {
        match j {
            0 => self.x0,
            1 => self.x1,
            2 => self.x2,
            3 => self.x3,
            _ => panic!("component index {j} out of range 0..=3"),
        }
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.x0, -self.x1, -self.x2, -self.x3)
    }

    pub fn norm_sqr(self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn re(self) -> f64 {
        self.x0
    }

    /// The vector part `x1 e1 + x2 e2 + x3 e3`.
    pub fn vector_part(self) -> Self {
        Quaternion::new(0.0, self.x1, self.x2, self.x3)
    }

    pub fn imag_norm(self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    /// True when `self` lies on the sphere of unit imaginary quaternions.
    pub fn is_unit_imaginary(self, tol: f64) -> bool {
        self.x0.abs() <= tol && (self.norm() - 1.0).abs() <= tol
    }

    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_sqr();
        if n == 0.0 {
            None
        } else {
            Some(self.conj() / n)
        }
    }

    pub fn powi(self, n: usize) -> Self {
        let mut acc = Quaternion::ONE;
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self - other).norm()
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}e1 + {}e2 + {}e3", self.x0, self.x1, self.x2, self.x3)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        let (a0, a1, a2, a3) = (self.x0, self.x1, self.x2, self.x3);
        let (b0, b1, b2, b3) = (o.x0, o.x1, o.x2, o.x3);
        Quaternion::new(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 + a2 * b0 + a3 * b1 - a1 * b3,
            a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.x0 * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.x0 / s, self.x1 / s, self.x2 / s, self.x3 / s)
    }
}

// ---------------------------------------------------------------------------
// Complex matrices

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        ComplexMatrix { rows: r, cols: c, data }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "complex matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in out_row.iter_mut().zip(orow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `max |C - C*|` relative to `max(1, max |C|)`.
    pub fn hermitian_residual(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        let mut r: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                r = r.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        r / self.max_abs().max(1.0)
    }

    /// Solve `self * X = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.rows;
        if self.cols != n || rhs.rows != n {
            return Err(Error::ShapeMismatch(format!(
                "solve: {}x{} against {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let m = rhs.cols;
        let mut a = self.data.clone();
        let mut b = rhs.data.clone();
        let scale = self.max_abs();
        if scale == 0.0 && n > 0 {
            return Err(Error::SingularMatrix);
        }
        for k in 0..n {
            let mut piv = k;
            let mut best = a[k * n + k].norm();
            for i in k + 1..n {
                let v = a[i * n + k].norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best <= 1e-14 * scale {
                return Err(Error::SingularMatrix);
            }
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                }
                for j in 0..m {
                    b.swap(k * m + j, piv * m + j);
                }
            }
            let inv = Complex64::new(1.0, 0.0) / a[k * n + k];
            for i in k + 1..n {
                let f = a[i * n + k] * inv;
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                a[i * n + k] = f;
                for j in k + 1..n {
                    let t = a[k * n + j];
                    a[i * n + j] -= f * t;
                }
                for j in 0..m {
                    let t = b[k * m + j];
                    b[i * m + j] -= f * t;
                }
            }
        }
        for k in (0..n).rev() {
            let inv = Complex64::new(1.0, 0.0) / a[k * n + k];
            for j in 0..m {
                let mut s = b[k * m + j];
                for l in k + 1..n {
                    s -= a[k * n + l] * b[l * m + j];
                }
                b[k * m + j] = s * inv;
            }
        }
        Ok(ComplexMatrix { rows: n, cols: m, data: b })
    }
}

/// Eigen-decomposition of a Hermitian matrix: ascending values, eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Cyclic Jacobi eigen-decomposition of a Hermitian complex matrix.
pub fn hermitian_eigen(c: &ComplexMatrix) -> Result<HermitianEigen> {
    hermitian_eigen_tol(c, TOL_SYM)
}

pub fn hermitian_eigen_tol(c: &ComplexMatrix, tol_herm: f64) -> Result<HermitianEigen> {
    let residual = c.hermitian_residual();
    if residual > tol_herm {
        return Err(Error::NotHermitian { residual });
    }
    let n = c.rows;
    // symmetrize exactly before rotating
    let mut a = c.data.clone();
    for i in 0..n {
        a[i * n + i] = Complex64::new(a[i * n + i].re, 0.0);
        for j in i + 1..n {
            let v = (a[i * n + j] + a[j * n + i].conj()) * 0.5;
            a[i * n + j] = v;
            a[j * n + i] = v.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n).data;

    for _sweep in 0..100 {
        let mut off = 0.0;
        let mut total = 0.0;
        for i in 0..n {
            total += a[i * n + i].re * a[i * n + i].re;
            for j in i + 1..n {
                off += a[i * n + j].norm_sqr();
            }
        }
        total += 2.0 * off;
        if off <= 1e-32 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let phase = apq / mag;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane
                let jpp = Complex64::new(cs, 0.0);
                let jpq = Complex64::new(sn, 0.0);
                let jqp = -phase.conj() * sn;
                let jqq = phase.conj() * cs;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * jpp + akq * jqp;
                    a[k * n + q] = akp * jpq + akq * jqq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[q * n + k] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * jpp + vkq * jqp;
                    v[k * n + q] = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for k in 0..n {
            vectors.data[k * n + new_j] = v[k * n + old_j];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Ascending eigenvalues of a Hermitian complex matrix.
pub fn hermitian_eigenvalues(c: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(c)?.values)
}

// ---------------------------------------------------------------------------
// Quaternion matrices

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct QuatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Quaternion>>,
}

impl TryFrom<MatrixRepr> for QuatMatrix {
    type Error = String;
    fn try_from(r: MatrixRepr) -> std::result::Result<Self, String> {
        if r.data.len() != r.rows {
            return Err(format!("expected {} rows, found {}", r.rows, r.data.len()));
        }
        let mut data = Vec::with_capacity(r.rows * r.cols);
        for (i, row) in r.data.into_iter().enumerate() {
            if row.len() != r.cols {
                return Err(format!("row {i}: expected {} entries, found {}", r.cols, row.len()));
            }
            data.extend(row);
        }
        Ok(QuatMatrix { rows: r.rows, cols: r.cols, data })
    }
}

impl From<QuatMatrix> for MatrixRepr {
    fn from(m: QuatMatrix) -> Self {
        let data = (0..m.rows).map(|i| m.data[i * m.cols..(i + 1) * m.cols].to_vec()).collect();
        MatrixRepr { rows: m.rows, cols: m.cols, data }
    }
}

impl QuatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Quaternion>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        QuatMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QuatMatrix { rows, cols, data: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Quaternion::ONE; n])
    }

    pub fn diagonal(entries: &[Quaternion]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &q) in entries.iter().enumerate() {
            m.data[i * n + i] = q;
        }
        m
    }

    /// The 1x1 matrix `[q]`.
    pub fn scalar(q: Quaternion) -> Self {
        QuatMatrix { rows: 1, cols: 1, data: vec![q] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QuatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(r, c, |i, j| Quaternion::real(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Quaternion {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        self.data[i * self.cols + j] = q;
    }

    /// The single entry of a 1x1 matrix.
    pub fn as_scalar(&self) -> Quaternion {
        assert_eq!(self.shape(), (1, 1), "not a 1x1 matrix");
        self.data[0]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Entrywise quaternion conjugate (no transpose).
    pub fn conj_entries(&self) -> Self {
        self.map(|q| q.conj())
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        QuatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&q| f(q)).collect() }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|q| q * s)
    }

    /// `q * M`, entrywise on the left.
    pub fn left_scale(&self, q: Quaternion) -> Self {
        self.map(|x| q * x)
    }

    /// `M * q`, entrywise on the right.
    pub fn right_scale(&self, q: Quaternion) -> Self {
        self.map(|x| x * q)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, q| m.max(q.norm()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest norm of the imaginary part of any entry.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().fold(0.0, |m, q| m.max(q.imag_norm()))
    }

    pub fn trace(&self) -> Quaternion {
        (0..self.rows.min(self.cols)).fold(Quaternion::ZERO, |acc, i| acc + self.get(i, i))
    }

    /// `max |M - M*|`, relative to `max(1, max |M|)`.
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut r: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                r = r.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        r / self.max_abs().max(1.0)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &QuatMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn hstack(blocks: &[&QuatMatrix]) -> Self {
        let rows = blocks[0].rows;
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&QuatMatrix]) -> Self {
        let cols = blocks[0].cols;
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.set_block(r0, 0, b);
            r0 += b.rows;
        }
        out
    }

    pub fn block_diag(blocks: &[&QuatMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Solve `self * X = rhs` through chi and complex LU.
    pub fn solve(&self, rhs: &QuatMatrix) -> Result<QuatMatrix> {
        if !self.is_square() || self.rows != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve: {}x{} against {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.rows == 0 {
            return Ok(QuatMatrix::zeros(0, rhs.cols));
        }
        let x = chi(self).solve(&chi(rhs))?;
        chi_inverse(&x)
    }

    pub fn inverse(&self) -> Result<QuatMatrix> {
        self.solve(&QuatMatrix::identity(self.rows))
    }

    /// Maximum entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &QuatMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((*a - *b).norm()))
    }
}

impl Add<&QuatMatrix> for &QuatMatrix {
    type Output = QuatMatrix;
    fn add(self, o: &QuatMatrix) -> QuatMatrix {
        assert_eq!(self.shape(), o.shape(), "add shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| *a + *b).collect();
        QuatMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub<&QuatMatrix> for &QuatMatrix {
    type Output = QuatMatrix;
    fn sub(self, o: &QuatMatrix) -> QuatMatrix {
        assert_eq!(self.shape(), o.shape(), "sub shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| *a - *b).collect();
        QuatMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Neg for &QuatMatrix {
    type Output = QuatMatrix;
    fn neg(self) -> QuatMatrix {
        self.map(|q| -q)
    }
}

impl Mul<&QuatMatrix> for &QuatMatrix {
    type Output = QuatMatrix;
    fn mul(self, o: &QuatMatrix) -> QuatMatrix {
        assert_eq!(self.cols, o.rows, "matmul shape mismatch {:?} * {:?}", self.shape(), o.shape());
        let mut out = QuatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == Quaternion::ZERO {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o.data[k * o.cols + j];
                }
            }
        }
        out
    }
}

impl AddAssign<&QuatMatrix> for QuatMatrix {
    fn add_assign(&mut self, o: &QuatMatrix) {
        assert_eq!(self.shape(), o.shape(), "add shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            *a += *b;
        }
    }
}

impl SubAssign<&QuatMatrix> for QuatMatrix {
    fn sub_assign(&mut self, o: &QuatMatrix) {
        assert_eq!(self.shape(), o.shape(), "sub shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            *a -= *b;
        }
    }
}

// ---------------------------------------------------------------------------
// chi embedding

fn chi_block(q: Quaternion) -> [[Complex64; 2]; 2] {
    let z = Complex64::new(q.x0, q.x1);
    let w = Complex64::new(q.x2, q.x3);
    [[z, w], [-w.conj(), z.conj()]]
}

/// Complex 2r x 2s image of an r x s quaternion matrix, block (j,k) = chi(M_jk).
pub fn chi(m: &QuatMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(2 * m.rows, 2 * m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let b = chi_block(m.get(i, j));
            for (a, row) in b.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    out.set(2 * i + a, 2 * j + c, v);
                }
            }
        }
    }
    out
}

/// Residual of the chi-range symmetry `E^-1 conj(C) E = C`, relative to `max(1, max |C|)`.
pub fn chi_symmetry_residual(c: &ComplexMatrix) -> f64 {
    if !c.rows.is_multiple_of(2) || !c.cols.is_multiple_of(2) {
        return f64::INFINITY;
    }
    let mut r: f64 = 0.0;
    for i in 0..c.rows / 2 {
        for j in 0..c.cols / 2 {
            let a = c.get(2 * i, 2 * j);
            let b = c.get(2 * i, 2 * j + 1);
            let cc = c.get(2 * i + 1, 2 * j);
            let d = c.get(2 * i + 1, 2 * j + 1);
            // E^-1 conj([[a,b],[c,d]]) E = [[conj d, -conj c], [-conj b, conj a]]
            r = r
                .max((a - d.conj()).norm())
                .max((b + cc.conj()).norm())
                .max((cc + b.conj()).norm())
                .max((d - a.conj()).norm());
        }
    }
    r / c.max_abs().max(1.0)
}

pub fn chi_inverse(c: &ComplexMatrix) -> Result<QuatMatrix> {
    chi_inverse_tol(c, TOL_SYM)
}

pub fn chi_inverse_tol(c: &ComplexMatrix, tol_sym: f64) -> Result<QuatMatrix> {
    let residual = chi_symmetry_residual(c);
    if residual > tol_sym {
        return Err(Error::SymmetryViolation { residual });
    }
    Ok(QuatMatrix::from_fn(c.rows / 2, c.cols / 2, |i, j| {
        let z = (c.get(2 * i, 2 * j) + c.get(2 * i + 1, 2 * j + 1).conj()) * 0.5;
        let w = (c.get(2 * i, 2 * j + 1) - c.get(2 * i + 1, 2 * j).conj()) * 0.5;
        Quaternion::new(z.re, z.im, w.re, w.im)
    }))
}

// ---------------------------------------------------------------------------
// Norms, positivity, functional calculus

/// Singular values of M (descending), via the Hermitian eigenvalues of chi(M)* chi(M).
/// Each quaternionic singular value appears twice.
pub fn singular_values(m: &QuatMatrix) -> Vec<f64> {
    if m.rows == 0 || m.cols == 0 {
        return Vec::new();
    }
    let c = chi(m);
    let gram = if m.rows >= m.cols { c.adjoint().matmul(&c) } else { c.matmul(&c.adjoint()) };
    let mut vals: Vec<f64> = hermitian_eigen_tol(&gram, f64::INFINITY)
        .expect("Gram matrix is Hermitian by construction")
        .values
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    vals.reverse();
    vals
}

/// Operator norm of M acting on quaternionic column vectors.
pub fn operator_norm(m: &QuatMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Smallest eigenvalue of a quaternionic Hermitian matrix.
pub fn min_eigenvalue(m: &QuatMatrix) -> Result<f64> {
    let residual = m.hermitian_residual();
    if residual > TOL_SYM {
        return Err(Error::NotHermitian { residual });
    }
    if m.rows == 0 {
        return Ok(0.0);
    }
    Ok(hermitian_eigenvalues(&chi(m))?[0])
}

/// PSD test: smallest eigenvalue of chi(M) at least `-tol * max(1, ||M||)`.
pub fn is_psd(m: &QuatMatrix, tol: f64) -> Result<bool> {
    let residual = m.hermitian_residual();
    if residual > tol.max(TOL_SYM) {
        return Err(Error::NotHermitian { residual });
    }
    if m.rows == 0 {
        return Ok(true);
    }
    let vals = hermitian_eigen_tol(&chi(m), f64::INFINITY)?.values;
    let norm = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    Ok(vals[0] >= -tol * norm.max(1.0))
}

/// `f(M)` for a quaternionic Hermitian M, through the eigen-decomposition of chi(M).
pub fn hermitian_function(m: &QuatMatrix, f: impl Fn(f64) -> f64) -> Result<QuatMatrix> {
    let residual = m.hermitian_residual();
    if residual > TOL_SYM {
        return Err(Error::NotHermitian { residual });
    }
    let eig = hermitian_eigen_tol(&chi(m), f64::INFINITY)?;
    let n = eig.values.len();
    let u = &eig.vectors;
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &lam) in eig.values.iter().enumerate() {
        let fl = f(lam);
        for i in 0..n {
            let a = u.get(i, k) * fl;
            for j in 0..n {
                let v = out.get(i, j) + a * u.get(j, k).conj();
                out.set(i, j, v);
            }
        }
    }
    chi_inverse(&out)
}

/// Deterministic Haar-like unitary: Gram-Schmidt over H on a seeded Gaussian matrix.
pub fn random_unitary(n: usize, seed: u64) -> QuatMatrix {
    assert!(n >= 1, "random_unitary needs n >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<Quaternion>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let mut g = || -> f64 { StandardNormal.sample(&mut rng) };
                    Quaternion::new(g(), g(), g(), g())
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        for _pass in 0..2 {
            for j in 0..k {
                // v <- v - u (u* v)
                let coef = cols[j].iter().zip(&cols[k]).fold(Quaternion::ZERO, |acc, (u, v)| acc + u.conj() * *v);
                let uj = cols[j].clone();
                for (v, u) in cols[k].iter_mut().zip(&uj) {
                    *v -= *u * coef;
                }
            }
        }
        let norm = cols[k].iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt();
        for v in cols[k].iter_mut() {
            *v = *v / norm;
        }
    }
    QuatMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Seeded quaternion with independent standard Gaussian components.
pub fn random_quaternion(rng: &mut impl rand::Rng) -> Quaternion {
    let mut g = || -> f64 { StandardNormal.sample(rng) };
    Quaternion::new(g(), g(), g(), g())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: f64, b: f64, c: f64, d: f64) -> Quaternion {
        Quaternion::new(a, b, c, d)
    }

    #[test]
    fn unit_products() {
        use Quaternion as Q;
        assert_eq!(Q::E1 * Q::E2, Q::E3);
        assert_eq!(Q::E2 * Q::E3, Q::E1);
        assert_eq!(Q::E3 * Q::E1, Q::E2);
        for u in [Q::E1, Q::E2, Q::E3] {
            assert_eq!(u * u, -Q::ONE);
        }
        assert_eq!(Q::E2 * Q::E1, -Q::E3);
    }

    #[test]
    fn conjugate_and_norm() {
        let a = q(1.0, -2.0, 3.0, 0.5);
        assert_eq!(a.conj(), q(1.0, 2.0, -3.0, -0.5));
        let p = a * a.conj();
        assert!((p.x0 - a.norm_sqr()).abs() < 1e-14);
        assert!(p.imag_norm() < 1e-14);
        let inv = a.inverse().unwrap();
        assert!((a * inv - Quaternion::ONE).norm() < 1e-15);
    }

    #[test]
    fn chi_examples() {
        let one = chi(&QuatMatrix::scalar(Quaternion::ONE));
        assert_eq!(one, ComplexMatrix::identity(2));
        let e2 = chi(&QuatMatrix::scalar(Quaternion::E2));
        assert_eq!(e2, ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]));
        let lhs = chi(&QuatMatrix::scalar(Quaternion::E1 * Quaternion::E2));
        let rhs = chi(&QuatMatrix::scalar(Quaternion::E1)).matmul(&e2);
        assert!(lhs.sub(&rhs).max_abs() < 1e-15);
    }

    #[test]
    fn chi_inverse_examples() {
        let e = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]);
        assert_eq!(chi_inverse(&e).unwrap().as_scalar(), Quaternion::E2);
        assert_eq!(chi_inverse(&ComplexMatrix::identity(2)).unwrap().as_scalar(), Quaternion::ONE);
        let bad = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]);
        assert!(matches!(chi_inverse(&bad), Err(Error::SymmetryViolation { .. })));
    }

    #[test]
    fn eigenvalue_examples() {
        let v = hermitian_eigenvalues(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(v, vec![1.0, 1.0, 1.0]);
        let v = hermitian_eigenvalues(&ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]])).unwrap();
        assert!((v[0] + 1.0).abs() < 1e-14 && (v[1] - 3.0).abs() < 1e-14);
        let m = QuatMatrix::from_rows(&[
            vec![Quaternion::real(2.0), Quaternion::E1],
            vec![-Quaternion::E1, Quaternion::real(2.0)],
        ]);
        let v = hermitian_eigenvalues(&chi(&m)).unwrap();
        for (got, want) in v.iter().zip([1.0, 1.0, 3.0, 3.0]) {
            assert!((got - want).abs() < 1e-13, "{v:?}");
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let c = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(matches!(hermitian_eigenvalues(&c), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn reconstruction() {
        let u = random_unitary(4, 3);
        let d = QuatMatrix::diagonal(&[1.0, -2.0, 0.5, 3.0].map(Quaternion::real));
        let h = &(&u * &d) * &u.adjoint();
        let eig = hermitian_eigen(&chi(&h)).unwrap();
        let mut lam = ComplexMatrix::zeros(8, 8);
        for (i, &v) in eig.values.iter().enumerate() {
            lam.set(i, i, Complex64::new(v, 0.0));
        }
        let back = eig.vectors.matmul(&lam).matmul(&eig.vectors.adjoint());
        assert!(back.sub(&chi(&h)).max_abs() < 1e-12);
        let expected = [-2.0, -2.0, 0.5, 0.5, 1.0, 1.0, 3.0, 3.0];
        for (a, b) in eig.values.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn operator_norm_examples() {
        assert!((operator_norm(&QuatMatrix::identity(3)) - 1.0).abs() < 1e-14);
        let a = q(1.0, 2.0, -2.0, 4.0);
        assert!((operator_norm(&QuatMatrix::scalar(a)) - 5.0).abs() < 1e-13);
        assert_eq!(operator_norm(&QuatMatrix::zeros(2, 3)), 0.0);
    }

    #[test]
    fn psd_examples() {
        assert!(is_psd(&QuatMatrix::identity(2), 1e-12).unwrap());
        assert!(!is_psd(&QuatMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]), 1e-12).unwrap());
        let m = QuatMatrix::from_rows(&[
            vec![Quaternion::real(2.0), Quaternion::E1],
            vec![-Quaternion::E1, Quaternion::real(2.0)],
        ]);
        assert!(is_psd(&m, 1e-12).unwrap());
    }

    #[test]
    fn unitary_generator() {
        let u1 = random_unitary(1, 9);
        assert!((u1.as_scalar().norm() - 1.0).abs() < 1e-15);
        for n in 1..6 {
            let u = random_unitary(n, 42 + n as u64);
            let r = &(&u.adjoint() * &u) - &QuatMatrix::identity(n);
            assert!(operator_norm(&r) < 1e-12);
        }
        assert_eq!(random_unitary(3, 7), random_unitary(3, 7));
        assert_ne!(random_unitary(3, 7), random_unitary(3, 8));
    }

    #[test]
    fn solve_and_inverse() {
        let u = random_unitary(3, 5);
        let m = &u + &QuatMatrix::identity(3).scale(2.0);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).max_abs_diff(&QuatMatrix::identity(3)) < 1e-13);
        assert!(matches!(QuatMatrix::zeros(2, 2).inverse(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn square_root() {
        let u = random_unitary(3, 11);
        let d = QuatMatrix::diagonal(&[4.0, 1.0, 0.25].map(Quaternion::real));
        let h = &(&u * &d) * &u.adjoint();
        let s = hermitian_function(&h, f64::sqrt).unwrap();
        assert!((&s * &s).max_abs_diff(&h) < 1e-12);
        assert!(s.hermitian_residual() < 1e-12);
    }

    #[test]
    fn json_layout() {
        let m = QuatMatrix::from_rows(&[vec![Quaternion::E1, Quaternion::real(2.0)]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"data":[[[0.0,1.0,0.0,0.0],[2.0,0.0,0.0,0.0]]]}"#);
        let back: QuatMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<QuatMatrix>(r#"{"rows":2,"cols":1,"data":[[[1,0,0,0]]]}"#).is_err());
    }
}
