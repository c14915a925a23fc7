//! Schur multipliers: membership through Toeplitz sections, the kernel `K_S`, and the
//! Schur algorithm on real-axis symbols.

use crate::axseries::{monotone_ratio_tail, AxialSeries, TailModel};
use crate::error::{Error, Result};
use crate::quatlin::{self, QuatMatrix, Quaternion};
use crate::toeplitz::{self, ContractionVerdict};

/// A parameter with `|rho| >= 1 - STOP_TOL` ends the Schur algorithm.
pub const STOP_TOL: f64 = 1e-12;

/// Largest constant term tolerated before a division by `t`.
pub const DIVISION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SchurMultiplier {
    series: AxialSeries,
    verified_to: usize,
    slack: f64,
}

impl SchurMultiplier {
    pub fn series(&self) -> &AxialSeries {
        &self.series
    }

    pub fn verified_to(&self) -> usize {
        self.verified_to
    }

    /// `1 - ||T_N||` at the verified size.
    pub fn slack(&self) -> f64 {
        self.slack
    }

    pub fn shape(&self) -> (usize, usize) {
        self.series.shape()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SchurVerdict {
    Accepted(SchurMultiplier),
    Rejected { size: usize, norm: f64 },
}

impl SchurVerdict {
    pub fn accepted(&self) -> Option<&SchurMultiplier> {
        match self {
            SchurVerdict::Accepted(s) => Some(s),
            SchurVerdict::Rejected { .. } => None,
        }
    }

    pub fn into_multiplier(self) -> Option<SchurMultiplier> {
        match self {
            SchurVerdict::Accepted(s) => Some(s),
            SchurVerdict::Rejected { .. } => None,
        }
    }
}

/// Toeplitz symbols of `f` visible to a section of size `n`.
fn section_symbols(f: &AxialSeries, n: usize) -> Vec<QuatMatrix> {
    let mut symbols: Vec<QuatMatrix> = f.coeffs().iter().take(n).cloned().collect();
    if symbols.is_empty() {
        symbols.push(QuatMatrix::zeros(f.rows(), f.cols()));
    }
    symbols
}

/// Accept `f` when its lower-triangular Toeplitz section of size `n` is a contraction.
///
/// Series with an infinite tail are tested on their stored coefficients.
pub fn verify_schur(f: &AxialSeries, n: usize, tol: f64) -> SchurVerdict {
    let symbols = section_symbols(f, n);
    let verdict = toeplitz::is_contraction(&symbols, n, tol).expect("symbols of one series share a shape");
    match verdict {
        ContractionVerdict::Contraction { size, norm } => {
            SchurVerdict::Accepted(SchurMultiplier { series: f.clone(), verified_to: size, slack: 1.0 - norm })
        }
        ContractionVerdict::ViolatedAt { size, norm } => SchurVerdict::Rejected { size, norm },
    }
}

/// `r^k [(k+2)/(1-r) + r/(1-r)^2]`, which bounds `sum_{j>=k} (j+2) r^j`.
fn weighted_geometric_tail(k: usize, r: f64) -> f64 {
    if r == 0.0 {
        return if k == 0 { 2.0 } else { 0.0 };
    }
    let kf = k as f64;
    r.powi(k as i32) * ((kf + 2.0) / (1.0 - r) + r / (1.0 - r).powi(2))
}

/// `sum_{k<=n} [P_k(x) conj(P_k(y)) I - (P_k (.) S)(x) ((P_k (.) S)(y))*]` and a bound on
/// everything omitted.
///
/// The bound covers the tail of each `(P_k (.) S)` evaluation and the terms `k > n`, using
/// `|P_j(x)| <= (j+2)|x|^j` and `||S_m|| <= 1`.
pub fn kernel_k_s(s: &SchurMultiplier, x: Quaternion, y: Quaternion, n: usize) -> Result<(QuatMatrix, f64)> {
    let coeff_bound = s.series.coeff_bound().max(s.series.tail().sup().min(1.0));
    kernel_with_bound(&s.series, coeff_bound, x, y, n)
}

/// `K_S` for a series that has not been through [`verify_schur`]; `coeff_bound` must bound
/// every coefficient norm.
pub fn kernel_with_bound(
    s: &AxialSeries,
    coeff_bound: f64,
    x: Quaternion,
    y: Quaternion,
    n: usize,
) -> Result<(QuatMatrix, f64)> {
    let (rx, ry) = (x.norm(), y.norm());
    for r in [rx, ry] {
        if r >= 1.0 {
            return Err(Error::DivergentPoint { norm: r });
        }
    }
    let rows = s.rows();
    let px = crate::appell::p_values(x, n);
    let py = crate::appell::p_values(y, n);
    let mut k = QuatMatrix::zeros(rows, rows);
    let mut bound = 0.0;
    for j in 0..=n {
        k += &QuatMatrix::identity(rows).left_scale(px[j] * py[j].conj());
        if s.is_empty() && s.tail() == TailModel::Finite {
            continue;
        }
        let shifted = s.shift_product(j);
        let (tx, ex) = shifted.evaluate(x)?;
        let (ty, ey) = shifted.evaluate(y)?;
        k -= &(&tx * &ty.adjoint());
        if ex > 0.0 || ey > 0.0 {
            let (nx, ny) = (quatlin::operator_norm(&tx), quatlin::operator_norm(&ty));
            bound += ex * ny + nx * ey + ex * ey;
        }
    }
    let p = rx * ry;
    bound += monotone_ratio_tail(|j| ((j + 2) * (j + 2)) as f64 * p.powi(j as i32), n + 1);
    if coeff_bound > 0.0 && rx > 0.0 && ry > 0.0 {
        let c2 = coeff_bound * coeff_bound;
        bound += monotone_ratio_tail(|j| c2 * weighted_geometric_tail(j, rx) * weighted_geometric_tail(j, ry), n + 1);
    }
    Ok((k, bound))
}

/// Hardy kernel `k_E(x, y) = sum_n P_n(x) conj(P_n(y))`, truncated at `n`, with a bound.
pub fn hardy_kernel(x: Quaternion, y: Quaternion, n: usize) -> Result<(Quaternion, f64)> {
    let (k, b) = kernel_with_bound(&AxialSeries::zero(1, 1), 0.0, x, y, n)?;
    Ok((k.as_scalar(), b))
}

/// `K_S` on the real axis in the symbol variables: `(I - S(t) S(s)*) / (1 - ts)`.
pub fn kernel_k_s_symbol(s_t: &QuatMatrix, s_s: &QuatMatrix, t: f64, s: f64) -> QuatMatrix {
    let r = s_t.rows();
    (&QuatMatrix::identity(r) - &(s_t * &s_s.adjoint())).scale(1.0 / (1.0 - t * s))
}

/// The kernel series in symbol variables, `sum_{k<=n} (ts)^k I - T_k(t) T_k(s)*` with
/// `T_k(t) = sum_m t^(k+m) S_m`, over the stored coefficients of `s`.
pub fn kernel_k_s_symbol_series(f: &AxialSeries, t: f64, s: f64, n: usize) -> QuatMatrix {
    let r = f.rows();
    let mut k = QuatMatrix::zeros(r, r);
    for j in 0..=n {
        k += &QuatMatrix::identity(r).scale((t * s).powi(j as i32));
        let shifted = |u: f64| {
            let mut v = QuatMatrix::zeros(r, f.cols());
            for (m, c) in f.coeffs().iter().enumerate() {
                v += &c.scale(u.powi((j + m) as i32));
            }
            v
        };
        k -= &(&shifted(t) * &shifted(s).adjoint());
    }
    k
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gram {
    pub matrix: QuatMatrix,
    /// Largest truncation bound over the entries.
    pub bound: f64,
}

/// Block Gram matrix `(K(x_i, x_j))`; the lower triangle is filled by adjoints.
pub fn gram_matrix<K>(kernel: K, points: &[Quaternion]) -> Result<Gram>
where
    K: Fn(Quaternion, Quaternion) -> Result<(QuatMatrix, f64)>,
{
    let mut blocks = Vec::with_capacity(points.len() * (points.len() + 1) / 2);
    let mut bound: f64 = 0.0;
    for i in 0..points.len() {
        for j in i..points.len() {
            let (b, e) = kernel(points[i], points[j])?;
            bound = bound.max(e);
            blocks.push(((i, j), b));
        }
    }
    let r = blocks.first().map(|(_, b)| b.rows()).unwrap_or(0);
    let n = points.len();
    let mut m = QuatMatrix::zeros(r * n, r * n);
    for ((i, j), b) in blocks {
        if i == j {
            // symmetrize the diagonal against rounding
            let h = (&b + &b.adjoint()).scale(0.5);
            m.set_block(i * r, i * r, &h);
        } else {
            m.set_block(j * r, i * r, &b.adjoint());
            m.set_block(i * r, j * r, &b);
        }
    }
    Ok(Gram { matrix: m, bound })
}

/// Power series `sum t^n A_n` in the real variable `t` with quaternion matrix coefficients.
///
/// `exact` means every coefficient past the stored ones is zero; otherwise only the stored
/// coefficients are known.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPowerSeries {
    rows: usize,
    cols: usize,
    coeffs: Vec<QuatMatrix>,
    exact: bool,
}

impl RealPowerSeries {
    pub fn new(rows: usize, cols: usize, coeffs: Vec<QuatMatrix>, exact: bool) -> Result<Self> {
        if coeffs.iter().any(|c| c.shape() != (rows, cols)) {
            return Err(Error::ShapeMismatch("coefficients differ in shape".into()));
        }
        Ok(RealPowerSeries { rows, cols, coeffs, exact })
    }

    pub fn from_quaternions(coeffs: &[Quaternion], exact: bool) -> Self {
        RealPowerSeries { rows: 1, cols: 1, coeffs: coeffs.iter().map(|&q| QuatMatrix::scalar(q)).collect(), exact }
    }

    pub fn from_reals(coeffs: &[f64], exact: bool) -> Self {
        let q: Vec<Quaternion> = coeffs.iter().map(|&c| Quaternion::real(c)).collect();
        Self::from_quaternions(&q, exact)
    }

    /// Symbol of an axial series; exact when its tail is finite.
    pub fn from_axial(f: &AxialSeries) -> Self {
        RealPowerSeries {
            rows: f.rows(),
            cols: f.cols(),
            coeffs: f.coeffs().to_vec(),
            exact: f.tail() == TailModel::Finite,
        }
    }

    pub fn constant(m: QuatMatrix) -> Self {
        RealPowerSeries { rows: m.rows(), cols: m.cols(), coeffs: vec![m], exact: true }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn coeffs(&self) -> &[QuatMatrix] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> QuatMatrix {
        self.coeffs.get(n).cloned().unwrap_or_else(|| QuatMatrix::zeros(self.rows, self.cols))
    }

    /// `sum_n t^n A_n` over the known coefficients.
    pub fn value(&self, t: f64) -> QuatMatrix {
        let mut v = QuatMatrix::zeros(self.rows, self.cols);
        for c in self.coeffs.iter().rev() {
            v = &v.scale(t) + c;
        }
        v
    }

    /// Exactly `len` coefficients: exact series are zero-padded, any series is cut.
    pub fn resized(&self, len: usize) -> Self {
        let mut out = self.clone();
        if len <= self.len() {
            out.coeffs.truncate(len);
            out.exact = self.exact && self.coeffs[len..].iter().all(|c| c.max_abs() == 0.0);
        } else if self.exact {
            out.coeffs.resize(len, QuatMatrix::zeros(self.rows, self.cols));
        }
        out
    }

    fn known_len(&self, other: &Self) -> usize {
        match (self.exact, other.exact) {
            (true, true) => self.len().max(other.len()),
            (true, false) => other.len(),
            (false, true) => self.len(),
            (false, false) => self.len().min(other.len()),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch("difference of series with different shapes".into()));
        }
        let len = self.known_len(other);
        let coeffs = (0..len).map(|n| &self.coeff(n) - &other.coeff(n)).collect();
        Ok(RealPowerSeries { rows: self.rows, cols: self.cols, coeffs, exact: self.exact && other.exact })
    }

    /// `self - m` with `m` a constant.
    pub fn sub_constant(&self, m: &QuatMatrix) -> Result<Self> {
        self.sub(&Self::constant(m.clone()))
    }

    /// `(self - self(0)) / t` requires a vanishing constant term.
    pub fn div_t(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        let residual = c0.max_abs();
        if residual > DIVISION_TOL {
            return Err(Error::DivisionByT { residual });
        }
        let coeffs = self.coeffs.iter().skip(1).cloned().collect();
        Ok(RealPowerSeries { rows: self.rows, cols: self.cols, coeffs, exact: self.exact })
    }

    /// Cauchy product, quaternion order preserved.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let exact = self.exact && other.exact;
        let len = match (self.exact, other.exact) {
            (true, true) => (self.len() + other.len()).saturating_sub(1),
            _ => self.known_len(other),
        };
        let coeffs = (0..len)
            .map(|k| {
                let mut c = QuatMatrix::zeros(self.rows, other.cols);
                for j in 0..=k.min(self.len().saturating_sub(1)) {
                    if k - j < other.len() {
                        c += &(&self.coeffs[j] * &other.coeffs[k - j]);
                    }
                }
                c
            })
            .collect();
        Ok(RealPowerSeries { rows: self.rows, cols: other.cols, coeffs, exact })
    }

    pub fn left_mul(&self, m: &QuatMatrix) -> Self {
        let coeffs = self.coeffs.iter().map(|c| m * c).collect();
        RealPowerSeries { rows: m.rows(), cols: self.cols, coeffs, exact: self.exact }
    }

    pub fn right_mul(&self, m: &QuatMatrix) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * m).collect();
        RealPowerSeries { rows: self.rows, cols: m.cols(), coeffs, exact: self.exact }
    }

    /// First `len` coefficients of the inverse series, from `g_0 = A_0^-1`,
    /// `g_k = -A_0^-1 sum_{j>=1} A_j g_(k-j)`.
    pub fn inverse(&self, len: usize) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("inverse of a non-square series".into()));
        }
        let len = if self.exact { len } else { len.min(self.len()) };
        let a0_inv = self.coeff(0).inverse().map_err(|_| Error::SingularConstantTerm)?;
        let mut g: Vec<QuatMatrix> = Vec::with_capacity(len);
        for k in 0..len {
            if k == 0 {
                g.push(a0_inv.clone());
                continue;
            }
            let mut acc = QuatMatrix::zeros(self.rows, self.rows);
            for j in 1..=k.min(self.len().saturating_sub(1)) {
                acc += &(&self.coeffs[j] * &g[k - j]);
            }
            g.push(-&(&a0_inv * &acc));
        }
        Ok(RealPowerSeries { rows: self.rows, cols: self.rows, coeffs: g, exact: false })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchurStop {
    /// The requested number of parameters was produced.
    Steps,
    /// The known coefficients ran out.
    CoefficientsExhausted,
    /// The last parameter reached norm `1 - STOP_TOL`; it is included in the list.
    Unimodular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchurRun<T> {
    pub parameters: Vec<T>,
    pub stop: SchurStop,
}

fn check_iterate(s: &RealPowerSeries, step: usize, tol: f64) -> Result<()> {
    if s.is_empty() {
        return Ok(());
    }
    let t = toeplitz::ToeplitzSection::lower(s.coeffs(), s.len())?;
    let norm = toeplitz::section_norm(&t)?;
    if norm > 1.0 + tol {
        return Err(Error::NonContractiveIterate { step, norm });
    }
    Ok(())
}

/// Schur parameters `rho_n = S^(n)(0)` of a scalar symbol, with
/// `S^(n+1) = (S^(n) - rho_n) / t * (1 - conj(rho_n) S^(n))^-1`.
pub fn schur_algorithm_scalar(s: &RealPowerSeries, steps: usize, tol: f64) -> Result<SchurRun<Quaternion>> {
    if s.shape() != (1, 1) {
        return Err(Error::ShapeMismatch("scalar Schur algorithm needs a 1x1 series".into()));
    }
    let mut current = if s.is_exact() { s.resized(steps) } else { s.clone() };
    let mut parameters = Vec::new();
    for step in 0..steps {
        if current.is_empty() {
            return Ok(SchurRun { parameters, stop: SchurStop::CoefficientsExhausted });
        }
        if step > 0 {
            check_iterate(&current, step, tol)?;
        }
        let rho = current.coeff(0).as_scalar();
        parameters.push(rho);
        if rho.norm() >= 1.0 - STOP_TOL {
            return Ok(SchurRun { parameters, stop: SchurStop::Unimodular });
        }
        if step + 1 == steps {
            break;
        }
        let num = current.sub_constant(&QuatMatrix::scalar(rho))?.div_t()?;
        let den = RealPowerSeries::constant(QuatMatrix::scalar(Quaternion::ONE))
            .sub(&current.left_mul(&QuatMatrix::scalar(rho.conj())))?;
        current = num.mul(&den.inverse(num.len())?)?;
    }
    Ok(SchurRun { parameters, stop: SchurStop::Steps })
}

/// Matrix Schur parameters with
/// `S^(1) = (I - S0 S0*)^-1/2 (S - S0)/t (I - S0* S)^-1 (I - S0* S0)^1/2`.
///
/// A 1x1 input runs the scalar algorithm.
pub fn schur_algorithm_matrix(s: &RealPowerSeries, steps: usize, tol: f64) -> Result<SchurRun<QuatMatrix>> {
    if s.shape() == (1, 1) {
        let run = schur_algorithm_scalar(s, steps, tol)?;
        return Ok(SchurRun { parameters: run.parameters.into_iter().map(QuatMatrix::scalar).collect(), stop: run.stop });
    }
    let (r, c) = s.shape();
    let mut current = if s.is_exact() { s.resized(steps) } else { s.clone() };
    let mut parameters = Vec::new();
    for step in 0..steps {
        if current.is_empty() {
            return Ok(SchurRun { parameters, stop: SchurStop::CoefficientsExhausted });
        }
        if step > 0 {
            check_iterate(&current, step, tol)?;
        }
        let s0 = current.coeff(0);
        parameters.push(s0.clone());
        if quatlin::operator_norm(&s0) >= 1.0 - STOP_TOL {
            return Ok(SchurRun { parameters, stop: SchurStop::Unimodular });
        }
        if step + 1 == steps {
            break;
        }
        let left = quatlin::hermitian_function(&(&QuatMatrix::identity(r) - &(&s0 * &s0.adjoint())), |v| 1.0 / v.sqrt())?;
        let right = quatlin::hermitian_function(&(&QuatMatrix::identity(c) - &(&s0.adjoint() * &s0)), |v| v.max(0.0).sqrt())?;
        let num = current.sub_constant(&s0)?.div_t()?;
        let den = RealPowerSeries::constant(QuatMatrix::identity(c)).sub(&current.left_mul(&s0.adjoint()))?;
        current = num.mul(&den.inverse(num.len())?)?.left_mul(&left).right_mul(&right);
    }
    Ok(SchurRun { parameters, stop: SchurStop::Steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x0: f64, x1: f64, x2: f64, x3: f64) -> Quaternion {
        Quaternion::new(x0, x1, x2, x3)
    }

    #[test]
    fn membership() {
        assert!(verify_schur(&AxialSeries::basis(1, 1), 16, 1e-9).accepted().is_some());
        let half = AxialSeries::from_reals(&[0.5, 0.5], TailModel::Finite);
        assert!(verify_schur(&half, 32, 1e-9).accepted().is_some());
        let c = AxialSeries::from_quaternions(&[q(0.6, 0.0, 0.8, 0.0)], TailModel::Finite);
        let m = verify_schur(&c, 8, 1e-9).into_multiplier().unwrap();
        assert!(m.slack().abs() < 1e-12);
        let c = AxialSeries::from_quaternions(&[q(0.6, 0.1, 0.8, 0.0)], TailModel::Finite);
        assert!(matches!(verify_schur(&c, 8, 1e-9), SchurVerdict::Rejected { size: 1, .. }));
    }

    #[test]
    fn kernel_at_origin() {
        let s = AxialSeries::from_quaternions(&[q(0.3, 0.2, 0.0, -0.1), q(0.1, 0.0, 0.4, 0.0)], TailModel::Finite);
        let m = verify_schur(&s, 32, 1e-9).into_multiplier().unwrap();
        let (k, b) = kernel_k_s(&m, Quaternion::ZERO, Quaternion::ZERO, 10).unwrap();
        let s0 = s.coeff(0).as_scalar();
        assert!((k.as_scalar() - Quaternion::real(1.0 - s0.norm_sqr())).norm() < 1e-15);
        assert_eq!(b, 0.0);
    }

    #[test]
    fn shift_kernel_is_identity() {
        let m = verify_schur(&AxialSeries::basis(1, 2), 16, 1e-9).into_multiplier().unwrap();
        let x = q(0.05, 0.2, -0.1, 0.1);
        let y = q(-0.1, 0.0, 0.3, 0.1);
        let (k, b) = kernel_k_s(&m, x, y, 60).unwrap();
        assert!(k.max_abs_diff(&QuatMatrix::identity(2)) < 1e-12 + b, "{b}");
    }

    #[test]
    fn hardy_kernel_values() {
        assert_eq!(hardy_kernel(Quaternion::ZERO, Quaternion::ZERO, 5).unwrap().0, Quaternion::ONE);
        let x = q(0.1, 0.3, 0.0, 0.2);
        let (k, b) = hardy_kernel(x, x, 80).unwrap();
        assert!(k.imag_norm() < 1e-14 && k.re() >= 1.0 && b < 1e-20);
        assert!(hardy_kernel(q(0.0, 1.0, 0.0, 0.0), x, 5).is_err());
    }

    #[test]
    fn symbol_kernel_series_matches_closed_form() {
        let s = AxialSeries::from_quaternions(&[q(0.2, 0.1, 0.0, 0.0), q(0.0, 0.3, 0.2, 0.1), q(0.2, 0.0, 0.0, 0.1)], TailModel::Finite);
        let (t, u) = (0.4, -0.3);
        let series = kernel_k_s_symbol_series(&s, t, u, 90);
        let closed = kernel_k_s_symbol(&s.symbol(t).unwrap().0, &s.symbol(u).unwrap().0, t, u);
        assert!(series.max_abs_diff(&closed) < 1e-13);
    }

    #[test]
    fn series_arithmetic() {
        let a = RealPowerSeries::from_reals(&[1.0, -0.5], true);
        let inv = a.inverse(6).unwrap();
        for (k, c) in inv.coeffs().iter().enumerate() {
            assert!((c.as_scalar().re() - 0.5f64.powi(k as i32)).abs() < 1e-15);
        }
        let prod = a.mul(&inv).unwrap();
        assert_eq!(prod.len(), 6);
        assert!(prod.coeff(0).as_scalar() == Quaternion::ONE);
        assert!(prod.coeffs()[1..].iter().all(|c| c.max_abs() < 1e-15));
        let i = RealPowerSeries::from_quaternions(&[Quaternion::E1], true);
        let j = RealPowerSeries::from_quaternions(&[Quaternion::E2], true);
        assert_eq!(i.mul(&j).unwrap().coeff(0).as_scalar(), Quaternion::E3);
        assert!(matches!(a.div_t(), Err(Error::DivisionByT { .. })));
        assert!((a.value(2.0).as_scalar().re()).abs() < 1e-15);
    }

    #[test]
    fn scalar_algorithm_examples() {
        let c = q(0.3, 0.1, -0.2, 0.4);
        let run = schur_algorithm_scalar(&RealPowerSeries::from_quaternions(&[c], true), 5, 1e-9).unwrap();
        assert_eq!(run.parameters[0], c);
        assert!(run.parameters[1..].iter().all(|p| *p == Quaternion::ZERO));
        assert_eq!((run.parameters.len(), run.stop), (5, SchurStop::Steps));

        let t = RealPowerSeries::from_reals(&[0.0, 1.0], true);
        let run = schur_algorithm_scalar(&t, 10, 1e-9).unwrap();
        assert_eq!(run.parameters, vec![Quaternion::ZERO, Quaternion::ONE]);
        assert_eq!(run.stop, SchurStop::Unimodular);
    }

    #[test]
    fn coefficient_exhaustion() {
        let s = RealPowerSeries::from_reals(&[0.5, 0.25, 0.125], false);
        let run = schur_algorithm_scalar(&s, 10, 1e-9).unwrap();
        assert_eq!(run.parameters.len(), 3);
        assert_eq!(run.stop, SchurStop::CoefficientsExhausted);
    }

    #[test]
    fn non_contractive_iterate() {
        // constant term fine, but the series is not a Schur function
        let s = RealPowerSeries::from_reals(&[0.1, 2.0], true);
        assert!(matches!(schur_algorithm_scalar(&s, 4, 1e-9), Err(Error::NonContractiveIterate { step: 1, .. })));
    }

    #[test]
    fn matrix_constant() {
        let s0 = QuatMatrix::from_rows(&[vec![q(0.2, 0.1, 0.0, 0.0), q(0.0, 0.0, 0.3, 0.0)], vec![q(0.0, 0.1, 0.0, 0.2), q(-0.1, 0.0, 0.0, 0.0)]]);
        let run = schur_algorithm_matrix(&RealPowerSeries::constant(s0.clone()), 4, 1e-9).unwrap();
        assert_eq!(run.parameters[0], s0);
        assert!(run.parameters[1..].iter().all(|p| p.max_abs() < 1e-15));
        assert_eq!(run.stop, SchurStop::Steps);
    }
}
