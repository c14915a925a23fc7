//! The half-space theory: the intrinsic function `W_1` and its powers, the Hardy basis
//! `(1 + P_1)^-1 W_n`, the kernel `K_P` with its Lyapunov identity, and half-space
//! Schur and Caratheodory multipliers from realizations.
//!
//! Real-axis statements are in the symbol variable `t = 3 x0`, where `W_1` becomes
//! `(1 - t)/(1 + t)`.

use crate::axseries::{AxialSeries, TailModel};
use crate::error::{Error, Result};
use crate::quatlin::{self, QuatMatrix, Quaternion};
use crate::realize::Colligation;
use crate::schur::Gram;

/// Real Cauchy product truncated to `len` terms.
fn convolve(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    (0..len)
        .map(|k| (0..=k).filter(|&j| j < a.len() && k - j < b.len()).map(|j| a[j] * b[k - j]).sum())
        .collect()
}

/// `(1, -2, 2, -2, ...)`, the coefficients of `W_1`.
pub fn w1_coefficients(len: usize) -> Vec<f64> {
    (0..len).map(|k| if k == 0 { 1.0 } else if k % 2 == 1 { -2.0 } else { 2.0 }).collect()
}

/// `(1, -1, 1, -1, ...)`, the coefficients of `(1 + P_1)^-1`.
pub fn inv1p_coefficients(len: usize) -> Vec<f64> {
    (0..len).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect()
}

/// First `len` coefficients of `W_n = W_1^n` (intrinsic powers).
pub fn w_coefficients(n: usize, len: usize) -> Vec<f64> {
    let w1 = w1_coefficients(len);
    let mut out: Vec<f64> = (0..len).map(|k| if k == 0 { 1.0 } else { 0.0 }).collect();
    for _ in 0..n {
        out = convolve(&out, &w1, len);
    }
    out
}

/// `|[t^k] W_n| <= 2^n (k+1)^(n-1)` for `n >= 1`.
fn w_tail(n: usize) -> TailModel {
    if n == 0 {
        TailModel::Finite
    } else {
        TailModel::Decay { scale: 2f64.powi(n as i32), degree: n as u32 - 1, ratio: 1.0 }
    }
}

/// Cached coefficient sequences of `W_0..W_max` and of the basis elements.
#[derive(Debug, Clone)]
pub struct HalfSpaceBasis {
    len: usize,
    w: Vec<Vec<f64>>,
    inv1p: Vec<f64>,
}

impl HalfSpaceBasis {
    pub fn new(max_power: usize, len: usize) -> Self {
        let w1 = w1_coefficients(len);
        let mut w = Vec::with_capacity(max_power + 1);
        w.push(w_coefficients(0, len));
        for n in 1..=max_power {
            let next = convolve(&w[n - 1], &w1, len);
            w.push(next);
        }
        HalfSpaceBasis { len, w, inv1p: inv1p_coefficients(len) }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn max_power(&self) -> usize {
        self.w.len() - 1
    }

    pub fn w_coeffs(&self, n: usize) -> &[f64] {
        &self.w[n]
    }

    pub fn inv1p(&self) -> &[f64] {
        &self.inv1p
    }

    /// `W_n` as an intrinsic series.
    pub fn w_series(&self, n: usize) -> AxialSeries {
        AxialSeries::from_reals(&self.w[n], w_tail(n))
    }

    /// Basis element `(1 + P_1)^-1 W_n`; `|[t^k] e_n| <= 2^n (k+1)^n`.
    pub fn element(&self, n: usize) -> AxialSeries {
        let c = convolve(&self.inv1p, &self.w[n], self.len);
        AxialSeries::from_reals(&c, TailModel::Decay { scale: 2f64.powi(n as i32), degree: n as u32, ratio: 1.0 })
    }
}

/// Basis element `n` truncated to `len` coefficients.
pub fn hardy_basis_element(n: usize, len: usize) -> AxialSeries {
    let w = w_coefficients(n, len);
    let c = convolve(&inv1p_coefficients(len), &w, len);
    AxialSeries::from_reals(&c, TailModel::Decay { scale: 2f64.powi(n as i32), degree: n as u32, ratio: 1.0 })
}

/// Pointwise `W_n(x)` from `len` coefficients, with the tail bound.
pub fn eval_w(n: usize, x: Quaternion, len: usize) -> Result<(Quaternion, f64)> {
    let s = AxialSeries::from_reals(&w_coefficients(n, len), w_tail(n));
    let (v, b) = s.evaluate(x)?;
    Ok((v.as_scalar(), b))
}

/// Symbol `sum_k t^k [W_n]_k` from `len` coefficients, with the tail bound (`|t| < 1`).
pub fn w_symbol(n: usize, t: f64, len: usize) -> Result<(f64, f64)> {
    if t.abs() >= 1.0 && n > 0 {
        return Err(Error::DivergentPoint { norm: t.abs() });
    }
    let s = AxialSeries::from_reals(&w_coefficients(n, len), w_tail(n));
    let (v, b) = s.symbol(t)?;
    Ok((v.as_scalar().re(), b))
}

/// Closed form of the symbol: `((1 - t)/(1 + t))^n`.
pub fn w_real(n: usize, t: f64) -> f64 {
    ((1.0 - t) / (1.0 + t)).powi(n as i32)
}

/// Closed form of the basis element symbol: `(1 - t)^n / (1 + t)^(n+1)`.
pub fn basis_element_real(n: usize, t: f64) -> f64 {
    (1.0 - t).powi(n as i32) / (1.0 + t).powi(n as i32 + 1)
}

/// `sum_{n<=N} e_n(t) e_n(s)` in the symbol variables, with the exact geometric tail.
///
/// The full sum is `1 / (2 (t + s))`.
pub fn kernel_k_p_real(t: f64, s: f64, n_terms: usize) -> Result<(f64, f64)> {
    let q = (1.0 - t) * (1.0 - s) / ((1.0 + t) * (1.0 + s));
    if t <= -1.0 || s <= -1.0 || q.abs() >= 1.0 {
        return Err(Error::DivergentPoint { norm: q.abs() });
    }
    let value: f64 = (0..=n_terms).map(|n| basis_element_real(n, t) * basis_element_real(n, s)).sum();
    let first = 1.0 / ((1.0 + t) * (1.0 + s));
    let bound = first * q.abs().powi(n_terms as i32 + 1) / (1.0 - q.abs());
    Ok((value, bound))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KpValue {
    pub value: Quaternion,
    /// Certified bound on the coefficient truncation of the kept dyads.
    pub bound: f64,
    /// Size of the last kept dyad; an uncertified estimate of the dropped ones.
    pub dyad_estimate: f64,
}

/// Pointwise `sum_{n<=N} e_n(x) conj(e_n(y))` with each `e_n` cut at `len` coefficients.
pub fn kernel_k_p(basis: &HalfSpaceBasis, x: Quaternion, y: Quaternion, n_dyads: usize) -> Result<KpValue> {
    if n_dyads > basis.max_power() {
        return Err(Error::Domain(format!("basis holds powers up to {}", basis.max_power())));
    }
    let mut value = Quaternion::ZERO;
    let mut bound = 0.0;
    let mut last = 0.0;
    for n in 0..=n_dyads {
        let e = basis.element(n);
        let (ex, bx) = e.evaluate(x)?;
        let (ey, by) = e.evaluate(y)?;
        let (ex, ey) = (ex.as_scalar(), ey.as_scalar());
        let dyad = ex * ey.conj();
        value += dyad;
        bound += bx * ey.norm() + ex.norm() * by + bx * by;
        last = dyad.norm();
    }
    Ok(KpValue { value, bound, dyad_estimate: last })
}

/// `|6 (x0 + y0) K_P(3x0, 3y0) - 1|` with `K_P` truncated after `n_terms` dyads.
pub fn lyapunov_residual(x0: f64, y0: f64, n_terms: usize) -> Result<f64> {
    if x0 <= 0.0 || y0 <= 0.0 {
        return Err(Error::Domain("the Lyapunov identity is checked at positive real points".into()));
    }
    let (k, _) = kernel_k_p_real(3.0 * x0, 3.0 * y0, n_terms)?;
    Ok((6.0 * (x0 + y0) * k - 1.0).abs())
}

/// `w = (1 - 3x0)/(1 + 3x0)`, the image of the right half-line in the disk variable.
pub fn disk_variable(x0: f64) -> Result<f64> {
    if x0 <= -1.0 / 3.0 {
        return Err(Error::Domain(format!("x0 = {x0} is not greater than -1/3")));
    }
    Ok((1.0 - 3.0 * x0) / (1.0 + 3.0 * x0))
}

/// `S(3x0) = D + w C (I - wA)^-1 B` with `w = (1 - 3x0)/(1 + 3x0)`.
pub fn halfspace_schur_value(v: &Colligation, x0: f64) -> Result<QuatMatrix> {
    v.real_form().value(disk_variable(x0)?)
}

/// Coefficients of `D + sum_{n<n_terms} W_(n+1) C A^n B`, each `W_(n+1)` cut at `len`.
///
/// The sum over `n` is truncated, so the tail is unknown.
pub fn halfspace_schur_series(v: &Colligation, n_terms: usize, len: usize) -> AxialSeries {
    let (r, s) = v.io_dims();
    let basis = HalfSpaceBasis::new(n_terms, len);
    let mut coeffs = vec![QuatMatrix::zeros(r, s); len];
    if len > 0 {
        coeffs[0] = v.d().clone();
    }
    let mut state = v.b().clone();
    for n in 0..n_terms {
        let block = v.c() * &state;
        for (k, &w) in basis.w_coeffs(n + 1).iter().enumerate() {
            if w != 0.0 {
                coeffs[k] += &block.scale(w);
            }
        }
        state = v.a() * &state;
    }
    AxialSeries::new(r, s, coeffs, TailModel::Unknown).expect("shapes follow from the colligation")
}

/// Cayley transform `Phi = (I - S)(I + S)^-1`.
pub fn cayley(s: &QuatMatrix) -> Result<QuatMatrix> {
    if !s.is_square() {
        return Err(Error::ShapeMismatch("Cayley transform of a non-square value".into()));
    }
    let id = QuatMatrix::identity(s.rows());
    // (I - S) and (I + S)^-1 commute
    (&id + s).solve(&(&id - s)).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularCayley,
        e => e,
    })
}

/// Caratheodory value `Phi(3x0)` of the half-space Schur function realized by `v`.
pub fn caratheodory_from_colligation(v: &Colligation, x0: f64) -> Result<QuatMatrix> {
    cayley(&halfspace_schur_value(v, x0)?)
}

/// `K_Phi = (Phi(t) + Phi(s)*) / (2 (t + s))` in the symbol variables.
pub fn kernel_k_phi_real(phi_t: &QuatMatrix, phi_s: &QuatMatrix, t: f64, s: f64) -> QuatMatrix {
    (phi_t + &phi_s.adjoint()).scale(0.5 / (t + s))
}

/// Block Gram `(K_Phi(3x_i, 3x_j))` for a Caratheodory function given by its values.
pub fn caratheodory_gram(phi: impl Fn(f64) -> Result<QuatMatrix>, points: &[f64]) -> Result<Gram> {
    if let Some(&x0) = points.iter().find(|&&x| x <= 0.0) {
        return Err(Error::Domain(format!("sample point {x0} is not positive")));
    }
    let values: Vec<QuatMatrix> = points.iter().map(|&x| phi(x)).collect::<Result<_>>()?;
    let r = values.first().map(|v| v.rows()).unwrap_or(0);
    let n = points.len();
    let mut m = QuatMatrix::zeros(r * n, r * n);
    for i in 0..n {
        for j in 0..n {
            let k = kernel_k_phi_real(&values[i], &values[j], 3.0 * points[i], 3.0 * points[j]);
            m.set_block(i * r, j * r, &k);
        }
    }
    Ok(Gram { matrix: m, bound: 0.0 })
}

/// `Phi(3x0) = a0 3x0 + sum_n b_n / (a_n + 3x0)` for positive parameters.
pub fn caratheodory_rational(a0: f64, poles: &[(f64, f64)], x0: f64) -> f64 {
    let t = 3.0 * x0;
    a0 * t + poles.iter().map(|&(b, a)| b / (a + t)).sum::<f64>()
}

/// Smallest eigenvalue of a Gram matrix, for PSD reporting.
pub fn gram_min_eigenvalue(g: &Gram) -> Result<f64> {
    quatlin::min_eigenvalue(&g.matrix)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_powers() {
        assert_eq!(w_coefficients(0, 4), vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(w_coefficients(1, 5), vec![1.0, -2.0, 2.0, -2.0, 2.0]);
        let w2 = w_coefficients(2, 8);
        for (k, c) in w2.iter().enumerate().skip(1) {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(*c, sign * 4.0 * k as f64);
        }
    }

    #[test]
    fn basis_elements() {
        let e0 = hardy_basis_element(0, 6);
        let c: Vec<f64> = e0.coeffs().iter().map(|q| q.as_scalar().re()).collect();
        assert_eq!(c, vec![1.0, -1.0, 1.0, -1.0, 1.0, -1.0]);
        let e1 = hardy_basis_element(1, 5);
        let c: Vec<f64> = e1.coeffs().iter().map(|q| q.as_scalar().re()).collect();
        assert_eq!(c, vec![1.0, -3.0, 5.0, -7.0, 9.0]);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(w_real(1, 1.0), 0.0);
        assert!((w_real(1, 0.3) - 0.7 / 1.3).abs() < 1e-16);
        let (v, b) = w_symbol(1, 0.3, 80).unwrap();
        assert!((v - 0.7 / 1.3).abs() <= b + 1e-15);
        assert_eq!(eval_w(3, Quaternion::ZERO, 10).unwrap().0, Quaternion::ONE);
        let (k, _) = kernel_k_p_real(1.0, 1.0, 5).unwrap();
        assert_eq!(k, 0.25);
        assert_eq!(lyapunov_residual(1.0 / 3.0, 1.0 / 3.0, 5).unwrap(), 0.0);
    }

    #[test]
    fn lyapunov_converges() {
        for (x0, y0) in [(0.1, 0.2), (0.025, 0.025), (0.5, 2.0)] {
            assert!(lyapunov_residual(x0, y0, 80).unwrap() < 1e-8);
        }
    }

    #[test]
    fn schur_values() {
        let shift = Colligation::shift();
        assert!(halfspace_schur_value(&shift, 1.0 / 3.0).unwrap().max_abs() < 1e-16);
        for x0 in [0.05, 0.2, 1.0] {
            let s = halfspace_schur_value(&shift, x0).unwrap().as_scalar().re();
            assert!((s - w_real(1, 3.0 * x0)).abs() < 1e-15);
        }
        assert!(halfspace_schur_value(&shift, -0.5).is_err());
    }

    #[test]
    fn cayley_examples() {
        let phi = cayley(&QuatMatrix::zeros(2, 2)).unwrap();
        assert_eq!(phi, QuatMatrix::identity(2));
        let x0 = 0.2;
        let p = caratheodory_from_colligation(&Colligation::shift(), x0).unwrap().as_scalar().re();
        assert!((p - 3.0 * x0).abs() < 1e-15);
        assert_eq!(cayley(&QuatMatrix::scalar(Quaternion::real(-1.0))), Err(Error::SingularCayley));
    }
}
