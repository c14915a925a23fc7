//! Truncated series `f(x) = sum_n P_n(x) F_n` with quaternion matrix coefficients.
//!
//! Every series carries a tail model bounding the coefficients it does not store, so
//! evaluation can report a rigorous bound on the truncation error. On the real axis the
//! series is represented by its symbol `t -> sum t^n F_n` (`t = 3 x0`).

use serde::{Deserialize, Serialize};

use crate::appell;
use crate::error::{Error, Result};
use crate::quatlin::{QuatMatrix, Quaternion};

/// Imaginary parts above this make a coefficient non-real.
pub const INTRINSIC_TOL: f64 = 1e-12;

/// Bound on the coefficients beyond the stored ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TailRepr", into = "TailRepr")]
pub enum TailModel {
    /// Every coefficient past the stored ones is zero.
    Finite,
    /// `||F_n|| <= scale * (n+1)^degree * ratio^n` for every unstored `n`.
    Decay { scale: f64, degree: u32, ratio: f64 },
    /// Nothing is known about the unstored coefficients.
    Unknown,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TailRepr {
    Name(String),
    Bounded { bounded: f64 },
    Decay { decay: DecayRepr },
}

#[derive(Serialize, Deserialize)]
struct DecayRepr {
    scale: f64,
    degree: u32,
    ratio: f64,
}

impl TryFrom<TailRepr> for TailModel {
    type Error = String;
    fn try_from(r: TailRepr) -> std::result::Result<Self, String> {
        match r {
            TailRepr::Name(s) if s == "finite" => Ok(TailModel::Finite),
            TailRepr::Name(s) if s == "unknown" => Ok(TailModel::Unknown),
            TailRepr::Name(s) => Err(format!("unknown tail model {s:?}")),
            TailRepr::Bounded { bounded } if bounded >= 0.0 => Ok(TailModel::bounded(bounded)),
            TailRepr::Bounded { .. } => Err("bound must be nonnegative".into()),
            TailRepr::Decay { decay } => Ok(TailModel::Decay { scale: decay.scale, degree: decay.degree, ratio: decay.ratio }),
        }
    }
}

impl From<TailModel> for TailRepr {
    fn from(t: TailModel) -> Self {
        match t {
            TailModel::Finite => TailRepr::Name("finite".into()),
            TailModel::Unknown => TailRepr::Name("unknown".into()),
            TailModel::Decay { scale, degree: 0, ratio: 1.0 } => TailRepr::Bounded { bounded: scale },
            TailModel::Decay { scale, degree, ratio } => TailRepr::Decay { decay: DecayRepr { scale, degree, ratio } },
        }
    }
}

impl TailModel {
    /// `||F_n|| <= b` for every unstored `n`.
    pub fn bounded(b: f64) -> Self {
        TailModel::Decay { scale: b, degree: 0, ratio: 1.0 }
    }

    /// `||F_n|| <= scale * ratio^n`.
    pub fn geometric(scale: f64, ratio: f64) -> Self {
        TailModel::Decay { scale, degree: 0, ratio }
    }

    /// Bound on `||F_n||` according to the model alone.
    pub fn bound_at(&self, n: usize) -> f64 {
        match *self {
            TailModel::Finite => 0.0,
            TailModel::Decay { scale, degree, ratio } => decay_term(scale, degree, ratio, n),
            TailModel::Unknown => f64::INFINITY,
        }
    }

    /// Supremum of the model over all `n` (infinite when it grows).
    pub fn sup(&self) -> f64 {
        match *self {
            TailModel::Finite => 0.0,
            TailModel::Unknown => f64::INFINITY,
            TailModel::Decay { scale, degree, ratio } => {
                if scale == 0.0 {
                    0.0
                } else if ratio > 1.0 || (ratio == 1.0 && degree > 0) {
                    f64::INFINITY
                } else if degree == 0 {
                    scale
                } else {
                    // (n+1)^d r^n peaks near n + 1 = -d / ln r
                    let peak = (-(degree as f64) / ratio.ln()).max(1.0);
                    let n = (peak - 1.0).floor().max(0.0) as usize;
                    (n..n + 3).map(|k| decay_term(scale, degree, ratio, k)).fold(0.0, f64::max)
                }
            }
        }
    }
}

fn decay_term(scale: f64, degree: u32, ratio: f64, n: usize) -> f64 {
    if scale == 0.0 {
        return 0.0;
    }
    scale * ((n + 1) as f64).powi(degree as i32) * ratio.powi(n as i32)
}

/// Sum of `term(n)` for `n >= start`, for a positive term sequence whose successive
/// ratio is nonincreasing (polynomial times geometric). Infinite when the ratio never drops below one.
pub fn monotone_ratio_tail(term: impl Fn(usize) -> f64, start: usize) -> f64 {
    let mut sum = 0.0;
    let mut n = start;
    loop {
        let t = term(n);
        if t == 0.0 {
            return sum;
        }
        if !t.is_finite() {
            return f64::INFINITY;
        }
        let r = term(n + 1) / t;
        if r < 0.5 || (r < 1.0 && n - start >= 4000) {
            return sum + t / (1.0 - r);
        }
        sum += t;
        n += 1;
        if n - start > 200_000 {
            return f64::INFINITY;
        }
    }
}

/// Membership in the ellipsoid `9 x0^2 + x1^2 + x2^2 + x3^2 < 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Ellipsoid;

impl Ellipsoid {
    pub fn contains(x: Quaternion) -> bool {
        9.0 * x.x0 * x.x0 + x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3 < 1.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct AxialSeries {
    rows: usize,
    cols: usize,
    coeffs: Vec<QuatMatrix>,
    tail: TailModel,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    rows: usize,
    cols: usize,
    tail: TailModel,
    coeffs: Vec<QuatMatrix>,
}

impl TryFrom<SeriesRepr> for AxialSeries {
    type Error = String;
    fn try_from(r: SeriesRepr) -> std::result::Result<Self, String> {
        AxialSeries::new(r.rows, r.cols, r.coeffs, r.tail).map_err(|e| e.to_string())
    }
}

impl From<AxialSeries> for SeriesRepr {
    fn from(s: AxialSeries) -> Self {
        SeriesRepr { rows: s.rows, cols: s.cols, tail: s.tail, coeffs: s.coeffs }
    }
}

impl AxialSeries {
    pub fn new(rows: usize, cols: usize, coeffs: Vec<QuatMatrix>, tail: TailModel) -> Result<Self> {
        for (n, c) in coeffs.iter().enumerate() {
            if c.shape() != (rows, cols) {
                return Err(Error::ShapeMismatch(format!(
                    "coefficient {n} is {}x{}, series is {rows}x{cols}",
                    c.rows(),
                    c.cols()
                )));
            }
        }
        Ok(AxialSeries { rows, cols, coeffs, tail })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        AxialSeries { rows, cols, coeffs: Vec::new(), tail: TailModel::Finite }
    }

    pub fn constant(m: QuatMatrix) -> Self {
        AxialSeries { rows: m.rows(), cols: m.cols(), coeffs: vec![m], tail: TailModel::Finite }
    }

    /// The coefficient sequence of `P_n I_dim`.
    pub fn basis(n: usize, dim: usize) -> Self {
        let mut coeffs = vec![QuatMatrix::zeros(dim, dim); n + 1];
        coeffs[n] = QuatMatrix::identity(dim);
        AxialSeries { rows: dim, cols: dim, coeffs, tail: TailModel::Finite }
    }

    /// Scalar series with the given real coefficients.
    pub fn from_reals(coeffs: &[f64], tail: TailModel) -> Self {
        let coeffs = coeffs.iter().map(|&a| QuatMatrix::scalar(Quaternion::real(a))).collect();
        AxialSeries { rows: 1, cols: 1, coeffs, tail }
    }

    /// Scalar series with the given quaternion coefficients.
    pub fn from_quaternions(coeffs: &[Quaternion], tail: TailModel) -> Self {
        let coeffs = coeffs.iter().map(|&a| QuatMatrix::scalar(a)).collect();
        AxialSeries { rows: 1, cols: 1, coeffs, tail }
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

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[QuatMatrix] {
        &self.coeffs
    }

    pub fn tail(&self) -> TailModel {
        self.tail
    }

    pub fn with_tail(mut self, tail: TailModel) -> Self {
        self.tail = tail;
        self
    }

    /// Stored coefficient `n`, or zero past the stored range.
    pub fn coeff(&self, n: usize) -> QuatMatrix {
        self.coeffs.get(n).cloned().unwrap_or_else(|| QuatMatrix::zeros(self.rows, self.cols))
    }

    /// Largest operator norm over the stored coefficients.
    pub fn coeff_bound(&self) -> f64 {
        self.coeffs.iter().map(crate::quatlin::operator_norm).fold(0.0, f64::max)
    }

    /// Bound on `||F_n||`: the stored norm, or the tail model.
    pub fn bound_at(&self, n: usize) -> f64 {
        match self.coeffs.get(n) {
            Some(c) => crate::quatlin::operator_norm(c),
            None => self.tail.bound_at(n),
        }
    }

    /// `sum_n ||F_n||_F^2` over the stored coefficients.
    pub fn hardy_norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.frobenius_norm().powi(2)).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        let tail = match self.tail {
            TailModel::Decay { scale, degree, ratio } => TailModel::Decay { scale: scale * s.abs(), degree, ratio },
            t => t,
        };
        AxialSeries { rows: self.rows, cols: self.cols, coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(), tail }
    }

    /// Coefficientwise sum.
    pub fn add(&self, other: &AxialSeries) -> Result<AxialSeries> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch("sum of series with different shapes".into()));
        }
        let len = match (self.tail, other.tail) {
            (TailModel::Finite, TailModel::Finite) => self.len().max(other.len()),
            (TailModel::Finite, _) => other.len().max(self.len()),
            (_, TailModel::Finite) => self.len().max(other.len()),
            _ => self.len().min(other.len()),
        };
        let coeffs = (0..len).map(|n| &self.coeff(n) + &other.coeff(n)).collect();
        let a = self.envelope_from(len);
        let b = other.envelope_from(len);
        let tail = match (a, b) {
            (TailModel::Unknown, _) | (_, TailModel::Unknown) => TailModel::Unknown,
            (TailModel::Finite, t) | (t, TailModel::Finite) => t,
            (
                TailModel::Decay { scale: s1, degree: d1, ratio: r1 },
                TailModel::Decay { scale: s2, degree: d2, ratio: r2 },
            ) => TailModel::Decay { scale: s1 + s2, degree: d1.max(d2), ratio: r1.max(r2) },
        };
        AxialSeries::new(self.rows, self.cols, coeffs, tail)
    }

    /// A model valid for every index `n >= from`, including stored coefficients past `from`.
    fn envelope_from(&self, from: usize) -> TailModel {
        let stored = &self.coeffs[from.min(self.len())..];
        match self.tail {
            TailModel::Finite => {
                let b = stored.iter().map(crate::quatlin::operator_norm).fold(0.0, f64::max);
                if b == 0.0 {
                    TailModel::Finite
                } else {
                    // stored past `from` only; after that zero
                    TailModel::bounded(b)
                }
            }
            TailModel::Unknown => TailModel::Unknown,
            TailModel::Decay { scale, degree, ratio } => {
                let mut s = scale;
                for (k, c) in stored.iter().enumerate() {
                    let n = from + k;
                    let unit = decay_term(1.0, degree, ratio, n);
                    if unit > 0.0 {
                        s = s.max(crate::quatlin::operator_norm(c) / unit);
                    }
                }
                TailModel::Decay { scale: s, degree, ratio }
            }
        }
    }

    /// `sum_{n <= N} P_n(x) F_n` with a bound on the omitted terms.
    ///
    /// The bound uses `|P_n(x)| <= |x|^n / c_n <= (n+2) |x|^n`. Series with an infinite tail
    /// need `|x| < 1`.
    pub fn evaluate(&self, x: Quaternion) -> Result<(QuatMatrix, f64)> {
        let r = x.norm();
        if self.tail != TailModel::Finite && r >= 1.0 {
            return Err(Error::DivergentPoint { norm: r });
        }
        let mut value = QuatMatrix::zeros(self.rows, self.cols);
        if !self.coeffs.is_empty() {
            let p = appell::p_values(x, self.len() - 1);
            for (pn, f) in p.iter().zip(&self.coeffs) {
                value += &f.left_scale(*pn);
            }
        }
        Ok((value, self.evaluation_tail(r)))
    }

    /// Bound on `sum_{n > N} ||P_n(x) F_n||` at `|x| = r`.
    pub fn evaluation_tail(&self, r: f64) -> f64 {
        match self.tail {
            TailModel::Finite => 0.0,
            TailModel::Unknown => f64::INFINITY,
            TailModel::Decay { scale, degree, ratio } => {
                if scale == 0.0 || r == 0.0 {
                    return 0.0;
                }
                if degree == 0 && ratio == 1.0 {
                    // B sum_{n>=K} (n+2) r^n = B r^K [(K+2)/(1-r) + r/(1-r)^2]
                    let k = self.len() as f64;
                    return scale * r.powf(k) * ((k + 2.0) / (1.0 - r) + r / (1.0 - r).powi(2));
                }
                monotone_ratio_tail(|n| decay_term(scale, degree, ratio, n) * (n + 2) as f64 * r.powi(n as i32), self.len())
            }
        }
    }

    /// Real-axis symbol `sum t^n F_n` with a bound on the omitted terms.
    pub fn symbol(&self, t: f64) -> Result<(QuatMatrix, f64)> {
        let bound = self.symbol_tail(t.abs());
        if bound.is_infinite() && self.tail != TailModel::Unknown {
            return Err(Error::DivergentPoint { norm: t.abs() });
        }
        let mut value = QuatMatrix::zeros(self.rows, self.cols);
        let mut tp = 1.0;
        for f in &self.coeffs {
            value += &f.scale(tp);
            tp *= t;
        }
        Ok((value, bound))
    }

    fn symbol_tail(&self, r: f64) -> f64 {
        match self.tail {
            TailModel::Finite => 0.0,
            TailModel::Unknown => f64::INFINITY,
            TailModel::Decay { scale, degree, ratio } => {
                if scale == 0.0 || r == 0.0 {
                    return 0.0;
                }
                monotone_ratio_tail(|n| decay_term(scale, degree, ratio, n) * r.powi(n as i32), self.len())
            }
        }
    }

    /// Keep the first `n` coefficients; the dropped ones fold into the tail model.
    pub fn truncate(&self, n: usize) -> AxialSeries {
        if n >= self.len() {
            return self.clone();
        }
        let tail = self.envelope_from(n);
        AxialSeries { rows: self.rows, cols: self.cols, coeffs: self.coeffs[..n].to_vec(), tail }
    }

    /// Coefficients of `P_n (.) f`: `n` leading zeros.
    pub fn shift_product(&self, n: usize) -> AxialSeries {
        let mut coeffs = vec![QuatMatrix::zeros(self.rows, self.cols); n];
        coeffs.extend(self.coeffs.iter().cloned());
        let tail = match self.tail {
            TailModel::Decay { scale, degree, ratio } if n > 0 => {
                TailModel::Decay { scale: scale * ratio.powi(-(n as i32)), degree, ratio }
            }
            t => t,
        };
        AxialSeries { rows: self.rows, cols: self.cols, coeffs, tail }
    }

    /// Drop the leading coefficient.
    pub fn backward_shift(&self) -> AxialSeries {
        let coeffs = self.coeffs.iter().skip(1).cloned().collect();
        let tail = match self.tail {
            TailModel::Decay { scale, degree, ratio } => {
                TailModel::Decay { scale: scale * 2f64.powi(degree as i32) * ratio, degree, ratio }
            }
            t => t,
        };
        AxialSeries { rows: self.rows, cols: self.cols, coeffs, tail }
    }
}

fn check_real(f: &AxialSeries) -> Result<()> {
    for (index, c) in f.coeffs.iter().enumerate() {
        let imag = c.max_imag();
        if imag > INTRINSIC_TOL {
            return Err(Error::NotIntrinsic { index, imag });
        }
    }
    Ok(())
}

/// `h_n = sum_k a_k g_(n-k)` for `f` with real coefficients.
///
/// A 1x1 `f` acts as a scalar on any `g`; otherwise `f.cols` must match `g.rows`.
pub fn intrinsic_product(f: &AxialSeries, g: &AxialSeries) -> Result<AxialSeries> {
    check_real(f)?;
    let scalar = f.shape() == (1, 1);
    if !scalar && f.cols != g.rows {
        return Err(Error::ShapeMismatch(format!(
            "intrinsic product {}x{} by {}x{}",
            f.rows, f.cols, g.rows, g.cols
        )));
    }
    let (rows, cols) = if scalar { g.shape() } else { (f.rows, g.cols) };
    let mul = |a: &QuatMatrix, b: &QuatMatrix| -> QuatMatrix {
        if scalar {
            b.scale(a.as_scalar().x0)
        } else {
            a * b
        }
    };
    let f_finite = f.tail == TailModel::Finite;
    let g_finite = g.tail == TailModel::Finite;
    let len = match (f_finite, g_finite) {
        (true, true) if f.is_empty() || g.is_empty() => 0,
        (true, true) => f.len() + g.len() - 1,
        (true, false) => g.len(),
        (false, true) => f.len(),
        (false, false) => f.len().min(g.len()),
    };
    let mut coeffs = Vec::with_capacity(len);
    for n in 0..len {
        let mut h = QuatMatrix::zeros(rows, cols);
        let k_lo = n.saturating_sub(g.len().saturating_sub(1));
        for k in k_lo..=n.min(f.len().saturating_sub(1)) {
            if k < f.len() && n - k < g.len() {
                h += &mul(&f.coeffs[k], &g.coeffs[n - k]);
            }
        }
        coeffs.push(h);
    }
    let tail = product_tail(f, g);
    AxialSeries::new(rows, cols, coeffs, tail)
}

fn product_tail(f: &AxialSeries, g: &AxialSeries) -> TailModel {
    let norm = crate::quatlin::operator_norm;
    match (f.tail, g.tail) {
        (TailModel::Unknown, _) | (_, TailModel::Unknown) => TailModel::Unknown,
        (TailModel::Finite, TailModel::Finite) => TailModel::Finite,
        (TailModel::Finite, _) | (_, TailModel::Finite) => {
            let (fin, inf) = if f.tail == TailModel::Finite { (f, g) } else { (g, f) };
            match inf.envelope_from(0) {
                TailModel::Decay { scale, degree, ratio } => {
                    let weight: f64 = fin.coeffs.iter().enumerate().map(|(k, a)| norm(a) * ratio.powi(-(k as i32))).sum();
                    TailModel::Decay { scale: scale * weight, degree, ratio }
                }
                t => t,
            }
        }
        _ => match (f.envelope_from(0), g.envelope_from(0)) {
            (
                TailModel::Decay { scale: s1, degree: d1, ratio: r1 },
                TailModel::Decay { scale: s2, degree: d2, ratio: r2 },
            ) => TailModel::Decay { scale: s1 * s2, degree: d1 + d2 + 1, ratio: r1.max(r2) },
            _ => TailModel::Unknown,
        },
    }
}

/// Power-series inverse of an intrinsic series through degree `n`.
pub fn intrinsic_inverse(f: &AxialSeries, n: usize) -> Result<AxialSeries> {
    check_real(f)?;
    if !f.is_square() {
        return Err(Error::ShapeMismatch("inverse of a non-square series".into()));
    }
    let a0 = f.coeff(0);
    if crate::quatlin::singular_values(&a0).last().copied().unwrap_or(0.0) < 1e-10 {
        return Err(Error::SingularConstantTerm);
    }
    let a0_inv = a0.inverse().map_err(|_| Error::SingularConstantTerm)?;
    let mut g: Vec<QuatMatrix> = vec![a0_inv.clone()];
    for k in 1..=n {
        let mut s = QuatMatrix::zeros(f.rows, f.cols);
        for j in 1..=k {
            if j < f.len() {
                s += &(&f.coeffs[j] * &g[k - j]);
            }
        }
        g.push(-&(&a0_inv * &s));
    }
    AxialSeries::new(f.rows, f.cols, g, TailModel::Unknown)
}

impl AxialSeries {
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

/// `h_k = sum_{j <= k} S_(k-j) u_j`, the lower-triangular block Toeplitz action of `S`.
pub fn multiplier_action(s: &AxialSeries, u: &[QuatMatrix]) -> Result<Vec<QuatMatrix>> {
    let k_cols = match u.first() {
        Some(v) => v.cols(),
        None => return Ok(Vec::new()),
    };
    for (j, v) in u.iter().enumerate() {
        if v.rows() != s.cols || v.cols() != k_cols {
            return Err(Error::ShapeMismatch(format!(
                "vector {j} is {}x{}, multiplier expects {} rows",
                v.rows(),
                v.cols(),
                s.cols
            )));
        }
    }
    let len = if s.tail == TailModel::Finite && !s.is_empty() { s.len() + u.len() - 1 } else { u.len() };
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let mut h = QuatMatrix::zeros(s.rows, k_cols);
        for (j, uj) in u.iter().enumerate().take(k + 1) {
            if k - j < s.len() {
                h += &(&s.coeffs[k - j] * uj);
            }
        }
        out.push(h);
    }
    Ok(out)
}

fn intrinsic_sample_points() -> [Quaternion; 4] {
    [
        Quaternion::new(0.1, 0.2, -0.3, 0.15),
        Quaternion::new(-0.2, 0.0, 0.4, 0.1),
        Quaternion::new(0.05, -0.35, 0.1, -0.2),
        Quaternion::new(0.0, 0.0, 0.45, 0.0),
    ]
}

/// Real coefficients, cross-checked by `f(conj x) = conj f(x)` at sample points.
pub fn is_intrinsic(f: &AxialSeries, tol: f64) -> bool {
    if f.coeffs.iter().any(|c| c.max_imag() > tol) {
        return false;
    }
    for x in intrinsic_sample_points() {
        let (Ok((a, ba)), Ok((b, bb))) = (f.evaluate(x.conj()), f.evaluate(x)) else {
            continue;
        };
        let scale = a.max_abs().max(1.0);
        if a.max_abs_diff(&b.conj_entries()) > tol.max(1e-12) * scale * 100.0 + ba + bb {
            return false;
        }
    }
    true
}

/// Residual of the representation formula
/// `f(u + I v) = 1/2 [f(u+Jv) + f(u-Jv)] + (I J / 2)[f(u-Jv) - f(u+Jv)]`, plus the three tail bounds.
pub fn check_representation_formula(f: &AxialSeries, u: f64, v: f64, i_x: Quaternion, j: Quaternion) -> Result<f64> {
    let at = |imag: Quaternion, s: f64| Quaternion::real(u) + imag * s;
    let (lhs, b0) = f.evaluate(at(i_x, v))?;
    let (plus, b1) = f.evaluate(at(j, v))?;
    let (minus, b2) = f.evaluate(at(j, -v))?;
    let even = (&plus + &minus).scale(0.5);
    let odd = (&minus - &plus).left_scale(i_x * j * 0.5);
    let rhs = &even + &odd;
    Ok(lhs.max_abs_diff(&rhs) + b0 + b1 + b2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: f64) -> QuatMatrix {
        QuatMatrix::scalar(Quaternion::real(v))
    }

    fn scalars(f: &AxialSeries) -> Vec<Quaternion> {
        f.coeffs().iter().map(|c| c.as_scalar()).collect()
    }

    #[test]
    fn evaluate_examples() {
        let z = AxialSeries::zero(2, 3);
        let (v, b) = z.evaluate(Quaternion::new(0.1, 0.2, 0.0, 0.0)).unwrap();
        assert_eq!(v, QuatMatrix::zeros(2, 3));
        assert_eq!(b, 0.0);
        let p1 = AxialSeries::basis(1, 1);
        let (v, _) = p1.evaluate(Quaternion::real(0.1)).unwrap();
        assert!((v.as_scalar() - Quaternion::real(0.3)).norm() < 1e-15);
    }

    #[test]
    fn hardy_kernel_symbol() {
        let (x0, y0): (f64, f64) = (0.2, -0.15);
        let n = 80;
        let coeffs: Vec<f64> = (0..n).map(|k| (3.0 * y0).powi(k)).collect();
        let f = AxialSeries::from_reals(&coeffs, TailModel::bounded(1.0));
        let (v, bound) = f.symbol(3.0 * x0).unwrap();
        let want = 1.0 / (1.0 - 9.0 * x0 * y0);
        assert!((v.as_scalar().x0 - want).abs() <= bound + 1e-14);
        assert!(bound < 1e-16);
    }

    #[test]
    fn divergent_point() {
        let f = AxialSeries::from_reals(&[1.0, 1.0], TailModel::bounded(1.0));
        assert!(matches!(f.evaluate(Quaternion::real(1.0)), Err(Error::DivergentPoint { .. })));
        assert!(AxialSeries::from_reals(&[1.0, 1.0], TailModel::Finite).evaluate(Quaternion::real(2.0)).is_ok());
    }

    #[test]
    fn closed_form_tail_matches_summation() {
        let f = AxialSeries::from_reals(&[0.3; 5], TailModel::bounded(2.0));
        let r: f64 = 0.6;
        let direct: f64 = (5..5000).map(|n| 2.0 * (n + 2) as f64 * r.powi(n)).sum();
        assert!((f.evaluation_tail(r) - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn monotone_tail_is_an_upper_bound() {
        let term = |n: usize| ((n + 1) as f64).powi(3) * 0.9f64.powi(n as i32);
        let direct: f64 = (10..20000).map(term).sum();
        let bound = monotone_ratio_tail(term, 10);
        assert!(bound >= direct && bound < direct * 1.01, "{bound} {direct}");
    }

    #[test]
    fn shifts() {
        let f = AxialSeries::from_reals(&[1.0, 2.0, 3.0], TailModel::Finite);
        assert_eq!(f.shift_product(0), f);
        assert_eq!(scalars(&f.shift_product(1)), [0.0, 1.0, 2.0, 3.0].map(Quaternion::real));
        assert_eq!(AxialSeries::basis(3, 1).shift_product(2), AxialSeries::basis(5, 1));
        assert_eq!(f.shift_product(1).backward_shift(), f);
    }

    #[test]
    fn intrinsic_product_examples() {
        let g = AxialSeries::from_quaternions(&[Quaternion::E1, Quaternion::new(1.0, 0.0, 2.0, 0.0)], TailModel::Finite);
        let one = AxialSeries::constant(s(1.0));
        assert_eq!(intrinsic_product(&one, &g).unwrap(), g);
        let p1 = AxialSeries::basis(1, 1);
        assert_eq!(intrinsic_product(&p1, &p1).unwrap(), AxialSeries::basis(2, 1));
        let geo = AxialSeries::from_reals(&[1.0; 20], TailModel::bounded(1.0));
        let diff = AxialSeries::from_reals(&[1.0, -1.0], TailModel::Finite);
        let h = intrinsic_product(&geo, &diff).unwrap();
        assert_eq!(h.len(), 20);
        assert_eq!(h.coeff(0), s(1.0));
        for k in 1..20 {
            assert_eq!(h.coeff(k), s(0.0));
        }
    }

    #[test]
    fn non_intrinsic_rejected() {
        let f = AxialSeries::from_quaternions(&[Quaternion::E1], TailModel::Finite);
        let g = AxialSeries::basis(1, 1);
        assert!(matches!(intrinsic_product(&f, &g), Err(Error::NotIntrinsic { index: 0, .. })));
    }

    #[test]
    fn inverse_examples() {
        let one = AxialSeries::constant(s(1.0));
        assert_eq!(scalars(&intrinsic_inverse(&one, 0).unwrap()), vec![Quaternion::ONE]);
        let f = AxialSeries::from_reals(&[1.0, 1.0], TailModel::Finite);
        let g = intrinsic_inverse(&f, 10).unwrap();
        for k in 0..=10 {
            let want = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(g.coeff(k).as_scalar(), Quaternion::real(want));
        }
        let f = AxialSeries::from_reals(&[2.0, -0.5, 0.25, 1.0], TailModel::Finite);
        let g = intrinsic_inverse(&f, 12).unwrap();
        let h = intrinsic_product(&f, &g).unwrap();
        for k in 0..=12 {
            let want = if k == 0 { 1.0 } else { 0.0 };
            assert!((h.coeff(k).as_scalar().x0 - want).abs() < 1e-13);
        }
        let z = AxialSeries::from_reals(&[0.0, 1.0], TailModel::Finite);
        assert_eq!(intrinsic_inverse(&z, 3), Err(Error::SingularConstantTerm));
    }

    #[test]
    fn multiplier_action_examples() {
        let u: Vec<QuatMatrix> = [Quaternion::E2, Quaternion::real(2.0)].iter().map(|&q| QuatMatrix::scalar(q)).collect();
        let one = AxialSeries::constant(s(1.0));
        assert_eq!(multiplier_action(&one, &u).unwrap(), u);
        let h = multiplier_action(&AxialSeries::basis(1, 1), &u).unwrap();
        assert_eq!(h, vec![s(0.0), u[0].clone(), u[1].clone()]);
        let e1 = AxialSeries::constant(QuatMatrix::scalar(Quaternion::E1));
        let h = multiplier_action(&e1, &u[..1]).unwrap();
        assert_eq!(h[0].as_scalar(), Quaternion::E3);
        let bad = vec![QuatMatrix::zeros(2, 1)];
        assert!(matches!(multiplier_action(&e1, &bad), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn intrinsic_predicate() {
        assert!(is_intrinsic(&AxialSeries::basis(3, 1), 1e-12));
        assert!(is_intrinsic(&AxialSeries::zero(1, 1), 1e-12));
        let f = AxialSeries::from_quaternions(&[Quaternion::E1], TailModel::Finite);
        assert!(!is_intrinsic(&f, 1e-12));
        // pointwise witness at x = e2
        let (a, _) = f.evaluate(Quaternion::E2.conj()).unwrap();
        let (b, _) = f.evaluate(Quaternion::E2).unwrap();
        assert!(a.max_abs_diff(&b.conj_entries()) > 1.0);
    }

    #[test]
    fn representation_formula() {
        let f = AxialSeries::basis(2, 1);
        let i = Quaternion::new(0.0, 0.6, 0.8, 0.0);
        let j = Quaternion::new(0.0, 0.0, 0.0, 1.0);
        assert_eq!(check_representation_formula(&f, 0.2, 0.0, i, j).unwrap(), 0.0);
        assert!(check_representation_formula(&f, 0.1, 0.3, i, j).unwrap() < 1e-14);
    }

    #[test]
    fn json_round_trip() {
        let f = AxialSeries::from_reals(&[1.0, 0.5], TailModel::bounded(1.0));
        let text = serde_json::to_string(&f).unwrap();
        assert!(text.contains(r#""tail":{"bounded":1.0}"#), "{text}");
        let back: AxialSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        let fin = AxialSeries::zero(1, 1);
        let text = serde_json::to_string(&fin).unwrap();
        assert_eq!(text, r#"{"rows":1,"cols":1,"tail":"finite","coeffs":[]}"#);
        let g = f.clone().with_tail(TailModel::geometric(2.0, 0.5));
        let back: AxialSeries = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<AxialSeries>(r#"{"rows":1,"cols":1,"tail":"finite","coeffs":[{"rows":2,"cols":1,"data":[[[1,0,0,0]],[[1,0,0,0]]]}]}"#).is_err());
    }

    #[test]
    fn sup_of_models() {
        assert_eq!(TailModel::bounded(2.0).sup(), 2.0);
        assert_eq!(TailModel::Decay { scale: 1.0, degree: 1, ratio: 1.0 }.sup(), f64::INFINITY);
        let m = TailModel::Decay { scale: 1.0, degree: 2, ratio: 0.5 };
        let brute = (0..100).map(|n| m.bound_at(n)).fold(0.0, f64::max);
        assert!((m.sup() - brute).abs() < 1e-12);
    }
}
