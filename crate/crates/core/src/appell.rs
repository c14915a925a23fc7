//! Appell polynomials `Q_m(x) = sum_j T^m_j x^(m-j) conj(x)^j` and their normalizations `P_m = Q_m / c_m`.
//!
//! The coefficients are exact rationals. On the real axis `P_m(x0) = x0^m / c_m`;
//! the series symbol `t -> sum t^n F_n` with `t = 3 x0` is what the axial-series
//! code calls the real-axis form (it agrees with `P_m(x0)` only for `m <= 1`).

use std::sync::{OnceLock, RwLock};

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::axseries::{AxialSeries, TailModel};
use crate::error::Result;
use crate::fueter::{self, MultiIndex};
use crate::quatlin::{QuatMatrix, Quaternion};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq)]
pub struct AppellCoefficients {
    pub m: usize,
    pub t: Vec<Rational>,
    pub c: Rational,
}

impl AppellCoefficients {
    pub fn new(m: usize) -> Self {
        let t: Vec<Rational> = (0..=m).map(|j| t_coeff(m, j)).collect();
        let c = alternating_sum(&t);
        AppellCoefficients { m, t, c }
    }
}

/// `T^m_j = 2 (m - j + 1) / ((m + 1)(m + 2))`.
pub fn t_coeff(m: usize, j: usize) -> Rational {
    assert!(j <= m, "T^m_j needs j <= m");
    let m = m as i64;
    let j = j as i64;
    Ratio::new(2 * (m - j + 1), (m + 1) * (m + 2))
}

fn alternating_sum(t: &[Rational]) -> Rational {
    t.iter().enumerate().fold(Rational::zero(), |acc, (j, &v)| if j % 2 == 0 { acc + v } else { acc - v })
}

/// `c_m = sum_j (-1)^j T^m_j`, summed exactly.
pub fn c_coeff(m: usize) -> Rational {
    alternating_sum(&(0..=m).map(|j| t_coeff(m, j)).collect::<Vec<_>>())
}

/// `sum_j T^m_j`, exactly (equals one).
pub fn t_sum(m: usize) -> Rational {
    (0..=m).fold(Rational::zero(), |acc, j| acc + t_coeff(m, j))
}

fn c_cache() -> &'static RwLock<Vec<f64>> {
    static CACHE: OnceLock<RwLock<Vec<f64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(Vec::new()))
}

/// `c_m` as a float, memoized.
pub fn c_float(m: usize) -> f64 {
    if let Some(&v) = c_cache().read().expect("cache poisoned").get(m) {
        return v;
    }
    let mut cache = c_cache().write().expect("cache poisoned");
    while cache.len() <= m {
        let k = cache.len();
        cache.push(c_coeff(k).to_f64().expect("c_m is finite"));
    }
    cache[m]
}

fn t_float(m: usize, j: usize) -> f64 {
    (2 * (m - j + 1)) as f64 / ((m + 1) * (m + 2)) as f64
}

/// `Q_0(x), ..., Q_n(x)`.
pub fn q_values(x: Quaternion, n: usize) -> Vec<Quaternion> {
    let mut px = Vec::with_capacity(n + 1);
    let mut pxb = Vec::with_capacity(n + 1);
    let (mut a, mut b) = (Quaternion::ONE, Quaternion::ONE);
    let xb = x.conj();
    for _ in 0..=n {
        px.push(a);
        pxb.push(b);
        a = a * x;
        b = b * xb;
    }
    (0..=n)
        .map(|m| (0..=m).fold(Quaternion::ZERO, |acc, j| acc + px[m - j] * pxb[j] * t_float(m, j)))
        .collect()
}

/// `P_0(x), ..., P_n(x)`.
pub fn p_values(x: Quaternion, n: usize) -> Vec<Quaternion> {
    q_values(x, n).into_iter().enumerate().map(|(m, q)| q / c_float(m)).collect()
}

pub fn eval_q(m: usize, x: Quaternion) -> Quaternion {
    q_values(x, m)[m]
}

pub fn eval_p(m: usize, x: Quaternion) -> Quaternion {
    eval_q(m, x) / c_float(m)
}

/// Residual of `P_n * P_m = P_(n+m)`.
///
/// With `via_restriction` the pointwise identity is checked at the projection of `x`
/// onto `x0 = 0`, where every `P_k` is a plain power of the vector part. Otherwise the
/// coefficient identity `delta_n (*) delta_m = delta_(n+m)` is checked through the
/// intrinsic convolution of impulse sequences.
pub fn check_product_identity(n: usize, m: usize, x: Quaternion, via_restriction: bool) -> f64 {
    if via_restriction {
        let y = x.vector_part();
        let p = p_values(y, n + m);
        (p[n] * p[m] - p[n + m]).norm()
    } else {
        let a = AxialSeries::basis(n, 1);
        let b = AxialSeries::basis(m, 1);
        let prod = crate::axseries::intrinsic_product(&a, &b).expect("impulses are intrinsic");
        let want = AxialSeries::basis(n + m, 1);
        let len = prod.len().max(want.len());
        (0..len).fold(0.0, |r: f64, k| r.max(prod.coeff(k).max_abs_diff(&want.coeff(k))))
    }
}

/// How the unit factor `e^nu` is formed in the expansion of `P_m` in Fueter variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitOrdering {
    /// Symmetric product of `nu1` e1's, `nu2` e2's and `nu3` e3's.
    Symmetrized,
    /// The ordered product `e1^nu1 e2^nu2 e3^nu3`.
    Blockwise,
}

/// `|P_m(x) - sum_{|nu| = m} zeta^nu(x) e^nu m!/nu!|` with symmetrized unit products.
pub fn check_symmetric_expansion(m: usize, x: Quaternion) -> Result<f64> {
    check_symmetric_expansion_with(m, x, UnitOrdering::Symmetrized)
}

pub fn check_symmetric_expansion_with(m: usize, x: Quaternion, ordering: UnitOrdering) -> Result<f64> {
    let mut sum = Quaternion::ZERO;
    for nu in MultiIndex::of_order(m) {
        let z = fueter::zeta_power(nu, x)?;
        let units = nu.expand(Quaternion::E1, Quaternion::E2, Quaternion::E3);
        let e = match ordering {
            UnitOrdering::Symmetrized => fueter::symmetric_product(&units)?,
            UnitOrdering::Blockwise => units.iter().fold(Quaternion::ONE, |acc, &u| acc * u),
        };
        sum += z * e * nu.multinomial() as f64;
    }
    Ok((eval_p(m, x) - sum).norm())
}

/// Axial series whose real-axis symbol at `t = 3 x0` is `sum x0^n a_n`: coefficients `a_n / 3^n`.
pub fn extend_axial(real_coeffs: &[QuatMatrix]) -> AxialSeries {
    let coeffs: Vec<QuatMatrix> =
        real_coeffs.iter().enumerate().map(|(n, a)| a.scale(3f64.powi(-(n as i32)))).collect();
    let (r, s) = real_coeffs.first().map(|a| a.shape()).unwrap_or((1, 1));
    AxialSeries::new(r, s, coeffs, TailModel::Finite).expect("consistent shapes")
}

/// Axial series whose pointwise values on the real axis are `sum x0^n a_n`: coefficients `c_n a_n`.
pub fn extend_axial_pointwise(real_coeffs: &[QuatMatrix]) -> AxialSeries {
    let coeffs: Vec<QuatMatrix> = real_coeffs.iter().enumerate().map(|(n, a)| a.scale(c_float(n))).collect();
    let (r, s) = real_coeffs.first().map(|a| a.shape()).unwrap_or((1, 1));
    AxialSeries::new(r, s, coeffs, TailModel::Finite).expect("consistent shapes")
}
