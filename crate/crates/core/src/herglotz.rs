//! Herglotz multipliers generated by a unitary `V` and an output map `C`, the kernel
//! `L_Phi`, and the Hermitian Toeplitz positivity test.

use serde::{Deserialize, Serialize};

use crate::axseries::{monotone_ratio_tail, AxialSeries, TailModel};
use crate::error::{Error, Result};
use crate::quatlin::{self, QuatMatrix, Quaternion};
use crate::toeplitz::{self, ToeplitzSection};

const UNITARY_TOL: f64 = 1e-10;

/// `Phi_0 = a + C C*`, `Phi_n = 2 C (V*)^n C*`, with `a` skew-Hermitian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GeneratorRepr", into = "GeneratorRepr")]
pub struct HerglotzGenerator {
    v: QuatMatrix,
    c: QuatMatrix,
    a: QuatMatrix,
}

#[derive(Serialize, Deserialize)]
struct GeneratorRepr {
    #[serde(rename = "V")]
    v: QuatMatrix,
    #[serde(rename = "C")]
    c: QuatMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<QuatMatrix>,
}

impl TryFrom<GeneratorRepr> for HerglotzGenerator {
    type Error = Error;
    fn try_from(r: GeneratorRepr) -> Result<Self> {
        HerglotzGenerator::new(r.v, r.c, r.a)
    }
}

impl From<HerglotzGenerator> for GeneratorRepr {
    fn from(g: HerglotzGenerator) -> Self {
        let a = if g.a.max_abs() == 0.0 { None } else { Some(g.a) };
        GeneratorRepr { v: g.v, c: g.c, a }
    }
}

impl HerglotzGenerator {
    /// Checks `V*V = I` and `a* = -a`; a missing `a` is zero.
    pub fn new(v: QuatMatrix, c: QuatMatrix, a: Option<QuatMatrix>) -> Result<Self> {
        if !v.is_square() || c.cols() != v.rows() {
            return Err(Error::ShapeMismatch(format!("V {:?}, C {:?}", v.shape(), c.shape())));
        }
        let r = c.rows();
        let a = a.unwrap_or_else(|| QuatMatrix::zeros(r, r));
        if a.shape() != (r, r) {
            return Err(Error::ShapeMismatch(format!("skew term {:?} for {r} outputs", a.shape())));
        }
        let skew = (&a + &a.adjoint()).max_abs();
        if skew > UNITARY_TOL {
            return Err(Error::Domain(format!("skew term is not skew-Hermitian (residual {skew:e})")));
        }
        let residual = quatlin::operator_norm(&(&(&v.adjoint() * &v) - &QuatMatrix::identity(v.rows())));
        if residual > UNITARY_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(HerglotzGenerator { v, c, a })
    }

    pub fn v(&self) -> &QuatMatrix {
        &self.v
    }

    pub fn c(&self) -> &QuatMatrix {
        &self.c
    }

    pub fn skew(&self) -> &QuatMatrix {
        &self.a
    }

    pub fn outputs(&self) -> usize {
        self.c.rows()
    }
}

/// Coefficients `(a + CC*, 2CV*C*, 2CV*^2C*, ...)`, bounded by `2||C||^2`.
pub fn herglotz_coefficients(g: &HerglotzGenerator, n_terms: usize) -> AxialSeries {
    let r = g.outputs();
    let c_adj = g.c.adjoint();
    let v_adj = g.v.adjoint();
    let mut coeffs = Vec::with_capacity(n_terms);
    let mut state = c_adj.clone();
    for n in 0..n_terms {
        if n == 0 {
            coeffs.push(&g.a + &(&g.c * &c_adj));
        } else {
            state = &v_adj * &state;
            coeffs.push((&g.c * &state).scale(2.0));
        }
    }
    let bound = 2.0 * quatlin::operator_norm(&g.c).powi(2);
    let tail = if bound == 0.0 { TailModel::Finite } else { TailModel::bounded(bound) };
    AxialSeries::new(r, r, coeffs, tail).expect("shapes follow from the generator")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HerglotzVerdict {
    pub psd: bool,
    pub min_eigenvalue: f64,
    pub size: usize,
}

/// PSD test of the Hermitian Toeplitz section of size `n` with entries `(Phi_0 + Phi_0*)/2`
/// on the diagonal and `Phi_k / 2` off it.
pub fn verify_herglotz(coeffs: &[QuatMatrix], n: usize, tol: f64) -> Result<HerglotzVerdict> {
    if coeffs.iter().any(|c| !c.is_square()) {
        return Err(Error::ShapeMismatch("Herglotz coefficients must be square".into()));
    }
    let symbols: Vec<QuatMatrix> = coeffs.iter().take(n).cloned().collect();
    let t = ToeplitzSection::hermitian(&symbols, n)?;
    let v = toeplitz::hermitian_psd(&t, tol)?;
    Ok(HerglotzVerdict { psd: v.psd, min_eigenvalue: v.min_eigenvalue, size: n })
}

/// `r^k [(k+2)/(1-r) + r/(1-r)^2]`.
fn weighted_geometric_tail(k: usize, r: f64) -> f64 {
    let kf = k as f64;
    r.powi(k as i32) * ((kf + 2.0) / (1.0 - r) + r / (1.0 - r).powi(2))
}

/// `1/2 sum_{k<=n} [(P_k (.) Phi)(x) conj(P_k(y)) + P_k(x) ((P_k (.) Phi)(y))*]` and a bound on
/// the omitted terms.
pub fn kernel_l_phi(phi: &AxialSeries, x: Quaternion, y: Quaternion, n: usize) -> Result<(QuatMatrix, f64)> {
    if !phi.is_square() {
        return Err(Error::ShapeMismatch("L_Phi needs a square series".into()));
    }
    let (rx, ry) = (x.norm(), y.norm());
    for r in [rx, ry] {
        if r >= 1.0 {
            return Err(Error::DivergentPoint { norm: r });
        }
    }
    let r = phi.rows();
    let px = crate::appell::p_values(x, n);
    let py = crate::appell::p_values(y, n);
    let mut l = QuatMatrix::zeros(r, r);
    let mut bound = 0.0;
    for k in 0..=n {
        let shifted = phi.shift_product(k);
        let (fx, ex) = shifted.evaluate(x)?;
        let (fy, ey) = shifted.evaluate(y)?;
        l += &fx.right_scale(py[k].conj());
        l += &fy.adjoint().left_scale(px[k]);
        bound += 0.5 * (ex * py[k].norm() + px[k].norm() * ey);
    }
    let l = l.scale(0.5);
    let coeff_bound = phi.coeff_bound().max(phi.tail().sup());
    if coeff_bound > 0.0 && (rx > 0.0 || ry > 0.0) {
        let term = |k: usize| {
            0.5 * coeff_bound
                * (weighted_geometric_tail(k, rx) * (k + 2) as f64 * ry.powi(k as i32)
                    + (k + 2) as f64 * rx.powi(k as i32) * weighted_geometric_tail(k, ry))
        };
        bound += monotone_ratio_tail(term, n + 1);
    }
    Ok((l, bound))
}

/// `L_Phi` on the real axis in the symbol variables: `(Phi(t) + Phi(s)*) / (2(1 - ts))`.
pub fn kernel_l_phi_symbol(phi_t: &QuatMatrix, phi_s: &QuatMatrix, t: f64, s: f64) -> QuatMatrix {
    (phi_t + &phi_s.adjoint()).scale(0.5 / (1.0 - t * s))
}
