//! State-space realizations: colligations, their coefficient sequences, Blaschke
//! isometries, rational calculus on the real axis, and the de Branges-Rovnyak inequality.

use serde::{Deserialize, Serialize};

use crate::axseries::{AxialSeries, TailModel};
use crate::error::{Error, Result};
use crate::quatlin::{self, QuatMatrix};

/// Tolerance for the defining equations of a verified colligation.
pub const COLLIGATION_TOL: f64 = 1e-10;

/// States whose telescoped remainder exceeds this are not certified.
pub const MAX_REMAINDER: f64 = 0.1;

/// Singular values below this count as zero in rank decisions.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    Unitary,
    Coisometric,
    #[default]
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Coisometric,
    Unitary,
}

/// `V = (A B; C D)` with `A: N x N`, `B: N x s`, `C: r x N`, `D: r x s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ColligationRepr", into = "ColligationRepr")]
pub struct Colligation {
    a: QuatMatrix,
    b: QuatMatrix,
    c: QuatMatrix,
    d: QuatMatrix,
    flag: Flag,
}

#[derive(Serialize, Deserialize)]
struct ColligationRepr {
    #[serde(rename = "A")]
    a: QuatMatrix,
    #[serde(rename = "B")]
    b: QuatMatrix,
    #[serde(rename = "C")]
    c: QuatMatrix,
    #[serde(rename = "D")]
    d: QuatMatrix,
    #[serde(default)]
    flag: Flag,
}

impl TryFrom<ColligationRepr> for Colligation {
    type Error = Error;
    fn try_from(r: ColligationRepr) -> Result<Self> {
        let mut v = Colligation::new(r.a, r.b, r.c, r.d)?;
        // a claimed flag is only kept if it verifies
        if let Some(mode) = match r.flag {
            Flag::Unitary => Some(Mode::Unitary),
            Flag::Coisometric => Some(Mode::Coisometric),
            Flag::None => None,
        } {
            v.certify(mode, COLLIGATION_TOL);
        }
        Ok(v)
    }
}

impl From<Colligation> for ColligationRepr {
    fn from(v: Colligation) -> Self {
        ColligationRepr { a: v.a, b: v.b, c: v.c, d: v.d, flag: v.flag }
    }
}

impl Colligation {
    pub fn new(a: QuatMatrix, b: QuatMatrix, c: QuatMatrix, d: QuatMatrix) -> Result<Self> {
        let n = a.rows();
        let ok = a.cols() == n && b.rows() == n && c.cols() == n && d.rows() == c.rows() && d.cols() == b.cols();
        if !ok {
            return Err(Error::ShapeMismatch(format!(
                "A {:?}, B {:?}, C {:?}, D {:?}",
                a.shape(),
                b.shape(),
                c.shape(),
                d.shape()
            )));
        }
        Ok(Colligation { a, b, c, d, flag: Flag::None })
    }

    /// Split a square `(N + r) x (N + s)` block matrix into `(A B; C D)`.
    pub fn from_block(v: &QuatMatrix, state_dim: usize) -> Result<Self> {
        let (rows, cols) = v.shape();
        if state_dim > rows.min(cols) {
            return Err(Error::ShapeMismatch("state dimension exceeds the block matrix".into()));
        }
        let (r, s) = (rows - state_dim, cols - state_dim);
        Colligation::new(
            v.submatrix(0, 0, state_dim, state_dim),
            v.submatrix(0, state_dim, state_dim, s),
            v.submatrix(state_dim, 0, r, state_dim),
            v.submatrix(state_dim, state_dim, r, s),
        )
    }

    /// The scalar shift `A = 0, B = C = 1, D = 0`, realizing `P_1`.
    pub fn shift() -> Self {
        Colligation::from_block(&QuatMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]), 1).expect("2x2 block")
    }

    /// Blaschke factor with zero `a`: `A = a`, `B = C = sqrt(1 - a^2)`, `D = -a`.
    pub fn blaschke_factor(a: f64) -> Self {
        let w = (1.0 - a * a).sqrt();
        Colligation::from_block(&QuatMatrix::from_real_rows(&[vec![a, w], vec![w, -a]]), 1).expect("2x2 block")
    }

    pub fn a(&self) -> &QuatMatrix {
        &self.a
    }

    pub fn b(&self) -> &QuatMatrix {
        &self.b
    }

    pub fn c(&self) -> &QuatMatrix {
        &self.c
    }

    pub fn d(&self) -> &QuatMatrix {
        &self.d
    }

    pub fn flag(&self) -> Flag {
        self.flag
    }

    pub fn state_dim(&self) -> usize {
        self.a.rows()
    }

    /// `(r, s)`: output and input dimensions.
    pub fn io_dims(&self) -> (usize, usize) {
        (self.d.rows(), self.d.cols())
    }

    pub fn block(&self) -> QuatMatrix {
        let top = QuatMatrix::hstack(&[&self.a, &self.b]);
        let bottom = QuatMatrix::hstack(&[&self.c, &self.d]);
        QuatMatrix::vstack(&[&top, &bottom])
    }

    /// Run [`verify_colligation`] and set the flag on success.
    pub fn certify(&mut self, mode: Mode, tol: f64) -> ColligationCheck {
        let check = verify_colligation(self, mode, tol);
        if check.passed {
            self.flag = match mode {
                Mode::Unitary => Flag::Unitary,
                Mode::Coisometric => Flag::Coisometric,
            };
        }
        check
    }

    /// Restriction `D + t C (I - tA)^-1 B` as a rational form.
    pub fn real_form(&self) -> RationalRealForm {
        RationalRealForm { h: self.d.clone(), g: self.c.clone(), t: self.a.clone(), f: self.b.clone() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColligationCheck {
    pub passed: bool,
    pub residuals: Vec<(&'static str, f64)>,
}

impl ColligationCheck {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.1).fold(0.0, f64::max)
    }
}

/// Residuals of `A*A + C*C = I`, `B*B + D*D = I`, `A*B + C*D = 0` (unitary, together with
/// `V V* = I`) or of `V V* = I` alone (coisometric).
pub fn verify_colligation(v: &Colligation, mode: Mode, tol: f64) -> ColligationCheck {
    let block = v.block();
    let (rows, _) = block.shape();
    let row = quatlin::operator_norm(&(&(&block * &block.adjoint()) - &QuatMatrix::identity(rows)));
    let mut residuals = Vec::new();
    if mode == Mode::Unitary {
        let n = v.state_dim();
        let s = v.b.cols();
        let state = &(&(&v.a.adjoint() * &v.a) + &(&v.c.adjoint() * &v.c)) - &QuatMatrix::identity(n);
        let input = &(&(&v.b.adjoint() * &v.b) + &(&v.d.adjoint() * &v.d)) - &QuatMatrix::identity(s);
        let cross = &(&v.a.adjoint() * &v.b) + &(&v.c.adjoint() * &v.d);
        residuals.push(("state", quatlin::operator_norm(&state)));
        residuals.push(("input", quatlin::operator_norm(&input)));
        residuals.push(("cross", quatlin::operator_norm(&cross)));
    }
    residuals.push(("coisometry", row));
    let passed = residuals.iter().all(|r| r.1 <= tol);
    ColligationCheck { passed, residuals }
}

/// `(scale, ratio)` with `||A^j|| <= scale * ratio^j` for every `j`, from the norms of the
/// first 64 powers. None when no power drops below norm one.
pub fn power_decay(a: &QuatMatrix) -> Option<(f64, f64)> {
    if a.rows() == 0 {
        return Some((0.0, 0.0));
    }
    let mut best: Option<(f64, f64)> = None;
    let mut power = QuatMatrix::identity(a.rows());
    let mut max_below: f64 = 1.0;
    for k in 1..=64 {
        power = &power * a;
        let q = quatlin::operator_norm(&power);
        if q == 0.0 {
            // nilpotent: ||A^j|| <= M for j < k and zero after, so M 2^(k-1) 2^-j covers all j
            return Some((max_below * 2f64.powi(k - 1), 0.5));
        }
        if q < 1.0 {
            // ||A^j|| <= M q^floor(j/k) <= (M/q) (q^(1/k))^j
            let ratio = q.powf(1.0 / k as f64);
            if best.is_none_or(|(_, r)| ratio < r) {
                best = Some((max_below / q, ratio));
            }
        }
        max_below = max_below.max(q);
    }
    best
}

/// Coefficient series `(D, CB, CAB, CA^2 B, ...)` with `n_terms` stored coefficients.
pub fn coefficients_from_colligation(v: &Colligation, n_terms: usize) -> AxialSeries {
    let (r, s) = v.io_dims();
    let mut coeffs = Vec::with_capacity(n_terms);
    let mut state = v.b.clone();
    for n in 0..n_terms {
        if n == 0 {
            coeffs.push(v.d.clone());
        } else {
            coeffs.push(&v.c * &state);
            state = &v.a * &state;
        }
    }
    let cb = quatlin::operator_norm(&v.c) * quatlin::operator_norm(&v.b);
    // `state` is now A^(n_terms - 1) B, so a zero state ends the sequence
    let tail = if cb == 0.0 || (n_terms > 0 && state.max_abs() == 0.0) {
        TailModel::Finite
    } else {
        match power_decay(&v.a) {
            // ||C A^(n-1) B|| <= cb * scale * ratio^(n-1)
            Some((scale, ratio)) => TailModel::geometric(cb * scale / ratio, ratio),
            None => TailModel::Unknown,
        }
    };
    AxialSeries::new(r, s, coeffs, tail).expect("coefficient shapes follow from the colligation")
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeReport {
    pub n_terms: usize,
    /// `||sum_{n<=N} b_n* b_n - I||`.
    pub gram_residual: f64,
    /// Exact telescoped remainder `||(A^N B)*(A^N B)||`.
    pub remainder: f64,
    /// `||A^(N+1) B||^2`.
    pub next_state_norm_sqr: f64,
    /// `max_d ||sum_n b_n* b_(n+d)||` over lags `1..=N`.
    pub lag_residual: f64,
    /// `max_d ||A^(N-d) B|| ||A^N B||`.
    pub lag_remainder: f64,
    /// Deviation of the partial sums from their telescoped closed forms.
    pub identity_residual: f64,
    pub passed: bool,
}

/// Isometry of multiplication by the coefficients `b_0..b_N` of a unitary colligation.
pub fn blaschke_isometry_check(v: &Colligation, n_terms: usize, tol: f64) -> Result<BlaschkeReport> {
    if v.flag != Flag::Unitary {
        let check = verify_colligation(v, Mode::Unitary, COLLIGATION_TOL);
        if !check.passed {
            return Err(Error::NotUnitary { residual: check.max_residual() });
        }
    }
    let n = n_terms;
    let s = v.b.cols();
    // states[k] = A^k B for k = 0..=N+1
    let mut states = vec![v.b.clone()];
    for k in 0..=n {
        let next = &v.a * &states[k];
        states.push(next);
    }
    let last = &states[n];
    let remainder_m = &last.adjoint() * last;
    let remainder = quatlin::operator_norm(&remainder_m);
    let next_state_norm_sqr = quatlin::operator_norm(&states[n + 1]).powi(2);
    if remainder > MAX_REMAINDER {
        return Err(Error::NonDecayingState { tail: remainder });
    }
    let b: Vec<QuatMatrix> = (0..=n).map(|k| if k == 0 { v.d.clone() } else { &v.c * &states[k - 1] }).collect();

    let mut gram = QuatMatrix::zeros(s, s);
    for bk in &b {
        gram += &(&bk.adjoint() * bk);
    }
    let gram_residual = quatlin::operator_norm(&(&gram - &QuatMatrix::identity(s)));
    let mut identity_residual =
        quatlin::operator_norm(&(&(&gram - &QuatMatrix::identity(s)) + &remainder_m));

    let mut lag_residual: f64 = 0.0;
    let mut lag_remainder: f64 = 0.0;
    for d in 1..=n {
        let mut cross = QuatMatrix::zeros(s, s);
        for k in 0..=n - d {
            cross += &(&b[k].adjoint() * &b[k + d]);
        }
        lag_residual = lag_residual.max(quatlin::operator_norm(&cross));
        let closed = &states[n - d].adjoint() * &states[n];
        lag_remainder = lag_remainder.max(quatlin::operator_norm(&states[n - d]) * quatlin::operator_norm(last));
        identity_residual = identity_residual.max(quatlin::operator_norm(&(&cross + &closed)));
    }
    let passed = gram_residual <= remainder + tol && lag_residual <= lag_remainder + tol;
    Ok(BlaschkeReport {
        n_terms,
        gram_residual,
        remainder,
        next_state_norm_sqr,
        lag_residual,
        lag_remainder,
        identity_residual,
        passed,
    })
}

/// Drop the leading coefficient of `f`.
pub fn backward_shift(f: &AxialSeries) -> AxialSeries {
    f.backward_shift()
}

/// `(C A^n xi)` for `n < n_terms`.
pub fn canonical_coefficients(v: &Colligation, xi: &QuatMatrix, n_terms: usize) -> Result<Vec<QuatMatrix>> {
    if xi.rows() != v.state_dim() {
        return Err(Error::ShapeMismatch("state vector length differs from the state dimension".into()));
    }
    let mut out = Vec::with_capacity(n_terms);
    let mut state = xi.clone();
    for _ in 0..n_terms {
        out.push(&v.c * &state);
        state = &v.a * &state;
    }
    Ok(out)
}

/// Rank of `(C; CA; ...; CA^(N-1))`, counting singular values above [`RANK_TOL`].
pub fn observability_rank(v: &Colligation) -> usize {
    let n = v.state_dim();
    if n == 0 {
        return 0;
    }
    let mut blocks = Vec::with_capacity(n);
    let mut ca = v.c.clone();
    for _ in 0..n {
        blocks.push(ca.clone());
        ca = &ca * &v.a;
    }
    let refs: Vec<&QuatMatrix> = blocks.iter().collect();
    let stacked = QuatMatrix::vstack(&refs);
    // each quaternionic singular value appears twice
    quatlin::singular_values(&stacked).iter().filter(|&&sv| sv > RANK_TOL).count() / 2
}

pub fn is_observable(v: &Colligation) -> bool {
    observability_rank(v) == v.state_dim()
}

/// `M(t) = H + t G (I - tT)^-1 F`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalRealForm {
    #[serde(rename = "H")]
    pub h: QuatMatrix,
    #[serde(rename = "G")]
    pub g: QuatMatrix,
    #[serde(rename = "T")]
    pub t: QuatMatrix,
    #[serde(rename = "F")]
    pub f: QuatMatrix,
}

impl RationalRealForm {
    pub fn new(h: QuatMatrix, g: QuatMatrix, t: QuatMatrix, f: QuatMatrix) -> Result<Self> {
        let n = t.rows();
        let ok = t.cols() == n && g.cols() == n && f.rows() == n && g.rows() == h.rows() && f.cols() == h.cols();
        if !ok {
            return Err(Error::ShapeMismatch(format!(
                "H {:?}, G {:?}, T {:?}, F {:?}",
                h.shape(),
                g.shape(),
                t.shape(),
                f.shape()
            )));
        }
        Ok(RationalRealForm { h, g, t, f })
    }

    /// A constant function.
    pub fn constant(h: QuatMatrix) -> Self {
        let (r, s) = h.shape();
        RationalRealForm { h, g: QuatMatrix::zeros(r, 0), t: QuatMatrix::zeros(0, 0), f: QuatMatrix::zeros(0, s) }
    }

    pub fn shape(&self) -> (usize, usize) {
        self.h.shape()
    }

    pub fn state_dim(&self) -> usize {
        self.t.rows()
    }

    /// Value at `t` by a linear solve.
    pub fn value(&self, t: f64) -> Result<QuatMatrix> {
        let n = self.state_dim();
        if n == 0 || t == 0.0 {
            return Ok(self.h.clone());
        }
        let resolvent = &QuatMatrix::identity(n) - &self.t.scale(t);
        let x = resolvent.solve(&self.f).map_err(|e| match e {
            Error::SingularMatrix => Error::SingularResolvent,
            e => e,
        })?;
        Ok(&self.h + &(&self.g * &x).scale(t))
    }

    /// `M^-1(t) = H^-1 - t H^-1 G (I - t T^x)^-1 F H^-1` with `T^x = T - F H^-1 G`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.h.is_square() {
            return Err(Error::SingularH);
        }
        let h_inv = self.h.inverse().map_err(|_| Error::SingularH)?;
        let g = -&(&h_inv * &self.g);
        let t = &self.t - &(&(&self.f * &h_inv) * &self.g);
        let f = &self.f * &h_inv;
        Ok(RationalRealForm { h: h_inv, g, t, f })
    }

    /// Cascade realization of `M1(t) M2(t)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.h.cols() != other.h.rows() {
            return Err(Error::ShapeMismatch(format!("{:?} times {:?}", self.shape(), other.shape())));
        }
        let (n1, n2) = (self.state_dim(), other.state_dim());
        let mut t = QuatMatrix::zeros(n1 + n2, n1 + n2);
        t.set_block(0, 0, &self.t);
        t.set_block(0, n1, &(&self.f * &other.g));
        t.set_block(n1, n1, &other.t);
        let g = QuatMatrix::hstack(&[&self.g, &(&self.h * &other.g)]);
        let f = QuatMatrix::vstack(&[&(&self.f * &other.h), &other.f]);
        Ok(RationalRealForm { h: &self.h * &other.h, g, t, f })
    }

    /// `M1 + M2` as the product `(M1 I)(I; M2)`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!("{:?} plus {:?}", self.shape(), other.shape())));
        }
        let (r, s) = self.shape();
        let (n1, n2) = (self.state_dim(), other.state_dim());
        let row = RationalRealForm {
            h: QuatMatrix::hstack(&[&self.h, &QuatMatrix::identity(r)]),
            g: self.g.clone(),
            t: self.t.clone(),
            f: QuatMatrix::hstack(&[&self.f, &QuatMatrix::zeros(n1, r)]),
        };
        let col = RationalRealForm {
            h: QuatMatrix::vstack(&[&QuatMatrix::identity(s), &other.h]),
            g: QuatMatrix::vstack(&[&QuatMatrix::zeros(s, n2), &other.g]),
            t: other.t.clone(),
            f: other.f.clone(),
        };
        row.product(&col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DbrReport {
    /// `||R_0 f||^2 - ||f||^2 + ||f(0)||^2` for each sample.
    pub residuals: Vec<f64>,
    /// Numerical rank of the kernel Gram at the sample points.
    pub gram_rank: usize,
    pub passed: bool,
}

/// Kernel function coefficients `kappa_n(s) = s^n I - (sum_{k<=n} b_k s^(n-k)) S(s)*` for `n < len`.
fn kernel_coefficients(b: &[QuatMatrix], s_value: &QuatMatrix, s: f64, len: usize) -> Vec<QuatMatrix> {
    let r = s_value.rows();
    let mut partial = QuatMatrix::zeros(b[0].rows(), b[0].cols());
    let mut out = Vec::with_capacity(len);
    for (n, bn) in b.iter().enumerate().take(len) {
        // partial_n = s * partial_(n-1) + b_n
        partial = &partial.scale(s) + bn;
        let kn = &QuatMatrix::identity(r).scale(s.powi(n as i32)) - &(&partial * &s_value.adjoint());
        out.push(kn);
    }
    out
}

/// The inequality `||R_0 f||^2 <= ||f||^2 - ||f(0)||^2` in `H(S)` for `S` realized by `v`.
///
/// Each sample is `f = sum_i K_S(., t_i) u_i` with `u_i` the `r x 1` weights in `samples`.
/// Norms come from the kernel Gram `(K_S(t_i, t_j))` on the real axis; `R_0 f` is the backward
/// shift of the coefficient sequence of `f`, truncated at `n_terms`, and its norm is read off
/// through the pseudo-inverse Gram on the span of the sampled kernel functions.
pub fn dbr_inequality_check(
    v: &Colligation,
    points: &[f64],
    samples: &[Vec<QuatMatrix>],
    n_terms: usize,
    tol: f64,
) -> Result<DbrReport> {
    if let Some(&t) = points.iter().find(|t| t.abs() >= 1.0) {
        return Err(Error::DivergentPoint { norm: t.abs() });
    }
    let (r, _) = v.io_dims();
    let form = v.real_form();
    let m = points.len();
    let values: Vec<QuatMatrix> = points.iter().map(|&t| form.value(t)).collect::<Result<_>>()?;
    let s0 = form.value(0.0)?;
    let series = coefficients_from_colligation(v, n_terms + 1);
    let b = series.coeffs();

    let mut gram = QuatMatrix::zeros(r * m, r * m);
    for i in 0..m {
        for j in 0..m {
            let k = crate::schur::kernel_k_s_symbol(&values[i], &values[j], points[i], points[j]);
            gram.set_block(i * r, j * r, &k);
        }
    }
    let gram = (&gram + &gram.adjoint()).scale(0.5);
    let eig = quatlin::hermitian_eigenvalues(&quatlin::chi(&gram))?;
    let top = eig.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let cut = 1e-10 * top.max(1.0);
    // eigenvalues between these thresholds leave the rank undecided
    if let Some(&bad) = eig.iter().find(|&&l| l > 1e-13 * top.max(1.0) && l <= cut) {
        return Err(Error::GramSingular { min_eigenvalue: bad });
    }
    let gram_rank = eig.iter().filter(|&&l| l > cut).count() / 2;
    let pinv = quatlin::hermitian_function(&gram, |l| if l > cut { 1.0 / l } else { 0.0 })?;
    let projector = &gram * &pinv;

    let kappas: Vec<Vec<QuatMatrix>> =
        points.iter().zip(&values).map(|(&t, sv)| kernel_coefficients(b, sv, t, n_terms + 1)).collect();

    let mut residuals = Vec::with_capacity(samples.len());
    for weights in samples {
        if weights.len() != m || weights.iter().any(|u| u.shape() != (r, 1)) {
            return Err(Error::ShapeMismatch("sample weights must be one r x 1 vector per point".into()));
        }
        let u = QuatMatrix::vstack(&weights.iter().collect::<Vec<_>>());
        let norm_f = (&(&u.adjoint() * &gram) * &u).as_scalar().re();
        let mut f0 = QuatMatrix::zeros(r, 1);
        for i in 0..m {
            f0 += &(&crate::schur::kernel_k_s_symbol(&s0, &values[i], 0.0, points[i]) * &weights[i]);
        }
        // coefficients of R_0 f: g_n = sum_i kappa_(n+1)(t_i) u_i
        let g: Vec<QuatMatrix> = (0..n_terms)
            .map(|n| {
                let mut acc = QuatMatrix::zeros(r, 1);
                for i in 0..m {
                    acc += &(&kappas[i][n + 1] * &weights[i]);
                }
                acc
            })
            .collect();
        // evaluations of R_0 f at the sample points
        let mut evals = Vec::with_capacity(m);
        for &t in points {
            let mut acc = QuatMatrix::zeros(r, 1);
            let mut tp = 1.0;
            for gn in &g {
                acc += &gn.scale(tp);
                tp *= t;
            }
            evals.push(acc);
        }
        let e = QuatMatrix::vstack(&evals.iter().collect::<Vec<_>>());
        let miss = quatlin::operator_norm(&(&e - &(&projector * &e)));
        if miss > 1e-8 * (1.0 + quatlin::operator_norm(&e)) {
            return Err(Error::NotRepresentable { residual: miss });
        }
        let norm_r0f = (&(&e.adjoint() * &pinv) * &e).as_scalar().re();
        let f0_sqr = f0.frobenius_norm().powi(2);
        residuals.push(norm_r0f - norm_f + f0_sqr);
    }
    let passed = residuals.iter().all(|&d| d <= tol);
    Ok(DbrReport { residuals, gram_rank, passed })
}
