//! Command-line front end: evaluations, verification verdicts and Gram exports.
//!
//! Exit codes: 0 verified, 1 property failed, 2 usage or domain error.

mod input;
mod verdict;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use appell_schur::axseries::Ellipsoid;
use appell_schur::herglotz::{self, HerglotzGenerator};
use appell_schur::quatlin::{self, QuatMatrix, Quaternion};
use appell_schur::realize::{self, Colligation, COLLIGATION_TOL, MAX_REMAINDER};
use appell_schur::schur::{self, Gram, RealPowerSeries, SchurStop, SchurVerdict};
use appell_schur::toeplitz::{self, ToeplitzSection};
use appell_schur::{appell, fueter, halfspace, AxialSeries, Error};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use input::Inputs;
use verdict::{Metadata, Verdict};

#[derive(Parser)]
#[command(name = "appell-schur", version, about = "Schur analysis in the Appell polynomial basis")]
struct Cli {
    /// Truncation depth for series, sections and kernel sums.
    #[arg(long, global = true, default_value_t = 64)]
    trunc: usize,
    /// Numerical tolerance for verdicts.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for generated test vectors.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Q_m, P_m and c_m at a point.
    Appell {
        #[arg(long)]
        m: usize,
        /// JSON point `[x0,x1,x2,x3]` or a real number.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Finite-difference Cauchy-Fueter and Appell residuals of P_m at a point.
    FueterCheck {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = fueter::DEFAULT_STEP)]
        step: f64,
        /// Tolerance for the difference quotients (they cannot reach --tol).
        #[arg(long, default_value_t = 1e-7)]
        fd_tol: f64,
    },
    /// Contraction test of the lower-triangular Toeplitz section of a series.
    SchurTest { series: PathBuf },
    /// Schur parameters of a series.
    SchurAlgo {
        series: PathBuf,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Gram matrix of a kernel at sample points, with a PSD verdict.
    Gram {
        #[arg(value_enum)]
        kernel: Kernel,
        /// JSON array of points; omit to draw `--random` points from `--seed`.
        points: Option<PathBuf>,
        #[arg(long)]
        random: Option<usize>,
        /// Series for the K_S and L_Phi kernels.
        #[arg(long)]
        series: Option<PathBuf>,
        /// Herglotz generator for L_Phi, instead of a series.
        #[arg(long)]
        generator: Option<PathBuf>,
        /// Evaluate at real points in the variable t = 3 x0.
        #[arg(long)]
        real_axis: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Isometry check of the multiplier of a unitary colligation.
    Blaschke {
        colligation: PathBuf,
        #[arg(long, default_value_t = 200)]
        terms: usize,
    },
    /// Hermitian Toeplitz positivity of a Herglotz generator or coefficient series.
    HerglotzTest { input: PathBuf },
    /// Half-space basis values, the Lyapunov identity and Cayley transforms.
    #[command(subcommand)]
    Halfspace(HalfspaceCommand),
    /// Rational real forms: evaluation, inversion and products.
    #[command(subcommand)]
    Realize(RealizeCommand),
}

#[derive(Subcommand)]
enum HalfspaceCommand {
    /// Evaluate W_n at a point.
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Residual of 6 (x0 + y0) K_P - 1 at two positive reals.
    Lyapunov {
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, allow_hyphen_values = true)]
        y0: f64,
    },
    /// Caratheodory values and K_Phi Gram for the half-space Schur function of a colligation.
    Cayley {
        colligation: PathBuf,
        /// JSON array of positive reals.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
}

#[derive(Subcommand)]
enum RealizeCommand {
    /// Value of a realization at a real t.
    Eval {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Realization of the pointwise inverse.
    Invert { input: PathBuf },
    /// Realization of the pointwise product.
    Multiply { left: PathBuf, right: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kernel {
    Hardy,
    #[value(name = "k-s")]
    KS,
    #[value(name = "l-phi")]
    LPhi,
    #[value(name = "k-p")]
    KP,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug)]
pub struct Failure(String);

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure(msg.into())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

struct Report {
    json: Value,
    passed: bool,
}

impl Report {
    fn value(json: Value) -> Self {
        Report { json, passed: true }
    }

    fn verdict(v: &Verdict) -> Self {
        Report { json: serde_json::to_value(v).expect("verdicts serialize"), passed: v.passed }
    }
}

struct Ctx {
    trunc: usize,
    tol: f64,
    seed: u64,
    inputs: Inputs,
}

impl Ctx {
    fn verdict(&self) -> Verdict {
        Verdict::new(Metadata {
            input_digest: self.inputs.digest(),
            truncation: self.trunc,
            tol: self.tol,
            seed: self.seed,
        })
    }
}

fn quat_json(q: Quaternion) -> Value {
    json!(<[f64; 4]>::from(q))
}

fn cmd_appell(ctx: &mut Ctx, m: usize, point: &str) -> Result<Report, Failure> {
    let x = input::point_arg(&mut ctx.inputs, "point", point)?;
    let c = appell::c_coeff(m);
    Ok(Report::value(json!({
        "m": m,
        "point": quat_json(x),
        "Q": quat_json(appell::eval_q(m, x)),
        "P": quat_json(appell::eval_p(m, x)),
        "c": c.to_string(),
        "c_value": appell::c_float(m),
    })))
}

fn cmd_fueter(ctx: &mut Ctx, m: usize, point: &str, step: f64, fd_tol: f64) -> Result<Report, Failure> {
    let x = input::point_arg(&mut ctx.inputs, "point", point)?;
    if !(step > 0.0) {
        return Err(Failure::usage("--step must be positive"));
    }
    let d = fueter::apply_d_fd(fueter::scalar_fn(|y| appell::eval_p(m, y)), x, step);
    let mut v = ctx.verdict();
    v.check("fueter", d.as_scalar().norm(), fd_tol);
    if m >= 1 {
        let dbar = fueter::apply_dbar_fd(fueter::scalar_fn(|y| appell::eval_q(m, y)), x, step);
        let r = dbar.as_scalar() * 0.5 - appell::eval_q(m - 1, x) * m as f64;
        v.check("appell", r.norm(), fd_tol);
    }
    v.details(json!({ "step": step }));
    Ok(Report::verdict(&v))
}

fn cmd_schur_test(ctx: &mut Ctx, path: &Path) -> Result<Report, Failure> {
    let f = input::series(&mut ctx.inputs, path)?;
    let n = ctx.trunc.max(1);
    let mut symbols: Vec<QuatMatrix> = f.coeffs().iter().take(n).cloned().collect();
    if symbols.is_empty() {
        symbols.push(QuatMatrix::zeros(f.rows(), f.cols()));
    }
    let mut trace = Vec::new();
    let mut size = 1;
    while size < n {
        trace.push(json!([size, toeplitz::section_norm(&ToeplitzSection::lower(&symbols, size)?)?]));
        size *= 2;
    }
    let mut v = ctx.verdict();
    let details = match schur::verify_schur(&f, n, ctx.tol) {
        SchurVerdict::Accepted(m) => {
            let norm = 1.0 - m.slack();
            trace.push(json!([n, norm]));
            v.check("section_norm", norm, 1.0 + ctx.tol);
            json!({ "verified_to": m.verified_to(), "norm_trace": trace })
        }
        SchurVerdict::Rejected { size, norm } => {
            v.check("section_norm", norm, 1.0 + ctx.tol);
            json!({ "violated_at": size, "norm_trace": trace })
        }
    };
    v.details(details);
    Ok(Report::verdict(&v))
}

fn stop_name(s: SchurStop) -> &'static str {
    match s {
        SchurStop::Steps => "steps",
        SchurStop::CoefficientsExhausted => "coefficients_exhausted",
        SchurStop::Unimodular => "unimodular",
    }
}

fn cmd_schur_algo(ctx: &mut Ctx, path: &Path, steps: usize) -> Result<Report, Failure> {
    ctx.inputs.arg("steps", &steps.to_string());
    let f = input::series(&mut ctx.inputs, path)?;
    let s = RealPowerSeries::from_axial(&f);
    let result = if s.shape() == (1, 1) {
        schur::schur_algorithm_scalar(&s, steps, ctx.tol).map(|r| {
            json!({ "parameters": r.parameters.into_iter().map(quat_json).collect::<Vec<_>>(), "stop": stop_name(r.stop) })
        })
    } else {
        schur::schur_algorithm_matrix(&s, steps, ctx.tol).map(|r| json!({ "parameters": r.parameters, "stop": stop_name(r.stop) }))
    };
    match result {
        Ok(json) => Ok(Report::value(json)),
        Err(Error::NonContractiveIterate { step, norm }) => Ok(Report {
            json: json!({ "error": "non_contractive_iterate", "step": step, "norm": norm }),
            passed: false,
        }),
        Err(e) => Err(e.into()),
    }
}

fn random_points(kernel: Kernel, real_axis: bool, count: usize, seed: u64) -> Vec<Quaternion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut uniform = |lo: f64, hi: f64| rng.random_range(lo..hi);
    (0..count)
        .map(|_| match (kernel, real_axis) {
            (Kernel::KP, _) => Quaternion::real(uniform(0.05, 1.0)),
            (_, true) => Quaternion::real(uniform(-0.3, 0.3)),
            _ => loop {
                let q = Quaternion::new(uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0));
                if Ellipsoid::contains(q) {
                    break q * 0.6;
                }
            },
        })
        .collect()
}

/// Bound on `(A(t) B(s)*)` errors from value errors `ea`, `eb` of operands of norm `na`, `nb`.
fn product_error(na: f64, ea: f64, nb: f64, eb: f64) -> f64 {
    ea * nb + na * eb + ea * eb
}

/// Series for K_S or L_Phi from `--series` or `--generator`.
fn kernel_series(ctx: &mut Ctx, series: Option<&Path>, generator: Option<&Path>) -> Result<AxialSeries, Failure> {
    match (series, generator) {
        (Some(p), None) => input::series(&mut ctx.inputs, p),
        (None, Some(p)) => {
            let g: HerglotzGenerator = ctx.inputs.typed(p)?;
            Ok(herglotz::herglotz_coefficients(&g, 4 * ctx.trunc.max(16)))
        }
        (Some(_), Some(_)) => Err(Failure::usage("give either --series or --generator, not both")),
        (None, None) => Err(Failure::usage("this kernel needs --series (or --generator for l-phi)")),
    }
}

fn real_gram(
    points: &[f64],
    kernel: impl Fn(f64, f64) -> Result<(QuatMatrix, f64), Error>,
) -> Result<Gram, Failure> {
    let n = points.len();
    let mut blocks = Vec::new();
    let mut bound: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (k, b) = kernel(points[i], points[j])?;
            bound = bound.max(b);
            blocks.push(k);
        }
    }
    let r = blocks.first().map(|b| b.rows()).unwrap_or(0);
    let mut m = QuatMatrix::zeros(r * n, r * n);
    for (idx, b) in blocks.iter().enumerate() {
        m.set_block((idx / n) * r, (idx % n) * r, b);
    }
    let m = (&m + &m.adjoint()).scale(0.5);
    Ok(Gram { matrix: m, bound })
}

struct GramArgs<'a> {
    kernel: Kernel,
    points: Option<&'a Path>,
    random: Option<usize>,
    series: Option<&'a Path>,
    generator: Option<&'a Path>,
    real_axis: bool,
    out: Option<&'a Path>,
    format: Format,
}

fn cmd_gram(ctx: &mut Ctx, a: GramArgs) -> Result<Report, Failure> {
    let real_axis = a.real_axis || matches!(a.kernel, Kernel::KP);
    let pts: Vec<Quaternion> = match (a.points, a.random) {
        (Some(p), None) => input::points(&ctx.inputs.file(p)?, &p.display().to_string())?,
        (None, Some(k)) => {
            ctx.inputs.arg("random", &k.to_string());
            ctx.inputs.arg("seed", &ctx.seed.to_string());
            random_points(a.kernel, real_axis, k, ctx.seed)
        }
        _ => return Err(Failure::usage("give a points file or --random K")),
    };
    if pts.is_empty() {
        return Err(Failure::usage("no sample points"));
    }
    let trunc = ctx.trunc;
    let series = match a.kernel {
        Kernel::KS | Kernel::LPhi => Some(kernel_series(ctx, a.series, a.generator)?),
        _ => None,
    };
    let gram = if real_axis {
        let xs = input::real_points(&json!(pts.iter().map(|q| quat_json(*q)).collect::<Vec<_>>()), "points")?;
        let ts: Vec<f64> = xs.iter().map(|x| 3.0 * x).collect();
        match a.kernel {
            Kernel::KP => {
                if let Some(x) = xs.iter().find(|&&x| x <= 0.0) {
                    return Err(Failure::usage(format!("K_P needs positive points, got {x}")));
                }
                real_gram(&ts, |t, s| halfspace::kernel_k_p_real(t, s, trunc).map(|(k, b)| (QuatMatrix::scalar(Quaternion::real(k)), b)))?
            }
            _ => {
                if let Some(x) = xs.iter().find(|&&x| x.abs() >= 1.0 / 3.0) {
                    return Err(Failure::usage(format!("real point {x} is outside the ellipsoid")));
                }
                let zero = AxialSeries::zero(1, 1);
                let f = series.as_ref().unwrap_or(&zero);
                let kernel = a.kernel;
                real_gram(&ts, |t, s| {
                    let (ft, et) = f.symbol(t)?;
                    let (fs, es) = f.symbol(s)?;
                    let err = product_error(quatlin::operator_norm(&ft), et, quatlin::operator_norm(&fs), es);
                    Ok(match kernel {
                        Kernel::LPhi => (herglotz::kernel_l_phi_symbol(&ft, &fs, t, s), (et + es) / (2.0 * (1.0 - t * s))),
                        Kernel::KS => (schur::kernel_k_s_symbol(&ft, &fs, t, s), err / (1.0 - t * s)),
                        _ => (schur::kernel_k_s_symbol(&QuatMatrix::zeros(1, 1), &QuatMatrix::zeros(1, 1), t, s), 0.0),
                    })
                })?
            }
        }
    } else {
        if let Some(x) = pts.iter().find(|&&x| !Ellipsoid::contains(x)) {
            return Err(Failure::usage(format!("point {x} is outside the ellipsoid")));
        }
        match a.kernel {
            Kernel::Hardy => schur::gram_matrix(|x, y| schur::hardy_kernel(x, y, trunc).map(|(k, b)| (QuatMatrix::scalar(k), b)), &pts)?,
            Kernel::KS => {
                let f = series.expect("loaded above");
                let coeff_bound = f.coeff_bound().max(f.tail().sup());
                schur::gram_matrix(|x, y| schur::kernel_with_bound(&f, coeff_bound, x, y, trunc), &pts)?
            }
            Kernel::LPhi => {
                let f = series.expect("loaded above");
                schur::gram_matrix(|x, y| herglotz::kernel_l_phi(&f, x, y, trunc), &pts)?
            }
            Kernel::KP => unreachable!("K_P is evaluated on the real axis"),
        }
    };
    let min = quatlin::min_eigenvalue(&gram.matrix)?;
    // an entrywise error b moves eigenvalues by at most (rows) b
    let tail = gram.matrix.rows() as f64 * gram.bound;
    let mut v = ctx.verdict();
    v.check("negative_eigenvalue", (-min).max(0.0), ctx.tol + tail);
    let export = json!({
        "points": pts.iter().map(|q| quat_json(*q)).collect::<Vec<_>>(),
        "real_axis": real_axis,
        "gram": gram.matrix,
        "entry_bound": gram.bound,
        "min_eigenvalue": min,
    });
    match a.out {
        Some(out) => {
            let text = match a.format {
                Format::Json => serde_json::to_string_pretty(&export).expect("serializable"),
                Format::Csv => gram_csv(&gram.matrix),
            };
            fs::write(out, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", out.display())))?;
            v.details(json!({ "min_eigenvalue": min, "entry_bound": gram.bound, "out": out.display().to_string() }));
        }
        None if a.format == Format::Csv => return Err(Failure::usage("--format csv needs --out")),
        None => {
            v.details(export);
        }
    }
    Ok(Report::verdict(&v))
}

/// One line per row; real matrices print one number per entry, others four.
fn gram_csv(m: &QuatMatrix) -> String {
    let real = m.max_imag() == 0.0;
    let mut out = String::new();
    for i in 0..m.rows() {
        let cells: Vec<String> = (0..m.cols())
            .flat_map(|j| {
                let q = m.get(i, j);
                if real {
                    vec![q.x0.to_string()]
                } else {
                    <[f64; 4]>::from(q).iter().map(|c| c.to_string()).collect()
                }
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn cmd_blaschke(ctx: &mut Ctx, path: &Path, terms: usize) -> Result<Report, Failure> {
    ctx.inputs.arg("terms", &terms.to_string());
    let col: Colligation = ctx.inputs.typed(path)?;
    let mut v = ctx.verdict();
    match realize::blaschke_isometry_check(&col, terms, ctx.tol) {
        Ok(r) => {
            v.check("gram_residual", r.gram_residual, r.remainder + ctx.tol);
            v.check("lag_residual", r.lag_residual, r.lag_remainder + ctx.tol);
            v.details(json!({
                "terms": r.n_terms,
                "tail": r.remainder,
                "lag_tail": r.lag_remainder,
                "next_state_norm_sqr": r.next_state_norm_sqr,
                "identity_residual": r.identity_residual,
            }));
        }
        Err(Error::NotUnitary { residual }) => {
            v.check("unitarity", residual, COLLIGATION_TOL);
        }
        Err(Error::NonDecayingState { tail }) => {
            eprintln!("warning: state does not decay within {terms} terms (tail {tail:e}); raise --terms");
            v.check("state_tail", tail, MAX_REMAINDER);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Report::verdict(&v))
}

fn cmd_herglotz(ctx: &mut Ctx, path: &Path) -> Result<Report, Failure> {
    let raw = ctx.inputs.file(path)?;
    let what = path.display().to_string();
    let n = ctx.trunc.max(1);
    let (coeffs, size) = if raw.get("V").is_some() {
        let g: HerglotzGenerator = input::parse(raw, &what)?;
        (herglotz::herglotz_coefficients(&g, n).coeffs().to_vec(), n)
    } else {
        let f: AxialSeries = input::parse(raw, &what)?;
        // without a finite tail only the stored coefficients are known
        let size = if f.tail() == appell_schur::TailModel::Finite { n } else { n.min(f.len()) };
        (f.coeffs().to_vec(), size)
    };
    if coeffs.is_empty() || size == 0 {
        return Err(Failure::usage("no coefficients"));
    }
    let h = herglotz::verify_herglotz(&coeffs, size, ctx.tol)?;
    let mut v = ctx.verdict();
    v.check("negative_eigenvalue", (-h.min_eigenvalue).max(0.0), ctx.tol);
    v.details(json!({ "size": h.size, "min_eigenvalue": h.min_eigenvalue }));
    Ok(Report::verdict(&v))
}

fn cmd_halfspace(ctx: &mut Ctx, cmd: &HalfspaceCommand) -> Result<Report, Failure> {
    match cmd {
        HalfspaceCommand::Eval { n, point } => {
            let x = input::point_arg(&mut ctx.inputs, "point", point)?;
            let mut out = json!({ "n": n, "point": quat_json(x) });
            if x.norm() < 1.0 {
                let (w, b) = halfspace::eval_w(*n, x, ctx.trunc)?;
                out["W"] = quat_json(w);
                out["tail_bound"] = json!(b);
            }
            if x.imag_norm() == 0.0 {
                halfspace::disk_variable(x.x0)?;
                out["real_form"] = json!(halfspace::w_real(*n, 3.0 * x.x0));
            }
            if out.get("W").is_none() && out.get("real_form").is_none() {
                return Err(Failure::usage(format!("point {x} is outside the region of convergence")));
            }
            Ok(Report::value(out))
        }
        HalfspaceCommand::Lyapunov { x0, y0 } => {
            ctx.inputs.arg("x0", &x0.to_string());
            ctx.inputs.arg("y0", &y0.to_string());
            let r = halfspace::lyapunov_residual(*x0, *y0, ctx.trunc)?;
            let (k, b) = halfspace::kernel_k_p_real(3.0 * x0, 3.0 * y0, ctx.trunc)?;
            let mut v = ctx.verdict();
            v.check("lyapunov", r, ctx.tol);
            v.details(json!({ "kernel": k, "tail_bound": b }));
            Ok(Report::verdict(&v))
        }
        HalfspaceCommand::Cayley { colligation, points } => {
            ctx.inputs.arg("points", points);
            let col: Colligation = ctx.inputs.typed(colligation)?;
            let pts: Value = serde_json::from_str(points).map_err(|e| Failure::usage(format!("--points: {e}")))?;
            let xs = input::real_points(&pts, "--points")?;
            let values: Vec<QuatMatrix> =
                xs.iter().map(|&x| halfspace::caratheodory_from_colligation(&col, x)).collect::<Result<_, _>>()?;
            let gram = halfspace::caratheodory_gram(|x| halfspace::caratheodory_from_colligation(&col, x), &xs)?;
            let min = halfspace::gram_min_eigenvalue(&gram)?;
            let mut v = ctx.verdict();
            v.check("negative_eigenvalue", (-min).max(0.0), ctx.tol);
            v.details(json!({ "points": xs, "values": values, "gram": gram.matrix, "min_eigenvalue": min }));
            Ok(Report::verdict(&v))
        }
    }
}

fn cmd_realize(ctx: &mut Ctx, cmd: &RealizeCommand) -> Result<Report, Failure> {
    match cmd {
        RealizeCommand::Eval { input, t } => {
            let form = input::real_form(&mut ctx.inputs, input)?;
            Ok(Report::value(json!({ "t": t, "value": form.value(*t)? })))
        }
        RealizeCommand::Invert { input } => {
            let form = input::real_form(&mut ctx.inputs, input)?;
            Ok(Report::value(serde_json::to_value(form.inverse()?).expect("serializable")))
        }
        RealizeCommand::Multiply { left, right } => {
            let l = input::real_form(&mut ctx.inputs, left)?;
            let r = input::real_form(&mut ctx.inputs, right)?;
            Ok(Report::value(serde_json::to_value(l.product(&r)?).expect("serializable")))
        }
    }
}

fn run(cli: Cli) -> Result<Report, Failure> {
    if !(cli.tol >= 0.0) {
        return Err(Failure::usage("--tol must be nonnegative"));
    }
    let mut ctx = Ctx { trunc: cli.trunc, tol: cli.tol, seed: cli.seed, inputs: Inputs::default() };
    match &cli.command {
        Command::Appell { m, point } => cmd_appell(&mut ctx, *m, point),
        Command::FueterCheck { m, point, step, fd_tol } => cmd_fueter(&mut ctx, *m, point, *step, *fd_tol),
        Command::SchurTest { series } => cmd_schur_test(&mut ctx, series),
        Command::SchurAlgo { series, steps } => cmd_schur_algo(&mut ctx, series, *steps),
        Command::Gram { kernel, points, random, series, generator, real_axis, out, format } => cmd_gram(
            &mut ctx,
            GramArgs {
                kernel: *kernel,
                points: points.as_deref(),
                random: *random,
                series: series.as_deref(),
                generator: generator.as_deref(),
                real_axis: *real_axis,
                out: out.as_deref(),
                format: *format,
            },
        ),
        Command::Blaschke { colligation, terms } => cmd_blaschke(&mut ctx, colligation, *terms),
        Command::HerglotzTest { input } => cmd_herglotz(&mut ctx, input),
        Command::Halfspace(cmd) => cmd_halfspace(&mut ctx, cmd),
        Command::Realize(cmd) => cmd_realize(&mut ctx, cmd),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            // a closed pipe is not an error worth a panic
            let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
