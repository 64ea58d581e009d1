//! Command-line front end for `confinv-core`.
//!
//! Domains come from JSON spec files (see [`domain`]). Results are written
//! as CSV or JSON with 15 significant digits.

pub mod args;
pub mod domain;
pub mod format;

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use confinv_core::{
    conformal_radius, hyperbolic_distance_field, interior_point, oracle_quad_r, oracle_reduced_modulus,
    quad_modulus, quad_modulus_general, reduced_modulus, BoundaryCurve, Base, Complex64, Error,
    HyperbolicMetric, OracleCase, PolygonHarmonicMeasure, QuadConfig, QuadModulusTrace, SlitCase,
    SolverConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use args::{Cli, Command, Format, GlobalOpts};
use args::{BaseOpts, Range};
use domain::{Discretization, DomainSpec, Shape, SlitKind};
use format::{field_csv, field_json, finite, g15, row};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_NOT_CONVERGED: i32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Validation(String),
    Solver(String),
    /// The quadrilateral iteration hit its cap; output was still written.
    NotConverged { iterations: usize },
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Solver(m) => write!(f, "solver failure: {m}"),
            CliError::NotConverged { iterations } => {
                write!(f, "quadrilateral iteration did not converge in {iterations} iterations")
            }
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Solver(_) => EXIT_SOLVER,
            CliError::NotConverged { .. } => EXIT_NOT_CONVERGED,
            CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_solver_failure() {
            CliError::Solver(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

/// Settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub sizes: Discretization,
    pub solver: SolverConfig,
    pub quad_eps: f64,
    pub quad_max: usize,
    pub format: Format,
}

impl RunConfig {
    pub fn from_opts(g: &GlobalOpts) -> Result<Self, CliError> {
        if !(g.gmres_tol > 0.0 && g.gmres_tol < 1e-2) {
            return Err(invalid("--gmres-tol must lie in (0, 1e-2)"));
        }
        if !(g.quad_eps > 0.0 && g.quad_eps < 1e-2) {
            return Err(invalid("--quad-eps must lie in (0, 1e-2)"));
        }
        if g.max_gmres == 0 || g.quad_max == 0 {
            return Err(invalid("iteration caps must be positive"));
        }
        if let Some(p) = g.grading_p {
            if !(p >= 1.0 && p.is_finite()) {
                return Err(invalid("--grading-p must be at least 1"));
            }
        }
        Ok(Self {
            sizes: Discretization { n: g.n, ns: g.ns, grading_p: g.grading_p },
            solver: SolverConfig {
                gmres_tol: g.gmres_tol,
                max_iters: g.max_gmres,
                ..SolverConfig::default()
            },
            quad_eps: g.quad_eps,
            quad_max: g.quad_max,
            format: g.format,
        })
    }
}

/// Run a parsed command and write its output.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = RunConfig::from_opts(&cli.global)?;
    let grid = cli.global.grid.as_ref();
    let (body, status) = match &cli.command {
        Command::Hypdist { spec, z1, z2, alpha } => (cmd_hypdist(&load(spec)?, *z1, *z2, *alpha, grid, &cfg)?, Ok(())),
        Command::Redmod { spec, base, sweep, range } => {
            let spec = load(spec)?;
            let body = if *sweep {
                cmd_redmod_sweep(&spec, *range, &cfg)?
            } else {
                cmd_invariant(&spec, base, Invariant::ReducedModulus, &cfg)?
            };
            (body, Ok(()))
        }
        Command::Confrad { spec, base } => (cmd_invariant(&load(spec)?, base, Invariant::ConformalRadius, &cfg)?, Ok(())),
        Command::Harm { spec, side, sum, points, random, seed, alpha } => {
            let side = match (side, sum) {
                (_, true) => None,
                (Some(0), _) | (None, false) => return Err(invalid("--side is 1-based")),
                (Some(k), _) => Some(k - 1),
            };
            let request = HarmRequest { side, points: points.clone(), random: random.map(|n| (n, *seed)), alpha: *alpha };
            (cmd_harm(&load(spec)?, &request, grid, &cfg)?, Ok(()))
        }
        Command::Quadmod { spec, angles, params, pi, alpha, oracle, trace } => {
            let scale = if *pi { PI } else { 1.0 };
            let marks = match (spec, angles, params) {
                (None, Some(a), _) => Marks::Angles(a.map(|v| v * scale)),
                (Some(path), None, Some(t)) => Marks::Params { spec: load(path)?, t: t.map(|v| v * scale), alpha: *alpha },
                _ => return Err(invalid("give either --angles or a domain file with --params")),
            };
            let (body, trace_csv, result) = cmd_quadmod(&marks, *oracle, &cfg)?;
            if let Some(path) = trace {
                write_file(path, &trace_csv)?;
            }
            let status = if result.converged {
                Ok(())
            } else {
                Err(CliError::NotConverged { iterations: result.iterations })
            };
            (body, status)
        }
    };
    match &cli.global.out {
        Some(path) => write_file(path, &body)?,
        None => print!("{body}"),
    }
    status
}

fn load(path: &Path) -> Result<DomainSpec, CliError> {
    DomainSpec::from_path(path)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn json_text(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn bounded_curve(spec: &DomainSpec, cfg: &RunConfig) -> Result<BoundaryCurve, CliError> {
    if spec.is_unbounded() {
        return Err(invalid("this command needs a bounded domain"));
    }
    spec.build(cfg.sizes)
}

fn check_alpha(curve: &BoundaryCurve, alpha: Option<Complex64>) -> Result<Complex64, CliError> {
    match alpha {
        Some(a) if !curve.contains(a) => Err(invalid(format!("alpha {a} is not inside the domain"))),
        Some(a) => Ok(a),
        None => Ok(interior_point(curve)),
    }
}

/// `ρ(z1, z2)`, or `ρ(z1, ·)` over the grid.
pub fn cmd_hypdist(
    spec: &DomainSpec,
    z1: Complex64,
    z2: Option<Complex64>,
    alpha: Option<Complex64>,
    grid: Option<&confinv_core::GridSpec>,
    cfg: &RunConfig,
) -> Result<String, CliError> {
    let curve = bounded_curve(spec, cfg)?;
    let alpha = check_alpha(&curve, alpha)?;
    if let Some(grid) = grid {
        if z2.is_some() {
            return Err(invalid("--z2 and --grid are exclusive"));
        }
        let field = hyperbolic_distance_field(&curve, alpha, z1, grid, &cfg.solver)?;
        return Ok(match cfg.format {
            Format::Csv => field_csv(&field),
            Format::Json => json_text(field_json(&field)),
        });
    }
    let z2 = z2.ok_or_else(|| invalid("give --z2 or --grid"))?;
    let d = HyperbolicMetric::new(&curve, alpha, &cfg.solver)?.distance(z1, z2)?;
    Ok(match cfg.format {
        Format::Csv => format!("{}\n", g15(d)),
        Format::Json => json_text(json!({"z1": [z1.re, z1.im], "z2": [z2.re, z2.im], "distance": d})),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariant {
    ReducedModulus,
    ConformalRadius,
}

fn resolve_base(spec: &DomainSpec, base: &BaseOpts) -> Result<Base, CliError> {
    if spec.is_unbounded() {
        if base.alpha.is_some() {
            return Err(invalid("unbounded domains take the invariant at infinity; drop --alpha"));
        }
        return Ok(Base::Infinity { beta: base.beta });
    }
    if base.infinity || base.beta.is_some() {
        return Err(invalid("--infinity and --beta need an unbounded domain (exterior ellipse)"));
    }
    let default = match spec.slit_case() {
        Some(case) => case.opened_base_point(),
        None => Complex64::new(0.0, 0.0),
    };
    Ok(Base::Point(base.alpha.unwrap_or(default)))
}

/// Reduced modulus or conformal radius at a single base point.
pub fn cmd_invariant(spec: &DomainSpec, base: &BaseOpts, what: Invariant, cfg: &RunConfig) -> Result<String, CliError> {
    let base = resolve_base(spec, base)?;
    let curve = spec.build(cfg.sizes)?;
    if let Base::Point(a) = base {
        if !curve.contains(a) {
            return Err(invalid(format!("base point {a} is not inside the domain; pass --alpha")));
        }
    }
    let (name, value) = match what {
        Invariant::ReducedModulus => ("reduced_modulus", reduced_modulus(&curve, base, &cfg.solver)?),
        Invariant::ConformalRadius => ("conformal_radius", conformal_radius(&curve, base, &cfg.solver)?),
    };
    Ok(match cfg.format {
        Format::Csv => format!("{}\n", g15(value)),
        Format::Json => json_text(json!({ name: value })),
    })
}

/// One member of a family: the curve, its base point and the exact value.
struct Member {
    curve: BoundaryCurve,
    base: Base,
    exact: Option<f64>,
}

/// Reduced modulus over a one-parameter family, against the closed form
/// where there is one. The family follows the domain kind:
///
/// * exterior ellipse: `cos t - i r sin t` at `∞`, parameter `r`;
/// * interior ellipse: `cosh r cos t + i sinh r sin t` at 0, parameter `r`;
/// * opened slit: parameter `r` (with the given `a` for G3);
/// * regular polygon: parameter is the number of sides (no closed form).
pub fn cmd_redmod_sweep(spec: &DomainSpec, range: Option<Range>, cfg: &RunConfig) -> Result<String, CliError> {
    let res = spec.resolve(cfg.sizes);
    let (default_range, member): (Range, Box<dyn Fn(f64) -> Result<Member, CliError>>) = match spec.shape {
        Shape::Ellipse { exterior: true, .. } => (
            Range { start: 0.05, stop: 1.0, step: 0.05 },
            Box::new(move |r| {
                Ok(Member {
                    curve: confinv_core::make_ellipse(1.0, r, res.n, confinv_core::EllipseKind::Exterior)?,
                    base: Base::Infinity { beta: None },
                    exact: Some(oracle_reduced_modulus(OracleCase::ExteriorEllipse { r })?),
                })
            }),
        ),
        Shape::Ellipse { exterior: false, .. } => (
            Range { start: 0.1, stop: 2.0, step: 0.1 },
            Box::new(move |r: f64| {
                Ok(Member {
                    curve: confinv_core::make_ellipse(r.cosh(), r.sinh(), res.n, confinv_core::EllipseKind::Interior)?,
                    base: Base::Point(Complex64::new(0.0, 0.0)),
                    exact: Some(oracle_reduced_modulus(OracleCase::InteriorEllipse { r })?),
                })
            }),
        ),
        Shape::OpenedSlit { case, a, .. } => {
            let start = if case == SlitKind::G3 { ((a + 0.05) * 20.0).ceil() / 20.0 } else { 0.05 };
            (
                Range { start, stop: 0.95, step: 0.05 },
                Box::new(move |r| {
                    let slit = match case {
                        SlitKind::G1 => SlitCase::G1 { r },
                        SlitKind::G2 => SlitCase::G2 { r },
                        SlitKind::G3 => SlitCase::G3 { r, a },
                    };
                    Ok(Member {
                        curve: confinv_core::make_opened_slit_disk(slit, res.ns, res.grading_p)?,
                        base: Base::Point(slit.opened_base_point()),
                        exact: Some(oracle_reduced_modulus(OracleCase::Slit(slit))?),
                    })
                }),
            )
        }
        Shape::RegularPolygon { .. } => (
            Range { start: 3.0, stop: 12.0, step: 1.0 },
            Box::new(move |sides: f64| {
                if sides.fract() != 0.0 || sides < 3.0 {
                    return Err(invalid("polygon sweep values must be integers >= 3"));
                }
                let verts = confinv_core::regular_polygon_vertices(sides as usize);
                Ok(Member {
                    curve: confinv_core::make_polygon(&verts, res.ns, res.grading_p)?,
                    base: Base::Point(Complex64::new(0.0, 0.0)),
                    exact: None,
                })
            }),
        ),
        _ => return Err(invalid("--sweep supports ellipse, opened_slit and regular_polygon specs")),
    };
    let mut rows = Vec::new();
    for p in range.unwrap_or(default_range).values() {
        let m = member(p)?;
        let computed = reduced_modulus(&m.curve, m.base, &cfg.solver)?;
        let exact = m.exact.unwrap_or(f64::NAN);
        rows.push([p, computed, exact, (computed - exact).abs()]);
    }
    Ok(match cfg.format {
        Format::Csv => {
            let mut out = String::from("parameter,computed,exact,abs_error\n");
            for r in &rows {
                let _ = writeln!(out, "{}", row(r));
            }
            out
        }
        Format::Json => json_text(Value::Array(
            rows.iter()
                .map(|r| json!({"parameter": r[0], "computed": r[1], "exact": finite(r[2]), "abs_error": finite(r[3])}))
                .collect(),
        )),
    })
}

/// What `harm` should evaluate. `side` is 0-based; `None` is the sum.
#[derive(Debug, Clone, Default)]
pub struct HarmRequest {
    pub side: Option<usize>,
    pub points: Vec<Complex64>,
    pub random: Option<(usize, u64)>,
    pub alpha: Option<Complex64>,
}

/// Uniform samples of the bounding box that land inside the curve.
pub fn random_interior_points(curve: &BoundaryCurve, count: usize, seed: u64) -> Result<Vec<Complex64>, CliError> {
    let eta = curve.eta();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for z in eta {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y0 = y0.min(z.im);
        y1 = y1.max(z.im);
    }
    let margin = 2.0 * curve.max_spacing();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0usize;
    while out.len() < count {
        tries += 1;
        if tries > 1000 * count.max(1) {
            return Err(invalid("could not sample interior points"));
        }
        let z = Complex64::new(rng.gen_range(x0..x1), rng.gen_range(y0..y1));
        if curve.contains(z) && curve.node_distance(z) > margin {
            out.push(z);
        }
    }
    Ok(out)
}

pub fn cmd_harm(
    spec: &DomainSpec,
    req: &HarmRequest,
    grid: Option<&confinv_core::GridSpec>,
    cfg: &RunConfig,
) -> Result<String, CliError> {
    let vertices = spec.vertices().ok_or_else(|| invalid("harm needs a polygon, regular_polygon or rectangle spec"))?;
    let curve = bounded_curve(spec, cfg)?;
    let alpha = check_alpha(&curve, req.alpha)?;
    let res = spec.resolve(cfg.sizes);
    let hm = PolygonHarmonicMeasure::new(&vertices, alpha, res.ns, res.grading_p, &cfg.solver)?;
    if let Some(k) = req.side {
        if k >= hm.sides() {
            return Err(invalid(format!("--side must be between 1 and {}", hm.sides())));
        }
    }
    if let Some(grid) = grid {
        if !req.points.is_empty() || req.random.is_some() {
            return Err(invalid("--grid excludes --point and --random"));
        }
        let field = match req.side {
            Some(k) => hm.field(k, grid)?,
            None => hm.sum_field(grid)?,
        };
        return Ok(match cfg.format {
            Format::Csv => field_csv(&field),
            Format::Json => json_text(field_json(&field)),
        });
    }
    let mut points = req.points.clone();
    if let Some((count, seed)) = req.random {
        points.extend(random_interior_points(hm.map().curve(), count, seed)?);
    }
    if points.is_empty() {
        return Err(invalid("give --point, --random or --grid"));
    }
    let values = points
        .iter()
        .map(|&z| match req.side {
            Some(k) => hm.eval(k, z),
            None => hm.sum(z),
        })
        .collect::<Result<Vec<f64>, _>>()?;
    Ok(match cfg.format {
        Format::Csv => {
            let mut out = String::from("x,y,value\n");
            for (z, v) in points.iter().zip(&values) {
                let _ = writeln!(out, "{}", row(&[z.re, z.im, *v]));
            }
            out
        }
        Format::Json => json_text(Value::Array(
            points.iter().zip(&values).map(|(z, v)| json!({"x": z.re, "y": z.im, "value": v})).collect(),
        )),
    })
}

/// Marked points for `quadmod`.
#[derive(Debug, Clone)]
pub enum Marks {
    /// Points `e^{iθ}` on the unit circle.
    Angles([f64; 4]),
    /// Boundary parameters of a bounded domain.
    Params { spec: DomainSpec, t: [f64; 4], alpha: Option<Complex64> },
}

/// Returns the result text, the trace CSV and the raw trace.
pub fn cmd_quadmod(marks: &Marks, oracle: bool, cfg: &RunConfig) -> Result<(String, String, QuadModulusTrace), CliError> {
    let mut qcfg = QuadConfig {
        eps: cfg.quad_eps,
        max_iter: cfg.quad_max,
        solver: cfg.solver,
        ..QuadConfig::default()
    };
    let exact = match marks {
        Marks::Angles(a) => {
            qcfg.n_s = cfg.sizes.ns.unwrap_or(qcfg.n_s);
            qcfg.grading_p = cfg.sizes.grading_p.unwrap_or(qcfg.grading_p);
            if oracle {
                // Rotate so the first point sits at 1.
                let theta = [1, 2, 3].map(|k| (a[k] - a[0]).rem_euclid(2.0 * PI));
                Some(oracle_quad_r(theta[0], theta[1], theta[2])?)
            } else {
                None
            }
        }
        Marks::Params { .. } => None,
    };
    let trace = match marks {
        Marks::Angles(a) => quad_modulus(a.map(Complex64::cis), &qcfg)?,
        Marks::Params { spec, t, alpha } => {
            let curve = bounded_curve(spec, cfg)?;
            let alpha = check_alpha(&curve, *alpha)?;
            let res = spec.resolve(cfg.sizes);
            qcfg.n_s = res.ns;
            qcfg.grading_p = res.grading_p;
            quad_modulus_general(&curve, alpha, *t, &qcfg)?
        }
    };
    let mut trace_csv = String::from("k,r_k,abs_diff,delta_k\n");
    for (k, w) in trace.r_iterates.windows(2).enumerate() {
        let _ = writeln!(
            trace_csv,
            "{},{}",
            k + 1,
            row(&[w[1], (w[1] - w[0]).abs(), trace.factors.get(k).copied().unwrap_or(f64::NAN)])
        );
    }
    let body = match cfg.format {
        Format::Csv => {
            let mut out = String::from("r,iterations,converged");
            if exact.is_some() {
                out.push_str(",exact,abs_error");
            }
            let _ = write!(out, "\n{},{},{}", g15(trace.r), trace.iterations, trace.converged);
            if let Some(e) = exact {
                let _ = write!(out, ",{}", row(&[e, (trace.r - e).abs()]));
            }
            out.push('\n');
            out
        }
        Format::Json => {
            let mut v = json!({"r": trace.r, "iterations": trace.iterations, "converged": trace.converged});
            if let Some(e) = exact {
                v["exact"] = json!(e);
                v["abs_error"] = json!((trace.r - e).abs());
            }
            json_text(v)
        }
    };
    Ok((body, trace_csv, trace))
}
