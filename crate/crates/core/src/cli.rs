//! The `trapcc` command line.
//!
//! Every command prints a JSON envelope (or CSV where requested) to stdout.
//! Files are UTF-8 with LF line endings; floats are written in their
//! shortest round-trip form, so identical invocations give identical bytes.
//!
//! Exit codes: 0 success, 1 verification failed, 2 degenerate parameters,
//! 3 collision, 64 usage, 65 refused (unphysical), 74 I/O.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cc_oracle::{is_central_configuration, PlanarSystem, ResidualReport};
use crate::dynamics::{
    init_relative_equilibrium, integrate, rigidity_metrics, IntegratorConfig, RigidityReport, Termination, Trajectory,
};
use crate::error::{DynamicsError, GeometryError};
use crate::geometry::{build_configuration_relaxed, TrapezoidParams, DEFAULT_MAX_BETA};
use crate::mass_solver::{solve_masses, top_pair_defect, MassSolution, RegionLabel};
use crate::regions::{
    audit_published_formulas, compare_exact_vs_approx, exact_boundary, raster, AxisSpec, BoundaryFunction,
    BoundaryOutcome, FixedAxis, RasterGrid,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_DEGENERATE: u8 = 2;
pub const EXIT_COLLISION: u8 = 3;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_REFUSED: u8 = 65;
pub const EXIT_IO: u8 = 74;

/// Relative pairwise-distance deviation `simulate` accepts as rigid.
pub const RIGIDITY_THRESHOLD: f64 = 1e-5;

pub const RASTER_HEADER: &str = "alpha,beta,f1,f3,m,M,label";
pub const BOUNDARY_HEADER: &str = "fixed,root,f_value,method";
pub const MASSES_HEADER: &str = "alpha,beta,m,M,lambda,f1,f2,f3,a,b,r_A,r_B,label,top_pair_defect";
pub const THREADS_ENV: &str = "TRAPCC_THREADS";

/// Relative top-pair defect above which the closed-form masses are flagged
/// as not central.
const DEFECT_WARNING_LEVEL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "trapcc",
    version,
    about = "Isosceles-trapezoid four-body central configurations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form masses, sign functions and region label at one point.
    Masses(MassesArgs),
    /// Check the closed-form configuration against the N-body CC equations.
    Verify(VerifyArgs),
    /// Label a grid of the (alpha, beta) plane and write it as CSV.
    Raster(RasterArgs),
    /// Exact or published boundary curves of f1 / f3.
    Boundary(BoundaryArgs),
    /// Integrate the relative equilibrium and report rigidity.
    Simulate(SimulateArgs),
    /// Compare the published approximations with the exact functions.
    CompareApprox(CompareArgs),
    /// Report where the published boundary formulas are real-valued.
    Audit(AuditArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    F1,
    F3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    Alpha,
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Published,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

fn parse_range(s: &str) -> Result<Range, String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got `{s}`"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    Ok(Range { lo, hi })
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
}

#[derive(Debug, Args)]
pub struct MassesArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub point: PointArgs,
    /// Residual tolerance relative to the mean attraction magnitude.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, value_parser = parse_range, default_value = "0:1")]
    pub alpha_range: Range,
    #[arg(long, value_parser = parse_range, default_value = "0:1")]
    pub beta_range: Range,
    /// Cells per axis, unless overridden by --n-alpha / --n-beta.
    #[arg(long)]
    pub resolution: Option<usize>,
    #[arg(long)]
    pub n_alpha: Option<usize>,
    #[arg(long)]
    pub n_beta: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RasterArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BoundaryArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    /// The axis held fixed; the root is searched along the other one.
    #[arg(long, value_enum)]
    pub axis: AxisArg,
    /// Comma-separated values of the fixed axis.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub fixed: Vec<f64>,
    #[arg(long, value_enum, default_value = "exact")]
    pub method: Method,
    /// Search interval on the free axis (exact method).
    #[arg(long, value_parser = parse_range)]
    pub interval: Option<Range>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub point: PointArgs,
    /// Horizon in rotation periods (2 pi each).
    #[arg(long, default_value_t = 1.0)]
    pub periods: f64,
    #[arg(long, default_value_t = crate::dynamics::DEFAULT_STEP)]
    pub dt: f64,
    #[arg(long, default_value_t = crate::dynamics::DEFAULT_STRIDE)]
    pub stride: usize,
    /// Integrate even when a mass is not positive.
    #[arg(long)]
    pub force: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct OutputEnvelope<P: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub parameters: Value,
    pub payload: P,
    pub warnings: Vec<String>,
}

/// Formats a float in its shortest round-trip form; exponent notation
/// outside `[1e-5, 1e16)`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else if x == 0.0 || (1e-5..1e16).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

enum Failure {
    Usage(String),
    Degenerate(String),
    Refused(String),
    Io(PathBuf, io::Error),
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Ctx<'a> {
    argv: Vec<String>,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    /// Worker pool capped by `TRAPCC_THREADS`; the global pool otherwise.
    pool: Option<rayon::ThreadPool>,
}

impl Ctx<'_> {
    fn envelope<P: Serialize>(&self, parameters: Value, payload: P, warnings: Vec<String>) -> OutputEnvelope<P> {
        OutputEnvelope {
            tool: "trapcc",
            version: env!("CARGO_PKG_VERSION"),
            command: std::iter::once("trapcc".to_string())
                .chain(self.argv.iter().skip(1).cloned())
                .collect(),
            parameters,
            payload,
            warnings,
        }
    }

    fn emit_json<P: Serialize>(&mut self, envelope: &OutputEnvelope<P>, out: Option<&Path>) -> Result<(), Failure> {
        let text = to_json(envelope);
        match out {
            Some(path) => write_file(path, &text),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io(PathBuf::from("<stdout>"), e)),
        }
    }
}

fn to_json<P: Serialize>(value: &P) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("envelope serializes");
    text.push('\n');
    text
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_os_string();
    name.push(".json");
    PathBuf::from(name)
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Io(path.to_path_buf(), e))
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        argv,
        stdout,
        stderr,
        pool: None,
    };
    let result = thread_pool().and_then(|pool| {
        ctx.pool = pool;
        dispatch(&cli.command, &mut ctx)
    });
    match result {
        Ok(code) => code,
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Usage(m) => (EXIT_USAGE, format!("usage error: {m}")),
                Failure::Degenerate(m) => (EXIT_DEGENERATE, format!("degenerate: {m}")),
                Failure::Refused(m) => (EXIT_REFUSED, format!("refused: {m}")),
                Failure::Io(path, e) => (EXIT_IO, format!("I/O error on {}: {e}", path.display())),
            };
            let _ = writeln!(ctx.stderr, "trapcc: {message}");
            code
        }
    }
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>, Failure> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_ENV} must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map(Some)
        .map_err(|e| Failure::Usage(format!("cannot build worker pool: {e}")))
}

fn dispatch(command: &Command, ctx: &mut Ctx<'_>) -> Result<u8, Failure> {
    match command {
        Command::Masses(args) => cmd_masses(args, ctx),
        Command::Verify(args) => cmd_verify(args, ctx),
        Command::Raster(args) => cmd_raster(args, ctx),
        Command::Boundary(args) => cmd_boundary(args, ctx),
        Command::Simulate(args) => cmd_simulate(args, ctx),
        Command::CompareApprox(args) => cmd_compare_approx(args, ctx),
        Command::Audit(args) => cmd_audit(args, ctx),
    }
}

fn solve_point(point: &PointArgs) -> Result<(TrapezoidParams, MassSolution), Failure> {
    let params = TrapezoidParams::new(point.alpha, point.beta)?;
    let sol = solve_masses(&params).map_err(|e| Failure::Degenerate(e.to_string()))?;
    Ok((params, sol))
}

fn mass_warnings(sol: &MassSolution) -> Vec<String> {
    let mut warnings = Vec::new();
    if sol.top_mass <= 0.0 || sol.base_mass <= 0.0 {
        warnings.push(format!(
            "NEGATIVE-MASS: m={}, M={}; the solution is algebraic only, not physical",
            fmt_f64(sol.top_mass),
            fmt_f64(sol.base_mass)
        ));
    }
    let defect = top_pair_defect(sol);
    if defect.abs() > DEFECT_WARNING_LEVEL * sol.params.alpha() {
        warnings.push(format!(
            "NOT-CENTRAL: the closed-form masses leave a horizontal force defect of {} on the top pair",
            fmt_f64(defect)
        ));
    }
    warnings
}

#[derive(Debug, Serialize)]
struct MassesPayload {
    alpha: f64,
    beta: f64,
    m: f64,
    #[serde(rename = "M")]
    big_m: f64,
    lambda: f64,
    f1: f64,
    f2: f64,
    f3: f64,
    a: f64,
    b: f64,
    #[serde(rename = "r_A")]
    r_a: f64,
    #[serde(rename = "r_B")]
    r_b: f64,
    label: RegionLabel,
    top_pair_defect: f64,
}

fn cmd_masses(args: &MassesArgs, ctx: &mut Ctx<'_>) -> Result<u8, Failure> {
    let (params, sol) = solve_point(&args.point)?;
    let cfg = build_configuration_relaxed(&params, sol.top_mass, sol.base_mass)?;
    let payload = MassesPayload {
        alpha: params.alpha(),
        beta: params.beta(),
        m: sol.top_mass,
        big_m: sol.base_mass,
        lambda: sol.lambda,
        f1: sol.signs.f1,
        f2: sol.signs.f2,
        f3: sol.signs.f3,
        a: sol.cubes.a,
        b: sol.cubes.b,
        r_a: cfg.r_a,
        r_b: cfg.r_b,
        label: RegionLabel::from_masses(sol.top_mass, sol.base_mass),
        top_pair_defect: top_pair_defect(&sol),
    };
    let warnings = mass_warnings(&sol);
    match args.format {
        Format::Json => {
            let parameters = json!({ "alpha": params.alpha(), "beta": params.beta(), "format": "json" });
            let envelope = ctx.envelope(parameters, payload, warnings);
            ctx.emit_json(&envelope, None)?;
        }
        Format::Csv => {
            let p = &payload;
            let row = [
                p.alpha, p.beta, p.m, p.big_m, p.lambda, p.f1, p.f2, p.f3, p.a, p.b, p.r_a, p.r_b,
            ]
            .iter()
            .map(|v| fmt_f64(*v))
            .chain([p.label.to_string(), fmt_f64(p.top_pair_defect)])
            .collect::<Vec<_>>()
            .join(",");
            writeln!(ctx.stdout, "{MASSES_HEADER}\n{row}").map_err(|e| Failure::Io("<stdout>".into(), e))?;
            for w in warnings {
                let _ = writeln!(ctx.stderr, "warning: {w}");
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct VerifyPayload {
    is_central: bool,
    #[serde(rename = "m")]
    top_mass: f64,
    #[serde(rename = "M")]
    base_mass: f64,
    relative_residual: f64,
    report: ResidualReport,
}

fn cmd_verify(args: &VerifyArgs, ctx: &mut Ctx<'_>) -> Result<u8, Failure> {
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(Failure::Usage(format!("tol must be positive, got {}", args.tol)));
    }
    let (params, sol) = solve_point(&args.point)?;
    let cfg = build_configuration_relaxed(&params, sol.top_mass, sol.base_mass)?;
    let system = PlanarSystem::from_trapezoid(&cfg).map_err(|e| Failure::Degenerate(e.to_string()))?;
    let (is_central, report) = is_central_configuration(&system, args.tol);
    let mut warnings = mass_warnings(&sol);
    warnings.retain(|w| w.starts_with("NEGATIVE-MASS"));
    let parameters = json!({ "alpha": params.alpha(), "beta": params.beta(), "tol": args.tol });
    let payload = VerifyPayload {
        is_central,
        top_mass: sol.top_mass,
        base_mass: sol.base_mass,
        relative_residual: report.relative_residual(),
        report,
    };
    let envelope = ctx.envelope(parameters, payload, warnings);
    ctx.emit_json(&envelope, None)?;
    Ok(if is_central { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn grid_axes(grid: &GridArgs, default_resolution: usize) -> Result<(AxisSpec, AxisSpec), Failure> {
    let resolution = grid.resolution.unwrap_or(default_resolution);
    let n_alpha = grid.n_alpha.unwrap_or(resolution);
    let n_beta = grid.n_beta.unwrap_or(resolution);
    if n_alpha == 0 || n_beta == 0 {
        return Err(Failure::Usage("resolution must be positive".into()));
    }
    Ok((
        AxisSpec::new(grid.alpha_range.lo, grid.alpha_range.hi, n_alpha),
        AxisSpec::new(grid.beta_range.lo, grid.beta_range.hi, n_beta),
    ))
}

fn build_grid(ctx: &Ctx<'_>, alpha: AxisSpec, beta: AxisSpec) -> Result<RasterGrid, Failure> {
    let grid = match &ctx.pool {
        Some(pool) => pool.install(|| raster(alpha, beta)),
        None => raster(alpha, beta),
    };
    grid.map_err(|e| Failure::Usage(e.to_string()))
}

fn grid_parameters(alpha: &AxisSpec, beta: &AxisSpec) -> Value {
    json!({
        "alpha_range": [alpha.lo, alpha.hi],
        "beta_range": [beta.lo, beta.hi],
        "n_alpha": alpha.count,
        "n_beta": beta.count,
        "sampling": "cell_centers",
    })
}

pub fn write_raster_csv<W: Write>(grid: &RasterGrid, out: &mut W) -> io::Result<()> {
    writeln!(out, "{RASTER_HEADER}")?;
    for c in &grid.cells {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_f64(c.alpha),
            fmt_f64(c.beta),
            fmt_f64(c.f1),
            fmt_f64(c.f3),
            fmt_opt(c.top_mass),
            fmt_opt(c.base_mass),
            c.label
        )?;
    }
    Ok(())
}

fn cmd_raster(args: &RasterArgs, ctx: &mut Ctx<'_>) -> Result<u8, Failure> {
    let (alpha, beta) = grid_axes(&args.grid, 400)?;
    let grid = build_grid(ctx, alpha, beta)?;
    let mut file = create(&args.out)?;
    write_raster_csv(&grid, &mut file)
        .and_then(|_| file.flush())
        .map_err(|e| Failure::Io(args.out.clone(), e))?;

    let counts: serde_json::Map<String, Value> = grid
        .label_counts()
        .into_iter()
        .map(|(label, n)| (label.to_string(), json!(n)))
        .collect();
    let payload = json!({
        "csv": args.out.display().to_string(),
        "header": RASTER_HEADER,
        "rows": grid.cells.len(),
        "order": "row_major_beta_then_alpha",
        "label_counts": counts,
    });
    let envelope = ctx.envelope(grid_parameters(&alpha, &beta), payload, Vec::new());
    ctx.emit_json(&envelope, Some(&sidecar_path(&args.out)))?;
    ctx.emit_json(&envelope, None)?;
    Ok(EXIT_OK)
}

fn cmd_boundary(args: &BoundaryArgs, ctx: &mut Ctx<'_>) -> Result<u8, Failure> {
    let which = match args.which {
        Which::F1 => BoundaryFunction::F1,
        Which::F3 => BoundaryFunction::F3,
    };
    let axis = match args.axis {
        AxisArg::Alpha => FixedAxis::Alpha,
        AxisArg::Beta => FixedAxis::Beta,
    };
    if args.method == Method::Published && axis != FixedAxis::Beta {
        return Err(Failure::Usage(
            "published boundaries give alpha as a function of beta; use --axis beta".into(),
        ));
    }
    let interval = args.interval.unwrap_or(match axis {
        FixedAxis::Alpha => Range {
            lo: 1e-9,
            hi: DEFAULT_MAX_BETA,
        },
        FixedAxis::Beta => Range { lo: 1e-9, hi: 1.0 },
    });

    let mut lines = vec![BOUNDARY_HEADER.to_string()];
    let mut warnings = Vec::new();
    for &fixed in &args.fixed {
        let line = match args.method {
            Method::Exact => {
                match exact_boundary(which, axis, fixed, interval.lo, interval.hi)
                    .map_err(|e| Failure::Usage(e.to_string()))?
                {
                    BoundaryOutcome::Root { value, f_value, .. } => {
                        format!("{},{},{},exact", fmt_f64(fixed), fmt_f64(value), fmt_f64(f_value))
                    }
                    BoundaryOutcome::NoSignChange { lo_value, hi_value } => {
                        warnings.push(format!(
                            "no sign change at fixed {}: endpoint values {} and {}",
                            fmt_f64(fixed),
                            fmt_f64(lo_value),
                            fmt_f64(hi_value)
                        ));
                        format!("{},no_sign_change,,exact", fmt_f64(fixed))
                    }
                }
            }
            Method::Published => match which.published(fixed) {
                Ok(alpha) => {
                    let f_value = TrapezoidParams::new(alpha, fixed)
                        .map(|p| fmt_f64(crate::regions::exact_value(which, &p)))
                        .unwrap_or_default();
                    format!("{},{},{},published", fmt_f64(fixed), fmt_f64(alpha), f_value)
                }
                Err(e) => {
                    warnings.push(format!("domain_error at beta {}: {e}", fmt_f64(fixed)));
                    format!("{},domain_error,,published", fmt_f64(fixed))
                }
            },
        };
        lines.push(line);
    }
    let mut text = lines.join("\n");
    text.push('\n');
    match &args.out {
        Some(path) => {
            write_file(path, &text)?;
            for w in &warnings {
                let _ = writeln!(ctx.stderr, "warning: {w}");
            }
        }
        None => {
            ctx.stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io("<stdout>".into(), e))?;
            for w in &warnings {
                let _ = writeln!(ctx.stderr, "warning: {w}");
            }
        }
    }
    Ok(EXIT_OK)
}

fn trajectory_header(bodies: usize) -> String {
    let mut cols = vec!["t".to_string()];
    for k in 1..=bodies {
        cols.push(format!("x{k}"));
        cols.push(format!("y{k}"));
    }
    cols.push("energy".into());
    cols.push("angmom".into());
    cols.join(",")
}

pub fn write_trajectory_csv<W: Write>(traj: Option<&Trajectory>, bodies: usize, out: &mut W) -> io::Result<()> {
    writeln!(out, "{}", trajectory_header(bodies))?;
    let Some(traj) = traj else { return Ok(()) };
    for (i, s) in traj.samples.iter().enumerate() {
        let mut row = vec![fmt_f64(s.time)];
        for b in &s.bodies {
            row.push(fmt_f64(b.position.x));
            row.push(fmt_f64(b.position.y));
        }
        row.push(fmt_f64(traj.energy_series[i]));
        row.push(fmt_f64(traj.angular_momentum_series[i]));
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct SimulatePayload {
    csv: String,
    #[serde(rename = "m")]
    top_mass: f64,
    #[serde(rename = "M")]
    base_mass: f64,
    rigidity: RigidityReport,
    rigid: bool,
    threshold: f64,
    termination: Termination,
}

fn cmd_simulate(args: &SimulateArgs, ctx: &mut Ctx<'_>) -> Result<u8, Failure> {
    if !(args.periods.is_finite() && args.periods >= 0.0) {
        return Err(Failure::Usage(format!(
            "periods must be non-negative, got {}",
            args.periods
        )));
    }
    if !(args.dt.is_finite() && args.dt > 0.0) {
        return Err(Failure::Usage(format!("dt must be positive, got {}", args.dt)));
    }
    if args.stride == 0 {
        return Err(Failure::Usage("stride must be positive".into()));
    }
    let params = TrapezoidParams::new(args.point.alpha, args.point.beta)?;
    let (state, sol) = match init_relative_equilibrium(&params, args.force) {
        Ok(v) => v,
        Err(DynamicsError::Mass(e)) => return Err(Failure::Degenerate(e.to_string())),
        Err(e @ DynamicsError::Unphysical { .. }) => {
            return Err(Failure::Refused(format!("{e}; pass --force to integrate anyway")))
        }
        Err(e) => return Err(Failure::Usage(e.to_string())),
    };
    let t_end = args.periods * std::f64::consts::TAU / sol.lambda.sqrt();
    let trajectory = if t_end > 0.0 {
        let config = IntegratorConfig::new(args.dt, t_end).with_stride(args.stride);
        Some(integrate(&state, config).map_err(|e| Failure::Usage(e.to_string()))?)
    } else {
        None
    };

    let mut file = create(&args.out)?;
    write_trajectory_csv(trajectory.as_ref(), state.bodies.len(), &mut file)
        .and_then(|_| file.flush())
        .map_err(|e| Failure::Io(args.out.clone(), e))?;

    let (rigidity, termination) = match &trajectory {
        Some(t) => (rigidity_metrics(t), t.termination),
        None => (
            RigidityReport {
                max_distance_deviation: 0.0,
                max_energy_drift: 0.0,
                max_angular_momentum_drift: 0.0,
                final_displacement: 0.0,
                samples: 0,
                final_time: 0.0,
            },
            Termination::Completed,
        ),
    };
    let rigid = rigidity.max_distance_deviation <= RIGIDITY_THRESHOLD;
    let parameters = json!({
        "alpha": params.alpha(),
        "beta": params.beta(),
        "periods": args.periods,
        "dt": args.dt,
        "stride": args.stride,
        "force": args.force,
        "t_end": t_end,
        "integrator": "rk4_fixed_step",
    });
    let payload = SimulatePayload {
        csv: args.out.display().to_string(),
        top_mass: sol.top_mass,
        base_mass: sol.base_mass,
        rigidity,
        rigid,
        threshold: RIGIDITY_THRESHOLD,
        termination,
    };
    let envelope = ctx.envelope(parameters, payload, mass_warnings(&sol));
    ctx.emit_json(&envelope, Some(&sidecar_path(&args.out)))?;
    ctx.emit_json(&envelope, None)?;
    Ok(match termination {
        Termination::Collision { .. } => EXIT_COLLISION,
        Termination::Completed if rigid => EXIT_OK,
        Termination::Completed => EXIT_VERIFY_FAILED,
    })
}

fn cmd_compare_approx(args: &CompareArgs, ctx: &mut Ctx<'_>) -> Result<u8, Failure> {
    let (alpha, beta) = grid_axes(&args.grid, 100)?;
    let grid = build_grid(ctx, alpha, beta)?;
    let report = compare_exact_vs_approx(&grid);
    let envelope = ctx.envelope(grid_parameters(&alpha, &beta), report, Vec::new());
    ctx.emit_json(&envelope, args.out.as_deref())?;
    Ok(EXIT_OK)
}

fn cmd_audit(args: &AuditArgs, ctx: &mut Ctx<'_>) -> Result<u8, Failure> {
    let audit = audit_published_formulas(args.samples).map_err(|e| Failure::Usage(e.to_string()))?;
    let envelope = ctx.envelope(json!({ "samples": args.samples }), audit, Vec::new());
    ctx.emit_json(&envelope, args.out.as_deref())?;
    Ok(EXIT_OK)
}
