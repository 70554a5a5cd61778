//! C ABI over `trapcc`.
//!
//! Every fallible function returns a [`TrapccStatus`] and writes its result
//! through an out-pointer. On failure a human-readable message is available
//! from [`trapcc_last_error_message`] on the same thread. Grids and
//! trajectories are opaque handles released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use trapcc::cc_oracle::{cc_residual, is_central_configuration, PlanarSystem};
use trapcc::dynamics::{
    init_relative_equilibrium, integrate, rigidity_metrics, IntegratorConfig, Termination, Trajectory,
};
use trapcc::geometry::{build_configuration_relaxed, TrapezoidParams};
use trapcc::mass_solver::{classify, solve_masses, solve_masses_linear, top_pair_defect};
use trapcc::regions::{exact_boundary, raster, AxisSpec, BoundaryFunction, BoundaryOutcome, FixedAxis, RasterGrid};
use trapcc::{
    DynamicsError, GeometryError, MassError, OracleError, PlanarPoint, PublishedFormulaError, RegionError, RegionLabel,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrapccStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// `(alpha, beta)` lies on the curve where the closed forms are singular.
    Degenerate = 3,
    /// A mass is not positive where positive masses are required.
    Unphysical = 4,
    /// The integration stopped at a close encounter; the handle is still valid.
    Collision = 5,
    OutOfRange = 6,
    /// An approximate boundary formula is not real at the requested point.
    DomainError = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrapccLabel {
    BothPositive = 0,
    OnlyBasePositive = 1,
    OnlyTopPositive = 2,
    NonePositive = 3,
    Degenerate = 4,
}

impl From<RegionLabel> for TrapccLabel {
    fn from(label: RegionLabel) -> Self {
        match label {
            RegionLabel::BothPositive => TrapccLabel::BothPositive,
            RegionLabel::OnlyBasePositive => TrapccLabel::OnlyBasePositive,
            RegionLabel::OnlyTopPositive => TrapccLabel::OnlyTopPositive,
            RegionLabel::NonePositive => TrapccLabel::NonePositive,
            RegionLabel::Degenerate => TrapccLabel::Degenerate,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrapccBoundaryFunction {
    F1 = 0,
    F3 = 1,
}

impl From<TrapccBoundaryFunction> for BoundaryFunction {
    fn from(which: TrapccBoundaryFunction) -> Self {
        match which {
            TrapccBoundaryFunction::F1 => BoundaryFunction::F1,
            TrapccBoundaryFunction::F3 => BoundaryFunction::F3,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrapccAxis {
    Alpha = 0,
    Beta = 1,
}

/// Closed-form masses and the quantities they are built from.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TrapccMasses {
    /// Mass of each top body.
    pub top_mass: f64,
    /// Mass of each base body.
    pub base_mass: f64,
    pub lambda: f64,
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub a: f64,
    pub b: f64,
    pub r_a: f64,
    pub r_b: f64,
    pub label: i32,
    /// Horizontal force defect on the top pair; zero only where the masses
    /// make the trapezoid central.
    pub top_pair_defect: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TrapccResidual {
    pub lambda: f64,
    pub max_residual: f64,
    pub relative_residual: f64,
    pub potential: f64,
    pub moment: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TrapccBoundary {
    /// Nonzero when a root was bracketed; `root`, `f_value` and
    /// `iterations` are then meaningful.
    pub found: i32,
    pub root: f64,
    pub f_value: f64,
    pub iterations: u32,
    /// Function values at the interval ends when no sign change was seen.
    pub lo_value: f64,
    pub hi_value: f64,
}

/// One raster cell. Masses are NaN on degenerate cells.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TrapccCell {
    pub alpha: f64,
    pub beta: f64,
    pub f1: f64,
    pub f3: f64,
    pub top_mass: f64,
    pub base_mass: f64,
    pub label: i32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TrapccRigidity {
    pub max_distance_deviation: f64,
    pub max_energy_drift: f64,
    pub max_angular_momentum_drift: f64,
    pub final_displacement: f64,
    pub final_time: f64,
    /// Nonzero when the run ended early at a close encounter.
    pub collided: i32,
}

/// Opaque raster grid.
pub struct TrapccRaster {
    grid: RasterGrid,
}

/// Opaque integrated trajectory.
pub struct TrapccTrajectory {
    trajectory: Trajectory,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: TrapccStatus,
    message: String,
}

impl Failure {
    fn new(status: TrapccStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn null(name: &str) -> Self {
        Self::new(TrapccStatus::NullPointer, format!("{name} is null"))
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        let status = match e {
            GeometryError::NonPositiveMass { .. } => TrapccStatus::Unphysical,
            GeometryError::DegenerateMasses { .. } => TrapccStatus::Degenerate,
            _ => TrapccStatus::InvalidArgument,
        };
        Self::new(status, e.to_string())
    }
}

impl From<MassError> for Failure {
    fn from(e: MassError) -> Self {
        Self::new(TrapccStatus::Degenerate, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Self::new(TrapccStatus::InvalidArgument, e.to_string())
    }
}

impl From<RegionError> for Failure {
    fn from(e: RegionError) -> Self {
        match e {
            RegionError::Geometry(g) => g.into(),
            other => Self::new(TrapccStatus::InvalidArgument, other.to_string()),
        }
    }
}

impl From<PublishedFormulaError> for Failure {
    fn from(e: PublishedFormulaError) -> Self {
        Self::new(TrapccStatus::DomainError, e.to_string())
    }
}

impl From<DynamicsError> for Failure {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::Mass(m) => m.into(),
            DynamicsError::Geometry(g) => g.into(),
            DynamicsError::Collision { .. } => Self::new(TrapccStatus::Collision, e.to_string()),
            DynamicsError::Unphysical { .. } => Self::new(TrapccStatus::Unphysical, e.to_string()),
            other => Self::new(TrapccStatus::InvalidArgument, other.to_string()),
        }
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Runs `body`, records any failure and converts panics into a status.
fn guard(body: impl FnOnce() -> Result<TrapccStatus, Failure>) -> TrapccStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(failure)) => {
            set_last_error(&failure.message);
            failure.status
        }
        Err(_) => {
            set_last_error("internal panic");
            TrapccStatus::Panic
        }
    }
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write_out<T>(out: *mut T, name: &str, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null(name));
    }
    out.write(value);
    Ok(())
}

fn params(alpha: f64, beta: f64) -> Result<TrapezoidParams, Failure> {
    Ok(TrapezoidParams::new(alpha, beta)?)
}

/// # Safety
/// `masses` must point to `n` doubles and `xy` to `2 n` doubles laid out as
/// `x0, y0, x1, y1, ...`, unless they are null.
unsafe fn system_from_raw(n: usize, masses: *const f64, xy: *const f64) -> Result<PlanarSystem, Failure> {
    if masses.is_null() {
        return Err(Failure::null("masses"));
    }
    if xy.is_null() {
        return Err(Failure::null("xy"));
    }
    let masses = std::slice::from_raw_parts(masses, n);
    let coords = std::slice::from_raw_parts(xy, 2 * n);
    let positions: Vec<PlanarPoint> = coords.chunks_exact(2).map(|c| PlanarPoint::new(c[0], c[1])).collect();
    Ok(PlanarSystem::from_parts(masses, &positions)?)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn trapcc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message describing the last failure on this thread, or null if the last
/// call succeeded. The pointer is valid until the next library call on the
/// same thread.
#[no_mangle]
pub extern "C" fn trapcc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Closed-form masses at `(alpha, beta)` with `lambda = 1`. Negative masses
/// are reported, not rejected.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn trapcc_solve_masses(alpha: f64, beta: f64, out: *mut TrapccMasses) -> TrapccStatus {
    guard(|| {
        let params = params(alpha, beta)?;
        let sol = solve_masses(&params)?;
        let cfg = build_configuration_relaxed(&params, sol.top_mass, sol.base_mass)?;
        let value = TrapccMasses {
            top_mass: sol.top_mass,
            base_mass: sol.base_mass,
            lambda: sol.lambda,
            f1: sol.signs.f1,
            f2: sol.signs.f2,
            f3: sol.signs.f3,
            a: sol.cubes.a,
            b: sol.cubes.b,
            r_a: cfg.r_a,
            r_b: cfg.r_b,
            label: TrapccLabel::from(RegionLabel::from_masses(sol.top_mass, sol.base_mass)) as i32,
            top_pair_defect: top_pair_defect(&sol),
        };
        write_out(out, "out", value)?;
        Ok(TrapccStatus::Ok)
    })
}

/// Masses from a direct 2x2 linear solve, independent of the closed forms.
///
/// # Safety
/// `top_mass` and `base_mass` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn trapcc_solve_masses_linear(
    alpha: f64,
    beta: f64,
    top_mass: *mut f64,
    base_mass: *mut f64,
) -> TrapccStatus {
    guard(|| {
        if top_mass.is_null() || base_mass.is_null() {
            return Err(Failure::null("output"));
        }
        let (m, big_m) = solve_masses_linear(&params(alpha, beta)?)?;
        top_mass.write(m);
        base_mass.write(big_m);
        Ok(TrapccStatus::Ok)
    })
}

/// Region label at `(alpha, beta)`. Degenerate points yield
/// `TRAPCC_LABEL_DEGENERATE` with status OK.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn trapcc_classify(alpha: f64, beta: f64, out: *mut TrapccLabel) -> TrapccStatus {
    guard(|| {
        write_out(out, "out", classify(&params(alpha, beta)?).into())?;
        Ok(TrapccStatus::Ok)
    })
}

/// Central-configuration residual of an arbitrary planar system at a given
/// `lambda`.
///
/// # Safety
/// `masses` must hold `n` doubles, `xy` `2 n` interleaved coordinates and
/// `out` must be valid for writes; null pointers are rejected.
#[no_mangle]
pub unsafe extern "C" fn trapcc_cc_residual(
    n: usize,
    masses: *const f64,
    xy: *const f64,
    lambda: f64,
    out: *mut TrapccResidual,
) -> TrapccStatus {
    guard(|| {
        let system = system_from_raw(n, masses, xy)?;
        let report = cc_residual(&system, lambda);
        let value = TrapccResidual {
            lambda: report.lambda,
            max_residual: report.max_residual,
            relative_residual: report.relative_residual(),
            potential: report.potential,
            moment: report.moment,
        };
        write_out(out, "out", value)?;
        Ok(TrapccStatus::Ok)
    })
}

/// Decides whether a planar system is central within relative tolerance
/// `tol`, fitting `lambda = U / (2 I)`. Writes 1 or 0 to `is_central`.
///
/// # Safety
/// As for [`trapcc_cc_residual`]; `is_central` must be valid for writes and
/// `out` may be null.
#[no_mangle]
pub unsafe extern "C" fn trapcc_is_central(
    n: usize,
    masses: *const f64,
    xy: *const f64,
    tol: f64,
    is_central: *mut i32,
    out: *mut TrapccResidual,
) -> TrapccStatus {
    guard(|| {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Failure::new(
                TrapccStatus::InvalidArgument,
                format!("tolerance must be positive, got {tol}"),
            ));
        }
        let system = system_from_raw(n, masses, xy)?;
        let (central, report) = is_central_configuration(&system, tol);
        write_out(is_central, "is_central", i32::from(central))?;
        if !out.is_null() {
            out.write(TrapccResidual {
                lambda: report.lambda,
                max_residual: report.max_residual,
                relative_residual: report.relative_residual(),
                potential: report.potential,
                moment: report.moment,
            });
        }
        Ok(TrapccStatus::Ok)
    })
}

/// Bisects `f1` or `f3` along the free axis on `[lo, hi]` with the other
/// parameter held at `fixed_value`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn trapcc_exact_boundary(
    which: TrapccBoundaryFunction,
    fixed_axis: TrapccAxis,
    fixed_value: f64,
    lo: f64,
    hi: f64,
    out: *mut TrapccBoundary,
) -> TrapccStatus {
    guard(|| {
        let axis = match fixed_axis {
            TrapccAxis::Alpha => FixedAxis::Alpha,
            TrapccAxis::Beta => FixedAxis::Beta,
        };
        let value = match exact_boundary(which.into(), axis, fixed_value, lo, hi)? {
            BoundaryOutcome::Root {
                value,
                f_value,
                iterations,
            } => TrapccBoundary {
                found: 1,
                root: value,
                f_value,
                iterations,
                ..Default::default()
            },
            BoundaryOutcome::NoSignChange { lo_value, hi_value } => TrapccBoundary {
                lo_value,
                hi_value,
                ..Default::default()
            },
        };
        write_out(out, "out", value)?;
        Ok(TrapccStatus::Ok)
    })
}

/// Evaluates the approximate boundary formula `alpha = g(beta)` for `f1` or
/// `f3` boundary. Returns `TRAPCC_STATUS_DOMAIN_ERROR` where it is not real.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn trapcc_published_boundary(
    which: TrapccBoundaryFunction,
    beta: f64,
    out: *mut f64,
) -> TrapccStatus {
    guard(|| {
        let alpha = BoundaryFunction::from(which).published(beta)?;
        write_out(out, "out", alpha)?;
        Ok(TrapccStatus::Ok)
    })
}

/// Samples cell centers of `[alpha_lo, alpha_hi] x [beta_lo, beta_hi]` on an
/// `n_alpha x n_beta` grid.
///
/// # Safety
/// `out` must be null or valid for writes. The handle written there must be
/// released with [`trapcc_raster_free`].
#[no_mangle]
pub unsafe extern "C" fn trapcc_raster_new(
    alpha_lo: f64,
    alpha_hi: f64,
    n_alpha: usize,
    beta_lo: f64,
    beta_hi: f64,
    n_beta: usize,
    out: *mut *mut TrapccRaster,
) -> TrapccStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let grid = raster(
            AxisSpec::new(alpha_lo, alpha_hi, n_alpha),
            AxisSpec::new(beta_lo, beta_hi, n_beta),
        )?;
        out.write(Box::into_raw(Box::new(TrapccRaster { grid })));
        Ok(TrapccStatus::Ok)
    })
}

/// # Safety
/// `raster` must be null or a live handle; the out-pointers must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn trapcc_raster_dims(
    raster: *const TrapccRaster,
    n_alpha: *mut usize,
    n_beta: *mut usize,
) -> TrapccStatus {
    guard(|| {
        let r = raster.as_ref().ok_or_else(|| Failure::null("raster"))?;
        write_out(n_alpha, "n_alpha", r.grid.alpha_axis.len())?;
        write_out(n_beta, "n_beta", r.grid.beta_axis.len())?;
        Ok(TrapccStatus::Ok)
    })
}

/// # Safety
/// `raster` must be null or a live handle; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn trapcc_raster_cell(
    raster: *const TrapccRaster,
    alpha_index: usize,
    beta_index: usize,
    out: *mut TrapccCell,
) -> TrapccStatus {
    guard(|| {
        let r = raster.as_ref().ok_or_else(|| Failure::null("raster"))?;
        let (na, nb) = (r.grid.alpha_axis.len(), r.grid.beta_axis.len());
        if alpha_index >= na || beta_index >= nb {
            return Err(Failure::new(
                TrapccStatus::OutOfRange,
                format!("cell ({alpha_index}, {beta_index}) outside {na} x {nb} grid"),
            ));
        }
        let c = r.grid.cell(alpha_index, beta_index);
        let value = TrapccCell {
            alpha: c.alpha,
            beta: c.beta,
            f1: c.f1,
            f3: c.f3,
            top_mass: c.top_mass.unwrap_or(f64::NAN),
            base_mass: c.base_mass.unwrap_or(f64::NAN),
            label: TrapccLabel::from(c.label) as i32,
        };
        write_out(out, "out", value)?;
        Ok(TrapccStatus::Ok)
    })
}

/// # Safety
/// `raster` must be null or a handle from [`trapcc_raster_new`] that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn trapcc_raster_free(raster: *mut TrapccRaster) {
    if !raster.is_null() {
        drop(Box::from_raw(raster));
    }
}

/// Integrates the relative-equilibrium initial state at `(alpha, beta)` for
/// `periods` periods of `2 pi` with fixed step `dt`, keeping every
/// `stride`-th step. Configurations outside the positive-mass region are
/// refused unless `allow_unphysical` is nonzero.
///
/// A close encounter returns `TRAPCC_STATUS_COLLISION` and still writes a
/// handle holding the partial trajectory.
///
/// # Safety
/// `out` must be null or valid for writes. The handle written there must be
/// released with [`trapcc_trajectory_free`].
#[no_mangle]
pub unsafe extern "C" fn trapcc_simulate(
    alpha: f64,
    beta: f64,
    periods: f64,
    dt: f64,
    stride: usize,
    allow_unphysical: i32,
    out: *mut *mut TrapccTrajectory,
) -> TrapccStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let (state, _) = init_relative_equilibrium(&params(alpha, beta)?, allow_unphysical != 0)?;
        let config = IntegratorConfig::new(dt, periods * std::f64::consts::TAU).with_stride(stride);
        let trajectory = integrate(&state, config)?;
        let status = match trajectory.termination {
            Termination::Completed => TrapccStatus::Ok,
            Termination::Collision { time, i, j, separation } => {
                set_last_error(&format!("bodies {i} and {j} within {separation:e} at t = {time}"));
                TrapccStatus::Collision
            }
        };
        out.write(Box::into_raw(Box::new(TrapccTrajectory { trajectory })));
        Ok(status)
    })
}

/// Number of stored samples, or 0 for a null handle.
///
/// # Safety
/// `trajectory` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn trapcc_trajectory_len(trajectory: *const TrapccTrajectory) -> usize {
    trajectory.as_ref().map_or(0, |t| t.trajectory.samples.len())
}

/// Number of bodies per sample, or 0 for a null handle.
///
/// # Safety
/// `trajectory` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn trapcc_trajectory_bodies(trajectory: *const TrapccTrajectory) -> usize {
    trajectory
        .as_ref()
        .and_then(|t| t.trajectory.samples.first())
        .map_or(0, |s| s.bodies.len())
}

/// Copies sample `index`: its time, `2 * bodies` interleaved positions into
/// `xy` (capacity `xy_len`), energy and angular momentum. Any out-pointer
/// other than `xy` may be null.
///
/// # Safety
/// `trajectory` must be null or a live handle; `xy` must be null or hold
/// `xy_len` doubles; the scalar out-pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn trapcc_trajectory_sample(
    trajectory: *const TrapccTrajectory,
    index: usize,
    time: *mut f64,
    xy: *mut f64,
    xy_len: usize,
    energy: *mut f64,
    angular_momentum: *mut f64,
) -> TrapccStatus {
    guard(|| {
        let t = &trajectory
            .as_ref()
            .ok_or_else(|| Failure::null("trajectory"))?
            .trajectory;
        let sample = t.samples.get(index).ok_or_else(|| {
            Failure::new(
                TrapccStatus::OutOfRange,
                format!("sample {index} of {}", t.samples.len()),
            )
        })?;
        if xy.is_null() {
            return Err(Failure::null("xy"));
        }
        let needed = 2 * sample.bodies.len();
        if xy_len < needed {
            return Err(Failure::new(
                TrapccStatus::InvalidArgument,
                format!("xy holds {xy_len} values, {needed} needed"),
            ));
        }
        let dst = std::slice::from_raw_parts_mut(xy, needed);
        for (pair, body) in dst.chunks_exact_mut(2).zip(&sample.bodies) {
            pair[0] = body.position.x;
            pair[1] = body.position.y;
        }
        if !time.is_null() {
            time.write(sample.time);
        }
        if !energy.is_null() {
            energy.write(t.energy_series[index]);
        }
        if !angular_momentum.is_null() {
            angular_momentum.write(t.angular_momentum_series[index]);
        }
        Ok(TrapccStatus::Ok)
    })
}

/// Rigid-rotation diagnostics over the stored samples.
///
/// # Safety
/// `trajectory` must be null or a live handle; `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn trapcc_trajectory_rigidity(
    trajectory: *const TrapccTrajectory,
    out: *mut TrapccRigidity,
) -> TrapccStatus {
    guard(|| {
        let t = &trajectory
            .as_ref()
            .ok_or_else(|| Failure::null("trajectory"))?
            .trajectory;
        let r = rigidity_metrics(t);
        let value = TrapccRigidity {
            max_distance_deviation: r.max_distance_deviation,
            max_energy_drift: r.max_energy_drift,
            max_angular_momentum_drift: r.max_angular_momentum_drift,
            final_displacement: r.final_displacement,
            final_time: r.final_time,
            collided: i32::from(matches!(t.termination, Termination::Collision { .. })),
        };
        write_out(out, "out", value)?;
        Ok(TrapccStatus::Ok)
    })
}

/// # Safety
/// `trajectory` must be null or a handle from [`trapcc_simulate`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn trapcc_trajectory_free(trajectory: *mut TrapccTrajectory) {
    if !trajectory.is_null() {
        drop(Box::from_raw(trajectory));
    }
}
