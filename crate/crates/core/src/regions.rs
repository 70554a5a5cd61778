//! Classification of the (alpha, beta) plane.
//!
//! Region membership is always decided by the exact signs of `f1` and `f3`.
//! The published polynomial approximations and the closed-form boundary
//! formulas built on them are evaluated verbatim, for comparison only.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{PublishedFormulaError, Radicand, RegionError};
use crate::geometry::{compute_distance_cubes, TrapezoidParams, DEFAULT_MAX_BETA};
use crate::mass_solver::{sign_functions, solve_masses, RegionLabel, SignTriple};

/// Bracket width at which [`exact_boundary`] stops bisecting.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

/// `-1`, `0` or `1`.
pub fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

fn shape_root(beta: f64) -> f64 {
    (beta * beta + 0.25).sqrt()
}

/// Coefficients of the quartic `f3_approx = h2 alpha^4 + h1 alpha^2 + h0`,
/// with the constants exactly as published (including their rounding).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxCoefficients {
    pub h0: f64,
    pub h1: f64,
    pub h2: f64,
}

impl ApproxCoefficients {
    pub fn at(beta: f64) -> Self {
        let s = shape_root(beta);
        let b2 = beta * beta;
        let b4 = b2 * b2;
        let b6 = b4 * b2;
        let h0 = -2.0 * b6 - 1.5 * b4 + 2.0 * (b2 + 0.25).powf(1.5) - 0.38 * b2 - 0.03;
        let h1 = -1.5 * b4 - 0.75 * b2 / s + 0.1;
        let h2 = (-0.375 * b6 - 0.09 * b4 + (-0.19 * s - 0.023) * b2 - 0.031 * s + 0.047 * b4 / s - 0.006)
            / (1.0 * b2 + 0.25).powi(2);
        Self { h0, h1, h2 }
    }
}

/// The published quadratic-in-alpha approximation of `f1`.
pub fn f1_approx(alpha: f64, beta: f64) -> f64 {
    let s = shape_root(beta);
    let b2 = beta * beta;
    let b4 = b2 * b2;
    let b6 = b4 * b2;
    let quadratic = -1.5 * b4 + 0.75 * b2 / s + 0.375 / s + 0.09375;
    let constant = -2.0 * b6 - 1.5 * b4 + 2.0 * s * b2 - 0.375 * b2 + 0.5 * s - 0.03125;
    alpha * alpha * quadratic + constant
}

pub fn f3_approx(alpha: f64, beta: f64) -> f64 {
    let ApproxCoefficients { h0, h1, h2 } = ApproxCoefficients::at(beta);
    let a2 = alpha * alpha;
    (h2 * a2 + h1) * a2 + h0
}

fn check_open_unit(beta: f64) -> Result<(), PublishedFormulaError> {
    if beta > 0.0 && beta < 1.0 {
        Ok(())
    } else {
        Err(PublishedFormulaError::OutsideDomain(beta))
    }
}

/// Radicands `(numerator, denominator)` of the published `f1` boundary.
pub fn g1_radicands(beta: f64) -> (f64, f64) {
    let s = shape_root(beta);
    let b2 = beta * beta;
    let b4 = b2 * b2;
    let numerator = -2.0 * b4 * b2 - 1.5 * b4 + 2.0 * (b2 + 0.25).powf(1.5) - 0.375 * b2 - 0.03125;
    let denominator = 1.5 * b4 + (-0.75 * b2 - 0.375) / s - 0.09375;
    (numerator, denominator)
}

/// The published `f1` boundary `alpha = g1(beta)`, evaluated as printed.
pub fn g1_published(beta: f64) -> Result<f64, PublishedFormulaError> {
    check_open_unit(beta)?;
    let (numerator, denominator) = g1_radicands(beta);
    if numerator < 0.0 {
        return Err(PublishedFormulaError::NegativeRadicand {
            which: Radicand::Numerator,
            value: numerator,
        });
    }
    if !(denominator > 0.0) {
        return Err(PublishedFormulaError::NegativeRadicand {
            which: Radicand::Denominator,
            value: denominator,
        });
    }
    Ok(numerator.sqrt() / denominator.sqrt())
}

/// The published `f3` boundary: the root of the quartic `f3_approx` in
/// `alpha` taken with the minus branch of the discriminant.
pub fn g3_published(beta: f64) -> Result<f64, PublishedFormulaError> {
    check_open_unit(beta)?;
    let ApproxCoefficients { h0, h1, h2 } = ApproxCoefficients::at(beta);
    let discriminant = h1 * h1 - 4.0 * h0 * h2;
    if discriminant < 0.0 {
        return Err(PublishedFormulaError::NegativeDiscriminant { value: discriminant });
    }
    let outer = -discriminant.sqrt() / (2.0 * h2) - h1 / (2.0 * h2);
    if !(outer >= 0.0) {
        return Err(PublishedFormulaError::NegativeRadicand {
            which: Radicand::Outer,
            value: outer,
        });
    }
    Ok(outer.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryFunction {
    F1,
    F3,
}

impl BoundaryFunction {
    pub fn exact(self, signs: &SignTriple) -> f64 {
        match self {
            BoundaryFunction::F1 => signs.f1,
            BoundaryFunction::F3 => signs.f3,
        }
    }

    pub fn approx(self, alpha: f64, beta: f64) -> f64 {
        match self {
            BoundaryFunction::F1 => f1_approx(alpha, beta),
            BoundaryFunction::F3 => f3_approx(alpha, beta),
        }
    }

    pub fn published(self, beta: f64) -> Result<f64, PublishedFormulaError> {
        match self {
            BoundaryFunction::F1 => g1_published(beta),
            BoundaryFunction::F3 => g3_published(beta),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryFunction::F1 => "f1",
            BoundaryFunction::F3 => "f3",
        }
    }
}

/// Exact `f1`/`f3` at a validated parameter point.
pub fn exact_value(which: BoundaryFunction, params: &TrapezoidParams) -> f64 {
    which.exact(&sign_functions(&compute_distance_cubes(params), params.alpha()))
}

/// The axis held fixed while searching along the other one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedAxis {
    Alpha,
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryOutcome {
    Root { value: f64, f_value: f64, iterations: u32 },
    NoSignChange { lo_value: f64, hi_value: f64 },
}

impl BoundaryOutcome {
    pub fn root(&self) -> Option<f64> {
        match self {
            BoundaryOutcome::Root { value, .. } => Some(*value),
            BoundaryOutcome::NoSignChange { .. } => None,
        }
    }
}

/// Bisects the exact function along the free axis on `[lo, hi]`.
pub fn exact_boundary(
    which: BoundaryFunction,
    axis: FixedAxis,
    fixed_value: f64,
    lo: f64,
    hi: f64,
) -> Result<BoundaryOutcome, RegionError> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(RegionError::InvalidInterval { lo, hi });
    }
    let eval = |free: f64| -> Result<f64, RegionError> {
        let params = match axis {
            FixedAxis::Alpha => TrapezoidParams::new(fixed_value, free)?,
            FixedAxis::Beta => TrapezoidParams::new(free, fixed_value)?,
        };
        Ok(exact_value(which, &params))
    };
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (eval(a)?, eval(b)?);
    if fa == 0.0 {
        return Ok(BoundaryOutcome::Root {
            value: a,
            f_value: fa,
            iterations: 0,
        });
    }
    if fb == 0.0 {
        return Ok(BoundaryOutcome::Root {
            value: b,
            f_value: fb,
            iterations: 0,
        });
    }
    if sign(fa) == sign(fb) {
        return Ok(BoundaryOutcome::NoSignChange {
            lo_value: fa,
            hi_value: fb,
        });
    }
    let mut fb = fb;
    let mut iterations = 0;
    while b - a > BOUNDARY_TOLERANCE {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = eval(mid)?;
        iterations += 1;
        if fm == 0.0 {
            return Ok(BoundaryOutcome::Root {
                value: mid,
                f_value: fm,
                iterations,
            });
        }
        if sign(fm) == sign(fa) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    let (value, f_value) = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
    Ok(BoundaryOutcome::Root {
        value,
        f_value,
        iterations,
    })
}

/// Number of strict sign changes of the exact function along `beta` at fixed
/// `alpha`, sampled on `betas`.
pub fn sign_changes_along_beta(which: BoundaryFunction, alpha: f64, betas: &[f64]) -> Result<usize, RegionError> {
    let mut previous = 0i8;
    let mut changes = 0;
    for &beta in betas {
        let s = sign(exact_value(which, &TrapezoidParams::new(alpha, beta)?));
        if s != 0 {
            if previous != 0 && s != previous {
                changes += 1;
            }
            previous = s;
        }
    }
    Ok(changes)
}

/// A sampled axis: `count` cell centers spread evenly over `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn new(lo: f64, hi: f64, count: usize) -> Self {
        Self { lo, hi, count }
    }

    pub fn samples(&self) -> Vec<f64> {
        let width = (self.hi - self.lo) / self.count as f64;
        (0..self.count).map(|i| self.lo + (i as f64 + 0.5) * width).collect()
    }

    fn validate(&self, axis: &'static str, max: f64) -> Result<(), RegionError> {
        if self.count == 0 {
            return Err(RegionError::ZeroResolution);
        }
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo >= 0.0 && self.lo <= self.hi && self.hi <= max) {
            return Err(RegionError::InvalidRange {
                axis,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RasterCell {
    pub alpha: f64,
    pub beta: f64,
    pub f1: f64,
    pub f3: f64,
    #[serde(rename = "m")]
    pub top_mass: Option<f64>,
    #[serde(rename = "M")]
    pub base_mass: Option<f64>,
    pub label: RegionLabel,
}

/// Cells in row-major order: `beta` outer, `alpha` inner.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RasterGrid {
    pub alpha_axis: Vec<f64>,
    pub beta_axis: Vec<f64>,
    pub cells: Vec<RasterCell>,
}

impl RasterGrid {
    pub fn index(&self, alpha_index: usize, beta_index: usize) -> usize {
        beta_index * self.alpha_axis.len() + alpha_index
    }

    pub fn cell(&self, alpha_index: usize, beta_index: usize) -> &RasterCell {
        &self.cells[self.index(alpha_index, beta_index)]
    }

    pub fn f1_sign(&self, alpha_index: usize, beta_index: usize) -> i8 {
        sign(self.cell(alpha_index, beta_index).f1)
    }

    pub fn f3_sign(&self, alpha_index: usize, beta_index: usize) -> i8 {
        sign(self.cell(alpha_index, beta_index).f3)
    }

    /// The cell whose center is exactly `(alpha, beta)`, if any.
    pub fn find(&self, alpha: f64, beta: f64) -> Option<&RasterCell> {
        let ia = self.alpha_axis.iter().position(|&a| a == alpha)?;
        let ib = self.beta_axis.iter().position(|&b| b == beta)?;
        Some(self.cell(ia, ib))
    }

    pub fn label_counts(&self) -> Vec<(RegionLabel, usize)> {
        RegionLabel::ALL
            .iter()
            .map(|&label| (label, self.cells.iter().filter(|c| c.label == label).count()))
            .collect()
    }
}

fn classify_cell(params: &TrapezoidParams) -> RasterCell {
    let (alpha, beta) = (params.alpha(), params.beta());
    match solve_masses(params) {
        Ok(sol) => RasterCell {
            alpha,
            beta,
            f1: sol.signs.f1,
            f3: sol.signs.f3,
            top_mass: Some(sol.top_mass),
            base_mass: Some(sol.base_mass),
            label: RegionLabel::from_masses(sol.top_mass, sol.base_mass),
        },
        Err(_) => {
            let signs = sign_functions(&compute_distance_cubes(params), alpha);
            RasterCell {
                alpha,
                beta,
                f1: signs.f1,
                f3: signs.f3,
                top_mass: None,
                base_mass: None,
                label: RegionLabel::Degenerate,
            }
        }
    }
}

/// Labels every cell of the grid. Rows are evaluated in parallel on the
/// current rayon pool; the output order does not depend on scheduling.
pub fn raster(alpha: AxisSpec, beta: AxisSpec) -> Result<RasterGrid, RegionError> {
    alpha.validate("alpha", 1.0)?;
    beta.validate("beta", DEFAULT_MAX_BETA)?;
    let alpha_axis = alpha.samples();
    let beta_axis = beta.samples();
    let params: Vec<TrapezoidParams> = beta_axis
        .iter()
        .flat_map(|&b| alpha_axis.iter().map(move |&a| TrapezoidParams::new(a, b)))
        .collect::<Result<_, _>>()?;
    let cells = params.par_iter().map(classify_cell).collect();
    Ok(RasterGrid {
        alpha_axis,
        beta_axis,
        cells,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DisagreementCell {
    pub alpha: f64,
    pub beta: f64,
    pub exact: f64,
    pub approx: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementStats {
    pub agreement_fraction: f64,
    pub max_abs_deviation: f64,
    pub mean_abs_deviation: f64,
    pub disagreements: Vec<DisagreementCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxReport {
    pub cells: usize,
    pub f1: AgreementStats,
    pub f3: AgreementStats,
}

fn agreement(grid: &RasterGrid, which: BoundaryFunction) -> AgreementStats {
    let mut agree = 0usize;
    let mut max_dev: f64 = 0.0;
    let mut sum_dev = 0.0;
    let mut disagreements = Vec::new();
    for cell in &grid.cells {
        let exact = match which {
            BoundaryFunction::F1 => cell.f1,
            BoundaryFunction::F3 => cell.f3,
        };
        let approx = which.approx(cell.alpha, cell.beta);
        let dev = (exact - approx).abs();
        max_dev = max_dev.max(dev);
        sum_dev += dev;
        if sign(exact) == sign(approx) {
            agree += 1;
        } else {
            disagreements.push(DisagreementCell {
                alpha: cell.alpha,
                beta: cell.beta,
                exact,
                approx,
            });
        }
    }
    let n = grid.cells.len().max(1) as f64;
    AgreementStats {
        agreement_fraction: agree as f64 / n,
        max_abs_deviation: max_dev,
        mean_abs_deviation: sum_dev / n,
        disagreements,
    }
}

/// Sign agreement and deviation of the published approximations against
/// the exact functions over the grid cells.
pub fn compare_exact_vs_approx(grid: &RasterGrid) -> ApproxReport {
    ApproxReport {
        cells: grid.cells.len(),
        f1: agreement(grid, BoundaryFunction::F1),
        f3: agreement(grid, BoundaryFunction::F3),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormulaDomain {
    pub function: BoundaryFunction,
    /// Maximal subintervals of (0, 1) on which the formula is real-valued,
    /// edges refined by bisection.
    pub real_intervals: Vec<[f64; 2]>,
    pub samples: usize,
    pub real_fraction: f64,
    pub negative_numerator: usize,
    pub negative_denominator: usize,
    pub negative_outer: usize,
    pub negative_discriminant: usize,
    /// Samples where both the formula and an exact root along alpha exist.
    pub compared: usize,
    /// Largest `|g(beta) - alpha*(beta)|` over the compared samples.
    pub max_exact_deviation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PublishedAudit {
    pub g1: FormulaDomain,
    pub g3: FormulaDomain,
}

fn refine_edge(which: BoundaryFunction, mut inside: f64, mut outside: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        if which.published(mid).is_ok() {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    inside
}

fn audit_formula(which: BoundaryFunction, samples: usize) -> FormulaDomain {
    let betas = AxisSpec::new(0.0, 1.0, samples).samples();
    let results: Vec<_> = betas.iter().map(|&b| which.published(b)).collect();
    let mut domain = FormulaDomain {
        function: which,
        real_intervals: Vec::new(),
        samples,
        real_fraction: 0.0,
        negative_numerator: 0,
        negative_denominator: 0,
        negative_outer: 0,
        negative_discriminant: 0,
        compared: 0,
        max_exact_deviation: None,
    };
    let mut start: Option<usize> = None;
    for (i, result) in results.iter().enumerate() {
        match result {
            Ok(g) => {
                start.get_or_insert(i);
                if let Ok(BoundaryOutcome::Root { value, .. }) =
                    exact_boundary(which, FixedAxis::Beta, betas[i], 1e-9, 1.0)
                {
                    domain.compared += 1;
                    let dev = (g - value).abs();
                    domain.max_exact_deviation = Some(domain.max_exact_deviation.map_or(dev, |m| m.max(dev)));
                }
            }
            Err(e) => {
                match e {
                    PublishedFormulaError::NegativeRadicand {
                        which: Radicand::Numerator,
                        ..
                    } => domain.negative_numerator += 1,
                    PublishedFormulaError::NegativeRadicand {
                        which: Radicand::Denominator,
                        ..
                    } => domain.negative_denominator += 1,
                    PublishedFormulaError::NegativeRadicand {
                        which: Radicand::Outer, ..
                    } => domain.negative_outer += 1,
                    PublishedFormulaError::NegativeDiscriminant { .. } => domain.negative_discriminant += 1,
                    PublishedFormulaError::OutsideDomain(_) => {}
                }
                if let Some(s) = start.take() {
                    domain.real_intervals.push(interval_edges(which, &betas, s, i - 1));
                }
            }
        }
    }
    if let Some(s) = start {
        domain
            .real_intervals
            .push(interval_edges(which, &betas, s, betas.len() - 1));
    }
    domain.real_fraction = results.iter().filter(|r| r.is_ok()).count() as f64 / samples.max(1) as f64;
    domain
}

fn interval_edges(which: BoundaryFunction, betas: &[f64], first: usize, last: usize) -> [f64; 2] {
    let lo = if first == 0 {
        refine_edge(which, betas[0], f64::MIN_POSITIVE)
    } else {
        refine_edge(which, betas[first], betas[first - 1])
    };
    let hi = if last + 1 == betas.len() {
        refine_edge(which, betas[last], 1.0)
    } else {
        refine_edge(which, betas[last], betas[last + 1])
    };
    [lo, hi]
}

/// Scans `samples` points of (0, 1) and reports where each published
/// boundary formula is real-valued.
pub fn audit_published_formulas(samples: usize) -> Result<PublishedAudit, RegionError> {
    if samples == 0 {
        return Err(RegionError::ZeroResolution);
    }
    Ok(PublishedAudit {
        g1: audit_formula(BoundaryFunction::F1, samples),
        g3: audit_formula(BoundaryFunction::F3, samples),
    })
}
