//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::f64::consts::TAU;
use std::time::Instant;

use trapcc::cc_oracle::{cc_residual, PlanarSystem};
use trapcc::dynamics::{
    init_relative_equilibrium, integrate, rigidity_metrics, BodyState, IntegratorConfig, SystemState,
};
use trapcc::error::{PublishedFormulaError, Radicand};
use trapcc::geometry::{build_configuration, build_configuration_relaxed, compute_distance_cubes, TrapezoidParams};
use trapcc::mass_solver::{
    reduced_equation_residuals, sign_functions, solve_masses, solve_masses_linear, top_pair_defect, MassSolution,
    RegionLabel, DEGENERACY_TOLERANCE,
};
use trapcc::regions::{
    audit_published_formulas, exact_boundary, exact_value, g1_published, g3_published, raster, AxisSpec,
    BoundaryFunction, BoundaryOutcome, FixedAxis,
};

const ORACLE_TOL: f64 = 1e-12;
const CC_TOL: f64 = 1e-10;
const IDENTITY_TOL: f64 = 1e-12;
const KNOWN_POINT_TOL: f64 = 1e-6;
const SQUARE_TOL: f64 = 1e-9;
const BOUNDARY_F_TOL: f64 = 1e-10;
const RIGIDITY_TOL: f64 = 1e-5;
const DRIFT_TOL: f64 = 1e-8;
const NEGATIVE_CONTROL_FLOOR: f64 = 1e-3;

type Criterion = (&'static str, &'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

/// The 100 x 100 grid over alpha in (0, 1], beta in (0, 2].
fn oracle_grid() -> Vec<TrapezoidParams> {
    (1..=100)
        .flat_map(|i| (1..=100).map(move |j| TrapezoidParams::new(i as f64 / 100.0, 2.0 * j as f64 / 100.0).unwrap()))
        .collect()
}

fn is_degenerate(params: &TrapezoidParams) -> bool {
    let cubes = compute_distance_cubes(params);
    let signs = sign_functions(&cubes, params.alpha());
    signs.f3.abs() < DEGENERACY_TOLERANCE * (cubes.a + cubes.b)
}

fn non_degenerate_solutions() -> Vec<MassSolution> {
    oracle_grid()
        .iter()
        .filter(|p| !is_degenerate(p))
        .map(|p| solve_masses(p).unwrap())
        .collect()
}

fn rel_diff(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE)
}

fn ac1_oracle_agreement() -> Outcome {
    let start = Instant::now();
    let grid = oracle_grid();
    let mut worst: f64 = 0.0;
    let mut compared = 0;
    let mut mismatched_errors = 0;
    for p in &grid {
        let degenerate = is_degenerate(p);
        match (solve_masses(p), solve_masses_linear(p)) {
            (Ok(sol), Ok((m, big_m))) if !degenerate => {
                compared += 1;
                worst = worst.max(rel_diff(sol.top_mass, m)).max(rel_diff(sol.base_mass, big_m));
            }
            (Err(_), Err(_)) if degenerate => {}
            _ => mismatched_errors += 1,
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    outcome(
        worst <= ORACLE_TOL && mismatched_errors == 0 && elapsed < 1.0,
        format!(
            "{compared} points, worst relative difference {worst:.3e} (tol {ORACLE_TOL:e}), {mismatched_errors} error mismatches, {elapsed:.3}s"
        ),
    )
}

fn ac2_closed_form_is_central() -> Outcome {
    let sols = non_degenerate_solutions();
    let mut worst: f64 = 0.0;
    let mut worst_at = (0.0, 0.0);
    let mut failing = 0;
    let mut worst_defect: f64 = 0.0;
    for sol in &sols {
        let cfg = build_configuration_relaxed(&sol.params, sol.top_mass, sol.base_mass).unwrap();
        let report = cc_residual(&PlanarSystem::from_trapezoid(&cfg).unwrap(), 1.0);
        let rel = report.relative_residual();
        if rel > CC_TOL {
            failing += 1;
        }
        if rel > worst {
            worst = rel;
            worst_at = (sol.params.alpha(), sol.params.beta());
        }
        worst_defect = worst_defect.max(top_pair_defect(sol).abs());
    }
    outcome(
        failing == 0,
        format!(
            "{failing}/{} points exceed {CC_TOL:e}; worst relative residual {worst:.3e} at (alpha, beta) = ({}, {}); largest top-pair defect {worst_defect:.3e}",
            sols.len(),
            worst_at.0,
            worst_at.1
        ),
    )
}

fn ac3_normalization() -> Outcome {
    let sols = non_degenerate_solutions();
    let (mut worst_vertical, mut worst_base): (f64, f64) = (0.0, 0.0);
    let mut failing = Vec::new();
    for sol in &sols {
        let (base, vertical) = reduced_equation_residuals(sol, 1.0);
        worst_base = worst_base.max(base.abs());
        worst_vertical = worst_vertical.max(vertical.abs());
        if base.abs() > IDENTITY_TOL || vertical.abs() > IDENTITY_TOL {
            failing.push(format!("({}, {})", sol.params.alpha(), sol.params.beta()));
        }
    }
    outcome(
        failing.is_empty(),
        format!(
            "{} points; |(m+M)(1/a+1/b) - 1| <= {worst_vertical:.3e}, |base-pair balance - 1| <= {worst_base:.3e} (tol {IDENTITY_TOL:e}); failing at [{}]",
            sols.len(),
            failing.join(" ")
        ),
    )
}

fn ac4_known_points() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let p = TrapezoidParams::new(0.5, 1.0).unwrap();
    let sol = solve_masses(&p).unwrap();
    let (m_lin, big_m_lin) = solve_masses_linear(&p).unwrap();
    let label = RegionLabel::from_masses(sol.top_mass, sol.base_mass);
    let close = (m_lin - 0.520_249_5).abs() <= KNOWN_POINT_TOL
        && (big_m_lin - 0.181_467_2).abs() <= KNOWN_POINT_TOL
        && (sol.top_mass - m_lin).abs() <= KNOWN_POINT_TOL
        && (sol.base_mass - big_m_lin).abs() <= KNOWN_POINT_TOL;
    ok &= label == RegionLabel::BothPositive && close;
    notes.push(format!("(0.5,1): {label}, m={m_lin:.9}, M={big_m_lin:.9}"));

    let sol = solve_masses(&TrapezoidParams::new(0.5, 0.5).unwrap()).unwrap();
    ok &= sol.base_mass < 0.0;
    notes.push(format!("(0.5,0.5): M={:.9}", sol.base_mass));

    let sol = solve_masses(&TrapezoidParams::new(1.0, 1.0).unwrap()).unwrap();
    let b = 2.0_f64.sqrt().powi(3);
    let expected = b / (2.0 * (1.0 + b));
    ok &= (sol.top_mass - expected).abs() <= SQUARE_TOL && (sol.base_mass - expected).abs() <= SQUARE_TOL;
    notes.push(format!(
        "(1,1): m={:.12}, M={:.12}, expected {expected:.12}",
        sol.top_mass, sol.base_mass
    ));

    outcome(ok, notes.join("; "))
}

fn ac5_region_identity() -> Outcome {
    let start = Instant::now();
    let grid = raster(AxisSpec::new(0.0, 1.0, 400), AxisSpec::new(0.0, 1.0, 400)).unwrap();
    let mut both_mismatch = 0;
    let mut top_mismatch = 0;
    let mut degenerate = 0;
    for cell in &grid.cells {
        if cell.label == RegionLabel::Degenerate {
            degenerate += 1;
            continue;
        }
        let both = cell.label == RegionLabel::BothPositive;
        if both != (cell.f1 < 0.0 && cell.f3 < 0.0) {
            both_mismatch += 1;
        }
        let top_positive = cell.top_mass.unwrap() > 0.0;
        let same_sign = (cell.f1 > 0.0 && cell.f3 > 0.0) || (cell.f1 < 0.0 && cell.f3 < 0.0);
        if top_positive != same_sign {
            top_mismatch += 1;
        }
    }
    let both_count = grid
        .cells
        .iter()
        .filter(|c| c.label == RegionLabel::BothPositive)
        .count();
    outcome(
        both_mismatch == 0 && top_mismatch == 0,
        format!(
            "{} cells, {both_count} both-positive, {both_mismatch} mismatches vs (f1<0 and f3<0), {top_mismatch} mismatches vs same-sign set, {degenerate} degenerate cells, {:.2}s",
            grid.cells.len(),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn ac6_f2_negative() -> Outcome {
    let mut points = oracle_grid();
    points.extend(
        AxisSpec::new(0.0, 1.0, 400)
            .samples()
            .into_iter()
            .flat_map(|b| AxisSpec::new(0.0, 1.0, 400).samples().into_iter().map(move |a| (a, b)))
            .map(|(a, b)| TrapezoidParams::new(a, b).unwrap()),
    );
    let violations = points
        .iter()
        .filter(|p| sign_functions(&compute_distance_cubes(p), p.alpha()).f2 >= 0.0)
        .count();
    outcome(
        violations == 0,
        format!("{} samples, {violations} with f2 >= 0", points.len()),
    )
}

fn ac7_exact_boundary() -> Outcome {
    match exact_boundary(BoundaryFunction::F1, FixedAxis::Alpha, 0.5, 0.5, 1.0) {
        Ok(BoundaryOutcome::Root {
            value,
            f_value,
            iterations,
        }) => {
            let check = exact_value(BoundaryFunction::F1, &TrapezoidParams::new(0.5, value).unwrap());
            outcome(
                (0.86..=0.88).contains(&value) && check.abs() <= BOUNDARY_F_TOL && f_value == check,
                format!(
                    "beta* = {value:.12}, |f1| = {:.3e} after {iterations} bisections",
                    check.abs()
                ),
            )
        }
        other => outcome(false, format!("unexpected {other:?}")),
    }
}

fn ac8_published_audit() -> Outcome {
    let g1_half = g1_published(0.5);
    let g1_ok = matches!(
        g1_half,
        Err(PublishedFormulaError::NegativeRadicand {
            which: Radicand::Denominator,
            ..
        })
    );
    let audit = audit_published_formulas(10_000).unwrap();
    let edges_real = audit
        .g1
        .real_intervals
        .iter()
        .all(|[lo, hi]| g1_published(*lo).is_ok() && g1_published(*hi).is_ok())
        && audit
            .g3
            .real_intervals
            .iter()
            .all(|[lo, hi]| g3_published(*lo).is_ok() && g3_published(*hi).is_ok());
    let fmt = |iv: &[[f64; 2]]| {
        if iv.is_empty() {
            "none".to_string()
        } else {
            iv.iter()
                .map(|[a, b]| format!("({a:.6}, {b:.6})"))
                .collect::<Vec<_>>()
                .join(" ")
        }
    };
    outcome(
        g1_ok && edges_real,
        format!(
            "g1(0.5): {:?}; g1 real on {}; g3 real on {} (max |g3 - exact| {})",
            g1_half.err().map(|e| e.to_string()),
            fmt(&audit.g1.real_intervals),
            fmt(&audit.g3.real_intervals),
            audit
                .g3
                .max_exact_deviation
                .map_or("n/a".into(), |d| format!("{d:.3e}")),
        ),
    )
}

fn ac9_dynamical_rigidity() -> Outcome {
    let start = Instant::now();
    let (state, _) = init_relative_equilibrium(&TrapezoidParams::new(0.5, 1.0).unwrap(), false).unwrap();
    let traj = integrate(&state, IntegratorConfig::new(1e-3, TAU)).unwrap();
    let r = rigidity_metrics(&traj);
    let elapsed = start.elapsed().as_secs_f64();
    outcome(
        r.max_distance_deviation <= RIGIDITY_TOL
            && r.final_displacement <= RIGIDITY_TOL
            && r.max_energy_drift <= DRIFT_TOL
            && r.max_angular_momentum_drift <= DRIFT_TOL
            && elapsed < 10.0,
        format!(
            "distance deviation {:.3e}, return error {:.3e}, energy drift {:.3e}, angular momentum drift {:.3e}, {elapsed:.2}s",
            r.max_distance_deviation, r.final_displacement, r.max_energy_drift, r.max_angular_momentum_drift
        ),
    )
}

fn ac10_negative_control() -> Outcome {
    let p = TrapezoidParams::new(0.5, 1.0).unwrap();
    let sol = solve_masses(&p).unwrap();
    let cfg = build_configuration(&p, 1.1 * sol.top_mass, sol.base_mass).unwrap();
    let residual = cc_residual(&PlanarSystem::from_trapezoid(&cfg).unwrap(), 1.0).max_residual;
    let bodies = cfg
        .positions
        .iter()
        .map(|&position| BodyState {
            position,
            velocity: position.perp(),
        })
        .collect();
    let state = SystemState::new(cfg.masses().to_vec(), bodies).unwrap();
    let traj = integrate(&state, IntegratorConfig::new(1e-3, TAU)).unwrap();
    let deviation = rigidity_metrics(&traj).max_distance_deviation;
    outcome(
        residual > NEGATIVE_CONTROL_FLOOR && deviation > NEGATIVE_CONTROL_FLOOR,
        format!("max_residual {residual:.3e}, distance deviation {deviation:.3e} (both must exceed {NEGATIVE_CONTROL_FLOOR:e})"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1", "closed form vs linear oracle", ac1_oracle_agreement),
        (
            "AC2",
            "closed-form masses satisfy the CC equations at lambda = 1",
            ac2_closed_form_is_central,
        ),
        ("AC3", "normalization identities", ac3_normalization),
        ("AC4", "known-point classifications", ac4_known_points),
        ("AC5", "region set identities on 400x400 raster", ac5_region_identity),
        ("AC6", "f2 < 0", ac6_f2_negative),
        ("AC7", "exact f1 boundary at alpha = 0.5", ac7_exact_boundary),
        ("AC8", "approximate boundary formula audit", ac8_published_audit),
        (
            "AC9",
            "rigid rotation from (0.5, 1) over one period",
            ac9_dynamical_rigidity,
        ),
        ("AC10", "negative control: m + 10%", ac10_negative_control),
    ];
    let mut failed = Vec::new();
    for (id, title, check) in criteria {
        let result = check();
        let tag = if result.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {id} {title}: {}", result.detail);
        if !result.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        println!(
            "acceptance: {} of {} criteria failed: {}",
            failed.len(),
            criteria.len(),
            failed.join(", ")
        );
        std::process::exit(1);
    }
}
