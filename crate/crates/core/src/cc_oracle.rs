//! Generic planar N-body central-configuration check (G = 1).
//!
//! A configuration is central when every body's attraction
//! `A_k = sum_j m_j (r_j - r_k) / |r_j - r_k|^3` equals `-lambda (r_k - c)`
//! for one common `lambda`, `c` being the center of mass. Masses may be
//! negative; only the total mass must be nonzero.

use serde::Serialize;

use crate::error::OracleError;
use crate::geometry::{PlanarPoint, TrapezoidConfiguration};

/// Smallest pairwise separation accepted by [`PlanarSystem::new`].
pub const MIN_SEPARATION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Body {
    pub mass: f64,
    pub position: PlanarPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanarSystem {
    bodies: Vec<Body>,
}

impl PlanarSystem {
    pub fn new(bodies: Vec<Body>) -> Result<Self, OracleError> {
        if bodies.len() < 2 {
            return Err(OracleError::TooFewBodies(bodies.len()));
        }
        for (index, body) in bodies.iter().enumerate() {
            if !body.mass.is_finite() || !body.position.is_finite() {
                return Err(OracleError::NonFinite { index });
            }
        }
        for i in 0..bodies.len() {
            for j in i + 1..bodies.len() {
                let separation = (bodies[i].position - bodies[j].position).norm();
                if separation <= MIN_SEPARATION {
                    return Err(OracleError::CoincidentBodies { i, j, separation });
                }
            }
        }
        let total: f64 = bodies.iter().map(|b| b.mass).sum();
        if total == 0.0 {
            return Err(OracleError::ZeroTotalMass);
        }
        Ok(Self { bodies })
    }

    pub fn from_parts(masses: &[f64], positions: &[PlanarPoint]) -> Result<Self, OracleError> {
        assert_eq!(masses.len(), positions.len(), "one mass per position");
        Self::new(
            masses
                .iter()
                .zip(positions)
                .map(|(&mass, &position)| Body { mass, position })
                .collect(),
        )
    }

    pub fn from_trapezoid(cfg: &TrapezoidConfiguration) -> Result<Self, OracleError> {
        Self::from_parts(&cfg.masses(), &cfg.positions)
    }

    pub fn bodies(&self) -> &[Body] {
        &self.bodies
    }

    pub fn total_mass(&self) -> f64 {
        self.bodies.iter().map(|b| b.mass).sum()
    }

    /// A copy with every position shifted by `offset`.
    pub fn translated(&self, offset: PlanarPoint) -> Self {
        Self {
            bodies: self
                .bodies
                .iter()
                .map(|b| Body {
                    mass: b.mass,
                    position: b.position + offset,
                })
                .collect(),
        }
    }

    /// A copy with every position multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self, OracleError> {
        Self::new(
            self.bodies
                .iter()
                .map(|b| Body {
                    mass: b.mass,
                    position: factor * b.position,
                })
                .collect(),
        )
    }

    fn attraction_on(&self, k: usize) -> PlanarPoint {
        let rk = self.bodies[k].position;
        self.bodies
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .fold(PlanarPoint::ORIGIN, |acc, (_, body)| {
                let d = body.position - rk;
                let r2 = d.norm_squared();
                acc + (body.mass / (r2 * r2.sqrt())) * d
            })
    }
}

pub fn center_of_mass(system: &PlanarSystem) -> PlanarPoint {
    let weighted = system
        .bodies()
        .iter()
        .fold(PlanarPoint::ORIGIN, |acc, b| acc + b.mass * b.position);
    (1.0 / system.total_mass()) * weighted
}

/// Self-potential `U` over unordered pairs and moment `I = 1/2 sum m |r|^2`
/// about the origin.
pub fn potential_and_moment(system: &PlanarSystem) -> (f64, f64) {
    let bodies = system.bodies();
    let mut potential = 0.0;
    for i in 0..bodies.len() {
        for j in i + 1..bodies.len() {
            potential += bodies[i].mass * bodies[j].mass / (bodies[i].position - bodies[j].position).norm();
        }
    }
    let moment = 0.5 * bodies.iter().map(|b| b.mass * b.position.norm_squared()).sum::<f64>();
    (potential, moment)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    /// Multiplier the residual was evaluated at.
    pub lambda: f64,
    /// Least-squares fit of each attraction to `-(r_k - c)`; `None` for a
    /// body sitting on the center of mass.
    pub lambda_per_body: Vec<Option<f64>>,
    /// `U / (2 I)` with `I` taken about the center of mass; `None` when `I`
    /// vanishes.
    pub lambda_energy: Option<f64>,
    pub potential: f64,
    /// Moment about the center of mass.
    pub moment: f64,
    pub defect_norms: Vec<f64>,
    pub max_residual: f64,
    /// Mean attraction norm across bodies; the scale `max_residual` is
    /// compared against.
    pub attraction_scale: f64,
    pub com: PlanarPoint,
}

impl ResidualReport {
    pub fn relative_residual(&self) -> f64 {
        if self.attraction_scale > 0.0 {
            self.max_residual / self.attraction_scale
        } else {
            self.max_residual
        }
    }
}

/// Per-body defect `A_k + lambda (r_k - c)` at a caller-supplied `lambda`.
pub fn cc_residual(system: &PlanarSystem, lambda: f64) -> ResidualReport {
    let com = center_of_mass(system);
    let centered = system.translated(-com);
    let (potential, moment) = potential_and_moment(&centered);

    let n = system.bodies().len();
    let mut lambda_per_body = Vec::with_capacity(n);
    let mut defect_norms = Vec::with_capacity(n);
    let mut attraction_sum = 0.0;
    for k in 0..n {
        let attraction = system.attraction_on(k);
        let offset = system.bodies()[k].position - com;
        let offset2 = offset.norm_squared();
        lambda_per_body.push((offset2 > 0.0).then(|| -attraction.dot(offset) / offset2));
        defect_norms.push((attraction + lambda * offset).norm());
        attraction_sum += attraction.norm();
    }
    let max_residual = defect_norms.iter().copied().fold(0.0, f64::max);
    let lambda_energy = (moment != 0.0).then(|| potential / (2.0 * moment));

    ResidualReport {
        lambda,
        lambda_per_body,
        lambda_energy,
        potential,
        moment,
        defect_norms,
        max_residual,
        attraction_scale: attraction_sum / n as f64,
        com,
    }
}

/// Recenters on the center of mass, infers `lambda = U / (2 I)` and accepts
/// when `max_residual <= tol * attraction_scale`.
pub fn is_central_configuration(system: &PlanarSystem, tol: f64) -> (bool, ResidualReport) {
    let centered = system.translated(-center_of_mass(system));
    let (potential, moment) = potential_and_moment(&centered);
    let lambda = potential / (2.0 * moment);
    let report = cc_residual(&centered, lambda);
    let verdict = lambda.is_finite() && report.max_residual <= tol * report.attraction_scale;
    (verdict, report)
}
