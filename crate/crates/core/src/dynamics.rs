//! Newtonian integration (G = 1) used to check that a central configuration
//! launched with circular velocities rotates rigidly.

use serde::Serialize;

use crate::error::DynamicsError;
use crate::geometry::{build_configuration_relaxed, DistanceCubes, PlanarPoint, TrapezoidParams};
use crate::mass_solver::{solve_masses, MassSolution, RegionLabel};

/// Integration aborts when two bodies come closer than this.
pub const COLLISION_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_STEP: f64 = 1e-3;
pub const DEFAULT_STRIDE: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct BodyState {
    pub position: PlanarPoint,
    pub velocity: PlanarPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemState {
    pub masses: Vec<f64>,
    pub bodies: Vec<BodyState>,
    pub time: f64,
}

impl SystemState {
    pub fn new(masses: Vec<f64>, bodies: Vec<BodyState>) -> Result<Self, DynamicsError> {
        if masses.len() != bodies.len() {
            return Err(DynamicsError::ShapeMismatch {
                masses: masses.len(),
                bodies: bodies.len(),
            });
        }
        Ok(Self {
            masses,
            bodies,
            time: 0.0,
        })
    }

    pub fn positions(&self) -> Vec<PlanarPoint> {
        self.bodies.iter().map(|b| b.position).collect()
    }

    pub fn kinetic_energy(&self) -> f64 {
        0.5 * self
            .masses
            .iter()
            .zip(&self.bodies)
            .map(|(m, b)| m * b.velocity.norm_squared())
            .sum::<f64>()
    }

    /// Kinetic energy minus the self-potential.
    pub fn energy(&self) -> f64 {
        let mut potential = 0.0;
        for i in 0..self.bodies.len() {
            for j in i + 1..self.bodies.len() {
                potential +=
                    self.masses[i] * self.masses[j] / (self.bodies[i].position - self.bodies[j].position).norm();
            }
        }
        self.kinetic_energy() - potential
    }

    pub fn angular_momentum(&self) -> f64 {
        self.masses
            .iter()
            .zip(&self.bodies)
            .map(|(m, b)| m * b.position.cross(b.velocity))
            .sum()
    }

    pub fn linear_momentum(&self) -> PlanarPoint {
        self.masses
            .iter()
            .zip(&self.bodies)
            .fold(PlanarPoint::ORIGIN, |acc, (m, b)| acc + *m * b.velocity)
    }
}

fn check_separations(positions: &[PlanarPoint]) -> Result<(), DynamicsError> {
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            let separation = (positions[i] - positions[j]).norm();
            if !(separation >= COLLISION_TOLERANCE) {
                return Err(DynamicsError::Collision { i, j, separation });
            }
        }
    }
    Ok(())
}

fn accelerations_at(masses: &[f64], positions: &[PlanarPoint]) -> Result<Vec<PlanarPoint>, DynamicsError> {
    check_separations(positions)?;
    let mut acc = vec![PlanarPoint::ORIGIN; positions.len()];
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            let d = positions[j] - positions[i];
            let r2 = d.norm_squared();
            let inv_r3 = 1.0 / (r2 * r2.sqrt());
            acc[i] = acc[i] + (masses[j] * inv_r3) * d;
            acc[j] = acc[j] - (masses[i] * inv_r3) * d;
        }
    }
    Ok(acc)
}

/// Pairwise gravitational accelerations.
pub fn accelerations(state: &SystemState) -> Result<Vec<PlanarPoint>, DynamicsError> {
    accelerations_at(&state.masses, &state.positions())
}

/// Accelerations of a trapezoid state written out pair by pair with the
/// trapezoid's distance cubes (`a` lateral, `b` diagonal, `alpha^3` top,
/// unit base). Bodies must sit on the trapezoid described by `params`.
pub fn trapezoid_accelerations(
    params: &TrapezoidParams,
    cubes: &DistanceCubes,
    top_mass: f64,
    base_mass: f64,
    positions: &[PlanarPoint; 4],
) -> [PlanarPoint; 4] {
    let [r1, r2, r3, r4] = *positions;
    let DistanceCubes { a, b } = *cubes;
    let top_cube = params.alpha().powi(3);
    let (m, big_m) = (top_mass, base_mass);
    [
        (m / a) * (r2 - r1) + (m / b) * (r3 - r1) + big_m * (r4 - r1),
        (big_m / a) * (r1 - r2) + (m / top_cube) * (r3 - r2) + (big_m / b) * (r4 - r2),
        (big_m / b) * (r1 - r3) + (m / top_cube) * (r2 - r3) + (big_m / a) * (r4 - r3),
        (m / b) * (r2 - r4) + big_m * (r1 - r4) + (m / a) * (r3 - r4),
    ]
}

/// Masses, positions and circular velocities `v = omega * perp(r)` with
/// `omega = sqrt(lambda) = 1` for the closed-form trapezoid solution.
///
/// Parameters outside the positive-mass region are refused unless
/// `allow_unphysical` is set.
pub fn init_relative_equilibrium(
    params: &TrapezoidParams,
    allow_unphysical: bool,
) -> Result<(SystemState, MassSolution), DynamicsError> {
    let sol = solve_masses(params)?;
    let label = RegionLabel::from_masses(sol.top_mass, sol.base_mass);
    if label != RegionLabel::BothPositive && !allow_unphysical {
        return Err(DynamicsError::Unphysical {
            top_mass: sol.top_mass,
            base_mass: sol.base_mass,
        });
    }
    let cfg = build_configuration_relaxed(params, sol.top_mass, sol.base_mass)?;
    let omega = sol.lambda.sqrt();
    let bodies = cfg
        .positions
        .iter()
        .map(|&position| BodyState {
            position,
            velocity: omega * position.perp(),
        })
        .collect();
    let state = SystemState::new(cfg.masses().to_vec(), bodies)?;
    Ok((state, sol))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_end: f64,
    /// Record every `stride`-th step (the final step is always recorded).
    pub stride: usize,
}

impl IntegratorConfig {
    pub fn new(dt: f64, t_end: f64) -> Self {
        Self {
            dt,
            t_end,
            stride: DEFAULT_STRIDE,
        }
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.stride = stride;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Termination {
    Completed,
    Collision {
        time: f64,
        i: usize,
        j: usize,
        separation: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub samples: Vec<SystemState>,
    pub energy_series: Vec<f64>,
    pub angular_momentum_series: Vec<f64>,
    pub termination: Termination,
}

impl Trajectory {
    fn record(&mut self, state: &SystemState) {
        self.energy_series.push(state.energy());
        self.angular_momentum_series.push(state.angular_momentum());
        self.samples.push(state.clone());
    }
}

fn rk4_step(masses: &[f64], state: &[BodyState], h: f64) -> Result<Vec<BodyState>, DynamicsError> {
    let shifted = |dx: &[PlanarPoint], f: f64| -> Vec<PlanarPoint> {
        state.iter().zip(dx).map(|(b, d)| b.position + f * *d).collect()
    };
    let kicked = |dv: &[PlanarPoint], f: f64| -> Vec<PlanarPoint> {
        state.iter().zip(dv).map(|(b, a)| b.velocity + f * *a).collect()
    };
    let pos0: Vec<PlanarPoint> = state.iter().map(|b| b.position).collect();

    let k1x: Vec<PlanarPoint> = state.iter().map(|b| b.velocity).collect();
    let k1v = accelerations_at(masses, &pos0)?;
    let k2x = kicked(&k1v, 0.5 * h);
    let k2v = accelerations_at(masses, &shifted(&k1x, 0.5 * h))?;
    let k3x = kicked(&k2v, 0.5 * h);
    let k3v = accelerations_at(masses, &shifted(&k2x, 0.5 * h))?;
    let k4x = kicked(&k3v, h);
    let k4v = accelerations_at(masses, &shifted(&k3x, h))?;

    let sixth = h / 6.0;
    Ok((0..state.len())
        .map(|i| BodyState {
            position: state[i].position + sixth * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]),
            velocity: state[i].velocity + sixth * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]),
        })
        .collect())
}

/// Fixed-step classical RK4 from `initial` to `initial.time + t_end`.
///
/// The step is shrunk slightly so that a whole number of steps lands on
/// `t_end`. A collision ends the run early; the samples recorded so far are
/// returned with [`Termination::Collision`].
pub fn integrate(initial: &SystemState, config: IntegratorConfig) -> Result<Trajectory, DynamicsError> {
    if !(config.dt.is_finite() && config.dt > 0.0) {
        return Err(DynamicsError::InvalidStep(config.dt));
    }
    if !(config.t_end.is_finite() && config.t_end > 0.0) {
        return Err(DynamicsError::InvalidHorizon(config.t_end));
    }
    if config.stride == 0 {
        return Err(DynamicsError::InvalidStride);
    }
    if initial.masses.len() != initial.bodies.len() {
        return Err(DynamicsError::ShapeMismatch {
            masses: initial.masses.len(),
            bodies: initial.bodies.len(),
        });
    }
    check_separations(&initial.positions())?;

    let steps = (config.t_end / config.dt - 1e-9).ceil().max(1.0) as usize;
    let h = config.t_end / steps as f64;
    let mut trajectory = Trajectory {
        samples: Vec::with_capacity(steps / config.stride + 2),
        energy_series: Vec::new(),
        angular_momentum_series: Vec::new(),
        termination: Termination::Completed,
    };
    trajectory.record(initial);

    let mut state = initial.clone();
    for step in 1..=steps {
        match rk4_step(&state.masses, &state.bodies, h) {
            Ok(next) => {
                state.bodies = next;
                state.time = initial.time + step as f64 * h;
            }
            Err(DynamicsError::Collision { i, j, separation }) => {
                trajectory.termination = Termination::Collision {
                    time: state.time,
                    i,
                    j,
                    separation,
                };
                if trajectory.samples.last().map(|s| s.time) != Some(state.time) {
                    trajectory.record(&state);
                }
                return Ok(trajectory);
            }
            Err(other) => return Err(other),
        }
        if step % config.stride == 0 || step == steps {
            trajectory.record(&state);
        }
    }
    Ok(trajectory)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RigidityReport {
    /// Max over samples and pairs of `|d_ij(t) - d_ij(0)| / d_ij(0)`.
    pub max_distance_deviation: f64,
    pub max_energy_drift: f64,
    pub max_angular_momentum_drift: f64,
    /// Largest distance of any body at the last sample from its start.
    pub final_displacement: f64,
    pub samples: usize,
    pub final_time: f64,
}

fn relative_drift(series: &[f64]) -> f64 {
    let Some(&first) = series.first() else { return 0.0 };
    let scale = if first != 0.0 { first.abs() } else { 1.0 };
    series.iter().map(|v| (v - first).abs() / scale).fold(0.0, f64::max)
}

pub fn rigidity_metrics(traj: &Trajectory) -> RigidityReport {
    let Some(first) = traj.samples.first() else {
        return RigidityReport {
            max_distance_deviation: 0.0,
            max_energy_drift: 0.0,
            max_angular_momentum_drift: 0.0,
            final_displacement: 0.0,
            samples: 0,
            final_time: 0.0,
        };
    };
    let n = first.bodies.len();
    let pair_distances = |s: &SystemState| -> Vec<f64> {
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push((s.bodies[i].position - s.bodies[j].position).norm());
            }
        }
        out
    };
    let initial = pair_distances(first);
    let max_distance_deviation = traj
        .samples
        .iter()
        .flat_map(|s| {
            pair_distances(s)
                .into_iter()
                .zip(initial.iter())
                .map(|(d, d0)| (d - d0).abs() / d0)
                .collect::<Vec<_>>()
        })
        .fold(0.0, f64::max);
    let last = traj.samples.last().unwrap_or(first);
    let final_displacement = last
        .bodies
        .iter()
        .zip(&first.bodies)
        .map(|(b, b0)| (b.position - b0.position).norm())
        .fold(0.0, f64::max);
    RigidityReport {
        max_distance_deviation,
        max_energy_drift: relative_drift(&traj.energy_series),
        max_angular_momentum_drift: relative_drift(&traj.angular_momentum_series),
        final_displacement,
        samples: traj.samples.len(),
        final_time: last.time,
    }
}
