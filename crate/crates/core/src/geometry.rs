//! Trapezoid geometry at unit base length.
//!
//! The two equal masses `M` (bodies 1 and 4) sit on the base of length 1,
//! below the center of mass; the two equal masses `m` (bodies 2 and 3) sit on
//! the top side of length `alpha`, above it, at height `beta` over the base.
//!
//! ```text
//!          2 (m) ---- 3 (m)         y = +r_A
//!         /              \
//!        /                \
//!  1 (M) ------------------ 4 (M)   y = -r_B
//! ```

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;

/// Upper bound on `beta` accepted by [`TrapezoidParams::new`].
pub const DEFAULT_MAX_BETA: f64 = 2.0;

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub const ORIGIN: PlanarPoint = PlanarPoint { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the planar cross product.
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Rotation by +90 degrees.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for PlanarPoint {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for PlanarPoint {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for PlanarPoint {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl Mul<PlanarPoint> for f64 {
    type Output = PlanarPoint;
    fn mul(self, rhs: PlanarPoint) -> PlanarPoint {
        PlanarPoint::new(self * rhs.x, self * rhs.y)
    }
}

impl Mul<f64> for PlanarPoint {
    type Output = PlanarPoint;
    fn mul(self, rhs: f64) -> PlanarPoint {
        rhs * self
    }
}

/// Shape parameters of the trapezoid: `alpha` is the top/base side ratio,
/// `beta` the height. Lengths are in units of the base side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapezoidParams {
    alpha: f64,
    beta: f64,
}

impl TrapezoidParams {
    /// Validates `0 < alpha <= 1` and `0 < beta <= 2`.
    pub fn new(alpha: f64, beta: f64) -> Result<Self, GeometryError> {
        Self::with_max_beta(alpha, beta, DEFAULT_MAX_BETA)
    }

    pub fn with_max_beta(alpha: f64, beta: f64, max_beta: f64) -> Result<Self, GeometryError> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(GeometryError::AlphaNotPositive(alpha));
        }
        if alpha > 1.0 {
            return Err(GeometryError::AlphaAboveOne {
                alpha,
                rescaled_alpha: 1.0 / alpha,
                rescaled_beta: beta / alpha,
            });
        }
        if !beta.is_finite() || beta <= 0.0 {
            return Err(GeometryError::BetaNotPositive(beta));
        }
        if beta > max_beta {
            return Err(GeometryError::BetaAboveMax { beta, max_beta });
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Cubed lateral (`a`, pairs 1-2 and 3-4) and diagonal (`b`, pairs 1-3 and
/// 2-4) distances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceCubes {
    pub a: f64,
    pub b: f64,
}

pub fn compute_distance_cubes(params: &TrapezoidParams) -> DistanceCubes {
    let (alpha, beta) = (params.alpha(), params.beta());
    let beta2 = beta * beta;
    let lateral = (0.5 - 0.5 * alpha).powi(2) + beta2;
    let diagonal = (0.5 + 0.5 * alpha).powi(2) + beta2;
    DistanceCubes {
        a: lateral * lateral.sqrt(),
        b: diagonal * diagonal.sqrt(),
    }
}

/// Bodies 1..4 placed with the center of mass at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapezoidConfiguration {
    pub params: TrapezoidParams,
    pub positions: [PlanarPoint; 4],
    /// Distance from the center of mass up to the top (m) side.
    pub r_a: f64,
    /// Distance from the center of mass down to the base (M) side.
    pub r_b: f64,
    pub top_mass: f64,
    pub base_mass: f64,
}

impl TrapezoidConfiguration {
    /// Masses in body order `[M, m, m, M]`.
    pub fn masses(&self) -> [f64; 4] {
        [self.base_mass, self.top_mass, self.top_mass, self.base_mass]
    }
}

/// Places the four bodies for positive masses `top_mass` (m) and
/// `base_mass` (M).
pub fn build_configuration(
    params: &TrapezoidParams,
    top_mass: f64,
    base_mass: f64,
) -> Result<TrapezoidConfiguration, GeometryError> {
    if !(top_mass > 0.0 && base_mass > 0.0) || !top_mass.is_finite() || !base_mass.is_finite() {
        return Err(GeometryError::NonPositiveMass { top_mass, base_mass });
    }
    build_configuration_relaxed(params, top_mass, base_mass)
}

/// Like [`build_configuration`] but accepts masses of either sign as long as
/// `m + M` is nonzero; needed to evaluate algebraic solutions with a negative
/// mass.
pub fn build_configuration_relaxed(
    params: &TrapezoidParams,
    top_mass: f64,
    base_mass: f64,
) -> Result<TrapezoidConfiguration, GeometryError> {
    let total = top_mass + base_mass;
    if !total.is_finite() || total == 0.0 || (total.abs() <= f64::EPSILON * (top_mass.abs() + base_mass.abs())) {
        return Err(GeometryError::DegenerateMasses { top_mass, base_mass });
    }
    let (alpha, beta) = (params.alpha(), params.beta());
    let r_a = base_mass * beta / total;
    let r_b = top_mass * beta / total;
    let positions = [
        PlanarPoint::new(-0.5, -r_b),
        PlanarPoint::new(-0.5 * alpha, r_a),
        PlanarPoint::new(0.5 * alpha, r_a),
        PlanarPoint::new(0.5, -r_b),
    ];
    Ok(TrapezoidConfiguration {
        params: *params,
        positions,
        r_a,
        r_b,
        top_mass,
        base_mass,
    })
}

/// Rebuilds the four positions from the relative vector `r = r_A - r_B`
/// between the pair centers and the base vector `r41 = r_1 - r_4`.
pub fn reconstruct_from_relative(
    r: PlanarPoint,
    r41: PlanarPoint,
    alpha: f64,
    top_mass: f64,
    base_mass: f64,
) -> Result<[PlanarPoint; 4], GeometryError> {
    let total = top_mass + base_mass;
    if !total.is_finite() || total == 0.0 {
        return Err(GeometryError::DegenerateMasses { top_mass, base_mass });
    }
    let base_share = -(top_mass / total) * r;
    let top_share = (base_mass / total) * r;
    Ok([
        base_share + 0.5 * r41,
        top_share + (0.5 * alpha) * r41,
        top_share - (0.5 * alpha) * r41,
        base_share - 0.5 * r41,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(alpha: f64, beta: f64) -> TrapezoidParams {
        TrapezoidParams::new(alpha, beta).unwrap()
    }

    #[test]
    fn distance_cubes_known_points() {
        let c = compute_distance_cubes(&params(1.0, 1.0));
        assert_eq!(c.a, 1.0);
        assert_relative_eq!(c.b, 2.0_f64.powf(1.5), max_relative = 1e-15);

        let c = compute_distance_cubes(&params(0.5, 1.0));
        assert_relative_eq!(c.a, 1.0625_f64.powf(1.5), max_relative = 1e-15);
        assert_relative_eq!(c.a, 1.095_199_931_804_691, max_relative = 1e-14);
        assert_eq!(c.b, 1.953125);

        let c = compute_distance_cubes(&params(0.5, 0.5));
        assert_relative_eq!(c.a, 0.174_692_810_742_171_08, max_relative = 1e-14);
        assert_relative_eq!(c.b, 0.732_377_602_828_622_9, max_relative = 1e-14);
    }

    #[test]
    fn params_domain() {
        assert!(matches!(
            TrapezoidParams::new(0.0, 1.0),
            Err(GeometryError::AlphaNotPositive(_))
        ));
        assert!(matches!(
            TrapezoidParams::new(0.5, 0.0),
            Err(GeometryError::BetaNotPositive(_))
        ));
        assert!(matches!(
            TrapezoidParams::new(0.5, 2.5),
            Err(GeometryError::BetaAboveMax { .. })
        ));
        assert!(TrapezoidParams::with_max_beta(0.5, 2.5, 3.0).is_ok());
        assert!(TrapezoidParams::new(f64::NAN, 1.0).is_err());
        match TrapezoidParams::new(2.0, 1.0) {
            Err(GeometryError::AlphaAboveOne {
                rescaled_alpha,
                rescaled_beta,
                ..
            }) => {
                assert_eq!(rescaled_alpha, 0.5);
                assert_eq!(rescaled_beta, 0.5);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(TrapezoidParams::new(1.0, 1.0).is_ok());
    }

    #[test]
    fn equal_masses_split_height_evenly() {
        let cfg = build_configuration(&params(1.0, 1.0), 0.3, 0.3).unwrap();
        assert_eq!(cfg.r_a, 0.5);
        assert_eq!(cfg.r_b, 0.5);
    }

    #[test]
    fn unequal_masses_split() {
        let cfg = build_configuration(&params(0.5, 1.0), 0.520_250_423_059_361_2, 0.181_466_885_514_975_86).unwrap();
        assert_relative_eq!(cfg.r_a, 0.258_603_975_272_689_1, max_relative = 1e-14);
        assert_relative_eq!(cfg.r_b, 0.741_396_024_727_310_9, max_relative = 1e-14);
        assert_relative_eq!(cfg.r_a + cfg.r_b, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn strict_build_rejects_zero_mass() {
        assert!(matches!(
            build_configuration(&params(0.5, 1.0), 1.0, 0.0),
            Err(GeometryError::NonPositiveMass { .. })
        ));
        assert!(matches!(
            build_configuration_relaxed(&params(0.5, 1.0), 1.0, -1.0),
            Err(GeometryError::DegenerateMasses { .. })
        ));
        assert!(build_configuration_relaxed(&params(0.5, 1.0), 1.0, -0.2).is_ok());
    }

    #[test]
    fn reconstruct_examples() {
        let beta = 0.7;
        let pts =
            reconstruct_from_relative(PlanarPoint::new(0.0, beta), PlanarPoint::new(-1.0, 0.0), 1.0, 2.0, 2.0).unwrap();
        assert_eq!(pts[0], PlanarPoint::new(-0.5, -beta / 2.0));

        let zero = reconstruct_from_relative(PlanarPoint::ORIGIN, PlanarPoint::ORIGIN, 0.4, 1.0, 3.0).unwrap();
        assert!(zero.iter().all(|p| *p == PlanarPoint::ORIGIN));

        assert!(reconstruct_from_relative(PlanarPoint::ORIGIN, PlanarPoint::ORIGIN, 0.4, 1.0, -1.0).is_err());
    }

    #[test]
    fn a_below_b_on_dense_grid() {
        for i in 1..=200 {
            for j in 1..=200 {
                let p = params(i as f64 / 200.0, 2.0 * j as f64 / 200.0);
                let c = compute_distance_cubes(&p);
                assert!(c.a > 0.0 && c.a < c.b, "alpha={} beta={}", p.alpha(), p.beta());
            }
        }
    }

    #[test]
    fn cubes_increase_with_beta() {
        for i in 1..=20 {
            let alpha = i as f64 / 20.0;
            let mut prev = compute_distance_cubes(&params(alpha, 0.01));
            for j in 2..=200 {
                let next = compute_distance_cubes(&params(alpha, 0.01 * j as f64));
                assert!(next.a > prev.a && next.b > prev.b);
                prev = next;
            }
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn built_positions_match_reconstruction(
                alpha in 1e-3f64..=1.0,
                beta in 1e-3f64..=2.0,
                m in 1e-3f64..10.0,
                big_m in 1e-3f64..10.0,
            ) {
                let p = TrapezoidParams::new(alpha, beta).unwrap();
                let cfg = build_configuration(&p, m, big_m).unwrap();
                let r41 = cfg.positions[0] - cfg.positions[3];
                let rebuilt = reconstruct_from_relative(PlanarPoint::new(0.0, beta), r41, alpha, m, big_m).unwrap();
                for (a, b) in cfg.positions.iter().zip(rebuilt.iter()) {
                    let scale = a.norm().max(1.0);
                    prop_assert!((*a - *b).norm() <= 1e-14 * scale);
                }
            }

            #[test]
            fn built_configuration_is_centered(
                alpha in 1e-3f64..=1.0,
                beta in 1e-3f64..=2.0,
                m in 1e-3f64..10.0,
                big_m in 1e-3f64..10.0,
            ) {
                let p = TrapezoidParams::new(alpha, beta).unwrap();
                let cfg = build_configuration(&p, m, big_m).unwrap();
                let masses = cfg.masses();
                let total: f64 = masses.iter().sum();
                let com = masses.iter().zip(cfg.positions.iter())
                    .fold(PlanarPoint::ORIGIN, |acc, (mi, ri)| acc + *mi * *ri);
                prop_assert!((1.0 / total * com).norm() <= 1e-14);
            }
        }
    }
}
