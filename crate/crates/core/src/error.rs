use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("alpha must be positive, got {0}")]
    AlphaNotPositive(f64),
    #[error(
        "alpha must not exceed 1, got {alpha}; the same shape is alpha={rescaled_alpha}, beta={rescaled_beta} after rescaling by the top side"
    )]
    AlphaAboveOne {
        alpha: f64,
        rescaled_alpha: f64,
        rescaled_beta: f64,
    },
    #[error("beta must be positive, got {0}")]
    BetaNotPositive(f64),
    #[error("beta {beta} exceeds the configured maximum {max_beta}")]
    BetaAboveMax { beta: f64, max_beta: f64 },
    #[error("masses must be positive, got m={top_mass}, M={base_mass}")]
    NonPositiveMass { top_mass: f64, base_mass: f64 },
    #[error("degenerate masses: m + M vanishes (m={top_mass}, M={base_mass})")]
    DegenerateMasses { top_mass: f64, base_mass: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MassError {
    #[error("degenerate parameters: |f3| = {f3:e} is below {threshold:e}, masses are unbounded")]
    Degenerate { f3: f64, threshold: f64 },
    #[error("singular 2x2 system: determinant {determinant:e} is below {threshold:e}")]
    SingularSystem { determinant: f64, threshold: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("a system needs at least 2 bodies, got {0}")]
    TooFewBodies(usize),
    #[error("body {index} has a non-finite mass or position")]
    NonFinite { index: usize },
    #[error("total mass is zero")]
    ZeroTotalMass,
    #[error("bodies {i} and {j} coincide (separation {separation:e})")]
    CoincidentBodies { i: usize, j: usize, separation: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegionError {
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("invalid range [{lo}, {hi}] for {axis}")]
    InvalidRange { axis: &'static str, lo: f64, hi: f64 },
    #[error("resolution must be positive")]
    ZeroResolution,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Failure of a published closed-form boundary formula to produce a real value.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PublishedFormulaError {
    #[error("negative radicand in the {which}: {value:e}")]
    NegativeRadicand { which: Radicand, value: f64 },
    #[error("negative discriminant h1^2 - 4 h0 h2 = {value:e}")]
    NegativeDiscriminant { value: f64 },
    #[error("beta {0} is outside (0, 1)")]
    OutsideDomain(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Radicand {
    Numerator,
    Denominator,
    Outer,
}

impl std::fmt::Display for Radicand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Radicand::Numerator => "numerator radicand",
            Radicand::Denominator => "denominator radicand",
            Radicand::Outer => "outer radicand",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("time step must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("horizon must be positive and finite, got {0}")]
    InvalidHorizon(f64),
    #[error("output stride must be positive")]
    InvalidStride,
    #[error("mass and body counts differ ({masses} vs {bodies})")]
    ShapeMismatch { masses: usize, bodies: usize },
    #[error("bodies {i} and {j} are within the collision tolerance (separation {separation:e})")]
    Collision { i: usize, j: usize, separation: f64 },
    #[error("parameters are not in the positive-mass region (m={top_mass}, M={base_mass})")]
    Unphysical { top_mass: f64, base_mass: f64 },
    #[error(transparent)]
    Mass(#[from] MassError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
