//! Closed-form masses for the trapezoid, their sign diagnostics, and an
//! independent linear solve of the two reduced CC equations.
//!
//! Both routes use the normalization `lambda = 1`:
//!
//! ```text
//! 2M - m(alpha - 1)/a + m(alpha + 1)/b = 1        (base-pair balance)
//! (m + M)(1/a + 1/b)                  = 1        (vertical balance)
//! ```
//!
//! The closed forms share the denominator `(a + b) f3`; the zero set of
//! `f3` is the degenerate curve.

use serde::Serialize;

use crate::error::MassError;
use crate::geometry::{compute_distance_cubes, DistanceCubes, TrapezoidParams};

/// `|f3| < DEGENERACY_TOLERANCE * (a + b)` is treated as the singular curve.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignTriple {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassSolution {
    pub params: TrapezoidParams,
    /// Mass of bodies 2 and 3 (top side), `m`.
    #[serde(rename = "m")]
    pub top_mass: f64,
    /// Mass of bodies 1 and 4 (base), `M`.
    #[serde(rename = "M")]
    pub base_mass: f64,
    pub lambda: f64,
    pub signs: SignTriple,
    pub cubes: DistanceCubes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionLabel {
    BothPositive,
    /// `M > 0`, `m <= 0`.
    OnlyBasePositive,
    /// `m > 0`, `M <= 0`.
    OnlyTopPositive,
    NonePositive,
    Degenerate,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 5] = [
        RegionLabel::BothPositive,
        RegionLabel::OnlyBasePositive,
        RegionLabel::OnlyTopPositive,
        RegionLabel::NonePositive,
        RegionLabel::Degenerate,
    ];

    pub fn from_masses(top_mass: f64, base_mass: f64) -> Self {
        match (top_mass > 0.0, base_mass > 0.0) {
            (true, true) => RegionLabel::BothPositive,
            (false, true) => RegionLabel::OnlyBasePositive,
            (true, false) => RegionLabel::OnlyTopPositive,
            (false, false) => RegionLabel::NonePositive,
        }
    }

    /// Label implied by the signs alone: `M > 0` iff `f2` and `f3` agree in
    /// sign, `m > 0` iff `f1` and `f3` agree.
    pub fn from_signs(signs: &SignTriple) -> Self {
        let top = signs.f1 * signs.f3 > 0.0;
        let base = signs.f2 * signs.f3 > 0.0;
        Self::from_masses(if top { 1.0 } else { -1.0 }, if base { 1.0 } else { -1.0 })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::BothPositive => "both_positive",
            RegionLabel::OnlyBasePositive => "only_M_positive",
            RegionLabel::OnlyTopPositive => "only_m_positive",
            RegionLabel::NonePositive => "none_positive",
            RegionLabel::Degenerate => "degenerate",
        }
    }
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn sign_functions(cubes: &DistanceCubes, alpha: f64) -> SignTriple {
    let DistanceCubes { a, b } = *cubes;
    let f1 = a + b - 2.0 * a * b;
    let f2 = a - b;
    // Algebraically f1 + alpha * f2, regrouped so the `b` terms do not cancel
    // near the rectangle edge `alpha = 1`.
    let f3 = a * (1.0 + alpha - 2.0 * b) + b * (1.0 - alpha);
    SignTriple { f1, f2, f3 }
}

fn degeneracy_threshold(cubes: &DistanceCubes) -> f64 {
    DEGENERACY_TOLERANCE * (cubes.a + cubes.b)
}

/// Evaluates the closed-form masses. Negative masses are returned as is.
pub fn solve_masses(params: &TrapezoidParams) -> Result<MassSolution, MassError> {
    let cubes = compute_distance_cubes(params);
    let signs = sign_functions(&cubes, params.alpha());
    let threshold = degeneracy_threshold(&cubes);
    if !(signs.f3.abs() >= threshold) {
        return Err(MassError::Degenerate {
            f3: signs.f3,
            threshold,
        });
    }
    let DistanceCubes { a, b } = cubes;
    let denom = (a + b) * signs.f3;
    Ok(MassSolution {
        params: *params,
        top_mass: a * b * signs.f1 / denom,
        base_mass: a * b * params.alpha() * signs.f2 / denom,
        lambda: 1.0,
        signs,
        cubes,
    })
}

/// Solves the two reduced CC equations with `lambda = 1` as a plain 2x2
/// linear system in `(m, M)`, without the closed forms.
///
/// The system is `c m + 2 M = 1`, `s m + s M = 1` with `s = 1/a + 1/b`.
/// Cramer's rule is used, with the cofactor `c - s = alpha (1/b - 1/a)`
/// formed directly: for small `alpha` the two rows nearly coincide and
/// elimination on the stored entries loses about `1/alpha` in accuracy.
///
/// The system is declared singular when `|det| < 1e-12 * s^2`, which is the
/// same curve [`solve_masses`] reports as degenerate.
pub fn solve_masses_linear(params: &TrapezoidParams) -> Result<(f64, f64), MassError> {
    let DistanceCubes { a, b } = compute_distance_cubes(params);
    let alpha = params.alpha();
    let c = (1.0 - alpha) / a + (1.0 + alpha) / b;
    let s = 1.0 / a + 1.0 / b;

    let determinant = s * (c - 2.0);
    let threshold = DEGENERACY_TOLERANCE * s * s;
    if !(determinant.abs() >= threshold) {
        return Err(MassError::SingularSystem { determinant, threshold });
    }

    let top_mass = (s - 2.0) / determinant;
    let base_mass = alpha * (a - b) / (a * b) / determinant;
    Ok((top_mass, base_mass))
}

/// Region label from the signs of the solved masses.
pub fn classify(params: &TrapezoidParams) -> RegionLabel {
    match solve_masses(params) {
        Ok(sol) => {
            let label = RegionLabel::from_masses(sol.top_mass, sol.base_mass);
            debug_assert_eq!(label, RegionLabel::from_signs(&sol.signs));
            label
        }
        Err(_) => RegionLabel::Degenerate,
    }
}

/// Residual of the two reduced equations at `lambda`:
/// `(base-pair balance - lambda, vertical balance - lambda)`.
pub fn reduced_equation_residuals(sol: &MassSolution, lambda: f64) -> (f64, f64) {
    let DistanceCubes { a, b } = sol.cubes;
    let alpha = sol.params.alpha();
    let (m, big_m) = (sol.top_mass, sol.base_mass);
    let base_pair = 2.0 * big_m - m * (alpha - 1.0) / a + m * (alpha + 1.0) / b;
    let vertical = (m + big_m) * (1.0 / a + 1.0 / b);
    (base_pair - lambda, vertical - lambda)
}

/// Horizontal CC defect of body 3 (and, mirrored, body 2) at `lambda = 1`:
/// the attraction on body 3 along the top side plus its position along it.
///
/// The two reduced equations do not constrain this component, so it is
/// nonzero for most `(alpha, beta)`. The closed-form masses give a central
/// configuration exactly where it vanishes.
pub fn top_pair_defect(sol: &MassSolution) -> f64 {
    let DistanceCubes { a, b } = sol.cubes;
    let alpha = sol.params.alpha();
    let (m, big_m) = (sol.top_mass, sol.base_mass);
    -(m / (alpha * alpha) + big_m * (alpha - 1.0) / (2.0 * a) + big_m * (alpha + 1.0) / (2.0 * b))
        + sol.lambda * 0.5 * alpha
}
