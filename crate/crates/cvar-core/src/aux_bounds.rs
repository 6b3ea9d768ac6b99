use crate::concentration::dkw_radius;
use crate::error::CvarError;
use crate::sample::{empirical_cvar, SortedSample};

/// Support bounds for the auxiliary-variable constructions. Each branch
/// of the bounds requires only the sides it actually uses; a missing side
/// is an error rather than a silent ±∞ substitution.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SupportBounds {
    pub a_x: Option<f64>,
    pub b_x: Option<f64>,
    pub a_y: Option<f64>,
    pub b_y: Option<f64>,
}

impl SupportBounds {
    pub fn symmetric(a: f64, b: f64) -> Self {
        Self {
            a_x: Some(a),
            b_x: Some(b),
            a_y: Some(a),
            b_y: Some(b),
        }
    }

    fn b_max(&self) -> Result<f64, CvarError> {
        match (self.b_x, self.b_y) {
            (Some(bx), Some(by)) => Ok(bx.max(by)),
            (None, _) => Err(CvarError::MissingSupport {
                bound: "auxiliary upper",
                side: "upper (X)",
            }),
            (_, None) => Err(CvarError::MissingSupport {
                bound: "auxiliary upper",
                side: "upper (Y)",
            }),
        }
    }

    fn a_min(&self) -> Result<f64, CvarError> {
        match (self.a_x, self.a_y) {
            (Some(ax), Some(ay)) => Ok(ax.min(ay)),
            (None, _) => Err(CvarError::MissingSupport {
                bound: "auxiliary lower",
                side: "lower (X)",
            }),
            (_, None) => Err(CvarError::MissingSupport {
                bound: "auxiliary lower",
                side: "lower (Y)",
            }),
        }
    }
}

/// Which case of the upper bound fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperBranch {
    /// α exceeds the discrepancy; the shifted-level CVaR of Y is used.
    Informative,
    /// Discrepancy at or above α; the bound collapses to the support max.
    Collapsed,
}

/// Which case of the lower bound fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerBranch {
    /// α plus the discrepancy stays within 1; shifted-level CVaRs are used.
    Informative,
    /// α plus the discrepancy exceeds 1; the mean/support form is used.
    CollapsedPartial,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxBoundResult {
    pub lower: f64,
    pub upper: f64,
    pub branch_upper: UpperBranch,
    pub branch_lower: LowerBranch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxSampleBoundResult {
    pub lower: f64,
    pub upper: f64,
    pub eps_prime: f64,
    pub branch_upper: UpperBranch,
    pub branch_lower: LowerBranch,
}

fn check_levels(alpha: f64, epsilon: f64) -> Result<(), CvarError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(CvarError::InvalidAlpha(alpha));
    }
    if !(0.0..=1.0).contains(&epsilon) || epsilon.is_nan() {
        return Err(CvarError::InvalidEpsilon(epsilon));
    }
    Ok(())
}

/// Bounds on CVaR_α(X) computed from an auxiliary variable Y whose CDF is
/// within a uniform discrepancy ε of F_X:
///
/// - upper (needs `F_Y − F_X ≤ ε` and both upper supports):
///   `(ε/α)·max(b_X,b_Y) + (1−ε/α)·CVaR_{α−ε}(Y)` when α > ε, else
///   `max(b_X,b_Y)`;
/// - lower (needs `F_X − F_Y ≤ ε`; both lower supports when α+ε > 1):
///   `(1+ε/α)·CVaR_{α+ε}(Y) − (ε/α)·CVaR_ε(Y)` when α+ε ≤ 1, else
///   `(1/α)·(E[Y] − ε·CVaR_ε(Y) + (α+ε−1)·min(a_X,a_Y))`.
///
/// `cvar_y` must be the exact (or empirical) CVaR functional of Y as a
/// function of the level; `mean_y` is E[Y]. Both bounds converge to
/// CVaR_α(Y) as ε → 0.
pub fn aux_cvar_bounds(
    alpha: f64,
    epsilon: f64,
    supports: &SupportBounds,
    cvar_y: impl Fn(f64) -> f64,
    mean_y: f64,
) -> Result<AuxBoundResult, CvarError> {
    check_levels(alpha, epsilon)?;

    let eps_term = |level: f64| {
        if epsilon == 0.0 {
            0.0
        } else {
            (epsilon / alpha) * cvar_y(level)
        }
    };

    let (upper, branch_upper) = if alpha > epsilon {
        let u = (epsilon / alpha) * if epsilon == 0.0 { 0.0 } else { supports.b_max()? }
            + (1.0 - epsilon / alpha) * cvar_y(alpha - epsilon);
        (u, UpperBranch::Informative)
    } else {
        (supports.b_max()?, UpperBranch::Collapsed)
    };

    let (lower, branch_lower) = if alpha + epsilon <= 1.0 {
        let l = (1.0 + epsilon / alpha) * cvar_y(alpha + epsilon) - eps_term(epsilon);
        (l, LowerBranch::Informative)
    } else {
        let l = (mean_y - epsilon * cvar_y(epsilon) + (alpha + epsilon - 1.0) * supports.a_min()?)
            / alpha;
        (l, LowerBranch::CollapsedPartial)
    };

    Ok(AuxBoundResult {
        lower,
        upper,
        branch_upper,
        branch_lower,
    })
}

/// Sample version of [`aux_cvar_bounds`]: Y is observed only through n
/// i.i.d. draws, so the discrepancy is inflated by the DKW radius,
/// `ε' = min(ε + √(ln(1/δ)/2n), 1)`, and the CVaR functional of Y is
/// replaced by the empirical CVaR of the sample. Each side then holds
/// with probability greater than 1−δ.
pub fn aux_cvar_bounds_from_samples(
    sample_y: &SortedSample,
    alpha: f64,
    epsilon: f64,
    delta: f64,
    supports: &SupportBounds,
) -> Result<AuxSampleBoundResult, CvarError> {
    check_levels(alpha, epsilon)?;
    if !(delta > 0.0 && delta < 0.5) {
        return Err(CvarError::InvalidDelta(delta));
    }
    let eta = dkw_radius(delta, sample_y.len());
    let eps_prime = (epsilon + eta).min(1.0);
    let result = aux_cvar_bounds(
        alpha,
        eps_prime,
        supports,
        |level| empirical_cvar(sample_y, level.min(1.0)).expect("level in (0,1]"),
        sample_y.mean(),
    )?;
    Ok(AuxSampleBoundResult {
        lower: result.lower,
        upper: result.upper,
        eps_prime,
        branch_upper: result.branch_upper,
        branch_lower: result.branch_lower,
    })
}
