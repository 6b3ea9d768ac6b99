//! Distribution-level CVaR estimation and concentration bounds.
//!
//! For a loss random variable X with CDF F, the value at risk at level
//! α ∈ (0,1] is the 1−α quantile, and the conditional value at risk is the
//! expected loss in the worst α-fraction tail:
//!
//! ```text
//! VaR_α(X)  = inf { x : F(x) > 1−α }
//! CVaR_α(X) = inf_w { w + (1/α) E[(X−w)⁺] } = (1/α) ∫_{1−α}^{1} F⁻¹(v) dv
//! ```
//!
//! This crate provides the empirical estimators of those quantities on
//! sorted samples, finite-sample upper/lower confidence bounds (interval
//! bounds from support-range deviations, order-statistic bounds, and
//! ECDF/DKW bounds expressed directly in CVaR form), bounds on CVaR_α(X)
//! computed from an auxiliary variable Y whose CDF is within a known
//! discrepancy of F_X, CDF-envelope constructions for non-uniform
//! discrepancy functions, and synthetic distribution oracles used to
//! validate all of the above.
//!
//! Everything here is a pure function of its inputs; values are immutable
//! after construction and safe to share across threads.

mod aux_bounds;
mod cdf;
mod concentration;
mod envelope;
mod error;
mod oracle;
pub mod quadrature;
pub mod rng;
mod sample;

pub use aux_bounds::{
    aux_cvar_bounds, aux_cvar_bounds_from_samples, AuxBoundResult, AuxSampleBoundResult,
    LowerBranch, SupportBounds, UpperBranch,
};
pub use cdf::DiscreteCdf;
pub use concentration::{
    brown_bounds, dkw_radius, ecdf_concentration_bounds, thomas_lower_bound, thomas_upper_bound,
    RiskParams,
};
pub use envelope::{envelope_cdf_from_density_gap, envelope_cdf_lower, GridFunction};
pub use error::CvarError;
pub use oracle::{oracle_cvar, oracle_mean, DistributionOracle, GmmComponent};
pub use sample::{empirical_cvar, empirical_var, SortedSample};
