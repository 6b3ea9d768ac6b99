//! Particle-belief MDP engine: model and policy interfaces, the
//! generative particle-filter step, belief-trajectory generation, return
//! sampling, and the CVaR value/action-value estimators built on them.
//!
//! The engine state is a weighted particle set approximating a belief.
//! One step samples a representative particle, generates a single
//! observation through the model, propagates every particle through the
//! transition, and reweights by observation likelihood — no resampling.
//! Returns are sums of per-step belief-averaged costs, and the CVaR
//! estimators reduce to the order-statistic estimator over sampled
//! returns.
//!
//! Internally everything is a cost (negated reward), so a larger CVaR
//! always means riskier.

mod belief;
mod engine;
mod error;
mod model;
mod policy;

pub use belief::ParticleBelief;
pub use engine::{
    estimate_q, estimate_v, gen_belief_trajectories, genpf, returns_from_batch, sample_returns,
    BeliefTrajectory, BeliefTrajectoryBatch, TrajectoryParams,
};
pub use error::PomdpError;
pub use model::{ActionId, Observation, PomdpModel, State, Variant};
pub use policy::{FirstActionPolicy, OpenLoopSequence, Policy};
