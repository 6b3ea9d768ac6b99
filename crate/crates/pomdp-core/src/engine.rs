use rand::{Rng, RngCore};

use cvar_core::rng::stream_rng;
use cvar_core::{empirical_cvar, SortedSample};

use crate::belief::ParticleBelief;
use crate::error::PomdpError;
use crate::model::{ActionId, PomdpModel, Variant};
use crate::policy::{FirstActionPolicy, Policy};

/// Simulation parameters for belief-trajectory generation.
///
/// `steps` counts belief transitions, so a batch holds `steps + 1` belief
/// rows and cost terms per trajectory. RNG streams are derived per
/// `(trajectory, step, retry)` from the seed, so changing the trajectory
/// count or horizon never perturbs the draws of earlier trajectories or
/// steps.
#[derive(Debug, Clone, Copy)]
pub struct TrajectoryParams {
    pub start_step: usize,
    pub steps: usize,
    pub n_trajectories: usize,
    pub variant: Variant,
    /// Apply the model's discount factor as γ^(t−k) weights on stage costs.
    pub discounted: bool,
    /// Degenerate reweights are redrawn up to this many times per step.
    pub max_obs_retries: u32,
    pub seed: u64,
    /// Domain separator so different experiment stages draw independent
    /// streams from one root seed.
    pub rng_domain: u64,
}

impl TrajectoryParams {
    pub fn new(steps: usize, n_trajectories: usize, variant: Variant, seed: u64) -> Self {
        Self {
            start_step: 0,
            steps,
            n_trajectories,
            variant,
            discounted: true,
            max_obs_retries: 10,
            seed,
            rng_domain: 0,
        }
    }

    pub fn undiscounted(mut self) -> Self {
        self.discounted = false;
        self
    }

    pub fn with_domain(mut self, domain: u64) -> Self {
        self.rng_domain = domain;
        self
    }

    pub fn with_start_step(mut self, k: usize) -> Self {
        self.start_step = k;
        self
    }

    fn step_rng(&self, trajectory: usize, row: usize, retry: u32) -> impl RngCore {
        let index = ((trajectory as u64) * 4096 + row as u64) * 16 + retry as u64;
        stream_rng(self.seed, self.rng_domain, index)
    }

    /// Effective horizon weight `Σ_{j=0}^{steps} γ^j` (equals `steps + 1`
    /// when undiscounted).
    pub fn horizon_weight(&self, gamma: f64) -> f64 {
        let g = if self.discounted { gamma } else { 1.0 };
        if (g - 1.0).abs() < 1e-15 {
            (self.steps + 1) as f64
        } else {
            (1.0 - g.powi(self.steps as i32 + 1)) / (1.0 - g)
        }
    }
}

/// One simulated belief trajectory with its per-step costs (undiscounted;
/// discount weights are applied when returns are assembled).
#[derive(Debug, Clone)]
pub struct BeliefTrajectory {
    pub beliefs: Vec<ParticleBelief>,
    pub costs: Vec<f64>,
}

/// `N_b` belief trajectories generated under exactly one model variant.
#[derive(Debug, Clone)]
pub struct BeliefTrajectoryBatch {
    pub start_step: usize,
    pub variant: Variant,
    pub discounted: bool,
    pub trajectories: Vec<BeliefTrajectory>,
    /// Degenerate-reweight redraws that occurred during generation.
    pub obs_retries: u64,
}

impl BeliefTrajectoryBatch {
    pub fn steps(&self) -> usize {
        self.trajectories
            .first()
            .map(|t| t.beliefs.len() - 1)
            .unwrap_or(0)
    }
}

fn check_action(model: &dyn PomdpModel, action: ActionId) -> Result<(), PomdpError> {
    if action >= model.n_actions() {
        return Err(PomdpError::InvalidAction {
            action,
            n_actions: model.n_actions(),
        });
    }
    Ok(())
}

/// One generative particle-filter step: samples a representative particle
/// by weight, generates a single observation from its sampled successor,
/// propagates every particle through the transition, and reweights each by
/// the observation likelihood under `variant`. Returns the posterior
/// belief and the prior-weighted average transition cost ρ.
///
/// There is no resampling; a posterior whose weights all vanish is a
/// degenerate-belief error (the trajectory generator retries those).
pub fn genpf(
    belief: &ParticleBelief,
    action: ActionId,
    model: &dyn PomdpModel,
    variant: Variant,
    rng: &mut dyn RngCore,
) -> Result<(ParticleBelief, f64), PomdpError> {
    check_action(model, action)?;
    let total = belief.total_weight();

    // representative state, drawn with probability proportional to weight
    let mut pick = rng.random::<f64>() * total;
    let mut rep_idx = belief.len() - 1;
    for (i, (_, w)) in belief.particles().iter().enumerate() {
        pick -= w;
        if pick <= 0.0 {
            rep_idx = i;
            break;
        }
    }
    let (rep_next, _) = model.sample_transition(&belief.particles()[rep_idx].0, action, rng);
    let obs = model.obs_sample(&rep_next, action, variant, rng);

    let mut next = Vec::with_capacity(belief.len());
    let mut rho = 0.0;
    for (state, weight) in belief.particles() {
        let (state_next, cost) = model.sample_transition(state, action, rng);
        rho += weight * cost;
        let likelihood = model.obs_density(&obs, &state_next, action, variant);
        next.push((state_next, weight * likelihood));
    }
    rho /= total;

    let posterior_mass: f64 = next.iter().map(|(_, w)| w).sum();
    if !(posterior_mass > 0.0) || !posterior_mass.is_finite() {
        return Err(PomdpError::DegenerateBelief {
            trajectory: 0,
            step: 0,
        });
    }
    Ok((ParticleBelief::new(next)?, rho))
}

fn simulate_trajectory(
    initial: &ParticleBelief,
    policy: &dyn Policy,
    params: &TrajectoryParams,
    model: &dyn PomdpModel,
    trajectory_idx: usize,
    retries: &mut u64,
) -> Result<BeliefTrajectory, PomdpError> {
    let k = params.start_step;
    let mut beliefs = Vec::with_capacity(params.steps + 1);
    let mut costs = Vec::with_capacity(params.steps + 1);

    let mut belief = initial.clone();
    let mut rng0 = params.step_rng(trajectory_idx, 0, 0);
    let a0 = policy.act(&belief, k);
    check_action(model, a0)?;
    costs.push(belief.weighted_cost(model, a0) + model.cost_noise(params.variant, &mut rng0));
    beliefs.push(belief.clone());
    let mut action = a0;

    for row in 1..=params.steps {
        let mut attempt = 0u32;
        let (next_belief, mut rng) = loop {
            let mut rng = params.step_rng(trajectory_idx, row, attempt);
            match genpf(&belief, action, model, params.variant, &mut rng) {
                Ok((b, _rho)) => break (b, rng),
                Err(PomdpError::DegenerateBelief { .. }) if attempt < params.max_obs_retries => {
                    attempt += 1;
                    *retries += 1;
                }
                Err(PomdpError::DegenerateBelief { .. }) => {
                    return Err(PomdpError::DegenerateBelief {
                        trajectory: trajectory_idx,
                        step: k + row,
                    })
                }
                Err(e) => return Err(e),
            }
        };
        belief = next_belief;
        action = policy.act(&belief, k + row);
        check_action(model, action)?;
        costs.push(belief.weighted_cost(model, action) + model.cost_noise(params.variant, &mut rng));
        beliefs.push(belief.clone());
    }

    Ok(BeliefTrajectory { beliefs, costs })
}

/// Generates `N_b` independent belief trajectories, each advancing the
/// initial belief `steps` times under the policy.
pub fn gen_belief_trajectories(
    belief: &ParticleBelief,
    policy: &dyn Policy,
    params: &TrajectoryParams,
    model: &dyn PomdpModel,
) -> Result<BeliefTrajectoryBatch, PomdpError> {
    if params.n_trajectories == 0 {
        return Err(PomdpError::InvalidParams("need at least one trajectory".into()));
    }
    let mut trajectories = Vec::with_capacity(params.n_trajectories);
    let mut retries = 0u64;
    for i in 0..params.n_trajectories {
        trajectories.push(simulate_trajectory(
            belief,
            policy,
            params,
            model,
            i,
            &mut retries,
        )?);
    }
    Ok(BeliefTrajectoryBatch {
        start_step: params.start_step,
        variant: params.variant,
        discounted: params.discounted,
        trajectories,
        obs_retries: retries,
    })
}

/// Assembles per-trajectory returns `Σ_t γ^(t−k) c_t` from a batch and
/// attaches the horizon-scaled support bounds.
pub fn returns_from_batch(
    batch: &BeliefTrajectoryBatch,
    model: &dyn PomdpModel,
) -> Result<SortedSample, PomdpError> {
    let gamma = if batch.discounted { model.discount() } else { 1.0 };
    let values: Vec<f64> = batch
        .trajectories
        .iter()
        .map(|t| {
            t.costs
                .iter()
                .enumerate()
                .map(|(j, c)| gamma.powi(j as i32) * c)
                .sum()
        })
        .collect();

    let (mut r_min, mut r_max) = model.cost_bounds();
    if model.has_terminal_states() {
        // absorbed steps cost zero, so zero must lie inside the per-step range
        r_min = r_min.min(0.0);
        r_max = r_max.max(0.0);
    }
    let steps = batch.steps();
    let weight = if (gamma - 1.0).abs() < 1e-15 {
        (steps + 1) as f64
    } else {
        (1.0 - gamma.powi(steps as i32 + 1)) / (1.0 - gamma)
    };
    Ok(SortedSample::new(
        values,
        Some(weight * r_min),
        Some(weight * r_max),
    )?)
}

/// Draws `N_b` return samples starting with `first_action` at step k and
/// following the policy thereafter.
pub fn sample_returns(
    belief: &ParticleBelief,
    first_action: ActionId,
    policy: &dyn Policy,
    params: &TrajectoryParams,
    model: &dyn PomdpModel,
) -> Result<SortedSample, PomdpError> {
    let scripted = FirstActionPolicy::new(first_action, params.start_step, policy);
    let batch = gen_belief_trajectories(belief, &scripted, params, model)?;
    returns_from_batch(&batch, model)
}

/// CVaR action-value estimate: the empirical CVaR of sampled returns.
pub fn estimate_q(
    belief: &ParticleBelief,
    action: ActionId,
    alpha: f64,
    policy: &dyn Policy,
    params: &TrajectoryParams,
    model: &dyn PomdpModel,
) -> Result<f64, PomdpError> {
    let returns = sample_returns(belief, action, policy, params, model)?;
    Ok(empirical_cvar(&returns, alpha)?)
}

/// CVaR value estimate under the policy's own first action.
pub fn estimate_v(
    belief: &ParticleBelief,
    alpha: f64,
    policy: &dyn Policy,
    params: &TrajectoryParams,
    model: &dyn PomdpModel,
) -> Result<f64, PomdpError> {
    let action = policy.act(belief, params.start_step);
    estimate_q(belief, action, alpha, policy, params, model)
}
