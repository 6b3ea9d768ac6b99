//! Fully tabulated chain over at most three states, used as the exactly
//! enumerable substrate for the downstream test oracles. States and
//! observations are encoded as 1-vectors of their index.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, RngCore};

use cvar_core::DiscreteCdf;
use pomdp_core::{ActionId, Observation, ParticleBelief, Policy, PomdpModel, State, Variant};

use crate::configs::ToyChainConfig;
use crate::error::EnvError;

pub struct ToyChain {
    cfg: ToyChainConfig,
    original_calls: AtomicU64,
}

impl ToyChain {
    pub fn new(cfg: ToyChainConfig) -> Result<Self, EnvError> {
        let n = cfg.obs_original.len();
        if n == 0 || n > 3 {
            return Err(EnvError::InvalidConfig(format!(
                "chain supports 1..=3 states, got {n}"
            )));
        }
        if cfg.transition.is_empty() || cfg.costs.len() != cfg.transition.len() {
            return Err(EnvError::InvalidConfig(
                "need one transition and cost table per action".into(),
            ));
        }
        for table in &cfg.transition {
            if table.len() != n {
                return Err(EnvError::InvalidConfig("transition table shape".into()));
            }
            for row in table {
                if row.len() != n || row.iter().any(|p| *p < 0.0) {
                    return Err(EnvError::InvalidConfig("transition row shape".into()));
                }
                if (row.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
                    return Err(EnvError::InvalidConfig(
                        "transition rows must sum to 1".into(),
                    ));
                }
            }
        }
        let n_obs = cfg.obs_original[0].len();
        for table in [&cfg.obs_original, &cfg.obs_simplified] {
            if table.len() != n {
                return Err(EnvError::InvalidConfig("observation table shape".into()));
            }
            for row in table.iter() {
                if row.len() != n_obs || row.iter().any(|p| *p < 0.0) {
                    return Err(EnvError::InvalidConfig("observation row shape".into()));
                }
                if (row.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
                    return Err(EnvError::InvalidConfig(
                        "observation rows must sum to 1".into(),
                    ));
                }
            }
        }
        for costs in &cfg.costs {
            if costs.len() != n {
                return Err(EnvError::InvalidConfig("cost table shape".into()));
            }
        }
        Ok(Self {
            cfg,
            original_calls: AtomicU64::new(0),
        })
    }

    pub fn config(&self) -> &ToyChainConfig {
        &self.cfg
    }

    pub fn n_states(&self) -> usize {
        self.cfg.obs_original.len()
    }

    pub fn n_observations(&self) -> usize {
        self.cfg.obs_original[0].len()
    }

    fn obs_table(&self, variant: Variant) -> &Vec<Vec<f64>> {
        match variant {
            Variant::Original => {
                self.original_calls.fetch_add(1, Ordering::Relaxed);
                &self.cfg.obs_original
            }
            Variant::Simplified => &self.cfg.obs_simplified,
        }
    }

    /// Exact per-state observation TV gap `Σ_z |p(z|x) − q(z|x)|`.
    pub fn exact_obs_tv(&self, state: usize) -> f64 {
        self.cfg.obs_original[state]
            .iter()
            .zip(self.cfg.obs_simplified[state].iter())
            .map(|(p, q)| (p - q).abs())
            .sum()
    }

    /// Uniform belief over all chain states with one particle per state.
    pub fn full_support_belief(&self) -> ParticleBelief {
        ParticleBelief::uniform((0..self.n_states()).map(|i| vec![i as f64]).collect())
            .expect("non-empty")
    }
}

fn sample_index(probs: &[f64], rng: &mut dyn RngCore) -> usize {
    let mut pick = rng.random::<f64>();
    for (i, p) in probs.iter().enumerate() {
        pick -= p;
        if pick <= 0.0 {
            return i;
        }
    }
    probs.len() - 1
}

impl PomdpModel for ToyChain {
    fn state_dim(&self) -> usize {
        1
    }

    fn n_actions(&self) -> usize {
        self.cfg.transition.len()
    }

    fn action_names(&self) -> &'static [&'static str] {
        &["a0", "a1", "a2"][..self.n_actions().min(3)]
    }

    fn sample_transition(
        &self,
        state: &[f64],
        action: ActionId,
        rng: &mut dyn RngCore,
    ) -> (State, f64) {
        let from = state[0] as usize;
        let to = sample_index(&self.cfg.transition[action][from], rng);
        (vec![to as f64], self.cfg.costs[action][from])
    }

    fn obs_sample(
        &self,
        next_state: &[f64],
        _action: ActionId,
        variant: Variant,
        rng: &mut dyn RngCore,
    ) -> Observation {
        let row = &self.obs_table(variant)[next_state[0] as usize];
        vec![sample_index(row, rng) as f64]
    }

    fn obs_density(
        &self,
        obs: &[f64],
        next_state: &[f64],
        _action: ActionId,
        variant: Variant,
    ) -> f64 {
        self.obs_table(variant)[next_state[0] as usize][obs[0] as usize]
    }

    fn state_transition_density(&self, next: &[f64], prev: &[f64], action: ActionId) -> f64 {
        self.cfg.transition[action][prev[0] as usize][next[0] as usize]
    }

    fn cost(&self, state: &[f64], action: ActionId) -> f64 {
        self.cfg.costs[action][state[0] as usize]
    }

    fn cost_bounds(&self) -> (f64, f64) {
        let all = self.cfg.costs.iter().flatten();
        (
            all.clone().cloned().fold(f64::INFINITY, f64::min),
            all.cloned().fold(f64::NEG_INFINITY, f64::max),
        )
    }

    fn discount(&self) -> f64 {
        self.cfg.gamma
    }

    fn original_obs_calls(&self) -> u64 {
        self.original_calls.load(Ordering::Relaxed)
    }

    fn reset_original_obs_calls(&self) {
        self.original_calls.store(0, Ordering::Relaxed);
    }
}

/// Exact return CDF of the chain's belief process by exhaustive expansion
/// over observation sequences with exact Bayesian belief updates.
///
/// Belief-dependent policies are evaluated on the exact belief encoded as
/// one particle per state. The expansion has |Z|^steps leaves; a guard
/// rejects runs past 1e6 outcome paths.
pub fn enumerate_return_distribution(
    chain: &ToyChain,
    policy: &dyn Policy,
    first_action: ActionId,
    initial_belief: &[f64],
    steps: usize,
    variant: Variant,
    discounted: bool,
) -> Result<DiscreteCdf, EnvError> {
    let n = chain.n_states();
    let n_obs = chain.n_observations();
    let paths = ((n * n_obs) as f64).powi(steps as i32);
    if paths > 1e6 {
        return Err(EnvError::EnumerationTooLarge(paths));
    }
    if initial_belief.len() != n {
        return Err(EnvError::InvalidConfig("belief length".into()));
    }
    let obs_table = match variant {
        Variant::Original => &chain.cfg.obs_original,
        Variant::Simplified => &chain.cfg.obs_simplified,
    };
    let gamma = if discounted { chain.cfg.gamma } else { 1.0 };

    let belief_cost = |b: &[f64], a: ActionId| -> f64 {
        b.iter()
            .enumerate()
            .map(|(x, w)| w * chain.cfg.costs[a][x])
            .sum()
    };
    let act = |b: &[f64], step: usize| -> ActionId {
        if step == 0 {
            return first_action;
        }
        let particles = b
            .iter()
            .enumerate()
            .map(|(x, w)| (vec![x as f64], *w))
            .collect::<Vec<_>>();
        policy.act(&ParticleBelief::new(particles).expect("valid belief"), step)
    };

    let mut outcomes: Vec<(f64, f64)> = Vec::new();
    // depth-first over observation sequences, carrying exact probabilities
    let mut stack: Vec<(Vec<f64>, usize, f64, f64)> =
        vec![(initial_belief.to_vec(), 0, 0.0, 1.0)];
    while let Some((belief, depth, acc, prob)) = stack.pop() {
        let action = act(&belief, depth);
        let acc = acc + gamma.powi(depth as i32) * belief_cost(&belief, action);
        if depth == steps {
            outcomes.push((acc, prob));
            continue;
        }
        // predictive state distribution under the action
        let mut pred = vec![0.0; n];
        for (x, w) in belief.iter().enumerate() {
            if *w > 0.0 {
                for (x2, p) in chain.cfg.transition[action][x].iter().enumerate() {
                    pred[x2] += w * p;
                }
            }
        }
        for z in 0..n_obs {
            let mut posterior: Vec<f64> = (0..n).map(|x2| pred[x2] * obs_table[x2][z]).collect();
            let pz: f64 = posterior.iter().sum();
            if pz <= 0.0 {
                continue;
            }
            for w in &mut posterior {
                *w /= pz;
            }
            stack.push((posterior, depth + 1, acc, prob * pz));
        }
    }

    outcomes.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite returns"));
    let mut knots: Vec<(f64, f64)> = Vec::new();
    let mut cum = 0.0;
    for (value, p) in outcomes {
        cum += p;
        match knots.last_mut() {
            Some(last) if (last.0 - value).abs() < 1e-12 => last.1 = cum,
            _ => knots.push((value, cum)),
        }
    }
    if let Some(last) = knots.last_mut() {
        last.1 = 1.0;
    }
    DiscreteCdf::new(knots).map_err(|e| EnvError::InvalidConfig(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cvar_core::rng::stream_rng;
    use pomdp_core::OpenLoopSequence;

    fn deterministic_chain() -> ToyChain {
        ToyChain::new(ToyChainConfig::default()).unwrap()
    }

    #[test]
    fn validation_rejects_bad_tables() {
        let mut cfg = ToyChainConfig::default();
        cfg.transition[0][0] = vec![0.5, 0.2, 0.2];
        assert!(ToyChain::new(cfg).is_err());
        let mut cfg = ToyChainConfig::default();
        cfg.obs_original[1] = vec![0.9, 0.3];
        assert!(ToyChain::new(cfg).is_err());
        let mut cfg = ToyChainConfig::default();
        cfg.costs.pop();
        assert!(ToyChain::new(cfg).is_err());
    }

    #[test]
    fn deterministic_chain_has_single_atom_cdf() {
        // point belief + deterministic transitions + any observations: the
        // belief stays a point mass, so the return is a constant
        let chain = deterministic_chain();
        let policy = OpenLoopSequence::new(vec![0, 0, 0]);
        let cdf = enumerate_return_distribution(
            &chain,
            &policy,
            0,
            &[1.0, 0.0, 0.0],
            3,
            Variant::Original,
            false,
        )
        .unwrap();
        assert_eq!(cdf.knots().len(), 1);
        // path 0 →a0→ 1 →a0→ 2 →a0→ 0 with costs 0, 1, 0.4, 0
        assert!((cdf.knots()[0].0 - 1.4).abs() < 1e-12);
    }

    #[test]
    fn symmetric_two_state_chain_splits_evenly() {
        let cfg = ToyChainConfig {
            transition: vec![vec![vec![0.5, 0.5], vec![0.5, 0.5]]],
            obs_original: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            obs_simplified: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            costs: vec![vec![0.0, 1.0]],
            gamma: 1.0,
            horizon: 1,
            scripts: crate::configs::ActionScripts {
                safe: vec!["a0".into()],
                dangerous: vec!["a0".into()],
            },
        };
        let chain = ToyChain::new(cfg).unwrap();
        let policy = OpenLoopSequence::new(vec![0]);
        // exact observations resolve the state fully: two equally likely
        // returns 0.0 and 1.0 (the step-1 belief cost)
        let cdf = enumerate_return_distribution(
            &chain,
            &policy,
            0,
            &[1.0, 0.0],
            1,
            Variant::Original,
            false,
        )
        .unwrap();
        assert_eq!(cdf.knots().len(), 2);
        assert!((cdf.eval(0.0) - 0.5).abs() < 1e-12);
        assert!((cdf.eval(1.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn enumerated_mean_matches_monte_carlo() {
        // stochastic-transition chain: the belief-process enumeration mean
        // must match plain Monte-Carlo of the exact belief process
        let cfg = ToyChainConfig {
            transition: vec![vec![
                vec![0.7, 0.3, 0.0],
                vec![0.2, 0.5, 0.3],
                vec![0.0, 0.4, 0.6],
            ]],
            obs_original: vec![vec![0.8, 0.2], vec![0.5, 0.5], vec![0.1, 0.9]],
            obs_simplified: vec![vec![0.8, 0.2], vec![0.5, 0.5], vec![0.1, 0.9]],
            costs: vec![vec![0.0, 1.0, 2.0]],
            gamma: 1.0,
            horizon: 3,
            scripts: crate::configs::ActionScripts {
                safe: vec!["a0".into()],
                dangerous: vec!["a0".into()],
            },
        };
        let chain = ToyChain::new(cfg.clone()).unwrap();
        let policy = OpenLoopSequence::new(vec![0]);
        let init = [0.5, 0.3, 0.2];
        let cdf = enumerate_return_distribution(
            &chain,
            &policy,
            0,
            &init,
            3,
            Variant::Original,
            false,
        )
        .unwrap();

        // Monte-Carlo over the exact belief recursion
        let mut rng = stream_rng(77, 0, 0);
        let trials = 200_000;
        let mut acc = 0.0;
        for _ in 0..trials {
            let mut belief = init.to_vec();
            let mut ret = 0.0;
            for step in 0..=3usize {
                ret += belief
                    .iter()
                    .enumerate()
                    .map(|(x, w)| w * cfg.costs[0][x])
                    .sum::<f64>();
                if step == 3 {
                    break;
                }
                let mut pred = vec![0.0; 3];
                for (x, w) in belief.iter().enumerate() {
                    for (x2, p) in cfg.transition[0][x].iter().enumerate() {
                        pred[x2] += w * p;
                    }
                }
                // draw z from the predictive observation distribution
                let pz: Vec<f64> = (0..2)
                    .map(|z| {
                        (0..3)
                            .map(|x2| pred[x2] * cfg.obs_original[x2][z])
                            .sum::<f64>()
                    })
                    .collect();
                let z = if rng.random::<f64>() < pz[0] { 0 } else { 1 };
                let mut post: Vec<f64> =
                    (0..3).map(|x2| pred[x2] * cfg.obs_original[x2][z]).collect();
                let total: f64 = post.iter().sum();
                for w in &mut post {
                    *w /= total;
                }
                belief = post;
            }
            acc += ret;
        }
        let mc_mean = acc / trials as f64;
        let exact_mean = cdf.mean();
        // 4σ window with returns bounded by 8
        assert!(
            (mc_mean - exact_mean).abs() < 4.0 * 8.0 / (trials as f64).sqrt(),
            "mc={mc_mean} exact={exact_mean}"
        );
    }

    #[test]
    fn enumeration_size_guard() {
        let chain = deterministic_chain();
        let policy = OpenLoopSequence::new(vec![0]);
        let err = enumerate_return_distribution(
            &chain,
            &policy,
            0,
            &[1.0, 0.0, 0.0],
            12,
            Variant::Original,
            false,
        )
        .unwrap_err();
        assert!(matches!(err, EnvError::EnumerationTooLarge(_)));
    }

    #[test]
    fn identical_tables_make_variants_agree() {
        let mut cfg = ToyChainConfig::default();
        cfg.obs_simplified = cfg.obs_original.clone();
        let chain = ToyChain::new(cfg).unwrap();
        for s in 0..chain.n_states() {
            assert_eq!(chain.exact_obs_tv(s), 0.0);
        }
        let policy = OpenLoopSequence::new(vec![0, 1, 0]);
        let a = enumerate_return_distribution(
            &chain,
            &policy,
            1,
            &[0.4, 0.3, 0.3],
            3,
            Variant::Original,
            false,
        )
        .unwrap();
        let b = enumerate_return_distribution(
            &chain,
            &policy,
            1,
            &[0.4, 0.3, 0.3],
            3,
            Variant::Simplified,
            false,
        )
        .unwrap();
        assert_eq!(a.knots(), b.knots());
    }

    /// The particle filter with one particle per state and deterministic
    /// transitions reproduces the exact belief process, so sampled returns
    /// must match the enumerated CDF.
    #[test]
    fn particle_process_matches_enumeration_on_deterministic_transitions() {
        use pomdp_core::{sample_returns, TrajectoryParams};
        let chain = deterministic_chain();
        let policy = OpenLoopSequence::new(vec![0, 1, 0, 1]);
        let steps = 3;
        let exact = enumerate_return_distribution(
            &chain,
            &policy,
            1,
            &[1.0 / 3.0; 3],
            steps,
            Variant::Simplified,
            false,
        )
        .unwrap();
        let params =
            TrajectoryParams::new(steps, 60_000, Variant::Simplified, 4242).undiscounted();
        let returns = sample_returns(
            &chain.full_support_belief(),
            1,
            &policy,
            &params,
            &chain,
        )
        .unwrap();
        let emp = DiscreteCdf::ecdf(returns.values()).unwrap();
        let radius = cvar_core::dkw_radius(0.01, returns.len());
        let gap = emp.sup_gap_above(&exact).max(exact.sup_gap_above(&emp));
        assert!(gap <= radius + 1e-9, "gap={gap} radius={radius}");
    }
}
