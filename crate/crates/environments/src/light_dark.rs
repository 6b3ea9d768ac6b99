//! 2-D light-dark navigation: position-dependent observation noise with
//! lower uncertainty near beacons, one obstacle region, no terminal states.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::RngCore;
use rand_distr::{Distribution, StandardNormal};

use pomdp_core::{ActionId, Observation, PomdpModel, State, Variant};

use crate::configs::LightDarkConfig;
use crate::geometry::{clamp_to_rect, dist2};
use crate::gmm::{normal_density, Gmm1d};

const ACTIONS: [&str; 4] = ["up", "down", "left", "right"];
const UNIT: [(f64, f64); 4] = [(0.0, 1.0), (0.0, -1.0), (-1.0, 0.0), (1.0, 0.0)];

pub struct LightDark {
    cfg: LightDarkConfig,
    trans_std: f64,
    far_std: f64,
    near_std: f64,
    far_gmm: Gmm1d,
    near_gmm: Gmm1d,
    original_calls: AtomicU64,
}

impl LightDark {
    pub fn new(cfg: LightDarkConfig) -> Self {
        let far_std = cfg.obs_var_far.sqrt();
        let near_std = cfg.obs_var_near.sqrt();
        let far_gmm = Gmm1d::matched_to_normal(
            far_std,
            cfg.gmm_components,
            cfg.gmm_comp_scale,
            cfg.gmm_seed,
        );
        // near-beacon mixture is the far mixture rescaled to the near variance
        let near_gmm = far_gmm.scaled(near_std / far_std);
        Self {
            trans_std: cfg.transition_var.sqrt(),
            far_std,
            near_std,
            far_gmm,
            near_gmm,
            original_calls: AtomicU64::new(0),
            cfg,
        }
    }

    pub fn config(&self) -> &LightDarkConfig {
        &self.cfg
    }

    fn near_beacon(&self, p: (f64, f64)) -> bool {
        self.cfg
            .beacons
            .iter()
            .any(|b| dist2(p, (b[0], b[1])) <= self.cfg.beacon_radius)
    }

    fn reward(&self, p: (f64, f64)) -> f64 {
        let mut r = self.cfg.step_reward;
        if dist2(p, (self.cfg.goal[0], self.cfg.goal[1])) <= self.cfg.goal_radius {
            r += self.cfg.goal_reward;
        }
        if dist2(p, (self.cfg.obstacle[0], self.cfg.obstacle[1])) <= self.cfg.obstacle_radius {
            r += self.cfg.obstacle_penalty;
        }
        r
    }

    pub fn start_state(&self) -> State {
        vec![self.cfg.start[0], self.cfg.start[1]]
    }
}

impl PomdpModel for LightDark {
    fn state_dim(&self) -> usize {
        2
    }

    fn n_actions(&self) -> usize {
        4
    }

    fn action_names(&self) -> &'static [&'static str] {
        &ACTIONS
    }

    fn sample_transition(
        &self,
        state: &[f64],
        action: ActionId,
        rng: &mut dyn RngCore,
    ) -> (State, f64) {
        let (dx, dy) = UNIT[action];
        let gx: f64 = StandardNormal.sample(rng);
        let gy: f64 = StandardNormal.sample(rng);
        let p = clamp_to_rect(
            (
                state[0] + dx + self.trans_std * gx,
                state[1] + dy + self.trans_std * gy,
            ),
            self.cfg.grid_size,
            self.cfg.grid_size,
        );
        let cost = -self.reward((state[0], state[1]));
        (vec![p.0, p.1], cost)
    }

    fn obs_sample(
        &self,
        next_state: &[f64],
        _action: ActionId,
        variant: Variant,
        rng: &mut dyn RngCore,
    ) -> Observation {
        let near = self.near_beacon((next_state[0], next_state[1]));
        match variant {
            Variant::Original => {
                self.original_calls.fetch_add(1, Ordering::Relaxed);
                let gmm = if near { &self.near_gmm } else { &self.far_gmm };
                vec![
                    next_state[0] + gmm.sample(rng),
                    next_state[1] + gmm.sample(rng),
                ]
            }
            Variant::Simplified => {
                let std = if near { self.near_std } else { self.far_std };
                let gx: f64 = StandardNormal.sample(rng);
                let gy: f64 = StandardNormal.sample(rng);
                vec![next_state[0] + std * gx, next_state[1] + std * gy]
            }
        }
    }

    fn obs_density(
        &self,
        obs: &[f64],
        next_state: &[f64],
        _action: ActionId,
        variant: Variant,
    ) -> f64 {
        let near = self.near_beacon((next_state[0], next_state[1]));
        match variant {
            Variant::Original => {
                self.original_calls.fetch_add(1, Ordering::Relaxed);
                let gmm = if near { &self.near_gmm } else { &self.far_gmm };
                gmm.density(obs[0] - next_state[0]) * gmm.density(obs[1] - next_state[1])
            }
            Variant::Simplified => {
                let std = if near { self.near_std } else { self.far_std };
                normal_density(obs[0] - next_state[0], std)
                    * normal_density(obs[1] - next_state[1], std)
            }
        }
    }

    fn state_transition_density(&self, next: &[f64], prev: &[f64], action: ActionId) -> f64 {
        let (dx, dy) = UNIT[action];
        normal_density(next[0] - prev[0] - dx, self.trans_std)
            * normal_density(next[1] - prev[1] - dy, self.trans_std)
    }

    fn cost(&self, state: &[f64], _action: ActionId) -> f64 {
        -self.reward((state[0], state[1]))
    }

    fn cost_bounds(&self) -> (f64, f64) {
        // rewards combine additively: step, goal, obstacle
        let lo = -(self.cfg.step_reward + self.cfg.goal_reward);
        let hi = -(self.cfg.step_reward + self.cfg.obstacle_penalty);
        (lo.min(hi), hi.max(lo))
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
