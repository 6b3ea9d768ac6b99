//! Continuous push: a robot shoves an object toward a target under noisy
//! object observations. A step taken inside the dangerous region (or with
//! the object delivered) pays that state's reward once, then the episode
//! absorbs; the terminal flag is an explicit trailing state component.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::RngCore;
use rand_distr::{Distribution, StandardNormal};

use pomdp_core::{ActionId, Observation, PomdpModel, State, Variant};

use crate::configs::PushConfig;
use crate::geometry::{clamp_to_rect, dist2};
use crate::gmm::{normal_density, Gmm1d};

const ACTIONS: [&str; 4] = ["up", "down", "left", "right"];
const UNIT: [(f64, f64); 4] = [(0.0, 1.0), (0.0, -1.0), (-1.0, 0.0), (1.0, 0.0)];
const TERMINAL_OBS: f64 = -1.0;

pub struct Push {
    cfg: PushConfig,
    robot_std: f64,
    gmm: Gmm1d,
    original_calls: AtomicU64,
}

impl Push {
    pub fn new(cfg: PushConfig) -> Self {
        let gmm = Gmm1d::matched_to_normal(
            cfg.obs_sigma,
            cfg.gmm_components,
            cfg.gmm_comp_scale,
            cfg.gmm_seed,
        );
        Self {
            robot_std: cfg.robot_var.sqrt(),
            gmm,
            original_calls: AtomicU64::new(0),
            cfg,
        }
    }

    pub fn config(&self) -> &PushConfig {
        &self.cfg
    }

    /// `[rx, ry, ox, oy, tx, ty, term]`.
    pub fn start_state(&self) -> State {
        let mut s = self.cfg.initial.to_vec();
        s.push(0.0);
        s
    }

    fn is_term(state: &[f64]) -> bool {
        state[6] > 0.5
    }

    fn in_danger(&self, robot: (f64, f64)) -> bool {
        dist2(robot, (self.cfg.dangerous_area[0], self.cfg.dangerous_area[1]))
            <= self.cfg.dangerous_radius
    }

    fn at_goal(&self, object: (f64, f64), target: (f64, f64)) -> bool {
        dist2(object, target) <= self.cfg.goal_radius
    }

    /// The episode absorbs after any step taken in a danger or delivery
    /// state, so that state's reward is realized exactly once.
    fn episode_over(&self, state: &[f64]) -> bool {
        self.in_danger((state[0], state[1]))
            || self.at_goal((state[2], state[3]), (state[4], state[5]))
    }

    fn reward(&self, state: &[f64]) -> f64 {
        if Self::is_term(state) {
            return 0.0;
        }
        let mut r = self.cfg.step_reward;
        if self.in_danger((state[0], state[1])) {
            r += self.cfg.dangerous_penalty;
        }
        if self.at_goal((state[2], state[3]), (state[4], state[5])) {
            r += self.cfg.goal_reward;
        }
        r
    }
}

impl PomdpModel for Push {
    fn state_dim(&self) -> usize {
        7
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
        if Self::is_term(state) {
            return (state.to_vec(), 0.0);
        }
        let cost = -self.reward(state);
        if self.episode_over(state) {
            let mut frozen = state.to_vec();
            frozen[6] = 1.0;
            return (frozen, cost);
        }
        let robot = (state[0], state[1]);
        let object = (state[2], state[3]);

        let (dx, dy) = UNIT[action];
        let gx: f64 = StandardNormal.sample(rng);
        let gy: f64 = StandardNormal.sample(rng);
        let robot_next = clamp_to_rect(
            (
                robot.0 + dx + self.robot_std * gx,
                robot.1 + dy + self.robot_std * gy,
            ),
            self.cfg.grid_size,
            self.cfg.grid_size,
        );

        // within reach, the robot transfers its displacement to the object,
        // scaled down by friction and capped by the maximum push force
        let object_next = if dist2(robot_next, object) <= self.cfg.push_threshold {
            let disp = (robot_next.0 - robot.0, robot_next.1 - robot.1);
            let norm = (disp.0 * disp.0 + disp.1 * disp.1).sqrt();
            let cap = if norm > self.cfg.max_push_force {
                self.cfg.max_push_force / norm
            } else {
                1.0
            };
            let k = (1.0 - self.cfg.friction) * cap;
            clamp_to_rect(
                (object.0 + k * disp.0, object.1 + k * disp.1),
                self.cfg.grid_size,
                self.cfg.grid_size,
            )
        } else {
            object
        };

        (
            vec![
                robot_next.0,
                robot_next.1,
                object_next.0,
                object_next.1,
                state[4],
                state[5],
                0.0,
            ],
            cost,
        )
    }

    fn obs_sample(
        &self,
        next_state: &[f64],
        _action: ActionId,
        variant: Variant,
        rng: &mut dyn RngCore,
    ) -> Observation {
        if Self::is_term(next_state) {
            return vec![TERMINAL_OBS; 6];
        }
        let (ox, oy) = match variant {
            Variant::Original => {
                self.original_calls.fetch_add(1, Ordering::Relaxed);
                (self.gmm.sample(rng), self.gmm.sample(rng))
            }
            Variant::Simplified => {
                let gx: f64 = StandardNormal.sample(rng);
                let gy: f64 = StandardNormal.sample(rng);
                (self.cfg.obs_sigma * gx, self.cfg.obs_sigma * gy)
            }
        };
        vec![
            next_state[0],
            next_state[1],
            next_state[2] + ox,
            next_state[3] + oy,
            next_state[4],
            next_state[5],
        ]
    }

    fn obs_density(
        &self,
        obs: &[f64],
        next_state: &[f64],
        _action: ActionId,
        variant: Variant,
    ) -> f64 {
        let term_obs = obs.iter().all(|v| *v == TERMINAL_OBS);
        if Self::is_term(next_state) {
            return if term_obs { 1.0 } else { 0.0 };
        }
        if term_obs {
            return 0.0;
        }
        // density over the noisy object components only; the exact parts
        // carry no information for reweighting
        let dx = obs[2] - next_state[2];
        let dy = obs[3] - next_state[3];
        match variant {
            Variant::Original => {
                self.original_calls.fetch_add(1, Ordering::Relaxed);
                self.gmm.density(dx) * self.gmm.density(dy)
            }
            Variant::Simplified => {
                normal_density(dx, self.cfg.obs_sigma) * normal_density(dy, self.cfg.obs_sigma)
            }
        }
    }

    fn state_transition_density(&self, next: &[f64], prev: &[f64], action: ActionId) -> f64 {
        // robot marginal; the object moves deterministically given the robot
        let (dx, dy) = UNIT[action];
        normal_density(next[0] - prev[0] - dx, self.robot_std)
            * normal_density(next[1] - prev[1] - dy, self.robot_std)
    }

    fn cost(&self, state: &[f64], _action: ActionId) -> f64 {
        -self.reward(state)
    }

    fn cost_noise(&self, variant: Variant, rng: &mut dyn RngCore) -> f64 {
        if variant == Variant::Original && self.cfg.reward_noise_var > 0.0 {
            let sigma = self.cfg.reward_noise_var.sqrt();
            let g: f64 = StandardNormal.sample(rng);
            (sigma * g).clamp(-4.0 * sigma, 4.0 * sigma)
        } else {
            0.0
        }
    }

    fn is_terminal(&self, state: &[f64]) -> bool {
        Self::is_term(state)
    }

    fn has_terminal_states(&self) -> bool {
        true
    }

    fn cost_bounds(&self) -> (f64, f64) {
        let noise = 4.0 * self.cfg.reward_noise_var.sqrt();
        let lo = -(self.cfg.step_reward + self.cfg.goal_reward) - noise;
        let hi = -(self.cfg.step_reward + self.cfg.dangerous_penalty) + noise;
        (lo, hi)
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

#[cfg(test)]
mod tests {
    use super::*;
    use cvar_core::rng::stream_rng;

    fn env() -> Push {
        Push::new(PushConfig::default())
    }

    #[test]
    fn pushing_moves_object_with_friction() {
        let e = env();
        let mut rng = stream_rng(1, 0, 0);
        let state = e.start_state();
        let (next, _) = e.sample_transition(&state, 3, &mut rng);
        let robot_disp = next[0] - 0.5;
        let object_disp = next[2] - 1.0;
        assert!(robot_disp > 0.5, "robot moved right");
        assert!(
            (object_disp - 0.7 * robot_disp).abs() < 1e-9,
            "object gets (1 - friction) of the displacement"
        );
    }

    #[test]
    fn far_robot_does_not_push() {
        let e = env();
        let mut rng = stream_rng(2, 0, 0);
        let state = vec![0.5, 0.5, 4.0, 4.0, 5.0, 5.0, 0.0];
        let (next, _) = e.sample_transition(&state, 3, &mut rng);
        assert_eq!(&next[2..4], &state[2..4]);
    }

    #[test]
    fn danger_pays_once_then_absorbs() {
        let e = env();
        let mut rng = stream_rng(3, 0, 0);
        // live state with the robot inside the dangerous ring
        let danger = vec![5.0, 2.0, 1.0, 0.5, 5.0, 5.0, 0.0];
        assert!(!e.is_terminal(&danger));
        assert_eq!(e.cost(&danger, 0), 21.0, "step 1 + penalty 20");
        let (next, cost) = e.sample_transition(&danger, 0, &mut rng);
        assert_eq!(cost, 21.0);
        assert!(e.is_terminal(&next));
        assert_eq!(&next[0..6], &danger[0..6], "positions freeze");
        // absorbed afterwards
        let (next2, cost2) = e.sample_transition(&next, 0, &mut rng);
        assert_eq!(next2, next);
        assert_eq!(cost2, 0.0);
        assert_eq!(e.cost(&next, 0), 0.0);
    }

    #[test]
    fn delivery_pays_goal_reward_then_absorbs() {
        let e = env();
        let mut rng = stream_rng(4, 0, 0);
        let delivered = vec![4.5, 4.5, 5.0, 4.8, 5.0, 5.0, 0.0];
        assert_eq!(e.cost(&delivered, 0), -9.0, "step 1 - goal 10");
        let (next, _) = e.sample_transition(&delivered, 0, &mut rng);
        assert!(e.is_terminal(&next));
    }

    #[test]
    fn terminal_obs_is_sentinel() {
        let e = env();
        let mut rng = stream_rng(5, 0, 0);
        let term = vec![5.0, 2.0, 1.0, 0.5, 5.0, 5.0, 1.0];
        let obs = e.obs_sample(&term, 0, Variant::Original, &mut rng);
        assert!(obs.iter().all(|v| *v == -1.0));
        assert_eq!(e.obs_density(&obs, &term, 0, Variant::Simplified), 1.0);
        let live = e.start_state();
        assert_eq!(e.obs_density(&obs, &live, 0, Variant::Simplified), 0.0);
        assert_eq!(e.original_obs_calls(), 0);
    }

    #[test]
    fn object_observation_noise_by_variant() {
        let e = env();
        let mut rng = stream_rng(6, 0, 0);
        let state = vec![2.0, 2.0, 3.0, 3.0, 5.0, 5.0, 0.0];
        let z = e.obs_sample(&state, 0, Variant::Simplified, &mut rng);
        assert_eq!(z[0], 2.0);
        assert_eq!(z[4], 5.0);
        assert!(z[2] != 3.0);
        assert_eq!(e.original_obs_calls(), 0);
        let _ = e.obs_sample(&state, 0, Variant::Original, &mut rng);
        assert_eq!(e.original_obs_calls(), 1);
    }

    #[test]
    fn original_reward_noise_is_zero_mean_and_clamped() {
        let e = env();
        let mut rng = stream_rng(7, 0, 0);
        let n = 200_000;
        let draws: Vec<f64> = (0..n)
            .map(|_| e.cost_noise(Variant::Original, &mut rng))
            .collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.05, "noise mean {mean}");
        assert!(draws.iter().all(|d| d.abs() <= 20.0));
        assert_eq!(e.cost_noise(Variant::Simplified, &mut rng), 0.0);
    }
}
