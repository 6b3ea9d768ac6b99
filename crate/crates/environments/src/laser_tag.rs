//! Continuous laser tag: a robot pursues an evading opponent in a walled
//! arena, observing 8 noisy laser ranges. Tagging ends the episode; two
//! dangerous regions carry a large penalty. The original variant uses a
//! mixture noise model per ray and stochastic rewards.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::RngCore;
use rand_distr::{Distribution, StandardNormal};

use pomdp_core::{ActionId, Observation, PomdpModel, State, Variant};

use crate::configs::LaserTagConfig;
use crate::geometry::{clamp_to_rect, dist2, ray_to_aabb, ray_to_circle, ray_to_rect_boundary};
use crate::gmm::{normal_density, Gmm1d};

const ACTIONS: [&str; 5] = ["up", "down", "left", "right", "tag"];
const UNIT: [(f64, f64); 4] = [(0.0, 1.0), (0.0, -1.0), (-1.0, 0.0), (1.0, 0.0)];
const N_RAYS: usize = 8;
const TERMINAL_OBS: f64 = -1.0;

pub struct LaserTag {
    cfg: LaserTagConfig,
    robot_std: f64,
    opp_std: f64,
    ray_dirs: [(f64, f64); N_RAYS],
    gmm: Gmm1d,
    original_calls: AtomicU64,
}

impl LaserTag {
    pub fn new(cfg: LaserTagConfig) -> Self {
        let mut ray_dirs = [(0.0, 0.0); N_RAYS];
        for (k, dir) in ray_dirs.iter_mut().enumerate() {
            let angle = std::f64::consts::FRAC_PI_4 * k as f64;
            *dir = (angle.cos(), angle.sin());
        }
        let gmm = Gmm1d::matched_to_normal(
            cfg.laser_sigma,
            cfg.gmm_components,
            cfg.gmm_comp_scale,
            cfg.gmm_seed,
        );
        Self {
            robot_std: cfg.robot_var.sqrt(),
            opp_std: cfg.opponent_var.sqrt(),
            ray_dirs,
            gmm,
            original_calls: AtomicU64::new(0),
            cfg,
        }
    }

    pub fn config(&self) -> &LaserTagConfig {
        &self.cfg
    }

    pub fn start_state(&self) -> State {
        let i = self.cfg.initial;
        vec![i[0], i[1], i[2], i[3], 0.0]
    }

    fn is_term(state: &[f64]) -> bool {
        state[4] > 0.5
    }

    fn in_wall(&self, p: (f64, f64)) -> bool {
        self.cfg.walls.iter().any(|w| {
            let (x0, y0) = (w[0] as f64, w[1] as f64);
            p.0 >= x0 && p.0 <= x0 + 1.0 && p.1 >= y0 && p.1 <= y0 + 1.0
        })
    }

    fn in_danger(&self, p: (f64, f64)) -> bool {
        self.cfg
            .dangerous_areas
            .iter()
            .any(|d| dist2(p, (d[0], d[1])) <= self.cfg.dangerous_radius)
    }

    fn move_agent(&self, from: (f64, f64), delta: (f64, f64)) -> (f64, f64) {
        let target = clamp_to_rect(
            (from.0 + delta.0, from.1 + delta.1),
            self.cfg.arena[0],
            self.cfg.arena[1],
        );
        if self.in_wall(target) {
            from
        } else {
            target
        }
    }

    /// True range along ray `k` from the robot: nearest of arena boundary,
    /// wall cells, and the opponent disc.
    fn ray_range(&self, state: &[f64], k: usize) -> f64 {
        let origin = (state[0], state[1]);
        let dir = self.ray_dirs[k];
        let mut t = ray_to_rect_boundary(origin, dir, self.cfg.arena[0], self.cfg.arena[1]);
        for w in &self.cfg.walls {
            let cell = (w[0] as f64, w[1] as f64, w[0] as f64 + 1.0, w[1] as f64 + 1.0);
            if let Some(hit) = ray_to_aabb(origin, dir, cell) {
                t = t.min(hit);
            }
        }
        if let Some(hit) = ray_to_circle(origin, dir, (state[2], state[3]), self.cfg.agent_radius)
        {
            t = t.min(hit);
        }
        t
    }

    fn reward(&self, state: &[f64], action: ActionId) -> f64 {
        if Self::is_term(state) {
            return 0.0;
        }
        let robot = (state[0], state[1]);
        let mut r = if action == 4 {
            if dist2(robot, (state[2], state[3])) <= self.cfg.tag_radius {
                self.cfg.tag_reward
            } else {
                self.cfg.failed_tag_penalty
            }
        } else {
            self.cfg.step_reward
        };
        if self.in_danger(robot) {
            r += self.cfg.dangerous_penalty;
        }
        r
    }
}

impl PomdpModel for LaserTag {
    fn state_dim(&self) -> usize {
        5
    }

    fn n_actions(&self) -> usize {
        5
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
        let cost = -self.reward(state, action);
        if Self::is_term(state) {
            return (state.to_vec(), 0.0);
        }
        let robot = (state[0], state[1]);
        let opp = (state[2], state[3]);

        let tagged = action == 4 && dist2(robot, opp) <= self.cfg.tag_radius;
        let robot_next = if action < 4 {
            let (dx, dy) = UNIT[action];
            let gx: f64 = StandardNormal.sample(rng);
            let gy: f64 = StandardNormal.sample(rng);
            self.move_agent(
                robot,
                (dx + self.robot_std * gx, dy + self.robot_std * gy),
            )
        } else {
            robot
        };

        // opponent pursues the robot at fixed speed with jitter
        let to_robot = (robot.0 - opp.0, robot.1 - opp.1);
        let norm = (to_robot.0 * to_robot.0 + to_robot.1 * to_robot.1).sqrt();
        let dir = if norm > 1e-9 {
            (to_robot.0 / norm, to_robot.1 / norm)
        } else {
            (0.0, 0.0)
        };
        let gx: f64 = StandardNormal.sample(rng);
        let gy: f64 = StandardNormal.sample(rng);
        let opp_next = self.move_agent(
            opp,
            (
                self.cfg.pursuit_speed * dir.0 + self.opp_std * gx,
                self.cfg.pursuit_speed * dir.1 + self.opp_std * gy,
            ),
        );

        (
            vec![
                robot_next.0,
                robot_next.1,
                opp_next.0,
                opp_next.1,
                if tagged { 1.0 } else { 0.0 },
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
            return vec![TERMINAL_OBS; N_RAYS];
        }
        if variant == Variant::Original {
            self.original_calls.fetch_add(1, Ordering::Relaxed);
        }
        (0..N_RAYS)
            .map(|k| {
                let range = self.ray_range(next_state, k);
                match variant {
                    Variant::Original => range + self.gmm.sample(rng),
                    Variant::Simplified => {
                        let g: f64 = StandardNormal.sample(rng);
                        range + self.cfg.laser_sigma * g
                    }
                }
            })
            .collect()
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
        if variant == Variant::Original {
            self.original_calls.fetch_add(1, Ordering::Relaxed);
        }
        let mut density = 1.0;
        for k in 0..N_RAYS {
            let diff = obs[k] - self.ray_range(next_state, k);
            density *= match variant {
                Variant::Original => self.gmm.density(diff),
                Variant::Simplified => normal_density(diff, self.cfg.laser_sigma),
            };
        }
        density
    }

    fn state_transition_density(&self, next: &[f64], prev: &[f64], action: ActionId) -> f64 {
        // continuous part only: robot and opponent position Gaussians
        let (dx, dy) = if action < 4 { UNIT[action] } else { (0.0, 0.0) };
        let robot = normal_density(next[0] - prev[0] - dx, self.robot_std)
            * normal_density(next[1] - prev[1] - dy, self.robot_std);
        let to_robot = (prev[0] - prev[2], prev[1] - prev[3]);
        let norm = (to_robot.0 * to_robot.0 + to_robot.1 * to_robot.1).sqrt();
        let dir = if norm > 1e-9 {
            (to_robot.0 / norm, to_robot.1 / norm)
        } else {
            (0.0, 0.0)
        };
        let opp = normal_density(
            next[2] - prev[2] - self.cfg.pursuit_speed * dir.0,
            self.opp_std,
        ) * normal_density(
            next[3] - prev[3] - self.cfg.pursuit_speed * dir.1,
            self.opp_std,
        );
        robot * opp
    }

    fn cost(&self, state: &[f64], action: ActionId) -> f64 {
        -self.reward(state, action)
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
        let lo = -self.cfg.tag_reward - noise;
        let hi = -(self.cfg.failed_tag_penalty + self.cfg.dangerous_penalty) + noise;
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
