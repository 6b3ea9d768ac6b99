//! Typed environment configurations. Defaults mirror the shipped config
//! files field for field; loading a shipped file must reproduce them
//! exactly.

use serde::{Deserialize, Serialize};

fn default_comp_scale() -> f64 {
    0.097
}

/// Safe/dangerous open-loop action scripts, stored as action names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionScripts {
    pub safe: Vec<String>,
    pub dangerous: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LightDarkConfig {
    pub grid_size: f64,
    pub start: [f64; 2],
    pub goal: [f64; 2],
    pub goal_radius: f64,
    pub transition_var: f64,
    pub obs_var_far: f64,
    pub obs_var_near: f64,
    pub beacons: Vec<[f64; 2]>,
    pub beacon_radius: f64,
    pub obstacle: [f64; 2],
    pub obstacle_radius: f64,
    pub goal_reward: f64,
    pub obstacle_penalty: f64,
    pub step_reward: f64,
    pub gamma: f64,
    pub horizon: usize,
    pub gmm_components: usize,
    #[serde(default = "default_comp_scale")]
    pub gmm_comp_scale: f64,
    pub gmm_seed: u64,
    pub scripts: ActionScripts,
}

impl Default for LightDarkConfig {
    fn default() -> Self {
        Self {
            grid_size: 7.0,
            start: [1.0, 1.0],
            goal: [6.0, 6.0],
            goal_radius: 1.5,
            transition_var: 0.06,
            obs_var_far: 0.06,
            obs_var_near: 0.03,
            beacons: vec![[1.0, 1.0], [1.0, 6.0], [6.0, 1.0], [6.0, 6.0]],
            beacon_radius: 1.0,
            obstacle: [5.0, 2.0],
            obstacle_radius: 3.0,
            goal_reward: 10.0,
            obstacle_penalty: -10.0,
            step_reward: -2.0,
            gamma: 0.95,
            horizon: 9,
            gmm_components: 2500,
            gmm_comp_scale: 0.097,
            gmm_seed: 1101,
            scripts: ActionScripts {
                safe: ["up", "up", "up", "up", "up", "right", "right", "right", "right"]
                    .map(String::from)
                    .to_vec(),
                dangerous: ["right", "right", "right", "right", "up", "up", "up", "up", "up"]
                    .map(String::from)
                    .to_vec(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaserTagConfig {
    pub arena: [f64; 2],
    pub walls: Vec<[usize; 2]>,
    pub initial: [f64; 4],
    pub robot_var: f64,
    pub opponent_var: f64,
    pub pursuit_speed: f64,
    pub laser_sigma: f64,
    pub agent_radius: f64,
    pub tag_radius: f64,
    pub tag_reward: f64,
    pub failed_tag_penalty: f64,
    pub step_reward: f64,
    pub dangerous_areas: Vec<[f64; 2]>,
    pub dangerous_radius: f64,
    pub dangerous_penalty: f64,
    pub reward_noise_var: f64,
    pub gamma: f64,
    pub horizon: usize,
    pub gmm_components: usize,
    #[serde(default = "default_comp_scale")]
    pub gmm_comp_scale: f64,
    pub gmm_seed: u64,
    pub scripts: ActionScripts,
}

impl Default for LaserTagConfig {
    fn default() -> Self {
        Self {
            arena: [11.0, 7.0],
            walls: vec![
                [4, 2],
                [4, 3],
                [4, 4],
                [6, 3],
                [6, 4],
                [9, 2],
                [9, 3],
                [1, 4],
            ],
            initial: [2.0, 1.0, 8.0, 5.0],
            robot_var: 0.0125,
            opponent_var: 0.00625,
            pursuit_speed: 0.6,
            laser_sigma: 1.0,
            agent_radius: 0.3,
            tag_radius: 0.5,
            tag_reward: 10.0,
            failed_tag_penalty: -10.0,
            step_reward: -1.0,
            dangerous_areas: vec![[5.0, 3.0], [7.0, 1.0]],
            dangerous_radius: 1.0,
            dangerous_penalty: -300.0,
            reward_noise_var: 0.25,
            gamma: 0.95,
            horizon: 8,
            gmm_components: 290,
            gmm_comp_scale: 0.097,
            gmm_seed: 1102,
            scripts: ActionScripts {
                safe: ["up", "up", "up", "up", "right", "right", "right", "tag"]
                    .map(String::from)
                    .to_vec(),
                dangerous: ["right", "right", "right", "right", "right", "up", "up", "tag"]
                    .map(String::from)
                    .to_vec(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushConfig {
    pub grid_size: f64,
    pub initial: [f64; 6],
    pub robot_var: f64,
    pub obs_sigma: f64,
    pub push_threshold: f64,
    pub friction: f64,
    pub max_push_force: f64,
    pub robot_radius: f64,
    pub goal_radius: f64,
    pub goal_reward: f64,
    pub step_reward: f64,
    pub dangerous_area: [f64; 2],
    pub dangerous_radius: f64,
    pub dangerous_penalty: f64,
    pub reward_noise_var: f64,
    pub gamma: f64,
    pub horizon: usize,
    pub gmm_components: usize,
    #[serde(default = "default_comp_scale")]
    pub gmm_comp_scale: f64,
    pub gmm_seed: u64,
    pub scripts: ActionScripts,
}

impl Default for PushConfig {
    fn default() -> Self {
        Self {
            grid_size: 6.0,
            initial: [0.5, 0.5, 1.0, 0.5, 5.0, 5.0],
            robot_var: 0.005,
            obs_sigma: 0.1,
            push_threshold: 1.0,
            friction: 0.3,
            max_push_force: 2.0,
            robot_radius: 0.3,
            goal_radius: 0.5,
            goal_reward: 10.0,
            step_reward: -1.0,
            dangerous_area: [5.0, 2.0],
            dangerous_radius: 1.0,
            dangerous_penalty: -20.0,
            reward_noise_var: 25.0,
            gamma: 0.95,
            horizon: 9,
            gmm_components: 7000,
            gmm_comp_scale: 0.097,
            gmm_seed: 1103,
            scripts: ActionScripts {
                safe: ["up", "up", "up", "up", "right", "right", "right", "right", "up"]
                    .map(String::from)
                    .to_vec(),
                dangerous: [
                    "right", "right", "right", "right", "down", "up", "up", "up", "up",
                ]
                .map(String::from)
                .to_vec(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToyChainConfig {
    /// transition[action][from][to]
    pub transition: Vec<Vec<Vec<f64>>>,
    /// obs_original[state][obs]
    pub obs_original: Vec<Vec<f64>>,
    pub obs_simplified: Vec<Vec<f64>>,
    /// costs[action][state]
    pub costs: Vec<Vec<f64>>,
    pub gamma: f64,
    pub horizon: usize,
    pub scripts: ActionScripts,
}

impl Default for ToyChainConfig {
    fn default() -> Self {
        Self {
            // deterministic permutation transitions keep the particle
            // filter exact when particles cover the full support
            transition: vec![
                vec![
                    vec![0.0, 1.0, 0.0],
                    vec![0.0, 0.0, 1.0],
                    vec![1.0, 0.0, 0.0],
                ],
                vec![
                    vec![0.0, 0.0, 1.0],
                    vec![1.0, 0.0, 0.0],
                    vec![0.0, 1.0, 0.0],
                ],
            ],
            obs_original: vec![vec![0.82, 0.18], vec![0.35, 0.65], vec![0.52, 0.48]],
            obs_simplified: vec![vec![0.80, 0.20], vec![0.37, 0.63], vec![0.50, 0.50]],
            costs: vec![vec![0.0, 1.0, 0.4], vec![0.3, 0.6, 1.0]],
            gamma: 1.0,
            horizon: 3,
            scripts: ActionScripts {
                safe: ["a0", "a0", "a0"].map(String::from).to_vec(),
                dangerous: ["a1", "a1", "a1"].map(String::from).to_vec(),
            },
        }
    }
}
