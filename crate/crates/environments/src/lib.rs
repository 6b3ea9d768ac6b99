//! Benchmark POMDPs with paired observation models.
//!
//! Each environment exposes two observation variants on one instance: an
//! original model whose per-axis noise is a large Gaussian mixture, and a
//! simplified model using the single Gaussian of matching moments (and no
//! reward noise). Environments register by name and are selected at
//! runtime through [`make_environment`].
//!
//! The toy chain is a fully tabulated model small enough for exact return
//! enumeration; it backs the test oracles of the downstream crates.

mod configs;
mod error;
mod geometry;
mod gmm;
mod laser_tag;
mod light_dark;
mod push_env;
mod registry;
mod toy_chain;

pub use configs::{
    ActionScripts, LaserTagConfig, LightDarkConfig, PushConfig, ToyChainConfig,
};
pub use error::EnvError;
pub use gmm::Gmm1d;
pub use laser_tag::LaserTag;
pub use light_dark::LightDark;
pub use push_env::Push;
pub use registry::{available_environments, load_env_config, make_environment, EnvConfig};
pub use toy_chain::{enumerate_return_distribution, ToyChain};
