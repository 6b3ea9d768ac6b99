//! Name-keyed environment registry. Each benchmark environment sits
//! behind the [`PomdpModel`] trait and is constructed by name at runtime;
//! both observation variants live on the returned instance and are
//! selected per simulation run.

use std::path::Path;
use std::sync::Arc;

use pomdp_core::PomdpModel;
use serde::Deserialize;

use crate::configs::{ActionScripts, LaserTagConfig, LightDarkConfig, PushConfig, ToyChainConfig};
use crate::error::EnvError;
use crate::laser_tag::LaserTag;
use crate::light_dark::LightDark;
use crate::push_env::Push;
use crate::toy_chain::ToyChain;

type Constructor = fn() -> Result<Arc<dyn PomdpModel>, EnvError>;

static REGISTRY: &[(&str, Constructor)] = &[
    ("light-dark", || {
        Ok(Arc::new(LightDark::new(LightDarkConfig::default())))
    }),
    ("laser-tag", || {
        Ok(Arc::new(LaserTag::new(LaserTagConfig::default())))
    }),
    ("push", || Ok(Arc::new(Push::new(PushConfig::default())))),
    ("toy-chain", || {
        Ok(Arc::new(ToyChain::new(ToyChainConfig::default())?))
    }),
];

pub fn available_environments() -> Vec<&'static str> {
    REGISTRY.iter().map(|(name, _)| *name).collect()
}

/// Builds the named environment with its default (shipped) configuration.
/// The returned model exposes both observation variants; pass the variant
/// per run.
pub fn make_environment(name: &str) -> Result<Arc<dyn PomdpModel>, EnvError> {
    REGISTRY
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| EnvError::UnknownEnvironment(name.to_string()))
        .and_then(|(_, ctor)| ctor())
}

/// A parsed environment config file (tagged by `kind`).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EnvConfig {
    LightDark(LightDarkConfig),
    LaserTag(LaserTagConfig),
    Push(PushConfig),
    ToyChain(ToyChainConfig),
}

impl EnvConfig {
    pub fn name(&self) -> &'static str {
        match self {
            EnvConfig::LightDark(_) => "light-dark",
            EnvConfig::LaserTag(_) => "laser-tag",
            EnvConfig::Push(_) => "push",
            EnvConfig::ToyChain(_) => "toy-chain",
        }
    }

    pub fn build(&self) -> Result<Arc<dyn PomdpModel>, EnvError> {
        Ok(match self {
            EnvConfig::LightDark(c) => Arc::new(LightDark::new(c.clone())),
            EnvConfig::LaserTag(c) => Arc::new(LaserTag::new(c.clone())),
            EnvConfig::Push(c) => Arc::new(Push::new(c.clone())),
            EnvConfig::ToyChain(c) => Arc::new(ToyChain::new(c.clone())?),
        })
    }

    pub fn scripts(&self) -> &ActionScripts {
        match self {
            EnvConfig::LightDark(c) => &c.scripts,
            EnvConfig::LaserTag(c) => &c.scripts,
            EnvConfig::Push(c) => &c.scripts,
            EnvConfig::ToyChain(c) => &c.scripts,
        }
    }

    pub fn horizon(&self) -> usize {
        match self {
            EnvConfig::LightDark(c) => c.horizon,
            EnvConfig::LaserTag(c) => c.horizon,
            EnvConfig::Push(c) => c.horizon,
            EnvConfig::ToyChain(c) => c.horizon,
        }
    }

    /// Default config for a registered environment name.
    pub fn default_for(name: &str) -> Result<Self, EnvError> {
        match name {
            "light-dark" => Ok(EnvConfig::LightDark(LightDarkConfig::default())),
            "laser-tag" => Ok(EnvConfig::LaserTag(LaserTagConfig::default())),
            "push" => Ok(EnvConfig::Push(PushConfig::default())),
            "toy-chain" => Ok(EnvConfig::ToyChain(ToyChainConfig::default())),
            other => Err(EnvError::UnknownEnvironment(other.to_string())),
        }
    }
}

/// Loads an environment config file (TOML, tagged by `kind`).
pub fn load_env_config(path: &Path) -> Result<EnvConfig, EnvError> {
    let text = std::fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| EnvError::Parse(e.to_string()))
}

/// Resolves action names to indices against a model's action set.
pub fn resolve_actions(
    model: &dyn PomdpModel,
    names: &[String],
) -> Result<Vec<usize>, EnvError> {
    names
        .iter()
        .map(|name| {
            model
                .action_names()
                .iter()
                .position(|a| a == name)
                .ok_or_else(|| EnvError::UnknownAction(name.clone()))
        })
        .collect()
}
