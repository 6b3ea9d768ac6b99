use cvar_core::CvarError;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum PomdpError {
    #[error("all posterior particle weights vanished at trajectory {trajectory}, step {step}")]
    DegenerateBelief { trajectory: usize, step: usize },

    #[error("invalid particle belief: {0}")]
    InvalidBelief(&'static str),

    #[error("action {action} out of range (model has {n_actions} actions)")]
    InvalidAction { action: usize, n_actions: usize },

    #[error("invalid trajectory parameters: {0}")]
    InvalidParams(String),

    #[error(transparent)]
    Cvar(#[from] CvarError),
}
