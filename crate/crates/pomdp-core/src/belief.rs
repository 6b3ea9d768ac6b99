use crate::error::PomdpError;
use crate::model::{ActionId, PomdpModel, State};

/// A weighted particle set approximating a belief. Weights are
/// non-negative with at least one strictly positive; states share one
/// dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleBelief {
    particles: Vec<(State, f64)>,
}

impl ParticleBelief {
    pub fn new(particles: Vec<(State, f64)>) -> Result<Self, PomdpError> {
        if particles.is_empty() {
            return Err(PomdpError::InvalidBelief("no particles"));
        }
        let dim = particles[0].0.len();
        if particles.iter().any(|(s, _)| s.len() != dim) {
            return Err(PomdpError::InvalidBelief("inconsistent state dimensions"));
        }
        if particles
            .iter()
            .any(|(_, w)| !w.is_finite() || *w < 0.0)
        {
            return Err(PomdpError::InvalidBelief("weights must be finite and >= 0"));
        }
        if !particles.iter().any(|(_, w)| *w > 0.0) {
            return Err(PomdpError::InvalidBelief("at least one weight must be positive"));
        }
        Ok(Self { particles })
    }

    /// Equal-weight belief over the given states.
    pub fn uniform(states: Vec<State>) -> Result<Self, PomdpError> {
        let n = states.len();
        Self::new(states.into_iter().map(|s| (s, 1.0 / n as f64)).collect())
    }

    /// N copies of a single known state.
    pub fn degenerate(state: State, n_particles: usize) -> Result<Self, PomdpError> {
        Self::uniform(vec![state; n_particles.max(1)])
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn particles(&self) -> &[(State, f64)] {
        &self.particles
    }

    pub fn total_weight(&self) -> f64 {
        self.particles.iter().map(|(_, w)| w).sum()
    }

    /// Weights rescaled to sum to one.
    pub fn normalized_weights(&self) -> Vec<f64> {
        let total = self.total_weight();
        self.particles.iter().map(|(_, w)| w / total).collect()
    }

    /// Belief-averaged state cost `Σ w̃_i c(x_i, a)`.
    pub fn weighted_cost(&self, model: &dyn PomdpModel, action: ActionId) -> f64 {
        let total = self.total_weight();
        self.particles
            .iter()
            .map(|(s, w)| w * model.cost(s, action))
            .sum::<f64>()
            / total
    }

    /// Weighted average of an arbitrary per-state function.
    pub fn weighted_mean(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        let total = self.total_weight();
        self.particles
            .iter()
            .map(|(s, w)| w * f(s))
            .sum::<f64>()
            / total
    }
}
