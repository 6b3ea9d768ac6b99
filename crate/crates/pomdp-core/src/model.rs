use rand::RngCore;

/// States and observations are flat real vectors so that models of
/// different domains can sit behind one object-safe interface; actions
/// are indices into a fixed discrete action set.
pub type State = Vec<f64>;
pub type Observation = Vec<f64>;
pub type ActionId = usize;

/// Which observation/reward model a simulation step runs under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// The expensive reference model (mixture observation densities,
    /// stochastic rewards where configured).
    Original,
    /// The cheap surrogate (single-Gaussian observations, deterministic
    /// rewards).
    Simplified,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Original => "original",
            Variant::Simplified => "simplified",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "original" => Some(Variant::Original),
            "simplified" => Some(Variant::Simplified),
            _ => None,
        }
    }
}

/// A POMDP with both observation-model variants exposed on one instance.
///
/// `cost` is the deterministic state cost (negated reward), bounded by
/// `cost_bounds`. Stochastic reward models enter through `cost_noise`,
/// drawn per step at the belief level under the original variant only.
///
/// Implementations must be immutable after construction and safe to share
/// across threads; all sampling goes through the supplied generator.
pub trait PomdpModel: Send + Sync {
    fn state_dim(&self) -> usize;

    fn n_actions(&self) -> usize;

    fn action_names(&self) -> &'static [&'static str];

    /// Samples `(next_state, step_cost)` from the transition model.
    fn sample_transition(
        &self,
        state: &[f64],
        action: ActionId,
        rng: &mut dyn RngCore,
    ) -> (State, f64);

    fn obs_sample(
        &self,
        next_state: &[f64],
        action: ActionId,
        variant: Variant,
        rng: &mut dyn RngCore,
    ) -> Observation;

    /// Observation likelihood under the chosen variant.
    fn obs_density(&self, obs: &[f64], next_state: &[f64], action: ActionId, variant: Variant)
        -> f64;

    /// Transition density `p(next | prev, action)`, used by the
    /// importance-sampling discrepancy estimators.
    fn state_transition_density(&self, next: &[f64], prev: &[f64], action: ActionId) -> f64;

    /// Deterministic state cost (negated reward).
    fn cost(&self, state: &[f64], action: ActionId) -> f64;

    /// Additive stochastic cost noise at the belief level; zero unless the
    /// original model declares reward noise.
    fn cost_noise(&self, _variant: Variant, _rng: &mut dyn RngCore) -> f64 {
        0.0
    }

    fn is_terminal(&self, _state: &[f64]) -> bool {
        false
    }

    fn has_terminal_states(&self) -> bool {
        false
    }

    /// Declared `(R_min, R_max)` bounds on the per-step cost, inclusive of
    /// any clamped cost noise.
    fn cost_bounds(&self) -> (f64, f64);

    fn discount(&self) -> f64 {
        1.0
    }

    /// How many times the original-variant observation model has been
    /// evaluated (sampling or density) on this instance. Simplified-variant
    /// runs must leave this untouched; the acceleration experiments assert
    /// that.
    fn original_obs_calls(&self) -> u64 {
        0
    }

    fn reset_original_obs_calls(&self) {}
}
