use crate::belief::ParticleBelief;
use crate::model::ActionId;

/// Maps a belief and absolute time step to an action. Implementations
/// must be deterministic given `(belief, step)`.
pub trait Policy: Send + Sync {
    fn act(&self, belief: &ParticleBelief, step: usize) -> ActionId;
}

/// A fixed action script executed without conditioning on observations;
/// steps past the end repeat the last action.
#[derive(Debug, Clone)]
pub struct OpenLoopSequence {
    actions: Vec<ActionId>,
}

impl OpenLoopSequence {
    pub fn new(actions: Vec<ActionId>) -> Self {
        assert!(!actions.is_empty(), "open-loop script needs at least one action");
        Self { actions }
    }

    pub fn actions(&self) -> &[ActionId] {
        &self.actions
    }
}

impl Policy for OpenLoopSequence {
    fn act(&self, _belief: &ParticleBelief, step: usize) -> ActionId {
        self.actions[step.min(self.actions.len() - 1)]
    }
}

/// Overrides the action at one step (the action-value estimator's first
/// action), delegating everywhere else.
pub struct FirstActionPolicy<'a> {
    first: ActionId,
    at_step: usize,
    inner: &'a dyn Policy,
}

impl<'a> FirstActionPolicy<'a> {
    pub fn new(first: ActionId, at_step: usize, inner: &'a dyn Policy) -> Self {
        Self {
            first,
            at_step,
            inner,
        }
    }
}

impl Policy for FirstActionPolicy<'_> {
    fn act(&self, belief: &ParticleBelief, step: usize) -> ActionId {
        if step == self.at_step {
            self.first
        } else {
            self.inner.act(belief, step)
        }
    }
}
