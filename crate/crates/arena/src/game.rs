//! Concurrent stochastic parity games with stopping states, and positional
//! strategies over them.

use std::collections::BTreeMap;

use cspg_core::error::{domain, Result};
use cspg_core::{GameForm, MixedStrategy, Player, Q};
use serde::{Deserialize, Serialize};

/// A valuation assigns a rational in [0,1] to states. Lookups fall back to
/// the stopping values where a game is available, see
/// [`ParityGame::outcome_value`].
pub type Valuation = BTreeMap<String, Q>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityGame {
    /// Non-stopping states, in input order; this order drives every
    /// deterministic enumeration.
    states: Vec<String>,
    forms: BTreeMap<String, GameForm>,
    colors: BTreeMap<String, usize>,
    /// Stopping states with the value collected upon reaching them.
    stopping: BTreeMap<String, Q>,
}

impl ParityGame {
    pub fn new(
        states: Vec<String>,
        forms: BTreeMap<String, GameForm>,
        colors: BTreeMap<String, usize>,
        stopping: BTreeMap<String, Q>,
    ) -> Result<ParityGame> {
        for q in &states {
            if stopping.contains_key(q) {
                return Err(domain(format!("state {q:?} is both regular and stopping")));
            }
            if !forms.contains_key(q) {
                return Err(domain(format!("state {q:?} has no game form")));
            }
            if !colors.contains_key(q) {
                return Err(domain(format!("state {q:?} has no color")));
            }
        }
        for name in forms.keys().chain(colors.keys()) {
            if !states.contains(name) {
                return Err(domain(format!("form/color given for unknown state {name:?}")));
            }
        }
        for u in stopping.values() {
            if !u.in_unit() {
                return Err(domain(format!("stopping value {u} outside [0,1]")));
            }
        }
        for q in &states {
            for o in forms[q].outcomes() {
                if !states.contains(o) && !stopping.contains_key(o) {
                    return Err(domain(format!(
                        "state {q:?} can reach {o:?}, which is neither a state nor a stopping state"
                    )));
                }
            }
        }
        Ok(ParityGame {
            states,
            forms,
            colors,
            stopping,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn is_stopping(&self, name: &str) -> bool {
        self.stopping.contains_key(name)
    }

    pub fn stopping(&self) -> &BTreeMap<String, Q> {
        &self.stopping
    }

    pub fn stopping_value(&self, name: &str) -> Option<&Q> {
        self.stopping.get(name)
    }

    pub fn form(&self, q: &str) -> Result<&GameForm> {
        self.forms
            .get(q)
            .ok_or_else(|| domain(format!("no game form at {q:?}")))
    }

    pub fn color(&self, q: &str) -> Result<usize> {
        self.colors
            .get(q)
            .copied()
            .ok_or_else(|| domain(format!("no color at {q:?}")))
    }

    pub fn colors(&self) -> &BTreeMap<String, usize> {
        &self.colors
    }

    pub fn max_color(&self) -> usize {
        self.colors.values().copied().max().unwrap_or(0)
    }

    /// All state names, regular first (in order), then stopping (sorted).
    pub fn all_names(&self) -> Vec<String> {
        let mut all = self.states.clone();
        all.extend(self.stopping.keys().cloned());
        all
    }

    /// The value of an outcome name under a valuation: the valuation entry
    /// for regular states, the fixed stopping value otherwise.
    pub fn outcome_value(&self, v: &Valuation, name: &str) -> Result<Q> {
        if let Some(u) = self.stopping.get(name) {
            return Ok(u.clone());
        }
        v.get(name)
            .cloned()
            .ok_or_else(|| domain(format!("valuation is missing state {name:?}")))
    }
}

/// One player's positional strategy: a mixed action choice at every
/// non-stopping state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionalStrategy {
    pub owner: Player,
    pub choice: BTreeMap<String, MixedStrategy>,
}

impl PositionalStrategy {
    pub fn validate_in(&self, game: &ParityGame) -> Result<()> {
        for q in game.states() {
            let s = self
                .choice
                .get(q)
                .ok_or_else(|| domain(format!("strategy has no choice at {q:?}")))?;
            if s.owner != self.owner {
                return Err(domain(format!("choice at {q:?} belongs to the wrong player")));
            }
            s.validate_in(game.form(q)?)?;
        }
        Ok(())
    }

    pub fn at(&self, q: &str) -> Result<&MixedStrategy> {
        self.choice
            .get(q)
            .ok_or_else(|| domain(format!("strategy has no choice at {q:?}")))
    }

    /// Deterministic strategy from pure picks.
    pub fn pure(owner: Player, picks: impl IntoIterator<Item = (String, String)>) -> PositionalStrategy {
        PositionalStrategy {
            owner,
            choice: picks
                .into_iter()
                .map(|(q, a)| (q, MixedStrategy::pure(owner, &a)))
                .collect(),
        }
    }

    /// Plays uniformly over the owner's actions at every state.
    pub fn uniform(owner: Player, game: &ParityGame) -> Result<PositionalStrategy> {
        let mut choice = BTreeMap::new();
        for q in game.states() {
            let form = game.form(q)?;
            choice.insert(q.clone(), MixedStrategy::uniform(owner, form.actions(owner)));
        }
        Ok(PositionalStrategy { owner, choice })
    }

    pub fn is_deterministic(&self) -> bool {
        self.choice.values().all(|s| s.weights.is_deterministic())
    }
}
