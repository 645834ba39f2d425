//! Value slices: restricting a game to the states sharing one value, with
//! everything outside frozen into stopping states.

use std::collections::BTreeMap;

use cspg_arena::{ParityGame, Valuation};
use cspg_core::error::{domain, Result};
use cspg_core::Q;
use cspg_local::{even_ceil_val, odd_ceil_val};

/// One u-slice of a game: the restricted game G^u plus the bookkeeping the
/// layered construction needs.
#[derive(Debug, Clone)]
pub struct SliceContext {
    /// The restricted game: states outside the slice are stopping at their
    /// declared value.
    pub game: ParityGame,
    /// Declared values of every state of the original game.
    pub values: Valuation,
    pub u: Q,
    /// Slice states in input order.
    pub q_u: Vec<String>,
    /// Even ceiling of the colors occurring in the slice.
    pub e: usize,
    /// Odd ceiling of the colors occurring in the slice.
    pub o: usize,
}

impl SliceContext {
    pub fn in_slice(&self, q: &str) -> bool {
        self.q_u.iter().any(|x| x == q)
    }

    /// Real color of a slice state.
    pub fn col(&self, q: &str) -> Result<usize> {
        self.game.color(q)
    }
}

/// Freezes every non-stopping state outside `keep` into a stopping state at
/// its declared value.
pub fn slice_set(game: &ParityGame, values: &Valuation, keep: &[String]) -> Result<ParityGame> {
    let mut forms = BTreeMap::new();
    let mut colors = BTreeMap::new();
    let mut stopping = game.stopping().clone();
    for q in game.states() {
        if game.is_stopping(q) {
            continue;
        }
        if keep.iter().any(|x| x == q) {
            forms.insert(q.clone(), game.form(q)?.clone());
            colors.insert(q.clone(), game.color(q)?);
        } else {
            let v = values
                .get(q)
                .ok_or_else(|| domain(format!("no declared value for state {q:?}")))?;
            stopping.insert(q.clone(), v.clone());
        }
    }
    let states = game
        .states()
        .iter()
        .filter(|q| keep.iter().any(|x| &x == q))
        .cloned()
        .collect();
    ParityGame::new(states, forms, colors, stopping)
}

/// The u-slice of the game under the declared values; u must be positive
/// and actually achieved by some non-stopping state.
pub fn slice(game: &ParityGame, values: &Valuation, u: &Q) -> Result<SliceContext> {
    if u.is_zero() {
        return Err(domain("the 0-slice has no environment function to build"));
    }
    let mut q_u = Vec::new();
    for q in game.states() {
        if game.is_stopping(q) {
            continue;
        }
        let v = values
            .get(q)
            .ok_or_else(|| domain(format!("no declared value for state {q:?}")))?;
        if v == u {
            q_u.push(q.clone());
        }
    }
    if q_u.is_empty() {
        return Err(domain(format!("no state has value {u}; the slice is empty")));
    }
    let sliced = slice_set(game, values, &q_u)?;
    let top = q_u
        .iter()
        .map(|q| sliced.color(q))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .expect("nonempty slice");
    Ok(SliceContext {
        game: sliced,
        values: values.clone(),
        u: u.clone(),
        q_u,
        e: even_ceil_val(top),
        o: odd_ceil_val(top),
    })
}
