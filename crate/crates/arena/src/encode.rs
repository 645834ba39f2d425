//! Rewriting stopping states into absorbing parity sinks (a cross-check
//! transform; the main pipeline keeps stopping states first-class).

use std::collections::BTreeMap;

use cspg_core::error::Result;
use cspg_core::{Distribution, GameForm, Q};

use crate::game::ParityGame;

/// Replaces every stopping state of value u by a branch state that moves
/// with probability u to an absorbing even-colored sink and 1-u to an odd
/// one. Both sink colors exceed every original color, so the parity
/// semantics elsewhere are untouched.
pub fn encode_stopping_states(game: &ParityGame) -> Result<ParityGame> {
    if game.stopping().is_empty() {
        return Ok(game.clone());
    }
    let fresh = |base: &str| -> String {
        let mut name = base.to_string();
        while game.states().contains(&name) || game.is_stopping(&name) {
            name.push('_');
        }
        name
    };
    let win = fresh("win_sink");
    let lose = fresh("lose_sink");
    let top = game.max_color();
    let even_color = 2 * top.div_ceil(2) + 2;
    let odd_color = even_color - 1;

    let mut states = game.states().to_vec();
    let mut forms: BTreeMap<String, GameForm> = BTreeMap::new();
    let mut colors: BTreeMap<String, usize> = BTreeMap::new();
    for q in game.states() {
        forms.insert(q.clone(), game.form(q)?.clone());
        colors.insert(q.clone(), game.color(q)?);
    }
    let self_loop = |name: &str| -> Result<GameForm> {
        GameForm::deterministic(
            vec!["stay".into()],
            vec!["stay".into()],
            vec![name.into()],
            vec![vec![name.into()]],
        )
    };
    for (stop, u) in game.stopping() {
        let branch = Distribution::new([(win.clone(), u.clone()), (lose.clone(), Q::one() - u)])?;
        states.push(stop.clone());
        forms.insert(
            stop.clone(),
            GameForm::new(
                vec!["stay".into()],
                vec!["stay".into()],
                branch.support_set().into_iter().cloned().collect(),
                vec![vec![branch]],
            )?,
        );
        colors.insert(stop.clone(), odd_color);
    }
    for (sink, color) in [(&win, even_color), (&lose, odd_color)] {
        states.push(sink.clone());
        forms.insert(sink.clone(), self_loop(sink)?);
        colors.insert(sink.clone(), color);
    }
    ParityGame::new(states, forms, colors, BTreeMap::new())
}
