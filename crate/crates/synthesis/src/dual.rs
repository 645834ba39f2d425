//! The dual game: players swapped, values mirrored, every color shifted up
//! by one so the winning parities trade places. Synthesizing for Player B
//! in a game is synthesizing for Player A in its dual.

use std::collections::BTreeMap;

use cspg_arena::{ParityGame, PositionalStrategy, Valuation};
use cspg_core::error::Result;
use cspg_core::{GameForm, MixedStrategy, Player, Q};

pub fn transpose_form(form: &GameForm) -> Result<GameForm> {
    let rows = form.actions_a().len();
    let cols = form.actions_b().len();
    let table = (0..cols)
        .map(|j| (0..rows).map(|i| form.cell(i, j).clone()).collect())
        .collect();
    GameForm::new(
        form.actions_b().to_vec(),
        form.actions_a().to_vec(),
        form.outcomes().to_vec(),
        table,
    )
}

pub fn dual_game(game: &ParityGame) -> Result<ParityGame> {
    let mut forms = BTreeMap::new();
    let mut colors = BTreeMap::new();
    let mut stopping = BTreeMap::new();
    for q in game.states() {
        forms.insert(q.clone(), transpose_form(game.form(q)?)?);
        colors.insert(q.clone(), game.color(q)? + 1);
    }
    for (q, v) in game.stopping() {
        stopping.insert(q.clone(), Q::one() - v);
    }
    ParityGame::new(game.states().to_vec(), forms, colors, stopping)
}

pub fn dual_valuation(values: &Valuation) -> Valuation {
    values.iter().map(|(q, v)| (q.clone(), Q::one() - v)).collect()
}

/// Maps an A-strategy of the dual game back to a B-strategy of the
/// original (action names survive the transposition unchanged).
pub fn undual_strategy(s: &PositionalStrategy) -> PositionalStrategy {
    PositionalStrategy {
        owner: Player::B,
        choice: s
            .choice
            .iter()
            .map(|(q, m)| {
                (
                    q.clone(),
                    MixedStrategy {
                        owner: Player::B,
                        weights: m.weights.clone(),
                    },
                )
            })
            .collect(),
    }
}
