//! The layer games L^n_vcol: one layer of the slice kept concrete, the
//! other layers collapsed to checkpoint states owned by the disfavored
//! player.

use std::collections::BTreeMap;

use cspg_arena::{ParityGame, Valuation};
use cspg_core::error::{domain, Result};
use cspg_core::{GameForm, Player, Q};

use crate::coloring::VirtualColoring;
use crate::localop::{project, LayerTarget};
use crate::slice::SliceContext;

/// The n-layer game plus the naming needed to address it from outside.
#[derive(Debug, Clone)]
pub struct LayerGame {
    pub game: ParityGame,
    pub n: usize,
    /// Layer states, in slice order.
    pub layer_states: Vec<String>,
    /// Checkpoint state names, indexed by color in [0, e].
    pub k_names: Vec<String>,
    /// Who picks the re-entry state at checkpoints: A for odd n, B for even.
    pub chooser: Player,
}

fn stop_name(v: &Q) -> String {
    format!("stop_{}", v.to_string().replace('/', "_"))
}

/// Builds L^n_vcol. The layer must be nonempty (checkpoints need somewhere
/// to loop back to).
pub fn layer_game(ctx: &SliceContext, vcol: &VirtualColoring, n: usize) -> Result<LayerGame> {
    let layer_states: Vec<String> = ctx.q_u.iter().filter(|q| vcol[*q] == n).cloned().collect();
    if layer_states.is_empty() {
        return Err(domain(format!("layer {n} is empty")));
    }
    let k_names: Vec<String> = (0..=ctx.e).map(|i| format!("k{i}^{n}")).collect();
    let chooser = if n % 2 == 1 { Player::A } else { Player::B };

    let mut states: Vec<String> = layer_states.clone();
    states.extend(k_names.iter().cloned());
    let mut forms: BTreeMap<String, GameForm> = BTreeMap::new();
    let mut colors: BTreeMap<String, usize> = BTreeMap::new();
    let mut stopping: BTreeMap<String, Q> = BTreeMap::new();

    for q in &layer_states {
        let form = ctx.game.form(q)?;
        let mut image: BTreeMap<String, String> = BTreeMap::new();
        for dest in form.outcomes() {
            let name = match project(ctx, vcol, n, dest)? {
                LayerTarget::State(s) => s,
                LayerTarget::K(i) => k_names[i].clone(),
                LayerTarget::Value(v) => {
                    let s = stop_name(&v);
                    stopping.insert(s.clone(), v);
                    s
                }
            };
            image.insert(dest.clone(), name);
        }
        forms.insert(q.clone(), form.map_outcomes(|o| image[o].clone()));
        colors.insert(q.clone(), ctx.col(q)?);
    }
    for (i, k) in k_names.iter().enumerate() {
        let picks = layer_states.clone();
        let form = match chooser {
            Player::A => GameForm::deterministic(
                picks.clone(),
                vec!["loop".into()],
                picks.clone(),
                picks.iter().map(|q| vec![q.clone()]).collect(),
            )?,
            Player::B => GameForm::deterministic(
                vec!["loop".into()],
                picks.clone(),
                picks.clone(),
                vec![picks.clone()],
            )?,
        };
        forms.insert(k.clone(), form);
        colors.insert(k.clone(), if n == 0 { i } else { i.max(n - 1) });
    }
    for s in stopping.keys() {
        states.push(s.clone());
    }
    let game = ParityGame::new(states, forms, colors, stopping)?;
    Ok(LayerGame {
        game,
        n,
        layer_states,
        k_names,
        chooser,
    })
}

/// v^t_{n,vcol}: t on the layer and checkpoint states, face value on stops.
pub fn layer_valuation(lg: &LayerGame, t: &Q) -> Valuation {
    let mut v: Valuation = BTreeMap::new();
    for q in lg.game.states() {
        if let Some(x) = lg.game.stopping_value(q) {
            v.insert(q.clone(), x.clone());
        } else {
            v.insert(q.clone(), t.clone());
        }
    }
    v
}
