//! End-to-end synthesis: validate the declared values, run the layered
//! pipeline on every positive slice (and on every slice of the dual game
//! for Player B), merge, and verify the merged strategies exactly.

use std::collections::{BTreeMap, BTreeSet};

use cspg_arena::{
    check_strategy, strategy_value, CheckKind, ParityGame, PositionalStrategy, Valuation,
    DEFAULT_OPPONENT_CAP,
};
use cspg_core::error::{domain, Result};
use cspg_core::matrix::solve_matrix_game;
use cspg_core::{apply_valuation, MixedStrategy, Player, Q};
use serde::Serialize;

use crate::dual::{dual_game, dual_valuation, undual_strategy};
use crate::pipeline::compute_env;
use crate::slice::slice;
use crate::strategies::{canonical_choice, generated_strategies};

#[derive(Debug, Clone, Serialize)]
pub struct SliceReport {
    pub u: Q,
    pub player: Player,
    pub states: Vec<String>,
    pub pipeline_steps: usize,
    /// The finite witness family stands in for the infinite set of
    /// generated strategies.
    pub family_sizes: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SynthesisReport {
    pub slices: Vec<SliceReport>,
    pub notes: Vec<String>,
}

/// A necessary exact condition on declared values: each must be the matrix
/// game value of its own one-step game. Full validation is completed by
/// the synthesized strategies themselves.
pub fn validate_values(game: &ParityGame, values: &Valuation) -> Result<()> {
    let mut with_stops = values.clone();
    for (s, v) in game.stopping() {
        with_stops.insert(s.clone(), v.clone());
    }
    for q in game.states() {
        let v = values
            .get(q)
            .ok_or_else(|| domain(format!("no declared value for state {q:?}")))?;
        if !v.in_unit() {
            return Err(domain(format!("declared value {v} of {q:?} outside [0,1]")));
        }
        if let Some(s) = game.stopping_value(q) {
            if s != v {
                return Err(domain(format!(
                    "declared value {v} of stopping state {q:?} differs from its face value {s}"
                )));
            }
            continue;
        }
        let nf = apply_valuation(game.form(q)?, &with_stops)?;
        let one_step = solve_matrix_game(&nf)?.value;
        if one_step != *v {
            return Err(domain(format!(
                "declared value {v} of {q:?} is not a one-step fixpoint (got {one_step})"
            )));
        }
    }
    Ok(())
}

/// Runs the Player-A pipeline on one slice of `game` and returns the
/// per-state choices along with the slice report.
fn solve_slice(
    game: &ParityGame,
    values: &Valuation,
    u: &Q,
    label_player: Player,
) -> Result<(BTreeMap<String, MixedStrategy>, SliceReport)> {
    let ctx = slice(game, values, u)?;
    let (vcol, ev, trace) = compute_env(&ctx)?;
    debug_assert!(vcol.values().all(|&c| c == ctx.e));
    let family = generated_strategies(&ctx, &ev, &ctx.q_u, Player::A)?;
    if !family.empty_at.is_empty() {
        return Err(domain(format!(
            "no optimal strategy exists at {:?} in the {u}-slice; the synthesis hypothesis fails",
            family.empty_at
        )));
    }
    let choice = canonical_choice(&family).expect("no empty family here");
    let s = PositionalStrategy {
        owner: Player::A,
        choice: choice.clone(),
    };
    let out = check_strategy(&ctx.game, &s, values, CheckKind::ParityDominates, DEFAULT_OPPONENT_CAP)?;
    if !out.holds() {
        return Err(domain(format!(
            "the generated strategy does not parity dominate the values on the {u}-slice: {out:?}"
        )));
    }
    let report = SliceReport {
        u: u.clone(),
        player: label_player,
        states: ctx.q_u.clone(),
        pipeline_steps: trace.len(),
        family_sizes: family
            .per_state
            .iter()
            .map(|(q, f)| (q.clone(), f.len()))
            .collect(),
    };
    Ok((choice, report))
}

fn uniform_choices(game: &ParityGame, states: &[String], player: Player) -> Result<BTreeMap<String, MixedStrategy>> {
    let mut out = BTreeMap::new();
    for q in states {
        let form = game.form(q)?;
        out.insert(q.clone(), MixedStrategy::uniform(player, form.actions(player)));
    }
    Ok(out)
}

pub fn synthesize(
    game: &ParityGame,
    values: &Valuation,
) -> Result<(PositionalStrategy, PositionalStrategy, SynthesisReport)> {
    validate_values(game, values)?;
    let mut slice_values: Vec<Q> = Vec::new();
    let mut seen = BTreeSet::new();
    for q in game.states() {
        if !game.is_stopping(q) && seen.insert(values[q].clone()) {
            slice_values.push(values[q].clone());
        }
    }
    let dual = dual_game(game)?;
    let dvalues = dual_valuation(values);

    let mut report = SynthesisReport {
        slices: Vec::new(),
        notes: vec![
            "generated-strategy checks quantify over the finite witness family, not the full polytopes"
                .to_string(),
        ],
    };
    let mut choice_a: BTreeMap<String, MixedStrategy> = BTreeMap::new();
    let mut choice_b: BTreeMap<String, MixedStrategy> = BTreeMap::new();

    for u in &slice_values {
        let states: Vec<String> = game
            .states()
            .iter()
            .filter(|q| !game.is_stopping(q) && values[*q] == *u)
            .cloned()
            .collect();
        // Player A on the slice, through the pipeline unless the slice is
        // worth nothing to her.
        if u.is_zero() {
            choice_a.append(&mut uniform_choices(game, &states, Player::A)?);
            report.notes.push("0-slice: Player A plays uniformly".to_string());
        } else {
            let (choice, rep) = solve_slice(game, values, u, Player::A)?;
            choice_a.extend(choice);
            report.slices.push(rep);
        }
        // Player B through the dual game, whose slice value is 1 - u.
        let du = Q::one() - u;
        if du.is_zero() {
            choice_b.append(&mut uniform_choices(game, &states, Player::B)?);
            report.notes.push("1-slice: Player B plays uniformly".to_string());
        } else {
            let (choice, rep) = solve_slice(&dual, &dvalues, &du, Player::B)?;
            let s = undual_strategy(&PositionalStrategy {
                owner: Player::A,
                choice,
            });
            choice_b.extend(s.choice);
            report.slices.push(rep);
        }
    }

    let sa = PositionalStrategy {
        owner: Player::A,
        choice: choice_a,
    };
    let sb = PositionalStrategy {
        owner: Player::B,
        choice: choice_b,
    };

    for (s, who) in [(&sa, "A"), (&sb, "B")] {
        let achieved = strategy_value(game, s, DEFAULT_OPPONENT_CAP)?;
        for q in game.states() {
            if achieved[q] != values[q] {
                return Err(domain(format!(
                    "verification failed: Player {who}'s strategy achieves {} at {q:?}, declared {}",
                    achieved[q], values[q]
                )));
            }
        }
    }
    Ok((sa, sb, report))
}
