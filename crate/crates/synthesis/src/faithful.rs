//! Checking that a (vcol, Ev) pair is faithful down to a level: each layer
//! witnessed by its environments, coherence of the recorded snapshots, and
//! the no-pending-promotion condition below the level.

use std::collections::BTreeMap;

use cspg_arena::{check_strategy, CheckKind, PositionalStrategy, DEFAULT_OPPONENT_CAP};
use cspg_core::error::Result;
use cspg_core::{MixedStrategy, Player, Q};
use cspg_local::simple_game_value;

use crate::coloring::{prevailing, VirtualColoring};
use crate::layer::{layer_game, layer_valuation};
use crate::localop::{create_env, new_col, EnvFunction};
use crate::slice::SliceContext;
use crate::strategies::{combinations, generated_strategies, GeneratedFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaithfulMode {
    /// Only the witnessing condition per color.
    WitnessOnly,
    /// Witnessing plus coherence and the below-level condition.
    Full,
}

#[derive(Debug, Clone)]
pub struct FaithfulReport {
    pub ok: bool,
    pub violations: Vec<String>,
    /// True when some witness family had to be truncated.
    pub approximate: bool,
}

fn layer_strategy(
    lg: &crate::layer::LayerGame,
    choice: &BTreeMap<String, MixedStrategy>,
    player: Player,
) -> Result<PositionalStrategy> {
    // At checkpoint states the checked player has the single "loop" action;
    // the re-entry choice belongs to the opponent.
    let mut full = choice.clone();
    for k in &lg.k_names {
        let form = lg.game.form(k)?;
        full.insert(k.clone(), MixedStrategy::uniform(player, form.actions(player)));
    }
    Ok(PositionalStrategy {
        owner: player,
        choice: full,
    })
}

/// The witnessing condition for one color; `family` must cover the layer's
/// states.
fn witnesses_color(
    ctx: &SliceContext,
    vcol: &VirtualColoring,
    ev: &EnvFunction,
    k: usize,
    family: &GeneratedFamily,
    violations: &mut Vec<String>,
) -> Result<bool> {
    let layer: Vec<String> = ctx.q_u.iter().filter(|q| vcol[*q] == k).cloned().collect();
    if layer.is_empty() {
        return Ok(false);
    }
    let even = k % 2 == 0;
    let player = if even { Player::A } else { Player::B };
    for q in &layer {
        let env = &ev[q].env;
        let (size, bound) = if even {
            (env.size_a(), ctx.e - ctx.col(q)?)
        } else {
            (env.size_b(), ctx.o - ctx.col(q)?)
        };
        if size > bound {
            violations.push(format!(
                "environment at {q:?} has size {size} > {bound} for color {k}"
            ));
        }
    }
    if !family.empty_at.is_empty() {
        violations.push(format!(
            "no generated strategy at {:?} for color {k}",
            family.empty_at
        ));
        return Ok(true);
    }
    let lg = layer_game(ctx, vcol, k)?;
    let t = if even {
        ctx.u.clone()
    } else {
        // The paper's u' < u: the best value Player B concedes across the
        // layer's own environments.
        let mut best: Option<Q> = None;
        for q in &layer {
            let sol = simple_game_value(ctx.game.form(q)?, &ev[q].env)?;
            let y = sol.value;
            if best.as_ref().map_or(true, |b| y > *b) {
                best = Some(y);
            }
        }
        let y = best.expect("nonempty layer");
        if y >= ctx.u {
            violations.push(format!(
                "odd color {k}: conceded value {y} is not below {}",
                ctx.u
            ));
            return Ok(true);
        }
        y
    };
    let v = layer_valuation(&lg, &t);
    let (combos, _) = combinations(family);
    for combo in &combos {
        let s = layer_strategy(&lg, combo, player)?;
        let out = check_strategy(&lg.game, &s, &v, CheckKind::ParityDominates, DEFAULT_OPPONENT_CAP)?;
        if !out.holds() {
            violations.push(format!(
                "color {k}: a generated strategy fails parity domination: {out:?}"
            ));
            return Ok(true);
        }
    }
    Ok(true)
}

pub fn check_faithful(
    ctx: &SliceContext,
    vcol: &VirtualColoring,
    ev: &EnvFunction,
    n: usize,
    mode: FaithfulMode,
) -> Result<FaithfulReport> {
    let mut violations = Vec::new();
    let mut approximate = false;
    for k in n..=ctx.e {
        let layer: Vec<String> = ctx.q_u.iter().filter(|q| vcol[*q] == k).cloned().collect();
        if layer.is_empty() {
            continue;
        }
        let player = if k % 2 == 0 { Player::A } else { Player::B };
        let family = generated_strategies(ctx, ev, &layer, player)?;
        let (_, truncated) = combinations(&family);
        approximate |= truncated;
        witnesses_color(ctx, vcol, ev, k, &family, &mut violations)?;
        if mode == FaithfulMode::Full {
            for q in &layer {
                let entry = &ev[q];
                let nq = entry.n_q;
                if ctx.col(q)? > k || entry.vcol_q[q] > k || nq > k {
                    violations.push(format!("coherence at {q:?}: colors exceed {k}"));
                }
                if nq % 2 != k % 2 {
                    violations.push(format!("coherence at {q:?}: parity of {nq} differs from {k}"));
                }
                if !prevailing(vcol, &entry.vcol_q, k) {
                    violations.push(format!("coherence at {q:?}: vcol is not {k}-prevailing"));
                }
                if new_col(ctx, &entry.vcol_q, q)? != nq {
                    violations.push(format!("coherence at {q:?}: recorded color {nq} is stale"));
                }
                if create_env(ctx, nq, q, &entry.vcol_q)? != entry.env {
                    violations.push(format!("coherence at {q:?}: environment mismatch"));
                }
            }
        }
    }
    if mode == FaithfulMode::Full {
        for q in &ctx.q_u {
            if vcol[q] < n {
                if ctx.col(q)? != vcol[q] {
                    violations.push(format!("below level: {q:?} has a virtual color"));
                }
                if new_col(ctx, vcol, q)? >= n {
                    violations.push(format!("below level: {q:?} still promotes to {n} or above"));
                }
            }
        }
    }
    Ok(FaithfulReport {
        ok: violations.is_empty(),
        violations,
        approximate,
    })
}
