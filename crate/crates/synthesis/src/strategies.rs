//! Finite families of positional strategies generated by an environment
//! function: per state, the optimal-GF-strategy witnesses of the recorded
//! environment.

use std::collections::BTreeMap;

use cspg_core::error::Result;
use cspg_core::{MixedStrategy, Player};
use cspg_local::optimal_gf_strategy_family;

use crate::localop::EnvFunction;
use crate::slice::SliceContext;

/// Cap on the number of per-state combinations expanded into full
/// positional strategies.
pub const COMBINATION_CAP: usize = 64;

/// The per-state witness families. The universal quantifier over all
/// generated strategies is approximated by this finite set (polytope
/// vertices plus interior points); `empty_at` lists states with no optimal
/// strategy at all, which falsifies the synthesis hypothesis.
#[derive(Debug, Clone)]
pub struct GeneratedFamily {
    pub per_state: BTreeMap<String, Vec<MixedStrategy>>,
    pub empty_at: Vec<String>,
    /// True when combinations() had to drop part of the product.
    pub truncated: bool,
}

pub fn generated_strategies(
    ctx: &SliceContext,
    ev: &EnvFunction,
    states: &[String],
    player: Player,
) -> Result<GeneratedFamily> {
    let mut per_state = BTreeMap::new();
    let mut empty_at = Vec::new();
    for q in states {
        let entry = &ev[q];
        let family = optimal_gf_strategy_family(ctx.game.form(q)?, &entry.env, player)?;
        if family.is_empty() {
            empty_at.push(q.clone());
        }
        per_state.insert(q.clone(), family);
    }
    Ok(GeneratedFamily {
        per_state,
        empty_at,
        truncated: false,
    })
}

/// The canonical choice: the first witness per state (a vertex of the
/// one-shot optimal polytope). None if some state has no witness.
pub fn canonical_choice(family: &GeneratedFamily) -> Option<BTreeMap<String, MixedStrategy>> {
    let mut choice = BTreeMap::new();
    for (q, f) in &family.per_state {
        choice.insert(q.clone(), f.first()?.clone());
    }
    Some(choice)
}

/// All per-state combinations, capped; sets `truncated` on the returned
/// flag when the product is cut short.
pub fn combinations(family: &GeneratedFamily) -> (Vec<BTreeMap<String, MixedStrategy>>, bool) {
    if family.per_state.values().any(|f| f.is_empty()) {
        return (Vec::new(), false);
    }
    let keys: Vec<&String> = family.per_state.keys().collect();
    let mut out: Vec<BTreeMap<String, MixedStrategy>> = vec![BTreeMap::new()];
    let mut truncated = false;
    for q in keys {
        let options = &family.per_state[q];
        // When the product would blow past the cap, pin this state to its
        // first witness so every emitted combination stays total.
        let take = if out.len().saturating_mul(options.len()) > COMBINATION_CAP {
            truncated = true;
            1
        } else {
            options.len()
        };
        let mut next = Vec::with_capacity(out.len() * take);
        for base in &out {
            for opt in options.iter().take(take) {
                let mut c = base.clone();
                c.insert(q.clone(), opt.clone());
                next.push(c);
            }
        }
        out = next;
    }
    (out, truncated)
}
