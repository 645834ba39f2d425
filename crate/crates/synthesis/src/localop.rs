//! The projections of the global game into one layer or one state, the
//! local environments they induce, and the NewCol operator.

use std::collections::BTreeMap;

use cspg_core::error::{domain, internal, Result};
use cspg_core::Q;
use cspg_local::{max_par, simple_game_value, Environment, Target};

use crate::coloring::VirtualColoring;
use crate::slice::SliceContext;

/// Where a global state lands in the n-layer projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LayerTarget {
    /// A state of the current layer, kept as-is.
    State(String),
    /// A slice state of another layer, collapsed to its checkpoint color.
    K(usize),
    /// A state outside the slice, collapsed to its value.
    Value(Q),
}

/// p_{n,vcol}: layer states stay, other slice states become checkpoints,
/// everything else becomes its value.
pub fn project(ctx: &SliceContext, vcol: &VirtualColoring, n: usize, q: &str) -> Result<LayerTarget> {
    match vcol.get(q) {
        Some(&c) if c == n => Ok(LayerTarget::State(q.to_string())),
        Some(&c) => Ok(LayerTarget::K(c)),
        None => {
            let v = ctx
                .values
                .get(q)
                .or_else(|| ctx.game.stopping_value(q))
                .ok_or_else(|| domain(format!("no value for state {q:?}")))?;
            Ok(LayerTarget::Value(v.clone()))
        }
    }
}

/// p_{q,vcol}: the state itself loops to the initial state, other slice
/// states become checkpoints, everything else becomes its value.
pub fn project_local(ctx: &SliceContext, vcol: &VirtualColoring, q: &str, dest: &str) -> Result<Target> {
    if dest == q {
        return Ok(Target::QInit);
    }
    match vcol.get(dest) {
        Some(&c) => Ok(Target::K(c)),
        None => {
            let v = ctx
                .values
                .get(dest)
                .or_else(|| ctx.game.stopping_value(dest))
                .ok_or_else(|| domain(format!("no value for state {dest:?}")))?;
            Ok(Target::Value(v.clone()))
        }
    }
}

/// The shifted-objective start color: c_n = n+1 for odd n, n-1 for even n
/// (with c_0 treated as below every real color).
fn shift_color(n: usize) -> usize {
    if n % 2 == 1 {
        n + 1
    } else {
        n.saturating_sub(1)
    }
}

/// E^n_{q,vcol} = <max(c_n, vcol(q)), e, p_{q,vcol}>.
pub fn local_env(ctx: &SliceContext, vcol: &VirtualColoring, q: &str, n: usize) -> Result<Environment> {
    let c0 = if n == 0 { 0 } else { shift_color(n) };
    let c = c0.max(vcol[q]);
    let mut p: BTreeMap<String, Target> = BTreeMap::new();
    for dest in ctx.game.form(q)?.outcomes() {
        p.insert(dest.clone(), project_local(ctx, vcol, q, dest)?);
    }
    Environment::new(c, ctx.e, p)
}

/// NewCol(q, vcol): the parity-order maximum n whose local game is still
/// worth at least u to Player A. The local games for different n share
/// their structure and differ only in the start color, so values are
/// computed once per distinct start color.
pub fn new_col(ctx: &SliceContext, vcol: &VirtualColoring, q: &str) -> Result<usize> {
    let form = ctx.game.form(q)?;
    let mut by_color: BTreeMap<usize, bool> = BTreeMap::new();
    let mut good = Vec::new();
    for n in 0..=ctx.e {
        let env = local_env(ctx, vcol, q, n)?;
        let qualifies = match by_color.get(&env.c) {
            Some(&b) => b,
            None => {
                let sol = simple_game_value(form, &env)?;
                if !sol.certified {
                    return Err(domain(format!(
                        "uncertified local value at state {q:?} for layer {n} (bounds {} and {})",
                        sol.lower, sol.upper
                    )));
                }
                let b = sol.value >= ctx.u;
                by_color.insert(env.c, b);
                b
            }
        };
        if qualifies {
            good.push(n);
        }
    }
    max_par(good.iter().copied())
        .ok_or_else(|| internal(format!("no layer qualifies at state {q:?}; values are inconsistent")))
}

/// CreateEnv: the environment recorded for a state landing at color k —
/// the k-environment itself when k is even, the one of the largest even
/// layer strictly below when k is odd.
pub fn create_env(ctx: &SliceContext, k: usize, q: &str, vcol: &VirtualColoring) -> Result<Environment> {
    let m = if k % 2 == 0 { k } else { k.saturating_sub(2) };
    local_env(ctx, vcol, q, m)
}

/// One recorded environment, with the coloring it was created under and
/// the color it was created for.
#[derive(Debug, Clone)]
pub struct EnvEntry {
    pub env: Environment,
    pub vcol_q: VirtualColoring,
    pub n_q: usize,
}

/// The (partial) environment function over the slice.
pub type EnvFunction = BTreeMap<String, EnvEntry>;
