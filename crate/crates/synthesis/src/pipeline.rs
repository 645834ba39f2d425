//! The fixpoint pipeline: per-color environment updates, least-layer
//! promotion, and the outer loop driving the coloring to the top color.

use std::cmp::Ordering;

use cspg_core::error::{internal, Result};
use serde::Serialize;

use crate::coloring::{lex_compare, VirtualColoring};
use crate::localop::{create_env, new_col, EnvEntry, EnvFunction};
use crate::slice::SliceContext;

/// One step of the pipeline, for the serialized trace.
#[derive(Debug, Clone, Serialize)]
pub struct TraceStep {
    pub op: String,
    pub color: usize,
    pub state: Option<String>,
    pub detail: String,
}

fn step(trace: &mut Vec<TraceStep>, op: &str, color: usize, state: Option<&str>, detail: String) {
    trace.push(TraceStep {
        op: op.to_string(),
        color,
        state: state.map(str::to_string),
        detail,
    });
}

/// Records the k-environment for every state currently colored k.
pub fn upd_cur_sta(
    ctx: &SliceContext,
    k: usize,
    vcol: &VirtualColoring,
    ev: &mut EnvFunction,
    trace: &mut Vec<TraceStep>,
) -> Result<()> {
    for q in &ctx.q_u {
        if vcol[q] == k {
            let env = create_env(ctx, k, q, vcol)?;
            ev.insert(
                q.clone(),
                EnvEntry {
                    env,
                    vcol_q: vcol.clone(),
                    n_q: k,
                },
            );
            step(trace, "UpdCurSta", k, Some(q), "environment recorded".into());
        }
    }
    Ok(())
}

/// Promotes to color k every state whose local operator now lands there,
/// one at a time in input order, restarting the scan after each change.
/// Each promoted state's environment is built from the coloring as it was
/// before its own promotion.
pub fn upd_new_sta(
    ctx: &SliceContext,
    k: usize,
    vcol: &mut VirtualColoring,
    ev: &mut EnvFunction,
    trace: &mut Vec<TraceStep>,
) -> Result<()> {
    let mut change = true;
    while change {
        change = false;
        for q in &ctx.q_u {
            if vcol[q] == k {
                continue;
            }
            if new_col(ctx, vcol, q)? == k {
                let env = create_env(ctx, k, q, vcol)?;
                ev.insert(
                    q.clone(),
                    EnvEntry {
                        env,
                        vcol_q: vcol.clone(),
                        n_q: k,
                    },
                );
                let old = vcol.insert(q.clone(), k).expect("state in slice");
                step(trace, "UpdNewSta", k, Some(q), format!("promoted from {old}"));
                change = true;
                break;
            }
        }
    }
    Ok(())
}

pub fn update_col_env(
    ctx: &SliceContext,
    k: usize,
    vcol: &mut VirtualColoring,
    ev: &mut EnvFunction,
    trace: &mut Vec<TraceStep>,
) -> Result<()> {
    upd_cur_sta(ctx, k, vcol, ev, trace)?;
    upd_new_sta(ctx, k, vcol, ev, trace)
}

/// Moves the least-colored layer up by two, resets the layer in between to
/// its real colors, and re-runs the promotion scan at the new color.
pub fn inc_least(
    ctx: &SliceContext,
    vcol: &mut VirtualColoring,
    ev: &mut EnvFunction,
    trace: &mut Vec<TraceStep>,
) -> Result<()> {
    let cmin = *vcol.values().min().expect("nonempty slice");
    if cmin + 2 > ctx.e {
        return Err(internal(format!(
            "least color {cmin} cannot be raised within [0, {}]; the invariant min != e-1 is broken",
            ctx.e
        )));
    }
    for q in &ctx.q_u {
        if vcol[q] == cmin {
            vcol.insert(q.clone(), cmin + 2);
            step(trace, "IncLeast", cmin + 2, Some(q), format!("raised from {cmin}"));
        } else if vcol[q] == cmin + 1 {
            let real = ctx.col(q)?;
            vcol.insert(q.clone(), real);
            ev.remove(q);
            step(trace, "IncLeast", cmin + 1, Some(q), format!("reset to real color {real}"));
        }
    }
    upd_new_sta(ctx, cmin + 2, vcol, ev, trace)
}

/// The full fixpoint: a top-down sweep, then alternating least-layer
/// promotions and re-sweeps until every state sits at the top color.
/// Termination is enforced by the lexicographic metric on layer
/// populations, which must strictly increase at every promotion.
pub fn compute_env(ctx: &SliceContext) -> Result<(VirtualColoring, EnvFunction, Vec<TraceStep>)> {
    let mut vcol: VirtualColoring = ctx
        .q_u
        .iter()
        .map(|q| Ok((q.clone(), ctx.col(q)?)))
        .collect::<Result<_>>()?;
    let mut ev: EnvFunction = EnvFunction::new();
    let mut trace = Vec::new();

    for k in (0..=ctx.e).rev() {
        update_col_env(ctx, k, &mut vcol, &mut ev, &mut trace)?;
    }
    while vcol.values().any(|&c| c != ctx.e) {
        let before = vcol.clone();
        inc_least(ctx, &mut vcol, &mut ev, &mut trace)?;
        if lex_compare(&vcol, &before, ctx.e) != Ordering::Greater {
            return Err(internal(
                "the coloring did not strictly increase after raising the least layer",
            ));
        }
        for k in (0..=ctx.e).rev() {
            update_col_env(ctx, k, &mut vcol, &mut ev, &mut trace)?;
        }
    }
    Ok((vcol, ev, trace))
}
