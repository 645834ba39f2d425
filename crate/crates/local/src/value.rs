//! Exact values of simple parity games by two-sided support analysis.
//!
//! The maximizer's achievable values are sups over families of mixed
//! strategies that put ever-smaller weight on "backup" actions. Such a
//! family is captured by a chain of growing supports: the main support plays
//! at scale 1, each later layer at a vanishing scale. A column's payoff
//! against the family is decided by the first layer that can exit through
//! it, so the chain's guarantee splits into one exact fractional program per
//! layer. We maximize over chains by dynamic programming on the cumulative
//! support, and solve each layer by a Dinkelbach iteration whose exit test
//! is exact. The minimizer's side is the mirror image; the value is
//! certified when the two sides meet.

use std::collections::BTreeMap;

use cspg_core::error::{capacity, internal, Result};
use cspg_core::simplex::max_min_margin;
use cspg_core::{q, Distribution, GameForm, MixedStrategy, Player, Q};

use crate::env::{Environment, Target};

const ACTION_CAP: usize = 12;
const DINKELBACH_CAP: usize = 8;

/// Sentinel for "no exit constraint at all"; every real ratio is <= 1.
fn unbounded() -> Q {
    q(2, 1)
}

#[derive(Debug, Clone)]
pub struct SimpleGameValue {
    /// The certified value when `certified`, otherwise the lower bound.
    pub value: Q,
    pub lower: Q,
    pub upper: Q,
    pub certified: bool,
    pub a_witness: Option<MixedStrategy>,
    pub b_witness: Option<MixedStrategy>,
}

/// One player's view of the form inside the environment: `own` actions
/// against `opp` replies, with per-pair exit probability, expected exit
/// value, and the set of checkpoint colors hit.
struct Side {
    owner: Player,
    own: Vec<String>,
    n_opp: usize,
    /// pexit[own][opp]
    pexit: Vec<Vec<Q>>,
    /// expected stopping value mass, entrywise <= pexit
    ev: Vec<Vec<Q>>,
    /// bitmask over checkpoint indices
    kmask: Vec<Vec<u64>>,
    c: usize,
}

impl Side {
    fn build(form: &GameForm, env: &Environment, owner: Player) -> Result<Side> {
        if env.e > 62 {
            return Err(capacity(format!("environment index e = {} too large", env.e)));
        }
        let rows = form.actions_a().len();
        let cols = form.actions_b().len();
        let mut pexit = vec![vec![Q::zero(); cols]; rows];
        let mut ev = vec![vec![Q::zero(); cols]; rows];
        let mut kmask = vec![vec![0u64; cols]; rows];
        for i in 0..rows {
            for j in 0..cols {
                for (o, p) in form.cell(i, j).support() {
                    match env.target(o)? {
                        Target::QInit => {}
                        Target::K(k) => kmask[i][j] |= 1 << k,
                        Target::Value(v) => {
                            pexit[i][j] += p;
                            ev[i][j] += p * v;
                        }
                    }
                }
            }
        }
        let side = match owner {
            Player::A => Side {
                owner,
                own: form.actions_a().to_vec(),
                n_opp: cols,
                pexit,
                ev,
                kmask,
                c: env.c,
            },
            Player::B => Side {
                owner,
                own: form.actions_b().to_vec(),
                n_opp: rows,
                pexit: transpose(&pexit),
                ev: transpose(&ev),
                kmask: (0..cols)
                    .map(|j| (0..rows).map(|i| kmask[i][j]).collect())
                    .collect(),
                c: env.c,
            },
        };
        if side.own.len() > ACTION_CAP || side.n_opp > ACTION_CAP {
            return Err(capacity(format!(
                "action sets exceed the {ACTION_CAP}-action support-enumeration cap"
            )));
        }
        Ok(side)
    }

    /// Does the loop through `opp` under the support `own_mask` spin on a
    /// top color this side likes?
    fn loop_is_good(&self, own_mask: usize, opp: usize) -> bool {
        let mut mask = 1u64 << self.c;
        for a in bits(own_mask) {
            mask |= self.kmask[a][opp];
        }
        let top = (63 - mask.leading_zeros()) as usize;
        self.owner.likes_color(top)
    }

    fn exit_prob(&self, sigma: &[Q], opp: usize) -> Q {
        (0..self.own.len()).fold(Q::zero(), |acc, a| acc + &sigma[a] * &self.pexit[a][opp])
    }

    fn exit_value(&self, sigma: &[Q], opp: usize) -> Q {
        (0..self.own.len()).fold(Q::zero(), |acc, a| acc + &sigma[a] * &self.ev[a][opp])
    }

    /// The payoff (to Player A) of an everlasting loop that is good or bad
    /// for this side's owner.
    fn loop_payoff(&self, good: bool) -> Q {
        match (self.owner, good) {
            (Player::A, true) | (Player::B, false) => Q::one(),
            _ => Q::zero(),
        }
    }
}

fn transpose(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let rows = m.len();
    let cols = m[0].len();
    (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect()
}

fn bits(mask: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Exact guarantee of a single mixed strategy for the maximizing side:
/// the worst opponent reply, each reply paying its exit ratio or its loop
/// parity. This is the function whose sup the chain DP computes.
fn own_guarantee(side: &Side, sigma: &[Q]) -> Q {
    let supp: usize = (0..side.own.len()).filter(|&a| sigma[a].is_positive()).fold(0, |m, a| m | 1 << a);
    let mut worst: Option<Q> = None;
    for j in 0..side.n_opp {
        let p = side.exit_prob(sigma, j);
        let pay = if p.is_positive() {
            side.exit_value(sigma, j) / p
        } else {
            side.loop_payoff(side.loop_is_good(supp, j))
        };
        let better = match (&worst, side.owner) {
            (None, _) => true,
            (Some(w), Player::A) => pay < *w,
            (Some(w), Player::B) => pay > *w,
        };
        if better {
            worst = Some(pay);
        }
    }
    worst.expect("forms have at least one opponent action")
}

/// The exact optimum of one chain layer: the maximizer mixes on the actions
/// in `d_mask` and must give positive exit mass to every reply in `cols`;
/// the objective is the worst exit ratio (best for A, i.e. max min; min max
/// for B). Returns (optimum, witness over all own actions, exact?).
fn layer_optimum(side: &Side, d_mask: usize, cols: &[usize]) -> Result<(Q, Vec<Q>, bool)> {
    let d: Vec<usize> = bits(d_mask);
    // A lone column is a plain linear-fractional program over the simplex;
    // its optimum sits at a vertex with positive exit mass. A lone action
    // needs no optimization at all.
    if cols.len() == 1 {
        let j = cols[0];
        let mut best: Option<(Q, usize)> = None;
        for &a in &d {
            if !side.pexit[a][j].is_positive() {
                continue;
            }
            let r = &side.ev[a][j] / &side.pexit[a][j];
            let better = match (&best, side.owner) {
                (None, _) => true,
                (Some((b, _)), Player::A) => r > *b,
                (Some((b, _)), Player::B) => r < *b,
            };
            if better {
                best = Some((r, a));
            }
        }
        let (t, a) = best.ok_or_else(|| internal("layer column without exit mass"))?;
        return Ok((t, expand(side.own.len(), &[a], &[Q::one()]), true));
    }
    if d.len() == 1 {
        let full = expand(side.own.len(), &d, &[Q::one()]);
        let mut worst: Option<Q> = None;
        for &j in cols {
            let r = side.exit_value(&full, j) / side.exit_prob(&full, j);
            let better = match (&worst, side.owner) {
                (None, _) => true,
                (Some(w), Player::A) => r < *w,
                (Some(w), Player::B) => r > *w,
            };
            if better {
                worst = Some(r);
            }
        }
        return Ok((worst.expect("layer with no columns"), full, true));
    }
    let uniform = Q::one() / Q::from_int(d.len() as i64);
    let mut sigma: Vec<Q> = vec![uniform; d.len()];
    let ratio_bound = |sigma: &[Q]| -> Q {
        let full = expand(side.own.len(), &d, sigma);
        let mut best: Option<Q> = None;
        for &j in cols {
            let r = side.exit_value(&full, j) / side.exit_prob(&full, j);
            let better = match (&best, side.owner) {
                (None, _) => true,
                (Some(b), Player::A) => r < *b,
                (Some(b), Player::B) => r > *b,
            };
            if better {
                best = Some(r);
            }
        }
        best.expect("layer with no columns")
    };
    let mut t = ratio_bound(&sigma);
    for _ in 0..DINKELBACH_CAP {
        // Margin LP: can the worst slack of (ev - t*pexit) (sign-flipped for
        // the minimizer) be made positive on the d-simplex?
        let rows: Vec<Vec<Q>> = cols
            .iter()
            .map(|&j| {
                d.iter()
                    .map(|&a| match side.owner {
                        Player::A => &side.ev[a][j] - &t * &side.pexit[a][j],
                        Player::B => &t * &side.pexit[a][j] - &side.ev[a][j],
                    })
                    .collect()
            })
            .collect();
        let zeros = vec![Q::zero(); cols.len()];
        let (margin, x) = max_min_margin(&rows, &zeros)?;
        if margin.is_negative() {
            return Err(internal("layer iteration lost feasibility"));
        }
        if !margin.is_positive() {
            // No strictly better target exists: t is exactly optimal.
            return Ok((t, expand(side.own.len(), &d, &sigma), true));
        }
        // A strictly positive margin forces the witness to touch every
        // column (exit values are dominated by exit probabilities), and its
        // worst ratio strictly improves on t.
        sigma = x;
        t = ratio_bound(&sigma);
    }
    Ok((t, expand(side.own.len(), &d, &sigma), false))
}

fn expand(n: usize, d: &[usize], sigma: &[Q]) -> Vec<Q> {
    let mut full = vec![Q::zero(); n];
    for (idx, &a) in d.iter().enumerate() {
        full[a] = sigma[idx].clone();
    }
    full
}

/// One side's optimal value: sup over support chains via subset DP.
///
/// Every quantity is carried as an interval (achieved, optimistic): the
/// achieved endpoint comes from feasible strategies and is always sound,
/// the optimistic endpoint from pure-strategy caps on layers whose
/// iteration was cut short. The result is exact when the two endpoints
/// meet at the final selection; layers whose slack never matters cannot
/// spoil exactness.
fn side_value(side: &Side) -> Result<(Q, Option<Vec<Q>>, bool)> {
    let m = side.own.len();
    let full = 1usize << m;
    // Which own actions can exit through each opponent reply.
    let touch: Vec<usize> = (0..side.n_opp)
        .map(|j| (0..m).filter(|&a| side.pexit[a][j].is_positive()).fold(0, |acc, a| acc | 1 << a))
        .collect();
    let maximizing = side.owner == Player::A;
    // Neutral chain value: "no exit constraint yet".
    let base = if maximizing { unbounded() } else { Q::zero() };
    let mut f: Vec<(Q, Q)> = vec![(base.clone(), base.clone()); full];
    let mut cache: BTreeMap<(usize, u64), (Q, Q, Vec<Q>)> = BTreeMap::new();
    let mut single_witness: Vec<Option<Vec<Q>>> = vec![None; full];

    // Pure exit ratios, the raw material for cheap layer bounds.
    let ratio: Vec<Vec<Option<Q>>> = (0..m)
        .map(|a| {
            (0..side.n_opp)
                .map(|j| {
                    if side.pexit[a][j].is_positive() {
                        Some(&side.ev[a][j] / &side.pexit[a][j])
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();

    // Clamping into [0,1] is sound: payoffs live in [0,1] and clamping
    // commutes with the min/max recurrence.
    let clamp_hi = |v: Q| if maximizing { v.min(Q::one()) } else { v.max(Q::zero()) };
    let prefers = |x: &Q, y: &Q| if maximizing { x > y } else { x < y };

    for t_mask in 1..full {
        let mut best_ach: Option<Q> = None;
        let mut best_opt: Option<Q> = None;
        // Enumerate the last layer D of a chain with cumulative support
        // t_mask; U is what the earlier layers covered. The first split
        // (U empty) is always solved; later splits are skipped when even
        // their optimistic chain cannot beat the best achieved one.
        let mut d_mask = t_mask;
        loop {
            let u_mask = t_mask & !d_mask;
            let mut skip = false;
            if u_mask != 0 {
                if let Some(b) = &best_ach {
                    skip = !prefers(&f[u_mask].1, b);
                }
            }
            let mut layer: Option<(Q, Q)> = None;
            if !skip {
                let cols: Vec<usize> = (0..side.n_opp)
                    .filter(|&j| touch[j] & u_mask == 0 && touch[j] & d_mask != 0)
                    .collect();
                if cols.is_empty() {
                    layer = Some((base.clone(), base.clone()));
                } else {
                    let key = (d_mask, cols.iter().fold(0u64, |acc, &j| acc | 1 << j));
                    let cached = cache.get(&key).cloned();
                    let (ach, opt, w) = match cached {
                        Some(v) => v,
                        None => {
                            let d = bits(d_mask);
                            // Opponent cap: per column no mixture beats the
                            // best pure ratio, so the worst column bounds
                            // the layer from the opponent's side.
                            let mut cap: Option<Q> = None;
                            for &j in &cols {
                                let mut colbest: Option<&Q> = None;
                                for &a in &d {
                                    if let Some(r) = &ratio[a][j] {
                                        if colbest.map_or(true, |b| prefers(r, b)) {
                                            colbest = Some(r);
                                        }
                                    }
                                }
                                let cb = colbest.expect("column untouched by layer support");
                                if cap.as_ref().map_or(true, |c| prefers(c, cb)) {
                                    cap = Some(cb.clone());
                                }
                            }
                            let cap = cap.expect("layer with no columns");
                            if u_mask != 0 {
                                if let Some(b) = &best_ach {
                                    let reach = if prefers(&f[u_mask].1, &cap) {
                                        cap.clone()
                                    } else {
                                        f[u_mask].1.clone()
                                    };
                                    if !prefers(&reach, b) {
                                        skip = true;
                                    }
                                }
                            }
                            if skip {
                                (Q::zero(), Q::zero(), Vec::new())
                            } else {
                                // A single action meeting the cap settles
                                // the layer without any iteration.
                                let mut attain: Option<(Q, usize)> = None;
                                for &a in &d {
                                    if cols.iter().any(|&j| ratio[a][j].is_none()) {
                                        continue;
                                    }
                                    let worst = cols
                                        .iter()
                                        .map(|&j| ratio[a][j].clone().expect("checked above"))
                                        .reduce(|x, y| if prefers(&x, &y) { y } else { x })
                                        .expect("nonempty cols");
                                    if attain.as_ref().map_or(true, |(b, _)| prefers(&worst, b)) {
                                        attain = Some((worst, a));
                                    }
                                }
                                let entry = match attain {
                                    Some((t0, a)) if t0 == cap => {
                                        (t0.clone(), t0, expand(m, &[a], &[Q::one()]))
                                    }
                                    _ => {
                                        let (t, w, ok) = layer_optimum(side, d_mask, &cols)?;
                                        let opt = if ok { t.clone() } else { cap };
                                        (t, opt, w)
                                    }
                                };
                                cache.insert(key, entry.clone());
                                entry
                            }
                        }
                    };
                    if !skip {
                        if u_mask == 0 {
                            single_witness[t_mask] = Some(w);
                        }
                        layer = Some((ach, opt));
                    }
                }
            }
            if let Some((l_ach, l_opt)) = layer {
                let (f_ach, f_opt) = f[u_mask].clone();
                let combine = |x: Q, y: Q| {
                    let inner = if prefers(&x, &y) { y } else { x };
                    clamp_hi(inner)
                };
                let c_ach = combine(f_ach, l_ach);
                let c_opt = combine(f_opt, l_opt);
                if best_ach.as_ref().map_or(true, |b| prefers(&c_ach, b)) {
                    best_ach = Some(c_ach);
                }
                if best_opt.as_ref().map_or(true, |b| prefers(&c_opt, b)) {
                    best_opt = Some(c_opt);
                }
            }
            d_mask = (d_mask - 1) & t_mask;
            if d_mask == 0 {
                break;
            }
        }
        let ach = best_ach.expect("at least the full decomposition");
        let opt = match best_opt {
            Some(o) if prefers(&o, &ach) => o,
            _ => ach.clone(),
        };
        f[t_mask] = (ach, opt);
    }

    // Only cumulative supports whose never-exiting replies loop favorably
    // are usable; clamp into [0,1].
    let clamp = |v: Q| v.min(Q::one()).max(Q::zero());
    let mut value: Option<Q> = None;
    let mut value_opt: Option<Q> = None;
    let mut best_mask = 0usize;
    for t_mask in 1..full {
        let ok = (0..side.n_opp)
            .filter(|&j| touch[j] & t_mask == 0)
            .all(|j| side.loop_is_good(t_mask, j));
        if !ok {
            continue;
        }
        let v = clamp(f[t_mask].0.clone());
        if value.as_ref().map_or(true, |b| prefers(&v, b)) {
            value = Some(v);
            best_mask = t_mask;
        }
        let o = clamp(f[t_mask].1.clone());
        if value_opt.as_ref().map_or(true, |b| prefers(&o, b)) {
            value_opt = Some(o);
        }
    }
    let exact = match (&value, &value_opt) {
        (Some(v), Some(o)) => v == o,
        _ => true,
    };
    let value = value.unwrap_or_else(|| if maximizing { Q::zero() } else { Q::one() });

    // A single strategy attaining the sup, when one exists: try the stored
    // one-layer optima, plain uniforms and pure actions.
    let mut candidates: Vec<Vec<Q>> = Vec::new();
    if let Some(w) = &single_witness[best_mask] {
        candidates.push(w.clone());
    }
    for t_mask in 1..full {
        if let Some(w) = &single_witness[t_mask] {
            candidates.push(w.clone());
        }
        let members: Vec<usize> = bits(t_mask);
        let u = Q::one() / Q::from_int(members.len() as i64);
        candidates.push(expand(m, &members, &vec![u; members.len()]));
    }
    let witness = candidates.into_iter().find(|s| own_guarantee(side, s) == value);
    Ok((value, witness, exact))
}

fn to_mixed(owner: Player, names: &[String], w: Option<Vec<Q>>) -> Option<MixedStrategy> {
    let w = w?;
    let weights = Distribution::new(
        names
            .iter()
            .zip(&w)
            .filter(|(_, p)| p.is_positive())
            .map(|(n, p)| (n.clone(), p.clone())),
    )
    .ok()?;
    Some(MixedStrategy { owner, weights })
}

/// One player's optimal value together with a strategy attaining it when
/// the candidate scan finds one. The boolean reports whether every layer
/// optimum converged exactly; a missing witness is inconclusive, not a
/// nonexistence proof.
pub fn one_sided_value(
    form: &GameForm,
    env: &Environment,
    player: Player,
) -> Result<(Q, Option<MixedStrategy>, bool)> {
    let side = Side::build(form, env, player)?;
    let (value, w, exact) = side_value(&side)?;
    let witness = to_mixed(player, &side.own, w);
    Ok((value, witness, exact))
}

/// The exact value of the simple parity game of (form, env), computed
/// independently from both players' sides and certified when they agree.
pub fn simple_game_value(form: &GameForm, env: &Environment) -> Result<SimpleGameValue> {
    let side_a = Side::build(form, env, Player::A)?;
    let side_b = Side::build(form, env, Player::B)?;
    let (lower, wa, exact_a) = side_value(&side_a)?;
    let (upper, wb, exact_b) = side_value(&side_b)?;
    let _ = (exact_a, exact_b); // bounds stay sound even when a layer capped out
    let certified = lower == upper;
    Ok(SimpleGameValue {
        value: lower.clone(),
        lower: lower.clone(),
        upper,
        certified,
        a_witness: to_mixed(Player::A, &side_a.own, wa),
        b_witness: to_mixed(Player::B, &side_b.own, wb),
    })
}
