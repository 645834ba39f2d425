//! Deciding positional optimizability up to n by exhausting relevant
//! environments of size at most n-1 over a rational value grid. Each
//! concrete environment is decided exactly when its value lies in the
//! rational closure; environments with irrational values are counted as
//! undecided and flag the search as incomplete. Verdicts over continuous
//! values are therefore search-based, never certificates.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use cspg_core::error::Result;
use cspg_core::{GameForm, Player, Q};
use cspg_local::{
    is_optimal_gf_strategy_given, one_sided_value, optimal_gf_strategy, simple_game_value,
    Environment, Target,
};
use serde::Serialize;

/// Which player(s) a query asks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PlayerSel {
    A,
    B,
    Both,
}

impl PlayerSel {
    pub fn players(self) -> Vec<Player> {
        match self {
            PlayerSel::A => vec![Player::A],
            PlayerSel::B => vec![Player::B],
            PlayerSel::Both => vec![Player::A, Player::B],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub enum ParoOutcome {
    /// n = 0: every form qualifies.
    HoldsCertified,
    /// The full grid was exhausted without a counterexample.
    HoldsOnSearch,
    /// An environment where the queried player has no optimal strategy;
    /// the refutation is exhaustive over support classes.
    Fails {
        player: Player,
        counterexample: Environment,
        value: Q,
    },
    /// The enumeration exceeds the budget; only a prefix was searched.
    Unknown { examined: usize, total: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct EnvRecord {
    pub env: Environment,
    pub value: Q,
    pub a_optimal: Option<bool>,
    pub b_optimal: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParoVerdict {
    pub n: usize,
    pub players: Vec<Player>,
    pub outcome: ParoOutcome,
    pub examined: usize,
    /// Environments whose exact value escapes the rational closure; they
    /// can be neither certified nor refuted, so any positive verdict with
    /// a nonzero count here is incomplete.
    pub undecided: usize,
    /// A deterministic sample of the evidence, always including the
    /// counterexample when one exists.
    pub records: Vec<EnvRecord>,
}

impl ParoVerdict {
    pub fn holds(&self) -> bool {
        matches!(
            self.outcome,
            ParoOutcome::HoldsCertified | ParoOutcome::HoldsOnSearch
        )
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Maximum number of concrete environments examined.
    pub budget: usize,
    /// Exit values are drawn from {i/D : 0 <= i <= D}.
    pub grid_denominator: u64,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            budget: 2_000_000,
            grid_denominator: 4,
        }
    }
}

/// Membership in the full intersection reduces to level |outcomes| + 2.
pub fn paro_bound(form: &GameForm) -> usize {
    form.outcomes().len() + 2
}

/// One environment shape: the start color, the top index, and per outcome
/// either a checkpoint index or a grid-valued exit (None).
struct Shape {
    c: usize,
    e: usize,
    tags: Vec<Option<usize>>,
}

impl Shape {
    fn env_count(&self, grid: usize) -> usize {
        let reals = self.tags.iter().filter(|t| t.is_none()).count();
        grid.pow(reals as u32)
    }
}

/// All relevant shapes with e - c <= n - 1: c in {0,1}, and every index in
/// [c,e] hit by some outcome.
fn shapes(outcomes: usize, n: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for c in 0..=1usize {
        for e in c..=(c + n - 1) {
            let base = 1 + (e - c + 1); // exit or one of k_c..k_e
            let total = base.pow(outcomes as u32);
            'assign: for code in 0..total {
                let mut tags = Vec::with_capacity(outcomes);
                let mut rest = code;
                let mut hit = vec![false; e - c + 1];
                for _ in 0..outcomes {
                    let digit = rest % base;
                    rest /= base;
                    if digit == 0 {
                        tags.push(None);
                    } else {
                        tags.push(Some(c + digit - 1));
                        hit[digit - 1] = true;
                    }
                }
                if hit.iter().any(|h| !h) {
                    continue 'assign;
                }
                out.push(Shape { c, e, tags });
            }
        }
    }
    out
}

struct ShapeResult {
    examined: usize,
    undecided: usize,
    counterexample: Option<(Player, Environment, Q)>,
    records: Vec<EnvRecord>,
}

const RECORD_CAP: usize = 4;

/// Does `player` have an optimal GF-strategy in this environment? The
/// player's own side of the value computation doubles as a certificate: a
/// strategy whose exact guarantee equals the player's optimal value is
/// optimal. Anything inconclusive falls back to the exhaustive family
/// search. `None` means the environment's value escapes the rational
/// closure, so the question cannot be settled exactly either way.
fn decide(form: &GameForm, env: &Environment, player: Player) -> Result<(Option<bool>, Q)> {
    let (value, witness, exact) = one_sided_value(form, env, player)?;
    if exact {
        let trivial = match player {
            Player::A => value.is_zero(),
            Player::B => value.is_one(),
        };
        if trivial || witness.is_some() {
            return Ok((Some(true), value));
        }
        let found = optimal_gf_strategy(form, env, player)?.is_some();
        return Ok((Some(found), value));
    }
    // A layer iteration capped out: use the two-sided value and the full
    // optimality machinery, but only when the pinched bounds certify it.
    let sol = simple_game_value(form, env)?;
    if !sol.certified {
        return Ok((None, sol.value));
    }
    let w = match player {
        Player::A => &sol.a_witness,
        Player::B => &sol.b_witness,
    };
    if let Some(w) = w {
        if is_optimal_gf_strategy_given(form, env, w, &sol.value)?.is_ok() {
            return Ok((Some(true), sol.value));
        }
    }
    let found = optimal_gf_strategy(form, env, player)?.is_some();
    Ok((Some(found), sol.value))
}

fn search_shape(
    form: &GameForm,
    shape: &Shape,
    players: &[Player],
    grid: &[Q],
) -> Result<ShapeResult> {
    let outcomes = form.outcomes();
    let reals: Vec<usize> = shape
        .tags
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is_none())
        .map(|(i, _)| i)
        .collect();
    let mut result = ShapeResult {
        examined: 0,
        undecided: 0,
        counterexample: None,
        records: Vec::new(),
    };
    let combos = grid.len().pow(reals.len() as u32);
    for code in 0..combos {
        let mut p: BTreeMap<String, Target> = BTreeMap::new();
        for (i, tag) in shape.tags.iter().enumerate() {
            if let Some(k) = tag {
                p.insert(outcomes[i].clone(), Target::K(*k));
            }
        }
        let mut rest = code;
        for i in &reals {
            p.insert(outcomes[*i].clone(), Target::Value(grid[rest % grid.len()].clone()));
            rest /= grid.len();
        }
        let env = Environment::new(shape.c, shape.e, p)?;
        result.examined += 1;
        let mut rec = EnvRecord {
            env: env.clone(),
            value: Q::zero(),
            a_optimal: None,
            b_optimal: None,
        };
        let mut settled = true;
        for player in players {
            let (found, value) = decide(form, &env, *player)?;
            rec.value = value.clone();
            match player {
                Player::A => rec.a_optimal = found,
                Player::B => rec.b_optimal = found,
            }
            match found {
                Some(false) => {
                    result.records.push(rec);
                    result.counterexample = Some((*player, env, value));
                    return Ok(result);
                }
                Some(true) => {}
                None => settled = false,
            }
        }
        if !settled {
            result.undecided += 1;
        }
        if result.records.len() < RECORD_CAP {
            result.records.push(rec);
        }
    }
    Ok(result)
}

pub fn check_paro(
    form: &GameForm,
    sel: PlayerSel,
    n: usize,
    cfg: &SearchConfig,
) -> Result<ParoVerdict> {
    let players = sel.players();
    if n == 0 {
        return Ok(ParoVerdict {
            n,
            players,
            outcome: ParoOutcome::HoldsCertified,
            examined: 0,
            undecided: 0,
            records: Vec::new(),
        });
    }
    // The exit-value grid: i/D plus every probability appearing in the
    // form's own cells.
    let mut grid: Vec<Q> = (0..=cfg.grid_denominator)
        .map(|i| Q::from_int(i as i64) / Q::from_int(cfg.grid_denominator as i64))
        .collect();
    for i in 0..form.actions_a().len() {
        for j in 0..form.actions_b().len() {
            for (_, w) in form.cell(i, j).support() {
                grid.push(w.clone());
            }
        }
    }
    grid.sort();
    grid.dedup();
    let all = shapes(form.outcomes().len(), n);
    let total: usize = all.iter().map(|s| s.env_count(grid.len())).sum();

    // The searched prefix is the maximal run of whole shapes fitting the
    // budget, so the verdict does not depend on scheduling.
    let mut prefix = 0;
    let mut planned = 0usize;
    while prefix < all.len() && planned + all[prefix].env_count(grid.len()) <= cfg.budget {
        planned += all[prefix].env_count(grid.len());
        prefix += 1;
    }

    let next = AtomicUsize::new(0);
    // Earliest shape index known to contain a counterexample; shapes past
    // it are skipped, which never changes the reported first failure.
    let fail_at = AtomicUsize::new(usize::MAX);
    let results: Mutex<Vec<(usize, Result<ShapeResult>)>> = Mutex::new(Vec::new());
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    std::thread::scope(|scope| {
        for _ in 0..workers.min(prefix.max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= prefix {
                    break;
                }
                if i > fail_at.load(Ordering::SeqCst) {
                    continue;
                }
                let r = search_shape(form, &all[i], &players, &grid);
                if matches!(&r, Ok(s) if s.counterexample.is_some()) {
                    fail_at.fetch_min(i, Ordering::SeqCst);
                }
                results.lock().unwrap().push((i, r));
            });
        }
    });
    let mut per_shape = results.into_inner().unwrap();
    per_shape.sort_by_key(|(i, _)| *i);

    let mut examined = 0;
    let mut undecided = 0;
    let mut records = Vec::new();
    let mut failure: Option<(Player, Environment, Q)> = None;
    for (_, r) in per_shape {
        let r = r?;
        if failure.is_some() {
            break;
        }
        examined += r.examined;
        undecided += r.undecided;
        let had_counterexample = r.counterexample.is_some();
        for rec in r.records {
            if records.len() < 2 * RECORD_CAP || had_counterexample {
                records.push(rec);
            }
        }
        if let Some(cx) = r.counterexample {
            failure = Some(cx);
        }
    }
    let outcome = match failure {
        Some((player, counterexample, value)) => ParoOutcome::Fails {
            player,
            counterexample,
            value,
        },
        None if prefix == all.len() => ParoOutcome::HoldsOnSearch,
        None => ParoOutcome::Unknown { examined, total },
    };
    Ok(ParoVerdict {
        n,
        players,
        outcome,
        examined,
        undecided,
        records,
    })
}
