//! Testing and synthesizing optimal GF-strategies (Lemma 1 style): optimal
//! in the one-shot game under the value valuation, plus the right parity on
//! every reply the strategy can loop on forever.

use std::collections::{BTreeMap, BTreeSet};

use cspg_core::error::{domain, Result};
use cspg_core::matrix::{optimal_vertices_at, solve_matrix_game};
use cspg_core::{apply_valuation, Distribution, GameForm, MixedStrategy, NormalFormGame, Player, Q};

use crate::env::{Environment, Target};
use crate::value::{simple_game_value, SimpleGameValue};

const VERTEX_BUDGET: usize = 1 << 20;
const SUBSET_CAP: usize = 4096;

/// Why a strategy is not optimal; `Ok` means it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OptimalityVerdict {
    Ok,
    /// The one-shot payoff against this reply falls on the wrong side of the
    /// game value.
    NotOneShotOptimal { reply: String, payoff: Q, value: Q },
    /// The strategy can be locked forever into this reply, whose top loop
    /// color favors the opponent.
    BadLoop { reply: String, top_color: usize },
}

impl OptimalityVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, OptimalityVerdict::Ok)
    }
}

/// The one-shot game <F, v^u o p>: each outcome is worth its stopping value,
/// or u if it loops back into the game.
pub fn one_shot_game(form: &GameForm, env: &Environment, u: &Q) -> Result<NormalFormGame> {
    let mut v: BTreeMap<String, Q> = BTreeMap::new();
    for o in form.outcomes() {
        let w = match env.target(o)? {
            Target::Value(x) => x.clone(),
            _ => u.clone(),
        };
        v.insert(o.clone(), w);
    }
    apply_valuation(form, &v)
}

/// Colors the checkpoint loop through `reply` can visit when the owner
/// mixes with `sigma`; includes the initial state's color c.
fn loop_top_color(form: &GameForm, env: &Environment, sigma: &MixedStrategy, reply: &str) -> Result<(bool, usize)> {
    // Returns (loops_forever, top color). loops_forever is false as soon as
    // any supported cell has exit mass.
    let mut top = env.c;
    for (own, _) in sigma.weights.support() {
        let (a, b) = match sigma.owner {
            Player::A => (own.as_str(), reply),
            Player::B => (reply, own.as_str()),
        };
        let cell = form
            .cell_by_name(a, b)
            .ok_or_else(|| domain(format!("unknown action pair ({a}, {b})")))?;
        for (o, _) in cell.support() {
            match env.target(o)? {
                Target::Value(_) => return Ok((false, 0)),
                Target::K(i) => top = top.max(*i),
                Target::QInit => {}
            }
        }
    }
    Ok((true, top))
}

fn certified_value(form: &GameForm, env: &Environment) -> Result<SimpleGameValue> {
    let sol = simple_game_value(form, env)?;
    if !sol.certified {
        return Err(domain(format!(
            "game value is not certified (bounds {} and {}); refusing optimality analysis",
            sol.lower, sol.upper
        )));
    }
    Ok(sol)
}

pub fn is_optimal_gf_strategy(
    form: &GameForm,
    env: &Environment,
    sigma: &MixedStrategy,
) -> Result<OptimalityVerdict> {
    sigma.validate_in(form)?;
    let sol = certified_value(form, env)?;
    let u = sol.value;
    // A 0-valued game makes every A-strategy optimal; dually 1 for B.
    let trivial = match sigma.owner {
        Player::A => u.is_zero(),
        Player::B => u.is_one(),
    };
    if trivial {
        return Ok(OptimalityVerdict::Ok);
    }
    let game = one_shot_game(form, env, &u)?;
    let value = solve_matrix_game(&game)?.value;
    check_against(form, env, sigma, &game, &value)
}

/// The optimality test with the one-shot game and its value precomputed.
fn check_against(
    form: &GameForm,
    env: &Environment,
    sigma: &MixedStrategy,
    game: &NormalFormGame,
    value: &Q,
) -> Result<OptimalityVerdict> {
    for reply in form.actions(sigma.owner.opponent()) {
        let reply_pure = MixedStrategy::pure(sigma.owner.opponent(), reply);
        let payoff = match sigma.owner {
            Player::A => cspg_core::outcome_of(game, sigma, &reply_pure)?,
            Player::B => cspg_core::outcome_of(game, &reply_pure, sigma)?,
        };
        let ok = match sigma.owner {
            Player::A => payoff >= *value,
            Player::B => payoff <= *value,
        };
        if !ok {
            return Ok(OptimalityVerdict::NotOneShotOptimal {
                reply: reply.clone(),
                payoff,
                value: value.clone(),
            });
        }
        let (loops, top) = loop_top_color(form, env, sigma, reply)?;
        if loops && !sigma.owner.likes_color(top) {
            return Ok(OptimalityVerdict::BadLoop {
                reply: reply.clone(),
                top_color: top,
            });
        }
    }
    Ok(OptimalityVerdict::Ok)
}

/// The optimality test when the game value is already known and certified;
/// skips the value recomputation that [`is_optimal_gf_strategy`] performs.
pub fn is_optimal_gf_strategy_given(
    form: &GameForm,
    env: &Environment,
    sigma: &MixedStrategy,
    u: &Q,
) -> Result<OptimalityVerdict> {
    sigma.validate_in(form)?;
    let trivial = match sigma.owner {
        Player::A => u.is_zero(),
        Player::B => u.is_one(),
    };
    if trivial {
        return Ok(OptimalityVerdict::Ok);
    }
    let game = one_shot_game(form, env, u)?;
    let value = solve_matrix_game(&game)?.value;
    check_against(form, env, sigma, &game, &value)
}

/// All optimal GF-strategies the witness search can certify: vertices of
/// the one-shot optimal polytope and subset averages (interior points), one
/// representative per support class, each passing the full optimality test.
/// An empty result refutes every support class, so no optimal strategy
/// exists at all.
pub fn optimal_gf_strategy_family(
    form: &GameForm,
    env: &Environment,
    player: Player,
) -> Result<Vec<MixedStrategy>> {
    let sol = certified_value(form, env)?;
    let u = sol.value;
    let trivial = match player {
        Player::A => u.is_zero(),
        Player::B => u.is_one(),
    };
    if trivial {
        // Every strategy is optimal: the pures are the vertices, the
        // uniform the interior point.
        let mut family: Vec<MixedStrategy> = form
            .actions(player)
            .iter()
            .map(|a| MixedStrategy::pure(player, a))
            .collect();
        family.push(MixedStrategy::uniform(player, form.actions(player)));
        return Ok(family);
    }
    let game = one_shot_game(form, env, &u)?;
    let value = solve_matrix_game(&game)?.value;
    let vertices = optimal_vertices_at(&game, player, &value, VERTEX_BUDGET)?;
    if (1usize << vertices.len().min(20)) > SUBSET_CAP {
        return Err(cspg_core::error::capacity(format!(
            "optimal polytope has {} vertices; subset search exceeds {SUBSET_CAP}",
            vertices.len()
        )));
    }
    let mut seen_supports: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut family = Vec::new();
    for subset in 1usize..(1 << vertices.len()) {
        let members: Vec<&MixedStrategy> = (0..vertices.len())
            .filter(|i| subset >> i & 1 == 1)
            .map(|i| &vertices[i])
            .collect();
        let mut weights: BTreeMap<String, Q> = BTreeMap::new();
        let share = Q::one() / Q::from_int(members.len() as i64);
        for m in &members {
            for (a, p) in m.weights.support() {
                *weights.entry(a.clone()).or_insert_with(Q::zero) += p * &share;
            }
        }
        let support: Vec<String> = weights.keys().cloned().collect();
        if !seen_supports.insert(support) {
            continue;
        }
        let candidate = MixedStrategy {
            owner: player,
            weights: Distribution::new(weights)?,
        };
        if check_against(form, env, &candidate, &game, &value)?.is_ok() {
            family.push(candidate);
        }
    }
    Ok(family)
}

/// One optimal GF-strategy, or None when none exists (the family search is
/// exhaustive over support classes).
pub fn optimal_gf_strategy(
    form: &GameForm,
    env: &Environment,
    player: Player,
) -> Result<Option<MixedStrategy>> {
    Ok(optimal_gf_strategy_family(form, env, player)?.into_iter().next())
}
