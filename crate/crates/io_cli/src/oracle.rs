//! Independent reference solvers used to cross-check the synthesis
//! pipeline: a Zielonka-style recursion for turn-based deterministic parity
//! games, and exhaustive strategy enumeration for turn-based stochastic
//! games. Both are deliberately simple and share no code with the checked
//! algorithms.

use std::collections::BTreeMap;

use cspg_arena::{deterministic_strategies, strategy_value, ParityGame, Valuation};
use cspg_core::error::{domain, unsupported, Result};
use cspg_core::{Player, Q};

/// The player routing the token at a turn-based state: the one whose menu
/// is not a singleton (states where both menus are singletons go to A).
pub fn controller(game: &ParityGame, q: &str) -> Result<Player> {
    let form = game.form(q)?;
    if form.actions_b().len() == 1 {
        Ok(Player::A)
    } else if form.actions_a().len() == 1 {
        Ok(Player::B)
    } else {
        Err(unsupported(format!(
            "state {q:?} is concurrent ({} x {} actions); the oracle handles turn-based games only",
            form.actions_a().len(),
            form.actions_b().len()
        )))
    }
}

fn require_turn_based(game: &ParityGame) -> Result<()> {
    for q in game.states() {
        controller(game, q)?;
    }
    Ok(())
}

/// Exact values of a turn-based stochastic parity game with stopping
/// states, by brute force: both players have pure positional optimal
/// strategies there, so the value is the pointwise best worst-case over
/// Player A's deterministic positional strategies.
pub fn oracle_values(game: &ParityGame, cap: usize) -> Result<Valuation> {
    require_turn_based(game)?;
    let mut best: Option<Valuation> = None;
    for sa in deterministic_strategies(game, Player::A, cap)? {
        let v = strategy_value(game, &sa, cap)?;
        best = Some(match best {
            None => v,
            Some(mut acc) => {
                for (q, x) in v {
                    let slot = acc.get_mut(&q).expect("same state set");
                    if x > *slot {
                        *slot = x;
                    }
                }
                acc
            }
        });
    }
    best.ok_or_else(|| domain("the game has no states"))
}

struct Arena {
    owner: Vec<Player>,
    color: Vec<usize>,
    succ: Vec<Vec<usize>>,
}

/// Winning states (value 1 for Player A) of a turn-based deterministic
/// parity game without stopping states, by the classical recursion on the
/// top color.
pub fn zielonka_values(game: &ParityGame) -> Result<Valuation> {
    if !game.stopping().is_empty() {
        return Err(unsupported("the recursive oracle handles games without stopping states"));
    }
    require_turn_based(game)?;
    let states = game.states();
    let index: BTreeMap<&String, usize> = states.iter().enumerate().map(|(i, q)| (q, i)).collect();
    let mut arena = Arena {
        owner: Vec::with_capacity(states.len()),
        color: Vec::with_capacity(states.len()),
        succ: Vec::with_capacity(states.len()),
    };
    for q in states {
        let owner = controller(game, q)?;
        let form = game.form(q)?;
        if !form.is_deterministic() {
            return Err(unsupported(format!("state {q:?} has a stochastic cell")));
        }
        let mut succ = Vec::new();
        for i in 0..form.actions_a().len() {
            for j in 0..form.actions_b().len() {
                let (dest, _) = form.cell(i, j).support().next().expect("nonempty cell");
                succ.push(*index.get(dest).ok_or_else(|| {
                    domain(format!("state {q:?} moves to the stopping state {dest:?}"))
                })?);
            }
        }
        arena.owner.push(owner);
        arena.color.push(game.color(q)?);
        arena.succ.push(succ);
    }
    let alive = vec![true; states.len()];
    let wins_a = solve(&arena, &alive);
    Ok(states
        .iter()
        .enumerate()
        .map(|(i, q)| (q.clone(), if wins_a[i] { Q::one() } else { Q::zero() }))
        .collect())
}

/// States of `region` from which `player` can force the play into `target`
/// without leaving `region`.
fn attractor(arena: &Arena, region: &[bool], player: Player, target: &[bool]) -> Vec<bool> {
    let n = region.len();
    let mut attr: Vec<bool> = (0..n).map(|i| region[i] && target[i]).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if !region[v] || attr[v] {
                continue;
            }
            let live: Vec<usize> = arena.succ[v].iter().copied().filter(|&w| region[w]).collect();
            let pulled = if arena.owner[v] == player {
                live.iter().any(|&w| attr[w])
            } else {
                !live.is_empty() && live.iter().all(|&w| attr[w])
            };
            if pulled {
                attr[v] = true;
                changed = true;
            }
        }
    }
    attr
}

/// Returns the Player-A winning region within `region`.
fn solve(arena: &Arena, region: &[bool]) -> Vec<bool> {
    let n = region.len();
    if !region.iter().any(|&x| x) {
        return vec![false; n];
    }
    let d = (0..n)
        .filter(|&v| region[v])
        .map(|v| arena.color[v])
        .max()
        .expect("nonempty region");
    let favored = if d % 2 == 0 { Player::A } else { Player::B };
    let top: Vec<bool> = (0..n).map(|v| region[v] && arena.color[v] == d).collect();
    let attr = attractor(arena, region, favored, &top);
    let inner: Vec<bool> = (0..n).map(|v| region[v] && !attr[v]).collect();
    let wins_a_inner = solve(arena, &inner);
    // States of the inner subgame won by the opponent of the favored player.
    let opp_inner: Vec<bool> = (0..n)
        .map(|v| inner[v] && (wins_a_inner[v] == (favored == Player::B)))
        .collect();
    if !opp_inner.iter().any(|&x| x) {
        // The favored player wins the whole region.
        return if favored == Player::A {
            region.to_vec()
        } else {
            vec![false; n]
        };
    }
    // The opponent wins their inner region plus its attractor; recurse on
    // the rest.
    let opponent = favored.opponent();
    let opp_attr = attractor(arena, region, opponent, &opp_inner);
    let rest: Vec<bool> = (0..n).map(|v| region[v] && !opp_attr[v]).collect();
    let wins_rest = solve(arena, &rest);
    (0..n)
        .map(|v| {
            if opp_attr[v] {
                opponent == Player::A
            } else {
                wins_rest[v]
            }
        })
        .collect()
}
