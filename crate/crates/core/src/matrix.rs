//! Exact minimax for matrix games and enumeration of the optimal polytopes.

use std::collections::BTreeSet;

use crate::error::{capacity, internal, Result};
use crate::form::{MixedStrategy, NormalFormGame, Player};
use crate::rational::Q;
use crate::simplex;

pub struct MatrixGameSolution {
    pub value: Q,
    pub strategy_a: MixedStrategy,
    pub strategy_b: MixedStrategy,
}

/// Solves the zero-sum game exactly: the value and one optimal mixed strategy
/// per player.
///
/// With payoffs in [0,1], shifting by +1 puts every entry in [1,2], so the
/// shifted value w is positive and the classic reciprocal trick applies:
/// maximize sum(y) subject to (M+1) y <= 1, y >= 0. The optimum is 1/w,
/// Player B's strategy is y*w, and Player A's falls out of the duals.
pub fn solve_matrix_game(game: &NormalFormGame) -> Result<MatrixGameSolution> {
    let m = game.actions_a().len();
    let n = game.actions_b().len();
    let rows: Vec<Vec<Q>> = (0..m)
        .map(|i| (0..n).map(|j| game.payoff(i, j) + Q::one()).collect())
        .collect();
    let ones_n = vec![Q::one(); n];
    let ones_m = vec![Q::one(); m];
    let sol = simplex::maximize(&ones_n, &rows, &ones_m)?;
    if !sol.objective.is_positive() {
        return Err(internal("shifted matrix game produced a nonpositive LP optimum"));
    }
    let w = sol.objective.recip();
    let value = &w - &Q::one();
    let weights_b: Vec<(String, Q)> = game
        .actions_b()
        .iter()
        .zip(&sol.x)
        .map(|(b, y)| (b.clone(), y * &w))
        .collect();
    let weights_a: Vec<(String, Q)> = game
        .actions_a()
        .iter()
        .zip(&sol.dual)
        .map(|(a, d)| (a.clone(), d * &w))
        .collect();
    let strategy_b = MixedStrategy {
        owner: Player::B,
        weights: crate::dist::Distribution::new(weights_b)
            .map_err(|e| internal(format!("LP primal is not a distribution: {e}")))?,
    };
    let strategy_a = MixedStrategy {
        owner: Player::A,
        weights: crate::dist::Distribution::new(weights_a)
            .map_err(|e| internal(format!("LP dual is not a distribution: {e}")))?,
    };
    Ok(MatrixGameSolution {
        value,
        strategy_a,
        strategy_b,
    })
}

/// Enumerates all vertices of one player's optimal-strategy polytope.
///
/// A vertex is determined by its support S together with |S|-1 opponent
/// actions whose payoff constraint is tight, so we enumerate exactly those
/// square systems. `budget` caps the number of systems solved; blowing it is
/// a capacity error, never a wrong answer.
pub fn optimal_vertices(
    game: &NormalFormGame,
    player: Player,
    budget: usize,
) -> Result<Vec<MixedStrategy>> {
    let value = solve_matrix_game(game)?.value;
    optimal_vertices_at(game, player, &value, budget)
}

/// Same as [`optimal_vertices`] but reuses an already-computed game value.
pub fn optimal_vertices_at(
    game: &NormalFormGame,
    player: Player,
    value: &Q,
    budget: usize,
) -> Result<Vec<MixedStrategy>> {
    // Orient the matrix so "own" indexes the maximizing side's options and
    // every constraint reads: own mix against opponent option >= value (for
    // A) or <= value (for B).
    let (own, opp): (Vec<String>, Vec<String>) = match player {
        Player::A => (game.actions_a().to_vec(), game.actions_b().to_vec()),
        Player::B => (game.actions_b().to_vec(), game.actions_a().to_vec()),
    };
    let pay = |own_i: usize, opp_j: usize| -> Q {
        match player {
            Player::A => game.payoff(own_i, opp_j).clone(),
            Player::B => game.payoff(opp_j, own_i).clone(),
        }
    };
    let m = own.len();
    let n = opp.len();
    let mut spent = 0usize;
    let mut seen: BTreeSet<Vec<Q>> = BTreeSet::new();
    let mut out: Vec<MixedStrategy> = Vec::new();

    let feasible = |x: &[Q]| -> bool {
        for j in 0..n {
            let mut e = Q::zero();
            for (i, xi) in x.iter().enumerate() {
                e += xi * pay(i, j);
            }
            let ok = match player {
                Player::A => e >= *value,
                Player::B => e <= *value,
            };
            if !ok {
                return false;
            }
        }
        true
    };

    for support in 1u64..(1u64 << m) {
        let s: Vec<usize> = (0..m).filter(|i| support >> i & 1 == 1).collect();
        let k = s.len();
        if k == 1 {
            spent += 1;
            if spent > budget {
                return Err(capacity(format!("optimal-vertex enumeration budget {budget} exhausted")));
            }
            let mut x = vec![Q::zero(); m];
            x[s[0]] = Q::one();
            if feasible(&x) && seen.insert(x.clone()) {
                out.push(mixed(player, &own, &x));
            }
            continue;
        }
        // Choose k-1 tight opponent options.
        for tight in combinations(n, k - 1) {
            spent += 1;
            if spent > budget {
                return Err(capacity(format!("optimal-vertex enumeration budget {budget} exhausted")));
            }
            // Unknowns: the k support weights. Equations: they sum to 1 and
            // each chosen opponent option sits exactly at the game value.
            let mut a: Vec<Vec<Q>> = vec![vec![Q::one(); k]];
            let mut b: Vec<Q> = vec![Q::one()];
            for &j in &tight {
                a.push(s.iter().map(|&i| pay(i, j)).collect());
                b.push(value.clone());
            }
            let sol = match crate::linalg::solve_unique(a, b) {
                Some(x) => x,
                None => continue,
            };
            // The support must be exact: zero weights belong to a smaller
            // support that is enumerated separately.
            if sol.iter().any(|v| !v.is_positive()) {
                continue;
            }
            let mut x = vec![Q::zero(); m];
            for (idx, &i) in s.iter().enumerate() {
                x[i] = sol[idx].clone();
            }
            if feasible(&x) && seen.insert(x.clone()) {
                out.push(mixed(player, &own, &x));
            }
        }
    }
    Ok(out)
}

fn mixed(player: Player, names: &[String], x: &[Q]) -> MixedStrategy {
    let weights = crate::dist::Distribution::new(
        names
            .iter()
            .zip(x)
            .filter(|(_, p)| p.is_positive())
            .map(|(nm, p)| (nm.clone(), p.clone())),
    )
    .expect("vertex weights form a distribution");
    MixedStrategy {
        owner: player,
        weights,
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
