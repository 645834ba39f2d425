//! Game forms, mixed strategies and games in normal form.

use crate::dist::Distribution;
use crate::error::{domain, Result};
use crate::rational::Q;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Player {
    A,
    B,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::A => Player::B,
            Player::B => Player::A,
        }
    }

    /// The parity this player wants the maximal recurring color to have:
    /// even for Player A, odd for Player B.
    pub fn likes_color(self, color: usize) -> bool {
        match self {
            Player::A => color % 2 == 0,
            Player::B => color % 2 == 1,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::A => write!(f, "A"),
            Player::B => write!(f, "B"),
        }
    }
}

/// A two-player action table whose cells are distributions over abstract
/// outcomes. Action and outcome names are opaque tokens; their input order is
/// kept and used for all deterministic tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameForm {
    actions_a: Vec<String>,
    actions_b: Vec<String>,
    outcomes: Vec<String>,
    /// Row-major: `table[i][j]` is the cell for (actions_a[i], actions_b[j]).
    table: Vec<Vec<Distribution<String>>>,
}

impl GameForm {
    pub fn new(
        actions_a: Vec<String>,
        actions_b: Vec<String>,
        outcomes: Vec<String>,
        table: Vec<Vec<Distribution<String>>>,
    ) -> Result<GameForm> {
        if actions_a.is_empty() || actions_b.is_empty() || outcomes.is_empty() {
            return Err(domain("game form needs non-empty action and outcome sets"));
        }
        for names in [&actions_a, &actions_b, &outcomes] {
            let mut seen = std::collections::BTreeSet::new();
            for n in names {
                if !seen.insert(n) {
                    return Err(domain(format!("duplicate name {n:?} in game form")));
                }
            }
        }
        if table.len() != actions_a.len() {
            return Err(domain("table row count does not match Player-A actions"));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != actions_b.len() {
                return Err(domain(format!(
                    "table row {} has {} cells, expected {}",
                    actions_a[i],
                    row.len(),
                    actions_b.len()
                )));
            }
            for cell in row {
                for (o, _) in cell.support() {
                    if !outcomes.contains(o) {
                        return Err(domain(format!("cell outcome {o:?} not among declared outcomes")));
                    }
                }
            }
        }
        Ok(GameForm {
            actions_a,
            actions_b,
            outcomes,
            table,
        })
    }

    /// Builds a form from a table of deterministic cells.
    pub fn deterministic(
        actions_a: Vec<String>,
        actions_b: Vec<String>,
        outcomes: Vec<String>,
        cells: Vec<Vec<String>>,
    ) -> Result<GameForm> {
        let table = cells
            .into_iter()
            .map(|row| row.into_iter().map(Distribution::dirac).collect())
            .collect();
        GameForm::new(actions_a, actions_b, outcomes, table)
    }

    pub fn actions(&self, player: Player) -> &[String] {
        match player {
            Player::A => &self.actions_a,
            Player::B => &self.actions_b,
        }
    }

    pub fn actions_a(&self) -> &[String] {
        &self.actions_a
    }

    pub fn actions_b(&self) -> &[String] {
        &self.actions_b
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn cell(&self, i: usize, j: usize) -> &Distribution<String> {
        &self.table[i][j]
    }

    pub fn cell_by_name(&self, a: &str, b: &str) -> Option<&Distribution<String>> {
        let i = self.actions_a.iter().position(|x| x == a)?;
        let j = self.actions_b.iter().position(|x| x == b)?;
        Some(&self.table[i][j])
    }

    /// A Player-A form is one where Player B has no real choice.
    pub fn is_player_a_form(&self) -> bool {
        self.actions_b.len() == 1
    }

    pub fn is_player_b_form(&self) -> bool {
        self.actions_a.len() == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.actions_a.len() == 1 && self.actions_b.len() == 1
    }

    pub fn is_deterministic(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(|c| c.is_deterministic()))
    }

    /// Rewrites every outcome through `f`, merging equal images.
    pub fn map_outcomes<F: Fn(&str) -> String>(&self, f: F) -> GameForm {
        let mut outcomes: Vec<String> = Vec::new();
        for o in &self.outcomes {
            let img = f(o);
            if !outcomes.contains(&img) {
                outcomes.push(img);
            }
        }
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|c| c.map(|o| f(o))).collect())
            .collect();
        GameForm {
            actions_a: self.actions_a.clone(),
            actions_b: self.actions_b.clone(),
            outcomes,
            table,
        }
    }
}

/// A mixed strategy of one player: a distribution over that player's actions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MixedStrategy {
    pub owner: Player,
    pub weights: Distribution<String>,
}

impl MixedStrategy {
    pub fn pure(owner: Player, action: &str) -> MixedStrategy {
        MixedStrategy {
            owner,
            weights: Distribution::dirac(action.to_string()),
        }
    }

    pub fn uniform(owner: Player, actions: &[String]) -> MixedStrategy {
        MixedStrategy {
            owner,
            weights: Distribution::uniform(actions.iter().cloned()),
        }
    }

    /// Checks the support against the owner's action set in `form`.
    pub fn validate_in(&self, form: &GameForm) -> Result<()> {
        let actions = form.actions(self.owner);
        for (a, _) in self.weights.support() {
            if !actions.contains(a) {
                return Err(domain(format!(
                    "strategy for Player {} uses unknown action {a:?}",
                    self.owner
                )));
            }
        }
        Ok(())
    }
}

/// A zero-sum game in normal form: payoffs in [0,1] for Player A.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormGame {
    actions_a: Vec<String>,
    actions_b: Vec<String>,
    /// Row-major payoff matrix.
    payoff: Vec<Vec<Q>>,
}

impl NormalFormGame {
    pub fn new(actions_a: Vec<String>, actions_b: Vec<String>, payoff: Vec<Vec<Q>>) -> Result<NormalFormGame> {
        if actions_a.is_empty() || actions_b.is_empty() {
            return Err(domain("normal-form game needs non-empty action sets"));
        }
        if payoff.len() != actions_a.len() || payoff.iter().any(|r| r.len() != actions_b.len()) {
            return Err(domain("payoff matrix shape does not match action sets"));
        }
        for row in &payoff {
            for v in row {
                if !v.in_unit() {
                    return Err(domain(format!("payoff {v} outside [0,1]")));
                }
            }
        }
        Ok(NormalFormGame {
            actions_a,
            actions_b,
            payoff,
        })
    }

    pub fn actions_a(&self) -> &[String] {
        &self.actions_a
    }

    pub fn actions_b(&self) -> &[String] {
        &self.actions_b
    }

    pub fn payoff(&self, i: usize, j: usize) -> &Q {
        &self.payoff[i][j]
    }

    pub fn matrix(&self) -> &Vec<Vec<Q>> {
        &self.payoff
    }
}

/// Instantiates a game form's outcomes with values in [0,1], yielding the
/// induced game in normal form: payoff(a,b) = E_{o ~ cell(a,b)} v(o).
pub fn apply_valuation(form: &GameForm, v: &BTreeMap<String, Q>) -> Result<NormalFormGame> {
    for o in form.outcomes() {
        match v.get(o) {
            None => return Err(domain(format!("valuation is missing outcome {o:?}"))),
            Some(x) if !x.in_unit() => {
                return Err(domain(format!("valuation of {o:?} is {x}, outside [0,1]")))
            }
            _ => {}
        }
    }
    let payoff = (0..form.actions_a().len())
        .map(|i| {
            (0..form.actions_b().len())
                .map(|j| form.cell(i, j).expect(|o| v[o].clone()))
                .collect()
        })
        .collect();
    NormalFormGame::new(form.actions_a().to_vec(), form.actions_b().to_vec(), payoff)
}

/// out(sa, sb) = sum over (a,b) of sa(a) * sb(b) * payoff(a,b).
pub fn outcome_of(game: &NormalFormGame, sa: &MixedStrategy, sb: &MixedStrategy) -> Result<Q> {
    if sa.owner != Player::A || sb.owner != Player::B {
        return Err(domain("outcome_of expects a Player-A and a Player-B strategy"));
    }
    for (a, _) in sa.weights.support() {
        if !game.actions_a().contains(a) {
            return Err(domain(format!("unknown Player-A action {a:?}")));
        }
    }
    for (b, _) in sb.weights.support() {
        if !game.actions_b().contains(b) {
            return Err(domain(format!("unknown Player-B action {b:?}")));
        }
    }
    let mut total = Q::zero();
    for (a, pa) in sa.weights.support() {
        let i = game.actions_a().iter().position(|x| x == a).unwrap();
        for (b, pb) in sb.weights.support() {
            let j = game.actions_b().iter().position(|x| x == b).unwrap();
            total += pa * pb * game.payoff(i, j);
        }
    }
    Ok(total)
}
