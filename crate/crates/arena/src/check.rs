//! Strategy checking: compatible BSCCs, the domination notions and the
//! brute-force strategy value via opponent enumeration.

use std::collections::{BTreeMap, BTreeSet};

use cspg_core::error::{capacity, Result};
use cspg_core::{MixedStrategy, Player, Q};
use serde::Serialize;

use crate::chain::{bsccs, induced_markov_chain, mc_parity_outcome};
use crate::game::{ParityGame, PositionalStrategy, Valuation};

/// Default cap on the number of opponent deterministic positional strategies
/// enumerated by the exact checkers.
pub const DEFAULT_OPPONENT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckKind {
    Dominates,
    ParityDominates,
    Guarantees,
}

/// Verdict of [`check_strategy`]; failures carry the first offending state
/// or BSCC in enumeration order.
#[derive(Debug, Clone, Serialize)]
pub enum CheckOutcome {
    Holds,
    /// The local one-step inequality fails at this state.
    FailsAt { state: String, local_value: Q, required: Q },
    /// A compatible BSCC with the wrong top parity.
    FailsBscc {
        bscc: Vec<String>,
        witness: PositionalStrategy,
    },
    /// The achieved value falls short at this state.
    FailsValue { state: String, achieved: Q, required: Q },
}

impl CheckOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, CheckOutcome::Holds)
    }
}

/// All deterministic positional strategies of `player`, in input action
/// order with the first state varying slowest.
pub fn deterministic_strategies(
    game: &ParityGame,
    player: Player,
    cap: usize,
) -> Result<Vec<PositionalStrategy>> {
    let mut count: usize = 1;
    let mut menus: Vec<(&String, &[String])> = Vec::new();
    for q in game.states() {
        let actions = game.form(q)?.actions(player);
        count = count.saturating_mul(actions.len());
        if count > cap {
            return Err(capacity(format!(
                "more than {cap} deterministic strategies for Player {player}"
            )));
        }
        menus.push((q, actions));
    }
    let mut out = Vec::with_capacity(count);
    let mut picks = vec![0usize; menus.len()];
    loop {
        let choice: BTreeMap<String, MixedStrategy> = menus
            .iter()
            .zip(&picks)
            .map(|((q, actions), &i)| ((*q).clone(), MixedStrategy::pure(player, &actions[i])))
            .collect();
        out.push(PositionalStrategy { owner: player, choice });
        // Odometer step, last state fastest.
        let mut pos = menus.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            picks[pos] += 1;
            if picks[pos] < menus[pos].1.len() {
                break;
            }
            picks[pos] = 0;
        }
    }
}

/// Union over all opponent deterministic positional strategies of the BSCCs
/// of the induced chain, each with the first witnessing opponent.
pub fn compatible_bsccs(
    game: &ParityGame,
    s: &PositionalStrategy,
    cap: usize,
) -> Result<Vec<(Vec<String>, PositionalStrategy)>> {
    s.validate_in(game)?;
    let opponents = deterministic_strategies(game, s.owner.opponent(), cap)?;
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut out = Vec::new();
    for opp in opponents {
        let mc = match s.owner {
            Player::A => induced_markov_chain(game, s, &opp)?,
            Player::B => induced_markov_chain(game, &opp, s)?,
        };
        for b in bsccs(&mc) {
            if seen.insert(b.clone()) {
                out.push((b, opp.clone()));
            }
        }
    }
    Ok(out)
}

/// Exact value of the strategy: the worst case over all opponent
/// deterministic positional strategies (min for Player A, max for Player B).
pub fn strategy_value(game: &ParityGame, s: &PositionalStrategy, cap: usize) -> Result<Valuation> {
    s.validate_in(game)?;
    let opponents = deterministic_strategies(game, s.owner.opponent(), cap)?;
    let mut best: Option<Valuation> = None;
    for opp in opponents {
        let mc = match s.owner {
            Player::A => induced_markov_chain(game, s, &opp)?,
            Player::B => induced_markov_chain(game, &opp, s)?,
        };
        let outcome = mc_parity_outcome(&mc, game.colors(), game.stopping())?;
        best = Some(match best {
            None => outcome,
            Some(mut acc) => {
                for (q, v) in outcome {
                    let e = acc.get_mut(&q).expect("same state space per opponent");
                    let keep = match s.owner {
                        Player::A => v < *e,
                        Player::B => v > *e,
                    };
                    if keep {
                        *e = v;
                    }
                }
                acc
            }
        });
    }
    best.ok_or_else(|| cspg_core::error::internal("no opponent strategies"))
}

/// Local one-step value of the owner's mix at `q` against a best-responding
/// opponent, under valuation `v`: min over opponent actions for A, max for B.
fn local_value(game: &ParityGame, q: &str, s: &MixedStrategy, v: &Valuation) -> Result<Q> {
    let form = game.form(q)?;
    let mut best: Option<Q> = None;
    for reply in form.actions(s.owner.opponent()) {
        let mut e = Q::zero();
        for (own, p) in s.weights.support() {
            let (a, b) = match s.owner {
                Player::A => (own.as_str(), reply.as_str()),
                Player::B => (reply.as_str(), own.as_str()),
            };
            let cell = form
                .cell_by_name(a, b)
                .ok_or_else(|| cspg_core::error::domain(format!("unknown action {own:?} at {q:?}")))?;
            for (o, po) in cell.support() {
                e += p * po * game.outcome_value(v, o)?;
            }
        }
        best = Some(match best {
            None => e,
            Some(acc) => match s.owner {
                Player::A => acc.min(e),
                Player::B => acc.max(e),
            },
        });
    }
    best.ok_or_else(|| cspg_core::error::domain("empty action set"))
}

pub fn check_strategy(
    game: &ParityGame,
    s: &PositionalStrategy,
    v: &Valuation,
    kind: CheckKind,
    cap: usize,
) -> Result<CheckOutcome> {
    s.validate_in(game)?;
    // Domination (plain and parity) starts from the local one-step
    // inequality; the guarantee notion compares achieved values directly.
    if kind != CheckKind::Guarantees {
        for q in game.states() {
            let lv = local_value(game, q, s.at(q)?, v)?;
            let required = game.outcome_value(v, q)?;
            let ok = match s.owner {
                Player::A => required <= lv,
                Player::B => required >= lv,
            };
            if !ok {
                return Ok(CheckOutcome::FailsAt {
                    state: q.clone(),
                    local_value: lv,
                    required,
                });
            }
        }
    }
    match kind {
        CheckKind::Dominates => Ok(CheckOutcome::Holds),
        CheckKind::ParityDominates => {
            // Stopping singletons are exempt: they carry a fixed value, not
            // a color.
            for (bscc, witness) in compatible_bsccs(game, s, cap)? {
                if bscc.len() == 1 && game.is_stopping(&bscc[0]) {
                    continue;
                }
                let relevant = match s.owner {
                    Player::A => bscc
                        .iter()
                        .map(|q| game.outcome_value(v, q))
                        .collect::<Result<Vec<_>>>()?
                        .into_iter()
                        .all(|x| x.is_positive()),
                    Player::B => bscc
                        .iter()
                        .map(|q| game.outcome_value(v, q))
                        .collect::<Result<Vec<_>>>()?
                        .into_iter()
                        .all(|x| x < Q::one()),
                };
                if !relevant {
                    continue;
                }
                let top = bscc
                    .iter()
                    .map(|q| game.color(q))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .max()
                    .expect("nonempty BSCC");
                if !s.owner.likes_color(top) {
                    return Ok(CheckOutcome::FailsBscc { bscc, witness });
                }
            }
            Ok(CheckOutcome::Holds)
        }
        CheckKind::Guarantees => {
            let achieved = strategy_value(game, s, cap)?;
            for q in game.states() {
                let required = game.outcome_value(v, q)?;
                let got = &achieved[q];
                let ok = match s.owner {
                    Player::A => required <= *got,
                    Player::B => required >= *got,
                };
                if !ok {
                    return Ok(CheckOutcome::FailsValue {
                        state: q.clone(),
                        achieved: got.clone(),
                        required,
                    });
                }
            }
            Ok(CheckOutcome::Holds)
        }
    }
}
