//! Induced Markov chains, BSCCs and exact parity outcomes.

use std::collections::{BTreeMap, BTreeSet};

use cspg_core::error::{domain, internal, Result};
use cspg_core::linalg::{solve_square, LinSolve};
use cspg_core::{Distribution, MixedStrategy, Q};

use crate::game::{ParityGame, PositionalStrategy, Valuation};

/// A finite Markov chain; states without a step entry are absorbing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovChain {
    pub states: Vec<String>,
    pub step: BTreeMap<String, Distribution<String>>,
}

/// The probability to go from `q` to `target` in one step when the players
/// mix with `sa` and `sb`: out of the indicator game <F(q), 1_target>.
pub fn transition_prob(
    game: &ParityGame,
    q: &str,
    sa: &MixedStrategy,
    sb: &MixedStrategy,
    target: &str,
) -> Result<Q> {
    if game.is_stopping(q) {
        return Err(domain(format!("state {q:?} is stopping and has no transitions")));
    }
    let form = game.form(q)?;
    sa.validate_in(form)?;
    sb.validate_in(form)?;
    let mut total = Q::zero();
    for (a, pa) in sa.weights.support() {
        for (b, pb) in sb.weights.support() {
            let cell = form
                .cell_by_name(a, b)
                .ok_or_else(|| internal("validated action disappeared"))?;
            total += pa * pb * cell.prob(&target.to_string());
        }
    }
    Ok(total)
}

pub fn induced_markov_chain(
    game: &ParityGame,
    sa: &PositionalStrategy,
    sb: &PositionalStrategy,
) -> Result<MarkovChain> {
    sa.validate_in(game)?;
    sb.validate_in(game)?;
    let mut step = BTreeMap::new();
    for q in game.states() {
        let form = game.form(q)?;
        let (ca, cb) = (sa.at(q)?, sb.at(q)?);
        let mut weights: BTreeMap<String, Q> = BTreeMap::new();
        for (a, pa) in ca.weights.support() {
            for (b, pb) in cb.weights.support() {
                let cell = form
                    .cell_by_name(a, b)
                    .ok_or_else(|| internal("validated action disappeared"))?;
                for (o, p) in cell.support() {
                    *weights.entry(o.clone()).or_insert_with(Q::zero) += pa * pb * p;
                }
            }
        }
        step.insert(q.clone(), Distribution::new(weights)?);
    }
    Ok(MarkovChain {
        states: game.all_names(),
        step,
    })
}

/// Bottom strongly connected components of the positive-probability graph.
/// Absorbing states (no step entry) count as self-looping, so each forms a
/// singleton BSCC. Components are returned sorted by their least state, each
/// sorted internally.
pub fn bsccs(mc: &MarkovChain) -> Vec<Vec<String>> {
    let index: BTreeMap<&String, usize> = mc.states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let n = mc.states.len();
    let mut graph = petgraph::graph::DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for (q, d) in &mc.step {
        let from = nodes[index[q]];
        for (o, _) in d.support() {
            graph.add_edge(from, nodes[index[o]], ());
        }
    }
    let mut out: Vec<Vec<String>> = Vec::new();
    for comp in petgraph::algo::tarjan_scc(&graph) {
        let members: BTreeSet<usize> = comp.iter().map(|nx| nx.index()).collect();
        let bottom = members.iter().all(|&i| {
            let q = &mc.states[i];
            match mc.step.get(q) {
                None => true,
                Some(d) => d.support().all(|(o, _)| members.contains(&index[o])),
            }
        });
        if bottom {
            let mut names: Vec<String> = members.iter().map(|&i| mc.states[i].clone()).collect();
            names.sort();
            out.push(names);
        }
    }
    out.sort();
    out
}

/// Exact probability, per state, of winning the max-parity objective plus
/// the expected stopping value: even-colored BSCCs pay 1, stopping states
/// pay their value, and transient states solve the exact reachability system.
pub fn mc_parity_outcome(
    mc: &MarkovChain,
    color_of: &BTreeMap<String, usize>,
    stopping_values: &BTreeMap<String, Q>,
) -> Result<Valuation> {
    let mut fixed: BTreeMap<String, Q> = BTreeMap::new();
    for bscc in bsccs(mc) {
        if bscc.len() == 1 && stopping_values.contains_key(&bscc[0]) {
            fixed.insert(bscc[0].clone(), stopping_values[&bscc[0]].clone());
            continue;
        }
        let mut max_color = None;
        for q in &bscc {
            let c = color_of
                .get(q)
                .copied()
                .ok_or_else(|| domain(format!("no color for recurrent state {q:?}")))?;
            max_color = Some(max_color.map_or(c, |m: usize| m.max(c)));
        }
        let win = max_color.ok_or_else(|| internal("empty BSCC"))? % 2 == 0;
        let payoff = if win { Q::one() } else { Q::zero() };
        for q in &bscc {
            fixed.insert(q.clone(), payoff.clone());
        }
    }
    // Transient part: x = P_TT x + P_TF fixed.
    let transient: Vec<&String> = mc.states.iter().filter(|q| !fixed.contains_key(*q)).collect();
    let mut result: Valuation = fixed.clone();
    if !transient.is_empty() {
        let idx: BTreeMap<&String, usize> = transient.iter().enumerate().map(|(i, q)| (*q, i)).collect();
        let n = transient.len();
        let mut a = vec![vec![Q::zero(); n]; n];
        let mut b = vec![Q::zero(); n];
        for (i, q) in transient.iter().enumerate() {
            a[i][i] = Q::one();
            let d = mc
                .step
                .get(*q)
                .ok_or_else(|| internal("absorbing state escaped the BSCC pass"))?;
            for (o, p) in d.support() {
                match idx.get(o) {
                    Some(&j) => a[i][j] = &a[i][j] - p,
                    None => b[i] += p * &fixed[o],
                }
            }
        }
        match solve_square(a, b) {
            LinSolve::Unique(x) => {
                for (i, q) in transient.iter().enumerate() {
                    result.insert((*q).clone(), x[i].clone());
                }
            }
            LinSolve::Singular => return Err(internal("transient reachability system is singular")),
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::PositionalStrategy;
    use cspg_core::{q, GameForm, Player};

    /// A game where Player B alone picks the successor of every state.
    pub fn solitaire_b(
        edges: &[(&str, &[&str])],
        colors: &[(&str, usize)],
        stopping: &[(&str, i64, i64)],
    ) -> ParityGame {
        let mut forms = BTreeMap::new();
        let states: Vec<String> = edges.iter().map(|(q, _)| q.to_string()).collect();
        for (qn, succs) in edges {
            let acts_b: Vec<String> = succs.iter().map(|s| format!("to_{s}")).collect();
            let mut outcomes: Vec<String> = Vec::new();
            for s in succs.iter() {
                if !outcomes.iter().any(|o| o == s) {
                    outcomes.push(s.to_string());
                }
            }
            let cells = vec![succs.iter().map(|s| s.to_string()).collect()];
            forms.insert(
                qn.to_string(),
                GameForm::deterministic(vec!["go".into()], acts_b, outcomes, cells).unwrap(),
            );
        }
        ParityGame::new(
            states,
            forms,
            colors.iter().map(|(q, c)| (q.to_string(), *c)).collect(),
            stopping.iter().map(|(s, n, d)| (s.to_string(), q(*n, *d))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn transition_probabilities() {
        let g = solitaire_b(&[("s", &["s", "t"])], &[("s", 0)], &[("t", 1, 1)]);
        let sa = cspg_core::MixedStrategy::pure(Player::A, "go");
        let sb = cspg_core::MixedStrategy::pure(Player::B, "to_t");
        assert_eq!(transition_prob(&g, "s", &sa, &sb, "t").unwrap(), q(1, 1));
        assert_eq!(transition_prob(&g, "s", &sa, &sb, "s").unwrap(), q(0, 1));
        let mixed = cspg_core::MixedStrategy::uniform(Player::B, &["to_s".into(), "to_t".into()]);
        assert_eq!(transition_prob(&g, "s", &sa, &mixed, "t").unwrap(), q(1, 2));
        assert!(transition_prob(&g, "t", &sa, &sb, "s").is_err());
    }

    #[test]
    fn bsccs_of_a_cycle() {
        // q1 -> q3 -> q2 -> q1 plus a feeder.
        let g = solitaire_b(
            &[("q0", &["q1"]), ("q1", &["q3"]), ("q3", &["q2"]), ("q2", &["q1"])],
            &[("q0", 0), ("q1", 0), ("q2", 0), ("q3", 1)],
            &[],
        );
        let sa = PositionalStrategy::uniform(Player::A, &g).unwrap();
        let sb = PositionalStrategy::uniform(Player::B, &g).unwrap();
        let mc = induced_markov_chain(&g, &sa, &sb).unwrap();
        assert_eq!(bsccs(&mc), vec![vec!["q1".to_string(), "q2".into(), "q3".into()]]);
    }

    #[test]
    fn outcome_even_bscc_and_stopping() {
        // s loops on itself with color 2 -> outcome 1 everywhere.
        let g = solitaire_b(&[("s", &["s"])], &[("s", 2)], &[]);
        let sa = PositionalStrategy::uniform(Player::A, &g).unwrap();
        let sb = PositionalStrategy::uniform(Player::B, &g).unwrap();
        let mc = induced_markov_chain(&g, &sa, &sb).unwrap();
        let v = mc_parity_outcome(&mc, g.colors(), g.stopping()).unwrap();
        assert_eq!(v["s"], q(1, 1));

        // straight chain into a stopping state of value 1/2.
        let g = solitaire_b(&[("s", &["t"])], &[("s", 0)], &[("t", 1, 2)]);
        let sa = PositionalStrategy::uniform(Player::A, &g).unwrap();
        let sb = PositionalStrategy::uniform(Player::B, &g).unwrap();
        let mc = induced_markov_chain(&g, &sa, &sb).unwrap();
        let v = mc_parity_outcome(&mc, g.colors(), g.stopping()).unwrap();
        assert_eq!(v["s"], q(1, 2));
        assert_eq!(v["t"], q(1, 2));
    }

    #[test]
    fn outcome_mixed_reachability() {
        // s: half to an even self-loop, half to a stopping 0.
        let g = solitaire_b(&[("s", &["w", "l"]), ("w", &["w"])], &[("s", 0), ("w", 2)], &[("l", 0, 1)]);
        let sa = PositionalStrategy::uniform(Player::A, &g).unwrap();
        let sb = PositionalStrategy::uniform(Player::B, &g).unwrap();
        let mc = induced_markov_chain(&g, &sa, &sb).unwrap();
        let v = mc_parity_outcome(&mc, g.colors(), g.stopping()).unwrap();
        assert_eq!(v["s"], q(1, 2));
    }
}
