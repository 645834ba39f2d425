//! End-to-end checks on small single-player arenas: the four-state game
//! where avoiding the top color decides the winner, and the three-state
//! cycle game won surely by the maximizer.

use std::collections::BTreeMap;

use cspg_arena::{
    check_strategy, compatible_bsccs, encode_stopping_states, mc_parity_outcome, strategy_value,
    CheckKind, ParityGame, PositionalStrategy, Valuation,
};
use cspg_core::{q, GameForm, Player, Q};

const CAP: usize = 1_000_000;

fn solitaire_b(edges: &[(&str, &[&str])], colors: &[(&str, usize)]) -> ParityGame {
    let mut forms = BTreeMap::new();
    let states: Vec<String> = edges.iter().map(|(s, _)| s.to_string()).collect();
    for (state, succs) in edges {
        let acts_b: Vec<String> = succs.iter().map(|s| format!("to_{s}")).collect();
        let mut outcomes: Vec<String> = Vec::new();
        for s in succs.iter() {
            if !outcomes.iter().any(|o| o == s) {
                outcomes.push(s.to_string());
            }
        }
        let cells = vec![succs.iter().map(|s| s.to_string()).collect()];
        forms.insert(
            state.to_string(),
            GameForm::deterministic(vec!["go".into()], acts_b, outcomes, cells).unwrap(),
        );
    }
    ParityGame::new(
        states,
        forms,
        colors.iter().map(|(s, c)| (s.to_string(), *c)).collect(),
        BTreeMap::new(),
    )
    .unwrap()
}

/// Colors 1..4; q2 can loop, jump to the even trap q4, or escape to q1,
/// from which the odd cycle q1-q3-q2 is available.
fn four_state_game(with_q1: bool) -> ParityGame {
    if with_q1 {
        solitaire_b(
            &[
                ("q1", &["q3", "q1"]),
                ("q2", &["q2", "q4", "q1"]),
                ("q3", &["q2"]),
                ("q4", &["q4"]),
            ],
            &[("q1", 1), ("q2", 2), ("q3", 3), ("q4", 4)],
        )
    } else {
        solitaire_b(
            &[("q2", &["q2", "q4"]), ("q3", &["q2"]), ("q4", &["q4"])],
            &[("q2", 2), ("q3", 3), ("q4", 4)],
        )
    }
}

#[test]
fn escape_hatch_flips_the_value() {
    for (with_q1, expected_q2) in [(true, q(0, 1)), (false, q(1, 1))] {
        let g = four_state_game(with_q1);
        let sa = PositionalStrategy::uniform(Player::A, &g).unwrap();
        let v = strategy_value(&g, &sa, CAP).unwrap();
        assert_eq!(v["q2"], expected_q2, "with_q1={with_q1}");
        if with_q1 {
            assert_eq!(v["q1"], q(0, 1));
            assert_eq!(v["q3"], q(0, 1));
        }
        assert_eq!(v["q4"], q(1, 1));
    }
}

#[test]
fn compatible_bsccs_without_escape() {
    let g = four_state_game(false);
    let sa = PositionalStrategy::uniform(Player::A, &g).unwrap();
    let found = compatible_bsccs(&g, &sa, CAP).unwrap();
    let sets: Vec<Vec<String>> = found.iter().map(|(b, _)| b.clone()).collect();
    assert!(sets.contains(&vec!["q2".to_string()]));
    assert!(sets.contains(&vec!["q4".to_string()]));
    assert_eq!(sets.len(), 2);
}

/// q1 has an even self-loop; q3 (odd) funnels back to q1; q2 reaches q3 or
/// loops. Every choice of the lone player leaves the maximizer winning.
#[test]
fn cycle_game_won_everywhere() {
    let g = solitaire_b(
        &[("q1", &["q1"]), ("q2", &["q3", "q2"]), ("q3", &["q1"])],
        &[("q1", 0), ("q2", 0), ("q3", 1)],
    );
    let sa = PositionalStrategy::uniform(Player::A, &g).unwrap();
    let v = strategy_value(&g, &sa, CAP).unwrap();
    for s in ["q1", "q2", "q3"] {
        assert_eq!(v[s], q(1, 1), "state {s}");
    }
}

#[test]
fn dominates_trivially_against_zero() {
    let g = four_state_game(true);
    let sa = PositionalStrategy::uniform(Player::A, &g).unwrap();
    let zero: Valuation = g.states().iter().map(|s| (s.clone(), Q::zero())).collect();
    assert!(check_strategy(&g, &sa, &zero, CheckKind::Dominates, CAP)
        .unwrap()
        .holds());
}

#[test]
fn guarantee_check_spots_shortfalls() {
    let g = four_state_game(true);
    let sa = PositionalStrategy::uniform(Player::A, &g).unwrap();
    let mut claim: Valuation = g.states().iter().map(|s| (s.clone(), Q::zero())).collect();
    claim.insert("q4".into(), Q::one());
    assert!(check_strategy(&g, &sa, &claim, CheckKind::Guarantees, CAP)
        .unwrap()
        .holds());
    claim.insert("q2".into(), q(1, 2));
    let res = check_strategy(&g, &sa, &claim, CheckKind::Guarantees, CAP).unwrap();
    assert!(!res.holds());
}

#[test]
fn stopping_encoding_preserves_outcomes() {
    // A game with a mid-range stopping value and a real parity part.
    let mut forms = BTreeMap::new();
    let cell = cspg_core::Distribution::new([("loop_even".to_string(), q(1, 2)), ("half".to_string(), q(1, 2))]).unwrap();
    forms.insert(
        "s".to_string(),
        GameForm::new(
            vec!["go".into()],
            vec!["go".into()],
            vec!["loop_even".into(), "half".into()],
            vec![vec![cell]],
        )
        .unwrap(),
    );
    forms.insert(
        "loop_even".to_string(),
        GameForm::deterministic(
            vec!["go".into()],
            vec!["go".into()],
            vec!["loop_even".into()],
            vec![vec!["loop_even".into()]],
        )
        .unwrap(),
    );
    let g = ParityGame::new(
        vec!["s".into(), "loop_even".into()],
        forms,
        BTreeMap::from([("s".to_string(), 1), ("loop_even".to_string(), 2)]),
        BTreeMap::from([("half".to_string(), q(1, 3))]),
    )
    .unwrap();
    let sa = PositionalStrategy::uniform(Player::A, &g).unwrap();
    let sb = PositionalStrategy::uniform(Player::B, &g).unwrap();
    let before = mc_parity_outcome(
        &cspg_arena::induced_markov_chain(&g, &sa, &sb).unwrap(),
        g.colors(),
        g.stopping(),
    )
    .unwrap();
    assert_eq!(before["s"], q(1, 2) + q(1, 2) * q(1, 3));

    let enc = encode_stopping_states(&g).unwrap();
    assert!(enc.stopping().is_empty());
    let sa = PositionalStrategy::uniform(Player::A, &enc).unwrap();
    let sb = PositionalStrategy::uniform(Player::B, &enc).unwrap();
    let after = mc_parity_outcome(
        &cspg_arena::induced_markov_chain(&enc, &sa, &sb).unwrap(),
        enc.colors(),
        enc.stopping(),
    )
    .unwrap();
    for s in g.states() {
        assert_eq!(before[s], after[s], "state {s}");
    }
}
