//! End-to-end checks of simple-game values, optimality tests and the
//! Lemma-style link to the induced one-state parity game.

use std::collections::BTreeMap;

use cspg_arena::{check_strategy, CheckKind, PositionalStrategy};
use cspg_core::{q, Distribution, GameForm, MixedStrategy, Player, Q};
use cspg_local::{
    build_simple_game, is_optimal_gf_strategy, optimal_gf_strategy, simple_game_value,
    value_slice_valuation, Environment, Target, INIT,
};

fn pennies() -> GameForm {
    GameForm::deterministic(
        vec!["r1".into(), "r2".into()],
        vec!["c1".into(), "c2".into()],
        vec!["y".into(), "x".into()],
        vec![vec!["y".into(), "x".into()], vec!["x".into(), "y".into()]],
    )
    .unwrap()
}

fn env_24() -> Environment {
    Environment::new(
        2,
        4,
        BTreeMap::from([
            ("x".to_string(), Target::Value(q(1, 2))),
            ("y".to_string(), Target::K(3)),
        ]),
    )
    .unwrap()
}

/// The two-row form with outcomes k3/k0/1 over k4/k0/k3, under start colors
/// 0, 1 and 3.
fn three_column_form() -> GameForm {
    GameForm::deterministic(
        vec!["t".into(), "b".into()],
        vec!["l".into(), "m".into(), "r".into()],
        vec!["u3".into(), "u0".into(), "one".into(), "u4".into()],
        vec![
            vec!["u3".into(), "u0".into(), "one".into()],
            vec!["u4".into(), "u0".into(), "u3".into()],
        ],
    )
    .unwrap()
}

fn three_column_env(c: usize) -> Environment {
    Environment::new(
        c,
        4,
        BTreeMap::from([
            ("u3".to_string(), Target::K(3)),
            ("u0".to_string(), Target::K(0)),
            ("u4".to_string(), Target::K(4)),
            ("one".to_string(), Target::Value(q(1, 1))),
        ]),
    )
    .unwrap()
}

/// The T_2 core: checkpoints on the diagonal cell, biased coin flips
/// elsewhere.
fn t2_core_form() -> GameForm {
    let cells = vec![
        vec![
            Distribution::new([("x0".to_string(), q(1, 2)), ("x1".to_string(), q(1, 2))]).unwrap(),
            Distribution::new([("y".to_string(), q(3, 4)), ("z".to_string(), q(1, 4))]).unwrap(),
        ],
        vec![
            Distribution::new([("y".to_string(), q(3, 4)), ("z".to_string(), q(1, 4))]).unwrap(),
            Distribution::new([("y".to_string(), q(1, 4)), ("z".to_string(), q(3, 4))]).unwrap(),
        ],
    ];
    GameForm::new(
        vec!["a_t".into(), "a_b".into()],
        vec!["b_l".into(), "b_r".into()],
        vec!["x0".into(), "x1".into(), "y".into(), "z".into()],
        cells,
    )
    .unwrap()
}

#[test]
fn pennies_in_2_4_is_one_half_certified() {
    let sol = simple_game_value(&pennies(), &env_24()).unwrap();
    assert!(sol.certified);
    assert_eq!(sol.value, q(1, 2));
    // A needs both rows; B may simply pin play on c1 (A then exits at 1/2
    // or loops on the odd color 3).
    let wa = sol.a_witness.expect("A attains 1/2");
    let wb = sol.b_witness.expect("B attains 1/2");
    assert_eq!(wa.weights.support().count(), 2);
    assert!(is_optimal_gf_strategy(&pennies(), &env_24(), &wb).unwrap().is_ok());
}

#[test]
fn start_color_flips_the_three_column_game() {
    // c = 0: looping on k0 suits A, so the top row guarantees 1.
    let sol0 = simple_game_value(&three_column_form(), &three_column_env(0)).unwrap();
    assert!(sol0.certified);
    assert_eq!(sol0.value, q(1, 1));
    // c = 1 and c = 3: B can pin play on odd loops and win everything.
    for c in [1, 3] {
        let sol = simple_game_value(&three_column_form(), &three_column_env(c)).unwrap();
        assert!(sol.certified, "c = {c}");
        assert_eq!(sol.value, q(0, 1), "c = {c}");
    }
}

#[test]
fn vanishing_weight_game_is_three_quarters_without_an_a_optimum() {
    // Any fixed weight on a_b drags the b_r payoff below 3/4, yet pure a_t
    // loses b_l to the odd loop on x1; A approaches 3/4 only by sending the
    // a_b weight to zero, so the sup is attained by no single A strategy,
    // while B attains it (pure b_l already does).
    let form = t2_core_form();
    let env = Environment::new(
        0,
        1,
        BTreeMap::from([
            ("x0".to_string(), Target::K(0)),
            ("x1".to_string(), Target::K(1)),
            ("y".to_string(), Target::Value(q(1, 1))),
            ("z".to_string(), Target::Value(q(0, 1))),
        ]),
    )
    .unwrap();
    let sol = simple_game_value(&form, &env).unwrap();
    assert!(sol.certified);
    assert_eq!(sol.value, q(3, 4));
    assert!(sol.a_witness.is_none());
    assert!(sol.b_witness.is_some());
    assert!(optimal_gf_strategy(&form, &env, Player::A).unwrap().is_none());
    let sb = optimal_gf_strategy(&form, &env, Player::B).unwrap().expect("B optimum");
    assert!(is_optimal_gf_strategy(&form, &env, &sb).unwrap().is_ok());
}

#[test]
fn all_exit_form_is_a_matrix_game() {
    let form = pennies();
    let env = Environment::new(
        0,
        0,
        BTreeMap::from([
            ("x".to_string(), Target::Value(q(0, 1))),
            ("y".to_string(), Target::Value(q(1, 1))),
        ]),
    )
    .unwrap();
    let sol = simple_game_value(&form, &env).unwrap();
    assert!(sol.certified);
    assert_eq!(sol.value, q(1, 2));
}

#[test]
fn optimal_strategies_of_pennies_pass_the_local_test() {
    let form = pennies();
    let env = env_24();
    for player in [Player::A, Player::B] {
        let sigma = optimal_gf_strategy(&form, &env, player).unwrap().expect("exists");
        assert!(is_optimal_gf_strategy(&form, &env, &sigma).unwrap().is_ok());
    }
    // The pure first row is one-shot optimal only against nothing: it loses
    // the one-shot game, so it is rejected.
    let bad = MixedStrategy::pure(Player::A, "r1");
    assert!(!is_optimal_gf_strategy(&form, &env, &bad).unwrap().is_ok());
}

/// Lifts a GF-strategy into the induced one-state parity game and checks it
/// parity-dominates the value slice there -- the global counterpart of the
/// local optimality test.
#[test]
fn optimal_strategies_parity_dominate_the_value_slice() {
    let form = pennies();
    let env = env_24();
    let sol = simple_game_value(&form, &env).unwrap();
    assert!(sol.certified);
    let sg = build_simple_game(&form, &env).unwrap();
    let v = {
        let mut v = value_slice_valuation(&env, &sol.value);
        for (name, u) in sg.game.stopping() {
            v.insert(name.clone(), u.clone());
        }
        v
    };
    for player in [Player::A, Player::B] {
        let sigma = optimal_gf_strategy(&form, &env, player).unwrap().expect("exists");
        let mut choice: BTreeMap<String, MixedStrategy> = BTreeMap::new();
        for state in sg.game.states() {
            if sg.game.is_stopping(state) {
                continue;
            }
            let f = sg.game.form(state).unwrap();
            if state == INIT {
                choice.insert(state.clone(), sigma.clone());
            } else {
                choice.insert(state.clone(), MixedStrategy::uniform(player, f.actions(player)));
            }
        }
        let strat = PositionalStrategy { owner: player, choice };
        let outcome = check_strategy(&sg.game, &strat, &v, CheckKind::ParityDominates, 1_000_000).unwrap();
        assert!(outcome.holds(), "player {player}: {outcome:?}");
    }
    let _ = Q::zero();
}
