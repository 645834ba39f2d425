//! The one-state parity game a form plays inside an environment.

use std::collections::BTreeMap;

use cspg_arena::{ParityGame, Valuation};
use cspg_core::error::Result;
use cspg_core::{GameForm, Q};

use crate::env::{Environment, Target};

pub const INIT: &str = "qinit";

/// Name of the stopping state holding a given value.
pub fn stop_name(v: &Q) -> String {
    format!("stop_{}", v.to_string().replace('/', "_"))
}

pub fn target_name(t: &Target) -> String {
    match t {
        Target::QInit => INIT.to_string(),
        Target::K(i) => format!("k{i}"),
        Target::Value(v) => stop_name(v),
    }
}

#[derive(Debug, Clone)]
pub struct SimpleParityGame {
    pub game: ParityGame,
    pub form: GameForm,
    pub env: Environment,
}

/// Builds the game with states qinit and k_0..k_e: qinit plays the form with
/// outcomes pushed through p, each k_i bounces straight back to qinit, and
/// each distinct target value becomes one stopping state.
pub fn build_simple_game(form: &GameForm, env: &Environment) -> Result<SimpleParityGame> {
    for o in form.outcomes() {
        env.target(o)?;
    }
    let mut states = vec![INIT.to_string()];
    let mut forms = BTreeMap::new();
    let mut colors = BTreeMap::new();
    let mut stopping: BTreeMap<String, Q> = BTreeMap::new();

    forms.insert(
        INIT.to_string(),
        form.map_outcomes(|o| target_name(env.p.get(o).expect("validated above"))),
    );
    colors.insert(INIT.to_string(), env.c);
    for i in 0..=env.e {
        let k = format!("k{i}");
        states.push(k.clone());
        forms.insert(
            k.clone(),
            GameForm::deterministic(
                vec!["back".into()],
                vec!["back".into()],
                vec![INIT.to_string()],
                vec![vec![INIT.to_string()]],
            )?,
        );
        colors.insert(k, i);
    }
    for t in env.p.values() {
        if let Target::Value(v) = t {
            stopping.insert(stop_name(v), v.clone());
        }
    }
    let game = ParityGame::new(states, forms, colors, stopping)?;
    Ok(SimpleParityGame {
        game,
        form: form.clone(),
        env: env.clone(),
    })
}

/// The valuation v^u: u on qinit and every k_i.
pub fn value_slice_valuation(env: &Environment, u: &Q) -> Valuation {
    let mut v: Valuation = BTreeMap::new();
    v.insert(INIT.to_string(), u.clone());
    for i in 0..=env.e {
        v.insert(format!("k{i}"), u.clone());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use cspg_core::q;

    #[test]
    fn builds_the_matching_pennies_game() {
        // F = [[y,x],[x,y]], E = <2,4>, p(x) = 1/2, p(y) = k3.
        let form = GameForm::deterministic(
            vec!["r1".into(), "r2".into()],
            vec!["c1".into(), "c2".into()],
            vec!["y".into(), "x".into()],
            vec![vec!["y".into(), "x".into()], vec!["x".into(), "y".into()]],
        )
        .unwrap();
        let env = Environment::new(
            2,
            4,
            BTreeMap::from([
                ("x".to_string(), Target::Value(q(1, 2))),
                ("y".to_string(), Target::K(3)),
            ]),
        )
        .unwrap();
        let sg = build_simple_game(&form, &env).unwrap();
        assert_eq!(sg.game.color(INIT).unwrap(), 2);
        assert_eq!(sg.game.color("k3").unwrap(), 3);
        assert_eq!(sg.game.states().len(), 6);
        assert_eq!(sg.game.stopping_value("stop_1_2"), Some(&q(1, 2)));
        let f0 = sg.game.form(INIT).unwrap();
        assert_eq!(
            f0.cell_by_name("r1", "c1").unwrap().support_set(),
            vec![&"k3".to_string()]
        );
        assert_eq!(
            f0.cell_by_name("r1", "c2").unwrap().support_set(),
            vec![&"stop_1_2".to_string()]
        );
    }
}
