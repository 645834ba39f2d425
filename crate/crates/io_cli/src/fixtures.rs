//! Built-in example artifacts: the small games exercised throughout the
//! test suites, exposed both as constructors and as a fixture writer so
//! the shipped JSON files are generated, never hand-maintained.

use std::collections::BTreeMap;
use std::path::Path;

use cspg_arena::{ParityGame, Valuation};
use cspg_core::error::{domain, Result};
use cspg_core::{q, GameForm, Q};
use cspg_local::{build_simple_game, Environment, Target};
use cspg_paro::{gen_fn, FnPolicy};

use crate::files::{to_json_pretty, FormFile, GameFile, NormalFormFile};

/// A one-player arena where Player B routes the token everywhere.
pub fn solitaire_b(edges: &[(&str, &[&str])], colors: &[(&str, usize)]) -> Result<ParityGame> {
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
            GameForm::deterministic(vec!["go".into()], acts_b, outcomes, cells)?,
        );
    }
    ParityGame::new(
        states,
        forms,
        colors.iter().map(|(s, c)| (s.to_string(), *c)).collect(),
        BTreeMap::new(),
    )
}

/// The 2x2 matching form whose diagonal repeats y and off-diagonal x.
pub fn pennies_form() -> GameForm {
    GameForm::deterministic(
        vec!["r1".into(), "r2".into()],
        vec!["c1".into(), "c2".into()],
        vec!["y".into(), "x".into()],
        vec![vec!["y".into(), "x".into()], vec!["x".into(), "y".into()]],
    )
    .expect("static form")
}

/// The environment <2,4> sending x to the stop 1/2 and y through k_3.
pub fn pennies_env() -> Environment {
    Environment::new(
        2,
        4,
        BTreeMap::from([
            ("x".to_string(), Target::Value(q(1, 2))),
            ("y".to_string(), Target::K(3)),
        ]),
    )
    .expect("static environment")
}

/// The four-state escape-hatch arena: q2 may loop, enter the even trap q4
/// or (when present) escape to the odd q1-q3-q2 cycle.
pub fn escape_game(with_q1: bool) -> Result<ParityGame> {
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

/// The three-state cycle arena won surely by the maximizer: q1 self-loops
/// on an even color, q3 (odd) funnels back to q1, q2 stalls or advances.
pub fn cycle_game() -> Result<ParityGame> {
    solitaire_b(
        &[("q1", &["q1"]), ("q2", &["q3", "q2"]), ("q3", &["q1"])],
        &[("q1", 0), ("q2", 0), ("q3", 1)],
    )
}

/// The two-row three-column form with an exit worth 1 in the corner.
pub fn three_column_form() -> GameForm {
    GameForm::deterministic(
        vec!["t".into(), "b".into()],
        vec!["l".into(), "m".into(), "r".into()],
        vec!["u3".into(), "u0".into(), "one".into(), "u4".into()],
        vec![
            vec!["u3".into(), "u0".into(), "one".into()],
            vec!["u4".into(), "u0".into(), "u3".into()],
        ],
    )
    .expect("static form")
}

/// The environment of the three-column form with start color c and
/// checkpoints 3, 0 and 4.
pub fn three_column_env(c: usize) -> Environment {
    Environment::new(
        c,
        4,
        BTreeMap::from([
            ("u3".to_string(), Target::K(3)),
            ("u0".to_string(), Target::K(0)),
            ("u4".to_string(), Target::K(4)),
            ("one".to_string(), Target::Value(Q::one())),
        ]),
    )
    .expect("static environment")
}

/// An arena embedding the three-column form at q0, with the checkpoint
/// states as colored relays bouncing straight back. The whole game has
/// value 1, so the 1-slice carries every state.
pub fn three_column_embedding() -> Result<(ParityGame, Valuation)> {
    let relay = |dest: &str| {
        GameForm::deterministic(
            vec!["go".into()],
            vec!["go".into()],
            vec![dest.to_string()],
            vec![vec![dest.to_string()]],
        )
    };
    let game = ParityGame::new(
        vec!["q0".into(), "u3".into(), "u0".into(), "u4".into()],
        BTreeMap::from([
            ("q0".to_string(), three_column_form()),
            ("u3".to_string(), relay("q0")?),
            ("u0".to_string(), relay("q0")?),
            ("u4".to_string(), relay("q0")?),
        ]),
        BTreeMap::from([
            ("q0".to_string(), 0),
            ("u3".to_string(), 3),
            ("u0".to_string(), 0),
            ("u4".to_string(), 4),
        ]),
        BTreeMap::from([("one".to_string(), Q::one())]),
    )?;
    let values: Valuation = game.states().iter().map(|s| (s.clone(), Q::one())).collect();
    Ok((game, values))
}

/// The two-state arena whose q5 plays coin matching between a relay
/// through the odd color 3 and the stop 1/2.
pub fn matching_embedding() -> Result<(ParityGame, Valuation)> {
    let form = GameForm::deterministic(
        vec!["r1".into(), "r2".into()],
        vec!["c1".into(), "c2".into()],
        vec!["qy".into(), "h".into()],
        vec![vec!["qy".into(), "h".into()], vec!["h".into(), "qy".into()]],
    )?;
    let back = GameForm::deterministic(
        vec!["go".into()],
        vec!["go".into()],
        vec!["q5".into()],
        vec![vec!["q5".into()]],
    )?;
    let game = ParityGame::new(
        vec!["q5".into(), "qy".into()],
        BTreeMap::from([("q5".to_string(), form), ("qy".to_string(), back)]),
        BTreeMap::from([("q5".to_string(), 2), ("qy".to_string(), 3)]),
        BTreeMap::from([("h".to_string(), q(1, 2))]),
    )?;
    let values: Valuation = game.states().iter().map(|s| (s.clone(), q(1, 2))).collect();
    Ok((game, values))
}

/// The size-1 environment separating the two players on the n=2 family
/// member.
pub fn f2_counterexample_env() -> Environment {
    Environment::new(
        0,
        1,
        BTreeMap::from([
            ("y".to_string(), Target::Value(Q::one())),
            ("z".to_string(), Target::Value(Q::zero())),
            ("x0".to_string(), Target::K(0)),
            ("x1".to_string(), Target::K(1)),
        ]),
    )
    .expect("static environment")
}

fn write(dir: &Path, name: &str, contents: String) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| domain(format!("{}: {e}", path.display())))
}

/// Writes every shipped fixture into `dir`.
pub fn write_fixtures(dir: &str) -> Result<()> {
    let dir = Path::new(dir);
    std::fs::create_dir_all(dir).map_err(|e| domain(format!("{}: {e}", dir.display())))?;

    write(dir, "fig1.json", to_json_pretty(&FormFile::from_form(&pennies_form())))?;
    write(dir, "fig1-env.json", to_json_pretty(&pennies_env()))?;
    let fig1 = build_simple_game(&pennies_form(), &pennies_env())?;
    write(
        dir,
        "fig1-game.json",
        to_json_pretty(&GameFile::from_game(&fig1.game, None)?),
    )?;

    for (name, with_q1) in [("fig2-with-q1.json", true), ("fig2-without-q1.json", false)] {
        let game = escape_game(with_q1)?;
        write(dir, name, to_json_pretty(&GameFile::from_game(&game, None)?))?;
    }

    let (fig6, fig6_values) = three_column_embedding()?;
    write(
        dir,
        "fig6.json",
        to_json_pretty(&GameFile::from_game(&fig6, Some(&fig6_values))?),
    )?;

    let fig7 = cycle_game()?;
    let ones: Valuation = fig7.states().iter().map(|s| (s.clone(), Q::one())).collect();
    write(dir, "fig7.json", to_json_pretty(&GameFile::from_game(&fig7, Some(&ones))?))?;
    write(dir, "fig7-values.json", to_json_pretty(&ones))?;

    let f2 = gen_fn(2, &FnPolicy::default())?;
    write(dir, "f2.json", to_json_pretty(&FormFile::from_form(&f2.form)))?;
    write(dir, "f2-counterexample-env.json", to_json_pretty(&f2_counterexample_env()))?;

    let pennies_nf = NormalFormFile {
        actions_a: vec!["r1".into(), "r2".into()],
        actions_b: vec!["c1".into(), "c2".into()],
        matrix: vec![vec![Q::one(), Q::zero()], vec![Q::zero(), Q::one()]],
    };
    write(dir, "pennies-nf.json", to_json_pretty(&pennies_nf))?;
    Ok(())
}
