// Temporary debugging helper; not part of the suite.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use cspg::files::{to_json_pretty, GameFile};
use cspg::oracle::zielonka_values;
use cspg_arena::{ParityGame, Valuation};
use cspg_core::{q, Distribution, GameForm, Q};
use cspg_synthesis::synthesize;

struct Gen {
    max_states: usize,
    max_actions: usize,
    max_color: usize,
    stops: usize,
    stochastic: bool,
}

fn random_turn_based(rng: &mut ChaCha8Rng, g: &Gen) -> ParityGame {
    let n = rng.gen_range(2..=g.max_states);
    let states: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
    let stop_values = [q(1, 4), q(1, 2), q(3, 4), Q::zero(), Q::one()];
    let stopping: BTreeMap<String, Q> = (0..g.stops)
        .map(|i| (format!("s{i}"), stop_values[rng.gen_range(0..stop_values.len())].clone()))
        .collect();
    let mut targets: Vec<String> = states.clone();
    targets.extend(stopping.keys().cloned());

    let mut forms = BTreeMap::new();
    let mut colors = BTreeMap::new();
    for s in &states {
        colors.insert(s.clone(), rng.gen_range(0..=g.max_color));
        let owner_a = rng.gen_bool(0.5);
        let m = rng.gen_range(1..=g.max_actions);
        let acts: Vec<String> = (0..m).map(|i| format!("act{i}")).collect();
        let mut cells = Vec::with_capacity(m);
        let mut outcomes: Vec<String> = Vec::new();
        let mut note = |o: &String| {
            if !outcomes.iter().any(|x| x == o) {
                outcomes.push(o.clone());
            }
        };
        for _ in 0..m {
            let t0 = targets[rng.gen_range(0..targets.len())].clone();
            let cell = if g.stochastic && rng.gen_bool(0.4) {
                let mut t1 = targets[rng.gen_range(0..targets.len())].clone();
                while t1 == t0 {
                    t1 = targets[rng.gen_range(0..targets.len())].clone();
                }
                let p = if rng.gen_bool(0.5) { q(1, 2) } else { q(1, 3) };
                note(&t0);
                note(&t1);
                Distribution::new([(t0, p.clone()), (t1, Q::one() - p)]).unwrap()
            } else {
                note(&t0);
                Distribution::dirac(t0)
            };
            cells.push(cell);
        }
        let form = if owner_a {
            GameForm::new(
                acts,
                vec!["w".into()],
                outcomes,
                cells.into_iter().map(|c| vec![c]).collect(),
            )
        } else {
            GameForm::new(vec!["w".into()], acts, outcomes, vec![cells])
        };
        forms.insert(s.clone(), form.unwrap());
    }
    ParityGame::new(states, forms, colors, stopping).unwrap()
}

#[test]
fn dump_round2_game() {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let gen = Gen {
        max_states: 8,
        max_actions: 3,
        max_color: 2,
        stops: 0,
        stochastic: false,
    };
    let mut game = None;
    for _ in 0..3 {
        game = Some(random_turn_based(&mut rng, &gen));
    }
    let game = game.unwrap();
    let vz: Valuation = zielonka_values(&game).unwrap();
    eprintln!("{}", to_json_pretty(&GameFile::from_game(&game, Some(&vz)).unwrap()));
    let r = synthesize(&game, &vz);
    eprintln!("synthesize: {:?}", r.as_ref().err());
    assert!(r.is_ok());
}
