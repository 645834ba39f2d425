//! JSON file formats: games, standalone forms, strategies, valuations and
//! matrix games. Rationals travel as strings ("3/4") so no float parsing is
//! ever involved; every semantic rejection names the offending entry.

use std::collections::BTreeMap;

use cspg_arena::{ParityGame, PositionalStrategy, Valuation};
use cspg_core::error::{domain, Result};
use cspg_core::{Distribution, GameForm, MixedStrategy, NormalFormGame, Player, Q};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Names are restricted to [A-Za-z0-9_]+ so they can double as JSON keys
/// and SMT-LIB comment tokens without quoting.
pub fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_name(kind: &str, s: &str) -> Result<()> {
    if valid_name(s) {
        Ok(())
    } else {
        Err(domain(format!("{kind} name {s:?} must match [A-Za-z0-9_]+")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateEntry {
    pub name: String,
    pub color: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StopEntry {
    pub name: String,
    pub value: Q,
}

/// One game form: the table maps "rowAction,colAction" to a list of
/// [target, probability] pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormFile {
    pub actions_a: Vec<String>,
    pub actions_b: Vec<String>,
    pub table: BTreeMap<String, Vec<(String, Q)>>,
}

impl FormFile {
    /// Outcomes are taken in first-appearance order, row-major over the
    /// action grid, so the result does not depend on the map's key order.
    pub fn to_form(&self) -> Result<GameForm> {
        for a in self.actions_a.iter().chain(&self.actions_b) {
            check_name("action", a)?;
        }
        let mut outcomes: Vec<String> = Vec::new();
        let mut cells = Vec::with_capacity(self.actions_a.len());
        for a in &self.actions_a {
            let mut row = Vec::with_capacity(self.actions_b.len());
            for b in &self.actions_b {
                let key = format!("{a},{b}");
                let entries = self
                    .table
                    .get(&key)
                    .ok_or_else(|| domain(format!("table is missing cell {key:?}")))?;
                for (o, _) in entries {
                    check_name("outcome", o)?;
                    if !outcomes.iter().any(|x| x == o) {
                        outcomes.push(o.clone());
                    }
                }
                let cell = Distribution::new(entries.iter().map(|(o, p)| (o.clone(), p.clone())))
                    .map_err(|e| domain(format!("cell {key:?}: {e}")))?;
                row.push(cell);
            }
            cells.push(row);
        }
        for key in self.table.keys() {
            let known = key.split_once(',').is_some_and(|(a, b)| {
                self.actions_a.iter().any(|x| x == a) && self.actions_b.iter().any(|x| x == b)
            });
            if !known {
                return Err(domain(format!("table cell {key:?} uses undeclared actions")));
            }
        }
        GameForm::new(self.actions_a.clone(), self.actions_b.clone(), outcomes, cells)
    }

    pub fn from_form(form: &GameForm) -> FormFile {
        let mut table = BTreeMap::new();
        for (i, a) in form.actions_a().iter().enumerate() {
            for (j, b) in form.actions_b().iter().enumerate() {
                let entries: Vec<(String, Q)> = form
                    .cell(i, j)
                    .support()
                    .map(|(o, p)| (o.clone(), p.clone()))
                    .collect();
                table.insert(format!("{a},{b}"), entries);
            }
        }
        FormFile {
            actions_a: form.actions_a().to_vec(),
            actions_b: form.actions_b().to_vec(),
            table,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameFile {
    pub schema_version: u32,
    pub states: Vec<StateEntry>,
    #[serde(default)]
    pub stopping: Vec<StopEntry>,
    pub forms: BTreeMap<String, FormFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<BTreeMap<String, Q>>,
}

impl GameFile {
    pub fn to_game(&self) -> Result<(ParityGame, Option<Valuation>)> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(domain(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.states.is_empty() {
            return Err(domain("the states list is empty"));
        }
        let mut states = Vec::with_capacity(self.states.len());
        let mut colors = BTreeMap::new();
        for s in &self.states {
            check_name("state", &s.name)?;
            if colors.insert(s.name.clone(), s.color).is_some() {
                return Err(domain(format!("duplicate state {:?}", s.name)));
            }
            states.push(s.name.clone());
        }
        let mut stopping = BTreeMap::new();
        for s in &self.stopping {
            check_name("stopping state", &s.name)?;
            if !s.value.in_unit() {
                return Err(domain(format!("stopping value {} of {:?} outside [0,1]", s.value, s.name)));
            }
            if stopping.insert(s.name.clone(), s.value.clone()).is_some() {
                return Err(domain(format!("duplicate stopping state {:?}", s.name)));
            }
        }
        let mut forms = BTreeMap::new();
        for (name, ff) in &self.forms {
            forms.insert(
                name.clone(),
                ff.to_form().map_err(|e| domain(format!("form at {name:?}: {e}")))?,
            );
        }
        let game = ParityGame::new(states, forms, colors, stopping)?;
        let values = match &self.values {
            None => None,
            Some(map) => Some(valuation_from_file(&game, map)?),
        };
        Ok((game, values))
    }

    pub fn from_game(game: &ParityGame, values: Option<&Valuation>) -> Result<GameFile> {
        let mut forms = BTreeMap::new();
        for q in game.states() {
            forms.insert(q.clone(), FormFile::from_form(game.form(q)?));
        }
        Ok(GameFile {
            schema_version: SCHEMA_VERSION,
            states: game
                .states()
                .iter()
                .map(|q| {
                    Ok(StateEntry {
                        name: q.clone(),
                        color: game.color(q)?,
                    })
                })
                .collect::<Result<_>>()?,
            stopping: game
                .stopping()
                .iter()
                .map(|(n, v)| StopEntry {
                    name: n.clone(),
                    value: v.clone(),
                })
                .collect(),
            forms,
            values: values.map(|v| v.clone()),
        })
    }
}

/// A positional strategy file: per state, the mixed action choice.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StrategyFile {
    pub player: Player,
    pub states: BTreeMap<String, BTreeMap<String, Q>>,
}

impl StrategyFile {
    pub fn to_strategy(&self) -> Result<PositionalStrategy> {
        let mut choice = BTreeMap::new();
        for (q, weights) in &self.states {
            let weights = Distribution::new(weights.iter().map(|(a, p)| (a.clone(), p.clone())))
                .map_err(|e| domain(format!("strategy at {q:?}: {e}")))?;
            choice.insert(
                q.clone(),
                MixedStrategy {
                    owner: self.player,
                    weights,
                },
            );
        }
        Ok(PositionalStrategy {
            owner: self.player,
            choice,
        })
    }

    pub fn from_strategy(s: &PositionalStrategy) -> StrategyFile {
        StrategyFile {
            player: s.owner,
            states: s
                .choice
                .iter()
                .map(|(q, m)| {
                    (
                        q.clone(),
                        m.weights.support().map(|(a, p)| (a.clone(), p.clone())).collect(),
                    )
                })
                .collect(),
        }
    }
}

/// A zero-sum matrix game: Player A maximizes the tabulated payoff.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormalFormFile {
    pub actions_a: Vec<String>,
    pub actions_b: Vec<String>,
    pub matrix: Vec<Vec<Q>>,
}

impl NormalFormFile {
    pub fn to_game(&self) -> Result<NormalFormGame> {
        NormalFormGame::new(self.actions_a.clone(), self.actions_b.clone(), self.matrix.clone())
    }
}

pub fn valuation_from_file(game: &ParityGame, map: &BTreeMap<String, Q>) -> Result<Valuation> {
    for q in map.keys() {
        if !game.states().contains(q) {
            return Err(domain(format!("valuation entry for unknown state {q:?}")));
        }
    }
    for q in game.states() {
        if !map.contains_key(q) {
            return Err(domain(format!("valuation is missing state {q:?}")));
        }
    }
    Ok(map.clone())
}

/// Reads and deserializes a JSON file; parse failures keep serde's
/// line/column diagnostics and name the file.
pub fn read_json<T: DeserializeOwned>(path: &str) -> Result<T> {
    let bytes = std::fs::read(path).map_err(|e| domain(format!("{path}: {e}")))?;
    serde_json::from_slice(&bytes).map_err(|e| domain(format!("{path}: {e}")))
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable report type");
    out.push('\n');
    out
}
