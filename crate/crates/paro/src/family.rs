//! The F_n family: a two-player form over outcomes {x_0..x_{n-1}, y, z}
//! whose 2x2 top-left core is the coin-matching trap T_n. Only part of the
//! table is pinned down by the construction; the remaining cells are filled
//! by an explicit, serializable policy and flagged in the output.

use std::collections::BTreeMap;

use cspg_core::error::{domain, Result};
use cspg_core::{q, Distribution, GameForm, Q};
use serde::{Deserialize, Serialize};

/// Fill policy for the cells the construction leaves open. The default
/// rules are:
///   - x-carrying rows (a_i, a_{i,i-1}) keep their content against every
///     column;
///   - the a_Ex row plays its exit mixture (y+3z)/4 against non-core
///     columns, and (3y+z)/4 / (y+3z)/4 against b_l / b_r;
///   - the b_Ex column plays (3y+z)/4 / (y+3z)/4 against a_t / a_b;
///   - a_Ex x b_Ex = (3y+z)/4.
/// `overrides` replaces whole cells, keyed "rowAction,colAction", with an
/// outcome-to-weight map.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct FnPolicy {
    #[serde(default)]
    pub overrides: BTreeMap<String, BTreeMap<String, Q>>,
}

/// A generated F_n form together with the list of cells ("row,col") that
/// were filled by policy rather than by the construction itself.
#[derive(Debug, Clone)]
pub struct FnForm {
    pub n: usize,
    pub form: GameForm,
    pub flagged: Vec<String>,
}

fn dirac(o: &str) -> Distribution<String> {
    Distribution::dirac(o.to_string())
}

fn mix(entries: &[(&str, Q)]) -> Distribution<String> {
    Distribution::new(entries.iter().map(|(o, w)| (o.to_string(), w.clone())))
        .expect("static mixture is a distribution")
}

pub fn gen_fn(n: usize, policy: &FnPolicy) -> Result<FnForm> {
    if n < 2 || n % 2 != 0 {
        return Err(domain(format!("the family is defined for even n >= 2, got {n}")));
    }
    let xs: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut outcomes = xs.clone();
    outcomes.push("y".to_string());
    outcomes.push("z".to_string());

    // A's indexed actions carry the odd checkpoints, B's the even ones, so
    // neither player owns a row or column that can loop in its own favor.
    let mut rows = vec!["a_t".to_string(), "a_b".to_string()];
    rows.extend((1..n).step_by(2).map(|i| format!("a_{i}")));
    rows.extend((1..n).step_by(2).map(|i| format!("a_{i}_{}", i - 1)));
    rows.push("a_Ex".to_string());
    let mut cols = vec!["b_l".to_string(), "b_r".to_string()];
    cols.extend((0..n - 1).step_by(2).map(|j| format!("b_{j}")));
    cols.extend((2..n - 1).step_by(2).map(|j| format!("b_{j}_{}", j - 1)));
    cols.push("b_Ex".to_string());

    let uniform_x = {
        let w = Q::one() / Q::from_int(n as i64);
        Distribution::new(xs.iter().map(|x| (x.clone(), w.clone())))
            .expect("uniform mixture")
    };
    let exit_hi = mix(&[("y", q(3, 4)), ("z", q(1, 4))]); // (3y+z)/4
    let exit_lo = mix(&[("y", q(1, 4)), ("z", q(3, 4))]); // (y+3z)/4
    let pair = |i: usize| mix(&[(&format!("x{i}"), q(1, 2)), (&format!("x{}", i - 1), q(1, 2))]);

    // Content of a row / column by its own label, outside the core.
    enum Kind {
        Core(bool),     // false = t/l, true = b/r
        X(usize),       // x_i
        Pair(usize),    // (x_i + x_{i-1})/2
        Ex,
    }
    let classify = |name: &str, core0: &str, core1: &str| -> Kind {
        if name == core0 {
            Kind::Core(false)
        } else if name == core1 {
            Kind::Core(true)
        } else if name.ends_with("Ex") {
            Kind::Ex
        } else {
            let idx: Vec<&str> = name.splitn(2, '_').nth(1).unwrap().split('_').collect();
            if idx.len() == 2 {
                Kind::Pair(idx[0].parse().unwrap())
            } else {
                Kind::X(idx[0].parse().unwrap())
            }
        }
    };

    let mut flagged = Vec::new();
    let mut table = Vec::with_capacity(rows.len());
    for r in &rows {
        let rk = classify(r, "a_t", "a_b");
        let mut row_cells = Vec::with_capacity(cols.len());
        for cname in &cols {
            let ck = classify(cname, "b_l", "b_r");
            // Cells fixed by the construction: the 2x2 core, x-rows against
            // the core columns, and x-columns against the core rows.
            let (cell, fixed) = match (&rk, &ck) {
                (Kind::Core(false), Kind::Core(false)) => (uniform_x.clone(), true),
                (Kind::Core(false), Kind::Core(true)) | (Kind::Core(true), Kind::Core(false)) => {
                    (exit_hi.clone(), true)
                }
                (Kind::Core(true), Kind::Core(true)) => (exit_lo.clone(), true),
                (Kind::X(i), Kind::Core(_)) => (dirac(&format!("x{i}")), true),
                (Kind::Pair(i), Kind::Core(_)) => (pair(*i), true),
                (Kind::Core(_), Kind::X(j)) => (dirac(&format!("x{j}")), true),
                (Kind::Core(_), Kind::Pair(j)) => (pair(*j), true),
                // Policy-filled cells below.
                (Kind::X(i), _) => (dirac(&format!("x{i}")), false),
                (Kind::Pair(i), _) => (pair(*i), false),
                (Kind::Ex, Kind::Core(false)) => (exit_hi.clone(), false),
                (Kind::Ex, Kind::Core(true)) => (exit_lo.clone(), false),
                (Kind::Ex, Kind::Ex) => (exit_hi.clone(), false),
                (Kind::Ex, _) => (exit_lo.clone(), false),
                (Kind::Core(false), Kind::Ex) => (exit_hi.clone(), false),
                (Kind::Core(true), Kind::Ex) => (exit_lo.clone(), false),
            };
            let key = format!("{r},{cname}");
            let cell = match policy.overrides.get(&key) {
                Some(weights) => {
                    flagged.push(format!("{key} (override)"));
                    Distribution::new(weights.clone())?
                }
                None => {
                    if !fixed {
                        flagged.push(key);
                    }
                    cell
                }
            };
            row_cells.push(cell);
        }
        table.push(row_cells);
    }
    let form = GameForm::new(rows, cols, outcomes, table)?;
    Ok(FnForm { n, form, flagged })
}
