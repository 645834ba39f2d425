//! Emission of the positional-optimizability decision formula over
//! nonlinear real arithmetic, one quantified sentence per (form, level):
//! for every encoded environment of size at most l-1 there exist supports
//! and mixed strategies for both players that witness the value.

use std::fmt::Write as _;
use std::process::Command;

use cspg_core::error::{domain, unsupported, Result};
use cspg_core::{GameForm, Player};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverVerdict {
    Sat,
    Unsat,
    Unknown,
}

fn conj(parts: &[String]) -> String {
    match parts.len() {
        0 => "true".to_string(),
        1 => parts[0].clone(),
        _ => format!("(and {})", parts.join(" ")),
    }
}

fn disj(parts: &[String]) -> String {
    match parts.len() {
        0 => "false".to_string(),
        1 => parts[0].clone(),
        _ => format!("(or {})", parts.join(" ")),
    }
}

/// Index of the single outcome in cell (i, j) of a deterministic form.
fn rho(form: &GameForm, i: usize, j: usize) -> usize {
    let (o, _) = form.cell(i, j).support().next().expect("nonempty cell");
    form.outcomes().iter().position(|x| x == o).expect("declared outcome")
}

/// Either there is support mass on an exit outcome in this line, or the
/// top checkpoint index seen from the support has the player's parity.
fn max_integer(form: &GameForm, player: Player, line: usize, l: usize) -> String {
    let (own, parity) = match player {
        Player::A => (form.actions_a().len(), 0),
        Player::B => (form.actions_b().len(), 1),
    };
    let tag = if player == Player::A { "A" } else { "B" };
    let cell = |i: usize| match player {
        Player::A => rho(form, i, line),
        Player::B => rho(form, line, i),
    };
    let exit = disj(
        &(0..own)
            .map(|i| format!("(and (= S_{tag}_{} 1) (= alpha_{} 1))", i + 1, cell(i)))
            .collect::<Vec<_>>(),
    );
    let mut tops = Vec::new();
    for m in (0..=l).filter(|m| m % 2 == parity) {
        let reached = disj(
            &(0..own)
                .map(|i| format!("(and (= S_{tag}_{} 1) (= k_{} {m}))", i + 1, cell(i)))
                .collect::<Vec<_>>(),
        );
        let bounded = conj(
            &(0..own)
                .map(|i| format!("(=> (= S_{tag}_{} 1) (<= k_{} {m}))", i + 1, cell(i)))
                .collect::<Vec<_>>(),
        );
        tops.push(conj(&[format!("(>= {m} c)"), reached, bounded]));
    }
    disj(&[exit, disj(&tops)])
}

fn val_side(form: &GameForm, player: Player) -> String {
    let (own, opp) = match player {
        Player::A => (form.actions_a().len(), form.actions_b().len()),
        Player::B => (form.actions_b().len(), form.actions_a().len()),
    };
    let tag = if player == Player::A { "A" } else { "B" };
    let cmp = if player == Player::A { ">=" } else { "<=" };
    let mut lines = Vec::new();
    for j in 0..opp {
        let terms: Vec<String> = (0..own)
            .map(|i| {
                let o = match player {
                    Player::A => rho(form, i, j),
                    Player::B => rho(form, j, i),
                };
                format!(
                    "(* sigma_{tag}_{} (+ (* alpha_{o} v_{o}) (* (- 1 alpha_{o}) u)))",
                    i + 1
                )
            })
            .collect();
        let sum = if terms.len() == 1 {
            terms[0].clone()
        } else {
            format!("(+ {})", terms.join(" "))
        };
        lines.push(format!("({cmp} {sum} u)"));
    }
    conj(&lines)
}

fn strategy_side(form: &GameForm, player: Player, l: usize) -> String {
    let own = form.actions(player).len();
    let opp = form.actions(player.opponent()).len();
    let tag = if player == Player::A { "A" } else { "B" };
    let indicator = conj(
        &(1..=own)
            .map(|i| format!("(or (= S_{tag}_{i} 0) (= S_{tag}_{i} 1))"))
            .collect::<Vec<_>>(),
    );
    let bounds = conj(
        &(1..=own)
            .map(|i| format!("(and (<= 0 sigma_{tag}_{i}) (<= sigma_{tag}_{i} 1))"))
            .collect::<Vec<_>>(),
    );
    let total = {
        let terms: Vec<String> = (1..=own).map(|i| format!("sigma_{tag}_{i}")).collect();
        let sum = if terms.len() == 1 {
            terms[0].clone()
        } else {
            format!("(+ {})", terms.join(" "))
        };
        format!("(= {sum} 1)")
    };
    let supp = conj(
        &(1..=own)
            .map(|i| {
                format!(
                    "(and (=> (> sigma_{tag}_{i} 0) (= S_{tag}_{i} 1)) (=> (= S_{tag}_{i} 1) (> sigma_{tag}_{i} 0)))"
                )
            })
            .collect::<Vec<_>>(),
    );
    let max_lines = conj(&(0..opp).map(|j| max_integer(form, player, j, l)).collect::<Vec<_>>());
    conj(&[indicator, bounds, total, supp, val_side(form, player), max_lines])
}

/// The decision formula for level `l`, as a complete SMT-LIB 2 script.
pub fn emit_paro_formula(form: &GameForm, l: usize) -> Result<String> {
    if !form.is_deterministic() {
        return Err(unsupported(
            "the decision formula is defined for deterministic game forms only",
        ));
    }
    let n_out = form.outcomes().len();
    let n_a = form.actions_a().len();
    let n_b = form.actions_b().len();

    let mut s = String::new();
    writeln!(s, "(set-logic NRA)").unwrap();
    writeln!(
        s,
        "; positional optimizability up to {l} of a {n_a} x {n_b} form over {n_out} outcomes"
    )
    .unwrap();
    for (i, o) in form.outcomes().iter().enumerate() {
        writeln!(s, "; outcome {i} = {o}").unwrap();
    }
    for (i, a) in form.actions_a().iter().enumerate() {
        writeln!(s, "; row {} = {a}", i + 1).unwrap();
    }
    for (j, b) in form.actions_b().iter().enumerate() {
        writeln!(s, "; column {} = {b}", j + 1).unwrap();
    }

    let mut universals = vec!["(c Real)".to_string()];
    for i in 0..n_out {
        universals.push(format!("(alpha_{i} Real)"));
    }
    for i in 0..n_out {
        universals.push(format!("(v_{i} Real)"));
    }
    for i in 0..n_out {
        universals.push(format!("(k_{i} Real)"));
    }
    let mut existentials = vec!["(u Real)".to_string()];
    for i in 1..=n_a {
        existentials.push(format!("(S_A_{i} Real)"));
    }
    for i in 1..=n_a {
        existentials.push(format!("(sigma_A_{i} Real)"));
    }
    for j in 1..=n_b {
        existentials.push(format!("(S_B_{j} Real)"));
    }
    for j in 1..=n_b {
        existentials.push(format!("(sigma_B_{j} Real)"));
    }

    let mut guard = vec!["(or (= c 0) (= c 1))".to_string()];
    for i in 0..n_out {
        guard.push(format!("(or (= alpha_{i} 0) (= alpha_{i} 1))"));
    }
    for i in 0..n_out {
        guard.push(format!("(and (<= 0 v_{i}) (<= v_{i} 1))"));
    }
    for i in 0..n_out {
        let ints = disj(&(0..=l).map(|p| format!("(= k_{i} {p})")).collect::<Vec<_>>());
        guard.push(format!(
            "(and {ints} (=> (= c 0) (<= k_{i} (- {l} 1))))"
        ));
    }

    let body = conj(&[
        "(<= 0 u)".to_string(),
        "(<= u 1)".to_string(),
        strategy_side(form, Player::A, l),
        strategy_side(form, Player::B, l),
    ]);

    writeln!(s, "(assert").unwrap();
    writeln!(s, "  (forall ({})", universals.join(" ")).unwrap();
    writeln!(s, "    (=> {}", conj(&guard)).unwrap();
    writeln!(s, "        (exists ({})", existentials.join(" ")).unwrap();
    writeln!(s, "          {body}))))").unwrap();
    writeln!(s, "(check-sat)").unwrap();
    Ok(s)
}

/// Runs a configured external solver on a formula; the verdict is the
/// first line of its output.
pub fn run_solver(solver: &str, formula: &str) -> Result<SolverVerdict> {
    let dir = std::env::temp_dir();
    let path = dir.join(format!("paro-{}.smt2", std::process::id()));
    std::fs::write(&path, formula).map_err(|e| domain(format!("cannot write formula: {e}")))?;
    let out = Command::new(solver)
        .arg(&path)
        .output()
        .map_err(|e| domain(format!("cannot run solver {solver:?}: {e}")))?;
    let _ = std::fs::remove_file(&path);
    let text = String::from_utf8_lossy(&out.stdout);
    for line in text.lines() {
        match line.trim() {
            "sat" => return Ok(SolverVerdict::Sat),
            "unsat" => return Ok(SolverVerdict::Unsat),
            "unknown" => return Ok(SolverVerdict::Unknown),
            _ => {}
        }
    }
    Err(domain(format!(
        "solver produced no verdict line: {:?}",
        text.lines().next().unwrap_or("")
    )))
}
