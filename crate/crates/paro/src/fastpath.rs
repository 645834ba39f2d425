//! Cheap sufficient conditions for membership in the full intersection:
//! turn-based forms, determined deterministic forms, and forms with at
//! most two outcomes always admit positional optimal strategies.

use cspg_core::GameForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FastPath {
    InParO,
    NoVerdict,
}

/// Determinedness check size cap: 2^|O| valuations are enumerated.
const MAX_OUTCOMES: usize = 16;

/// A deterministic form is determined if under every 0/1 valuation of the
/// outcomes it has an all-ones row or an all-zeros column.
pub fn is_determined(form: &GameForm) -> Option<bool> {
    if !form.is_deterministic() || form.outcomes().len() > MAX_OUTCOMES {
        return None;
    }
    let outcomes = form.outcomes();
    let rows = form.actions_a().len();
    let cols = form.actions_b().len();
    // cell_outcome[i][j] = index of the single outcome in that cell.
    let grid: Vec<Vec<usize>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let (o, _) = form.cell(i, j).support().next().expect("nonempty cell");
                    outcomes.iter().position(|x| x == o).expect("declared outcome")
                })
                .collect()
        })
        .collect();
    for val in 0u64..(1 << outcomes.len()) {
        let ones = |o: usize| val >> o & 1 == 1;
        let winning_row = (0..rows).any(|i| (0..cols).all(|j| ones(grid[i][j])));
        let losing_col = (0..cols).any(|j| (0..rows).all(|i| !ones(grid[i][j])));
        if !winning_row && !losing_col {
            return Some(false);
        }
    }
    Some(true)
}

pub fn fast_path(form: &GameForm) -> FastPath {
    if form.outcomes().len() <= 2 {
        return FastPath::InParO;
    }
    if form.is_player_a_form() || form.is_player_b_form() {
        return FastPath::InParO;
    }
    if is_determined(form) == Some(true) {
        return FastPath::InParO;
    }
    FastPath::NoVerdict
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(a: &[&str], b: &[&str], o: &[&str], cells: &[&[&str]]) -> GameForm {
        GameForm::deterministic(
            a.iter().map(|s| s.to_string()).collect(),
            b.iter().map(|s| s.to_string()).collect(),
            o.iter().map(|s| s.to_string()).collect(),
            cells
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn two_outcome_forms_qualify() {
        let f = det(&["r1", "r2"], &["c1", "c2"], &["y", "x"], &[&["y", "x"], &["x", "y"]]);
        assert_eq!(fast_path(&f), FastPath::InParO);
        // Coin matching over two outcomes is famously undetermined.
        assert_eq!(is_determined(&f), Some(false));
    }

    #[test]
    fn solo_forms_qualify() {
        let f = det(&["go"], &["l", "r"], &["p", "q", "s"], &[&["p", "q"]]);
        assert_eq!(fast_path(&f), FastPath::InParO);
    }

    #[test]
    fn determinedness_separates_three_outcome_forms() {
        // A's first row ignores B entirely; case analysis on the valuation
        // always yields an all-ones row or an all-zeros column.
        let f = det(
            &["top", "bot"],
            &["l", "r"],
            &["p", "q", "s"],
            &[&["p", "p"], &["q", "s"]],
        );
        assert_eq!(is_determined(&f), Some(true));
        assert_eq!(fast_path(&f), FastPath::InParO);

        // Rock-paper-scissors: under win=1, lose=draw=0 neither a winning
        // row nor a losing column exists.
        let rps = det(
            &["rock", "paper", "scissors"],
            &["rock", "paper", "scissors"],
            &["win", "lose", "draw"],
            &[
                &["draw", "lose", "win"],
                &["win", "draw", "lose"],
                &["lose", "win", "draw"],
            ],
        );
        assert_eq!(is_determined(&rps), Some(false));
        assert_eq!(fast_path(&rps), FastPath::NoVerdict);
    }
}
