//! The command-line surface. Every subcommand reads JSON artifacts,
//! invokes one library operation and prints a deterministic plain-text
//! report; verdicts map onto exit codes (0 positive, 1 negative, 2 input
//! error, 3 capacity, 4 internal invariant).

use std::fmt::Write as _;

use clap::{Arg, Command};
use cspg_arena::{check_strategy, CheckKind, ParityGame, Valuation};
use cspg_core::error::{domain, Error, Result};
use cspg_core::{solve_matrix_game, Player, Q};
use cspg_local::{simple_game_value, Environment};
use cspg_paro::{
    check_paro, emit_paro_formula, gen_fn, run_solver, FnPolicy, ParoOutcome, PlayerSel,
    SearchConfig, SolverVerdict,
};
use cspg_synthesis::{compute_env, new_col, slice, synthesize};
use serde::Deserialize;

use crate::files::{
    read_json, to_json_pretty, valuation_from_file, FormFile, GameFile, NormalFormFile,
    StrategyFile,
};
use crate::oracle::oracle_values;

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Tool-wide knobs; flags override the config file, which overrides the
/// defaults. Environment variables are never consulted.
#[derive(Debug, Clone, Deserialize, Default)]
pub struct Config {
    pub opponent_cap: Option<usize>,
    pub paro_budget: Option<usize>,
    pub grid_denominator: Option<u64>,
}

impl Config {
    fn opponent_cap(&self) -> usize {
        self.opponent_cap.unwrap_or(cspg_arena::DEFAULT_OPPONENT_CAP)
    }

    fn search(&self) -> SearchConfig {
        let mut cfg = SearchConfig::default();
        if let Some(b) = self.paro_budget {
            cfg.budget = b;
        }
        if let Some(d) = self.grid_denominator {
            cfg.grid_denominator = d;
        }
        cfg
    }
}

fn cli() -> Command {
    Command::new("cspg")
        .about("Exact solvers and classifiers for concurrent stochastic parity games")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .arg(Arg::new("config").long("config").value_name("FILE").global(true))
        .subcommand(
            Command::new("solve-matrix")
                .about("Exact minimax of a zero-sum matrix game")
                .arg(Arg::new("file").required(true)),
        )
        .subcommand(
            Command::new("simple-value")
                .about("Value of a game form within an environment")
                .arg(Arg::new("form").required(true))
                .arg(Arg::new("env").required(true)),
        )
        .subcommand(
            Command::new("newcol")
                .about("The color promotion operator at one state of a value slice")
                .arg(Arg::new("game").required(true))
                .arg(Arg::new("values").long("values").required(true))
                .arg(Arg::new("state").long("state").required(true))
                .arg(Arg::new("vcol").long("vcol").required(true)),
        )
        .subcommand(
            Command::new("synthesize")
                .about("Positional optimal strategies for both players from declared values")
                .arg(Arg::new("game").required(true))
                .arg(Arg::new("values").long("values").required(true))
                .arg(Arg::new("slice").long("slice").value_name("U"))
                .arg(Arg::new("trace").long("trace").value_name("OUT")),
        )
        .subcommand(
            Command::new("verify")
                .about("Check a positional strategy against a valuation")
                .arg(Arg::new("game").required(true))
                .arg(Arg::new("strategy").long("strategy").required(true))
                .arg(Arg::new("valuation").long("valuation").required(true))
                .arg(
                    Arg::new("kind")
                        .long("kind")
                        .required(true)
                        .value_parser(["parity-dominates", "guarantees"]),
                ),
        )
        .subcommand(
            Command::new("paro")
                .subcommand_required(true)
                .about("Positional optimizability classification")
                .subcommand(
                    Command::new("check")
                        .arg(Arg::new("form").required(true))
                        .arg(Arg::new("n").short('n').required(true))
                        .arg(
                            Arg::new("player")
                                .long("player")
                                .value_parser(["A", "B", "both"])
                                .default_value("both"),
                        )
                        .arg(Arg::new("budget").long("budget")),
                )
                .subcommand(
                    Command::new("smt")
                        .arg(Arg::new("form").required(true))
                        .arg(Arg::new("l").short('l').required(true))
                        .arg(Arg::new("out").short('o').long("out"))
                        .arg(Arg::new("solver").long("solver")),
                ),
        )
        .subcommand(
            Command::new("gen-fn")
                .about("Generate the n-th member of the separating family")
                .arg(Arg::new("n").required(true))
                .arg(Arg::new("policy").long("policy")),
        )
        .subcommand(
            Command::new("oracle")
                .subcommand_required(true)
                .about("Brute-force reference computations")
                .subcommand(Command::new("value").arg(Arg::new("game").required(true))),
        )
        .subcommand(
            Command::new("gen-fixtures")
                .hide(true)
                .arg(Arg::new("dir").required(true)),
        )
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Unsupported(_) => EXIT_INPUT,
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::Internal(_) => EXIT_INTERNAL,
    }
}

/// Runs one invocation; returns the exit code and the full report text.
pub fn run_command<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut args: Vec<String> = vec!["cspg".to_string()];
    args.extend(argv.into_iter().map(Into::into));
    let matches = match cli().try_get_matches_from(&args) {
        Ok(m) => m,
        Err(e) if e.use_stderr() => return (EXIT_INPUT, e.to_string()),
        Err(e) => return (EXIT_POSITIVE, e.to_string()),
    };
    let config = match matches.get_one::<String>("config") {
        Some(path) => match read_json::<Config>(path) {
            Ok(c) => c,
            Err(e) => return (EXIT_INPUT, format!("{e}\n")),
        },
        None => Config::default(),
    };
    let result = match matches.subcommand() {
        Some(("solve-matrix", m)) => cmd_solve_matrix(m.get_one::<String>("file").unwrap()),
        Some(("simple-value", m)) => cmd_simple_value(
            m.get_one::<String>("form").unwrap(),
            m.get_one::<String>("env").unwrap(),
        ),
        Some(("newcol", m)) => cmd_newcol(m),
        Some(("synthesize", m)) => cmd_synthesize(m),
        Some(("verify", m)) => cmd_verify(m, &config),
        Some(("paro", m)) => match m.subcommand() {
            Some(("check", m)) => cmd_paro_check(m, &config),
            Some(("smt", m)) => cmd_paro_smt(m),
            _ => unreachable!("subcommand required"),
        },
        Some(("gen-fn", m)) => cmd_gen_fn(m),
        Some(("oracle", m)) => match m.subcommand() {
            Some(("value", m)) => cmd_oracle_value(m.get_one::<String>("game").unwrap(), &config),
            _ => unreachable!("subcommand required"),
        },
        Some(("gen-fixtures", m)) => crate::fixtures::write_fixtures(m.get_one::<String>("dir").unwrap())
            .map(|()| (EXIT_POSITIVE, "fixtures written\n".to_string())),
        _ => unreachable!("subcommand required"),
    };
    match result {
        Ok((code, report)) => (code, report),
        Err(e) => (exit_code_for(&e), format!("{e}\n")),
    }
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| domain(format!("{what} must be a natural number, got {s:?}")))
}

fn cmd_solve_matrix(path: &str) -> Result<(i32, String)> {
    let nf: NormalFormFile = read_json(path)?;
    let game = nf.to_game()?;
    let sol = solve_matrix_game(&game)?;
    let mut out = format!("value {}\n", sol.value);
    for (player, strat) in [(Player::A, &sol.strategy_a), (Player::B, &sol.strategy_b)] {
        write!(out, "{player}:").unwrap();
        for (a, p) in strat.weights.support() {
            write!(out, " {a}={p}").unwrap();
        }
        out.push('\n');
    }
    Ok((EXIT_POSITIVE, out))
}

fn cmd_simple_value(form_path: &str, env_path: &str) -> Result<(i32, String)> {
    let form = read_json::<FormFile>(form_path)?.to_form()?;
    let env: Environment = read_json(env_path)?;
    let sol = simple_game_value(&form, &env)?;
    if sol.certified {
        Ok((EXIT_POSITIVE, format!("{}\n", sol.value)))
    } else {
        Ok((
            EXIT_NEGATIVE,
            format!("uncertified: bounds {} {}\n", sol.lower, sol.upper),
        ))
    }
}

fn load_game_and_values(
    game_path: &str,
    values_path: Option<&String>,
) -> Result<(ParityGame, Option<Valuation>)> {
    let gf: GameFile = read_json(game_path)?;
    let (game, embedded) = gf.to_game()?;
    let values = match values_path {
        Some(path) => {
            let map = read_json(path)?;
            Some(valuation_from_file(&game, &map)?)
        }
        None => embedded,
    };
    Ok((game, values))
}

fn cmd_newcol(m: &clap::ArgMatches) -> Result<(i32, String)> {
    let (game, values) = load_game_and_values(
        m.get_one::<String>("game").unwrap(),
        m.get_one::<String>("values"),
    )?;
    let values = values.ok_or_else(|| domain("newcol needs declared values (--values)"))?;
    let state = m.get_one::<String>("state").unwrap();
    let vcol: std::collections::BTreeMap<String, usize> =
        read_json(m.get_one::<String>("vcol").unwrap())?;
    let u = values
        .get(state)
        .ok_or_else(|| domain(format!("valuation is missing state {state:?}")))?
        .clone();
    let ctx = slice(&game, &values, &u)?;
    let n = new_col(&ctx, &vcol, state)?;
    Ok((EXIT_POSITIVE, format!("{n}\n")))
}

fn cmd_synthesize(m: &clap::ArgMatches) -> Result<(i32, String)> {
    let (game, values) = load_game_and_values(
        m.get_one::<String>("game").unwrap(),
        m.get_one::<String>("values"),
    )?;
    let values = values.ok_or_else(|| domain("synthesize needs declared values (--values)"))?;
    if let Some(u) = m.get_one::<String>("slice") {
        // Slice mode: run the coloring fixpoint for one value only.
        let u: Q = u.parse().map_err(|e| domain(format!("--slice: {e}")))?;
        let ctx = slice(&game, &values, &u)?;
        let (vcol, _, trace) = compute_env(&ctx)?;
        if let Some(out) = m.get_one::<String>("trace") {
            std::fs::write(out, to_json_pretty(&trace))
                .map_err(|e| domain(format!("{out}: {e}")))?;
        }
        let mut report = format!("slice {u}: fixpoint after {} steps\n", trace.len());
        for (q, c) in &vcol {
            writeln!(report, "vcol {q} = {c}").unwrap();
        }
        return Ok((EXIT_POSITIVE, report));
    }
    let (sa, sb, rep) = synthesize(&game, &values)?;
    if let Some(out) = m.get_one::<String>("trace") {
        std::fs::write(out, to_json_pretty(&rep)).map_err(|e| domain(format!("{out}: {e}")))?;
    }
    let mut report = format!("synthesized both players over {} slices\n", rep.slices.len());
    for (label, s) in [("A", &sa), ("B", &sb)] {
        for (q, choice) in &s.choice {
            write!(report, "{label} {q}:").unwrap();
            for (a, p) in choice.weights.support() {
                write!(report, " {a}={p}").unwrap();
            }
            report.push('\n');
        }
    }
    Ok((EXIT_POSITIVE, report))
}

fn cmd_verify(m: &clap::ArgMatches, config: &Config) -> Result<(i32, String)> {
    let gf: GameFile = read_json(m.get_one::<String>("game").unwrap())?;
    let (game, _) = gf.to_game()?;
    let strategy = read_json::<StrategyFile>(m.get_one::<String>("strategy").unwrap())?.to_strategy()?;
    strategy.validate_in(&game)?;
    let map = read_json(m.get_one::<String>("valuation").unwrap())?;
    let v = valuation_from_file(&game, &map)?;
    let kind = match m.get_one::<String>("kind").unwrap().as_str() {
        "parity-dominates" => CheckKind::ParityDominates,
        _ => CheckKind::Guarantees,
    };
    let outcome = check_strategy(&game, &strategy, &v, kind, config.opponent_cap())?;
    if outcome.holds() {
        Ok((EXIT_POSITIVE, "holds\n".to_string()))
    } else {
        Ok((EXIT_NEGATIVE, format!("fails\n{}", to_json_pretty(&outcome))))
    }
}

fn cmd_paro_check(m: &clap::ArgMatches, config: &Config) -> Result<(i32, String)> {
    let form = read_json::<FormFile>(m.get_one::<String>("form").unwrap())?.to_form()?;
    let n = parse_usize(m.get_one::<String>("n").unwrap(), "-n")?;
    let sel = match m.get_one::<String>("player").unwrap().as_str() {
        "A" => PlayerSel::A,
        "B" => PlayerSel::B,
        _ => PlayerSel::Both,
    };
    let mut search = config.search();
    if let Some(b) = m.get_one::<String>("budget") {
        search.budget = parse_usize(b, "--budget")?;
    }
    let verdict = check_paro(&form, sel, n, &search)?;
    match &verdict.outcome {
        ParoOutcome::HoldsCertified => Ok((
            EXIT_POSITIVE,
            format!("holds (certified) at level {n}\n"),
        )),
        ParoOutcome::HoldsOnSearch => {
            let mut out = format!(
                "holds on search at level {n}: {} environments examined\n",
                verdict.examined
            );
            if verdict.undecided > 0 {
                writeln!(
                    out,
                    "incomplete: {} environments undecided (value outside the rational closure)",
                    verdict.undecided
                )
                .unwrap();
            }
            Ok((EXIT_POSITIVE, out))
        }
        ParoOutcome::Fails {
            player,
            counterexample,
            value,
        } => Ok((
            EXIT_NEGATIVE,
            format!(
                "fails for Player {player} at value {value}\ncounterexample environment:\n{}",
                to_json_pretty(counterexample)
            ),
        )),
        ParoOutcome::Unknown { examined, total } => Ok((
            EXIT_CAPACITY,
            format!("unknown: budget exhausted after {examined} of {total} environments\n"),
        )),
    }
}

fn cmd_paro_smt(m: &clap::ArgMatches) -> Result<(i32, String)> {
    let form = read_json::<FormFile>(m.get_one::<String>("form").unwrap())?.to_form()?;
    let l = parse_usize(m.get_one::<String>("l").unwrap(), "-l")?;
    let formula = emit_paro_formula(&form, l)?;
    if let Some(out) = m.get_one::<String>("out") {
        std::fs::write(out, &formula).map_err(|e| domain(format!("{out}: {e}")))?;
    }
    match m.get_one::<String>("solver") {
        None => {
            if m.get_one::<String>("out").is_some() {
                Ok((EXIT_POSITIVE, format!("formula written ({} bytes)\n", formula.len())))
            } else {
                Ok((EXIT_POSITIVE, formula))
            }
        }
        Some(solver) => match run_solver(solver, &formula)? {
            SolverVerdict::Sat => Ok((EXIT_POSITIVE, "sat\n".to_string())),
            SolverVerdict::Unsat => Ok((EXIT_NEGATIVE, "unsat\n".to_string())),
            SolverVerdict::Unknown => Ok((EXIT_CAPACITY, "unknown\n".to_string())),
        },
    }
}

fn cmd_gen_fn(m: &clap::ArgMatches) -> Result<(i32, String)> {
    let n = parse_usize(m.get_one::<String>("n").unwrap(), "N")?;
    let policy = match m.get_one::<String>("policy") {
        Some(path) => read_json::<FnPolicy>(path)?,
        None => FnPolicy::default(),
    };
    let fnx = gen_fn(n, &policy)?;
    #[derive(serde::Serialize)]
    struct GenFnReport {
        n: usize,
        form: FormFile,
        flagged: Vec<String>,
    }
    Ok((
        EXIT_POSITIVE,
        to_json_pretty(&GenFnReport {
            n,
            form: FormFile::from_form(&fnx.form),
            flagged: fnx.flagged,
        }),
    ))
}

fn cmd_oracle_value(path: &str, config: &Config) -> Result<(i32, String)> {
    let gf: GameFile = read_json(path)?;
    let (game, _) = gf.to_game()?;
    let values = oracle_values(&game, config.opponent_cap())?;
    let mut out = String::new();
    for (q, v) in &values {
        writeln!(out, "{q} = {v}").unwrap();
    }
    Ok((EXIT_POSITIVE, out))
}
