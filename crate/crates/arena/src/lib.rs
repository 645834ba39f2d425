//! Concurrent stochastic parity games: induced Markov chains, BSCC
//! analysis, domination checks and the brute-force strategy-value oracle.

pub mod chain;
pub mod check;
pub mod encode;
pub mod game;

pub use chain::{bsccs, induced_markov_chain, mc_parity_outcome, transition_prob, MarkovChain};
pub use check::{
    check_strategy, compatible_bsccs, deterministic_strategies, strategy_value, CheckKind,
    CheckOutcome, DEFAULT_OPPONENT_CAP,
};
pub use encode::encode_stopping_states;
pub use game::{ParityGame, PositionalStrategy, Valuation};
