//! Game forms inside environments: the simple parity games they induce,
//! their exact values, optimal GF-strategies, and environment normalization.

pub mod env;
pub mod normalize;
pub mod optimal;
pub mod order;
pub mod simple;
pub mod value;

pub use env::{Environment, Target};
pub use normalize::normalize_to_relevant;
pub use optimal::{
    is_optimal_gf_strategy, is_optimal_gf_strategy_given, one_shot_game, optimal_gf_strategy,
    optimal_gf_strategy_family, OptimalityVerdict,
};
pub use order::{even_ceil, even_ceil_val, max_par, odd_ceil, odd_ceil_val, parity_cmp};
pub use simple::{build_simple_game, stop_name, target_name, value_slice_valuation, SimpleParityGame, INIT};
pub use value::{one_sided_value, simple_game_value, SimpleGameValue};
