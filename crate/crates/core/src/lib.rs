//! Exact-arithmetic foundations: rationals, distributions, game forms and
//! zero-sum matrix game solving.

pub mod dist;
pub mod error;
pub mod form;
pub mod linalg;
pub mod matrix;
pub mod rational;
pub mod simplex;

pub use dist::Distribution;
pub use error::{Error, Result};
pub use form::{apply_valuation, outcome_of, GameForm, MixedStrategy, NormalFormGame, Player};
pub use matrix::{optimal_vertices, optimal_vertices_at, solve_matrix_game, MatrixGameSolution};
pub use rational::{q, Q};
