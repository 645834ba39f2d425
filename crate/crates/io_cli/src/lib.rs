//! File formats, reference oracles and the command-line front-end tying
//! the solver crates together.

pub mod commands;
pub mod files;
pub mod fixtures;
pub mod oracle;

pub use commands::{run_command, Config};
pub use files::{FormFile, GameFile, NormalFormFile, StrategyFile, SCHEMA_VERSION};
pub use oracle::{controller, oracle_values, zielonka_values};
