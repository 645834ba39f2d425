//! Classifying game forms by when positional optimal strategies exist:
//! fast structural criteria, grid search over relevant environments, the
//! first-order-reals decision formula, and the separating family F_n.

pub mod check;
pub mod family;
pub mod fastpath;
pub mod hierarchy;
pub mod smt;

pub use check::{
    check_paro, paro_bound, EnvRecord, ParoOutcome, ParoVerdict, PlayerSel, SearchConfig,
};
pub use family::{gen_fn, FnForm, FnPolicy};
pub use fastpath::{fast_path, is_determined, FastPath};
pub use hierarchy::{separating_environment, verify_hierarchy, HierarchyReport};
pub use smt::{emit_paro_formula, run_solver, SolverVerdict};
