//! Layered synthesis of positional optimal strategies: value slices,
//! virtual colorings, local environments, the faithful-pair fixpoint and
//! the end-to-end pipeline for both players.

pub mod coloring;
pub mod dual;
pub mod faithful;
pub mod layer;
pub mod localop;
pub mod pipeline;
pub mod slice;
pub mod strategies;
pub mod synthesize;

pub use coloring::{equivalent_down_to, lex_compare, prevailing, VirtualColoring};
pub use dual::{dual_game, dual_valuation, transpose_form, undual_strategy};
pub use faithful::{check_faithful, FaithfulMode, FaithfulReport};
pub use layer::{layer_game, layer_valuation, LayerGame};
pub use localop::{create_env, local_env, new_col, project, project_local, EnvEntry, EnvFunction, LayerTarget};
pub use pipeline::{compute_env, inc_least, upd_cur_sta, upd_new_sta, update_col_env, TraceStep};
pub use slice::{slice, slice_set, SliceContext};
pub use strategies::{canonical_choice, combinations, generated_strategies, GeneratedFamily};
pub use synthesize::{synthesize, validate_values, SliceReport, SynthesisReport};
