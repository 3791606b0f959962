//! Structural transformations: level grouping, vertex splitting, regular
//! trees and their one-dimensional reductions, and weight families.

mod families;
mod levels;
mod regular;
mod split;

pub use families::{
    example1_bound, example1_weights, slowly_varying_check, Example2, GridCheck, LogFunction,
    LogHandle, SeriesBound, DEFAULT_GRID_CAP, EXAMPLE2_IDENTITY_TOL,
};
pub use levels::{reduce_levels, LevelGrouping, Reduced};
pub use regular::{
    chain_weights, generate_regular_tree, hat_weights, level_weighted_tree, ChainWeights,
    LevelWeights, PsiProfile, DEFAULT_VERTEX_CAP,
};
pub use split::{all_split_specs, split_vertex, Split, SplitSpec};
