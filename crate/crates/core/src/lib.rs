//! Norms, two-sided bounds, and structural reductions for weighted summation
//! operators on rooted trees.

pub mod bounds;
pub mod cut;
pub mod error;
pub mod exponent;
pub mod gen;
pub mod hardy1d;
pub mod oracle;
pub mod reductions;
pub mod tree;

pub use cut::{enumerate_cuts, Cut, DEFAULT_CUT_CAP};
pub use error::{Error, Result};
pub use hardy1d::{bennett_constant, hardy_norm_oracle, BennettConstant, Sequences};
pub use exponent::{lp_norm, Exponent, Exponents, Regime};
pub use oracle::{
    apply_operator, assemble_matrix, operator_norm, tree_norm, KernelMatrix, NormEstimate,
    NormMethod, NormOptions,
};
pub use tree::{weighted_norm, RootedTree, VertexId, WeightedForest, WeightedTree};
