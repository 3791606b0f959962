//! Fixtures shared by the benchmarks.

use hardytree::gen::complete_tree;
use hardytree::{Sequences, WeightedTree};

/// Complete `b`-ary tree with weights that drift with the vertex id, so no
/// two levels are alike.
pub fn drifting_tree(b: usize, depth: usize) -> WeightedTree {
    let tree = complete_tree(b, depth);
    let n = tree.len();
    let u = (0..n).map(|i| 1.0 + 0.5 * ((i as f64) * 0.7).sin()).collect();
    let w = (0..n).map(|i| 1.0 / (1.0 + i as f64).sqrt()).collect();
    WeightedTree::new(tree, u, w).expect("fixture weights are positive")
}

/// Power-law sequences `u_i = i^a`, `w_i = i^b` on `1..=n`.
pub fn power_sequences(n: usize, a: f64, b: f64) -> Sequences {
    let u = (1..=n).map(|i| (i as f64).powf(a)).collect();
    let w = (1..=n).map(|i| (i as f64).powf(b)).collect();
    Sequences::new(u, w).expect("fixture sequences are positive")
}
