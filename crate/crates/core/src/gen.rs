//! Seeded random instances for property tests, calibration, and benchmarks.

use rand::Rng;

use crate::tree::{RootedTree, VertexId, WeightedTree};

/// Random recursive tree: vertex `i > 0` attaches to a uniform earlier vertex.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> RootedTree {
    assert!(n > 0);
    let parent = (0..n)
        .map(|i| (i > 0).then(|| VertexId(rng.gen_range(0..i))))
        .collect();
    RootedTree::from_parents(parent, VertexId(0)).expect("recursive trees are valid")
}

/// Weight drawn log-uniformly from `[2^-span, 2^span]`.
pub fn log_uniform<R: Rng>(rng: &mut R, span: f64) -> f64 {
    2f64.powf(rng.gen_range(-span..=span))
}

/// Random tree with `1..=max_n` vertices and log-uniform weights.
pub fn random_weighted_tree<R: Rng>(rng: &mut R, max_n: usize, span: f64) -> WeightedTree {
    let n = rng.gen_range(1..=max_n);
    let tree = random_tree(rng, n);
    weighted(rng, tree, span)
}

/// Attaches log-uniform weights to a given tree.
pub fn weighted<R: Rng>(rng: &mut R, tree: RootedTree, span: f64) -> WeightedTree {
    let n = tree.len();
    let u = (0..n).map(|_| log_uniform(rng, span)).collect();
    let w = (0..n).map(|_| log_uniform(rng, span)).collect();
    WeightedTree::new(tree, u, w).expect("log-uniform weights are positive")
}

/// Complete `b`-ary tree of the given depth, ids in breadth-first order.
pub fn complete_tree(b: usize, depth: usize) -> RootedTree {
    let mut parent = vec![None];
    let mut level = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &v in &level {
            for _ in 0..b {
                next.push(parent.len());
                parent.push(Some(VertexId(v)));
            }
        }
        level = next;
    }
    RootedTree::from_parents(parent, VertexId(0)).expect("complete trees are valid")
}
