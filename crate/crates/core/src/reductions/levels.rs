//! Collapsing level bands into single vertices.

use crate::error::{Error, Result};
use crate::exponent::{lp_norm, Exponents};
use crate::tree::{RootedTree, VertexId, WeightedTree};

/// Cut depths `j_0 < j_1 < …` below a base vertex; `j_0` is the base depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelGrouping {
    pub base: VertexId,
    pub cut_levels: Vec<usize>,
}

impl LevelGrouping {
    pub fn new(base: VertexId, cut_levels: Vec<usize>) -> Self {
        LevelGrouping { base, cut_levels }
    }

    pub fn validate(&self, tree: &RootedTree) -> Result<()> {
        if !tree.contains(self.base) {
            return Err(Error::UnknownVertex(self.base));
        }
        let Some(&first) = self.cut_levels.first() else {
            return Err(Error::InvalidGrouping("no cut levels".into()));
        };
        if first != tree.depth(self.base) {
            return Err(Error::InvalidGrouping(format!(
                "first level {first} must equal the base depth {}",
                tree.depth(self.base)
            )));
        }
        if self.cut_levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrouping("levels must be strictly increasing".into()));
        }
        let deepest = tree
            .subtree_preorder(self.base)
            .iter()
            .map(|v| tree.depth(*v))
            .max()
            .unwrap_or(first);
        if let Some(&j) = self.cut_levels.iter().find(|&&j| j > deepest) {
            return Err(Error::EmptyBand(j));
        }
        Ok(())
    }
}

/// A reduced tree together with the original vertex behind each new vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduced {
    pub tree: WeightedTree,
    /// `origin[v]` is the minimal vertex of the component collapsed into `v`.
    pub origin: Vec<VertexId>,
}

/// Collapses every connected component of each band `[j_k, j_{k+1})` below
/// the base into its minimal vertex, with `u` aggregated in `l_{p'}` and `w`
/// in `l_q` over the component. Descendants at distance `j_{k+1} - j_k`
/// become the children.
pub fn reduce_levels(wt: &WeightedTree, g: &LevelGrouping, e: Exponents) -> Result<Reduced> {
    g.validate(&wt.tree)?;
    let t = &wt.tree;
    let band = |v: VertexId| g.cut_levels.partition_point(|&j| j <= t.depth(v)) - 1;
    let mut sub = t.subtree_preorder(g.base);
    sub.sort_by_key(|v| (t.depth(*v), v.0));
    let mut rep = vec![VertexId(usize::MAX); t.len()];
    for &v in &sub {
        rep[v.0] = match t.parent(v) {
            Some(p) if v != g.base && band(p) == band(v) => rep[p.0],
            _ => v,
        };
    }
    let mut reps: Vec<VertexId> = sub.iter().copied().filter(|v| rep[v.0] == *v).collect();
    reps.sort();
    let index = |v: VertexId| reps.binary_search(&v).expect("representative");
    let root = VertexId(index(g.base));
    let mut parent = vec![None; reps.len()];
    let mut u_parts = vec![Vec::new(); reps.len()];
    let mut w_parts = vec![Vec::new(); reps.len()];
    for &v in &sub {
        let r = index(rep[v.0]);
        u_parts[r].push(wt.u(v));
        w_parts[r].push(wt.w(v));
        if rep[v.0] == v && v != g.base {
            let p = t.parent(v).expect("below base");
            parent[r] = Some(VertexId(index(rep[p.0])));
        }
    }
    let pc = e.p_conj();
    let u = u_parts.into_iter().map(|xs| lp_norm(xs, pc)).collect();
    let w = w_parts.into_iter().map(|xs| lp_norm(xs, e.q)).collect();
    let tree = RootedTree::from_parents(parent, root)?;
    Ok(Reduced {
        tree: WeightedTree::new(tree, u, w)?,
        origin: reps,
    })
}
