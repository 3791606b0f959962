//! Replacing a vertex by one copy per block of a partition of its children.

use crate::error::{Error, Result};
use crate::exponent::Exponents;
use crate::tree::{RootedTree, VertexId, WeightedForest, WeightedTree};

/// A vertex together with a partition of its children into non-empty blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSpec {
    pub xi: VertexId,
    pub partition: Vec<Vec<VertexId>>,
}

impl SplitSpec {
    pub fn new(xi: VertexId, partition: Vec<Vec<VertexId>>) -> Self {
        SplitSpec { xi, partition }
    }

    /// One block per child.
    pub fn singletons(tree: &RootedTree, xi: VertexId) -> Self {
        let partition = tree.children(xi).iter().map(|&c| vec![c]).collect();
        SplitSpec { xi, partition }
    }

    pub fn validate(&self, tree: &RootedTree) -> Result<()> {
        if !tree.contains(self.xi) {
            return Err(Error::UnknownVertex(self.xi));
        }
        let kids = tree.children(self.xi);
        if kids.is_empty() {
            return Err(Error::InvalidPartition(format!("{} has no children", self.xi)));
        }
        let mut seen: Vec<VertexId> = Vec::new();
        for block in &self.partition {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for v in block {
                if !kids.contains(v) {
                    return Err(Error::InvalidPartition(format!(
                        "{v} is not a child of {}",
                        self.xi
                    )));
                }
                if seen.contains(v) {
                    return Err(Error::InvalidPartition(format!("{v} appears twice")));
                }
                seen.push(*v);
            }
        }
        if seen.len() != kids.len() {
            return Err(Error::InvalidPartition("blocks do not cover the children".into()));
        }
        Ok(())
    }
}

/// Every partition of the children of `xi` into blocks, in a fixed order.
pub fn all_split_specs(tree: &RootedTree, xi: VertexId) -> Vec<SplitSpec> {
    fn go(items: &[VertexId], blocks: &mut Vec<Vec<VertexId>>, out: &mut Vec<Vec<Vec<VertexId>>>) {
        let Some((&first, rest)) = items.split_first() else {
            out.push(blocks.clone());
            return;
        };
        for i in 0..blocks.len() {
            blocks[i].push(first);
            go(rest, blocks, out);
            blocks[i].pop();
        }
        blocks.push(vec![first]);
        go(rest, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(tree.children(xi), &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|partition| SplitSpec { xi, partition })
        .collect()
}

/// The result of a split: a forest plus the bookkeeping to map functions over.
#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    pub forest: WeightedForest,
    /// `origin[c][v]` is the original vertex behind vertex `v` of component `c`.
    pub origin: Vec<Vec<VertexId>>,
    /// `(component, vertex)` of each copy `η_j`, in partition order.
    pub copies: Vec<(usize, VertexId)>,
    xi: VertexId,
    p_recip: f64,
}

impl Split {
    /// Maps `f` on the original tree to the forest: copies of `ξ` carry
    /// `n^{-1/p} f(ξ)`, every other vertex keeps its value. Both the `l_p`
    /// norm of `f` and the `l_q` norm of its image are preserved.
    pub fn lift(&self, f: &[f64]) -> Vec<Vec<f64>> {
        let n = self.copies.len() as f64;
        let scale = n.powf(-self.p_recip);
        self.origin
            .iter()
            .map(|orig| {
                orig.iter()
                    .map(|&o| if o == self.xi { scale * f[o.0] } else { f[o.0] })
                    .collect()
            })
            .collect()
    }
}

/// Replaces `ξ` by copies `η_1, …, η_n`, copy `η_j` adopting the subtrees of
/// block `j`, with `u(η_j) = n^{1/p} u(ξ)` and `w(η_j) = n^{-1/q} w(ξ)`.
///
/// Splitting the root yields `n` trees. Otherwise the result is one tree in
/// which the original ids are kept, `η_1` takes the id of `ξ`, and the other
/// copies are appended.
pub fn split_vertex(wt: &WeightedTree, s: &SplitSpec, e: Exponents) -> Result<Split> {
    let t = &wt.tree;
    s.validate(t)?;
    let n = s.partition.len();
    let nf = n as f64;
    let (cu, cw) = (nf.powf(e.p.recip()), nf.powf(-e.q.recip()));

    // Node k < len is vertex k (with ξ acting as η_1); the rest are η_2..η_n.
    let total = t.len() + n - 1;
    let copy_node = |j: usize| if j == 0 { s.xi.0 } else { t.len() + j - 1 };
    let mut origin: Vec<VertexId> = (0..t.len()).map(VertexId).collect();
    origin.extend(std::iter::repeat(s.xi).take(n - 1));
    let mut parent: Vec<Option<usize>> = (0..t.len())
        .map(|v| t.parent(VertexId(v)).map(|p| p.0))
        .collect();
    parent.extend(std::iter::repeat(t.parent(s.xi).map(|p| p.0)).take(n - 1));
    for (j, block) in s.partition.iter().enumerate() {
        for c in block {
            parent[c.0] = Some(copy_node(j));
        }
    }
    let weight = |k: usize| {
        let o = origin[k];
        if o == s.xi {
            (cu * wt.u(o), cw * wt.w(o))
        } else {
            (wt.u(o), wt.w(o))
        }
    };

    let roots: Vec<usize> = if s.xi == t.root() {
        (0..n).map(copy_node).collect()
    } else {
        vec![t.root().0]
    };
    let mut children = vec![Vec::new(); total];
    for (k, p) in parent.iter().enumerate() {
        if let Some(p) = p {
            children[*p].push(k);
        }
    }
    let mut components = Vec::new();
    let mut origins = Vec::new();
    let mut place = vec![(usize::MAX, VertexId(usize::MAX)); total];
    for (c, &r) in roots.iter().enumerate() {
        let mut nodes = vec![r];
        let mut i = 0;
        while i < nodes.len() {
            nodes.extend_from_slice(&children[nodes[i]]);
            i += 1;
        }
        nodes.sort_unstable();
        for (dense, &k) in nodes.iter().enumerate() {
            place[k] = (c, VertexId(dense));
        }
        let local = |k: usize| place[k].1;
        let par = nodes
            .iter()
            .map(|&k| if k == r { None } else { parent[k].map(local) })
            .collect();
        let tree = RootedTree::from_parents(par, local(r))?;
        let (u, w) = nodes.iter().map(|&k| weight(k)).unzip();
        components.push(WeightedTree::new(tree, u, w)?);
        origins.push(nodes.iter().map(|&k| origin[k]).collect());
    }
    Ok(Split {
        forest: WeightedForest { components },
        origin: origins,
        copies: (0..n).map(|j| place[copy_node(j)]).collect(),
        xi: s.xi,
        p_recip: e.p.recip(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::complete_tree;
    use crate::oracle::apply_operator;
    use crate::exponent::lp_norm;

    fn star() -> WeightedTree {
        WeightedTree::unit(RootedTree::from_edges(&[(0, 1), (0, 2)], 0).unwrap())
    }

    #[test]
    fn root_split_gives_forest() {
        let e = Exponents::from_values(2.0, 2.0).unwrap();
        let s = SplitSpec::singletons(&star().tree, VertexId(0));
        let out = split_vertex(&star(), &s, e).unwrap();
        assert_eq!(out.forest.components.len(), 2);
        for c in &out.forest.components {
            assert_eq!(c.len(), 2);
            let r = c.tree.root();
            assert!((c.u(r) - 2f64.sqrt()).abs() < 1e-15);
            assert!((c.w(r) - 0.5f64.sqrt()).abs() < 1e-15);
        }
        assert_eq!(out.origin[1], vec![VertexId(2), VertexId(0)]);
    }

    #[test]
    fn trivial_partition_is_identity() {
        let e = Exponents::from_values(3.0, 1.5).unwrap();
        let wt = star().scaled(2.0, 3.0);
        let s = SplitSpec::new(VertexId(0), vec![vec![VertexId(1), VertexId(2)]]);
        let out = split_vertex(&wt, &s, e).unwrap();
        assert_eq!(out.forest.components, vec![wt]);
    }

    #[test]
    fn inner_split_adds_one_vertex() {
        let e = Exponents::from_values(2.0, 2.0).unwrap();
        let wt = WeightedTree::unit(complete_tree(2, 2));
        let s = SplitSpec::singletons(&wt.tree, VertexId(1));
        let out = split_vertex(&wt, &s, e).unwrap();
        assert_eq!(out.forest.components.len(), 1);
        let t = &out.forest.components[0];
        assert_eq!(t.len(), 8);
        assert_eq!(t.tree.children(VertexId(0)), &[VertexId(1), VertexId(2), VertexId(7)]);
        assert_eq!(out.copies, vec![(0, VertexId(1)), (0, VertexId(7))]);
    }

    #[test]
    fn lift_preserves_objective() {
        let wt = WeightedTree::new(
            complete_tree(3, 2),
            (0..13).map(|i| 1.0 + i as f64 * 0.3).collect(),
            (0..13).map(|i| 2.0 / (1.0 + i as f64)).collect(),
        )
        .unwrap();
        let f: Vec<f64> = (0..13).map(|i| ((i * 7 % 5) as f64) - 1.5).collect();
        for (p, q) in [(2.0, 2.0), (1.5, 3.0), (3.0, 1.0), (f64::INFINITY, 2.0)] {
            let e = Exponents::from_values(p, q).unwrap();
            for xi in [0, 2] {
                for s in all_split_specs(&wt.tree, VertexId(xi)) {
                    let out = split_vertex(&wt, &s, e).unwrap();
                    let g = out.lift(&f);
                    let norm_f = lp_norm(f.iter().copied(), e.p);
                    let norm_g = lp_norm(g.iter().flatten().copied(), e.p);
                    assert!((norm_f - norm_g).abs() < 1e-12 * norm_f);
                    let sf = lp_norm(apply_operator(&wt, &f), e.q);
                    let sg = lp_norm(
                        out.forest
                            .components
                            .iter()
                            .zip(&g)
                            .flat_map(|(c, gc)| apply_operator(c, gc)),
                        e.q,
                    );
                    assert!((sf - sg).abs() < 1e-12 * sf, "{p} {q} {xi}: {sf} {sg}");
                }
            }
        }
    }

    #[test]
    fn partitions_are_counted_by_bell_numbers() {
        let t = complete_tree(4, 1);
        assert_eq!(all_split_specs(&t, VertexId(0)).len(), 15);
        for s in all_split_specs(&t, VertexId(0)) {
            s.validate(&t).unwrap();
        }
    }

    #[test]
    fn invalid_partitions() {
        let t = star().tree;
        let bad = [
            SplitSpec::new(VertexId(0), vec![vec![VertexId(1)]]),
            SplitSpec::new(VertexId(0), vec![vec![VertexId(1)], vec![]]),
            SplitSpec::new(VertexId(0), vec![vec![VertexId(1), VertexId(2)], vec![VertexId(1)]]),
            SplitSpec::new(VertexId(1), vec![]),
            SplitSpec::new(VertexId(0), vec![vec![VertexId(0)], vec![VertexId(1), VertexId(2)]]),
        ];
        for s in bad {
            assert!(s.validate(&t).is_err());
            assert!(split_vertex(&star(), &s, Exponents::from_values(2.0, 2.0).unwrap()).is_err());
        }
    }
}
