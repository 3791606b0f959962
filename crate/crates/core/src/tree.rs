//! Rooted trees, vertex weights, and the tree partial order.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{lp_norm, Exponent};

/// Dense vertex index in `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v)
    }
}

/// A finite rooted tree on vertices `0..n`.
///
/// `ξ ≤ ξ'` means `ξ` lies on the path from the root to `ξ'`. Children are
/// kept sorted by id so every traversal is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: VertexId,
    parent: Vec<Option<VertexId>>,
    children: Vec<Vec<VertexId>>,
    depth: Vec<usize>,
    /// Vertices sorted by `(depth, id)`.
    order: Vec<VertexId>,
}

impl RootedTree {
    /// Builds a tree from `(parent, child)` edges. The vertex set is
    /// `0..=max id`; every id in that range must be reachable from `root`.
    pub fn from_edges(edges: &[(usize, usize)], root: usize) -> Result<Self> {
        let n = edges
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(std::iter::once(root))
            .max()
            .map_or(1, |m| m + 1);
        let mut parent = vec![None; n];
        for &(p, c) in edges {
            if parent[c].is_some() {
                return Err(Error::DuplicateParent(VertexId(c)));
            }
            if p == c {
                return Err(Error::Cycle(VertexId(c)));
            }
            parent[c] = Some(VertexId(p));
        }
        Self::from_parents(parent, VertexId(root))
    }

    /// Builds a tree from a parent array; `parent[root]` must be `None`.
    pub fn from_parents(parent: Vec<Option<VertexId>>, root: VertexId) -> Result<Self> {
        let n = parent.len();
        if root.0 >= n {
            return Err(Error::UnknownVertex(root));
        }
        for p in parent.iter().flatten() {
            if p.0 >= n {
                return Err(Error::UnknownVertex(*p));
            }
        }
        // Walk up from every vertex; a revisit within one walk is a cycle, a
        // walk ending anywhere but the root is a second component.
        let mut state = vec![0u8; n]; // 0 unseen, 1 on current walk, 2 done
        for start in 0..n {
            let mut walk = Vec::new();
            let mut v = start;
            loop {
                match state[v] {
                    2 => break,
                    1 => return Err(Error::Cycle(VertexId(v))),
                    _ => {}
                }
                state[v] = 1;
                walk.push(v);
                match parent[v] {
                    Some(p) => v = p.0,
                    None => {
                        if v != root.0 {
                            return Err(Error::Disconnected(VertexId(v)));
                        }
                        break;
                    }
                }
            }
            for w in walk {
                state[w] = 2;
            }
        }

        let mut children = vec![Vec::new(); n];
        for (c, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                children[p.0].push(VertexId(c));
            }
        }
        // ids are pushed in increasing order, so children are already sorted
        let mut depth = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &c in &children[v.0] {
                depth[c.0] = depth[v.0] + 1;
                queue.push_back(c);
            }
        }
        order.sort_by_key(|v| (depth[v.0], v.0));
        Ok(RootedTree {
            root,
            parent,
            children,
            depth,
            order,
        })
    }

    /// A single-path tree `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        assert!(n > 0, "a chain needs at least one vertex");
        let parent = (0..n)
            .map(|i| i.checked_sub(1).map(VertexId))
            .collect::<Vec<_>>();
        Self::from_parents(parent, VertexId(0)).expect("chain is a valid tree")
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.len()).map(VertexId)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.0 < self.len()
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v.0]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v.0]
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v.0]
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.children[v.0].is_empty()
    }

    /// Vertices in `(depth, id)` order; every ancestor precedes its descendants.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn max_branching(&self) -> usize {
        self.children.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `a ≤ b` in the tree order.
    pub fn is_ancestor_or_self(&self, a: VertexId, b: VertexId) -> bool {
        if self.depth[a.0] > self.depth[b.0] {
            return false;
        }
        let mut v = b;
        while self.depth[v.0] > self.depth[a.0] {
            v = self.parent[v.0].expect("non-root vertex has a parent");
        }
        v == a
    }

    /// Descendants of `xi` at distance exactly `j`, in id order.
    pub fn level_set(&self, xi: VertexId, j: usize) -> Result<Vec<VertexId>> {
        self.check(xi)?;
        let mut frontier = vec![xi];
        for _ in 0..j {
            frontier = frontier
                .iter()
                .flat_map(|v| self.children[v.0].iter().copied())
                .collect();
            if frontier.is_empty() {
                break;
            }
        }
        frontier.sort();
        Ok(frontier)
    }

    /// All `ξ' ≥ xi`, in id order.
    pub fn subtree(&self, xi: VertexId) -> Result<Vec<VertexId>> {
        self.check(xi)?;
        let mut out = self.subtree_preorder(xi);
        out.sort();
        Ok(out)
    }

    /// All `ξ' ≥ xi` in depth-first preorder (children by id).
    pub(crate) fn subtree_preorder(&self, xi: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![xi];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v.0].iter().rev().copied());
        }
        out
    }

    /// The path `xi_star = ξ_0 < ξ_1 < … < ξ_k = xi`.
    pub fn path_segment(&self, xi_star: VertexId, xi: VertexId) -> Result<Vec<VertexId>> {
        self.check(xi_star)?;
        self.check(xi)?;
        if !self.is_ancestor_or_self(xi_star, xi) {
            return Err(Error::NotAncestor {
                ancestor: xi_star,
                vertex: xi,
            });
        }
        let mut path = vec![xi];
        let mut v = xi;
        while v != xi_star {
            v = self.parent[v.0].expect("xi_star is an ancestor");
            path.push(v);
        }
        path.reverse();
        Ok(path)
    }

    /// Edge list `(parent, child)` sorted by child id.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|p| (p.0, c)))
            .collect()
    }

    /// Label-independent canonical string (AHU encoding with sorted children).
    pub fn canonical_form(&self) -> String {
        self.canonical_with(self.root, &|_| String::new())
    }

    pub(crate) fn canonical_with(&self, v: VertexId, label: &dyn Fn(VertexId) -> String) -> String {
        let mut parts: Vec<String> = self.children[v.0]
            .iter()
            .map(|&c| self.canonical_with(c, label))
            .collect();
        parts.sort();
        format!("({}{})", label(v), parts.concat())
    }

    /// Reorders vertex ids: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: perm.len(),
            });
        }
        let mut parent = vec![None; self.len()];
        for v in 0..self.len() {
            parent[perm[v]] = self.parent[v].map(|p| VertexId(perm[p.0]));
        }
        Self::from_parents(parent, VertexId(perm[self.root.0]))
    }
}

/// `‖f‖_{l_r(support)}`.
pub fn weighted_norm(f: &[f64], support: &[VertexId], r: Exponent) -> f64 {
    lp_norm(support.iter().map(|v| f[v.0]), r)
}

/// A rooted tree with strictly positive vertex weights `u` and `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedTree {
    pub tree: RootedTree,
    pub u: Vec<f64>,
    pub w: Vec<f64>,
}

impl WeightedTree {
    pub fn new(tree: RootedTree, u: Vec<f64>, w: Vec<f64>) -> Result<Self> {
        for (name, weights) in [("u", &u), ("w", &w)] {
            if weights.len() != tree.len() {
                return Err(Error::LengthMismatch {
                    expected: tree.len(),
                    actual: weights.len(),
                });
            }
            if let Some((i, &x)) = weights
                .iter()
                .enumerate()
                .find(|(_, &x)| !(x > 0.0 && x.is_finite()))
            {
                return Err(Error::InvalidWeight {
                    name,
                    vertex: VertexId(i),
                    value: x,
                });
            }
        }
        Ok(WeightedTree { tree, u, w })
    }

    /// Both weights identically one.
    pub fn unit(tree: RootedTree) -> Self {
        let n = tree.len();
        WeightedTree {
            tree,
            u: vec![1.0; n],
            w: vec![1.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn u(&self, v: VertexId) -> f64 {
        self.u[v.0]
    }

    pub fn w(&self, v: VertexId) -> f64 {
        self.w[v.0]
    }

    pub fn scaled(&self, cu: f64, cw: f64) -> Self {
        WeightedTree {
            tree: self.tree.clone(),
            u: self.u.iter().map(|x| x * cu).collect(),
            w: self.w.iter().map(|x| x * cw).collect(),
        }
    }

    /// `‖w‖_{l_q(A_ξ)}` for every vertex, in one post-order pass.
    pub fn subtree_w_norms(&self, q: Exponent) -> Vec<f64> {
        let n = self.len();
        let mut acc = vec![0.0; n];
        // Children before parents: reverse (depth, id) order.
        for &v in self.tree.order().iter().rev() {
            let own = if q.is_infinite() {
                self.w[v.0]
            } else {
                q.pow(self.w[v.0])
            };
            let mut total = own;
            for &c in self.tree.children(v) {
                if q.is_infinite() {
                    total = total.max(acc[c.0]);
                } else {
                    total += acc[c.0];
                }
            }
            acc[v.0] = total;
        }
        if !q.is_infinite() {
            for a in &mut acc {
                *a = a.powf(q.recip());
            }
        }
        acc
    }

    /// Relabels the tree and permutes both weight vectors accordingly.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let tree = self.tree.relabel(perm)?;
        let mut u = vec![0.0; self.len()];
        let mut w = vec![0.0; self.len()];
        for v in 0..self.len() {
            u[perm[v]] = self.u[v];
            w[perm[v]] = self.w[v];
        }
        Ok(WeightedTree { tree, u, w })
    }

    /// Canonical form including weights (bit-exact), independent of labels.
    pub fn canonical_form(&self) -> String {
        self.tree.canonical_with(self.tree.root(), &|v| {
            format!("{:016x}:{:016x}", self.u[v.0].to_bits(), self.w[v.0].to_bits())
        })
    }

    /// Stable 64-bit FNV-1a digest of the canonical form.
    pub fn digest(&self) -> u64 {
        fnv1a(self.canonical_form().as_bytes())
    }
}

/// 64-bit FNV-1a, used for stable input digests.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// A disjoint union of weighted trees.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedForest {
    pub components: Vec<WeightedTree>,
}

impl WeightedForest {
    pub fn len(&self) -> usize {
        self.components.iter().map(WeightedTree::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl From<WeightedTree> for WeightedForest {
    fn from(t: WeightedTree) -> Self {
        WeightedForest { components: vec![t] }
    }
}
