//! Cuts `(D, Γ)` based at a vertex `ξ*` and their exhaustive enumeration.
//!
//! `D` is a subtree with minimum `ξ*` in which every non-maximal vertex keeps
//! all of its children. `Γ` is a non-empty set of maximal vertices of `D`
//! that contains every maximal vertex of `D` which is not a leaf of the
//! ambient tree.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::tree::{RootedTree, VertexId};

/// Default cap on the number of enumerated cuts.
pub const DEFAULT_CUT_CAP: usize = 1 << 18;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cut {
    pub base: VertexId,
    /// Vertices of `D`, sorted.
    pub d_vertices: Vec<VertexId>,
    /// `Γ`, sorted.
    pub gamma: Vec<VertexId>,
}

impl Cut {
    pub fn new(base: VertexId, mut d_vertices: Vec<VertexId>, mut gamma: Vec<VertexId>) -> Self {
        d_vertices.sort();
        d_vertices.dedup();
        gamma.sort();
        gamma.dedup();
        Cut {
            base,
            d_vertices,
            gamma,
        }
    }

    /// The cut `({ξ*}, {ξ*})`.
    pub fn singleton(base: VertexId) -> Self {
        Cut::new(base, vec![base], vec![base])
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.d_vertices.binary_search(&v).is_ok()
    }

    pub fn in_gamma(&self, v: VertexId) -> bool {
        self.gamma.binary_search(&v).is_ok()
    }

    /// A vertex of `D` none of whose children lie in `D`.
    pub fn is_maximal_in_d(&self, tree: &RootedTree, v: VertexId) -> bool {
        tree.children(v).iter().all(|c| !self.contains(*c))
    }

    /// Checks every structural invariant against `tree`.
    pub fn validate(&self, tree: &RootedTree) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCut(m));
        if !tree.contains(self.base) {
            return Err(Error::UnknownVertex(self.base));
        }
        if let Some(v) = self
            .d_vertices
            .iter()
            .chain(&self.gamma)
            .find(|v| !tree.contains(**v))
        {
            return Err(Error::UnknownVertex(*v));
        }
        if !self.contains(self.base) {
            return bad(format!("base {} is not in D", self.base));
        }
        for &v in &self.d_vertices {
            if v == self.base {
                continue;
            }
            if !tree.is_ancestor_or_self(self.base, v) {
                return bad(format!("{v} is not above base {}", self.base));
            }
            let p = tree.parent(v).expect("v is above the base");
            if !self.contains(p) {
                return bad(format!("D is not connected at {v}"));
            }
        }
        for &v in &self.d_vertices {
            let kids = tree.children(v);
            let inside = kids.iter().filter(|c| self.contains(**c)).count();
            if inside != 0 && inside != kids.len() {
                return bad(format!("{v} keeps only some of its children"));
            }
            let maximal = inside == 0;
            if maximal && !kids.is_empty() && !self.in_gamma(v) {
                return bad(format!("maximal vertex {v} of D is not a leaf and not in Γ"));
            }
        }
        for &g in &self.gamma {
            if !self.contains(g) || !self.is_maximal_in_d(tree, g) {
                return bad(format!("Γ vertex {g} is not maximal in D"));
            }
        }
        if self.gamma.is_empty() {
            return bad("Γ is empty".into());
        }
        Ok(())
    }

    /// `∪_{ξ∈Γ} V(A_ξ)`, sorted.
    pub fn residual_vertices(&self, tree: &RootedTree) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .gamma
            .iter()
            .flat_map(|&g| tree.subtree_preorder(g))
            .collect();
        out.sort();
        out
    }
}

/// Partial cut below one vertex: the part of `D` and of `Γ` in its subtree.
#[derive(Clone)]
struct Partial {
    d: Vec<VertexId>,
    gamma: Vec<VertexId>,
}

/// Enumerates every cut based at `xi_star`, sorted by `(D, Γ)`.
///
/// The number of cuts is exponential in the subtree size; enumeration stops
/// with [`Error::CapExceeded`] once more than `cap` partial cuts exist.
pub fn enumerate_cuts(tree: &RootedTree, xi_star: VertexId, cap: usize) -> Result<Vec<Cut>> {
    if !tree.contains(xi_star) {
        return Err(Error::UnknownVertex(xi_star));
    }
    let partials = partials_below(tree, xi_star, cap)?;
    let mut cuts: Vec<Cut> = partials
        .into_iter()
        .filter(|p| !p.gamma.is_empty())
        .map(|p| Cut::new(xi_star, p.d, p.gamma))
        .collect();
    cuts.sort_by(|a, b| (&a.d_vertices, &a.gamma).cmp(&(&b.d_vertices, &b.gamma)));
    Ok(cuts)
}

fn partials_below(tree: &RootedTree, v: VertexId, cap: usize) -> Result<Vec<Partial>> {
    let mut out = Vec::new();
    // v stops: it is maximal in D.
    if tree.is_leaf(v) {
        out.push(Partial {
            d: vec![v],
            gamma: vec![],
        });
    }
    out.push(Partial {
        d: vec![v],
        gamma: vec![v],
    });
    // v expands: every child is in D and chooses independently.
    if !tree.is_leaf(v) {
        let mut combos = vec![Partial {
            d: vec![v],
            gamma: vec![],
        }];
        for &c in tree.children(v) {
            let below = partials_below(tree, c, cap)?;
            let size = combos.len().saturating_mul(below.len());
            if size > cap {
                return Err(Error::CapExceeded {
                    what: "cut enumeration",
                    size,
                    cap,
                });
            }
            let mut next = Vec::with_capacity(size);
            for a in &combos {
                for b in &below {
                    let mut d = a.d.clone();
                    d.extend_from_slice(&b.d);
                    let mut gamma = a.gamma.clone();
                    gamma.extend_from_slice(&b.gamma);
                    next.push(Partial { d, gamma });
                }
            }
            combos = next;
        }
        out.extend(combos);
    }
    if out.len() > cap {
        return Err(Error::CapExceeded {
            what: "cut enumeration",
            size: out.len(),
            cap,
        });
    }
    Ok(out)
}

/// Reference enumeration by filtering all subsets; only for small subtrees.
#[doc(hidden)]
pub fn enumerate_cuts_brute_force(tree: &RootedTree, xi_star: VertexId) -> Vec<Cut> {
    let sub = tree.subtree(xi_star).expect("known vertex");
    assert!(sub.len() <= 16, "brute force is limited to 16 vertices");
    let mut found = BTreeSet::new();
    for dmask in 0u32..(1 << sub.len()) {
        let d: Vec<VertexId> = (0..sub.len())
            .filter(|i| dmask >> i & 1 == 1)
            .map(|i| sub[i])
            .collect();
        if d.is_empty() {
            continue;
        }
        for gmask in 1u32..(1 << d.len()) {
            let gamma: Vec<VertexId> = (0..d.len())
                .filter(|i| gmask >> i & 1 == 1)
                .map(|i| d[i])
                .collect();
            let cut = Cut::new(xi_star, d.clone(), gamma);
            if cut.validate(tree).is_ok() {
                found.insert(cut);
            }
        }
    }
    let mut cuts: Vec<Cut> = found.into_iter().collect();
    cuts.sort_by(|a, b| (&a.d_vertices, &a.gamma).cmp(&(&b.d_vertices, &b.gamma)));
    cuts
}
