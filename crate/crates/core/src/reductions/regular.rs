//! Regular trees with exact level branching, and the level-weight transforms
//! that turn them into one-dimensional problems.

use crate::error::{Error, Result};
use crate::exponent::Exponents;
use crate::tree::{RootedTree, VertexId, WeightedTree};

/// Default cap on generated tree sizes.
pub const DEFAULT_VERTEX_CAP: usize = 1 << 20;

/// Branching factors `b_0, …, b_{N-1}`: every depth-`j` vertex has `b_j`
/// children, so `2^{ψ(j)} = Π_{i<j} b_i` counts the vertices at depth `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiProfile {
    branching: Vec<usize>,
}

impl PsiProfile {
    pub fn new(branching: Vec<usize>) -> Result<Self> {
        if let Some(i) = branching.iter().position(|&b| b == 0) {
            return Err(Error::Precondition(format!("branching factor b_{i} is zero")));
        }
        Ok(PsiProfile { branching })
    }

    pub fn branching(&self) -> &[usize] {
        &self.branching
    }

    /// `N`, the depth of the generated tree.
    pub fn depth(&self) -> usize {
        self.branching.len()
    }

    /// `2^{ψ(j)}` for `j = 0..=N`, saturating at `u128::MAX`.
    pub fn level_sizes(&self) -> Vec<u128> {
        let mut out = vec![1u128];
        for &b in &self.branching {
            let last = *out.last().expect("non-empty");
            out.push(last.saturating_mul(b as u128));
        }
        out
    }

    /// `ψ(j) = Σ_{i<j} log₂ b_i` for `j = 0..=N`.
    pub fn psi(&self) -> Vec<f64> {
        let mut out = vec![0.0];
        for &b in &self.branching {
            out.push(out.last().expect("non-empty") + (b as f64).log2());
        }
        out
    }

    /// `Π_{j≤i<j'} b_i`, the number of depth-`j'` descendants of a depth-`j` vertex.
    pub fn descendants(&self, j: usize, j2: usize) -> u128 {
        self.branching[j..j2]
            .iter()
            .fold(1u128, |acc, &b| acc.saturating_mul(b as u128))
    }

    /// Total vertex count, saturating.
    pub fn vertex_count(&self) -> u128 {
        self.level_sizes()
            .into_iter()
            .fold(0u128, u128::saturating_add)
    }
}

/// Builds the regular tree of `profile`, ids in breadth-first order.
pub fn generate_regular_tree(profile: &PsiProfile, cap: usize) -> Result<RootedTree> {
    let total = profile.vertex_count();
    if total > cap as u128 {
        return Err(Error::CapExceeded {
            what: "regular tree vertices",
            size: usize::try_from(total).unwrap_or(usize::MAX),
            cap,
        });
    }
    let mut parent = vec![None];
    let mut level = vec![0usize];
    for &b in profile.branching() {
        let mut next = Vec::with_capacity(level.len() * b);
        for &v in &level {
            for _ in 0..b {
                next.push(parent.len());
                parent.push(Some(VertexId(v)));
            }
        }
        level = next;
    }
    RootedTree::from_parents(parent, VertexId(0))
}

/// Weights that depend only on depth, indexed `0..=N`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelWeights {
    pub u_levels: Vec<f64>,
    pub w_levels: Vec<f64>,
}

impl LevelWeights {
    pub fn new(u_levels: Vec<f64>, w_levels: Vec<f64>) -> Result<Self> {
        if u_levels.len() != w_levels.len() {
            return Err(Error::LengthMismatch {
                expected: u_levels.len(),
                actual: w_levels.len(),
            });
        }
        for (name, xs) in [("u", &u_levels), ("w", &w_levels)] {
            if let Some((j, &x)) = xs.iter().enumerate().find(|(_, x)| !(x.is_finite() && **x > 0.0)) {
                return Err(Error::InvalidWeight {
                    name,
                    vertex: VertexId(j),
                    value: x,
                });
            }
        }
        Ok(LevelWeights { u_levels, w_levels })
    }

    /// `u_j = c_u r_u^j`, `w_j = c_w r_w^j` for `j = 0..=n`.
    pub fn geometric(n: usize, ru: f64, rw: f64) -> Result<Self> {
        LevelWeights::new(
            (0..=n).map(|j| ru.powi(j as i32)).collect(),
            (0..=n).map(|j| rw.powi(j as i32)).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.u_levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u_levels.is_empty()
    }

    fn check(&self, profile: &PsiProfile) -> Result<()> {
        if self.len() != profile.depth() + 1 {
            return Err(Error::LengthMismatch {
                expected: profile.depth() + 1,
                actual: self.len(),
            });
        }
        Ok(())
    }
}

/// Puts level weights on a tree by depth.
pub fn level_weighted_tree(tree: RootedTree, lw: &LevelWeights) -> Result<WeightedTree> {
    if tree.height() >= lw.len() {
        return Err(Error::LengthMismatch {
            expected: tree.height() + 1,
            actual: lw.len(),
        });
    }
    let u = tree.vertices().map(|v| lw.u_levels[tree.depth(v)]).collect();
    let w = tree.vertices().map(|v| lw.w_levels[tree.depth(v)]).collect();
    WeightedTree::new(tree, u, w)
}

/// `ŵ_j = w_j 2^{ψ(j)/q}`, `û_j = u_j 2^{-ψ(j)/p}`.
pub fn hat_weights(lw: &LevelWeights, profile: &PsiProfile, e: Exponents) -> Result<(Vec<f64>, Vec<f64>)> {
    lw.check(profile)?;
    let psi = profile.psi();
    let u = lw
        .u_levels
        .iter()
        .zip(&psi)
        .map(|(u, s)| u * (-s * e.p.recip()).exp2())
        .collect();
    let w = lw
        .w_levels
        .iter()
        .zip(&psi)
        .map(|(w, s)| w * (s * e.q.recip()).exp2())
        .collect();
    Ok((u, w))
}

/// Weights of the `m* = 2^{ψ(N)}` identical chains a regular tree splits into:
/// `ũ_i = u_i 2^{(ψ(N)-ψ(i))/p}`, `w̃_i = w_i 2^{-(ψ(N)-ψ(i))/q}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainWeights {
    pub u: Vec<f64>,
    pub w: Vec<f64>,
    pub m_star: u128,
}

pub fn chain_weights(lw: &LevelWeights, profile: &PsiProfile, e: Exponents) -> Result<ChainWeights> {
    lw.check(profile)?;
    let psi = profile.psi();
    let top = psi[profile.depth()];
    let u = lw
        .u_levels
        .iter()
        .zip(&psi)
        .map(|(u, s)| u * ((top - s) * e.p.recip()).exp2())
        .collect();
    let w = lw
        .w_levels
        .iter()
        .zip(&psi)
        .map(|(w, s)| w * (-(top - s) * e.q.recip()).exp2())
        .collect();
    Ok(ChainWeights {
        u,
        w,
        m_star: profile.level_sizes()[profile.depth()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(p: f64, q: f64) -> Exponents {
        Exponents::from_values(p, q).unwrap()
    }

    #[test]
    fn regular_tree_shapes() {
        let p = PsiProfile::new(vec![2, 2]).unwrap();
        let t = generate_regular_tree(&p, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(p.psi(), vec![0.0, 1.0, 2.0]);

        let chain = generate_regular_tree(&PsiProfile::new(vec![1; 5]).unwrap(), 100).unwrap();
        assert_eq!(chain, RootedTree::chain(6));
        assert!(PsiProfile::new(vec![1; 5]).unwrap().psi().iter().all(|&s| s == 0.0));

        let p = PsiProfile::new(vec![3, 1, 2]).unwrap();
        assert_eq!(p.level_sizes(), vec![1, 3, 3, 6]);
        let t = generate_regular_tree(&p, 100).unwrap();
        let sizes: Vec<usize> = (0..4).map(|j| t.level_set(t.root(), j).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 3, 3, 6]);
    }

    #[test]
    fn descendant_counts_are_exact() {
        let p = PsiProfile::new(vec![3, 1, 2, 2]).unwrap();
        let t = generate_regular_tree(&p, 1000).unwrap();
        for v in t.vertices() {
            let j = t.depth(v);
            for j2 in j..=p.depth() {
                let n = t.level_set(v, j2 - j).unwrap().len() as u128;
                assert_eq!(n, p.descendants(j, j2));
                let psi = p.psi();
                assert!(((psi[j2] - psi[j]).exp2() - n as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let p = PsiProfile::new(vec![10; 10]).unwrap();
        assert!(matches!(
            generate_regular_tree(&p, DEFAULT_VERTEX_CAP),
            Err(Error::CapExceeded { .. })
        ));
        assert!(PsiProfile::new(vec![2, 0]).is_err());
    }

    #[test]
    fn hat_weight_examples() {
        let lw = LevelWeights::geometric(3, 3.0, 0.5).unwrap();
        let flat = PsiProfile::new(vec![1; 3]).unwrap();
        let (u, w) = hat_weights(&lw, &flat, e(2.0, 3.0)).unwrap();
        assert_eq!((u, w), (lw.u_levels.clone(), lw.w_levels.clone()));

        let bin = PsiProfile::new(vec![2; 3]).unwrap();
        let (_, w) = hat_weights(&lw, &bin, e(2.0, 2.0)).unwrap();
        for (j, w) in w.iter().enumerate() {
            assert!((w - (-(j as f64) / 2.0).exp2()).abs() < 1e-15);
        }
        let ones = LevelWeights::geometric(3, 1.0, 1.0).unwrap();
        let (u, _) = hat_weights(&ones, &bin, e(2.0, 2.0)).unwrap();
        for (j, u) in u.iter().enumerate() {
            assert!((u - (-(j as f64) / 2.0).exp2()).abs() < 1e-15);
        }
        assert!(hat_weights(&ones, &PsiProfile::new(vec![2]).unwrap(), e(2.0, 2.0)).is_err());
    }

    #[test]
    fn chain_weight_examples() {
        let ones = LevelWeights::geometric(1, 1.0, 1.0).unwrap();
        let c = chain_weights(&ones, &PsiProfile::new(vec![2]).unwrap(), e(2.0, 2.0)).unwrap();
        assert_eq!(c.m_star, 2);
        assert!((c.u[0] - 2f64.sqrt()).abs() < 1e-15 && c.u[1] == 1.0);
        assert!((c.w[0] - 0.5f64.sqrt()).abs() < 1e-15 && c.w[1] == 1.0);
    }

    #[test]
    fn chain_and_hat_weights_differ_by_a_constant() {
        let p = PsiProfile::new(vec![3, 1, 2, 5]).unwrap();
        let lw = LevelWeights::new(vec![0.3, 1.2, 4.0, 0.7, 2.0], vec![1.0, 0.1, 0.9, 3.0, 0.25]).unwrap();
        let ex = e(3.0, 1.5);
        let (uh, wh) = hat_weights(&lw, &p, ex).unwrap();
        let c = chain_weights(&lw, &p, ex).unwrap();
        let r0 = c.u[0] * c.w[0] / (uh[0] * wh[0]);
        for i in 0..5 {
            for j in 0..5 {
                let r = c.u[i] * c.w[j] / (uh[i] * wh[j]);
                assert!((r / r0 - 1.0).abs() < 1e-12);
            }
        }
    }
}
