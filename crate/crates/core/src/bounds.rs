//! Capacities `β_{D,Γ}` of cuts and the two-sided bounds built from them.
//!
//! `β_{D,Γ}` is the least `l_p` norm of a function on `D` whose
//! `u`-weighted path sums from the base reach one at every vertex of `Γ`.
//! It satisfies the join recursion
//!
//! ```text
//! 1/β_{D,Γ} = ‖ ( u(ξ*), 1/‖(β_{D_j,Γ_j})_j‖_{l_p} ) ‖_{l_{p'}}
//! ```
//!
//! over the children `ξ_j` of the base, with `β = 0` when `Γ_j` is empty and
//! `β = 1/u(ξ*)` for the singleton cut. [`beta_oracle`] solves the defining
//! convex program directly and is used to cross-check [`beta_recursive`].

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use minilp::{ComparisonOp, OptimizationDirection, Problem};
use serde::Serialize;

use crate::cut::{enumerate_cuts, Cut};
use crate::error::{Error, Result};
use crate::exponent::{lp_norm, Exponent, Exponents};
use crate::tree::{weighted_norm, VertexId, WeightedTree};

/// `β_{D,Γ}` by the join recursion.
pub fn beta_recursive(wt: &WeightedTree, p: Exponent, cut: &Cut) -> Result<f64> {
    cut.validate(&wt.tree)?;
    Ok(beta_unchecked(wt, p, cut, cut.base))
}

fn beta_unchecked(wt: &WeightedTree, p: Exponent, cut: &Cut, v: VertexId) -> f64 {
    if cut.in_gamma(v) {
        return 1.0 / wt.u(v);
    }
    let kids = wt.tree.children(v);
    if kids.is_empty() || !cut.contains(kids[0]) {
        // maximal in D but not in Γ: empty constraint set
        return 0.0;
    }
    let betas: Vec<f64> = kids.iter().map(|&c| beta_unchecked(wt, p, cut, c)).collect();
    let s = lp_norm(betas, p);
    if s == 0.0 {
        return 0.0;
    }
    let big_b = lp_norm([wt.u(v), 1.0 / s], p.conjugate());
    1.0 / big_b
}

/// Outcome of the convex oracle: a certified bracket around `β`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BetaBracket {
    /// Dual lower bound.
    pub lower: f64,
    /// Norm of a feasible primal point.
    pub upper: f64,
    pub iterations: usize,
}

impl BetaBracket {
    pub fn value(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn relative_gap(&self) -> f64 {
        (self.upper - self.lower) / self.upper
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaOracleOptions {
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for BetaOracleOptions {
    fn default() -> Self {
        BetaOracleOptions {
            tol: 1e-9,
            max_sweeps: 100_000,
        }
    }
}

/// Constraint rows `M[γ][k] = u(v_k)` for `v_k` on the path base → γ.
fn constraint_rows(wt: &WeightedTree, cut: &Cut) -> Result<(Vec<VertexId>, Vec<Vec<f64>>)> {
    let vars = cut.d_vertices.clone();
    let index = |v: VertexId| vars.binary_search(&v).expect("path stays inside D");
    let mut rows = Vec::with_capacity(cut.gamma.len());
    for &g in &cut.gamma {
        let mut row = vec![0.0; vars.len()];
        for v in wt.tree.path_segment(cut.base, g)? {
            row[index(v)] = wt.u(v);
        }
        rows.push(row);
    }
    Ok((vars, rows))
}

/// `β_{D,Γ}` from its definition as a minimum-norm problem:
/// `min ‖φ‖_p` subject to `Σ_{ξ* ≤ ξ' ≤ ξ} u(ξ') φ(ξ') ≥ 1` for `ξ ∈ Γ`.
///
/// For `1 < p < ∞` this runs exact coordinate ascent on the concave dual
/// `max_{λ ≥ 0} Σλ - ‖M^T λ‖_{p'}^{p'} / p'` and stops once the primal point
/// recovered from `λ` and the dual value agree to `tol`. For `p ∈ {1, ∞}` the
/// problem is a linear program.
pub fn beta_oracle(
    wt: &WeightedTree,
    p: Exponent,
    cut: &Cut,
    opts: &BetaOracleOptions,
) -> Result<BetaBracket> {
    cut.validate(&wt.tree)?;
    let (vars, rows) = constraint_rows(wt, cut)?;
    if p.is_one() || p.is_infinite() {
        let value = beta_lp(&rows, vars.len(), p)?;
        return Ok(BetaBracket {
            lower: value,
            upper: value,
            iterations: 0,
        });
    }
    beta_dual_ascent(&rows, vars.len(), p, opts)
}

fn beta_lp(rows: &[Vec<f64>], nvars: usize, p: Exponent) -> Result<f64> {
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let phi: Vec<_> = if p.is_one() {
        (0..nvars).map(|_| lp.add_var(1.0, (0.0, f64::INFINITY))).collect()
    } else {
        (0..nvars).map(|_| lp.add_var(0.0, (0.0, f64::INFINITY))).collect()
    };
    if p.is_infinite() {
        let t = lp.add_var(1.0, (0.0, f64::INFINITY));
        for &x in &phi {
            lp.add_constraint(&[(x, 1.0), (t, -1.0)], ComparisonOp::Le, 0.0);
        }
    }
    for row in rows {
        let terms: Vec<_> = row
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(k, &c)| (phi[k], c))
            .collect();
        lp.add_constraint(&terms[..], ComparisonOp::Ge, 1.0);
    }
    let sol = lp
        .solve()
        .map_err(|e| Error::LinearProgram(e.to_string()))?;
    Ok(sol.objective())
}

fn beta_dual_ascent(
    rows: &[Vec<f64>],
    nvars: usize,
    p: Exponent,
    opts: &BetaOracleOptions,
) -> Result<BetaBracket> {
    let pc = p.conjugate().value();
    let pv = p.value();
    let m = rows.len();
    let mut lambda = vec![0.0; m];
    let mut y = vec![0.0; nvars]; // M^T λ
    let dual = |lambda: &[f64], y: &[f64]| {
        lambda.iter().sum::<f64>() - y.iter().map(|v| v.powf(pc)).sum::<f64>() / pc
    };
    let bracket = |lambda: &[f64], y: &[f64]| -> Option<(f64, f64)> {
        let d = dual(lambda, y);
        if d <= 0.0 {
            return None;
        }
        let lower = (pv * d).powf(1.0 / pv);
        let phi: Vec<f64> = y.iter().map(|v| v.powf(pc - 1.0)).collect();
        let worst = rows
            .iter()
            .map(|r| r.iter().zip(&phi).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        if worst <= 0.0 {
            return None;
        }
        let upper = lp_norm(phi, p) / worst;
        Some((lower, upper))
    };

    let mut last = (0.0, f64::INFINITY);
    for sweep in 1..=opts.max_sweeps {
        for i in 0..m {
            let row = &rows[i];
            // remove λ_i's contribution, then maximize the 1-D concave slice
            for (yk, a) in y.iter_mut().zip(row) {
                *yk = (*yk - lambda[i] * a).max(0.0);
            }
            let grad = |t: f64| {
                1.0 - row
                    .iter()
                    .zip(y.iter())
                    .filter(|(a, _)| **a != 0.0)
                    .map(|(a, yk)| a * (yk + t * a).powf(pc - 1.0))
                    .sum::<f64>()
            };
            let slope = |t: f64| {
                -(pc - 1.0)
                    * row
                        .iter()
                        .zip(y.iter())
                        .filter(|(a, _)| **a != 0.0)
                        .map(|(a, yk)| a * a * (yk + t * a).powf(pc - 2.0))
                        .sum::<f64>()
            };
            let t = if grad(0.0) <= 0.0 {
                0.0
            } else {
                // the slice derivative is decreasing: bracket the root, then
                // Newton steps that fall back to bisection outside the bracket
                let (mut lo, mut hi) = (0.0, lambda[i].max(1.0));
                while grad(hi) > 0.0 {
                    lo = hi;
                    hi *= 2.0;
                }
                let mut t = if lambda[i] > lo && lambda[i] < hi {
                    lambda[i]
                } else {
                    0.5 * (lo + hi)
                };
                for _ in 0..200 {
                    let g = grad(t);
                    if g > 0.0 {
                        lo = t;
                    } else {
                        hi = t;
                    }
                    let d = slope(t);
                    let mut next = if d < 0.0 && d.is_finite() { t - g / d } else { f64::NAN };
                    if !(next > lo && next < hi) {
                        next = 0.5 * (lo + hi);
                    }
                    if (next - t).abs() <= 1e-16 * t.max(1e-300) || hi - lo <= 1e-16 * hi {
                        t = next;
                        break;
                    }
                    t = next;
                }
                t
            };
            lambda[i] = t;
            for (yk, a) in y.iter_mut().zip(row) {
                *yk += t * a;
            }
        }
        newton_polish(rows, pc, &mut lambda, &mut y, &dual);
        if let Some((lower, upper)) = bracket(&lambda, &y) {
            last = (lower, upper);
            if upper - lower <= opts.tol * upper {
                return Ok(BetaBracket {
                    lower,
                    upper,
                    iterations: sweep,
                });
            }
        }
    }
    Err(Error::NoConvergence {
        iterations: opts.max_sweeps,
        gap: (last.1 - last.0) / last.1,
    })
}

/// One projected Newton step on the rows with `λ_i > 0`, kept only if it
/// increases the dual objective. Coordinate sweeps identify the active set;
/// this step supplies fast local convergence on it.
fn newton_polish(
    rows: &[Vec<f64>],
    pc: f64,
    lambda: &mut [f64],
    y: &mut [f64],
    dual: &dyn Fn(&[f64], &[f64]) -> f64,
) {
    let active: Vec<usize> = (0..rows.len()).filter(|&i| lambda[i] > 0.0).collect();
    if active.is_empty() || y.iter().zip(0..).any(|(v, k)| {
        *v <= 0.0 && active.iter().any(|&i| rows[i][k] != 0.0)
    }) {
        return;
    }
    let m = active.len();
    let phi: Vec<f64> = y.iter().map(|v| v.powf(pc - 1.0)).collect();
    let curv: Vec<f64> = y
        .iter()
        .map(|v| if *v > 0.0 { (pc - 1.0) * v.powf(pc - 2.0) } else { 0.0 })
        .collect();
    let mut h = DMatrix::zeros(m, m);
    let mut g = DVector::zeros(m);
    for (a, &i) in active.iter().enumerate() {
        g[a] = 1.0 - rows[i].iter().zip(&phi).map(|(r, f)| r * f).sum::<f64>();
        for (b, &j) in active.iter().enumerate() {
            h[(a, b)] = rows[i]
                .iter()
                .zip(&rows[j])
                .zip(&curv)
                .map(|((x, z), c)| x * z * c)
                .sum::<f64>();
        }
    }
    let Some(chol) = h.cholesky() else {
        return;
    };
    let step = chol.solve(&g);
    let base = dual(lambda, y);
    let mut scale = 1.0;
    for _ in 0..30 {
        let trial: Vec<f64> = {
            let mut t = lambda.to_vec();
            for (a, &i) in active.iter().enumerate() {
                t[i] = (lambda[i] + scale * step[a]).max(0.0);
            }
            t
        };
        let mut ty = vec![0.0; y.len()];
        for (i, row) in rows.iter().enumerate() {
            for (k, r) in row.iter().enumerate() {
                ty[k] += trial[i] * r;
            }
        }
        if dual(&trial, &ty) > base {
            lambda.copy_from_slice(&trial);
            y.copy_from_slice(&ty);
            return;
        }
        scale *= 0.5;
    }
}

/// `‖w‖_{l_q}` over `∪_{ξ∈Γ} A_ξ`.
pub fn residual_weight_norm(wt: &WeightedTree, q: Exponent, cut: &Cut) -> Result<f64> {
    cut.validate(&wt.tree)?;
    Ok(weighted_norm(&wt.w, &cut.residual_vertices(&wt.tree), q))
}

/// A supremum together with the vertex attaining it (smallest id on ties).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Witnessed {
    pub value: f64,
    pub witness: VertexId,
}

/// `sup_ξ u(ξ) ‖w‖_{l_q(A_ξ)}`.
pub fn sup_product(wt: &WeightedTree, q: Exponent) -> Witnessed {
    let norms = wt.subtree_w_norms(q);
    let mut best = Witnessed {
        value: f64::NEG_INFINITY,
        witness: wt.tree.root(),
    };
    for v in wt.tree.vertices() {
        let x = wt.u(v) * norms[v.0];
        if x > best.value {
            best = Witnessed {
                value: x,
                witness: v,
            };
        }
    }
    best
}

/// `sup_{ξ ≥ ξ*} (Σ_{ξ* ≤ ξ' ≤ ξ} u^{p'}(ξ'))^{1/p'} ‖w‖_{l_q(A_ξ)}`.
pub fn path_lower_bound(wt: &WeightedTree, e: Exponents, xi_star: VertexId) -> Result<Witnessed> {
    if !wt.tree.contains(xi_star) {
        return Err(Error::UnknownVertex(xi_star));
    }
    let pc = e.p_conj();
    let norms = wt.subtree_w_norms(e.q);
    // accumulate Σ u^{p'} (or max u for p' = ∞) down the tree
    let mut acc = vec![0.0; wt.len()];
    let mut best = Witnessed {
        value: f64::NEG_INFINITY,
        witness: xi_star,
    };
    let mut visit = wt.tree.subtree(xi_star)?;
    visit.sort_by_key(|v| (wt.tree.depth(*v), v.0));
    for &v in &visit {
        let above: f64 = if v == xi_star {
            0.0
        } else {
            acc[wt.tree.parent(v).expect("below base").0]
        };
        acc[v.0] = if pc.is_infinite() {
            f64::max(above, wt.u(v))
        } else {
            above + pc.pow(wt.u(v))
        };
    }
    let mut ids = visit;
    ids.sort();
    for v in ids {
        let path = if pc.is_infinite() {
            acc[v.0]
        } else {
            acc[v.0].powf(pc.recip())
        };
        let x = path * norms[v.0];
        if x > best.value {
            best = Witnessed {
                value: x,
                witness: v,
            };
        }
    }
    Ok(best)
}

/// Largest ratio `‖w‖_{l_q(residual)} / β` over all cuts at a base vertex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutSupremum {
    pub value: f64,
    pub witness: Cut,
    pub cuts_evaluated: usize,
}

impl Serialize for Cut {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Cut", 3)?;
        st.serialize_field("base", &self.base)?;
        st.serialize_field("d", &self.d_vertices)?;
        st.serialize_field("gamma", &self.gamma)?;
        st.end()
    }
}

/// Supremum over every cut based at `xi_star`; requires `p ≤ q`.
pub fn cut_supremum(
    wt: &WeightedTree,
    e: Exponents,
    xi_star: VertexId,
    cap: usize,
) -> Result<CutSupremum> {
    if !e.p_le_q() {
        return Err(Error::Regime(format!(
            "the cut characterization needs p <= q, got {e}"
        )));
    }
    let cuts = enumerate_cuts(&wt.tree, xi_star, cap)?;
    let count = cuts.len();
    let mut best: Option<(f64, Cut)> = None;
    for cut in cuts {
        let beta = beta_unchecked(wt, e.p, &cut, cut.base);
        let residual = weighted_norm(&wt.w, &cut.residual_vertices(&wt.tree), e.q);
        let ratio = residual / beta;
        if best.as_ref().map_or(true, |(b, _)| ratio > *b) {
            best = Some((ratio, cut));
        }
    }
    let (value, witness) = best.expect("the singleton cut always exists");
    Ok(CutSupremum {
        value,
        witness,
        cuts_evaluated: count,
    })
}

/// Constants of the branching and decay hypotheses of the sup-product bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Hypothesis1Report {
    /// Smallest `K ≥ 1` bounding branching and the edge ratios `u(child)/u(parent)`.
    pub k: f64,
    /// Largest ratio `‖w‖_{l_q(A_ξ'')} / ‖w‖_{l_q(A_ξ)}` with `ξ''` at distance `l0` from `ξ`.
    pub lambda: f64,
    pub l0: usize,
    pub satisfied: bool,
}

pub fn check_theorem1_hypotheses(wt: &WeightedTree, q: Exponent, l0: usize) -> Result<Hypothesis1Report> {
    if l0 == 0 {
        return Err(Error::Precondition("l0 must be at least 1".into()));
    }
    let t = &wt.tree;
    let mut k = 1.0f64.max(t.max_branching() as f64);
    for v in t.vertices() {
        for &c in t.children(v) {
            k = k.max(wt.u(c) / wt.u(v));
        }
    }
    let norms = wt.subtree_w_norms(q);
    let mut lambda = 0.0f64;
    for v in t.vertices() {
        for d in t.level_set(v, l0)? {
            lambda = lambda.max(norms[d.0] / norms[v.0]);
        }
    }
    Ok(Hypothesis1Report {
        k,
        lambda,
        l0,
        satisfied: lambda < 1.0,
    })
}

/// One named quantity in a [`BoundReport`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundEntry {
    pub value: f64,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Named bound quantities for one instance, plus the settings used.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub p: String,
    pub q: String,
    pub tree_digest: String,
    pub seed: u64,
    pub tol: f64,
    pub quantities: BTreeMap<String, BoundEntry>,
    pub warnings: Vec<String>,
}

impl BoundReport {
    pub fn new(wt: &WeightedTree, e: Exponents, seed: u64, tol: f64) -> Self {
        BoundReport {
            p: e.p.to_string(),
            q: e.q.to_string(),
            tree_digest: format!("{:016x}", wt.digest()),
            seed,
            tol,
            quantities: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    pub fn insert(&mut self, name: &str, value: f64, method: &str, witness: Option<String>) {
        self.quantities.insert(
            name.to_string(),
            BoundEntry {
                value,
                method: method.to_string(),
                witness,
            },
        );
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.quantities.get(name).map(|e| e.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::DEFAULT_CUT_CAP;
    use crate::tree::RootedTree;

    fn ids(v: &[usize]) -> Vec<VertexId> {
        v.iter().map(|&i| VertexId(i)).collect()
    }

    fn star() -> WeightedTree {
        WeightedTree::unit(RootedTree::from_edges(&[(0, 1), (0, 2)], 0).unwrap())
    }

    #[test]
    fn beta_examples() {
        let one = WeightedTree::new(RootedTree::chain(1), vec![2.0], vec![1.0]).unwrap();
        let b = beta_recursive(&one, Exponent::TWO, &Cut::singleton(VertexId(0))).unwrap();
        assert_eq!(b, 0.5);

        let chain = WeightedTree::unit(RootedTree::chain(2));
        let cut = Cut::new(VertexId(0), ids(&[0, 1]), ids(&[1]));
        let b = beta_recursive(&chain, Exponent::TWO, &cut).unwrap();
        assert!((b - 0.5f64.sqrt()).abs() < 1e-15);

        let cut = Cut::new(VertexId(0), ids(&[0, 1, 2]), ids(&[1, 2]));
        let b = beta_recursive(&star(), Exponent::TWO, &cut).unwrap();
        assert!((b - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn oracle_matches_examples() {
        let opts = BetaOracleOptions {
            tol: 1e-10,
            ..Default::default()
        };
        let chain = WeightedTree::unit(RootedTree::chain(2));
        let cut = Cut::new(VertexId(0), ids(&[0, 1]), ids(&[1]));
        let b = beta_oracle(&chain, Exponent::TWO, &cut, &opts).unwrap();
        assert!((b.value() - 0.5f64.sqrt()).abs() < 1e-8);

        let cut = Cut::new(VertexId(0), ids(&[0, 1, 2]), ids(&[1, 2]));
        let b = beta_oracle(&star(), Exponent::TWO, &cut, &opts).unwrap();
        assert!((b.value() - (2.0f64 / 3.0).sqrt()).abs() < 1e-8);

        // leaf at depth 3, u ≡ 1, p = 2: (d + 1)^{-1/2}
        let c4 = WeightedTree::unit(RootedTree::chain(4));
        let cut = Cut::new(VertexId(0), ids(&[0, 1, 2, 3]), ids(&[3]));
        let b = beta_oracle(&c4, Exponent::TWO, &cut, &opts).unwrap();
        assert!((b.value() - 0.5).abs() < 1e-8);
    }

    #[test]
    fn oracle_linear_program_cases() {
        let chain = WeightedTree::new(RootedTree::chain(2), vec![2.0, 3.0], vec![1.0, 1.0]).unwrap();
        let cut = Cut::new(VertexId(0), ids(&[0, 1]), ids(&[1]));
        let b = beta_oracle(&chain, Exponent::ONE, &cut, &Default::default()).unwrap();
        assert!((b.value() - 1.0 / 3.0).abs() < 1e-12);
        assert!((beta_recursive(&chain, Exponent::ONE, &cut).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        // p = ∞: constant φ = 1/5
        let b = beta_oracle(&chain, Exponent::INFINITY, &cut, &Default::default()).unwrap();
        assert!((b.value() - 0.2).abs() < 1e-12);
        assert!((beta_recursive(&chain, Exponent::INFINITY, &cut).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn beta_rejects_invalid_cut() {
        let cut = Cut::new(VertexId(0), ids(&[0, 1]), ids(&[1]));
        assert!(beta_recursive(&star(), Exponent::TWO, &cut).is_err());
        assert!(beta_oracle(&star(), Exponent::TWO, &cut, &Default::default()).is_err());
    }

    #[test]
    fn residual_examples() {
        let s = star();
        let q = Exponent::TWO;
        let all = residual_weight_norm(&s, q, &Cut::singleton(VertexId(0))).unwrap();
        assert!((all - 3f64.sqrt()).abs() < 1e-15);
        let cut = Cut::new(VertexId(0), ids(&[0, 1, 2]), ids(&[1, 2]));
        assert!((residual_weight_norm(&s, q, &cut).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let chain = WeightedTree::unit(RootedTree::chain(2));
        let cut = Cut::new(VertexId(0), ids(&[0, 1]), ids(&[1]));
        assert_eq!(residual_weight_norm(&chain, q, &cut).unwrap(), 1.0);
    }

    #[test]
    fn cut_supremum_examples() {
        let e = Exponents::from_values(2.0, 2.0).unwrap();
        let chain = WeightedTree::unit(RootedTree::chain(2));
        let s = cut_supremum(&chain, e, VertexId(0), DEFAULT_CUT_CAP).unwrap();
        assert!((s.value - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(s.cuts_evaluated, 2);

        let one = WeightedTree::new(RootedTree::chain(1), vec![2.0], vec![3.0]).unwrap();
        let s = cut_supremum(&one, e, VertexId(0), DEFAULT_CUT_CAP).unwrap();
        assert!((s.value - 6.0).abs() < 1e-12);

        let s = cut_supremum(&star(), e, VertexId(0), DEFAULT_CUT_CAP).unwrap();
        assert!((s.value - 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(s.witness, Cut::singleton(VertexId(0)));
        assert_eq!(s.cuts_evaluated, 4);
    }

    #[test]
    fn cut_supremum_refuses_p_greater_q() {
        let e = Exponents::from_values(3.0, 2.0).unwrap();
        assert!(matches!(
            cut_supremum(&star(), e, VertexId(0), DEFAULT_CUT_CAP),
            Err(Error::Regime(_))
        ));
    }

    #[test]
    fn sup_product_examples() {
        let one = WeightedTree::new(RootedTree::chain(1), vec![2.0], vec![3.0]).unwrap();
        assert_eq!(sup_product(&one, Exponent::TWO).value, 6.0);
        let chain = WeightedTree::unit(RootedTree::chain(2));
        let s = sup_product(&chain, Exponent::TWO);
        assert!((s.value - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(s.witness, VertexId(0));
    }

    #[test]
    fn sup_product_binary_geometric() {
        // w = 4^{-depth} on a binary tree: Σ_i 2^i 16^{-i} → 8/7
        let depth = 12;
        let n = (1usize << (depth + 1)) - 1;
        let edges: Vec<_> = (1..n).map(|c| ((c - 1) / 2, c)).collect();
        let t = RootedTree::from_edges(&edges, 0).unwrap();
        let w: Vec<f64> = t.vertices().map(|v| 4f64.powi(-(t.depth(v) as i32))).collect();
        let wt = WeightedTree::new(t, vec![1.0; n], w).unwrap();
        let direct: f64 = (0..=depth).map(|i| 2f64.powi(i) * 16f64.powi(-i)).sum::<f64>().sqrt();
        let s = sup_product(&wt, Exponent::TWO);
        assert_eq!(s.witness, VertexId(0));
        assert!((s.value - direct).abs() < 1e-14);
        assert!((s.value - (8.0f64 / 7.0).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn path_lower_bound_examples() {
        let e = Exponents::from_values(2.0, 2.0).unwrap();
        let one = WeightedTree::new(RootedTree::chain(1), vec![2.0], vec![3.0]).unwrap();
        assert_eq!(path_lower_bound(&one, e, VertexId(0)).unwrap().value, 6.0);
        let c2 = WeightedTree::unit(RootedTree::chain(2));
        assert!((path_lower_bound(&c2, e, VertexId(0)).unwrap().value - 2f64.sqrt()).abs() < 1e-15);
        let c3 = WeightedTree::unit(RootedTree::chain(3));
        let b = path_lower_bound(&c3, e, VertexId(0)).unwrap();
        assert!((b.value - 2.0).abs() < 1e-15);
        assert_eq!(b.witness, VertexId(1));
        assert!(path_lower_bound(&c3, e, VertexId(7)).is_err());
    }

    #[test]
    fn hypotheses_examples() {
        let depth = 6;
        let n = (1usize << (depth + 1)) - 1;
        let edges: Vec<_> = (1..n).map(|c| ((c - 1) / 2, c)).collect();
        let t = RootedTree::from_edges(&edges, 0).unwrap();
        let w: Vec<f64> = t.vertices().map(|v| 4f64.powi(-(t.depth(v) as i32))).collect();
        let wt = WeightedTree::new(t, vec![1.0; n], w).unwrap();
        let r = check_theorem1_hypotheses(&wt, Exponent::TWO, 1).unwrap();
        assert_eq!(r.k, 2.0);
        // subtree sums at depth j: 16^{-j} Σ_{k ≤ depth - j} 8^{-k}
        let s = |m: i32| (0..=m).map(|k| 8f64.powi(-k)).sum::<f64>();
        let expected = (0..depth as i32)
            .map(|j| 0.25 * (s(depth as i32 - j - 1) / s(depth as i32 - j)).sqrt())
            .fold(0.0, f64::max);
        assert!((r.lambda - expected).abs() < 1e-15);
        assert!((r.lambda - 0.25).abs() < 1e-5);
        assert!(r.satisfied);

        let n = 6;
        let chain = WeightedTree::unit(RootedTree::chain(n + 1));
        let r = check_theorem1_hypotheses(&chain, Exponent::ONE, 1).unwrap();
        assert!((r.lambda - n as f64 / (n as f64 + 1.0)).abs() < 1e-15);
        assert_eq!(r.k, 1.0);

        let star = WeightedTree::new(
            RootedTree::from_edges(&[(0, 1), (0, 2)], 0).unwrap(),
            vec![1.0, 5.0, 5.0],
            vec![1.0; 3],
        )
        .unwrap();
        assert!(check_theorem1_hypotheses(&star, Exponent::TWO, 1).unwrap().k >= 5.0);
        assert!(check_theorem1_hypotheses(&star, Exponent::TWO, 0).is_err());
    }
}
