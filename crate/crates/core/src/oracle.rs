//! Numerical `l_p → l_q` norms of the summation operator
//! `(Sf)(ξ) = w(ξ) Σ_{ξ' ≤ ξ} u(ξ') f(ξ')`.
//!
//! The kernel is entrywise non-negative, so `|Sf| ≤ S|f|` pointwise and the
//! supremum may be taken over non-negative unit vectors only. Every method
//! below works on the non-negative part of the `l_p` sphere.
//!
//! Closed forms are used where they are exact (`p = 1`, `q = ∞`, `p = ∞`),
//! a symmetric eigensolve for `p = q = 2`, and otherwise a multi-start
//! nonlinear power ascent. The ascent returns a feasible witness, so its
//! value is always a certified lower bound on the norm.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::{lp_norm, Exponent, Exponents};
use crate::tree::{VertexId, WeightedForest, WeightedTree};

/// Default cap on the dimension of a dense kernel matrix.
pub const DEFAULT_MATRIX_CAP: usize = 4096;

/// Largest dimension for which `p = q = 2` goes through a dense eigensolve;
/// bigger problems use the ascent, which needs only `O(n)` applications.
pub const SPECTRAL_CAP: usize = 512;

/// A linear map with non-negative entries, applied without materializing it.
pub trait NonNegOperator {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    fn apply(&self, x: &[f64], out: &mut [f64]);
    fn apply_transpose(&self, y: &[f64], out: &mut [f64]);

    /// `‖A e_j‖_q` for every column `j`.
    fn column_norms(&self, q: Exponent) -> Vec<f64> {
        let mut e = vec![0.0; self.ncols()];
        let mut col = vec![0.0; self.nrows()];
        (0..self.ncols())
            .map(|j| {
                e[j] = 1.0;
                self.apply(&e, &mut col);
                e[j] = 0.0;
                lp_norm(col.iter().copied(), q)
            })
            .collect()
    }

    /// Rows of the operator, one at a time.
    fn row(&self, i: usize) -> Vec<f64> {
        let mut e = vec![0.0; self.nrows()];
        e[i] = 1.0;
        let mut out = vec![0.0; self.ncols()];
        self.apply_transpose(&e, &mut out);
        out
    }

    fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.nrows(), self.ncols());
        let mut e = vec![0.0; self.ncols()];
        let mut col = vec![0.0; self.nrows()];
        for j in 0..self.ncols() {
            e[j] = 1.0;
            self.apply(&e, &mut col);
            e[j] = 0.0;
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }
}

/// Dense kernel of the summation operator, rows and columns in `(depth, id)`
/// order: `entry[i, k] = w(ξ_i) u(ξ_k)` when `ξ_k ≤ ξ_i`, else `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelMatrix {
    /// `order[i]` is the vertex of row/column `i`.
    pub order: Vec<VertexId>,
    pub entries: DMatrix<f64>,
}

impl KernelMatrix {
    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    /// Wraps an arbitrary non-negative matrix.
    pub fn from_dense(entries: DMatrix<f64>) -> Result<Self> {
        if let Some(x) = entries.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
            return Err(Error::Precondition(format!(
                "kernel entries must be non-negative and finite, found {x}"
            )));
        }
        let n = entries.ncols();
        Ok(KernelMatrix {
            order: (0..n).map(VertexId).collect(),
            entries,
        })
    }

    pub fn transpose(&self) -> KernelMatrix {
        KernelMatrix {
            order: self.order.clone(),
            entries: self.entries.transpose(),
        }
    }
}

impl NonNegOperator for KernelMatrix {
    fn nrows(&self) -> usize {
        self.entries.nrows()
    }

    fn ncols(&self) -> usize {
        self.entries.ncols()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.entries.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    fn apply_transpose(&self, y: &[f64], out: &mut [f64]) {
        for (j, o) in out.iter_mut().enumerate() {
            *o = self.entries.column(j).iter().zip(y).map(|(a, b)| a * b).sum();
        }
    }

    fn to_dense(&self) -> DMatrix<f64> {
        self.entries.clone()
    }
}

/// Assembles the dense kernel of `S_{u,w}`; errors beyond `cap` vertices.
pub fn assemble_matrix(wt: &WeightedTree, cap: usize) -> Result<KernelMatrix> {
    let n = wt.len();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "kernel matrix dimension",
            size: n,
            cap,
        });
    }
    let order = wt.tree.order().to_vec();
    let mut pos = vec![0usize; n];
    for (i, v) in order.iter().enumerate() {
        pos[v.0] = i;
    }
    let mut entries = DMatrix::zeros(n, n);
    for (i, &v) in order.iter().enumerate() {
        let mut a = Some(v);
        while let Some(anc) = a {
            entries[(i, pos[anc.0])] = wt.w(v) * wt.u(anc);
            a = wt.tree.parent(anc);
        }
    }
    Ok(KernelMatrix { order, entries })
}

/// `(Sf)(ξ)` for every vertex via one root-to-leaf prefix pass, `O(n)`.
pub fn apply_operator(wt: &WeightedTree, f: &[f64]) -> Vec<f64> {
    let n = wt.len();
    let mut prefix = vec![0.0; n];
    for &v in wt.tree.order() {
        let above = wt.tree.parent(v).map_or(0.0, |p| prefix[p.0]);
        prefix[v.0] = above + wt.u(v) * f[v.0];
    }
    prefix
        .iter()
        .zip(&wt.w)
        .map(|(s, w)| s * w)
        .collect()
}

/// `(S^T g)(ξ) = u(ξ) Σ_{ξ' ≥ ξ} w(ξ') g(ξ')` via one leaf-to-root pass.
pub fn apply_adjoint(wt: &WeightedTree, g: &[f64]) -> Vec<f64> {
    let n = wt.len();
    let mut suffix = vec![0.0; n];
    for &v in wt.tree.order().iter().rev() {
        let below: f64 = wt.tree.children(v).iter().map(|c| suffix[c.0]).sum();
        suffix[v.0] = below + wt.w(v) * g[v.0];
    }
    suffix.iter().zip(&wt.u).map(|(s, u)| s * u).collect()
}

/// The summation operator of a weighted tree, indexed by vertex id.
pub struct TreeOperator<'a>(pub &'a WeightedTree);

impl NonNegOperator for TreeOperator<'_> {
    fn nrows(&self) -> usize {
        self.0.len()
    }

    fn ncols(&self) -> usize {
        self.0.len()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        out.copy_from_slice(&apply_operator(self.0, x));
    }

    fn apply_transpose(&self, y: &[f64], out: &mut [f64]) {
        out.copy_from_slice(&apply_adjoint(self.0, y));
    }

    fn column_norms(&self, q: Exponent) -> Vec<f64> {
        self.0
            .subtree_w_norms(q)
            .iter()
            .zip(&self.0.u)
            .map(|(s, u)| s * u)
            .collect()
    }
}

/// Adjoint view of another operator.
pub struct Transposed<'a, A: ?Sized>(pub &'a A);

impl<A: NonNegOperator + ?Sized> NonNegOperator for Transposed<'_, A> {
    fn nrows(&self) -> usize {
        self.0.ncols()
    }

    fn ncols(&self) -> usize {
        self.0.nrows()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        self.0.apply_transpose(x, out)
    }

    fn apply_transpose(&self, y: &[f64], out: &mut [f64]) {
        self.0.apply(y, out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMethod {
    ClosedFormCol,
    ClosedFormRow,
    ClosedFormOnes,
    Spectral,
    MultistartAscent,
    /// Combination of per-component norms of a forest.
    BlockCombination,
}

impl NormMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            NormMethod::ClosedFormCol => "closed-form-col",
            NormMethod::ClosedFormRow => "closed-form-row",
            NormMethod::ClosedFormOnes => "closed-form-ones",
            NormMethod::Spectral => "spectral",
            NormMethod::MultistartAscent => "multistart-ascent",
            NormMethod::BlockCombination => "block-combination",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormOptions {
    pub seed: u64,
    /// Cauchy tolerance on the relative change of the ascent quotient.
    pub tol: f64,
    /// Number of random starts (deterministic starts are added on top).
    pub starts: usize,
    pub max_iter: usize,
    /// Cauchy tolerance on the sup-norm change of the iterate.
    pub step_tol: f64,
    /// Bypass the closed forms and the eigensolve; used by cross-checks.
    pub force_ascent: bool,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions {
            seed: 0,
            tol: 1e-10,
            starts: 32,
            max_iter: 10_000,
            step_tol: 1e-9,
            force_ascent: false,
        }
    }
}

impl NormOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_starts(mut self, starts: usize) -> Self {
        self.starts = starts;
        self
    }

    pub fn ascent_only(mut self) -> Self {
        self.force_ascent = true;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormEstimate {
    pub value: f64,
    /// Unit `l_p` vector, non-negative, in the operator's column indexing.
    pub witness: Vec<f64>,
    pub method: NormMethod,
    pub converged: bool,
    pub starts: usize,
    pub seed: u64,
    pub iterations: usize,
}

fn normalize(x: &mut [f64], p: Exponent) -> bool {
    let n = lp_norm(x.iter().copied(), p);
    if n > 0.0 && n.is_finite() {
        x.iter_mut().for_each(|v| *v /= n);
        true
    } else {
        false
    }
}

fn image_norm<A: NonNegOperator + ?Sized>(a: &A, x: &[f64], q: Exponent, buf: &mut [f64]) -> f64 {
    a.apply(x, buf);
    lp_norm(buf.iter().copied(), q)
}

/// `‖A‖_{l_p → l_q}` for a non-negative operator.
pub fn operator_norm<A: NonNegOperator + ?Sized>(
    a: &A,
    e: Exponents,
    opts: &NormOptions,
) -> Result<NormEstimate> {
    let (p, q) = (e.p, e.q);
    let (m, n) = (a.nrows(), a.ncols());
    if n == 0 || m == 0 {
        return Err(Error::Precondition("empty operator".into()));
    }
    let done = |value: f64, witness: Vec<f64>, method| NormEstimate {
        value,
        witness,
        method,
        converged: true,
        starts: 0,
        seed: opts.seed,
        iterations: 0,
    };
    let mut buf = vec![0.0; m];
    if !opts.force_ascent {
        if p.is_one() {
            // extreme points of the l_1 ball are the basis vectors
            let cols = a.column_norms(q);
            let j = argmax(&cols);
            let mut x = vec![0.0; n];
            x[j] = 1.0;
            let v = image_norm(a, &x, q, &mut buf);
            return Ok(done(v, x, NormMethod::ClosedFormCol));
        }
        if q.is_infinite() {
            // Hölder per row: ‖A‖ = max_i ‖row_i‖_{p'}
            let pc = p.conjugate();
            let rows: Vec<Vec<f64>> = (0..m).map(|i| a.row(i)).collect();
            let norms: Vec<f64> = rows.iter().map(|r| lp_norm(r.iter().copied(), pc)).collect();
            let i = argmax(&norms);
            let mut x: Vec<f64> = if pc.is_infinite() {
                unreachable!("p = 1 handled above")
            } else if pc.is_one() {
                vec![1.0; n]
            } else {
                rows[i].iter().map(|r| r.powf(pc.value() - 1.0)).collect()
            };
            if !normalize(&mut x, p) {
                x = vec![0.0; n];
                x[0] = 1.0;
            }
            let v = image_norm(a, &x, q, &mut buf);
            return Ok(done(v, x, NormMethod::ClosedFormRow));
        }
        if p.is_infinite() {
            // A ≥ 0 is monotone, so the all-ones vector is optimal
            let x = vec![1.0; n];
            let v = image_norm(a, &x, q, &mut buf);
            return Ok(done(v, x, NormMethod::ClosedFormOnes));
        }
        if p.value() == 2.0 && q.value() == 2.0 && m.max(n) <= SPECTRAL_CAP {
            return Ok(spectral_norm(a, opts.seed));
        }
    }
    ascent(a, e, opts)
}

fn argmax(xs: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in xs.iter().enumerate() {
        if x > xs[best] {
            best = i;
        }
    }
    best
}

fn spectral_norm<A: NonNegOperator + ?Sized>(a: &A, seed: u64) -> NormEstimate {
    let dense = a.to_dense();
    let gram = dense.transpose() * &dense;
    let eig = SymmetricEigen::new(gram);
    let top = argmax(eig.eigenvalues.as_slice());
    // Perron vector of a non-negative symmetric matrix may be taken non-negative.
    let mut x: Vec<f64> = eig.eigenvectors.column(top).iter().map(|v| v.abs()).collect();
    normalize(&mut x, Exponent::TWO);
    let mut buf = vec![0.0; a.nrows()];
    let value = image_norm(a, &x, Exponent::TWO, &mut buf);
    NormEstimate {
        value,
        witness: x,
        method: NormMethod::Spectral,
        converged: true,
        starts: 0,
        seed,
        iterations: 0,
    }
}

/// One step of the nonlinear power map `x ↦ ψ_{p'}(A^T ψ_q(Ax))` on the
/// non-negative sphere; `ψ_r(t) = t^{r-1}`.
fn power_step<A: NonNegOperator + ?Sized>(
    a: &A,
    x: &[f64],
    e: Exponents,
    y: &mut [f64],
    z: &mut [f64],
) -> Option<Vec<f64>> {
    let (p, q) = (e.p, e.q);
    a.apply(x, y);
    let ymax = y.iter().copied().fold(0.0, f64::max);
    if ymax == 0.0 {
        return None;
    }
    for v in y.iter_mut() {
        // scale first so large q does not overflow; the map is homogeneous
        let t = *v / ymax;
        *v = if q.is_one() {
            if t > 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            t.powf(q.value() - 1.0)
        };
    }
    a.apply_transpose(y, z);
    let zmax = z.iter().copied().fold(0.0, f64::max);
    if zmax == 0.0 {
        return None;
    }
    let pc = p.conjugate();
    let mut next: Vec<f64> = z
        .iter()
        .map(|&t| {
            let t = t / zmax;
            if pc.is_one() {
                if t > 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                t.powf(pc.value() - 1.0)
            }
        })
        .collect();
    if normalize(&mut next, p) {
        Some(next)
    } else {
        None
    }
}

struct StartResult {
    value: f64,
    witness: Vec<f64>,
    converged: bool,
    iterations: usize,
}

fn run_start<A: NonNegOperator + ?Sized>(
    a: &A,
    e: Exponents,
    mut x: Vec<f64>,
    opts: &NormOptions,
) -> StartResult {
    let mut y = vec![0.0; a.nrows()];
    let mut z = vec![0.0; a.ncols()];
    normalize(&mut x, e.p);
    let mut value = image_norm(a, &x, e.q, &mut y);
    let mut best = (value, x.clone());
    for it in 1..=opts.max_iter {
        let Some(next) = power_step(a, &x, e, &mut y, &mut z) else {
            return StartResult {
                value: best.0,
                witness: best.1,
                converged: true,
                iterations: it,
            };
        };
        let next_value = image_norm(a, &next, e.q, &mut y);
        let step = x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let change = (next_value - value).abs();
        x = next;
        value = next_value;
        if value > best.0 {
            best = (value, x.clone());
        }
        if change <= opts.tol * value.max(f64::MIN_POSITIVE) && step <= opts.step_tol {
            return StartResult {
                value: best.0,
                witness: best.1,
                converged: true,
                iterations: it,
            };
        }
    }
    StartResult {
        value: best.0,
        witness: best.1,
        converged: false,
        iterations: opts.max_iter,
    }
}

fn ascent<A: NonNegOperator + ?Sized>(
    a: &A,
    e: Exponents,
    opts: &NormOptions,
) -> Result<NormEstimate> {
    let n = a.ncols();
    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(opts.starts + 2);
    starts.push(vec![1.0; n]);
    let cols = a.column_norms(e.q);
    let mut basis = vec![0.0; n];
    basis[argmax(&cols)] = 1.0;
    starts.push(basis);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.starts {
        starts.push((0..n).map(|_| rng.gen_range(1e-3..1.0)).collect());
    }
    let mut best: Option<StartResult> = None;
    let mut all_converged = true;
    let mut iterations = 0;
    for x0 in starts {
        let r = run_start(a, e, x0, opts);
        iterations += r.iterations;
        all_converged &= r.converged;
        // ties keep the earliest start
        if best.as_ref().map_or(true, |b| r.value > b.value) {
            best = Some(r);
        }
    }
    let best = best.expect("at least one start");
    Ok(NormEstimate {
        value: best.value,
        witness: best.witness,
        method: NormMethod::MultistartAscent,
        converged: all_converged && best.converged,
        starts: opts.starts + 2,
        seed: opts.seed,
        iterations,
    })
}

/// `𝔖^{p,q}` of a weighted tree; the witness is indexed by vertex id.
pub fn tree_norm(wt: &WeightedTree, e: Exponents, opts: &NormOptions) -> Result<NormEstimate> {
    operator_norm(&TreeOperator(wt), e, opts)
}

/// Norm of a block-diagonal operator from its block norms.
///
/// For `p ≤ q` this is the largest block norm. For `p > q` mass can be split
/// across blocks and the norm is the `l_r` norm of the block norms with
/// `1/r = 1/q - 1/p`.
pub fn combine_block_norms(norms: &[f64], e: Exponents) -> f64 {
    if e.p_le_q() {
        return norms.iter().copied().fold(0.0, f64::max);
    }
    let inv_r = e.q.recip() - e.p.recip();
    let r = Exponent::new(1.0 / inv_r).expect("1/q - 1/p lies in (0, 1]");
    lp_norm(norms.iter().copied(), r)
}

/// Per-component estimates and their block combination.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ForestNorm {
    pub value: f64,
    pub components: Vec<NormEstimate>,
    pub converged: bool,
}

pub fn forest_norm(forest: &WeightedForest, e: Exponents, opts: &NormOptions) -> Result<ForestNorm> {
    let components = forest
        .components
        .iter()
        .map(|t| tree_norm(t, e, opts))
        .collect::<Result<Vec<_>>>()?;
    let norms: Vec<f64> = components.iter().map(|c| c.value).collect();
    Ok(ForestNorm {
        value: combine_block_norms(&norms, e),
        converged: components.iter().all(|c| c.converged),
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::RootedTree;

    fn star() -> WeightedTree {
        WeightedTree::unit(RootedTree::from_edges(&[(0, 1), (0, 2)], 0).unwrap())
    }

    fn ex(p: f64, q: f64) -> Exponents {
        Exponents::from_values(p, q).unwrap()
    }

    #[test]
    fn matrices() {
        let one = WeightedTree::new(RootedTree::chain(1), vec![2.0], vec![3.0]).unwrap();
        assert_eq!(assemble_matrix(&one, 10).unwrap().entries, DMatrix::from_row_slice(1, 1, &[6.0]));
        let c = WeightedTree::unit(RootedTree::chain(2));
        assert_eq!(
            assemble_matrix(&c, 10).unwrap().entries,
            DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 1.0, 1.0])
        );
        assert_eq!(
            assemble_matrix(&star(), 10).unwrap().entries,
            DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 1.0])
        );
        assert!(matches!(assemble_matrix(&star(), 2), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn matrix_rows_follow_depth_then_id() {
        // root 2 with children 0 and 1
        let t = RootedTree::from_edges(&[(2, 0), (2, 1)], 2).unwrap();
        let k = assemble_matrix(&WeightedTree::unit(t), 10).unwrap();
        assert_eq!(k.order, vec![VertexId(2), VertexId(0), VertexId(1)]);
        assert_eq!(k.entries[(0, 1)], 0.0);
        assert_eq!(k.entries[(1, 0)], 1.0);
    }

    #[test]
    fn prefix_application() {
        let c = WeightedTree::unit(RootedTree::chain(2));
        assert_eq!(apply_operator(&c, &[1.0, 0.0]), vec![1.0, 1.0]);
        assert_eq!(apply_operator(&c, &[0.0, 0.0]), vec![0.0, 0.0]);
        let c3 = WeightedTree::unit(RootedTree::chain(3));
        assert_eq!(apply_operator(&c3, &[1.0; 3]), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn one_by_one() {
        let k = KernelMatrix::from_dense(DMatrix::from_row_slice(1, 1, &[6.0])).unwrap();
        for (p, q) in [(1.0, 1.0), (2.0, 2.0), (3.0, 1.5), (1.5, 3.0), (f64::INFINITY, 1.0)] {
            let est = operator_norm(&k, ex(p, q), &NormOptions::default()).unwrap();
            assert!((est.value - 6.0).abs() < 1e-12, "{p} {q}");
        }
    }

    #[test]
    fn chain_two_closed_forms() {
        let k = assemble_matrix(&WeightedTree::unit(RootedTree::chain(2)), 10).unwrap();
        let golden = ((3.0 + 5f64.sqrt()) / 2.0).sqrt();
        let est = operator_norm(&k, ex(2.0, 2.0), &NormOptions::default()).unwrap();
        assert_eq!(est.method, NormMethod::Spectral);
        assert!((est.value - golden).abs() < 1e-12);
        let est = operator_norm(&k, ex(1.0, 2.0), &NormOptions::default()).unwrap();
        assert_eq!(est.method, NormMethod::ClosedFormCol);
        assert!((est.value - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn star_spectral() {
        let k = assemble_matrix(&star(), 10).unwrap();
        let est = operator_norm(&k, ex(2.0, 2.0), &NormOptions::default()).unwrap();
        assert!((est.value - (2.0 + 3f64.sqrt()).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn ascent_matches_spectral_on_star() {
        let k = assemble_matrix(&star(), 10).unwrap();
        let est = operator_norm(&k, ex(2.0, 2.0), &NormOptions::default().ascent_only()).unwrap();
        assert_eq!(est.method, NormMethod::MultistartAscent);
        assert!(est.converged);
        assert!((est.value - (2.0 + 3f64.sqrt()).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn witness_invariants() {
        let wt = WeightedTree::new(
            RootedTree::from_edges(&[(0, 1), (0, 2), (1, 3)], 0).unwrap(),
            vec![1.0, 0.5, 2.0, 1.5],
            vec![0.3, 1.0, 0.7, 2.0],
        )
        .unwrap();
        for (p, q) in [(1.0, 2.0), (2.0, 2.0), (1.5, 3.0), (3.0, 1.5), (2.0, f64::INFINITY), (f64::INFINITY, 2.0)] {
            let e = ex(p, q);
            let est = tree_norm(&wt, e, &NormOptions::default()).unwrap();
            let wn = lp_norm(est.witness.iter().copied(), e.p);
            assert!((wn - 1.0).abs() < 1e-12, "{p} {q} witness norm {wn}");
            assert!(est.witness.iter().all(|x| *x >= 0.0));
            let image = lp_norm(apply_operator(&wt, &est.witness), e.q);
            assert!((image - est.value).abs() <= 1e-9 * est.value);
        }
    }

    #[test]
    fn block_combination() {
        let e = ex(2.0, 3.0);
        assert_eq!(combine_block_norms(&[1.0, 2.0], e), 2.0);
        // p = 2, q = 1: r = 2
        let e = ex(2.0, 1.0);
        assert!((combine_block_norms(&[3.0, 4.0], e) - 5.0).abs() < 1e-12);
        let e = Exponents::new(Exponent::INFINITY, Exponent::ONE);
        assert!((combine_block_norms(&[3.0, 4.0], e) - 7.0).abs() < 1e-12);
    }
}
