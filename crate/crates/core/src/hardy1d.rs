//! The one-dimensional discrete Hardy operator `(Hf)_n = w_n Σ_{k≤n} u_k f_k`
//! and the constants `M_{u,w}` that characterize its `l_p → l_q` norm.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::{lp_norm, Exponent, Exponents};
use crate::oracle::{operator_norm, NonNegOperator, NormEstimate, NormOptions};

/// Finite non-negative sequences `u_0..u_N`, `w_0..w_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sequences {
    u: Vec<f64>,
    w: Vec<f64>,
}

impl Sequences {
    pub fn new(u: Vec<f64>, w: Vec<f64>) -> Result<Self> {
        if u.len() != w.len() {
            return Err(Error::LengthMismatch {
                expected: u.len(),
                actual: w.len(),
            });
        }
        if u.is_empty() {
            return Err(Error::Precondition("sequences must be non-empty".into()));
        }
        for (name, xs) in [("u", &u), ("w", &w)] {
            if let Some((i, &x)) = xs.iter().enumerate().find(|(_, x)| !(x.is_finite() && **x >= 0.0)) {
                return Err(Error::InvalidWeight {
                    name,
                    vertex: i.into(),
                    value: x,
                });
            }
        }
        Ok(Sequences { u, w })
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn scaled(&self, cu: f64, cw: f64) -> Self {
        Sequences {
            u: self.u.iter().map(|x| x * cu).collect(),
            w: self.w.iter().map(|x| x * cw).collect(),
        }
    }
}

/// The lower-triangular kernel `w_n u_k`, `k ≤ n`, applied by prefix sums.
pub struct HardyOperator<'a>(pub &'a Sequences);

impl NonNegOperator for HardyOperator<'_> {
    fn nrows(&self) -> usize {
        self.0.len()
    }

    fn ncols(&self) -> usize {
        self.0.len()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        let mut acc = 0.0;
        for n in 0..self.0.len() {
            acc += self.0.u[n] * x[n];
            out[n] = self.0.w[n] * acc;
        }
    }

    fn apply_transpose(&self, y: &[f64], out: &mut [f64]) {
        let mut acc = 0.0;
        for k in (0..self.0.len()).rev() {
            acc += self.0.w[k] * y[k];
            out[k] = self.0.u[k] * acc;
        }
    }
}

/// `‖H‖_{l_p → l_q}` through the generic operator oracle.
pub fn hardy_norm_oracle(s: &Sequences, e: Exponents, opts: &NormOptions) -> Result<NormEstimate> {
    operator_norm(&HardyOperator(s), e, opts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BennettRegime {
    /// `1 < p ≤ q < ∞`: a supremum.
    Supremum,
    /// `1 ≤ q < p ≤ ∞`: a series.
    Series,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BennettConstant {
    pub value: f64,
    pub regime: BennettRegime,
    /// Contribution of the last index: the `m = N` candidate of the
    /// supremum, or the share of the last summand in the series.
    pub last_term: f64,
    /// `pq/(p-q)` in the series regime.
    pub series_exponent: Option<f64>,
}

/// `pq/(p-q)`, exact for rational exponents; `q` when `p = ∞`.
fn series_exponent(p: Exponent, q: Exponent) -> f64 {
    if p.is_infinite() {
        return q.value();
    }
    if let (Some(a), Some(c)) = (p.exact(), q.exact()) {
        let (a, b) = (*a.numer() as i128, *a.denom() as i128);
        let (c, d) = (*c.numer() as i128, *c.denom() as i128);
        // p = a/b, q = c/d: pq/(p-q) = ac/(ad-bc) with the difference exact
        return (a * c) as f64 / (a * d - b * c) as f64;
    }
    let (p, q) = (p.value(), q.value());
    p * q / (p - q)
}

/// `M_{u,w}` of the matching regime, evaluated on the finite sequences.
pub fn bennett_constant(s: &Sequences, e: Exponents) -> Result<BennettConstant> {
    let (p, q) = (e.p, e.q);
    let pc = e.p_conj();
    let n = s.len();
    let head: Vec<f64> = (0..n).map(|m| lp_norm(s.u[..=m].iter().copied(), pc)).collect();
    if p.value() <= q.value() {
        if p.is_one() || q.is_infinite() {
            return Err(Error::Regime(format!(
                "M_{{u,w}} needs 1 < p ≤ q < ∞ or 1 ≤ q < p ≤ ∞, got {e}"
            )));
        }
        let cand: Vec<f64> = (0..n)
            .map(|m| lp_norm(s.w[m..].iter().copied(), q) * head[m])
            .collect();
        return Ok(BennettConstant {
            value: cand.iter().copied().fold(0.0, f64::max),
            regime: BennettRegime::Supremum,
            last_term: cand[n - 1],
            series_exponent: None,
        });
    }
    // Log domain: the exponent pq/(p-q) is large when p is close to q.
    let r = series_exponent(p, q);
    let ln_tail: Vec<f64> = (0..n)
        .map(|m| lp_norm(s.w[m..].iter().copied(), q).ln())
        .collect();
    let logs: Vec<f64> = (0..n)
        .map(|m| {
            let bracket = ln_tail[m] * q.value() * p.recip() + head[m].ln();
            r * bracket + q.value() * s.w[m].ln()
        })
        .map(|x| if x.is_nan() { f64::NEG_INFINITY } else { x })
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return Ok(BennettConstant {
            value: 0.0,
            regime: BennettRegime::Series,
            last_term: 0.0,
            series_exponent: Some(r),
        });
    }
    let sum: f64 = logs.iter().map(|x| (x - top).exp()).sum();
    let value = ((top + sum.ln()) / r).exp();
    Ok(BennettConstant {
        value,
        regime: BennettRegime::Series,
        last_term: (logs[n - 1] - top).exp() / sum,
        series_exponent: Some(r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::tree_norm;
    use crate::tree::{RootedTree, WeightedTree};

    fn e(p: &str, q: &str) -> Exponents {
        Exponents::new(p.parse().unwrap(), q.parse().unwrap())
    }

    fn seq(u: &[f64], w: &[f64]) -> Sequences {
        Sequences::new(u.to_vec(), w.to_vec()).unwrap()
    }

    #[test]
    fn supremum_anchor() {
        let m = bennett_constant(&seq(&[1.0; 3], &[1.0, 0.5, 0.25]), e("2", "2")).unwrap();
        assert_eq!(m.regime, BennettRegime::Supremum);
        assert!((m.value - 1.3125f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn series_anchor() {
        let m = bennett_constant(&seq(&[1.0, 1.0], &[1.0, 1.0]), e("2", "1")).unwrap();
        assert_eq!(m.regime, BennettRegime::Series);
        assert!((m.value - 2.0).abs() < 1e-14);
        assert_eq!(m.series_exponent, Some(2.0));
    }

    #[test]
    fn single_term_is_product() {
        for (p, q) in [("2", "2"), ("3", "5"), ("3", "2"), ("inf", "1"), ("2", "1")] {
            let m = bennett_constant(&seq(&[3.0], &[0.5]), e(p, q)).unwrap();
            assert!((m.value - 1.5).abs() < 1e-14, "{p} {q}: {}", m.value);
        }
    }

    #[test]
    fn outside_regimes() {
        let s = seq(&[1.0], &[1.0]);
        assert!(matches!(bennett_constant(&s, e("1", "2")), Err(Error::Regime(_))));
        assert!(matches!(bennett_constant(&s, e("2", "inf")), Err(Error::Regime(_))));
    }

    #[test]
    fn exact_series_exponent_near_diagonal() {
        let p: Exponent = "2.000001".parse().unwrap();
        let r = series_exponent(p, Exponent::TWO);
        assert!((r - 4_000_002.0).abs() < 1e-6, "{r}");
        assert_eq!(series_exponent(Exponent::INFINITY, Exponent::TWO), 2.0);
    }

    #[test]
    fn p_infinite_series_is_the_image_of_ones() {
        let s = seq(&[1.0, 2.0, 0.5], &[0.3, 1.0, 2.0]);
        let m = bennett_constant(&s, e("inf", "2")).unwrap();
        let ones = hardy_norm_oracle(&s, e("inf", "2"), &NormOptions::default()).unwrap();
        assert!((m.value - ones.value).abs() < 1e-12);
    }

    #[test]
    fn homogeneity() {
        let s = seq(&[1.0, 0.2, 3.0, 0.7], &[0.5, 1.0, 0.1, 2.0]);
        for (p, q) in [("2", "3"), ("3/2", "3/2"), ("3", "2"), ("inf", "2"), ("5/2", "1")] {
            let m = bennett_constant(&s, e(p, q)).unwrap().value;
            let mu = bennett_constant(&s.scaled(3.0, 1.0), e(p, q)).unwrap().value;
            let mw = bennett_constant(&s.scaled(1.0, 0.25), e(p, q)).unwrap().value;
            assert!((mu / m - 3.0).abs() < 1e-12);
            assert!((mw / m - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn oracle_examples() {
        let opts = NormOptions::default();
        let golden = hardy_norm_oracle(&seq(&[1.0, 1.0], &[1.0, 1.0]), e("2", "2"), &opts).unwrap();
        assert!((golden.value - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        let five = hardy_norm_oracle(&seq(&[1.0], &[5.0]), e("2", "2"), &opts).unwrap();
        assert!((five.value - 5.0).abs() < 1e-12);
        let col = hardy_norm_oracle(&seq(&[1.0, 1.0], &[1.0, 1.0]), e("1", "2"), &opts).unwrap();
        assert!((col.value - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn matches_tree_oracle_on_chains() {
        let u = vec![1.0, 0.3, 2.0, 0.7, 1.1];
        let w = vec![0.5, 1.0, 0.2, 1.3, 0.9];
        let s = seq(&u, &w);
        let wt = WeightedTree::new(RootedTree::chain(5), u, w).unwrap();
        let opts = NormOptions::default().with_starts(8);
        for (p, q) in [("2", "2"), ("3/2", "3"), ("3", "3/2"), ("1", "inf")] {
            let a = hardy_norm_oracle(&s, e(p, q), &opts).unwrap().value;
            let b = tree_norm(&wt, e(p, q), &opts).unwrap().value;
            assert!((a - b).abs() <= 1e-12 * b, "{p} {q}: {a} {b}");
        }
    }

    #[test]
    fn zero_entries_are_allowed() {
        let s = seq(&[0.0, 1.0], &[1.0, 0.0]);
        let m = bennett_constant(&s, e("3", "2")).unwrap();
        assert_eq!(m.value, 0.0);
        assert!(Sequences::new(vec![-1.0], vec![1.0]).is_err());
        assert!(Sequences::new(vec![1.0], vec![]).is_err());
    }
}
