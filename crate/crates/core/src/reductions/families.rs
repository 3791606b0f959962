//! Level-weight families built from slowly varying factors, and the
//! series suprema that estimate their norms.
//!
//! Slowly varying functions are passed as handles on `x = log₂ y`: the
//! arguments of interest are `y = 2^{sj}`, which overflow long before the
//! series converge.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exponent::{Exponent, Exponents};

/// A function `y ↦ g(log₂ y)` evaluated through its logarithmic argument.
pub trait LogHandle {
    fn at_log2(&self, x: f64) -> f64;

    fn at(&self, y: f64) -> f64 {
        self.at_log2(y.log2())
    }
}

impl<F: Fn(f64) -> f64> LogHandle for F {
    fn at_log2(&self, x: f64) -> f64 {
        self(x)
    }
}

/// Named slowly varying factors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LogFunction {
    /// `y ↦ c`.
    Const(f64),
    /// `y ↦ (log₂ y)^a`.
    Log2Pow(f64),
    /// `y ↦ log₂ y + a`; `a = 1` gives `log₂(2y)`.
    Log2Shift(f64),
}

impl LogHandle for LogFunction {
    fn at_log2(&self, x: f64) -> f64 {
        match *self {
            LogFunction::Const(c) => c,
            LogFunction::Log2Pow(a) => x.powf(a),
            LogFunction::Log2Shift(a) => x + a,
        }
    }
}

impl FromStr for LogFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("unknown function '{s}' (expected const:c, log2pow:a or log2shift:a)"));
        let (name, arg) = s.trim().split_once(':').ok_or_else(bad)?;
        let a: f64 = arg.trim().parse().map_err(|_| bad())?;
        if !a.is_finite() {
            return Err(bad());
        }
        match name.trim() {
            "const" if a > 0.0 => Ok(LogFunction::Const(a)),
            "log2pow" => Ok(LogFunction::Log2Pow(a)),
            "log2shift" => Ok(LogFunction::Log2Shift(a)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for LogFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogFunction::Const(c) => write!(f, "const:{c}"),
            LogFunction::Log2Pow(a) => write!(f, "log2pow:{a}"),
            LogFunction::Log2Shift(a) => write!(f, "log2shift:{a}"),
        }
    }
}

/// `(u_j, w_j) = (2^{θsj/q} Ψ_u(2^{sj}), 2^{-θsj/q} Ψ_w(2^{sj}))`.
pub fn example1_weights(
    theta: f64,
    s: u32,
    q: Exponent,
    psi_u: &impl LogHandle,
    psi_w: &impl LogHandle,
    j: usize,
) -> (f64, f64) {
    let x = s as f64 * j as f64;
    let g = (theta * x * q.recip()).exp2();
    (g * psi_u.at_log2(x), psi_w.at_log2(x) / g)
}

/// A supremum of tail-series expressions, truncated after `terms` terms.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesBound {
    /// `+∞` when the series or the supremum was judged divergent.
    pub value: f64,
    pub divergent: bool,
    /// Estimated mass of the series beyond the truncation, when known.
    pub remainder: Option<f64>,
    /// Index `k` (offset from the first level) attaining the supremum.
    pub argmax: usize,
    pub terms: usize,
}

impl SeriesBound {
    fn divergent(terms: usize) -> Self {
        SeriesBound {
            value: f64::INFINITY,
            divergent: true,
            remainder: None,
            argmax: 0,
            terms,
        }
    }
}

/// Tail mass beyond the last of `a` (indexed by levels `n0, n0+1, …`),
/// from a power-law fit `a_n ≈ C n^{-s}` of the last two terms and the
/// integral `∫_{n+½}^∞ C x^{-s} dx`. `None` signals divergence, which
/// includes tails heavier than the partial sum they follow.
fn power_law_tail(a: &[f64], n0: f64) -> Option<f64> {
    let k = a.len();
    if k < 2 {
        return if a.iter().all(|&x| x == 0.0) { Some(0.0) } else { None };
    }
    let (prev, last) = (a[k - 2], a[k - 1]);
    if last == 0.0 {
        return Some(0.0);
    }
    if !(last < prev) {
        return None;
    }
    let n = n0 + (k - 1) as f64;
    if n < 2.0 {
        return None;
    }
    let s = (prev / last).ln() / (n / (n - 1.0)).ln();
    if s <= 1.0 {
        return None;
    }
    let c = last * n.powf(s);
    let rem = c * (n + 0.5).powf(1.0 - s) / (s - 1.0);
    let partial: f64 = a.iter().sum();
    (rem <= partial).then_some(rem)
}

/// `sup_{k≥0} A(x_k) (Σ_{t≥k} B(x_t)^q L(x_t)/L(x_k))^{1/q}` over
/// `x_k = step·(n0 + k)`, truncated at `cap` terms with a power-law tail.
fn tail_supremum(
    n0: usize,
    step: f64,
    q: Exponent,
    a: &impl LogHandle,
    b: &impl LogHandle,
    l: &impl LogHandle,
    cap: usize,
) -> Result<SeriesBound> {
    if q.is_infinite() {
        return Err(Error::Precondition("the tail series needs a finite q".into()));
    }
    if cap == 0 {
        return Err(Error::Precondition("tail cap must be positive".into()));
    }
    let x = |k: usize| step * (n0 + k) as f64;
    let eval = |h: &dyn Fn(f64) -> f64, k: usize, name: &str| {
        let v = h(x(k));
        if v.is_finite() && v > 0.0 {
            Ok(v)
        } else {
            Err(Error::Precondition(format!("{name} is {v} at level {}", n0 + k)))
        }
    };
    let mut terms = Vec::with_capacity(cap);
    let mut ls = Vec::with_capacity(cap);
    for k in 0..cap {
        let lk = eval(&|t| l.at_log2(t), k, "the slowly varying factor")?;
        let bk = eval(&|t| b.at_log2(t), k, "the w factor")?;
        terms.push(q.pow(bk) * lk);
        ls.push(lk);
    }
    let Some(rem) = power_law_tail(&terms, n0 as f64) else {
        return Ok(SeriesBound::divergent(cap));
    };
    let mut suffix = rem;
    let mut best = (f64::NEG_INFINITY, 0);
    for k in (0..cap).rev() {
        suffix += terms[k];
        let v = eval(&|t| a.at_log2(t), k, "the u factor")? * (suffix / ls[k]).powf(q.recip());
        if v >= best.0 {
            best = (v, k);
        }
    }
    Ok(SeriesBound {
        value: best.0,
        divergent: false,
        remainder: Some(rem),
        argmax: best.1,
        terms: cap,
    })
}

/// `M_{j0} = sup_{j≥j0} Ψ_u(2^{sj}) (Σ_{i≥j} Ψ_w^q(2^{si}) Λ*(2^{si})/Λ*(2^{sj}))^{1/q}`.
pub fn example1_bound(
    j0: usize,
    q: Exponent,
    psi_u: &impl LogHandle,
    psi_w: &impl LogHandle,
    lambda_star: &impl LogHandle,
    s: u32,
    tail_cap: usize,
) -> Result<SeriesBound> {
    if s == 0 {
        return Err(Error::Precondition("s must be a positive integer".into()));
    }
    tail_supremum(j0, s as f64, q, psi_u, psi_w, lambda_star, tail_cap)
}

/// Parameters of the polynomial family `u_j = j^{-α_u} ρ_u(j)`,
/// `w_j = j^{-α_w} ρ_w(j)` on trees with `2^{ψ(j)} = j^{γ*} τ*(j)`.
pub struct Example2<'a> {
    pub gamma_star: f64,
    pub alpha_u: f64,
    pub alpha_w: f64,
    pub tau_star: &'a dyn Fn(f64) -> f64,
    pub rho_u: &'a dyn Fn(f64) -> f64,
    pub rho_w: &'a dyn Fn(f64) -> f64,
}

/// Tolerance on the exponent identities of the critical case.
pub const EXAMPLE2_IDENTITY_TOL: f64 = 1e-12;

impl Example2<'_> {
    fn w_exponent(&self, q: Exponent) -> f64 {
        -self.alpha_w + q.recip() + self.gamma_star * q.recip()
    }

    /// Subcritical case: `sup_{j≥j0} j^{-α+1/q+1/p'} ρ_u(j)ρ_w(j)`.
    pub fn subcritical(&self, j0: usize, e: Exponents, tail_cap: usize) -> Result<SeriesBound> {
        let ew = self.w_exponent(e.q);
        if ew >= 0.0 {
            return Err(Error::Precondition(format!(
                "-α_w + 1/q + γ*/q = {ew} must be negative"
            )));
        }
        if j0 == 0 || tail_cap == 0 {
            return Err(Error::Precondition("j0 and the tail cap must be positive".into()));
        }
        let exp = -(self.alpha_u + self.alpha_w) + e.q.recip() + e.p_conj().recip();
        let value = |j: usize| {
            let x = (j as f64).log2();
            (j as f64).powf(exp) * (self.rho_u)(x) * (self.rho_w)(x)
        };
        let mut best = (f64::NEG_INFINITY, 0);
        let mut last = (0.0, 0.0);
        for k in 0..tail_cap {
            let v = value(j0 + k);
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Precondition(format!("ρ is {v} at level {}", j0 + k)));
            }
            if v >= best.0 {
                best = (v, k);
            }
            last = (last.1, v);
        }
        // Still climbing at the truncation: the supremum is not attained.
        if tail_cap > 1 && best.1 == tail_cap - 1 && last.1 > last.0 * (1.0 + 1e-12) {
            return Ok(SeriesBound::divergent(tail_cap));
        }
        Ok(SeriesBound {
            value: best.0,
            divergent: false,
            remainder: None,
            argmax: best.1,
            terms: tail_cap,
        })
    }

    /// Critical case: `sup_{k≥0} ρ_u(2^{k0+k}) (Σ_{t≥k} ρ_w^q(2^{k0+t}) τ*(2^{k0+t})/τ*(2^{k0+k}))^{1/q}`.
    pub fn critical(&self, k0: usize, e: Exponents, tail_cap: usize) -> Result<SeriesBound> {
        let ew = self.w_exponent(e.q);
        let eu = -self.alpha_u + e.p_conj().recip() - self.gamma_star * e.q.recip();
        if ew.abs() > EXAMPLE2_IDENTITY_TOL || eu.abs() > EXAMPLE2_IDENTITY_TOL {
            return Err(Error::Precondition(format!(
                "critical case needs -α_w + 1/q + γ*/q = 0 and -α_u + 1/p' - γ*/q = 0, got {ew} and {eu}"
            )));
        }
        tail_supremum(k0, 1.0, e.q, &self.rho_u, &self.rho_w, &self.tau_star, tail_cap)
    }
}

/// Result of checking `C⁻¹ t^{-ε} ≤ Λ(ty)/Λ(y) ≤ C t^ε` on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridCheck {
    pub epsilon: f64,
    /// Smallest `C` for the upper inequality.
    pub c_upper: f64,
    /// Smallest `C` for the lower inequality.
    pub c_lower: f64,
    pub cap: f64,
    pub passed: bool,
}

/// Default cap on the grid constants.
pub const DEFAULT_GRID_CAP: f64 = 4.0;

/// Checks the slowly varying bounds on `y, t ∈ {2^0, …, 2^{max_exp}}`.
pub fn slowly_varying_check(f: &impl LogHandle, epsilon: f64, max_exp: u32, cap: f64) -> GridCheck {
    let mut c_upper: f64 = 0.0;
    let mut c_lower: f64 = 0.0;
    for a in 0..=max_exp {
        let t_eps = (epsilon * a as f64).exp2();
        for b in 0..=max_exp {
            let ratio = f.at_log2((a + b) as f64) / f.at_log2(b as f64);
            c_upper = c_upper.max(ratio / t_eps);
            c_lower = c_lower.max(1.0 / (t_eps * ratio));
        }
    }
    let passed = c_upper.is_finite() && c_lower.is_finite() && c_upper <= cap && c_lower <= cap;
    GridCheck {
        epsilon,
        c_upper,
        c_lower,
        cap,
        passed,
    }
}
