//! Lebesgue exponents in `[1, ∞]` and their conjugates.
//!
//! Exponents may carry an exact rational value (parsed from literals such as
//! `3/2`), which keeps derived exponents like `pq/(p-q)` exact when `p` and
//! `q` are close.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// A single exponent `r ∈ [1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exponent {
    value: f64,
    exact: Option<Ratio<i64>>,
}

impl Exponent {
    pub const ONE: Exponent = Exponent {
        value: 1.0,
        exact: Some(Ratio::new_raw(1, 1)),
    };
    pub const TWO: Exponent = Exponent {
        value: 2.0,
        exact: Some(Ratio::new_raw(2, 1)),
    };
    pub const INFINITY: Exponent = Exponent {
        value: f64::INFINITY,
        exact: None,
    };

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 1.0 {
            return Err(Error::InvalidExponent(value.to_string()));
        }
        let exact = if value.is_finite() && value.fract() == 0.0 && value < 1e15 {
            Some(Ratio::from_integer(value as i64))
        } else {
            None
        };
        Ok(Exponent { value, exact })
    }

    pub fn rational(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidExponent(format!("{numer}/{denom}")));
        }
        let r = Ratio::new(numer, denom);
        if r < Ratio::from_integer(1) {
            return Err(Error::InvalidExponent(format!("{numer}/{denom}")));
        }
        Ok(Exponent {
            value: *r.numer() as f64 / *r.denom() as f64,
            exact: Some(r),
        })
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn exact(self) -> Option<Ratio<i64>> {
        self.exact
    }

    pub fn is_infinite(self) -> bool {
        self.value.is_infinite()
    }

    pub fn is_one(self) -> bool {
        self.value == 1.0
    }

    /// `1/r`, with `1/∞ = 0`.
    pub fn recip(self) -> f64 {
        if self.is_infinite() {
            0.0
        } else {
            1.0 / self.value
        }
    }

    /// Exact `1/r` when available (`0` for `∞`).
    pub fn exact_recip(self) -> Option<Ratio<i64>> {
        if self.is_infinite() {
            return Some(Ratio::from_integer(0));
        }
        self.exact.map(|r| r.recip())
    }

    /// Conjugate exponent `r' = r/(r-1)`, `1' = ∞`, `∞' = 1`.
    pub fn conjugate(self) -> Exponent {
        if self.is_infinite() {
            return Exponent::new(1.0).expect("1 is a valid exponent");
        }
        if self.value == 1.0 {
            return Exponent::INFINITY;
        }
        match self.exact {
            Some(r) => {
                let c = r / (r - Ratio::from_integer(1));
                Exponent {
                    value: *c.numer() as f64 / *c.denom() as f64,
                    exact: Some(c),
                }
            }
            None => Exponent {
                value: self.value / (self.value - 1.0),
                exact: None,
            },
        }
    }

    /// `|x|^r` summand used by the finite `l_r` norm.
    pub(crate) fn pow(self, x: f64) -> f64 {
        x.abs().powf(self.value)
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => return Ok(Exponent::INFINITY),
            _ => {}
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n
                .trim()
                .parse()
                .map_err(|_| Error::InvalidExponent(s.to_string()))?;
            let d: i64 = d
                .trim()
                .parse()
                .map_err(|_| Error::InvalidExponent(s.to_string()))?;
            return Exponent::rational(n, d);
        }
        // Plain decimals are kept exact as a ratio with a power-of-ten denominator.
        if let Some((int, frac)) = s.split_once('.') {
            if !frac.is_empty()
                && frac.len() <= 12
                && frac.bytes().all(|b| b.is_ascii_digit())
                && int.bytes().all(|b| b.is_ascii_digit())
            {
                let denom = 10i64.pow(frac.len() as u32);
                let int: i64 = if int.is_empty() {
                    0
                } else {
                    int.parse()
                        .map_err(|_| Error::InvalidExponent(s.to_string()))?
                };
                let frac: i64 = frac
                    .parse()
                    .map_err(|_| Error::InvalidExponent(s.to_string()))?;
                return Exponent::rational(int * denom + frac, denom);
            }
        }
        let v: f64 = s
            .parse()
            .map_err(|_| Error::InvalidExponent(s.to_string()))?;
        Exponent::new(v)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            return write!(f, "inf");
        }
        match self.exact {
            Some(r) if *r.denom() != 1 => write!(f, "{}/{}", r.numer(), r.denom()),
            _ => write!(f, "{}", self.value),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    PLessQ,
    PEqualQ,
    PGreaterQ,
}

/// The pair `(p, q)` of an `l_p → l_q` problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exponents {
    pub p: Exponent,
    pub q: Exponent,
}

impl Exponents {
    pub fn new(p: Exponent, q: Exponent) -> Self {
        Exponents { p, q }
    }

    pub fn from_values(p: f64, q: f64) -> Result<Self> {
        Ok(Exponents {
            p: Exponent::new(p)?,
            q: Exponent::new(q)?,
        })
    }

    pub fn p_conj(&self) -> Exponent {
        self.p.conjugate()
    }

    pub fn q_conj(&self) -> Exponent {
        self.q.conjugate()
    }

    pub fn regime(&self) -> Regime {
        let (p, q) = (self.p.value, self.q.value);
        if p == q {
            Regime::PEqualQ
        } else if p < q {
            Regime::PLessQ
        } else {
            Regime::PGreaterQ
        }
    }

    pub fn p_le_q(&self) -> bool {
        self.regime() != Regime::PGreaterQ
    }

    /// The dual pair `(q', p')`.
    pub fn dual(&self) -> Exponents {
        Exponents {
            p: self.q_conj(),
            q: self.p_conj(),
        }
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} q={}", self.p, self.q)
    }
}

/// `(Σ |x_i|^r)^{1/r}`, or `max |x_i|` for `r = ∞`; `0` for an empty input.
///
/// Entries are rescaled by the largest magnitude before powering so large
/// exponents do not overflow.
pub fn lp_norm<I>(values: I, r: Exponent) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let values: Vec<f64> = values.into_iter().map(f64::abs).collect();
    let max = values.iter().copied().fold(0.0, f64::max);
    if max == 0.0 || r.is_infinite() {
        return max;
    }
    if max.is_infinite() {
        return f64::INFINITY;
    }
    if r.is_one() {
        return values.iter().sum();
    }
    let s: f64 = values.iter().map(|&v| r.pow(v / max)).sum();
    max * s.powf(r.recip())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugates() {
        assert!(Exponent::ONE.conjugate().is_infinite());
        assert_eq!(Exponent::INFINITY.conjugate().value(), 1.0);
        assert_eq!(Exponent::TWO.conjugate().value(), 2.0);
        let p: Exponent = "3/2".parse().unwrap();
        assert_eq!(p.conjugate().value(), 3.0);
        assert_eq!(p.conjugate().exact(), Some(Ratio::from_integer(3)));
        let p: Exponent = "1.5".parse().unwrap();
        assert_eq!(p.exact(), Some(Ratio::new(3, 2)));
    }

    #[test]
    fn conjugate_identity() {
        for v in [1.0, 1.25, 1.5, 2.0, 3.0, 7.5, f64::INFINITY] {
            let p = Exponent::new(v).unwrap();
            let s = p.recip() + p.conjugate().recip();
            assert!((s - 1.0).abs() < 1e-15, "{v}: {s}");
        }
    }

    #[test]
    fn rejects_below_one() {
        assert!(Exponent::new(0.5).is_err());
        assert!(Exponent::new(f64::NAN).is_err());
        assert!("1/2".parse::<Exponent>().is_err());
        assert!("abc".parse::<Exponent>().is_err());
        assert!("inf".parse::<Exponent>().unwrap().is_infinite());
    }

    #[test]
    fn regimes() {
        let e = Exponents::from_values(2.0, 3.0).unwrap();
        assert_eq!(e.regime(), Regime::PLessQ);
        assert_eq!(e.dual().p.value(), 1.5);
        assert_eq!(e.dual().q.value(), 2.0);
        let e = Exponents::from_values(2.0, 2.0).unwrap();
        assert_eq!(e.regime(), Regime::PEqualQ);
        assert!(e.p_le_q());
        let e = Exponents::new(Exponent::INFINITY, Exponent::ONE);
        assert_eq!(e.regime(), Regime::PGreaterQ);
    }

    #[test]
    fn norms() {
        assert_eq!(lp_norm([1.0; 4], Exponent::TWO), 2.0);
        assert_eq!(lp_norm([3.0, 4.0], Exponent::TWO), 5.0);
        assert_eq!(lp_norm([1.0, -2.0], Exponent::INFINITY), 2.0);
        assert_eq!(lp_norm([], Exponent::TWO), 0.0);
        assert_eq!(lp_norm([1.0, -2.0], Exponent::ONE), 3.0);
        // 1e200^2 overflows without rescaling
        let big = lp_norm([3e200, 4e200], Exponent::TWO);
        assert!((big / 5e200 - 1.0).abs() < 1e-15);
    }
}
