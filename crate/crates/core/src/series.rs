//! Truncated formal power series in `t` over a pluggable coefficient ring,
//! with the q-derivation and argument scaling. Truncation means "unknown
//! beyond the stored order", not "zero beyond": comparisons are only ever
//! made up to the shared order, and binary operations take the minimum.
//!
//! A series optionally carries a q-truncation order `M`; when set, every
//! stored coefficient is kept reduced to a polynomial in `q` of degree `< M`.
//! This dual truncation mod `(q^M, t^{N+1})` is the computable surrogate for
//! formal convergence of the infinite q-products.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::ring::Coeff;
use crate::scalars::{qint, BaseExponent, QScalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("constant term is not invertible in the coefficient ring")]
    NonInvertibleConstantTerm,
    #[error("operation requires a series with zero constant term")]
    NonzeroConstantTerm,
    #[error("coefficient is not expandable as a power series in q")]
    NotPolynomialInQ,
}

impl From<ScalarError> for SeriesError {
    fn from(_: ScalarError) -> Self {
        SeriesError::NotPolynomialInQ
    }
}

/// Truncated power series: coefficients `c_0 .. c_N` of `t^0 .. t^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<C: Coeff> {
    coeffs: Vec<C>,
    q_order: Option<usize>,
}

impl<C: Coeff> Series<C> {
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series stores at least the constant term"
        );
        Series {
            coeffs,
            q_order: None,
        }
    }

    pub fn from_fn(t_order: usize, f: impl FnMut(usize) -> C) -> Self {
        Series::from_coeffs((0..=t_order).map(f).collect())
    }

    pub fn zero(t_order: usize) -> Self {
        Series::from_fn(t_order, |_| C::zero())
    }

    pub fn one(t_order: usize) -> Self {
        Series::from_fn(t_order, |n| if n == 0 { C::one() } else { C::zero() })
    }

    pub fn constant(c: C, t_order: usize) -> Self {
        Series::from_fn(t_order, |n| if n == 0 { c.clone() } else { C::zero() })
    }

    /// `c * t^k`.
    pub fn monomial(c: C, k: usize, t_order: usize) -> Self {
        Series::from_fn(t_order, |n| if n == k { c.clone() } else { C::zero() })
    }

    pub fn t_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn q_order(&self) -> Option<usize> {
        self.q_order
    }

    pub fn coeff(&self, n: usize) -> C {
        self.coeffs.get(n).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Restrict to a lower truncation order.
    pub fn truncate(&self, t_order: usize) -> Self {
        let n = t_order.min(self.t_order());
        Series {
            coeffs: self.coeffs[..=n].to_vec(),
            q_order: self.q_order,
        }
    }

    fn combined_q_order(&self, rhs: &Self) -> Option<usize> {
        match (self.q_order, rhs.q_order) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn reduced(mut self) -> Self {
        if let Some(m) = self.q_order {
            for c in &mut self.coeffs {
                *c = c
                    .reduce_mod_q(m)
                    .expect("q-truncated series holds q-expandable coefficients");
            }
        }
        self
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.t_order().min(rhs.t_order());
        let q_order = self.combined_q_order(rhs);
        Series {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].add(&rhs.coeffs[k]))
                .collect(),
            q_order,
        }
        .reduced()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(C::neg).collect(),
            q_order: self.q_order,
        }
    }

    /// Cauchy product to the shared truncation order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.t_order().min(rhs.t_order());
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Series {
            coeffs: out,
            q_order: self.combined_q_order(rhs),
        }
        .reduced()
    }

    /// Multiply every coefficient by a ring element.
    pub fn ring_scale(&self, c: &C) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
            q_order: self.q_order,
        }
        .reduced()
    }

    /// Multiply every coefficient by a scalar from Q(q).
    pub fn scalar_mul(&self, s: &QScalar) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.scale(s)).collect(),
            q_order: self.q_order,
        }
        .reduced()
    }

    /// Multiplicative inverse up to the truncation order; requires an
    /// invertible constant term.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeffs[0]
            .try_inv()
            .ok_or(SeriesError::NonInvertibleConstantTerm)?;
        let n = self.t_order();
        let mut out = Vec::with_capacity(n + 1);
        out.push(c0.clone());
        for k in 1..=n {
            let mut s = C::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s = s.add(&self.coeffs[j].mul(&out[k - j]));
                }
            }
            out.push(c0.mul(&s).neg());
        }
        let mut result = Series {
            coeffs: out,
            q_order: self.q_order,
        };
        if let Some(m) = result.q_order {
            for c in &mut result.coeffs {
                *c = c.reduce_mod_q(m)?;
            }
        }
        Ok(result)
    }

    /// The q-derivation in base `q^m`: the `t^n` coefficient of the result is
    /// `[n+1]_{q^m} c_{n+1}`, with the truncation order dropping by one.
    pub fn q_derive(&self, m: BaseExponent) -> Self {
        let n = self.t_order();
        if n == 0 {
            return Series {
                coeffs: vec![C::zero()],
                q_order: self.q_order,
            };
        }
        Series {
            coeffs: (0..n)
                .map(|k| self.coeffs[k + 1].scale(&qint(k as u32 + 1, m)))
                .collect(),
            q_order: self.q_order,
        }
        .reduced()
    }

    /// Argument scaling `F(t) -> F(alpha t)`: `c_n -> alpha^n c_n`.
    pub fn scale_arg(&self, alpha: &QScalar) -> Self {
        let mut pow = QScalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.scale(&pow));
            pow = pow * alpha;
        }
        Series {
            coeffs: out,
            q_order: self.q_order,
        }
        .reduced()
    }

    /// Multiplication by `t`; knowledge extends one order further.
    pub fn mul_by_t(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Series {
            coeffs,
            q_order: self.q_order,
        }
    }

    /// Classical composition `g(f(t))`; `f` must have zero constant term.
    pub fn compose_classical(g: &Self, f: &Self) -> Result<Self, SeriesError> {
        if !f.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let n = g.t_order().min(f.t_order());
        let g = g.truncate(n);
        let f = f.truncate(n);
        let mut acc = Series::constant(g.coeff(n), n);
        for k in (0..n).rev() {
            acc = acc.mul(&f).add(&Series::constant(g.coeff(k), n));
        }
        Ok(acc)
    }

    /// Reduce every coefficient modulo `q^M` and record the q-order.
    pub fn reduce_mod_q(&self, m: usize) -> Result<Self, SeriesError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.reduce_mod_q(m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Series {
            coeffs,
            q_order: Some(m),
        })
    }

    /// Equality up to the shared truncation order (and shared q-order).
    pub fn agrees_with(&self, rhs: &Self) -> bool {
        self.first_difference(rhs).is_none()
    }

    /// The smallest t-power at which the two series differ, if any, up to the
    /// shared truncation order.
    pub fn first_difference(&self, rhs: &Self) -> Option<usize> {
        let n = self.t_order().min(rhs.t_order());
        (0..=n).find(|&k| self.coeffs[k] != rhs.coeffs[k])
    }

    pub fn to_json_with(&self, f: impl Fn(&C) -> Value) -> Value {
        json!({
            "t_order": self.t_order(),
            "q_order": self.q_order,
            "coeffs": self.coeffs.iter().map(f).collect::<Vec<_>>(),
        })
    }
}

impl Series<QScalar> {
    pub fn to_json(&self) -> Value {
        self.to_json_with(QScalar::to_json)
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.t_order() + 1)
    }
}
