//! The coefficient-ring interface shared by the series engine, plus two
//! generic constructions over it: dense polynomials in an external variable
//! `x` and the Gaussian extension adjoining `i` with `i^2 = -1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::scalars::{QScalar, ScalarError};

/// A commutative ring with a `QScalar`-module action, enough structure to
/// serve as the coefficient ring of a truncated power series. Exact division
/// is optional (only integral domains used in fraction-free elimination
/// provide it), as is reduction modulo `q^M`.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Action of the scalar field Q(q).
    fn scale(&self, s: &QScalar) -> Self;

    /// Multiplicative inverse when the element is a unit.
    fn try_inv(&self) -> Option<Self>;

    /// Exact quotient `self / rhs`, when it exists in the ring.
    fn exact_div(&self, _rhs: &Self) -> Option<Self> {
        None
    }

    /// Truncate every internal q-expansion to degree `< m`. Fails on
    /// coefficients with a pole at `q = 0`.
    fn reduce_mod_q(&self, m: usize) -> Result<Self, ScalarError>;
}

impl Coeff for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }

    fn one() -> Self {
        QScalar::one()
    }

    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        QScalar::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        QScalar::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        QScalar::mul(self, rhs)
    }

    fn neg(&self) -> Self {
        QScalar::neg(self)
    }

    fn scale(&self, s: &QScalar) -> Self {
        QScalar::mul(self, s)
    }

    fn try_inv(&self) -> Option<Self> {
        QScalar::try_inv(self)
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        rhs.try_inv().map(|inv| QScalar::mul(self, &inv))
    }

    fn reduce_mod_q(&self, m: usize) -> Result<Self, ScalarError> {
        Ok(QScalar::from_poly(self.q_expand(m)?))
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals over Q(q)
// ---------------------------------------------------------------------------

/// `re + i*im` with `re, im` in Q(q) and `i^2 = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussQ {
    pub re: QScalar,
    pub im: QScalar,
}

impl GaussQ {
    pub fn new(re: QScalar, im: QScalar) -> Self {
        GaussQ { re, im }
    }

    pub fn from_real(re: QScalar) -> Self {
        GaussQ {
            re,
            im: QScalar::zero(),
        }
    }

    pub fn i() -> Self {
        GaussQ {
            re: QScalar::zero(),
            im: QScalar::one(),
        }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussQ::from_real(QScalar::one()),
            1 => GaussQ::i(),
            2 => GaussQ::from_real(QScalar::from_int(-1)),
            _ => GaussQ::new(QScalar::zero(), QScalar::from_int(-1)),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Coeff for GaussQ {
    fn zero() -> Self {
        GaussQ::from_real(QScalar::zero())
    }

    fn one() -> Self {
        GaussQ::from_real(QScalar::one())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        GaussQ::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    fn sub(&self, rhs: &Self) -> Self {
        GaussQ::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    fn mul(&self, rhs: &Self) -> Self {
        GaussQ::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    fn neg(&self) -> Self {
        GaussQ::new(-&self.re, -&self.im)
    }

    fn scale(&self, s: &QScalar) -> Self {
        GaussQ::new(&self.re * s, &self.im * s)
    }

    fn try_inv(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        let inv = norm.try_inv()?;
        Some(GaussQ::new(&self.re * &inv, -(&self.im * &inv)))
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        rhs.try_inv().map(|inv| Coeff::mul(self, &inv))
    }

    fn reduce_mod_q(&self, m: usize) -> Result<Self, ScalarError> {
        Ok(GaussQ::new(
            Coeff::reduce_mod_q(&self.re, m)?,
            Coeff::reduce_mod_q(&self.im, m)?,
        ))
    }
}

impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "i*({})", self.im)
        } else {
            write!(f, "({}) + i*({})", self.re, self.im)
        }
    }
}

// ---------------------------------------------------------------------------
// Dense polynomials in an external variable
// ---------------------------------------------------------------------------

/// Dense polynomial in the external variable `x` over a coefficient ring,
/// constant term first, no trailing zeros. With field-like coefficients this
/// is an integral domain with exact division, as required by fraction-free
/// determinant elimination.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<C: Coeff> {
    coeffs: Vec<C>,
}

/// Polynomials in `x` over Q(q); the coefficient ring for the q-Hermite
/// families and for marker-weighted permutation enumeration.
pub type XPoly = Poly<QScalar>;

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Poly::new(vec![C::zero(), C::one()])
    }

    /// `c * x^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Map every coefficient, re-trimming afterwards.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = <Poly<C> as Coeff>::one();
        for _ in 0..k {
            acc = Coeff::mul(&acc, self);
        }
        acc
    }
}

impl XPoly {
    /// Substitute `x -> i*x`, landing in the Gaussian extension.
    pub fn subst_ix(&self) -> Poly<GaussQ> {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| GaussQ::i_pow(k as i64).scale(c))
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({ "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<XPoly, ScalarError> {
        let arr = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| ScalarError::BadJson("missing \"coeffs\"".into()))?;
        let coeffs = arr
            .iter()
            .map(QScalar::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }

    /// Rendering with descending powers of `x`, q-scalars parenthesized.
    pub fn render(&self) -> String {
        self.render_impl(false)
    }

    pub fn render_latex(&self) -> String {
        self.render_impl(true)
    }

    fn render_impl(&self, latex: bool) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, body) = render_signed_qscalar(c);
            let body = if latex { body.replace('*', " ") } else { body };
            if out.is_empty() {
                if sign < 0 {
                    out.push('-');
                }
            } else if sign < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let xpow = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ if latex => format!("x^{{{k}}}"),
                _ => format!("x^{k}"),
            };
            match (body.as_str(), xpow.as_str()) {
                ("1", "") => out.push('1'),
                ("1", _) => out.push_str(&xpow),
                (_, "") => out.push_str(&body),
                _ => {
                    out.push_str(&body);
                    out.push_str(if latex { "\\," } else { "*" });
                    out.push_str(&xpow);
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Split a q-scalar into an overall sign and an unsigned rendering: bracket
/// scalars print as `[k]`, multi-term values are parenthesized, and the sign
/// of the lowest-degree numerator coefficient is pulled out front.
pub(crate) fn render_signed_qscalar(c: &QScalar) -> (i32, String) {
    use num_traits::{Signed, Zero};
    if let Some(k) = c.try_as_qint() {
        if k == 1 {
            return (1, "1".to_string());
        }
        return (1, format!("[{k}]"));
    }
    let negated = -c;
    if let Some(k) = negated.try_as_qint() {
        if k == 1 {
            return (-1, "1".to_string());
        }
        return (-1, format!("[{k}]"));
    }
    let lowest_negative = c
        .numerator()
        .coeffs()
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative());
    let value = if lowest_negative { negated } else { c.clone() };
    let body = if let Some(p) = value.as_polynomial() {
        let terms = p.coeffs().iter().filter(|v| !v.is_zero()).count();
        if terms == 1 {
            format!("{p}")
        } else {
            format!("({p})")
        }
    } else {
        format!("({value})")
    };
    (if lowest_negative { -1 } else { 1 }, body)
}

impl<C: Coeff> Coeff for Poly<C> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn one() -> Self {
        Poly::constant(C::one())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect())
    }

    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).sub(&rhs.coeff(k))).collect())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return <Poly<C> as Coeff>::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(C::neg).collect(),
        }
    }

    fn scale(&self, s: &QScalar) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    fn try_inv(&self) -> Option<Self> {
        if self.coeffs.len() != 1 {
            return None;
        }
        self.coeffs[0].try_inv().map(Poly::constant)
    }

    /// Long division; exact when every leading-coefficient quotient exists
    /// and the remainder vanishes.
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(<Poly<C> as Coeff>::zero());
        }
        if self.coeffs.len() < rhs.coeffs.len() {
            return None;
        }
        let d = rhs.coeffs.len();
        let lead = rhs.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![C::zero(); self.coeffs.len() - d + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d - 1].exact_div(lead)?;
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(b));
            }
            quot[k] = c;
        }
        if rem.iter().all(C::is_zero) {
            Some(Poly::new(quot))
        } else {
            None
        }
    }

    fn reduce_mod_q(&self, m: usize) -> Result<Self, ScalarError> {
        Ok(Poly::new(
            self.coeffs
                .iter()
                .map(|c| c.reduce_mod_q(m))
                .collect::<Result<Vec<_>, _>>()?,
        ))
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Poly<C> {
        Coeff::add(self, rhs)
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Poly<C> {
        Coeff::sub(self, rhs)
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Poly<C> {
        Coeff::mul(self, rhs)
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Coeff::neg(self)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> XPoly {
        Poly::x()
    }

    #[test]
    fn poly_arithmetic() {
        let p = Coeff::add(&x().pow(2), &Poly::constant(QScalar::from_int(-1)));
        let q = Coeff::add(&x(), &Poly::constant(QScalar::one()));
        let prod = Coeff::mul(&p, &q);
        assert_eq!(prod.degree(), Some(3));
        assert_eq!(prod.exact_div(&q), Some(p.clone()));
        assert_eq!(prod.exact_div(&p), Some(q.clone()));
        let not_exact = Coeff::add(&prod, &Poly::constant(QScalar::one()));
        assert_eq!(not_exact.exact_div(&q), None);
    }

    #[test]
    fn gauss_mul_inv() {
        let z = GaussQ::new(QScalar::from_int(1), QScalar::q());
        let inv = z.try_inv().unwrap();
        assert_eq!(Coeff::mul(&z, &inv), Coeff::one());
        assert_eq!(
            Coeff::mul(&GaussQ::i(), &GaussQ::i()),
            GaussQ::from_real(QScalar::from_int(-1))
        );
        assert_eq!(GaussQ::i_pow(7), GaussQ::i_pow(-1));
    }

    #[test]
    fn subst_ix_parity() {
        // x^2 - 1 at i*x gives -x^2 - 1
        let p = Coeff::sub(&x().pow(2), &Poly::constant(QScalar::one()));
        let g = p.subst_ix();
        assert!(g.coeffs().iter().all(GaussQ::is_real));
        assert_eq!(g.coeff(2).re, QScalar::from_int(-1));
        assert_eq!(g.coeff(0).re, QScalar::from_int(-1));
    }

    #[test]
    fn render_examples() {
        let h2 = Coeff::sub(&x().pow(2), &Poly::constant(QScalar::one() - QScalar::q()));
        assert_eq!(h2.render(), "x^2 - (1 - q)");
    }
}
