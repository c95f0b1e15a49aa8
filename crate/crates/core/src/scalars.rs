//! Exact arithmetic in the field Q(q) of rational functions of the
//! indeterminate `q`, together with the standard q-combinatorial scalars:
//! q-integers `[n]`, q-factorials `[n]!`, q-binomials and q-Pochhammer
//! symbols, all parametrized by a base change `q -> q^m`.
//!
//! Every scalar is kept in canonical form (gcd-reduced, monic denominator),
//! so structural equality coincides with mathematical equality. No floating
//! point is used anywhere.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    /// The denominator vanishes at the requested evaluation point.
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    /// The scalar has a pole at q = 0 and admits no power-series expansion.
    #[error("scalar has a pole at q = 0")]
    PoleAtQZero,
    /// Base exponents must be nonzero integers.
    #[error("base exponent must be a nonzero integer")]
    ZeroBase,
    /// A JSON payload did not match the expected schema.
    #[error("malformed scalar JSON: {0}")]
    BadJson(String),
}

/// The base-change parameter: `psi(q) = q^m` with `m != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BaseExponent(i64);

impl BaseExponent {
    pub const ONE: BaseExponent = BaseExponent(1);
    pub const INVERSE: BaseExponent = BaseExponent(-1);

    pub fn new(m: i64) -> Result<Self, ScalarError> {
        if m == 0 {
            Err(ScalarError::ZeroBase)
        } else {
            Ok(BaseExponent(m))
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }

    /// The base for `psi^{-1}`, i.e. `q -> q^{-m}`.
    pub fn inverse(self) -> Self {
        BaseExponent(-self.0)
    }
}

impl Default for BaseExponent {
    fn default() -> Self {
        BaseExponent::ONE
    }
}

impl fmt::Display for BaseExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shorthand constructor for literal base exponents; panics on zero.
pub fn base(m: i64) -> BaseExponent {
    BaseExponent::new(m).expect("base exponent must be nonzero")
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over Q
// ---------------------------------------------------------------------------

/// Dense polynomial in `q` with arbitrary-precision rational coefficients,
/// constant term first. The zero polynomial is the empty coefficient vector;
/// no trailing zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        QPoly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// The monomial `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        QPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn leading(&self) -> &BigRational {
        self.coeffs
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    pub fn add(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        QPoly::new(out)
    }

    pub fn sub(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        QPoly::new(out)
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Euclidean division; panics if `rhs` is zero.
    pub fn div_rem(&self, rhs: &QPoly) -> (QPoly, QPoly) {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let d = rhs.coeffs.len();
        if self.coeffs.len() < d {
            return (QPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - d + 1];
        let lead = rhs.leading().clone();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = &c * b;
                rem[k + j] -= t;
            }
            quot[k] = c;
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Monic gcd via a primitive pseudo-remainder sequence over the
    /// integers, which keeps intermediate coefficients small. `gcd(0,0) = 0`.
    pub fn gcd(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() {
            return rhs.clone().into_monic();
        }
        if rhs.is_zero() {
            return self.clone().into_monic();
        }
        let mut a = primitive_integer_coeffs(self);
        let mut b = primitive_integer_coeffs(rhs);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_remainder(&a, &b);
            a = b;
            b = into_primitive(r);
        }
        QPoly::new(a.into_iter().map(BigRational::from_integer).collect()).into_monic()
    }

    fn into_monic(mut self) -> QPoly {
        if self.is_zero() {
            return self;
        }
        let lead = self.leading().clone();
        if !lead.is_one() {
            for c in &mut self.coeffs {
                *c /= &lead;
            }
        }
        self
    }

    pub fn eval(&self, v: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        acc
    }

    /// Substitute `q -> q^k` for `k >= 1`.
    pub fn stretch(&self, k: usize) -> QPoly {
        assert!(k >= 1);
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let mut out = vec![BigRational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        QPoly::new(out)
    }

    /// The reversal `q^{deg} * p(1/q)`; trailing zeros of the input become
    /// leading zeros and are trimmed.
    pub fn reversed(&self) -> QPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        QPoly::new(coeffs)
    }

    /// Truncate to degree `< m`.
    pub fn truncated(&self, m: usize) -> QPoly {
        if self.coeffs.len() <= m {
            self.clone()
        } else {
            QPoly::new(self.coeffs[..m].to_vec())
        }
    }
}

/// Clear denominators and divide out the integer content; sign-normalize to
/// a positive leading coefficient.
fn primitive_integer_coeffs(p: &QPoly) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut denom_lcm = BigInt::from(1);
    for c in p.coeffs() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let mut content = BigInt::from(0);
    for c in &ints {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in &mut ints {
            *c /= &content;
        }
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in &mut ints {
            *c = -&*c;
        }
    }
    ints
}

/// Integer pseudo-remainder of `a` by `b` (nonempty, `deg a >= deg b` not
/// required); trailing zeros trimmed.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lead_b = b.last().expect("nonzero divisor").clone();
    let mut r = a.to_vec();
    loop {
        while r.last().is_some_and(num_traits::Zero::is_zero) {
            r.pop();
        }
        if r.len() < b.len() {
            return r;
        }
        let shift = r.len() - b.len();
        let lead_r = r.last().unwrap().clone();
        for c in &mut r {
            *c *= &lead_b;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lead_r * bc;
        }
    }
}

fn into_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    use num_integer::Integer;
    while v.last().is_some_and(num_traits::Zero::is_zero) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut content = BigInt::from(0);
    for c in &v {
        content = content.gcd(c);
    }
    if !content.is_one() {
        for c in &mut v {
            *c /= &content;
        }
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in &mut v {
            *c = -&*c;
        }
    }
    v
}

fn fmt_ratio(c: &BigRational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            if k == 0 {
                write!(f, "{}", fmt_ratio(&mag))?;
            } else {
                if !unit {
                    write!(f, "{}*", fmt_ratio(&mag))?;
                }
                if k == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{k}")?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// The field of rational functions of q
// ---------------------------------------------------------------------------

/// An exact rational function of `q`: a gcd-reduced fraction of [`QPoly`]s
/// with a monic denominator. Negative powers of `q` (needed for base
/// exponents `m < 0`) live in the fraction field rather than a separate
/// Laurent type.
///
/// Canonical form makes structural equality coincide with equality in Q(q).
/// Values are immutable and all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: QPoly,
    den: QPoly,
}

impl QScalar {
    fn canonical(num: QPoly, den: QPoly) -> QScalar {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QScalar {
                num: QPoly::zero(),
                den: QPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading().clone();
        if !lead.is_one() {
            let inv = BigRational::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        QScalar { num, den }
    }

    pub fn from_parts(num: QPoly, den: QPoly) -> QScalar {
        QScalar::canonical(num, den)
    }

    pub fn from_poly(p: QPoly) -> QScalar {
        QScalar {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn zero() -> QScalar {
        QScalar::from_poly(QPoly::zero())
    }

    pub fn one() -> QScalar {
        QScalar::from_poly(QPoly::one())
    }

    pub fn from_int(n: i64) -> QScalar {
        QScalar::from_poly(QPoly::from_int(n))
    }

    pub fn from_ratio(r: BigRational) -> QScalar {
        QScalar::from_poly(QPoly::constant(r))
    }

    /// The indeterminate `q`.
    pub fn q() -> QScalar {
        QScalar::from_poly(QPoly::monomial(1))
    }

    /// `q^k` for any integer `k`, negative powers landing in the denominator.
    pub fn q_pow(k: i64) -> QScalar {
        if k >= 0 {
            QScalar::from_poly(QPoly::monomial(k as usize))
        } else {
            QScalar {
                num: QPoly::one(),
                den: QPoly::monomial((-k) as usize),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the canonical denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    pub fn as_polynomial(&self) -> Option<&QPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar::from_poly(self.num.add(&rhs.num));
        }
        let g = self.den.gcd(&rhs.den);
        let (lb, rb) = if g.degree() == Some(0) {
            (rhs.den.clone(), self.den.clone())
        } else {
            (rhs.den.div_rem(&g).0, self.den.div_rem(&g).0)
        };
        let num = self.num.mul(&lb).add(&rhs.num.mul(&rb));
        let den = self.den.mul(&lb);
        QScalar::canonical(num, den)
    }

    pub fn sub(&self, rhs: &QScalar) -> QScalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> QScalar {
        QScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar::from_poly(self.num.mul(&rhs.num));
        }
        // cross-reduce so the result needs no final gcd
        let g1 = if rhs.den.is_one() {
            QPoly::one()
        } else {
            self.num.gcd(&rhs.den)
        };
        let g2 = if self.den.is_one() {
            QPoly::one()
        } else {
            rhs.num.gcd(&self.den)
        };
        let (n1, d2) = if g1.degree() == Some(0) {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_rem(&g1).0, rhs.den.div_rem(&g1).0)
        };
        let (n2, d1) = if g2.degree() == Some(0) {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_rem(&g2).0, self.den.div_rem(&g2).0)
        };
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        let lead = den.leading().clone();
        if !lead.is_one() {
            let inv = BigRational::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        QScalar { num, den }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn try_inv(&self) -> Option<QScalar> {
        if self.is_zero() {
            return None;
        }
        Some(QScalar::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &QScalar) -> QScalar {
        self.mul(&rhs.try_inv().expect("division by zero scalar"))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, k: i64) -> QScalar {
        if k == 0 {
            return QScalar::one();
        }
        let base = if k < 0 {
            self.try_inv().expect("negative power of zero scalar")
        } else {
            self.clone()
        };
        let mut acc = QScalar::one();
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = QScalar::mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = QScalar::mul(&b, &b);
            }
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval_at(&self, v: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return Err(ScalarError::PoleAtPoint);
        }
        Ok(self.num.eval(v) / d)
    }

    /// Evaluation at an integer point.
    pub fn eval_at_int(&self, v: i64) -> Result<BigRational, ScalarError> {
        self.eval_at(&BigRational::from_integer(BigInt::from(v)))
    }

    /// Substitute `q -> q^m` for a nonzero integer `m` and re-canonicalize.
    pub fn subst_q_power(&self, m: i64) -> QScalar {
        assert!(m != 0, "substitution base must be nonzero");
        if self.is_zero() || m == 1 {
            return self.clone();
        }
        if m > 0 {
            let mut num = self.num.stretch(m as usize);
            let mut den = self.den.stretch(m as usize);
            let lead = den.leading().clone();
            if !lead.is_one() {
                let inv = BigRational::one() / lead;
                num = num.scale(&inv);
                den = den.scale(&inv);
            }
            return QScalar { num, den };
        }
        let k = (-m) as usize;
        let ndeg = self.num.degree().unwrap_or(0);
        let ddeg = self.den.degree().unwrap_or(0);
        let mut num = self.num.reversed().stretch(k);
        let mut den = self.den.reversed().stretch(k);
        if ddeg >= ndeg {
            num = num.mul(&QPoly::monomial(k * (ddeg - ndeg)));
        } else {
            den = den.mul(&QPoly::monomial(k * (ndeg - ddeg)));
        }
        let lead = den.leading().clone();
        if !lead.is_one() {
            let inv = BigRational::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        QScalar { num, den }
    }

    /// Power-series expansion at `q = 0`, truncated to degree `< m`.
    /// Fails when the denominator vanishes at `q = 0`.
    pub fn q_expand(&self, m: usize) -> Result<QPoly, ScalarError> {
        if self.is_zero() || m == 0 {
            return Ok(QPoly::zero());
        }
        if self.is_polynomial() {
            return Ok(self.num.truncated(m));
        }
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(ScalarError::PoleAtQZero);
        }
        // invert the denominator as a power series, then multiply
        let mut inv = Vec::with_capacity(m);
        let d0_inv = BigRational::one() / d0;
        inv.push(d0_inv.clone());
        for n in 1..m {
            let mut s = BigRational::zero();
            for k in 1..=n {
                let dk = self.den.coeff(k);
                if !dk.is_zero() {
                    s += dk * &inv[n - k];
                }
            }
            inv.push(-s * &d0_inv);
        }
        let inv = QPoly::new(inv);
        Ok(self.num.mul(&inv).truncated(m))
    }

    /// Recognize `1 + q + ... + q^{k-1}` (including `0 -> [0]` and `1 -> [1]`);
    /// used for compact rendering of bracket scalars.
    pub fn try_as_qint(&self) -> Option<u32> {
        if !self.is_polynomial() {
            return None;
        }
        if self.is_zero() {
            return Some(0);
        }
        if self.num.coeffs().iter().all(|c| c.is_one()) {
            return Some(self.num.coeffs().len() as u32);
        }
        None
    }

    pub fn to_json(&self) -> Value {
        json!({
            "num": poly_to_json(&self.num),
            "den": poly_to_json(&self.den),
        })
    }

    pub fn from_json(v: &Value) -> Result<QScalar, ScalarError> {
        let num = poly_from_json(
            v.get("num")
                .ok_or_else(|| ScalarError::BadJson("missing \"num\"".into()))?,
        )?;
        let den = poly_from_json(
            v.get("den")
                .ok_or_else(|| ScalarError::BadJson("missing \"den\"".into()))?,
        )?;
        if den.is_zero() {
            return Err(ScalarError::BadJson("zero denominator".into()));
        }
        Ok(QScalar::canonical(num, den))
    }
}

fn int_to_json(i: &BigInt) -> Value {
    match i64::try_from(i) {
        Ok(v) => json!(v),
        Err(_) => json!(i.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt, ScalarError> {
    if let Some(n) = v.as_i64() {
        return Ok(BigInt::from(n));
    }
    if let Some(s) = v.as_str() {
        return s
            .parse::<BigInt>()
            .map_err(|e| ScalarError::BadJson(e.to_string()));
    }
    Err(ScalarError::BadJson("expected integer or string".into()))
}

fn poly_to_json(p: &QPoly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::Array(vec![int_to_json(c.numer()), int_to_json(c.denom())]))
            .collect(),
    )
}

fn poly_from_json(v: &Value) -> Result<QPoly, ScalarError> {
    let arr = v
        .as_array()
        .ok_or_else(|| ScalarError::BadJson("expected coefficient array".into()))?;
    let mut coeffs = Vec::with_capacity(arr.len());
    for entry in arr {
        let pair = entry
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| ScalarError::BadJson("expected [num, den] pair".into()))?;
        let n = int_from_json(&pair[0])?;
        let d = int_from_json(&pair[1])?;
        if d.is_zero() {
            return Err(ScalarError::BadJson("zero coefficient denominator".into()));
        }
        coeffs.push(BigRational::new(n, d));
    }
    Ok(QPoly::new(coeffs))
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

macro_rules! forward_binop {
    ($Op:ident, $method:ident) => {
        impl $Op for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                QScalar::$method(&self, &rhs)
            }
        }
        impl $Op<&QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                QScalar::$method(&self, rhs)
            }
        }
        impl $Op<QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                QScalar::$method(self, &rhs)
            }
        }
        impl $Op<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                QScalar::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar::neg(&self)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar::neg(self)
    }
}

// ---------------------------------------------------------------------------
// q-combinatorial scalars
// ---------------------------------------------------------------------------

/// The q-integer `[n] = 1 + q^m + ... + q^{m(n-1)}`, computed by the closed
/// form `(1 - q^{mn})/(1 - q^m)` and reduced; `[0] = 0`.
pub fn qint(n: u32, m: BaseExponent) -> QScalar {
    let m = m.get();
    let num = QScalar::one() - QScalar::q_pow(m * i64::from(n));
    let den = QScalar::one() - QScalar::q_pow(m);
    num / den
}

/// The q-factorial `[n]! = [1][2]...[n]`, with `[0]! = 1`.
pub fn qfact(n: u32, m: BaseExponent) -> QScalar {
    let mut acc = QScalar::one();
    for i in 1..=n {
        acc = acc * qint(i, m);
    }
    acc
}

/// The q-binomial `[n k] = [n]!/([k]![n-k]!)` for `0 <= k <= n`, zero
/// otherwise. The reduced result is always a polynomial in `q^m`.
pub fn qbinom(n: i64, k: i64, m: BaseExponent) -> QScalar {
    if k < 0 || k > n {
        return QScalar::zero();
    }
    let (n, k) = (n as u32, k as u32);
    let b = qfact(n, BaseExponent::ONE)
        / (qfact(k, BaseExponent::ONE) * qfact(n - k, BaseExponent::ONE));
    assert!(
        b.is_polynomial(),
        "q-binomial did not reduce to a polynomial"
    );
    b.subst_q_power(m.get())
}

/// The q-Pochhammer symbol `(a; q^m)_n = (1-a)(1-q^m a)...(1-q^{m(n-1)} a)`,
/// equal to 1 when `n = 0` or `a = 0`.
pub fn qpochhammer(a: &QScalar, n: u32, m: BaseExponent) -> QScalar {
    let mut acc = QScalar::one();
    for i in 0..n {
        acc = acc * (QScalar::one() - QScalar::q_pow(m.get() * i64::from(i)) * a);
    }
    acc
}

/// Free-function form of [`QScalar::subst_q_power`].
pub fn subst_q_power(s: &QScalar, m: i64) -> QScalar {
    s.subst_q_power(m)
}

/// Free-function form of [`QScalar::eval_at`].
pub fn eval_at(s: &QScalar, v: &BigRational) -> Result<BigRational, ScalarError> {
    s.eval_at(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn poly(coeffs: &[i64]) -> QPoly {
        QPoly::new(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn qint_examples() {
        assert_eq!(
            qint(3, BaseExponent::ONE),
            QScalar::from_poly(poly(&[1, 1, 1]))
        );
        assert_eq!(qint(0, BaseExponent::ONE), QScalar::zero());
        // [3]_{q^{-1}} = q^{-2}(1 + q + q^2)
        let expected = QScalar::from_poly(poly(&[1, 1, 1])) * QScalar::q_pow(-2);
        assert_eq!(qint(3, BaseExponent::INVERSE), expected);
    }

    #[test]
    fn qint_closed_form_identity() {
        for &m in &[-2i64, -1, 1, 2, 3] {
            let b = base(m);
            for n in 0..=20u32 {
                let lhs = qint(n, b) * (QScalar::one() - QScalar::q_pow(m));
                let rhs = QScalar::one() - QScalar::q_pow(m * i64::from(n));
                assert_eq!(lhs, rhs, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn qfact_examples() {
        assert_eq!(qfact(0, BaseExponent::ONE), QScalar::one());
        assert_eq!(
            qfact(2, BaseExponent::ONE),
            QScalar::from_poly(poly(&[1, 1]))
        );
        let v = qfact(3, BaseExponent::ONE).eval_at_int(1).unwrap();
        assert_eq!(v, rat(6, 1));
    }

    #[test]
    fn qbinom_examples() {
        // (1 + q^2)(1 + q + q^2) = 1 + q + 2q^2 + q^3 + q^4
        assert_eq!(
            qbinom(4, 2, BaseExponent::ONE),
            QScalar::from_poly(poly(&[1, 1, 2, 1, 1]))
        );
        assert_eq!(qbinom(3, 5, BaseExponent::ONE), QScalar::zero());
        assert_eq!(qbinom(-1, 0, BaseExponent::ONE), QScalar::zero());
        for n in 0..=8i64 {
            for k in 0..=n {
                let classical = crate::combinatorics::binomial(n as u64, k as u64);
                let v = qbinom(n, k, BaseExponent::ONE).eval_at_int(1).unwrap();
                assert_eq!(v, BigRational::from_integer(BigInt::from(classical)));
            }
        }
    }

    #[test]
    fn qbinom_pascal_recurrences() {
        let one = BaseExponent::ONE;
        for n in 1..=10i64 {
            for k in 0..=n {
                let lhs = qbinom(n, k, one);
                let r1 = qbinom(n - 1, k - 1, one) + QScalar::q_pow(k) * qbinom(n - 1, k, one);
                let r2 = QScalar::q_pow(n - k) * qbinom(n - 1, k - 1, one) + qbinom(n - 1, k, one);
                assert_eq!(lhs, r1, "first Pascal rule n={n} k={k}");
                assert_eq!(lhs, r2, "second Pascal rule n={n} k={k}");
            }
        }
    }

    #[test]
    fn qpochhammer_examples() {
        let a = QScalar::q();
        assert_eq!(qpochhammer(&a, 0, BaseExponent::ONE), QScalar::one());
        assert_eq!(
            qpochhammer(&QScalar::zero(), 5, BaseExponent::ONE),
            QScalar::one()
        );
        let expected = (QScalar::one() - QScalar::q()) * (QScalar::one() - QScalar::q_pow(2));
        assert_eq!(qpochhammer(&a, 2, BaseExponent::ONE), expected);
    }

    #[test]
    fn subst_examples() {
        for n in 1..=8u32 {
            let lhs = qint(n, BaseExponent::ONE).subst_q_power(-1);
            let rhs = QScalar::q_pow(-(i64::from(n)) + 1) * qint(n, BaseExponent::ONE);
            assert_eq!(lhs, rhs, "n={n}");
        }
        assert_eq!(QScalar::q().subst_q_power(1), QScalar::q());
        for n in 0..=6i64 {
            for k in 0..=n {
                let lhs = qbinom(n, k, BaseExponent::ONE).subst_q_power(-1);
                let rhs = qbinom(n, k, BaseExponent::ONE) * QScalar::q_pow(-(n - k) * k);
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn subst_involution() {
        let s = (QScalar::from_poly(poly(&[1, -2, 0, 3])) + QScalar::q_pow(-2))
            / QScalar::from_poly(poly(&[2, 1]));
        assert_eq!(s.subst_q_power(-1).subst_q_power(-1), s);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            qint(4, BaseExponent::ONE).eval_at_int(1).unwrap(),
            rat(4, 1)
        );
        let pole = QScalar::one() / (QScalar::one() - QScalar::q());
        assert_eq!(pole.eval_at_int(1), Err(ScalarError::PoleAtPoint));
        assert_eq!(QScalar::q_pow(2).eval_at(&rat(1, 2)).unwrap(), rat(1, 4));
    }

    #[test]
    fn q_expand_geometric() {
        let s = QScalar::one() / (QScalar::one() - QScalar::q());
        assert_eq!(s.q_expand(3).unwrap(), poly(&[1, 1, 1]));
        let pole = QScalar::one() / QScalar::q();
        assert_eq!(pole.q_expand(3), Err(ScalarError::PoleAtQZero));
    }

    #[test]
    fn json_round_trip() {
        let s = (QScalar::from_poly(poly(&[1, 0, -3])) + QScalar::from_ratio(rat(1, 2)))
            / QScalar::from_poly(poly(&[-2, 0, 0, 5]));
        let back = QScalar::from_json(&s.to_json()).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn qint_render_recognized() {
        assert_eq!(qint(4, BaseExponent::ONE).try_as_qint(), Some(4));
        assert_eq!(QScalar::q().try_as_qint(), None);
    }

    proptest! {
        // two syntactically different constructions of the same value are
        // structurally equal
        #[test]
        fn canonical_form_soundness(a in -6i64..=6, b in -6i64..=6, c in 1i64..=4, d in 1i64..=4) {
            let x = QScalar::from_poly(poly(&[a, b, 1]));
            let y = QScalar::from_poly(poly(&[c, d]));
            let built_one_way = (&x / &y) + (&y / &x);
            let built_other_way = (&x * &x + &y * &y) / (&x * &y);
            prop_assert_eq!(built_one_way, built_other_way);
        }

        #[test]
        fn field_axioms_spot(a in -5i64..=5, b in -5i64..=5, c in -5i64..=5) {
            let x = QScalar::from_poly(poly(&[a, 1]));
            let y = QScalar::from_poly(poly(&[b, -1, 2]));
            let z = QScalar::from_poly(poly(&[c]));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.try_inv().unwrap(), QScalar::one());
            }
        }
    }
}
