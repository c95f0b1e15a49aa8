//! The symmetric-function algebra on the algebraically independent
//! generators `e_1, e_2, ...`, the q-power functions `[p_n^(r)]`, `[p_n]`,
//! `[p_lambda]`, and the recurrence/determinant/partition-expansion
//! identities relating them to the elementary and complete functions.
//!
//! Since the `e_n` are free generators, equality in the algebra is
//! polynomial identity: exact and decidable. `h_n` and the q-powers are
//! derived objects.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_rational::BigRational;
use once_cell::sync::Lazy;
use serde_json::{json, Value};
use thiserror::Error;

use crate::combinatorics::{epsilon, partitions_of, Partition};
use crate::linalg::{det_expansion, SquareMatrix};
use crate::ring::{render_signed_qscalar, Coeff};
use crate::scalars::{qbinom, qfact, qint, BaseExponent, QScalar, ScalarError};
use crate::series::Series;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymfunError {
    #[error("indices out of range: need n >= r >= 0 (r >= 1 for power sums)")]
    BadIndices,
    #[error("malformed symmetric-polynomial JSON: {0}")]
    BadJson(String),
}

/// A monomial in the generators: a map from generator index (>= 1) to a
/// positive exponent. The empty monomial is the ring unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(BTreeMap<u32, u32>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn generator(n: u32) -> Self {
        assert!(n >= 1, "generator indices start at 1");
        let mut m = BTreeMap::new();
        m.insert(n, 1);
        Monomial(m)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (&g, &e) in &rhs.0 {
            *out.entry(g).or_insert(0) += e;
        }
        Monomial(out)
    }

    /// Graded degree with `deg(e_i) = i`.
    pub fn degree(&self) -> u64 {
        self.0
            .iter()
            .map(|(&g, &e)| u64::from(g) * u64::from(e))
            .sum()
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&g, &e)| (g, e))
    }
}

/// Element of the symmetric-function algebra: a finite QScalar-linear
/// combination of monomials in `e_1, e_2, ...`. Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, QScalar>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn one() -> Self {
        SymPoly::constant(QScalar::one())
    }

    pub fn constant(c: QScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        SymPoly { terms }
    }

    /// The generator `e_n`; `e_0` is the unit.
    pub fn gen(n: u32) -> Self {
        if n == 0 {
            return SymPoly::one();
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::generator(n), QScalar::one());
        SymPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> QScalar {
        self.terms.get(m).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn insert_term(&mut self, m: Monomial, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Evaluate every coefficient at a rational point `q = v`.
    pub fn eval_coeffs_at_int(&self, v: i64) -> Result<SymPoly, ScalarError> {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            let value = c.eval_at_int(v)?;
            out.insert_term(m.clone(), QScalar::from_ratio(value));
        }
        Ok(out)
    }

    /// Substitute `e_k` by the k-th elementary symmetric polynomial of the
    /// given rational values (zero beyond the variable count); `q` stays
    /// symbolic, so the result is a scalar in Q(q).
    pub fn eval_finite_variables(&self, xs: &[BigRational]) -> QScalar {
        use num_traits::{One, Zero};
        // elementary symmetric values from the product of (1 + x_i u)
        let mut elem = vec![BigRational::zero(); xs.len() + 1];
        elem[0] = BigRational::one();
        for (i, x) in xs.iter().enumerate() {
            for k in (1..=i + 1).rev() {
                let carry = elem[k - 1].clone() * x;
                elem[k] += carry;
            }
        }
        let mut acc = QScalar::zero();
        'terms: for (m, c) in &self.terms {
            let mut factor = BigRational::one();
            for (g, e) in m.exponents() {
                let g = g as usize;
                if g > xs.len() || elem[g].is_zero() {
                    continue 'terms;
                }
                for _ in 0..e {
                    factor *= &elem[g];
                }
            }
            acc = acc + c * &QScalar::from_ratio(factor);
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: serde_json::Map<String, Value> = m
                    .exponents()
                    .map(|(g, e)| (g.to_string(), Value::from(e)))
                    .collect();
                json!({ "mono": mono, "coeff": c.to_json() })
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<SymPoly, SymfunError> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| SymfunError::BadJson("missing \"terms\"".into()))?;
        let mut out = SymPoly::zero();
        for t in terms {
            let mono = t
                .get("mono")
                .and_then(Value::as_object)
                .ok_or_else(|| SymfunError::BadJson("missing \"mono\"".into()))?;
            let mut m = BTreeMap::new();
            for (g, e) in mono {
                let g: u32 = g
                    .parse()
                    .map_err(|_| SymfunError::BadJson("bad generator index".into()))?;
                let e = e
                    .as_u64()
                    .ok_or_else(|| SymfunError::BadJson("bad exponent".into()))?;
                if g == 0 || e == 0 {
                    return Err(SymfunError::BadJson("zero generator or exponent".into()));
                }
                m.insert(g, e as u32);
            }
            let c = t
                .get("coeff")
                .ok_or_else(|| SymfunError::BadJson("missing \"coeff\"".into()))
                .and_then(|c| {
                    QScalar::from_json(c).map_err(|e| SymfunError::BadJson(e.to_string()))
                })?;
            out.insert_term(Monomial(m), c);
        }
        Ok(out)
    }

    /// Text rendering in the style `e1^2 - [2]*e2`, with q-dependent
    /// coefficients bracketed.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let (sign, body) = render_signed_qscalar(c);
            if out.is_empty() {
                if sign < 0 {
                    out.push('-');
                }
            } else if sign < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = render_monomial(m, false);
            match (body.as_str(), mono.as_str()) {
                ("1", "") => out.push('1'),
                ("1", _) => out.push_str(&mono),
                (_, "") => out.push_str(&body),
                _ => {
                    out.push_str(&body);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    pub fn render_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let (sign, body) = render_signed_qscalar(c);
            if out.is_empty() {
                if sign < 0 {
                    out.push('-');
                }
            } else if sign < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = render_monomial(m, true);
            match (body.as_str(), mono.as_str()) {
                ("1", "") => out.push('1'),
                ("1", _) => out.push_str(&mono),
                (_, "") => out.push_str(&body),
                _ => {
                    out.push_str(&body);
                    out.push_str("\\,");
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

fn render_monomial(m: &Monomial, latex: bool) -> String {
    let mut parts = Vec::new();
    for (g, e) in m.exponents() {
        let base = if latex {
            format!("e_{{{g}}}")
        } else {
            format!("e{g}")
        };
        if e == 1 {
            parts.push(base);
        } else if latex {
            parts.push(format!("{base}^{{{e}}}"));
        } else {
            parts.push(format!("{base}^{e}"));
        }
    }
    parts.join(if latex { " " } else { "*" })
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Coeff for SymPoly {
    fn zero() -> Self {
        SymPoly::zero()
    }

    fn one() -> Self {
        SymPoly::one()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), -c);
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = SymPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        SymPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn scale(&self, s: &QScalar) -> Self {
        if s.is_zero() {
            return SymPoly::zero();
        }
        SymPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    fn try_inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if *m != Monomial::unit() {
            return None;
        }
        c.try_inv().map(SymPoly::constant)
    }

    fn reduce_mod_q(&self, m: usize) -> Result<Self, ScalarError> {
        let mut out = SymPoly::zero();
        for (mono, c) in &self.terms {
            out.insert_term(mono.clone(), Coeff::reduce_mod_q(c, m)?);
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Generating series of the generators
// ---------------------------------------------------------------------------

/// `E(t)`: the series whose `t^n` coefficient is the generator `e_n`.
pub fn e_series(t_order: usize) -> Series<SymPoly> {
    Series::from_fn(t_order, |n| SymPoly::gen(n as u32))
}

/// `H(t) = (E(-t))^{-1}`; its `t^n` coefficient defines `h_n`.
pub fn h_from_e(t_order: usize) -> Series<SymPoly> {
    e_series(t_order)
        .scale_arg(&QScalar::from_int(-1))
        .invert()
        .expect("E(-t) has unit constant term")
}

static H_MEMO: Lazy<Mutex<Vec<SymPoly>>> = Lazy::new(|| Mutex::new(Vec::new()));

/// The complete function `h_n` expressed in the `e` generators; memoized.
pub fn h_poly(n: u32) -> SymPoly {
    let mut cache = H_MEMO.lock().unwrap();
    if cache.len() <= n as usize {
        let series = h_from_e(n as usize);
        *cache = (0..=n as usize).map(|k| series.coeff(k)).collect();
    }
    cache[n as usize].clone()
}

// ---------------------------------------------------------------------------
// q-power functions
// ---------------------------------------------------------------------------

type PowerMemo = Lazy<Mutex<HashMap<(u32, i64), SymPoly>>>;
type GeneralPowerMemo = Lazy<Mutex<HashMap<(u32, u32, i64), SymPoly>>>;

static Q_POWER_MEMO: PowerMemo = Lazy::new(|| Mutex::new(HashMap::new()));
static Q_POWER_R_MEMO: GeneralPowerMemo = Lazy::new(|| Mutex::new(HashMap::new()));

/// The q-power sum `[p_n]` in base `q^m`, computed by the triangular solve
/// of the Girard recurrence
/// `sum_{k=1}^{n} (-1)^{k-1} e_{n-k} [p_k] = [n] e_n`; memoized.
pub fn q_power(n: u32, m: BaseExponent) -> Result<SymPoly, SymfunError> {
    if n == 0 {
        return Err(SymfunError::BadIndices);
    }
    {
        let cache = Q_POWER_MEMO.lock().unwrap();
        if let Some(v) = cache.get(&(n, m.get())) {
            return Ok(v.clone());
        }
    }
    let mut values: Vec<SymPoly> = Vec::with_capacity(n as usize + 1);
    values.push(SymPoly::zero()); // unused index 0
    for j in 1..=n {
        let mut rhs = SymPoly::gen(j).scale(&qint(j, m));
        for k in 1..j {
            let term = SymPoly::gen(j - k).mul(&values[k as usize]);
            if (k - 1) % 2 == 0 {
                rhs = rhs.sub(&term);
            } else {
                rhs = rhs.add(&term);
            }
        }
        let pj = if (j - 1) % 2 == 0 { rhs } else { rhs.neg() };
        values.push(pj);
    }
    let mut cache = Q_POWER_MEMO.lock().unwrap();
    for (j, v) in values.iter().enumerate().skip(1) {
        cache
            .entry((j as u32, m.get()))
            .or_insert_with(|| v.clone());
    }
    Ok(values[n as usize].clone())
}

/// The generalized q-power `[p_n^(r)]` in base `q^m`, computed by its
/// Hessenberg determinant (first column `[k r] e_k`, Toeplitz `e`-band
/// elsewhere); memoized. This is an independent route from the triangular
/// solve in [`q_power`], with which it must agree at `r = 1`.
pub fn q_power_r(n: u32, r: u32, m: BaseExponent) -> Result<SymPoly, SymfunError> {
    if n < r {
        return Err(SymfunError::BadIndices);
    }
    if r == 0 {
        return Ok(if n == 0 {
            SymPoly::one()
        } else {
            SymPoly::zero()
        });
    }
    {
        let cache = Q_POWER_R_MEMO.lock().unwrap();
        if let Some(v) = cache.get(&(n, r, m.get())) {
            return Ok(v.clone());
        }
    }
    let size = (n - r + 1) as usize;
    let matrix = SquareMatrix::from_fn(size, |i, j| {
        if j == 0 {
            let k = r + i as u32;
            SymPoly::gen(k).scale(&qbinom(i64::from(k), i64::from(r), m))
        } else if i + 1 >= j {
            SymPoly::gen((i + 1 - j) as u32)
        } else {
            SymPoly::zero()
        }
    });
    let det = det_expansion(&matrix);
    Q_POWER_R_MEMO
        .lock()
        .unwrap()
        .insert((n, r, m.get()), det.clone());
    Ok(det)
}

/// `[p_lambda] = [p_{lambda_1}] [p_{lambda_2}] ...`; the empty partition
/// gives 1.
pub fn q_power_partition(lambda: &Partition, m: BaseExponent) -> SymPoly {
    let mut acc = SymPoly::one();
    for &part in lambda.parts() {
        acc = acc.mul(&q_power(part, m).expect("partition parts are positive"));
    }
    acc
}

// ---------------------------------------------------------------------------
// Girard recurrences
// ---------------------------------------------------------------------------

/// Check `sum_{k=1}^{n} (-1)^{k-1} e_{n-k} p(k) = [n] e_n` for a supplied
/// power-sum provider (the test harness injects perturbed providers here).
pub fn girard_e_holds_with(n: u32, m: BaseExponent, p: &dyn Fn(u32) -> SymPoly) -> bool {
    let mut lhs = SymPoly::zero();
    for k in 1..=n {
        let term = SymPoly::gen(n - k).mul(&p(k));
        if (k - 1) % 2 == 0 {
            lhs = lhs.add(&term);
        } else {
            lhs = lhs.sub(&term);
        }
    }
    lhs == SymPoly::gen(n).scale(&qint(n, m))
}

/// Check `sum_{k=1}^{n} h_{n-k} p(k) psi^{n-k} = [n] h_n` with `psi = q^m`.
pub fn girard_h_holds_with(n: u32, m: BaseExponent, p: &dyn Fn(u32) -> SymPoly) -> bool {
    let mut lhs = SymPoly::zero();
    for k in 1..=n {
        let weight = QScalar::q_pow(m.get() * i64::from(n - k));
        lhs = lhs.add(&h_poly(n - k).mul(&p(k)).scale(&weight));
    }
    lhs == h_poly(n).scale(&qint(n, m))
}

/// The elementary-function Girard identity for the computed `[p_k]`.
pub fn verify_girard_e(n: u32, m: BaseExponent) -> bool {
    girard_e_holds_with(n, m, &|k| q_power(k, m).unwrap())
}

/// The complete-function Girard identity for the computed `[p_k]`.
pub fn verify_girard_h(n: u32, m: BaseExponent) -> bool {
    girard_h_holds_with(n, m, &|k| q_power(k, m).unwrap())
}

// ---------------------------------------------------------------------------
// Newton-style determinant forms (generic over the coefficient ring)
// ---------------------------------------------------------------------------

/// Determinant expressing the power sum from the elementary-side sequence:
/// first column `[i] a_i`, Toeplitz `a`-band, unit superdiagonal. Equals
/// `p_n` when `a_n` satisfies the elementary Girard recurrence.
pub fn newton_det_p_from_a<C: Coeff>(a: &dyn Fn(u32) -> C, n: u32, m: BaseExponent) -> C {
    let matrix = SquareMatrix::from_fn(n as usize, |i, j| {
        let i = i as u32 + 1;
        let j = j as u32 + 1;
        if j == 1 {
            a(i).scale(&qint(i, m))
        } else if i + 1 == j {
            C::one()
        } else if i + 1 > j {
            a(i + 1 - j)
        } else {
            C::zero()
        }
    });
    det_expansion(&matrix)
}

/// Determinant expressing `[n]! a_n` from the power sums on the elementary
/// side: first column `p_i`, Toeplitz `p`-band, superdiagonal `[i]`.
pub fn newton_det_a_from_p_e<C: Coeff>(p: &dyn Fn(u32) -> C, n: u32, m: BaseExponent) -> C {
    let matrix = SquareMatrix::from_fn(n as usize, |i, j| {
        let i = i as u32 + 1;
        let j = j as u32 + 1;
        if j == 1 {
            p(i)
        } else if i + 1 == j {
            C::one().scale(&qint(i, m))
        } else if i + 1 > j {
            p(i + 1 - j)
        } else {
            C::zero()
        }
    });
    det_expansion(&matrix)
}

/// Complete-side determinant for the power sum: first column `[i] a_i`,
/// band `a_{i-j+1} psi^{i-j+1}`, unit superdiagonal. Equals
/// `(-1)^{n-1} p_n` when `a_n` satisfies the complete Girard recurrence.
pub fn newton_det_p_from_a_h<C: Coeff>(a: &dyn Fn(u32) -> C, n: u32, m: BaseExponent) -> C {
    let matrix = SquareMatrix::from_fn(n as usize, |i, j| {
        let i = i as u32 + 1;
        let j = j as u32 + 1;
        if j == 1 {
            a(i).scale(&qint(i, m))
        } else if i + 1 == j {
            C::one()
        } else if i + 1 > j {
            let k = i + 1 - j;
            a(k).scale(&QScalar::q_pow(m.get() * i64::from(k)))
        } else {
            C::zero()
        }
    });
    det_expansion(&matrix)
}

/// Complete-side determinant for `[n]! a_n`: first column `p_i`, band
/// `psi^{j-1} p_{i-j+1}`, superdiagonal `-[i]`.
pub fn newton_det_a_from_p_h<C: Coeff>(p: &dyn Fn(u32) -> C, n: u32, m: BaseExponent) -> C {
    let matrix = SquareMatrix::from_fn(n as usize, |i, j| {
        let i = i as u32 + 1;
        let j = j as u32 + 1;
        if j == 1 {
            p(i)
        } else if i + 1 == j {
            C::one().scale(&qint(i, m)).neg()
        } else if i + 1 > j {
            p(i + 1 - j).scale(&QScalar::q_pow(m.get() * i64::from(j - 1)))
        } else {
            C::zero()
        }
    });
    det_expansion(&matrix)
}

/// `[p_n]` by the elementary-side determinant; must equal [`q_power`].
pub fn p_det_from_e(n: u32, m: BaseExponent) -> Result<SymPoly, SymfunError> {
    if n == 0 {
        return Err(SymfunError::BadIndices);
    }
    Ok(newton_det_p_from_a(&SymPoly::gen, n, m))
}

/// `e_n` recovered from the power sums: the determinant divided by `[n]!`.
pub fn e_det_from_p(n: u32, m: BaseExponent) -> Result<SymPoly, SymfunError> {
    if n == 0 {
        return Err(SymfunError::BadIndices);
    }
    let det = newton_det_a_from_p_e(&|k| q_power(k, m).unwrap(), n, m);
    Ok(det.scale(&qfact(n, m).try_inv().expect("[n]! is nonzero")))
}

/// `h_n` recovered from the power sums: the determinant divided by `[n]!`.
pub fn h_det_from_p(n: u32, m: BaseExponent) -> Result<SymPoly, SymfunError> {
    if n == 0 {
        return Err(SymfunError::BadIndices);
    }
    let det = newton_det_a_from_p_h(&|k| q_power(k, m).unwrap(), n, m);
    Ok(det.scale(&qfact(n, m).try_inv().expect("[n]! is nonzero")))
}

/// `[p_n]` recovered from the complete functions: the signed determinant.
pub fn p_det_from_h(n: u32, m: BaseExponent) -> Result<SymPoly, SymfunError> {
    if n == 0 {
        return Err(SymfunError::BadIndices);
    }
    let det = newton_det_p_from_a_h(&h_poly, n, m);
    Ok(if (n - 1).is_multiple_of(2) {
        det
    } else {
        det.neg()
    })
}

// ---------------------------------------------------------------------------
// Partition expansions
// ---------------------------------------------------------------------------

/// `e_n = sum_{|lambda| = n} epsilon_lambda [z_lambda]^{-1} [p_lambda]`,
/// evaluated from the q-centralizer orders; must equal the generator `e_n`.
pub fn e_expansion(n: u32, m: BaseExponent) -> Result<SymPoly, SymfunError> {
    if n == 0 {
        return Err(SymfunError::BadIndices);
    }
    let mut acc = SymPoly::zero();
    for lambda in partitions_of(n) {
        let z = crate::combinatorics::q_z(&lambda, m).expect("nonempty partition");
        let coeff = z.try_inv().expect("[z_lambda] is nonzero");
        let coeff = if epsilon(&lambda) < 0 { -coeff } else { coeff };
        acc = acc.add(&q_power_partition(&lambda, m).scale(&coeff));
    }
    Ok(acc)
}

/// `h_n = sum_{|lambda| = n} (psi^{|lambda|-l(lambda)}
/// [z_lambda]_{psi^{-1}})^{-1} [p_lambda]_psi`; must equal `h_n`.
pub fn h_expansion(n: u32, m: BaseExponent) -> Result<SymPoly, SymfunError> {
    if n == 0 {
        return Err(SymfunError::BadIndices);
    }
    let mut acc = SymPoly::zero();
    for lambda in partitions_of(n) {
        let z_inv_base = crate::combinatorics::q_z(&lambda, m.inverse()).expect("nonempty");
        let shift = i64::from(lambda.size()) - lambda.length() as i64;
        let denom = QScalar::q_pow(m.get() * shift) * z_inv_base;
        let coeff = denom.try_inv().expect("q-centralizer order is nonzero");
        acc = acc.add(&q_power_partition(&lambda, m).scale(&coeff));
    }
    Ok(acc)
}

/// The alternating weighted sum over strictly decreasing index chains ending
/// in zero; equals `[n]! e_n`.
pub fn lemma_sum_e(n: u32, m: BaseExponent) -> Result<SymPoly, SymfunError> {
    chain_sum(n, m, ChainWeight::Alternating)
}

/// The q-weighted variant of the same chain sum; equals `[n]! h_n`.
pub fn lemma_sum_h(n: u32, m: BaseExponent) -> Result<SymPoly, SymfunError> {
    chain_sum(n, m, ChainWeight::QPower)
}

enum ChainWeight {
    Alternating,
    QPower,
}

fn chain_sum(n: u32, m: BaseExponent, weight: ChainWeight) -> Result<SymPoly, SymfunError> {
    if n == 0 {
        return Err(SymfunError::BadIndices);
    }
    let prefactor = qfact(n - 1, m);
    let mut acc = SymPoly::zero();
    // chains n-1 >= k_1 > ... > k_{r-1} > k_r = 0 are subsets of {1..n-1}
    for mask in 0u32..(1 << (n - 1)) {
        let mut chain: Vec<u32> = (1..n)
            .rev()
            .filter(|&v| mask & (1 << (v - 1)) != 0)
            .collect();
        chain.push(0);
        let r = chain.len() as u32;
        let mut denom = QScalar::one();
        for &k in &chain[..chain.len() - 1] {
            denom = denom * qint(k, m);
        }
        let mut coeff = &prefactor / &denom;
        match weight {
            ChainWeight::Alternating => {
                if (n - r) % 2 == 1 {
                    coeff = -coeff;
                }
            }
            ChainWeight::QPower => {
                let total: i64 = chain.iter().map(|&k| i64::from(k)).sum();
                coeff = coeff * QScalar::q_pow(m.get() * total);
            }
        }
        let mut product = SymPoly::one();
        let mut prev = n;
        for &k in &chain {
            product = product.mul(&q_power(prev - k, m).unwrap());
            prev = k;
        }
        acc = acc.add(&product.scale(&coeff));
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Power-sum generating series
// ---------------------------------------------------------------------------

/// `P(t) = sum_{n >= 1} [p_n]/[n] t^n`.
pub fn p_sum_series(t_order: usize, m: BaseExponent) -> Series<SymPoly> {
    Series::from_fn(t_order, |n| {
        if n == 0 {
            SymPoly::zero()
        } else {
            q_power(n as u32, m)
                .unwrap()
                .scale(&qint(n as u32, m).try_inv().expect("[n] nonzero"))
        }
    })
}

/// `p(t) = sum_{n >= 0} [p_{n+1}] t^n`, the q-derivative of `P(t)`.
pub fn p_small_series(t_order: usize, m: BaseExponent) -> Series<SymPoly> {
    Series::from_fn(t_order, |n| q_power(n as u32 + 1, m).unwrap())
}
