//! Specializations of the symmetric-function machinery: read a concrete
//! series `G(t)` with `G(0) = 1` as the image of `E(t)` or `H(t)`, extract
//! its power-sum sequence from the Girard recurrences, and reproduce the
//! q-binomial theorem, the tree-inversion enumerator identities, and the
//! discrete q-Hermite polynomials of both kinds.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::combinatorics::binomial;
use crate::linalg::{det_bareiss, SquareMatrix};
use crate::oracle::{j_poly, j_reciprocal, OracleError};
use crate::qcalculus::{gessel_exp, invert_gessel_exp, qproduct_exp, star_exp, QCalculusError};
use crate::ring::{Coeff, GaussQ, Poly, XPoly};
use crate::scalars::{qfact, qint, qpochhammer, BaseExponent, QScalar};
use crate::series::{Series, SeriesError};
use crate::symfun::{newton_det_a_from_p_e, newton_det_a_from_p_h, newton_det_p_from_a};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecializationError {
    #[error("specialization requires constant term 1")]
    BadConstantTerm,
    #[error("a computation that must be real produced an imaginary part")]
    NonRealResult,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    QCalculus(#[from] QCalculusError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Whether a series is read as the image of `E(t)` (coefficients specialize
/// the elementary functions) or of `H(t)` (the complete functions).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecMode {
    Elementary,
    Complete,
}

/// A series together with its extracted power-sum sequence.
#[derive(Debug, Clone)]
pub struct Specialization<C: Coeff> {
    mode: SpecMode,
    g: Series<C>,
    /// `extracted[n]` is the image of the n-th power sum, `n >= 1`;
    /// index 0 holds zero.
    extracted: Vec<C>,
}

const M1: BaseExponent = BaseExponent::ONE;

/// Extract the power-sum images of a unital series by a triangular solve of
/// the Girard recurrence for the chosen mode, then re-verify the defining
/// quotient relation.
pub fn specialize<C: Coeff>(
    mode: SpecMode,
    g: &Series<C>,
) -> Result<Specialization<C>, SpecializationError> {
    if g.coeff(0) != C::one() {
        return Err(SpecializationError::BadConstantTerm);
    }
    let n_ord = g.t_order();
    let mut extracted: Vec<C> = vec![C::zero()];
    for n in 1..=n_ord {
        let a_n = g.coeff(n).scale(&qint(n as u32, M1));
        let p_n = match mode {
            SpecMode::Elementary => {
                let mut acc = a_n;
                for (k, p_k) in extracted.iter().enumerate().take(n).skip(1) {
                    let term = g.coeff(n - k).mul(p_k);
                    if (k - 1).is_multiple_of(2) {
                        acc = acc.sub(&term);
                    } else {
                        acc = acc.add(&term);
                    }
                }
                if (n - 1).is_multiple_of(2) {
                    acc
                } else {
                    acc.neg()
                }
            }
            SpecMode::Complete => {
                let mut acc = a_n;
                for (k, p_k) in extracted.iter().enumerate().take(n).skip(1) {
                    let w = QScalar::q_pow((n - k) as i64);
                    acc = acc.sub(&g.coeff(n - k).mul(p_k).scale(&w));
                }
                acc
            }
        };
        extracted.push(p_n);
    }
    let spec = Specialization {
        mode,
        g: g.clone(),
        extracted,
    };
    debug_assert!(spec.defining_relation_holds());
    Ok(spec)
}

impl<C: Coeff> Specialization<C> {
    pub fn mode(&self) -> SpecMode {
        self.mode
    }

    pub fn series(&self) -> &Series<C> {
        &self.g
    }

    /// The image of the n-th power sum, for `1 <= n <= t_order`.
    pub fn power(&self, n: usize) -> &C {
        &self.extracted[n]
    }

    /// `p(t) = sum_n p_{n+1} t^n`, one order below the source series.
    pub fn power_series_small(&self) -> Series<C> {
        let n = self.g.t_order();
        if n == 0 {
            return Series::zero(0);
        }
        Series::from_fn(n - 1, |k| self.extracted[k + 1].clone())
    }

    /// `P(t) = sum_n p_n / [n] t^n`, the composition argument.
    pub fn power_series_weighted(&self) -> Series<C> {
        Series::from_fn(self.g.t_order(), |n| {
            if n == 0 {
                C::zero()
            } else {
                self.extracted[n].scale(&qint(n as u32, M1).try_inv().expect("[n] nonzero"))
            }
        })
    }

    /// The defining quotient relation of the mode: `p(-t) G(t) = DG(t)` for
    /// the elementary reading, `p(t) G(qt) = DG(t)` for the complete one.
    pub fn defining_relation_holds(&self) -> bool {
        let dg = self.g.q_derive(M1);
        let p = self.power_series_small();
        let lhs = match self.mode {
            SpecMode::Elementary => p.scale_arg(&QScalar::from_int(-1)).mul(&self.g),
            SpecMode::Complete => p.mul(&self.g.scale_arg(&QScalar::q())),
        };
        lhs.agrees_with(&dg)
    }
}

// ---------------------------------------------------------------------------
// q-binomial theorem
// ---------------------------------------------------------------------------

/// `(a; q)_n` in an arbitrary coefficient ring.
fn ring_pochhammer<C: Coeff>(a: &C, n: usize) -> C {
    let mut acc = C::one();
    for i in 0..n {
        acc = acc.mul(&C::one().sub(&a.scale(&QScalar::q_pow(i as i64))));
    }
    acc
}

/// The exact q-binomial sum `sum_n (a;q)_n / (q;q)_n t^n`.
pub fn qbinomial_sum_series<C: Coeff>(a: &C, t_order: usize) -> Series<C> {
    Series::from_fn(t_order, |n| {
        let den = qpochhammer(&QScalar::q(), n as u32, M1)
            .try_inv()
            .expect("(q;q)_n is nonzero");
        ring_pochhammer(a, n).scale(&den)
    })
}

/// The closed-form power-sum images `(-a)^{n-1} (1-a) / (1-q)` of the
/// q-binomial sum read as a specialization of `E(t)`.
pub fn qbinomial_closed_power<C: Coeff>(a: &C, n: usize) -> C {
    let mut acc = C::one().sub(a);
    let minus_a = a.neg();
    for _ in 1..n {
        acc = acc.mul(&minus_a);
    }
    acc.scale(
        &(QScalar::one() - QScalar::q())
            .try_inv()
            .expect("1 - q is nonzero"),
    )
}

/// The sum, composition, and product routes, in that order.
pub type RouteTriple<C> = (Series<C>, Series<C>, Series<C>);

/// The three routes to the q-binomial theorem, all reduced mod
/// `(q^M, t^{N+1})`: the defining sum, the exponential-formula composition
/// built from the closed-form power sums, and the M-factor truncation of the
/// infinite product `(at;q)_inf / (t;q)_inf`.
pub fn qbinomial_routes<C: Coeff>(
    a: &C,
    t_order: usize,
    q_order: usize,
) -> Result<RouteTriple<C>, SpecializationError> {
    let sum_route = qbinomial_sum_series(a, t_order).reduce_mod_q(q_order)?;

    // F(t) = -P(-t) with the closed-form power sums
    let f: Series<C> = Series::from_fn(t_order, |n| {
        if n == 0 {
            C::zero()
        } else {
            let v = qbinomial_closed_power(a, n)
                .scale(&qint(n as u32, M1).try_inv().expect("[n] nonzero"));
            if (n - 1) % 2 == 0 {
                v
            } else {
                v.neg()
            }
        }
    });
    let exp_route = gessel_exp(&f, M1)?.reduce_mod_q(q_order)?;

    let mut product_route = Series::one(t_order).reduce_mod_q(q_order)?;
    for k in 0..q_order {
        let qk = QScalar::q_pow(k as i64);
        let numerator = Series::one(t_order)
            .sub(&Series::monomial(a.scale(&qk), 1, t_order))
            .reduce_mod_q(q_order)?;
        let denominator = Series::one(t_order)
            .sub(&Series::monomial(C::one().scale(&qk), 1, t_order))
            .reduce_mod_q(q_order)?
            .invert()?;
        product_route = product_route.mul(&numerator).mul(&denominator);
    }
    Ok((sum_route, exp_route, product_route))
}

/// Route agreement plus the closed-form extraction check for a concrete
/// scalar value of `a`.
pub fn qbinomial_check(
    a: &QScalar,
    t_order: usize,
    q_order: usize,
) -> Result<bool, SpecializationError> {
    qbinomial_check_in(a, t_order, q_order)
}

/// The same checks with `a` kept as a free polynomial variable.
pub fn qbinomial_check_symbolic(
    t_order: usize,
    q_order: usize,
) -> Result<bool, SpecializationError> {
    let a: XPoly = Poly::x();
    qbinomial_check_in(&a, t_order, q_order)
}

fn qbinomial_check_in<C: Coeff>(
    a: &C,
    t_order: usize,
    q_order: usize,
) -> Result<bool, SpecializationError> {
    let (sum_route, exp_route, product_route) = qbinomial_routes(a, t_order, q_order)?;
    if !sum_route.agrees_with(&exp_route) || !sum_route.agrees_with(&product_route) {
        return Ok(false);
    }
    let spec = specialize(SpecMode::Elementary, &qbinomial_sum_series(a, t_order))?;
    for n in 1..=t_order {
        if *spec.power(n) != qbinomial_closed_power(a, n) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Tree-inversion identities
// ---------------------------------------------------------------------------

/// The q-deformation of the exponential series:
/// `sum_n q^{binom(n,2)} t^n / n!`.
pub fn exp_deformation_series(t_order: usize) -> Series<QScalar> {
    Series::from_fn(t_order, |n| {
        let fact: BigInt = (1..=n as i64).product::<i64>().max(1).into();
        QScalar::q_pow(binomial(n as u64, 2) as i64)
            * QScalar::from_ratio(BigRational::new(BigInt::from(1), fact))
    })
}

fn factorial_scalar(n: u32) -> QScalar {
    let f: BigInt = (1..=i64::from(n)).product::<i64>().max(1).into();
    QScalar::from_ratio(BigRational::from_integer(f))
}

fn one_minus_q() -> QScalar {
    QScalar::one() - QScalar::q()
}

/// Extracted power sums of the deformed exponential match the tree
/// enumerators: `p_n n! / (1-q)^{n-1} = J_{n+1}` for `n <= n_max`.
pub fn tree_power_extraction_matches(n_max: u32) -> Result<bool, SpecializationError> {
    let spec = specialize(
        SpecMode::Elementary,
        &exp_deformation_series(n_max as usize),
    )?;
    for n in 1..=n_max {
        let lhs = spec.power(n as usize) * &factorial_scalar(n);
        let rhs = one_minus_q().pow(i64::from(n) - 1) * j_poly(n + 1)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `[n] q^{binom(n,2)} = sum_k binom(n,k) q^{binom(n-k,2)} (q-1)^{k-1}
/// J_{k+1}`, with the oracle enumerators.
pub fn tree_bracket_identity(n: u32) -> Result<bool, SpecializationError> {
    let lhs = qint(n, M1) * QScalar::q_pow(binomial(u64::from(n), 2) as i64);
    let mut rhs = QScalar::zero();
    for k in 1..=n {
        rhs = rhs
            + QScalar::from_int(binomial(u64::from(n), u64::from(k)) as i64)
                * QScalar::q_pow(binomial(u64::from(n - k), 2) as i64)
                * (QScalar::q() - QScalar::one()).pow(i64::from(k) - 1)
                * j_poly(k + 1)?;
    }
    Ok(lhs == rhs)
}

/// The reciprocal-enumerator analogue
/// `[n] = sum_k binom(n,k) q^{(k+1)(n-k)} (1-q)^{k-1} Jbar_{k+1}`.
pub fn parking_bracket_identity(n: u32) -> Result<bool, SpecializationError> {
    let lhs = qint(n, M1);
    let mut rhs = QScalar::zero();
    for k in 1..=n {
        rhs = rhs
            + QScalar::from_int(binomial(u64::from(n), u64::from(k)) as i64)
                * QScalar::q_pow(i64::from(k + 1) * i64::from(n - k))
                * one_minus_q().pow(i64::from(k) - 1)
                * j_reciprocal(k + 1)?;
    }
    Ok(lhs == rhs)
}

/// Its unit-sum form
/// `1 = sum_{k=0}^{n} binom(n,k) q^{(k+1)(n-k)} (1-q)^k Jbar_{k+1}`.
pub fn parking_unit_identity(n: u32) -> Result<bool, SpecializationError> {
    let mut rhs = QScalar::zero();
    for k in 0..=n {
        rhs = rhs
            + QScalar::from_int(binomial(u64::from(n), u64::from(k)) as i64)
                * QScalar::q_pow(i64::from(k + 1) * i64::from(n - k))
                * one_minus_q().pow(i64::from(k))
                * j_reciprocal(k + 1)?;
    }
    Ok(rhs == QScalar::one())
}

/// The tree form of the elementary-side power-sum determinant: `n!` times
/// the determinant built from the deformed-exponential coefficients equals
/// `(1-q)^{n-1} J_{n+1}`.
pub fn tree_det_power(n: u32) -> Result<bool, SpecializationError> {
    let a = |i: u32| -> QScalar {
        QScalar::q_pow(binomial(u64::from(i), 2) as i64)
            * factorial_scalar(i).try_inv().expect("i! nonzero")
    };
    let det = newton_det_p_from_a(&a, n, M1);
    let lhs = factorial_scalar(n) * det;
    let rhs = one_minus_q().pow(i64::from(n) - 1) * j_poly(n + 1)?;
    Ok(lhs == rhs)
}

/// The converse determinant: the enumerator-built determinant equals
/// `[n]! q^{binom(n,2)} / n!`.
pub fn tree_det_coefficient(n: u32) -> Result<bool, SpecializationError> {
    let mut powers = vec![QScalar::zero()];
    for i in 1..=n {
        powers.push(
            one_minus_q().pow(i64::from(i) - 1)
                * j_poly(i + 1)?
                * factorial_scalar(i).try_inv().expect("i! nonzero"),
        );
    }
    let det = newton_det_a_from_p_e(&|k: u32| powers[k as usize].clone(), n, M1);
    let rhs = qfact(n, M1)
        * QScalar::q_pow(binomial(u64::from(n), 2) as i64)
        * factorial_scalar(n).try_inv().expect("n! nonzero");
    Ok(det == rhs)
}

/// The tree composition argument
/// `F(t) = sum_n (q-1)^{n-1} J_{n+1} t^n / ([n] n!)`.
pub fn tree_composition_argument(t_order: usize) -> Result<Series<QScalar>, SpecializationError> {
    let mut coeffs = vec![QScalar::zero()];
    for n in 1..=t_order {
        coeffs.push(
            (QScalar::q() - QScalar::one()).pow(n as i64 - 1)
                * j_poly(n as u32 + 1)?
                * (qint(n as u32, M1) * factorial_scalar(n as u32))
                    .try_inv()
                    .expect("nonzero"),
        );
    }
    Ok(Series::from_coeffs(coeffs))
}

/// The exponential-formula form of the deformed exponential, to the given
/// t-order.
pub fn tree_qexp_form(t_order: usize) -> Result<bool, SpecializationError> {
    let f = tree_composition_argument(t_order)?;
    let lhs = gessel_exp(&f, M1)?;
    Ok(lhs.agrees_with(&exp_deformation_series(t_order)))
}

/// The infinite q-product form of the deformed exponential, mod
/// `(q^M, t^{N+1})`.
pub fn tree_qproduct_form(t_order: usize, q_order: usize) -> Result<bool, SpecializationError> {
    let f = tree_composition_argument(t_order + 1)?;
    let lhs = qproduct_exp(&f, M1, t_order, q_order)?;
    let rhs = exp_deformation_series(t_order).reduce_mod_q(q_order)?;
    Ok(lhs.agrees_with(&rhs))
}

// ---------------------------------------------------------------------------
// Discrete q-Hermite I
// ---------------------------------------------------------------------------

fn xp(c: QScalar) -> XPoly {
    Poly::constant(c)
}

fn x_pow(k: usize) -> XPoly {
    Poly::monomial(QScalar::one(), k)
}

/// The generating series `sum_n H_n(x;q) / (q;q)_n t^n` of the first-kind
/// polynomials, as the product of the even-part series (the expansion of
/// the `(t^2; q^2)` product) and the geometric-part series (the inverse
/// `(xt; q)` product).
pub fn hermite_gf_series(t_order: usize) -> Series<XPoly> {
    let even: Series<XPoly> = Series::from_fn(t_order, |n| {
        if n % 2 != 0 {
            return <XPoly as Coeff>::zero();
        }
        let j = n / 2;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let den = qpochhammer(&QScalar::q_pow(2), j as u32, BaseExponent::new(2).unwrap())
            .try_inv()
            .expect("(q^2;q^2)_j nonzero");
        xp(QScalar::from_int(sign) * QScalar::q_pow(2 * binomial(j as u64, 2) as i64) * den)
    });
    let geometric: Series<XPoly> = Series::from_fn(t_order, |n| {
        let den = qpochhammer(&QScalar::q(), n as u32, M1)
            .try_inv()
            .expect("(q;q)_n nonzero");
        x_pow(n).scale(&den)
    });
    even.mul(&geometric)
}

/// First-kind polynomial from the generating series:
/// `(q;q)_n` times the `t^n` coefficient.
pub fn hermite_i_series(n: u32) -> XPoly {
    hermite_gf_series(n as usize)
        .coeff(n as usize)
        .scale(&qpochhammer(&QScalar::q(), n, M1))
}

/// First-kind polynomial by the elementary-side determinant: alternating
/// `x/1` band with superdiagonal `1 - q^i`.
pub fn hermite_i_det_e(n: u32) -> XPoly {
    if n == 0 {
        return <XPoly as Coeff>::one();
    }
    let band = |k: u32| -> XPoly {
        if k % 2 == 1 {
            x_pow(1)
        } else {
            <XPoly as Coeff>::one()
        }
    };
    let matrix = SquareMatrix::from_fn(n as usize, |i, j| {
        let i = i as u32 + 1;
        let j = j as u32 + 1;
        if j <= i {
            band(i + 1 - j)
        } else if j == i + 1 {
            xp(QScalar::one() - QScalar::q_pow(i64::from(i)))
        } else {
            <XPoly as Coeff>::zero()
        }
    });
    det_bareiss(&matrix)
}

/// First-kind polynomial by the complete-side determinant: band
/// `q^{j-1} s_{i-j+1}` with `s_1 = x`, `s_k = x^{k-2}(x^2 - 1)`, and
/// superdiagonal `-(1 - q^i)`.
pub fn hermite_i_det_h(n: u32) -> XPoly {
    if n == 0 {
        return <XPoly as Coeff>::one();
    }
    if n == 1 {
        return x_pow(1);
    }
    let band = |k: u32| -> XPoly {
        if k == 1 {
            x_pow(1)
        } else {
            x_pow(k as usize - 2).mul(&x_pow(2).sub(&<XPoly as Coeff>::one()))
        }
    };
    let matrix = SquareMatrix::from_fn(n as usize, |i, j| {
        let i = i as u32 + 1;
        let j = j as u32 + 1;
        if j <= i {
            band(i + 1 - j).scale(&QScalar::q_pow(i64::from(j) - 1))
        } else if j == i + 1 {
            xp(QScalar::q_pow(i64::from(i)) - QScalar::one())
        } else {
            <XPoly as Coeff>::zero()
        }
    });
    det_bareiss(&matrix)
}

/// First-kind polynomial with all three routes compared.
pub fn hermite_i(n: u32) -> XPoly {
    let via_series = hermite_i_series(n);
    let via_e = hermite_i_det_e(n);
    let via_h = hermite_i_det_h(n);
    assert!(
        via_series == via_e && via_series == via_h,
        "first-kind Hermite routes disagree at n={n}"
    );
    via_series
}

/// The moment-determinant form of the fourth polynomial, for comparison
/// with the banded determinant.
pub fn hermite_i_moment_det_4() -> XPoly {
    let om = |k: i64| xp(QScalar::one() - QScalar::q_pow(k));
    let zero = || xp(QScalar::zero());
    let one = || xp(QScalar::one());
    let rows: [[XPoly; 5]; 5] = [
        [one(), zero(), om(1), zero(), om(1).mul(&om(3))],
        [zero(), one(), zero(), om(3), zero()],
        [one(), zero(), om(3), zero(), om(3).mul(&om(5))],
        [zero(), one(), zero(), om(5), zero()],
        [x_pow(0), x_pow(1), x_pow(2), x_pow(3), x_pow(4)],
    ];
    let matrix = SquareMatrix::from_fn(5, |i, j| rows[i][j].clone());
    let det = det_bareiss(&matrix);
    let scale = (QScalar::q_pow(4) * (QScalar::one() - QScalar::q_pow(2)).pow(2))
        .try_inv()
        .expect("nonzero");
    det.scale(&scale)
}

/// The composition argument of the first-kind generating function:
/// `(1-q)^{-1} (xt - t^2/[2] + x t^3/[3] - t^4/[4] + ...)`.
pub fn hermite_i_composition_argument(t_order: usize) -> Series<XPoly> {
    let inv = one_minus_q().try_inv().expect("1 - q nonzero");
    Series::from_fn(t_order, |n| {
        if n == 0 {
            return <XPoly as Coeff>::zero();
        }
        let body = if n % 2 == 1 { x_pow(1) } else { x_pow(0) };
        let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
        body.scale(
            &(QScalar::from_int(sign) * &inv * qint(n as u32, M1).try_inv().expect("[n] nonzero")),
        )
    })
}

/// The exponential-formula form of the first-kind generating function, plus
/// its inversion and the closed-form extracted power series
/// `(x + t) / ((1-q)(1 - t^2))`.
pub fn hermite_i_qexp_form(t_order: usize) -> Result<bool, SpecializationError> {
    let f = hermite_i_composition_argument(t_order);
    let g = hermite_gf_series(t_order);
    if !gessel_exp(&f, M1)?.agrees_with(&g) {
        return Ok(false);
    }
    if !invert_gessel_exp(&g, M1)?.agrees_with(&f) {
        return Ok(false);
    }
    // extracted p(t) = (x + t) / ((1-q)(1-t^2))
    let spec = specialize(SpecMode::Elementary, &g)?;
    let extracted = spec.power_series_small();
    let inv = one_minus_q().try_inv().expect("nonzero");
    let expected: Series<XPoly> = Series::from_fn(extracted.t_order(), |n| {
        let body = if n % 2 == 0 { x_pow(1) } else { x_pow(0) };
        body.scale(&inv)
    });
    Ok(extracted.agrees_with(&expected))
}

/// Complete-side extraction for the first-kind generating function:
/// `p^h_1 = x/(1-q)` and `p^h_n = x^{n-2}(x^2-1)/(1-q)`, i.e. the expansion
/// of `(x - t)/((1-q)(1-xt))`.
pub fn hermite_i_complete_extraction(t_order: usize) -> Result<bool, SpecializationError> {
    let g = hermite_gf_series(t_order);
    let spec = specialize(SpecMode::Complete, &g)?;
    let inv = one_minus_q().try_inv().expect("nonzero");
    for n in 1..=t_order {
        let expected = if n == 1 {
            x_pow(1).scale(&inv)
        } else {
            x_pow(n - 2).mul(&x_pow(2).sub(&x_pow(0))).scale(&inv)
        };
        if *spec.power(n) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Raw truncated products against the expanded generating series, mod
/// `q^M`: `prod_{k<M} (1 - q^{2k} t^2) * prod_{k<M} (1 - q^k x t)^{-1}`.
pub fn hermite_i_product_matches(
    t_order: usize,
    q_order: usize,
) -> Result<bool, SpecializationError> {
    let mut acc = Series::one(t_order).reduce_mod_q(q_order)?;
    for k in 0..q_order {
        let even = Series::one(t_order)
            .sub(&Series::monomial(
                xp(QScalar::q_pow(2 * k as i64)),
                2,
                t_order,
            ))
            .reduce_mod_q(q_order)?;
        let geom = Series::one(t_order)
            .sub(&Series::monomial(
                x_pow(1).scale(&QScalar::q_pow(k as i64)),
                1,
                t_order,
            ))
            .reduce_mod_q(q_order)?
            .invert()?;
        acc = acc.mul(&even).mul(&geom);
    }
    let expanded = hermite_gf_series(t_order).reduce_mod_q(q_order)?;
    Ok(acc.agrees_with(&expanded))
}

/// The physicists' Hermite polynomials from the three-term recurrence.
pub fn classical_hermite(n: u32) -> XPoly {
    let mut prev: XPoly = <XPoly as Coeff>::one();
    if n == 0 {
        return prev;
    }
    let mut cur = x_pow(1).scale(&QScalar::from_int(2));
    for k in 1..n {
        let next = x_pow(1)
            .scale(&QScalar::from_int(2))
            .mul(&cur)
            .sub(&prev.scale(&QScalar::from_int(2 * i64::from(k))));
        prev = cur;
        cur = next;
    }
    cur
}

/// The rescaled classical limit: each coefficient of
/// `H_n(x sqrt(1-q^2); q) / (1-q^2)^{n/2}` has a removable limit at `q = 1`
/// equal to the matching coefficient of `H_n(x) / 2^n`.
pub fn hermite_classical_limit(n: u32) -> Result<bool, SpecializationError> {
    let h = hermite_i(n);
    let target = classical_hermite(n).scale(&QScalar::from_ratio(BigRational::new(
        BigInt::from(1),
        BigInt::from(1) << n,
    )));
    let one_minus_q2 = QScalar::one() - QScalar::q_pow(2);
    for j in 0..=n as usize {
        let c = h.coeff(j);
        if c.is_zero() {
            continue;
        }
        // parity: only j = n mod 2 occurs, so (j - n)/2 is integral
        debug_assert_eq!(j % 2, (n % 2) as usize);
        let exponent = (j as i64 - i64::from(n)) / 2;
        let rescaled = c * one_minus_q2.pow(exponent);
        let Ok(limit) = rescaled.eval_at_int(1) else {
            return Ok(false);
        };
        if QScalar::from_ratio(limit) != target.coeff(j) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Discrete q-Hermite II
// ---------------------------------------------------------------------------

/// Second-kind polynomial through the complete-side determinant of the
/// elementary-specialization power values, evaluated at `ix` and scaled by
/// `(i(q-1))^n q^{-binom(n,2)}`; the result must be free of `i`.
pub fn hermite_ii(n: u32) -> Result<XPoly, SpecializationError> {
    let inv = one_minus_q().try_inv().expect("nonzero");
    let p = |k: u32| -> XPoly {
        let body = if k % 2 == 1 { x_pow(1) } else { x_pow(0) };
        body.scale(&inv)
    };
    let det: XPoly = if n == 0 {
        <XPoly as Coeff>::one()
    } else {
        newton_det_a_from_p_h(&p, n, M1)
    };
    let at_ix: Poly<GaussQ> = det.subst_ix();
    let scalar = GaussQ::i_pow(i64::from(n)).scale(
        &((QScalar::q() - QScalar::one()).pow(i64::from(n))
            * QScalar::q_pow(-(binomial(u64::from(n), 2) as i64))),
    );
    let scaled = at_ix.map(|c| Coeff::mul(c, &scalar));
    let mut coeffs = Vec::with_capacity(scaled.coeffs().len());
    for c in scaled.coeffs() {
        if !c.is_real() {
            return Err(SpecializationError::NonRealResult);
        }
        coeffs.push(c.re.clone());
    }
    Ok(Poly::new(coeffs))
}

/// The generating series `sum_n Htilde_n q^{binom(n,2)} t^n / (q;q)_n` of
/// the second-kind polynomials, expanded from its two factor series.
pub fn hermite_ii_gf_series(t_order: usize) -> Series<XPoly> {
    let rising: Series<XPoly> = Series::from_fn(t_order, |n| {
        let den = qpochhammer(&QScalar::q(), n as u32, M1)
            .try_inv()
            .expect("(q;q)_n nonzero");
        x_pow(n).scale(&(QScalar::q_pow(binomial(n as u64, 2) as i64) * den))
    });
    let even: Series<XPoly> = Series::from_fn(t_order, |n| {
        if n % 2 != 0 {
            return <XPoly as Coeff>::zero();
        }
        let j = n / 2;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let den = qpochhammer(&QScalar::q_pow(2), j as u32, BaseExponent::new(2).unwrap())
            .try_inv()
            .expect("(q^2;q^2)_j nonzero");
        xp(QScalar::from_int(sign) * den)
    });
    rising.mul(&even)
}

/// Second-kind polynomial from the generating series.
pub fn hermite_ii_series(n: u32) -> XPoly {
    hermite_ii_gf_series(n as usize).coeff(n as usize).scale(
        &(qpochhammer(&QScalar::q(), n, M1) * QScalar::q_pow(-(binomial(u64::from(n), 2) as i64))),
    )
}

/// The starred-composition form of the second-kind generating function:
/// the argument is `(1-q)^{-1}(xt/[1] - t^2/[2] - xt^3/[3] + t^4/[4] + ...)`
/// with sign pattern `(-1)^{floor(n/2)}`.
pub fn hermite_ii_star_form(t_order: usize) -> Result<bool, SpecializationError> {
    let inv = one_minus_q().try_inv().expect("nonzero");
    let f: Series<XPoly> = Series::from_fn(t_order, |n| {
        if n == 0 {
            return <XPoly as Coeff>::zero();
        }
        let body = if n % 2 == 1 { x_pow(1) } else { x_pow(0) };
        let sign = if (n / 2) % 2 == 0 { 1 } else { -1 };
        body.scale(
            &(QScalar::from_int(sign) * &inv * qint(n as u32, M1).try_inv().expect("nonzero")),
        )
    });
    let lhs = star_exp(&f, M1)?;
    Ok(lhs.agrees_with(&hermite_ii_gf_series(t_order)))
}

/// The inverse relation between the two generating functions: the
/// second-kind series equals the reciprocal of the first-kind series at
/// `(it, ix)`.
pub fn hermite_ii_inverse_relation(t_order: usize) -> Result<bool, SpecializationError> {
    let g = hermite_gf_series(t_order);
    // substitute x -> ix and t -> it
    let gauss: Series<Poly<GaussQ>> = Series::from_fn(t_order, |n| {
        g.coeff(n)
            .subst_ix()
            .map(|c| Coeff::mul(c, &GaussQ::i_pow(n as i64)))
    });
    let inverted = gauss.invert()?;
    let reference = hermite_ii_gf_series(t_order);
    let embedded: Series<Poly<GaussQ>> = Series::from_fn(t_order, |n| {
        reference.coeff(n).map(|c| GaussQ::from_real(c.clone()))
    });
    Ok(inverted.agrees_with(&embedded))
}

/// Raw truncated products for the second-kind generating function:
/// `prod_{k<M} (1 + q^k x t) * prod_{k<M} (1 + q^{2k} t^2)^{-1}` mod `q^M`.
pub fn hermite_ii_product_matches(
    t_order: usize,
    q_order: usize,
) -> Result<bool, SpecializationError> {
    let mut acc = Series::one(t_order).reduce_mod_q(q_order)?;
    for k in 0..q_order {
        let rising = Series::one(t_order)
            .add(&Series::monomial(
                x_pow(1).scale(&QScalar::q_pow(k as i64)),
                1,
                t_order,
            ))
            .reduce_mod_q(q_order)?;
        let even = Series::one(t_order)
            .add(&Series::monomial(
                xp(QScalar::q_pow(2 * k as i64)),
                2,
                t_order,
            ))
            .reduce_mod_q(q_order)?
            .invert()?;
        acc = acc.mul(&rising).mul(&even);
    }
    let expanded = hermite_ii_gf_series(t_order).reduce_mod_q(q_order)?;
    Ok(acc.agrees_with(&expanded))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::{e_series, q_power};

    #[test]
    fn self_specialization_fixpoint() {
        let n = 8;
        let spec = specialize(SpecMode::Elementary, &e_series(n)).unwrap();
        for k in 1..=n {
            assert_eq!(*spec.power(k), q_power(k as u32, M1).unwrap(), "k={k}");
        }
        let h = crate::symfun::h_from_e(6);
        let spec = specialize(SpecMode::Complete, &h).unwrap();
        for k in 1..=6 {
            assert_eq!(*spec.power(k), q_power(k as u32, M1).unwrap(), "k={k}");
        }
    }

    #[test]
    fn bad_constant_term_rejected() {
        let s: Series<QScalar> = Series::monomial(QScalar::one(), 1, 4);
        assert!(matches!(
            specialize(SpecMode::Elementary, &s),
            Err(SpecializationError::BadConstantTerm)
        ));
    }

    #[test]
    fn qbinomial_euler_case() {
        // a = 0 degenerates to the inverse-product expansion
        assert!(qbinomial_check(&QScalar::zero(), 8, 8).unwrap());
    }

    #[test]
    fn qbinomial_geometric_case() {
        // a = q telescopes to the geometric series
        let s = qbinomial_sum_series(&QScalar::q(), 6);
        for n in 0..=6 {
            assert_eq!(s.coeff(n), QScalar::one(), "n={n}");
        }
        assert!(qbinomial_check(&QScalar::q(), 6, 8).unwrap());
    }

    #[test]
    fn qbinomial_symbolic_small() {
        assert!(qbinomial_check_symbolic(6, 7).unwrap());
    }

    #[test]
    fn tree_identities_small() {
        assert!(tree_power_extraction_matches(4).unwrap());
        for n in 1..=5 {
            assert!(tree_bracket_identity(n).unwrap(), "bracket n={n}");
            assert!(parking_bracket_identity(n).unwrap(), "parking n={n}");
            assert!(parking_unit_identity(n).unwrap(), "unit n={n}");
            assert!(tree_det_power(n).unwrap(), "det power n={n}");
            assert!(tree_det_coefficient(n).unwrap(), "det coefficient n={n}");
        }
        assert!(tree_qexp_form(5).unwrap());
        assert!(tree_qproduct_form(4, 5).unwrap());
    }

    #[test]
    fn hermite_i_small_values() {
        assert_eq!(hermite_i(0), <XPoly as Coeff>::one());
        assert_eq!(hermite_i(1), x_pow(1));
        let expected = x_pow(2).sub(&xp(one_minus_q()));
        assert_eq!(hermite_i(2), expected);
    }

    #[test]
    fn hermite_i_routes_agree() {
        for n in 0..=6 {
            let s = hermite_i_series(n);
            assert_eq!(s, hermite_i_det_e(n), "series vs elementary det n={n}");
            assert_eq!(s, hermite_i_det_h(n), "series vs complete det n={n}");
        }
    }

    #[test]
    fn hermite_i_cofactor_cross_check() {
        use crate::linalg::det_cofactor;
        // rebuild the elementary-side matrix and compare determinants
        for n in 2..=5u32 {
            let band = |k: u32| -> XPoly {
                if k % 2 == 1 {
                    x_pow(1)
                } else {
                    <XPoly as Coeff>::one()
                }
            };
            let matrix = SquareMatrix::from_fn(n as usize, |i, j| {
                let i = i as u32 + 1;
                let j = j as u32 + 1;
                if j <= i {
                    band(i + 1 - j)
                } else if j == i + 1 {
                    xp(QScalar::one() - QScalar::q_pow(i64::from(i)))
                } else {
                    <XPoly as Coeff>::zero()
                }
            });
            assert_eq!(det_cofactor(&matrix), hermite_i_det_e(n), "n={n}");
        }
    }

    #[test]
    fn hermite_i_moment_det_matches() {
        assert_eq!(hermite_i_moment_det_4(), hermite_i(4));
    }

    #[test]
    fn hermite_i_qexp_and_extractions() {
        assert!(hermite_i_qexp_form(6).unwrap());
        assert!(hermite_i_complete_extraction(6).unwrap());
    }

    #[test]
    fn hermite_products() {
        assert!(hermite_i_product_matches(5, 6).unwrap());
        assert!(hermite_ii_product_matches(5, 6).unwrap());
    }

    #[test]
    fn hermite_classical_limits() {
        for n in 0..=4 {
            assert!(hermite_classical_limit(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn hermite_ii_small_values() {
        assert_eq!(hermite_ii(0).unwrap(), <XPoly as Coeff>::one());
        assert_eq!(hermite_ii(1).unwrap(), x_pow(1));
        // x^2 - (1-q)/q
        let expected = x_pow(2).sub(&xp(one_minus_q() * QScalar::q_pow(-1)));
        assert_eq!(hermite_ii(2).unwrap(), expected);
    }

    #[test]
    fn hermite_ii_routes() {
        for n in 0..=6 {
            assert_eq!(hermite_ii(n).unwrap(), hermite_ii_series(n), "n={n}");
        }
        assert!(hermite_ii_star_form(6).unwrap());
        assert!(hermite_ii_inverse_relation(6).unwrap());
    }
}
