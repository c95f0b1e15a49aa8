//! Named identity suites: every check runs one exact identity and reports a
//! pass/fail line, with the first differing coefficient on failure. The
//! command-line tool and the acceptance tests both drive these.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{partitions_of, z_classical};
use crate::oracle;
use crate::qcalculus::{
    gessel_exp, invert_gessel_exp, one_step_relation_holds, q_bracket_power_levels, q_compose,
    q_exponential, q_exponential_dual, q_star_compose, q_star_power_levels, qproduct_exp,
    qproduct_exp_dual, star_exp, verify_reciprocal,
};
use crate::ring::{Coeff, Poly, XPoly};
use crate::scalars::{base, qfact, QPoly, QScalar};
use crate::series::Series;
use crate::specializations as sf;
use crate::symfun::{
    self, e_series, girard_e_holds_with, h_from_e, h_poly, p_sum_series, q_power, q_power_r,
    verify_girard_e, verify_girard_h, SymPoly,
};

/// Configuration shared by all suites.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub t_order: usize,
    pub q_order: usize,
    pub base_m: i64,
    /// Override of the per-suite depth bound.
    pub max_n: Option<u32>,
    pub seed: u64,
    /// Test-harness hook: corrupt one power-sum coefficient so the failure
    /// path is exercised end to end.
    pub inject_perturbation: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            t_order: 8,
            q_order: 10,
            base_m: 1,
            max_n: None,
            seed: 0x51AB_5EED,
            inject_perturbation: false,
        }
    }
}

/// One verified identity.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub params: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: &str, params: String) -> Check {
        Check {
            name: name.to_string(),
            params,
            pass: true,
            detail: String::new(),
        }
    }

    fn from_bool(name: &str, params: String, pass: bool) -> Check {
        Check {
            name: name.to_string(),
            params,
            pass,
            detail: if pass {
                String::new()
            } else {
                "identity failed".to_string()
            },
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {} [{}]", self.name, self.params)?;
        if !self.detail.is_empty() {
            write!(f, " :: {}", self.detail)?;
        }
        Ok(())
    }
}

fn clip(s: String) -> String {
    const LIMIT: usize = 220;
    if s.len() <= LIMIT {
        s
    } else {
        let cut = s
            .char_indices()
            .take_while(|(i, _)| *i <= LIMIT)
            .last()
            .map(|(i, _)| i)
            .unwrap_or(0);
        format!("{}...", &s[..cut])
    }
}

fn series_check<C: Coeff + fmt::Display>(
    name: &str,
    params: String,
    lhs: &Series<C>,
    rhs: &Series<C>,
) -> Check {
    match lhs.first_difference(rhs) {
        None => Check::pass(name, params),
        Some(k) => {
            let delta = lhs.coeff(k).sub(&rhs.coeff(k));
            Check {
                name: name.to_string(),
                params,
                pass: false,
                detail: clip(format!(
                    "first differing coefficient at t^{k}: delta = {delta}"
                )),
            }
        }
    }
}

fn value_check<C: Coeff + fmt::Display>(name: &str, params: String, lhs: &C, rhs: &C) -> Check {
    if lhs == rhs {
        Check::pass(name, params)
    } else {
        Check {
            name: name.to_string(),
            params,
            pass: false,
            detail: clip(format!("delta = {}", lhs.sub(rhs))),
        }
    }
}

fn error_check(name: &str, params: String, err: impl fmt::Display) -> Check {
    Check {
        name: name.to_string(),
        params,
        pass: false,
        detail: clip(format!("error: {err}")),
    }
}

/// Seeded pseudo-random series with small q-polynomial coefficients and zero
/// constant term.
pub fn random_series(seed: u64, t_order: usize) -> Series<QScalar> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Series::from_fn(t_order, |n| {
        if n == 0 {
            return QScalar::zero();
        }
        let coeffs: Vec<BigRational> = (0..3)
            .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))))
            .collect();
        QScalar::from_poly(QPoly::new(coeffs))
    })
}

pub const SUITE_NAMES: &[&str] = &[
    "girard",
    "determinants",
    "partition-expansions",
    "exp-formulas",
    "link",
    "products",
    "qbinomial",
    "trees",
    "hermite",
];

/// Run one named suite; `None` for an unknown name.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Option<Vec<Check>> {
    match name {
        "girard" => Some(girard_suite(cfg)),
        "determinants" => Some(determinants_suite(cfg)),
        "partition-expansions" => Some(partition_expansions_suite(cfg)),
        "exp-formulas" => Some(exp_formulas_suite(cfg)),
        "link" => Some(link_suite(cfg)),
        "products" => Some(products_suite(cfg)),
        "qbinomial" => Some(qbinomial_suite(cfg)),
        "trees" => Some(trees_suite(cfg)),
        "hermite" => Some(hermite_suite(cfg)),
        "all" => Some(run_all(cfg)),
        _ => None,
    }
}

/// Every suite, in declaration order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for name in SUITE_NAMES {
        out.extend(run_suite(name, cfg).expect("known suite"));
    }
    out
}

// ---------------------------------------------------------------------------

pub fn girard_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let max_n = cfg.max_n.unwrap_or(10);
    let m = base(cfg.base_m);
    let mut out = Vec::new();
    for n in 1..=max_n {
        let params = format!("n={n}, m={}", m.get());
        if cfg.inject_perturbation {
            let provider = |k: u32| {
                let mut p = q_power(k, m).unwrap();
                if k == 2 {
                    p = p.add(&SymPoly::gen(2));
                }
                p
            };
            out.push(Check::from_bool(
                "girard-elementary",
                params.clone(),
                girard_e_holds_with(n, m, &provider),
            ));
        } else {
            out.push(Check::from_bool(
                "girard-elementary",
                params.clone(),
                verify_girard_e(n, m),
            ));
        }
        out.push(Check::from_bool(
            "girard-complete",
            params,
            verify_girard_h(n, m),
        ));
    }
    out
}

pub fn determinants_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let max_n = cfg.max_n.unwrap_or(7);
    let bases = [base(cfg.base_m), base(-cfg.base_m)];
    let mut out = Vec::new();
    for &m in &bases {
        for n in 1..=max_n {
            let params = format!("n={n}, m={}", m.get());
            out.push(value_check(
                "power-det-vs-solve",
                params.clone(),
                &q_power_r(n, 1, m).unwrap(),
                &q_power(n, m).unwrap(),
            ));
            out.push(value_check(
                "elementary-from-power-det",
                params.clone(),
                &symfun::e_det_from_p(n, m).unwrap(),
                &SymPoly::gen(n),
            ));
            out.push(value_check(
                "complete-from-power-det",
                params.clone(),
                &symfun::h_det_from_p(n, m).unwrap(),
                &h_poly(n),
            ));
            out.push(value_check(
                "power-from-complete-det",
                params,
                &symfun::p_det_from_h(n, m).unwrap(),
                &q_power(n, m).unwrap(),
            ));
        }
        // generalized powers against their defining series relation
        for r in 1..=3u32 {
            let t_order = cfg.t_order;
            let lhs_sum: Series<SymPoly> = Series::from_fn(t_order, |s| {
                let v = q_power_r(s as u32 + r, r, m).unwrap();
                if s % 2 == 0 {
                    v
                } else {
                    v.neg()
                }
            });
            let lhs = lhs_sum.mul(&e_series(t_order)).scalar_mul(&qfact(r, m));
            let mut rhs = e_series(t_order);
            for _ in 0..r {
                rhs = rhs.q_derive(m);
            }
            out.push(series_check(
                "generalized-power-defining-relation",
                format!("r={r}, m={}, N={t_order}", m.get()),
                &lhs,
                &rhs,
            ));
        }
    }
    out
}

pub fn partition_expansions_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let max_n = cfg.max_n.unwrap_or(8);
    let chain_max = max_n.min(7);
    let m = base(cfg.base_m);
    let mut out = Vec::new();
    for n in 1..=max_n {
        let params = format!("n={n}, m={}", m.get());
        out.push(value_check(
            "elementary-partition-expansion",
            params.clone(),
            &symfun::e_expansion(n, m).unwrap(),
            &SymPoly::gen(n),
        ));
        out.push(value_check(
            "complete-partition-expansion",
            params,
            &symfun::h_expansion(n, m).unwrap(),
            &h_poly(n),
        ));
    }
    for n in 1..=chain_max {
        let params = format!("n={n}, m={}", m.get());
        out.push(value_check(
            "elementary-chain-sum",
            params.clone(),
            &symfun::lemma_sum_e(n, m).unwrap(),
            &SymPoly::gen(n).scale(&qfact(n, m)),
        ));
        out.push(value_check(
            "complete-chain-sum",
            params,
            &symfun::lemma_sum_h(n, m).unwrap(),
            &h_poly(n).scale(&qfact(n, m)),
        ));
    }
    // classical limits at q = 1
    for n in 1..=max_n {
        let mut all_match = true;
        for lambda in partitions_of(n) {
            let z = num_rational::BigRational::from_integer(z_classical(&lambda).into());
            let a = crate::combinatorics::q_z(&lambda, base(1))
                .unwrap()
                .eval_at_int(1)
                .unwrap();
            let b = crate::combinatorics::q_z_h(&lambda)
                .unwrap()
                .eval_at_int(1)
                .unwrap();
            if a != z || b != z {
                all_match = false;
            }
        }
        out.push(Check::from_bool(
            "centralizer-classical-limit",
            format!("|lambda|={n}"),
            all_match,
        ));
        out.push(value_check(
            "power-classical-limit",
            format!("n={n}"),
            &q_power(n, base(1)).unwrap().eval_coeffs_at_int(1).unwrap(),
            &oracle::classical_newton_p(n),
        ));
    }
    out
}

pub fn exp_formulas_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let n = cfg.t_order;
    let m = base(cfg.base_m);
    let mut out = Vec::new();
    let p = p_sum_series(n, m);
    let f_e = p.scale_arg(&QScalar::from_int(-1)).neg();
    out.push(series_check(
        "elementary-series-qexp",
        format!("N={n}, m={}", m.get()),
        &gessel_exp(&f_e, m).unwrap(),
        &e_series(n),
    ));
    out.push(series_check(
        "complete-series-star-qexp",
        format!("N={n}, m={}", m.get()),
        &star_exp(&p, m).unwrap(),
        &h_from_e(n),
    ));
    out.push(series_check(
        "qexp-inversion-of-elementary",
        format!("N={n}, m={}", m.get()),
        &invert_gessel_exp(&e_series(n), m).unwrap(),
        &f_e,
    ));
    for i in 0..5u64 {
        let seed = cfg.seed.wrapping_add(i);
        let f = random_series(seed, n);
        let params = format!("N={n}, m={}, seed={seed}", m.get());
        out.push(series_check(
            "qexp-recurrence-vs-powers",
            params.clone(),
            &gessel_exp(&f, m).unwrap(),
            &q_compose(&q_exponential(n, m), &f, m).unwrap(),
        ));
        out.push(series_check(
            "star-recurrence-vs-powers",
            params.clone(),
            &star_exp(&f, m).unwrap(),
            &q_star_compose(&q_exponential_dual(n, m), &f, m).unwrap(),
        ));
        out.push(series_check(
            "qexp-inversion-roundtrip",
            params,
            &invert_gessel_exp(&gessel_exp(&f, m).unwrap(), m).unwrap(),
            &f,
        ));
    }
    out
}

pub fn link_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let n = cfg.t_order;
    let mut out = Vec::new();
    for m in [base(1), base(2)] {
        for i in 0..5u64 {
            let seed = cfg.seed.wrapping_add(i);
            let f = random_series(seed, n);
            let star_levels = q_star_power_levels(&f, 6, m).unwrap();
            let inverse_levels = q_bracket_power_levels(&f, 6, m.inverse()).unwrap();
            for k in 0..=6usize {
                out.push(series_check(
                    "star-power-equals-inverse-base-power",
                    format!("k={k}, m={}, seed={seed}", m.get()),
                    &star_levels[k],
                    &inverse_levels[k],
                ));
            }
            out.push(series_check(
                "star-qexp-equals-inverse-base-qexp",
                format!("N={n}, m={}, seed={seed}", m.get()),
                &star_exp(&f, m).unwrap(),
                &gessel_exp(&f, m.inverse()).unwrap(),
            ));
        }
        out.push(series_check(
            "dual-exponential-base-link",
            format!("N={n}, m={}", m.get()),
            &q_exponential_dual(n, m),
            &q_exponential(n, m.inverse()),
        ));
    }
    out
}

pub fn products_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let m = base(1);
    // factorizations of the generating series in the symmetric-function
    // algebra, mod (q^8, t^8)
    let (n_sym, q_sym) = (7usize, 8usize);
    let p = p_sum_series(n_sym + 1, m);
    let f_e = p.scale_arg(&QScalar::from_int(-1)).neg();
    match qproduct_exp(&f_e, m, n_sym, q_sym) {
        Ok(lhs) => out.push(series_check(
            "elementary-qproduct",
            format!("N={n_sym}, M={q_sym}"),
            &lhs,
            &e_series(n_sym).reduce_mod_q(q_sym).unwrap(),
        )),
        Err(e) => out.push(error_check(
            "elementary-qproduct",
            format!("N={n_sym}, M={q_sym}"),
            e,
        )),
    }
    match qproduct_exp_dual(&p, m, n_sym, q_sym) {
        Ok(lhs) => out.push(series_check(
            "complete-qproduct",
            format!("N={n_sym}, M={q_sym}"),
            &lhs,
            &h_from_e(n_sym).reduce_mod_q(q_sym).unwrap(),
        )),
        Err(e) => out.push(error_check(
            "complete-qproduct",
            format!("N={n_sym}, M={q_sym}"),
            e,
        )),
    }
    // exact one-step relation and reciprocity for random series
    for i in 0..5u64 {
        let seed = cfg.seed.wrapping_add(i);
        let f = random_series(seed, cfg.t_order);
        out.push(Check::from_bool(
            "qproduct-one-step-exact",
            format!("N={}, seed={seed}", cfg.t_order),
            one_step_relation_holds(&f, m).unwrap(),
        ));
        out.push(Check::from_bool(
            "qexp-reciprocal-pair",
            format!("N={}, seed={seed}", cfg.t_order),
            verify_reciprocal(&f, m).unwrap(),
        ));
    }
    // classical q-exponential product specials, mod (q^10, t^10)
    let (n_sp, q_sp) = (9usize, 10usize);
    let t = Series::monomial(QScalar::one(), 1, n_sp + 1);
    out.push(series_check(
        "qexp-product-special",
        format!("N={n_sp}, M={q_sp}"),
        &qproduct_exp(&t, m, n_sp, q_sp).unwrap(),
        &q_exponential(n_sp, m).reduce_mod_q(q_sp).unwrap(),
    ));
    out.push(series_check(
        "dual-qexp-product-special",
        format!("N={n_sp}, M={q_sp}"),
        &qproduct_exp_dual(&t, m, n_sp, q_sp).unwrap(),
        &q_exponential_dual(n_sp, m).reduce_mod_q(q_sp).unwrap(),
    ));
    out
}

pub fn qbinomial_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let (n, q) = (9usize, cfg.q_order.max(10));
    match sf::qbinomial_routes::<XPoly>(&Poly::x(), n, q) {
        Ok((sum_route, exp_route, product_route)) => {
            out.push(series_check(
                "qbinomial-sum-vs-qexp",
                format!("N={n}, M={q}, a=symbolic"),
                &sum_route,
                &exp_route,
            ));
            out.push(series_check(
                "qbinomial-sum-vs-product",
                format!("N={n}, M={q}, a=symbolic"),
                &sum_route,
                &product_route,
            ));
        }
        Err(e) => out.push(error_check("qbinomial-routes", format!("N={n}, M={q}"), e)),
    }
    // closed-form power sums up to n = 10, symbolic a
    let extraction = sf::specialize(
        sf::SpecMode::Elementary,
        &sf::qbinomial_sum_series::<XPoly>(&Poly::x(), 10),
    )
    .unwrap();
    let mut all = true;
    for k in 1..=10usize {
        if *extraction.power(k) != sf::qbinomial_closed_power(&Poly::x(), k) {
            all = false;
        }
    }
    out.push(Check::from_bool(
        "qbinomial-closed-form-extraction",
        "n<=10, a=symbolic".to_string(),
        all,
    ));
    out.push(Check::from_bool(
        "qbinomial-euler-special",
        "a=0, N=8, M=8".to_string(),
        sf::qbinomial_check(&QScalar::zero(), 8, 8).unwrap(),
    ));
    out.push(Check::from_bool(
        "qbinomial-geometric-special",
        "a=q, N=8, M=8".to_string(),
        sf::qbinomial_check(&QScalar::q(), 8, 8).unwrap(),
    ));
    // self-specialization fixpoint of the generating series
    let fix = sf::specialize(sf::SpecMode::Elementary, &e_series(8)).unwrap();
    let mut all = true;
    for k in 1..=8usize {
        if *fix.power(k) != q_power(k as u32, base(1)).unwrap() {
            all = false;
        }
    }
    out.push(Check::from_bool(
        "specialization-fixpoint",
        "n<=8".to_string(),
        all,
    ));
    out
}

pub fn trees_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let max_n = cfg.max_n.unwrap_or(7);
    let mut out = Vec::new();
    out.push(Check::from_bool(
        "tree-power-extraction",
        format!("n<={}", max_n.saturating_sub(1)),
        sf::tree_power_extraction_matches(max_n.saturating_sub(1)).unwrap(),
    ));
    for n in 1..=max_n {
        let params = format!("n={n}");
        out.push(Check::from_bool(
            "tree-bracket-identity",
            params.clone(),
            sf::tree_bracket_identity(n).unwrap(),
        ));
        out.push(Check::from_bool(
            "tree-power-determinant",
            params.clone(),
            sf::tree_det_power(n).unwrap(),
        ));
        out.push(Check::from_bool(
            "tree-coefficient-determinant",
            params.clone(),
            sf::tree_det_coefficient(n).unwrap(),
        ));
        out.push(Check::from_bool(
            "parking-bracket-identity",
            params.clone(),
            sf::parking_bracket_identity(n).unwrap(),
        ));
        out.push(Check::from_bool(
            "parking-unit-identity",
            params,
            sf::parking_unit_identity(n).unwrap(),
        ));
    }
    out.push(Check::from_bool(
        "tree-qexp-form",
        "N=7".to_string(),
        sf::tree_qexp_form(7).unwrap(),
    ));
    out.push(Check::from_bool(
        "tree-qproduct-form",
        "N=6, M=8".to_string(),
        sf::tree_qproduct_form(6, 8).unwrap(),
    ));
    // permutation oracles
    let perm_max = 6u32.min(max_n);
    for n in 0..=perm_max {
        let g = oracle::gamma_poly(n, oracle::Weight::Unit, oracle::PairStat::Inversions).unwrap();
        out.push(value_check(
            "permutation-gamma-factorial",
            format!("n={n}"),
            &g,
            &Poly::constant(qfact(n, base(1))),
        ));
    }
    for weight in [oracle::Weight::Unit, oracle::Weight::BlockMarker] {
        out.push(Check::from_bool(
            "permutation-qexp-formula",
            format!("n<={perm_max}, weight={weight:?}"),
            oracle::verify_gessel_formula(perm_max, weight).unwrap(),
        ));
        out.push(Check::from_bool(
            "permutation-star-formula",
            format!("n<={perm_max}, weight={weight:?}"),
            oracle::verify_star_formula(perm_max, weight).unwrap(),
        ));
    }
    let mut all = true;
    for n in 0..=8u32 {
        for k in 0..=n {
            if oracle::subset_noninversion_sum(n, k)
                != crate::scalars::qbinom(i64::from(n), i64::from(k), base(1))
            {
                all = false;
            }
        }
    }
    out.push(Check::from_bool(
        "subset-noninversion-qbinomial",
        "n<=8".to_string(),
        all,
    ));
    for n in 1..=max_n {
        let total = oracle::j_poly(n).unwrap().eval_at_int(1).unwrap();
        let cayley = if n >= 2 { (u64::from(n)).pow(n - 2) } else { 1 };
        out.push(Check::from_bool(
            "tree-count",
            format!("n={n}"),
            total == num_rational::BigRational::from_integer(cayley.into()),
        ));
        if n >= 2 {
            let jr = oracle::j_reciprocal(n).unwrap();
            let back = QScalar::q_pow(crate::combinatorics::binomial(u64::from(n) - 1, 2) as i64)
                * jr.subst_q_power(-1);
            out.push(Check::from_bool(
                "parking-reciprocal-involution",
                format!("n={n}"),
                back == oracle::j_poly(n).unwrap(),
            ));
        }
    }
    out
}

pub fn hermite_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let max_n = cfg.max_n.unwrap_or(8);
    let mut out = Vec::new();
    for n in 0..=max_n {
        let series_route = sf::hermite_i_series(n);
        let e_route = sf::hermite_i_det_e(n);
        let h_route = sf::hermite_i_det_h(n);
        let pass = series_route == e_route && series_route == h_route;
        out.push(Check::from_bool(
            "hermite1-three-routes",
            format!("n={n}"),
            pass,
        ));
    }
    out.push(value_check(
        "hermite1-moment-determinant",
        "n=4".to_string(),
        &sf::hermite_i_moment_det_4(),
        &sf::hermite_i_det_e(4),
    ));
    out.push(Check::from_bool(
        "hermite1-qexp-form",
        format!("N={}", cfg.t_order),
        sf::hermite_i_qexp_form(cfg.t_order).unwrap(),
    ));
    out.push(Check::from_bool(
        "hermite1-complete-extraction",
        format!("N={}", cfg.t_order),
        sf::hermite_i_complete_extraction(cfg.t_order).unwrap(),
    ));
    out.push(Check::from_bool(
        "hermite1-product-vs-series",
        "N=6, M=8".to_string(),
        sf::hermite_i_product_matches(6, 8).unwrap(),
    ));
    for n in 0..=6u32.min(max_n) {
        match sf::hermite_ii(n) {
            Ok(h) => out.push(value_check(
                "hermite2-determinant-vs-series",
                format!("n={n}"),
                &h,
                &sf::hermite_ii_series(n),
            )),
            Err(e) => out.push(error_check(
                "hermite2-determinant-vs-series",
                format!("n={n}"),
                e,
            )),
        }
    }
    out.push(Check::from_bool(
        "hermite2-star-form",
        "N=7".to_string(),
        sf::hermite_ii_star_form(7).unwrap(),
    ));
    out.push(Check::from_bool(
        "hermite2-inverse-relation",
        "N=6".to_string(),
        sf::hermite_ii_inverse_relation(6).unwrap(),
    ));
    out.push(Check::from_bool(
        "hermite2-product-vs-series",
        "N=6, M=8".to_string(),
        sf::hermite_ii_product_matches(6, 8).unwrap(),
    ));
    for n in 0..=4u32 {
        out.push(Check::from_bool(
            "hermite-classical-limit",
            format!("n={n}"),
            sf::hermite_classical_limit(n).unwrap(),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn girard_suite_passes_and_perturbation_fails() {
        let cfg = SuiteConfig {
            max_n: Some(4),
            ..SuiteConfig::default()
        };
        assert!(girard_suite(&cfg).iter().all(|c| c.pass));
        let bad = SuiteConfig {
            max_n: Some(4),
            inject_perturbation: true,
            ..SuiteConfig::default()
        };
        assert!(girard_suite(&bad).iter().any(|c| !c.pass));
    }

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("nonsense", &SuiteConfig::default()).is_none());
    }

    #[test]
    fn check_display_includes_difference_address() {
        let lhs: Series<QScalar> = Series::from_fn(3, |n| QScalar::from_int(n as i64));
        let rhs: Series<QScalar> =
            Series::from_fn(3, |n| QScalar::from_int(if n == 2 { 7 } else { n as i64 }));
        let c = series_check("demo", "N=3".to_string(), &lhs, &rhs);
        assert!(!c.pass);
        assert!(c.detail.contains("t^2"));
        assert!(format!("{c}").starts_with("FAIL demo"));
    }

    #[test]
    fn random_series_is_reproducible() {
        let a = random_series(42, 6);
        let b = random_series(42, 6);
        assert_eq!(a, b);
        assert!(a.coeff(0).is_zero());
    }
}
