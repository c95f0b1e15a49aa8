//! Acceptance gate: one test per criterion, each printing a pass/fail line.
//! All arithmetic is exact, so "agree" always means structural equality of
//! canonical forms.

use std::time::{Duration, Instant};

use qsymfun::verify::{
    determinants_suite, exp_formulas_suite, girard_suite, hermite_suite, link_suite,
    partition_expansions_suite, products_suite, qbinomial_suite, run_all, trees_suite, Check,
    SuiteConfig,
};

fn assert_all_pass(label: &str, checks: &[Check], started: Instant, budget: Option<Duration>) {
    let elapsed = started.elapsed();
    let failures: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
    for f in &failures {
        eprintln!("  {f}");
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "{label}: {status} ({} checks, {:.2?})",
        checks.len(),
        elapsed
    );
    assert!(
        failures.is_empty(),
        "{label}: {} of {} checks failed",
        failures.len(),
        checks.len()
    );
    if let Some(limit) = budget {
        assert!(
            elapsed <= limit,
            "{label}: took {elapsed:.2?}, budget {limit:.2?}"
        );
    }
}

#[test]
fn criterion_01_girard_identities() {
    let started = Instant::now();
    let cfg = SuiteConfig {
        max_n: Some(10),
        ..SuiteConfig::default()
    };
    let checks = girard_suite(&cfg);
    assert_all_pass(
        "criterion 1 (Girard-Newton q-identities, n <= 10)",
        &checks,
        started,
        Some(Duration::from_secs(10)),
    );
}

#[test]
fn criterion_02_determinant_dualities() {
    let started = Instant::now();
    let cfg = SuiteConfig {
        max_n: Some(7),
        ..SuiteConfig::default()
    };
    let checks = determinants_suite(&cfg);
    assert_all_pass(
        "criterion 2 (determinant dualities, n <= 7, m = +/-1)",
        &checks,
        started,
        Some(Duration::from_secs(30)),
    );
}

#[test]
fn criterion_03_partition_expansions() {
    let started = Instant::now();
    let cfg = SuiteConfig {
        max_n: Some(8),
        ..SuiteConfig::default()
    };
    let checks: Vec<Check> = partition_expansions_suite(&cfg)
        .into_iter()
        .filter(|c| c.name.contains("expansion") || c.name.contains("chain-sum"))
        .collect();
    assert!(checks.len() >= 8 * 2 + 7 * 2);
    assert_all_pass(
        "criterion 3 (partition expansions n <= 8, chain sums n <= 7)",
        &checks,
        started,
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_04_classical_degeneration() {
    let started = Instant::now();
    let cfg = SuiteConfig {
        max_n: Some(8),
        ..SuiteConfig::default()
    };
    let checks: Vec<Check> = partition_expansions_suite(&cfg)
        .into_iter()
        .filter(|c| c.name.contains("classical-limit"))
        .collect();
    assert!(checks.len() >= 16);
    assert_all_pass(
        "criterion 4 (q = 1 degeneration of centralizers and power sums, n <= 8)",
        &checks,
        started,
        None,
    );
}

#[test]
fn criterion_05_exponential_formulas() {
    let started = Instant::now();
    let checks = exp_formulas_suite(&SuiteConfig::default());
    assert_all_pass(
        "criterion 5 (q-exponential formulas to t-order 8, 5 random series)",
        &checks,
        started,
        None,
    );
}

#[test]
fn criterion_06_linking_theorem() {
    let started = Instant::now();
    let checks = link_suite(&SuiteConfig::default());
    assert_all_pass(
        "criterion 6 (base-inversion link, k <= 6, m in {1,2}, 5 random series)",
        &checks,
        started,
        None,
    );
}

#[test]
fn criterion_07_infinite_products() {
    let started = Instant::now();
    let checks = products_suite(&SuiteConfig::default());
    assert_all_pass(
        "criterion 7 (infinite q-products mod (q^8, t^8); specials mod (q^10, t^10))",
        &checks,
        started,
        None,
    );
}

#[test]
fn criterion_08_qbinomial_theorem() {
    let started = Instant::now();
    let checks = qbinomial_suite(&SuiteConfig::default());
    assert_all_pass(
        "criterion 8 (q-binomial theorem, three routes, symbolic a)",
        &checks,
        started,
        None,
    );
}

#[test]
fn criterion_09_tree_inversions() {
    let started = Instant::now();
    let cfg = SuiteConfig {
        max_n: Some(7),
        ..SuiteConfig::default()
    };
    let checks = trees_suite(&cfg);
    assert_all_pass(
        "criterion 9 (tree-inversion identities n <= 7 and permutation oracles n <= 6)",
        &checks,
        started,
        None,
    );
}

#[test]
fn criterion_10_hermite_and_wall_clock() {
    let started = Instant::now();
    let checks = hermite_suite(&SuiteConfig::default());
    assert_all_pass(
        "criterion 10a (discrete q-Hermite I and II, all routes)",
        &checks,
        started,
        None,
    );
    // full verification sweep under the wall-clock budget
    let started = Instant::now();
    let all = run_all(&SuiteConfig::default());
    assert_all_pass(
        "criterion 10b (full verification sweep under 5 minutes)",
        &all,
        started,
        Some(Duration::from_secs(300)),
    );
}
