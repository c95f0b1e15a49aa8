//! Independent brute-force ground truth: permutation inversion and
//! non-inversion statistics with multiplicative weights, labeled-tree
//! inversion enumerators via Prüfer sequences, and the classical Newton
//! power sums used as the `q = 1` oracle.
//!
//! Enumeration sizes (`n!` permutations, `(n-1)!` basic permutations,
//! `n^{n-2}` labeled trees) are asserted before each run. Tree enumerators
//! are cached to disk as JSON keyed by kind and size.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use once_cell::sync::Lazy;
use serde_json::json;
use thiserror::Error;

use crate::combinatorics::{binomial, Partition};
use crate::ring::{Coeff, Poly, XPoly};
use crate::scalars::{QPoly, QScalar};
use crate::series::Series;
use crate::symfun::SymPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration size {0} exceeds the supported bound {1}")]
    TooLarge(u32, u32),
}

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

/// A permutation of `{1..n}` as a word `a_1 a_2 ... a_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perm {
    word: Vec<u8>,
}

impl Perm {
    pub fn new(word: Vec<u8>) -> Self {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &a in &word {
            assert!(
                (1..=n as u8).contains(&a) && !seen[a as usize],
                "not a permutation word"
            );
            seen[a as usize] = true;
        }
        Perm { word }
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// Number of inversions: pairs `i < j` with `a_i > a_j`.
pub fn inversions(p: &Perm) -> u32 {
    let w = p.word();
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                count += 1;
            }
        }
    }
    count
}

/// Number of non-inversions: pairs `i < j` with `a_i < a_j`.
pub fn non_inversions(p: &Perm) -> u32 {
    binomial(p.len() as u64, 2) as u32 - inversions(p)
}

/// The unique factorization of the word into maximal blocks each beginning
/// with its greatest element; block starts are the left-to-right maxima.
pub fn basic_decomposition(p: &Perm) -> Vec<Vec<u8>> {
    let w = p.word();
    let mut blocks = Vec::new();
    let mut start = 0;
    let mut current_max = 0u8;
    for (i, &a) in w.iter().enumerate() {
        if a > current_max {
            if i > start {
                blocks.push(w[start..i].to_vec());
            }
            start = i;
            current_max = a;
        }
    }
    if !w.is_empty() {
        blocks.push(w[start..].to_vec());
    }
    blocks
}

/// All permutations of `{1..n}`; asserts the `n!` count.
pub fn all_permutations(n: u32) -> Result<Vec<Perm>, OracleError> {
    if n > 8 {
        return Err(OracleError::TooLarge(n, 8));
    }
    let mut out = Vec::new();
    let mut word: Vec<u8> = Vec::new();
    let mut used = vec![false; n as usize + 1];
    fn descend(n: u8, word: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Perm>) {
        if word.len() == n as usize {
            out.push(Perm { word: word.clone() });
            return;
        }
        for v in 1..=n {
            if !used[v as usize] {
                used[v as usize] = true;
                word.push(v);
                descend(n, word, used, out);
                word.pop();
                used[v as usize] = false;
            }
        }
    }
    descend(n as u8, &mut word, &mut used, &mut out);
    let expected: usize = (1..=n as usize).product::<usize>().max(1);
    assert_eq!(out.len(), expected, "permutation count must be n!");
    Ok(out)
}

/// All basic permutations of `{1..n}` (words beginning with `n`); asserts
/// the `(n-1)!` count.
pub fn all_basic_permutations(n: u32) -> Result<Vec<Perm>, OracleError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let smaller = all_permutations(n - 1)?;
    let out: Vec<Perm> = smaller
        .into_iter()
        .map(|p| {
            let mut word = vec![n as u8];
            word.extend_from_slice(p.word());
            Perm { word }
        })
        .collect();
    let expected: usize = (1..n as usize).product::<usize>().max(1);
    assert_eq!(
        out.len(),
        expected,
        "basic permutation count must be (n-1)!"
    );
    Ok(out)
}

/// The two multiplicative weights exercised by the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// `omega = 1`.
    Unit,
    /// `omega(pi) = x^{number of basic blocks}`.
    BlockMarker,
}

impl Weight {
    fn of(&self, p: &Perm) -> XPoly {
        match self {
            Weight::Unit => <XPoly as Coeff>::one(),
            Weight::BlockMarker => Poly::monomial(QScalar::one(), basic_decomposition(p).len()),
        }
    }
}

/// Which pair statistic to exponentiate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStat {
    Inversions,
    NonInversions,
}

fn stat_of(p: &Perm, stat: PairStat) -> u32 {
    match stat {
        PairStat::Inversions => inversions(p),
        PairStat::NonInversions => non_inversions(p),
    }
}

/// `gamma_n = sum_{pi in S_n} omega(pi) q^{stat(pi)}` by full enumeration.
pub fn gamma_poly(n: u32, weight: Weight, stat: PairStat) -> Result<XPoly, OracleError> {
    let mut acc = <XPoly as Coeff>::zero();
    for p in all_permutations(n)? {
        let w = weight
            .of(&p)
            .scale(&QScalar::q_pow(i64::from(stat_of(&p, stat))));
        acc = acc.add(&w);
    }
    Ok(acc)
}

/// `f_n = sum_{beta in B_n} omega(beta) q^{stat(beta)}` by enumeration of
/// basic permutations.
pub fn basic_poly(n: u32, weight: Weight, stat: PairStat) -> Result<XPoly, OracleError> {
    let mut acc = <XPoly as Coeff>::zero();
    for p in all_basic_permutations(n)? {
        let w = weight
            .of(&p)
            .scale(&QScalar::q_pow(i64::from(stat_of(&p, stat))));
        acc = acc.add(&w);
    }
    Ok(acc)
}

/// The inversion exponential formula: the enumerated `gamma_n` agree with
/// `e[F]` built from the enumerated basic-permutation series, for all
/// `n <= n_max`.
pub fn verify_gessel_formula(n_max: u32, weight: Weight) -> Result<bool, OracleError> {
    verify_formula(n_max, weight, PairStat::Inversions)
}

/// The non-inversion exponential formula: enumerated `gamma-bar_n` against
/// `E[F-bar]*`.
pub fn verify_star_formula(n_max: u32, weight: Weight) -> Result<bool, OracleError> {
    verify_formula(n_max, weight, PairStat::NonInversions)
}

fn verify_formula(n_max: u32, weight: Weight, stat: PairStat) -> Result<bool, OracleError> {
    use crate::qcalculus::{gessel_exp, star_exp};
    use crate::scalars::{qfact, BaseExponent};
    let m = BaseExponent::ONE;
    let n_ord = n_max as usize;
    let f: Series<XPoly> = Series::from_fn(n_ord, |n| {
        if n == 0 {
            return <XPoly as Coeff>::zero();
        }
        basic_poly(n as u32, weight, stat)
            .expect("bounded above by n_max")
            .scale(&qfact(n as u32, m).try_inv().expect("[n]! nonzero"))
    });
    let composed = match stat {
        PairStat::Inversions => gessel_exp(&f, m),
        PairStat::NonInversions => star_exp(&f, m),
    }
    .expect("f has zero constant term");
    for n in 0..=n_ord {
        let expected = gamma_poly(n as u32, weight, stat)?
            .scale(&qfact(n as u32, m).try_inv().expect("[n]! nonzero"));
        if composed.coeff(n) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `sum over k-subsets V of {1..n} of q^{non-inversions of (V, complement)}`,
/// where the statistic counts pairs `v in V`, `w not in V`, `v < w`. Equals
/// the q-binomial `[n k]`.
pub fn subset_noninversion_sum(n: u32, k: u32) -> QScalar {
    let mut acc = QScalar::zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != k {
            continue;
        }
        let mut stat = 0i64;
        for v in 1..=n {
            if mask & (1 << (v - 1)) == 0 {
                continue;
            }
            for w in v + 1..=n {
                if mask & (1 << (w - 1)) == 0 {
                    stat += 1;
                }
            }
        }
        acc = acc + QScalar::q_pow(stat);
    }
    acc
}

// ---------------------------------------------------------------------------
// Labeled trees
// ---------------------------------------------------------------------------

/// A labeled tree on `{1..n}` rooted at 1, stored as a parent array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree {
    n: usize,
    /// `parent[v]` for `v = 2..=n`; index 0 and 1 unused.
    parent: Vec<usize>,
}

impl LabeledTree {
    /// Build from an undirected edge list by rooting at 1.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        assert_eq!(edges.len() + 1, n, "a tree on n vertices has n-1 edges");
        let mut adjacency = vec![Vec::new(); n + 1];
        for &(a, b) in edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut parent = vec![0usize; n + 1];
        let mut stack = vec![1usize];
        let mut seen = vec![false; n + 1];
        seen[1] = true;
        let mut visited = 1;
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    visited += 1;
                    stack.push(w);
                }
            }
        }
        assert_eq!(visited, n, "edge list must be connected and acyclic");
        LabeledTree { n, parent }
    }

    /// Decode a Prüfer sequence over `{1..n}` of length `n - 2`.
    pub fn from_pruefer(n: usize, seq: &[usize]) -> Self {
        assert!(n >= 1);
        if n == 1 {
            return LabeledTree {
                n,
                parent: vec![0, 0],
            };
        }
        assert_eq!(seq.len(), n - 2);
        let mut degree = vec![1usize; n + 1];
        for &v in seq {
            degree[v] += 1;
        }
        let mut used = vec![false; n + 1];
        let mut edges = Vec::with_capacity(n - 1);
        for &v in seq {
            let leaf = (1..=n)
                .find(|&u| degree[u] == 1 && !used[u])
                .expect("a leaf always exists");
            edges.push((leaf, v));
            used[leaf] = true;
            degree[v] -= 1;
        }
        let rest: Vec<usize> = (1..=n).filter(|&u| !used[u] && degree[u] == 1).collect();
        edges.push((rest[0], rest[1]));
        LabeledTree::from_edges(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }
}

/// Tree inversions: pairs `(i, j)` with `i > j > 1` such that `i` lies on
/// the path from the root 1 to `j`.
pub fn tree_inversions(t: &LabeledTree) -> u32 {
    let mut count = 0;
    for j in 2..=t.n {
        let mut v = t.parent[j];
        while v != 1 && v != 0 {
            if v > j {
                count += 1;
            }
            v = t.parent[v];
        }
    }
    count as u32
}

const TREE_LIMIT: u32 = 8;

static J_MEMO: Lazy<Mutex<HashMap<u32, QScalar>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn default_cache_dir() -> PathBuf {
    match std::env::var_os("QSYMFUN_CACHE_DIR") {
        Some(dir) => PathBuf::from(dir),
        None => std::env::temp_dir().join("qsymfun-oracle-cache"),
    }
}

/// Best-effort disk cache for enumeration results, one JSON file per
/// `(kind, n)` entry.
pub struct OracleCache {
    dir: PathBuf,
}

impl OracleCache {
    pub fn new(dir: PathBuf) -> Self {
        OracleCache { dir }
    }

    pub fn default_location() -> Self {
        OracleCache::new(default_cache_dir())
    }

    fn path(&self, kind: &str, n: u32) -> PathBuf {
        self.dir.join(format!("{kind}_{n}.json"))
    }

    pub fn load(&self, kind: &str, n: u32) -> Option<QScalar> {
        let text = fs::read_to_string(self.path(kind, n)).ok()?;
        let v: serde_json::Value = serde_json::from_str(&text).ok()?;
        if v.get("kind").and_then(|k| k.as_str()) != Some(kind)
            || v.get("n").and_then(|k| k.as_u64()) != Some(u64::from(n))
        {
            return None;
        }
        QScalar::from_json(v.get("poly")?).ok()
    }

    pub fn store(&self, kind: &str, n: u32, poly: &QScalar) {
        if fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let v = json!({ "kind": kind, "n": n, "poly": poly.to_json() });
        let _ = fs::write(self.path(kind, n), v.to_string());
    }
}

/// The tree-inversion enumerator `J_n = sum_T q^{inv(T)}` over all labeled
/// trees on `{1..n}`, enumerated through Prüfer sequences and cached.
pub fn j_poly(n: u32) -> Result<QScalar, OracleError> {
    if n == 0 || n > TREE_LIMIT {
        return Err(OracleError::TooLarge(n, TREE_LIMIT));
    }
    if let Some(v) = J_MEMO.lock().unwrap().get(&n) {
        return Ok(v.clone());
    }
    let cache = OracleCache::default_location();
    if let Some(v) = cache.load("J", n) {
        J_MEMO.lock().unwrap().insert(n, v.clone());
        return Ok(v);
    }
    let value = j_poly_enumerate(n as usize);
    cache.store("J", n, &value);
    J_MEMO.lock().unwrap().insert(n, value.clone());
    Ok(value)
}

fn j_poly_enumerate(n: usize) -> QScalar {
    if n <= 2 {
        return QScalar::one();
    }
    let mut histogram: Vec<u64> = vec![0; binomial(n as u64 - 1, 2) as usize + 1];
    let mut seq = vec![1usize; n - 2];
    let mut total: u64 = 0;
    loop {
        let t = LabeledTree::from_pruefer(n, &seq);
        histogram[tree_inversions(&t) as usize] += 1;
        total += 1;
        // odometer over {1..n}^{n-2}
        let mut pos = 0;
        loop {
            if pos == seq.len() {
                let expected = (n as u64).pow(n as u32 - 2);
                assert_eq!(total, expected, "tree count must be n^(n-2)");
                let coeffs: Vec<BigRational> = histogram
                    .iter()
                    .map(|&c| BigRational::from_integer(BigInt::from(c)))
                    .collect();
                return QScalar::from_poly(QPoly::new(coeffs));
            }
            if seq[pos] < n {
                seq[pos] += 1;
                break;
            }
            seq[pos] = 1;
            pos += 1;
        }
    }
}

/// The reciprocal enumerator `Jbar_n = q^{binom(n-1,2)} J_n(1/q)`, the sum
/// enumerator of parking functions.
pub fn j_reciprocal(n: u32) -> Result<QScalar, OracleError> {
    let j = j_poly(n)?;
    Ok(QScalar::q_pow(binomial(u64::from(n) - 1, 2) as i64) * j.subst_q_power(-1))
}

// ---------------------------------------------------------------------------
// Classical oracles
// ---------------------------------------------------------------------------

/// The classical power sum `p_n` in the `e`-basis, from the classical
/// Newton recurrence; the `q = 1` reference for the q-power sums.
pub fn classical_newton_p(n: u32) -> SymPoly {
    assert!(n >= 1);
    let mut values: Vec<SymPoly> = vec![SymPoly::zero()];
    for j in 1..=n {
        let mut acc = SymPoly::gen(j).scale(&QScalar::from_int(i64::from(j)));
        if j % 2 == 0 {
            acc = acc.neg();
        }
        for k in 1..j {
            let term = SymPoly::gen(k).mul(&values[(j - k) as usize]);
            if (k - 1) % 2 == 0 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        values.push(acc);
    }
    values[n as usize].clone()
}

/// The monomial symmetric polynomial `m_lambda` evaluated at concrete
/// rationals: the sum over distinct rearrangements of the padded exponent
/// vector.
pub fn m_lambda_value(lambda: &Partition, xs: &[BigRational]) -> BigRational {
    use num_traits::Zero;
    if lambda.length() > xs.len() {
        return BigRational::zero();
    }
    // multiset of exponents, padded with zeros
    let mut pool: Vec<(u32, usize)> = Vec::new();
    for &p in lambda.parts() {
        match pool.iter_mut().find(|(v, _)| *v == p) {
            Some((_, c)) => *c += 1,
            None => pool.push((p, 1)),
        }
    }
    pool.push((0, xs.len() - lambda.length()));
    let mut total = BigRational::zero();
    let mut exponents: Vec<u32> = Vec::with_capacity(xs.len());
    fn descend(
        pool: &mut Vec<(u32, usize)>,
        exponents: &mut Vec<u32>,
        xs: &[BigRational],
        total: &mut BigRational,
    ) {
        use num_traits::One;
        if exponents.len() == xs.len() {
            let mut prod = BigRational::one();
            for (x, &e) in xs.iter().zip(exponents.iter()) {
                for _ in 0..e {
                    prod *= x;
                }
            }
            *total += prod;
            return;
        }
        for idx in 0..pool.len() {
            if pool[idx].1 == 0 {
                continue;
            }
            pool[idx].1 -= 1;
            exponents.push(pool[idx].0);
            descend(pool, exponents, xs, total);
            exponents.pop();
            pool[idx].1 += 1;
        }
    }
    descend(&mut pool, &mut exponents, xs, &mut total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partitions_of;
    use crate::scalars::{base, qbinom, qfact, qint, BaseExponent};
    use crate::symfun::{q_power, q_power_r};

    fn perm(word: &[u8]) -> Perm {
        Perm::new(word.to_vec())
    }

    #[test]
    fn inversion_counts() {
        assert_eq!(inversions(&perm(&[1, 2, 3, 4])), 0);
        assert_eq!(inversions(&perm(&[4, 3, 2, 1])), 6);
        for n in 1..=5u32 {
            for p in all_permutations(n).unwrap() {
                assert_eq!(
                    u64::from(inversions(&p) + non_inversions(&p)),
                    binomial(u64::from(n), 2)
                );
            }
        }
    }

    #[test]
    fn basic_blocks() {
        assert_eq!(basic_decomposition(&perm(&[3, 1, 2])), vec![vec![3, 1, 2]]);
        assert_eq!(
            basic_decomposition(&perm(&[1, 2, 3])),
            vec![vec![1], vec![2], vec![3]]
        );
        for p in all_permutations(4).unwrap() {
            let blocks = basic_decomposition(&p);
            let mut all: Vec<u8> = Vec::new();
            for b in &blocks {
                assert_eq!(b[0], *b.iter().max().unwrap(), "block must be basic");
                all.extend_from_slice(b);
            }
            assert_eq!(all, p.word(), "concatenation restores the word");
        }
    }

    #[test]
    fn unit_gamma_is_q_factorial() {
        for n in 0..=5u32 {
            let g = gamma_poly(n, Weight::Unit, PairStat::Inversions).unwrap();
            assert_eq!(g.degree().unwrap_or(0), 0);
            assert_eq!(g.coeff(0), qfact(n, BaseExponent::ONE), "n={n}");
        }
    }

    #[test]
    fn exponential_formulas_small() {
        for weight in [Weight::Unit, Weight::BlockMarker] {
            assert!(verify_gessel_formula(5, weight).unwrap(), "{weight:?}");
            assert!(verify_star_formula(5, weight).unwrap(), "{weight:?}");
        }
    }

    #[test]
    fn subset_sum_is_q_binomial() {
        for n in 0..=8u32 {
            for k in 0..=n {
                assert_eq!(
                    subset_noninversion_sum(n, k),
                    qbinom(i64::from(n), i64::from(k), BaseExponent::ONE),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn tree_enumerators() {
        assert_eq!(j_poly(1).unwrap(), QScalar::one());
        assert_eq!(j_poly(2).unwrap(), QScalar::one());
        // three labeled trees on three vertices: inversion counts 0,0,1
        let expected = QScalar::from_int(2) + QScalar::q();
        assert_eq!(j_poly(3).unwrap(), expected);
        for n in 1..=7u32 {
            let total = j_poly(n).unwrap().eval_at_int(1).unwrap();
            let cayley = if n >= 2 { (n as u64).pow(n - 2) } else { 1 };
            assert_eq!(total, BigRational::from_integer(cayley.into()), "n={n}");
        }
        assert_eq!(j_poly(9), Err(OracleError::TooLarge(9, 8)));
    }

    #[test]
    fn tree_reciprocals() {
        assert_eq!(j_reciprocal(2).unwrap(), QScalar::one());
        assert_eq!(
            j_reciprocal(3).unwrap(),
            QScalar::one() + QScalar::from_int(2) * QScalar::q()
        );
        // applying the reciprocal transform twice returns J_n
        for n in 2..=7u32 {
            let jr = j_reciprocal(n).unwrap();
            let back = QScalar::q_pow(binomial(u64::from(n) - 1, 2) as i64) * jr.subst_q_power(-1);
            assert_eq!(back, j_poly(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn bracket_identity_with_tree_oracle() {
        // [n] q^{binom(n,2)} = sum_k binom(n,k) q^{binom(n-k,2)} (q-1)^{k-1} J_{k+1}
        for n in 1..=5u32 {
            let lhs = qint(n, BaseExponent::ONE) * QScalar::q_pow(binomial(u64::from(n), 2) as i64);
            let mut rhs = QScalar::zero();
            for k in 1..=n {
                let term = QScalar::from_int(binomial(u64::from(n), u64::from(k)) as i64)
                    * QScalar::q_pow(binomial(u64::from(n - k), 2) as i64)
                    * (QScalar::q() - QScalar::one()).pow(i64::from(k) - 1)
                    * j_poly(k + 1).unwrap();
                rhs = rhs + term;
            }
            assert_eq!(lhs, rhs, "n={n}");
        }
    }

    #[test]
    fn classical_newton_values() {
        let e = SymPoly::gen;
        assert_eq!(classical_newton_p(1), e(1));
        let p2 = e(1).mul(&e(1)).sub(&e(2).scale(&QScalar::from_int(2)));
        assert_eq!(classical_newton_p(2), p2);
        let p3 = e(1)
            .mul(&e(1))
            .mul(&e(1))
            .sub(&e(1).mul(&e(2)).scale(&QScalar::from_int(3)))
            .add(&e(3).scale(&QScalar::from_int(3)));
        assert_eq!(classical_newton_p(3), p3);
    }

    #[test]
    fn q_power_classical_limit() {
        for n in 1..=8u32 {
            let at_one = q_power(n, base(1)).unwrap().eval_coeffs_at_int(1).unwrap();
            assert_eq!(at_one, classical_newton_p(n), "n={n}");
        }
    }

    #[test]
    fn q_power_r_monomial_oracle() {
        let xs: Vec<BigRational> = [2i64, -1, 3, 5]
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        for n in 1..=5u32 {
            for r in 1..=n {
                let lhs = q_power_r(n, r, base(1))
                    .unwrap()
                    .eval_finite_variables(&xs)
                    .eval_at_int(1)
                    .unwrap();
                let rhs: BigRational = partitions_of(n)
                    .iter()
                    .filter(|l| l.length() == r as usize)
                    .map(|l| m_lambda_value(l, &xs))
                    .sum();
                assert_eq!(lhs, rhs, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("qsymfun-test-cache-{}", std::process::id()));
        let cache = OracleCache::new(dir.clone());
        let value = QScalar::from_int(7) + QScalar::q_pow(3);
        cache.store("J", 42, &value);
        assert_eq!(cache.load("J", 42), Some(value));
        assert_eq!(cache.load("gamma", 42), None);
        let _ = fs::remove_dir_all(dir);
    }
}
