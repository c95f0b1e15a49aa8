//! Integer partitions, strict compositions, multiset permutations, and the
//! classical and q-deformed centralizer orders.

use std::fmt;

use serde_json::Value;
use thiserror::Error;

use crate::scalars::{qint, BaseExponent, QScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("the empty partition has no q-centralizer order")]
    EmptyPartition,
}

/// An integer partition: weakly decreasing positive parts. The empty
/// partition is valid with `|lambda| = 0` and `l(lambda) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p >= 1),
            "partition parts must be weakly decreasing and positive"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The weight `|lambda|`.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The length `l(lambda)`.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Multiplicity of the part `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.parts.iter().map(|&p| Value::from(p)).collect())
    }

    /// Parse from the text rendering `"3,1,1"`; the empty string gives the
    /// empty partition.
    pub fn parse(s: &str) -> Option<Partition> {
        let s = s.trim();
        if s.is_empty() {
            return Some(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().ok())
            .collect::<Option<Vec<_>>>()?;
        if parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p >= 1) {
            Some(Partition { parts })
        } else {
            None
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", rendered.join(","))
    }
}

/// A strict composition: a finite sequence of positive parts in a fixed
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.iter().all(|&p| p >= 1),
            "composition parts must be positive"
        );
        Composition { parts }
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }
}

/// All partitions of `n`, each exactly once, in reverse-lexicographic order:
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn descend(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        let top = remaining.min(max_part);
        for part in (1..=top).rev() {
            current.push(part);
            descend(remaining - part, part, current, out);
            current.pop();
        }
    }
    descend(n, n.max(1), &mut current, &mut out);
    out
}

/// Number of partitions of `n`, by the pentagonal-free double recurrence
/// `p(n, k)` over largest parts; independent of the enumerator above.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    // table[m][k]: partitions of m with parts <= k
    let mut table = vec![vec![0u64; n + 1]; n + 1];
    table[0].fill(1);
    for m in 1..=n {
        for k in 1..=n {
            table[m][k] = table[m][k - 1] + if m >= k { table[m - k][k] } else { 0 };
        }
    }
    table[n][n]
}

/// Classical binomial coefficient.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The classical centralizer order `z_lambda = prod_i i^{m_i} m_i!`.
pub fn z_classical(lambda: &Partition) -> u64 {
    let mut acc: u64 = 1;
    let mut run_value = 0u32;
    let mut run_len = 0u64;
    for &p in lambda.parts() {
        if p == run_value {
            run_len += 1;
        } else {
            run_value = p;
            run_len = 1;
        }
        acc *= u64::from(p) * run_len;
    }
    acc
}

/// The sign `epsilon_lambda = (-1)^{|lambda| - l(lambda)}`.
pub fn epsilon(lambda: &Partition) -> i32 {
    if (lambda.size() as usize + lambda.length()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Conjugate partition.
pub fn conjugate(lambda: &Partition) -> Partition {
    let len = lambda.parts().first().copied().unwrap_or(0) as usize;
    let mut parts = Vec::with_capacity(len);
    for i in 1..=len {
        parts.push(lambda.parts().iter().filter(|&&p| p >= i as u32).count() as u32);
    }
    Partition { parts }
}

/// The statistic `n(lambda) = sum (i-1) lambda_i`.
pub fn n_stat(lambda: &Partition) -> u64 {
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| i as u64 * u64::from(p))
        .sum()
}

/// The same statistic on strict compositions.
pub fn n_stat_comp(u: &Composition) -> u64 {
    u.parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| i as u64 * u64::from(p))
        .sum()
}

/// Every distinct rearrangement of the parts of `lambda`, generated without
/// duplicates; the count is `l(lambda)! / prod_i m_i(lambda)!`.
pub fn distinct_permutations(lambda: &Partition) -> Vec<Composition> {
    let mut distinct: Vec<(u32, usize)> = Vec::new();
    for &p in lambda.parts() {
        match distinct.iter_mut().find(|(v, _)| *v == p) {
            Some((_, count)) => *count += 1,
            None => distinct.push((p, 1)),
        }
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(lambda.length());
    fn descend(
        pool: &mut Vec<(u32, usize)>,
        word: &mut Vec<u32>,
        target: usize,
        out: &mut Vec<Composition>,
    ) {
        if word.len() == target {
            out.push(Composition {
                parts: word.clone(),
            });
            return;
        }
        for idx in 0..pool.len() {
            if pool[idx].1 == 0 {
                continue;
            }
            pool[idx].1 -= 1;
            word.push(pool[idx].0);
            descend(pool, word, target, out);
            word.pop();
            pool[idx].1 += 1;
        }
    }
    descend(&mut distinct, &mut word, lambda.length(), &mut out);
    out
}

/// The q-deformed centralizer order `[z_lambda]` in base `q^m`: the
/// reciprocal of the sum, over distinct rearrangements `u` of `lambda`, of
/// `1 / ([n][n - u_1][n - u_1 - u_2] ... [u_r])`.
pub fn q_z(lambda: &Partition, m: BaseExponent) -> Result<QScalar, CombinatoricsError> {
    if lambda.length() == 0 {
        return Err(CombinatoricsError::EmptyPartition);
    }
    let n = lambda.size();
    let mut sum = QScalar::zero();
    for u in distinct_permutations(lambda) {
        let mut remaining = n;
        let mut prod = QScalar::one();
        for &part in u.parts() {
            prod = prod * qint(remaining, m);
            remaining -= part;
        }
        sum = sum + prod.try_inv().expect("nonzero bracket product");
    }
    Ok(sum.try_inv().expect("nonzero reciprocal sum"))
}

/// The second q-analog of `z_lambda`:
/// `q^{|lambda| - l(lambda)} [z_lambda]_{q^{-1}}`, the coefficient reciprocal
/// appearing in the complete-function partition expansion.
pub fn q_z_h(lambda: &Partition) -> Result<QScalar, CombinatoricsError> {
    let shift = i64::from(lambda.size()) - lambda.length() as i64;
    Ok(QScalar::q_pow(shift) * q_z(lambda, BaseExponent::INVERSE)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::base;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn partitions_of_examples() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        let p4 = partitions_of(4);
        let expected: Vec<Partition> = [
            vec![4u32],
            vec![3, 1],
            vec![2, 2],
            vec![2, 1, 1],
            vec![1, 1, 1, 1],
        ]
        .into_iter()
        .map(Partition::new)
        .collect();
        assert_eq!(p4, expected);
        assert_eq!(partitions_of(8).len(), 22);
        for n in 0..=12 {
            assert_eq!(partitions_of(n).len() as u64, partition_count(n), "n={n}");
        }
    }

    #[test]
    fn z_classical_examples() {
        assert_eq!(z_classical(&part(&[1, 1, 1])), 6);
        assert_eq!(z_classical(&part(&[2, 1])), 2);
        assert_eq!(z_classical(&Partition::empty()), 1);
        // sum over cycle types of n!/z_lambda counts all permutations
        for n in 0..=7u32 {
            let factorial: u64 = (1..=u64::from(n)).product();
            let total: BigRational = partitions_of(n)
                .iter()
                .map(|l| BigRational::new(factorial.into(), z_classical(l).into()))
                .sum();
            assert_eq!(total, BigRational::from_integer(factorial.into()), "n={n}");
        }
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&Partition::empty()), 1);
        assert_eq!(epsilon(&part(&[2, 1])), -1);
        assert_eq!(epsilon(&part(&[2, 2])), 1);
    }

    #[test]
    fn conjugate_and_nstat() {
        assert_eq!(conjugate(&part(&[3, 1])), part(&[2, 1, 1]));
        assert_eq!(n_stat(&part(&[3, 1])), 1);
        for n in 0..=8 {
            for l in partitions_of(n) {
                let via_conjugate: u64 = conjugate(&l)
                    .parts()
                    .iter()
                    .map(|&p| binomial(u64::from(p), 2))
                    .sum();
                assert_eq!(n_stat(&l), via_conjugate, "lambda={l}");
            }
        }
    }

    #[test]
    fn distinct_permutations_examples() {
        let perms = distinct_permutations(&part(&[2, 1]));
        assert_eq!(
            perms,
            vec![Composition::new(vec![2, 1]), Composition::new(vec![1, 2])]
        );
        assert_eq!(
            distinct_permutations(&part(&[1, 1])),
            vec![Composition::new(vec![1, 1])]
        );
        assert_eq!(distinct_permutations(&part(&[2, 2, 1, 1])).len(), 6);
        assert_eq!(
            distinct_permutations(&Partition::empty()),
            vec![Composition::empty()]
        );
    }

    #[test]
    fn q_z_examples() {
        for n in 1..=12 {
            assert_eq!(
                q_z(&part(&[n]), BaseExponent::ONE).unwrap(),
                qint(n, BaseExponent::ONE),
                "n={n}"
            );
        }
        assert_eq!(
            q_z(&part(&[1, 1]), BaseExponent::ONE).unwrap(),
            qint(2, BaseExponent::ONE)
        );
        assert_eq!(
            q_z(&Partition::empty(), BaseExponent::ONE),
            Err(CombinatoricsError::EmptyPartition)
        );
    }

    #[test]
    fn q_z_h_examples() {
        for n in 1..=8 {
            assert_eq!(
                q_z_h(&part(&[n])).unwrap(),
                qint(n, BaseExponent::ONE),
                "n={n}"
            );
        }
        // q^0 * [2]_{1/q} = (1 + q)/q
        assert_eq!(
            q_z_h(&part(&[1, 1])).unwrap(),
            qint(2, BaseExponent::ONE) * QScalar::q_pow(-1)
        );
    }

    #[test]
    fn q_z_classical_limits() {
        for n in 1..=8 {
            for l in partitions_of(n) {
                let z = BigRational::from_integer(z_classical(&l).into());
                let a = q_z(&l, base(1)).unwrap().eval_at_int(1).unwrap();
                let b = q_z_h(&l).unwrap().eval_at_int(1).unwrap();
                assert_eq!(a, z, "q_z at q=1, lambda={l}");
                assert_eq!(b, z, "q_z_h at q=1, lambda={l}");
            }
        }
    }

    #[test]
    fn partition_parse_round_trip() {
        let l = part(&[3, 1, 1]);
        assert_eq!(format!("{l}"), "3,1,1");
        assert_eq!(Partition::parse("3,1,1"), Some(l));
        assert_eq!(Partition::parse(""), Some(Partition::empty()));
        assert_eq!(Partition::parse("1,3"), None);
    }

    proptest! {
        #[test]
        fn conjugate_involution(n in 0u32..=10) {
            for l in partitions_of(n) {
                prop_assert_eq!(conjugate(&conjugate(&l)), l);
            }
        }

        #[test]
        fn nstat_of_conjugate(n in 0u32..=10) {
            for l in partitions_of(n) {
                let direct: u64 = l.parts().iter().map(|&p| binomial(u64::from(p), 2)).sum();
                prop_assert_eq!(n_stat(&conjugate(&l)), direct);
            }
        }
    }
}
