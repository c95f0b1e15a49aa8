//! Exact determinants over a commutative coefficient ring: a division-free
//! Laplace expansion with subset memoization (any ring), a naive cofactor
//! expansion kept as a small-size cross-check, and fraction-free Bareiss
//! elimination for integral domains with exact division.

use std::collections::HashMap;

use crate::ring::Coeff;

/// Dense square matrix of ring elements.
#[derive(Debug, Clone)]
pub struct SquareMatrix<C: Coeff> {
    n: usize,
    entries: Vec<C>,
}

impl<C: Coeff> SquareMatrix<C> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &C {
        &self.entries[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: C) {
        self.entries[i * self.n + j] = v;
    }
}

/// Division-free determinant by row-by-row Laplace expansion with
/// memoization over the set of unused columns; `O(2^n n)` ring operations.
pub fn det_expansion<C: Coeff>(m: &SquareMatrix<C>) -> C {
    let n = m.size();
    if n == 0 {
        return C::one();
    }
    assert!(n <= 20, "subset-memoized expansion is for small matrices");
    let full: u32 = (1u32 << n) - 1;
    let mut memo: HashMap<u32, C> = HashMap::new();
    memo.insert(full, C::one());
    fn go<C: Coeff>(m: &SquareMatrix<C>, used: u32, memo: &mut HashMap<u32, C>) -> C {
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let row = used.count_ones() as usize;
        let mut acc = C::zero();
        let mut parity_flips = 0usize;
        for j in 0..m.size() {
            let bit = 1u32 << j;
            if used & bit != 0 {
                continue;
            }
            let entry = m.at(row, j);
            if !entry.is_zero() {
                let sub = go(m, used | bit, memo);
                let term = entry.mul(&sub);
                acc = if parity_flips.is_multiple_of(2) {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            parity_flips += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    go(m, 0, &mut memo)
}

/// Naive first-row cofactor expansion; `O(n!)`, retained as an independent
/// cross-check for very small matrices.
pub fn det_cofactor<C: Coeff>(m: &SquareMatrix<C>) -> C {
    let n = m.size();
    if n == 0 {
        return C::one();
    }
    if n == 1 {
        return m.at(0, 0).clone();
    }
    let mut acc = C::zero();
    for j in 0..n {
        if m.at(0, j).is_zero() {
            continue;
        }
        let minor = SquareMatrix::from_fn(n - 1, |r, c| {
            m.at(r + 1, if c < j { c } else { c + 1 }).clone()
        });
        let term = m.at(0, j).mul(&det_cofactor(&minor));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// Fraction-free Bareiss elimination. Requires an integral domain whose
/// `exact_div` succeeds on the guaranteed-exact interior divisions.
pub fn det_bareiss<C: Coeff>(m: &SquareMatrix<C>) -> C {
    let n = m.size();
    if n == 0 {
        return C::one();
    }
    let mut w = m.clone();
    let mut sign_flip = false;
    let mut prev_pivot = C::one();
    for k in 0..n - 1 {
        if w.at(k, k).is_zero() {
            // pivot search below row k
            match (k + 1..n).find(|&r| !w.at(r, k).is_zero()) {
                Some(r) => {
                    for j in 0..n {
                        let a = w.at(k, j).clone();
                        let b = w.at(r, j).clone();
                        w.set(k, j, b);
                        w.set(r, j, a);
                    }
                    sign_flip = !sign_flip;
                }
                None => return C::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = w.at(k, k).mul(w.at(i, j)).sub(&w.at(i, k).mul(w.at(k, j)));
                let v = num
                    .exact_div(&prev_pivot)
                    .expect("Bareiss interior division is exact in an integral domain");
                w.set(i, j, v);
            }
            w.set(i, k, C::zero());
        }
        prev_pivot = w.at(k, k).clone();
    }
    let det = w.at(n - 1, n - 1).clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Poly, XPoly};
    use crate::scalars::QScalar;

    fn qmat(vals: &[&[i64]]) -> SquareMatrix<QScalar> {
        SquareMatrix::from_fn(vals.len(), |i, j| QScalar::from_int(vals[i][j]))
    }

    #[test]
    fn small_integer_determinants() {
        let m = qmat(&[&[2, 1], &[7, 4]]);
        assert_eq!(det_expansion(&m), QScalar::from_int(1));
        assert_eq!(det_cofactor(&m), QScalar::from_int(1));
        assert_eq!(det_bareiss(&m), QScalar::from_int(1));

        let singular = qmat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 5]]);
        assert_eq!(det_bareiss(&singular), QScalar::zero());
        assert_eq!(det_expansion(&singular), QScalar::zero());
    }

    #[test]
    fn pivot_swap_path() {
        let m = qmat(&[&[0, 1, 2], &[3, 0, 1], &[1, 1, 1]]);
        let expected = det_expansion(&m);
        assert_eq!(det_bareiss(&m), expected);
        assert_eq!(det_cofactor(&m), expected);
    }

    #[test]
    fn polynomial_entries_agree() {
        let x: XPoly = Poly::x();
        let entries: Vec<Vec<XPoly>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        let c = QScalar::from_int((i * j) as i64 - 1) + QScalar::q_pow(j as i64);
                        Coeff::add(&x.pow(i), &Poly::constant(c))
                    })
                    .collect()
            })
            .collect();
        let m = SquareMatrix::from_fn(4, |i, j| entries[i][j].clone());
        let a = det_expansion(&m);
        let b = det_bareiss(&m);
        let c = det_cofactor(&m);
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}
