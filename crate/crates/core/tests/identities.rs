//! Cross-module identities that tie the series engine, the
//! symmetric-function algebra and the classical limits together.

use num_bigint::BigInt;
use num_rational::BigRational;

use qsymfun::combinatorics::{n_stat_comp, Composition};
use qsymfun::scalars::{base, QScalar};
use qsymfun::series::Series;
use qsymfun::symfun::{self, SymPoly};
use qsymfun::Coeff;

/// At q = 1 the exponential formula degenerates to the classical
/// composition: exp composed with -P(-t) recovers the elementary series.
#[test]
fn classical_composition_limit() {
    let n = 6;
    let m = base(1);
    // -P(-t) with every coefficient evaluated at q = 1
    let f: Series<SymPoly> = Series::from_fn(n, |k| {
        if k == 0 {
            return SymPoly::zero();
        }
        let p = symfun::q_power(k as u32, m).unwrap();
        let v = p
            .eval_coeffs_at_int(1)
            .unwrap()
            .scale(&QScalar::from_ratio(BigRational::new(
                BigInt::from(1),
                BigInt::from(k as i64),
            )));
        if (k - 1) % 2 == 0 {
            v
        } else {
            v.neg()
        }
    });
    let exp: Series<SymPoly> = Series::from_fn(n, |k| {
        let fact: BigInt = (1..=k as i64).product::<i64>().max(1).into();
        SymPoly::constant(QScalar::from_ratio(BigRational::new(BigInt::from(1), fact)))
    });
    let composed = Series::compose_classical(&exp, &f).unwrap();
    for k in 0..=n {
        let expected = SymPoly::gen(k as u32).eval_coeffs_at_int(1).unwrap();
        assert_eq!(composed.coeff(k), expected, "k={k}");
    }
}

#[test]
fn composition_statistic() {
    assert_eq!(n_stat_comp(&Composition::new(vec![1, 3])), 3);
    assert_eq!(n_stat_comp(&Composition::new(vec![3, 1])), 1);
    assert_eq!(n_stat_comp(&Composition::empty()), 0);
}

/// The memo tables behind the power sums are shared across threads; results
/// must be identical no matter who fills them first.
#[test]
fn concurrent_memo_consistency() {
    let handles: Vec<_> = (0..4)
        .map(|_| {
            std::thread::spawn(|| {
                let p = symfun::q_power(8, base(1)).unwrap();
                let e = symfun::e_expansion(6, base(1)).unwrap();
                (p, e)
            })
        })
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for (p, e) in &results[1..] {
        assert_eq!(*p, results[0].0);
        assert_eq!(*e, results[0].1);
    }
    assert_eq!(results[0].1, SymPoly::gen(6));
}
