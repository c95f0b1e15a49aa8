//! Exact q-calculus of symmetric functions.
//!
//! Everything is computed over the field Q(q) of rational functions of `q`
//! with arbitrary-precision rational coefficients; no floating point is used
//! anywhere, and every identity check is a structural equality of canonical
//! forms.
//!
//! The crate provides:
//!
//! - [`scalars`]: the coefficient field Q(q) and q-integers, q-factorials,
//!   q-binomials, q-Pochhammer symbols, with a base change `q -> q^m`;
//! - [`combinatorics`]: integer partitions, strict compositions, multiset
//!   permutations, and classical / q-deformed centralizer orders;
//! - [`series`]: truncated formal power series over a pluggable coefficient
//!   ring, with the q-derivation and dual `(q, t)` truncation;
//! - [`symfun`]: the symmetric-function algebra on free `e`-generators, the
//!   q-power sums and their recurrence, determinant and partition-expansion
//!   identities;
//! - [`qcalculus`]: divided q-powers, the two q-compositions, both
//!   q-exponentials, the exponential-formula recurrences and the infinite
//!   q-product factorizations;
//! - [`oracle`]: brute-force ground truth from permutation and labeled-tree
//!   enumeration;
//! - [`specializations`]: the q-binomial theorem, tree-inversion enumerator
//!   identities, and discrete q-Hermite polynomials of both kinds;
//! - [`verify`]: the named identity suites behind the command-line
//!   verification tool.

pub mod combinatorics;
pub mod linalg;
pub mod oracle;
pub mod qcalculus;
pub mod ring;
pub mod scalars;
pub mod series;
pub mod specializations;
pub mod symfun;
pub mod verify;

pub use ring::{Coeff, GaussQ, Poly, XPoly};
pub use scalars::{base, BaseExponent, QPoly, QScalar};
pub use series::Series;
pub use symfun::SymPoly;
