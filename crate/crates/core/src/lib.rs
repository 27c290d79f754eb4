//! Exact-arithmetic noncommutative computer algebra for Cauchy–Binet and
//! Capelli-type determinant identities.
//!
//! The crate provides a small tower of exact algebras over arbitrary-precision
//! rationals — commutative parameter polynomials, free noncommutative
//! polynomials, the multivariate Weyl algebra, the single-mode
//! Weyl–Heisenberg (Fock) algebra, truncated formal power series, and the
//! exterior (Grassmann) algebra with Berezin integration — together with the
//! three noncommutative determinants (column, row, symmetric) and a set of
//! identity verifiers that check quantum Cauchy–Binet formulas in their
//! oscillator, holomorphic and Grassmann representations on concrete
//! realizations.
//!
//! All arithmetic is exact; every verifier reduces its claim to "this normal
//! form is identically zero" and reports the first offending term otherwise.

pub mod error;
pub mod ring;
pub mod scalars;
pub mod free_algebra;
pub mod fock;
pub mod weyl;
pub mod grassmann;
pub mod series;
pub mod ncdet;
pub mod lukasiewicz;
pub mod identities;

pub use error::AlgebraError;
pub use ring::{Rational, Ring, TermView};
pub use scalars::{ParamPoly, ParamSet};
