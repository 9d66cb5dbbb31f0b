//! Exact engine for the combinatorics of real central hyperplane arrangements
//! of braid type and for double representations of their face posets.
//!
//! The crate is organized bottom-up:
//!
//! * [`linalg`] / [`lp`]: exact dense linear algebra and linear feasibility,
//!   generic over the scalar type through [`scalar::Scalar`];
//! * [`arrangement`] / [`poset`] / [`osp`]: arrangements, sign vectors, face
//!   posets, and an independent combinatorial enumeration used as an oracle;
//! * [`rep`] / [`relations`] / [`hom`] / [`simple`]: double representations of
//!   a face poset, the relations cutting out the good subcategory, hom spaces,
//!   and simplicity certificates;
//! * [`embed`] / [`functor`]: the poset embedding induced by a hyperplane of
//!   the one-larger braid arrangement and the extension-by-zero functor along
//!   it, with its verification suites;
//! * [`json`]: deterministic serialization of every public artifact.
//!
//! All domain computation runs over arbitrary-precision rationals ([`Rat`]);
//! nothing is ever rounded.

pub mod arrangement;
pub mod embed;
pub mod error;
pub mod functor;
pub mod hom;
pub mod json;
pub mod linalg;
pub mod lp;
pub mod osp;
pub mod poset;
pub mod relations;
pub mod rep;
pub mod report;
pub mod scalar;
pub mod simple;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational scalar used by every domain module: arbitrary precision,
/// always in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

/// Rational matrix used by the domain modules.
pub type RatMatrix = linalg::Matrix<Rat>;

/// Integer-valued rational.
pub fn q(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Rational from numerator and denominator.
pub fn qq(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Integer row as rationals.
pub fn qvec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&n| q(n)).collect()
}
