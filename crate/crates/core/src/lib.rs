//! Exact verification of flag-algebra sum-of-squares certificates for the
//! induced density of K(2,2,1), together with the construction curve and
//! brute-force oracles that back them.
//!
//! The crate is organised bottom-up:
//!
//! * [`smallgraph`]: graphs on at most nine vertices, canonical codes,
//!   enumeration of isomorphism classes and induced-subgraph counting.
//! * [`exactmath`]: rationals, polynomials in `k`, PSD certification and
//!   Sturm-based root isolation.
//! * [`flagalgebra`]: typed flags, bases, products, unlabeling and lifting.
//! * [`certificates`]: the certificate file format and its verifiers.
//! * [`constructions`]: weighted blowups and the lower-bound profile.
//! * [`oracle`]: exhaustive searches and checks of the counting argument.

pub mod certificates;
pub mod constructions;
mod error;
pub mod exactmath;
pub mod flagalgebra;
pub mod oracle;
pub mod parallel;
pub mod smallgraph;

pub use error::{Error, Result};
pub use exactmath::{KPolynomial, RatFunc, Rational};
pub use flagalgebra::{Flag, FlagVector};
pub use smallgraph::{CanonicalCode, SmallGraph};
