//! Exact real arithmetic over pair-encoded rationals.
//!
//! The layers build on each other:
//!
//! - [`tower`]: naturals, integers as pairs of naturals, rationals as pairs
//!   of integers.
//! - [`seq`]: deterministic rational sequences and finite-depth Cauchy scans.
//! - [`real`]: Cauchy sequences with explicit moduli, termwise arithmetic and
//!   three-valued comparisons.
//! - [`superclass`]: closed sets of reals given as limit points of rational
//!   sequences, and sequences of rational pairs.
//! - [`calculus`]: derivatives as quotients of zero sequences, integrals as
//!   refined midpoint sums.

pub mod calculus;
pub mod error;
pub mod real;
pub mod seq;
pub mod superclass;
pub mod tower;

pub use error::{Error, Result};
pub use real::{ApartnessWitness, Comparison3, Real, Witness};
pub use seq::{check_cauchy_to_depth, CauchyVerdict, RatSeq, SeqOp};
pub use tower::{Int, Nat, Rat};
