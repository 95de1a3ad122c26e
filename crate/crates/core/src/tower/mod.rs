//! Naturals, pair-encoded integers, and pair-encoded rationals.

mod int;
mod nat;
mod rat;

pub use int::Int;
pub use nat::Nat;
pub use rat::Rat;
