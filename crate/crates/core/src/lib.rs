//! Exact arithmetic for base reinterpretation (`a_b`: the decimal digits of
//! `a` read in base `b`), the four dungeon sequences built from it, and the
//! discrete dynamical system `x -> L<a>(x)`.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod expansion;
pub mod laurent;
pub mod radix;
pub mod real;
pub mod reinterpret;
pub mod seq;
mod serde_nat;

pub use error::{Error, Result};
pub use expansion::{expansion_of_nat, parse_decimal, parse_rational, DecimalExpansion};
pub use laurent::{
    laurent_derivative, laurent_derivative_approx, laurent_derivative_eval, laurent_eval,
    laurent_eval_approx, LaurentMap, Scalar,
};
pub use real::Fixed;
pub use reinterpret::{lemma3_bounds, reinterpret, reinterpret_mod, BoundsPair};

/// Arbitrary-precision natural number.
pub type Nat = num_bigint::BigUint;
/// Exact rational in lowest terms with a positive denominator.
pub type Rat = num_rational::BigRational;
