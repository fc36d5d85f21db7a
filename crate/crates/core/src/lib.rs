//! Exact anthyphairesis over rationals and quadratic surds.
//!
//! Anthyphairesis is reciprocal subtraction: the smaller of two magnitudes is
//! taken away from the larger as many times as it fits, and the process
//! continues with the leftover and the previous divisor. Over the natural
//! numbers this is the Euclidean algorithm; over ratios it is the continued
//! fraction expansion.
//!
//! The crate computes quotient sequences exactly (no floating point),
//! detects periodicity for quadratic irrationals, and emits certificates
//! that an independent checker can replay:
//!
//! * [`euclid`]: natural-number anthyphairesis and gcd.
//! * [`surd`]: integer square roots, quadratic surds and the single-step
//!   complete-quotient map.
//! * [`engine`]: full traces, remainder sequences and verdicts.
//! * [`convergents`]: convergents, side and diameter numbers, Pell residuals.
//! * [`reconstructions`]: parity, residue-descent and oracle provers, and the
//!   Theodorus table.
//! * [`certificates`]: the certificate document format and its checker.
//! * [`cli`]: the `anth` command-line tool.

pub mod certificates;
pub mod cli;
pub mod convergents;
pub mod engine;
mod error;
pub mod euclid;
pub mod exec;
pub mod reconstructions;
pub mod surd;

pub use error::{Error, Result};

/// Arbitrary-precision nonnegative integer.
pub type Natural = num_bigint::BigUint;
/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;
/// Reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;
