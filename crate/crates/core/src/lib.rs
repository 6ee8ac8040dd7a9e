//! Exact and Monte Carlo analysis of Maki-Thompson rumor spreading with
//! k-stifling on infinite Cayley trees.
//!
//! A rumor starts at the root of a tree in which every vertex has `d + 1`
//! neighbors. Spreaders tell the rumor to ignorant neighbors and stop
//! after `k` stifling experiences (contacts with someone already
//! informed). The crate computes the quantities that describe this
//! process:
//!
//! - exact offspring and root spreader-count laws ([`distributions`]),
//! - the survival probability via the pgf fixed point ([`survival`]),
//! - the distribution and mean of the total informed count ([`progeny`]),
//! - bounds on the spreading range for the almost-surely finite base
//!   case ([`range`]),
//! - two independent stochastic simulators that cross-validate all of
//!   the above ([`simulate`]), plus enumeration oracles ([`oracle`]) and
//!   a self-check suite ([`validate`]).
//!
//! Exact quantities use arbitrary-precision rationals; floats are
//! derived views. The evaluation layer is generic over the scalar type
//! ([`scalar::Scalar`]), so the same generating-function code serves the
//! `f64` solver path and the exact certificates.

pub mod cli;
pub mod distributions;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod params;
pub mod pmf;
pub mod progeny;
pub mod range;
pub mod scalar;
pub mod simulate;
pub mod survival;
pub mod validate;

pub use error::{Error, Result};
pub use params::ModelParams;
pub use pmf::ExactPmf;

/// Float scalar used by the numeric paths.
pub type Real = f64;
/// Exact rational scalar: arbitrary-precision, always reduced, positive
/// denominator.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
