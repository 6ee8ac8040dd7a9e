//! Scalar abstraction for the evaluation layer.
//!
//! Generating functions, polynomials and the fractional-linear bounds are
//! evaluated either in IEEE floats (solver and series work) or in exact
//! rational arithmetic (normalization and bounding certificates). The
//! [`Scalar`] trait lets one implementation serve both modes.

use num_rational::BigRational;
use num_traits::{Float, One, ToPrimitive, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A field scalar: `f32`/`f64` for numeric work, [`BigRational`] for
/// exact certificates.
pub trait Scalar:
    Clone
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_ratio(r: &BigRational) -> Self;
    fn from_int(v: i64) -> Self;
}

impl Scalar for f64 {
    fn from_ratio(r: &BigRational) -> Self {
        // num-rational performs correctly rounded conversion even when
        // numerator and denominator individually exceed the f64 range.
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for f32 {
    fn from_ratio(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN) as f32
    }

    fn from_int(v: i64) -> Self {
        v as f32
    }
}

impl Scalar for BigRational {
    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
}

/// Floating-point scalar usable by iterative solvers and series summation.
pub trait RealScalar: Scalar + Float {}

impl<T: Scalar + Float> RealScalar for T {}

/// `base^exp` by binary exponentiation; exact for rational scalars.
pub fn scalar_pow<S: Scalar>(base: &S, mut exp: u64) -> S {
    let mut acc = S::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * sq.clone();
        }
        exp >>= 1;
        if exp > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}

/// Parses a ratio of two integers written as `p/q` (or a bare integer).
pub fn ratio_from_str(s: &str) -> Option<BigRational> {
    let mut parts = s.splitn(2, '/');
    let numer: num_bigint::BigInt = parts.next()?.trim().parse().ok()?;
    match parts.next() {
        None => Some(BigRational::from_integer(numer)),
        Some(d) => {
            let denom: num_bigint::BigInt = d.trim().parse().ok()?;
            if denom.is_zero() {
                None
            } else {
                Some(BigRational::new(numer, denom))
            }
        }
    }
}
