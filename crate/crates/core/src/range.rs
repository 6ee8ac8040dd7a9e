//! Bounds on the extinction-time and spreading-range distributions for
//! the base model (`d = 2`, `k = 1`), where the process dies out almost
//! surely.
//!
//! The offspring pgf is sandwiched between two fractional-linear
//! generating functions with matching value and derivative at one. Since
//! fractional-linear maps compose in closed form, the n-fold composites
//! evaluated at zero bound the extinction-time cdf, and mixing over the
//! root law bounds the range cdf and its expectation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::scalar::{scalar_pow, Scalar};

/// The module's constants are specific to this parameter pair.
pub fn require_base_params(params: ModelParams) -> Result<()> {
    if params.degree() != 2 || params.stifling_threshold() != 1 {
        return Err(Error::UnsupportedParams(format!(
            "range bounds defined only for d=2, k=1 (got {params})"
        )));
    }
    Ok(())
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Generating function of the form `s -> a + b*s/(c - s)` with rational
/// coefficients. Closed under composition; evaluates exactly in rational
/// mode.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalLinearGf {
    offset: BigRational,
    scale: BigRational,
    pole: BigRational,
}

impl FractionalLinearGf {
    #[must_use]
    pub fn new(offset: BigRational, scale: BigRational, pole: BigRational) -> Self {
        FractionalLinearGf { offset, scale, pole }
    }

    /// Best lower bound of the offspring pgf: `13/45 + 128s/(45(5-s))`.
    #[must_use]
    pub fn lower_bound() -> Self {
        FractionalLinearGf::new(ratio(13, 45), ratio(128, 45), ratio(5, 1))
    }

    /// Best upper bound of the offspring pgf: `1/3 + 2s/(4-s)`.
    #[must_use]
    pub fn upper_bound() -> Self {
        FractionalLinearGf::new(ratio(1, 3), ratio(2, 1), ratio(4, 1))
    }

    pub fn eval<S: Scalar>(&self, s: &S) -> S {
        let offset = S::from_ratio(&self.offset);
        let scale = S::from_ratio(&self.scale);
        let pole = S::from_ratio(&self.pole);
        offset + scale * s.clone() / (pole - s.clone())
    }

    /// Exact value at one.
    #[must_use]
    pub fn at_one(&self) -> BigRational {
        self.eval::<BigRational>(&BigRational::one())
    }

    /// Exact derivative at one: `b*c/(c - 1)^2`.
    #[must_use]
    pub fn derivative_at_one(&self) -> BigRational {
        let denom = &self.pole - BigRational::one();
        &self.scale * &self.pole / (&denom * &denom)
    }

    /// n-fold self-composition evaluated at zero, exactly.
    #[must_use]
    pub fn iterate_from_zero(&self, n: u64) -> BigRational {
        let mut s = BigRational::zero();
        for _ in 0..n {
            s = self.eval::<BigRational>(&s);
        }
        s
    }
}

/// Certificate function for the bounding construction:
/// `h(s) = phi'(1) phi'(s) (1-s)^2 - (1 - phi(s))^2`, which must be
/// negative on `[0, 1)` (and vanishes at one).
pub fn h_criterion_eval<S: Scalar>(s: &S) -> S {
    let mean = S::from_ratio(&ratio(8, 9)); // phi'(1)
    let four_ninths = S::from_ratio(&ratio(4, 9));
    let one = S::one();
    // phi'(s) = 4(s+1)/9
    let deriv = four_ninths * (s.clone() + one.clone());
    let gap = one.clone() - s.clone();
    // phi(s) = (2s^2 + 4s + 3)/9
    let phi = S::from_ratio(&ratio(1, 9))
        * (S::from_int(2) * s.clone() * s.clone() + S::from_int(4) * s.clone() + S::from_int(3));
    let miss = one - phi;
    mean * deriv * gap.clone() * gap - miss.clone() * miss
}

/// Float evaluation of the certificate on `[0, 1]`.
pub fn h_criterion(s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidArgument(format!(
            "h is certified on [0, 1] only (got {s})"
        )));
    }
    Ok(h_criterion_eval(&s))
}

/// `1 - (8/9)^n` based cdf bounds `(alpha_1(n), alpha_2(n))` for the
/// extinction time of the single-ancestor process, exactly.
#[must_use]
pub fn extinction_time_cdf_bounds_exact(n: u64) -> (BigRational, BigRational) {
    let decay = scalar_pow(&ratio(8, 9), n);
    let alpha = |level: BigRational| -> BigRational {
        let numer = &level * (BigRational::one() - &decay);
        let denom = level - &decay;
        numer / denom
    };
    (alpha(ratio(13, 9)), alpha(ratio(4, 3)))
}

/// Float projection of [`extinction_time_cdf_bounds_exact`]; the closed
/// forms are evaluated directly in `f64` so large `n` costs nothing.
#[must_use]
pub fn extinction_time_cdf_bounds(n: u64) -> (f64, f64) {
    let decay = if n > 4000 { 0.0 } else { (8.0f64 / 9.0).powi(n as i32) };
    let alpha = |level: f64| (level * (1.0 - decay)) / (level - decay);
    (alpha(13.0 / 9.0), alpha(4.0 / 3.0))
}

/// Mixing cubic `p -> (3p + 4p^2 + 2p^3)/9` from the root law; strictly
/// increasing on `[0, 1]`, so it preserves the bound ordering.
pub fn range_mixing_cubic<S: Scalar>(p: &S) -> S {
    let p2 = p.clone() * p.clone();
    let p3 = p2.clone() * p.clone();
    (S::from_int(3) * p.clone() + S::from_int(4) * p2 + S::from_int(2) * p3)
        / S::from_int(9)
}

/// Bounds `(lower, upper)` on `P(R <= n)` for the spreading range `R`.
#[must_use]
pub fn range_cdf_bounds(n: u64) -> (f64, f64) {
    let (a1, a2) = extinction_time_cdf_bounds(n);
    (range_mixing_cubic(&a1), range_mixing_cubic(&a2))
}

/// Enclosures of the six tail series and of the expected range.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ExpectedRangeBounds {
    /// `sum_n (1 - alpha_2(n))^p`, the lower tail series, p = 1, 2, 3.
    pub series_lower: [f64; 3],
    /// `sum_n (1 - alpha_1(n))^p`, the upper tail series, p = 1, 2, 3.
    pub series_upper: [f64; 3],
    /// Rigorous enclosure of `E[R]`.
    pub lower: f64,
    pub upper: f64,
    /// Geometric tail bound added on the upper side of each series.
    pub tail_bound: f64,
    pub terms: u64,
}

/// Sums the six series until the slowest term drops below `series_tol`,
/// then closes with a geometric tail bound (ratio `8/9` per power), so
/// the reported interval is an enclosure rather than a point estimate.
///
/// `E[R] = sum_n P(R > n)` with
/// `P(R > n) = (17/9) t - (10/9) t^2 + (2/9) t^3` for `t = P(T > n)`,
/// and `1 - alpha_2 <= P(T > n) <= 1 - alpha_1`.
pub fn expected_range_bounds(series_tol: f64) -> Result<ExpectedRangeBounds> {
    if !(series_tol > 0.0 && series_tol <= 1e-12) {
        return Err(Error::InvalidArgument(format!(
            "series tolerance must satisfy 0 < tol <= 1e-12 (got {series_tol})"
        )));
    }
    let mut lower_sums = [0.0f64; 3];
    let mut upper_sums = [0.0f64; 3];
    let mut n = 0u64;
    let tail_term = loop {
        let (a1, a2) = extinction_time_cdf_bounds(n);
        let low = 1.0 - a2;
        let high = 1.0 - a1;
        for p in 0..3 {
            lower_sums[p] += low.powi(p as i32 + 1);
            upper_sums[p] += high.powi(p as i32 + 1);
        }
        n += 1;
        if high < series_tol {
            break high;
        }
        if n > 100_000 {
            return Err(Error::NonConvergence {
                iterations: n,
                residual: high,
            });
        }
    };
    // t(n + j) <= t(n) (8/9)^j, so the missing mass of the p-th series is
    // at most t(n)^p * r^p / (1 - r^p) with r = 8/9.
    let r = 8.0f64 / 9.0;
    let tail = |p: i32| tail_term.powi(p) * r.powi(p) / (1.0 - r.powi(p));
    let lower = (17.0 / 9.0) * lower_sums[0] - (10.0 / 9.0) * (upper_sums[1] + tail(2))
        + (2.0 / 9.0) * lower_sums[2];
    let upper = (17.0 / 9.0) * (upper_sums[0] + tail(1)) - (10.0 / 9.0) * lower_sums[1]
        + (2.0 / 9.0) * (upper_sums[2] + tail(3));
    Ok(ExpectedRangeBounds {
        series_lower: lower_sums,
        series_upper: upper_sums,
        lower,
        upper,
        tail_bound: tail(1),
        terms: n,
    })
}
