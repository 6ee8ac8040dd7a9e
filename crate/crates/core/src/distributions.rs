//! Exact offspring and root spreader-count distributions.
//!
//! A spreader contacts its `d + 1` neighbors uniformly at random, one
//! contact per jump. Contacting an ignorant informs it; contacting a
//! non-ignorant is a stifling experience, and the `k`-th one stops the
//! spreader. The number of vertices a spreader informs before stopping
//! follows the laws computed here, with combinatorial weights given by
//! the nested stifling sums.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial};
use crate::params::ModelParams;
use crate::pmf::ExactPmf;

/// Nested sum over non-decreasing sequences `1 <= m_1 <= ... <= m_{k-1} <= upper`
/// of the product `m_1 * ... * m_{k-1}`, by dynamic programming on
/// suffixes: `g_0 = 1`, `g_j(lo) = sum_{m=lo..=upper} m * g_{j-1}(m)`.
/// For `k = 1` the empty product gives 1.
fn nested_product_sum(upper: u64, k: u64) -> BigInt {
    if k == 1 {
        return BigInt::one();
    }
    // g[m] holds g_{level}(m) for m in 1..=upper; suffix-accumulate in place.
    let n = upper as usize;
    let mut g = vec![BigInt::one(); n + 1];
    for _level in 1..k {
        let mut suffix = BigInt::zero();
        for m in (1..=n).rev() {
            suffix += &g[m] * BigInt::from(m);
            g[m] = suffix.clone();
        }
    }
    if n == 0 {
        BigInt::zero()
    } else {
        g[1].clone()
    }
}

/// Stifling weight `S(i, k)`: sum over non-decreasing sequences bounded by
/// `i + 1`. Enters the offspring law.
pub fn stifling_sum(i: u64, k: u64) -> Result<BigInt> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!(
            "stifling sum requires k >= 1 (got {k})"
        )));
    }
    Ok(nested_product_sum(i + 1, k))
}

/// Stifling weight `S*(i, k)`: sum over non-decreasing sequences bounded
/// by `i`. Enters the root law; requires `i >= 1`.
pub fn root_stifling_sum(i: u64, k: u64) -> Result<BigInt> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!(
            "root stifling sum requires k >= 1 (got {k})"
        )));
    }
    if i < 1 {
        return Err(Error::InvalidArgument(format!(
            "root stifling sum requires i >= 1 (got {i})"
        )));
    }
    Ok(nested_product_sum(i, k))
}

/// Law of the number of new spreaders generated by a non-root spreader,
/// support `{0, ..., d}`:
///
/// `P(i) = C(d, i) * (i+1)! * S(i, k) / (d+1)^(i+k)`.
///
/// The exponent is `i + k` throughout: that is the unique choice under
/// which the masses sum to one.
pub fn offspring_pmf(params: ModelParams) -> ExactPmf {
    let d = u64::from(params.degree());
    let k = u64::from(params.stifling_threshold());
    let base = BigInt::from(d + 1);
    let entries = (0..=d)
        .map(|i| {
            let numer = binomial(d, i) * factorial(i + 1) * nested_product_sum(i + 1, k);
            let mass = BigRational::new(numer, base.pow((i + k) as u32));
            (i, mass)
        })
        .collect();
    ExactPmf::proper(entries).expect("offspring masses sum to one by construction")
}

/// Law of the number of spreaders generated by the root, support
/// `{1, ..., d+1}`:
///
/// `P(i) = i * (1/(d+1))^i * i!/(d+1)^k * C(d+1, i) * S*(i, k)`.
pub fn root_pmf(params: ModelParams) -> ExactPmf {
    let d = u64::from(params.degree());
    let k = u64::from(params.stifling_threshold());
    let base = BigInt::from(d + 1);
    let entries = (1..=d + 1)
        .map(|i| {
            let numer = BigInt::from(i) * factorial(i) * binomial(d + 1, i) * nested_product_sum(i, k);
            let mass = BigRational::new(numer, base.pow((i + k) as u32));
            (i, mass)
        })
        .collect();
    ExactPmf::proper(entries).expect("root masses sum to one by construction")
}

/// Exact mean of the offspring law. Supercritical exactly when this
/// exceeds one.
pub fn offspring_mean(params: ModelParams) -> BigRational {
    offspring_pmf(params).mean()
}

/// Offspring generating function at `s` in `[0, 1]`, float mode.
pub fn offspring_pgf(params: ModelParams, s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidArgument(format!(
            "pgf argument must lie in [0, 1] (got {s})"
        )));
    }
    Ok(offspring_pmf(params).pgf(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn params(d: u32, k: u32) -> ModelParams {
        ModelParams::new(d, k).unwrap()
    }

    #[test]
    fn stifling_sum_empty_product() {
        // k = 1: empty product convention
        for i in [0u64, 3, 5, 17] {
            assert_eq!(stifling_sum(i, 1).unwrap(), BigInt::one());
        }
        for i in [1u64, 4, 9] {
            assert_eq!(root_stifling_sum(i, 1).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn stifling_sum_small_values() {
        // direct enumeration: sum_{m=1..3} m = 6
        assert_eq!(stifling_sum(2, 2).unwrap(), BigInt::from(6));
        // pairs (1,1),(1,2),(2,2) -> 1 + 2 + 4 = 7
        assert_eq!(root_stifling_sum(2, 3).unwrap(), BigInt::from(7));
    }

    #[test]
    fn stifling_sum_rejects_bad_args() {
        assert!(stifling_sum(3, 0).is_err());
        assert!(root_stifling_sum(0, 2).is_err());
        assert!(root_stifling_sum(2, 0).is_err());
    }

    #[test]
    fn stifling_sum_cubic_closed_forms() {
        // S(i,3) = (i+1)(i+2)(3i^2+13i+12)/24 for i in 0..=6
        for i in 0..=6u64 {
            let expect = BigInt::from((i + 1) * (i + 2) * (3 * i * i + 13 * i + 12) / 24);
            assert_eq!(stifling_sum(i, 3).unwrap(), expect, "S({i},3)");
        }
        // S*(i,3) = i(i+1)(3i^2+7i+2)/24 for i in 1..=6
        for i in 1..=6u64 {
            let expect = BigInt::from(i * (i + 1) * (3 * i * i + 7 * i + 2) / 24);
            assert_eq!(root_stifling_sum(i, 3).unwrap(), expect, "S*({i},3)");
        }
    }

    #[test]
    fn offspring_pmf_d2_k1() {
        let pmf = offspring_pmf(params(2, 1));
        assert_eq!(pmf.mass(0), r(1, 3));
        assert_eq!(pmf.mass(1), r(4, 9));
        assert_eq!(pmf.mass(2), r(2, 9));
    }

    #[test]
    fn offspring_pmf_d2_k2() {
        let pmf = offspring_pmf(params(2, 2));
        assert_eq!(pmf.mass(0), r(1, 9));
        assert_eq!(pmf.mass(1), r(4, 9));
        assert_eq!(pmf.mass(2), r(4, 9));
    }

    #[test]
    fn root_pmf_d2() {
        let pmf = root_pmf(params(2, 1));
        assert_eq!(pmf.mass(1), r(3, 9));
        assert_eq!(pmf.mass(2), r(4, 9));
        assert_eq!(pmf.mass(3), r(2, 9));
        let pmf = root_pmf(params(2, 2));
        assert_eq!(pmf.mass(1), r(1, 9));
        assert_eq!(pmf.mass(2), r(4, 9));
        assert_eq!(pmf.mass(3), r(4, 9));
    }

    #[test]
    fn offspring_means() {
        assert_eq!(offspring_mean(params(2, 1)), r(8, 9));
        assert_eq!(offspring_mean(params(2, 2)), r(4, 3));
        assert!(offspring_mean(params(3, 1)) > BigRational::one());
    }

    #[test]
    fn mean_supercriticality_thresholds() {
        // k = 1: supercritical iff d >= 3
        assert!(offspring_mean(params(2, 1)) < BigRational::one());
        for d in 3..=8 {
            assert!(offspring_mean(params(d, 1)) > BigRational::one(), "d={d}");
        }
        // k >= 2: always supercritical
        for d in 2..=8 {
            for k in 2..=4 {
                assert!(offspring_mean(params(d, k)) > BigRational::one(), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn k1_reduces_to_first_repeat_laws() {
        // offspring: C(d,i) (i+1)! / (d+1)^(i+1); root: i! C(d+1,i) i / (d+1)^(i+1)
        for d in 2..=8u64 {
            let pmf = offspring_pmf(params(d as u32, 1));
            for i in 0..=d {
                let expect = BigRational::new(
                    binomial(d, i) * factorial(i + 1),
                    BigInt::from(d + 1).pow((i + 1) as u32),
                );
                assert_eq!(pmf.mass(i), expect, "offspring d={d} i={i}");
            }
            let pmf = root_pmf(params(d as u32, 1));
            for i in 1..=d + 1 {
                let expect = BigRational::new(
                    factorial(i) * binomial(d + 1, i) * BigInt::from(i),
                    BigInt::from(d + 1).pow((i + 1) as u32),
                );
                assert_eq!(pmf.mass(i), expect, "root d={d} i={i}");
            }
        }
    }

    #[test]
    fn second_stifling_two_offspring_identity() {
        // P(X^(2) = 2) = 18 d (d-1) / (d+1)^4
        for d in 2..=8u64 {
            let pmf = offspring_pmf(params(d as u32, 2));
            let expect = BigRational::new(
                BigInt::from(18 * d * (d - 1)),
                BigInt::from(d + 1).pow(4),
            );
            assert_eq!(pmf.mass(2), expect, "d={d}");
        }
    }

    #[test]
    fn matches_contact_sequence_enumeration() {
        // independent oracle: exhaustive enumeration over stifling-position
        // subsets of contact sequences
        for d in 2..=4 {
            for k in 1..=3 {
                let p = params(d, k);
                let pmf = offspring_pmf(p);
                let oracle_pmf = oracle::offspring_by_sequence_enumeration(p);
                for i in 0..=u64::from(d) {
                    assert_eq!(pmf.mass(i), oracle_pmf[i as usize], "offspring d={d} k={k} i={i}");
                }
                let pmf = root_pmf(p);
                let oracle_pmf = oracle::root_by_sequence_enumeration(p);
                for i in 1..=u64::from(d) + 1 {
                    assert_eq!(pmf.mass(i), oracle_pmf[i as usize], "root d={d} k={k} i={i}");
                }
            }
        }
    }

    #[test]
    fn pgf_closed_forms() {
        // d=2, k=1: (2s^2 + 4s + 3)/9
        let p = params(2, 1);
        for s in [0.0, 0.25, 0.5, 0.9, 1.0] {
            let expect = (2.0 * s * s + 4.0 * s + 3.0) / 9.0;
            assert!((offspring_pgf(p, s).unwrap() - expect).abs() < 1e-15);
        }
        // d=2, k=2: (1 + 4s + 4s^2)/9
        let p = params(2, 2);
        for s in [0.0, 0.3, 1.0] {
            let expect = (1.0 + 4.0 * s + 4.0 * s * s) / 9.0;
            assert!((offspring_pgf(p, s).unwrap() - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn pgf_rejects_out_of_range() {
        assert!(offspring_pgf(params(2, 1), -0.1).is_err());
        assert!(offspring_pgf(params(2, 1), 1.5).is_err());
    }

    #[test]
    fn wrong_exponent_breaks_normalization() {
        // mutation check: with (d+1)^(i+1) instead of (d+1)^(i+k) the masses
        // stop summing to one, so the constructor rejects them
        let d = 2u64;
        let k = 2u64;
        let base = BigInt::from(d + 1);
        let entries: Vec<_> = (0..=d)
            .map(|i| {
                let numer = binomial(d, i) * factorial(i + 1) * nested_product_sum(i + 1, k);
                (i, BigRational::new(numer, base.pow((i + 1) as u32)))
            })
            .collect();
        assert!(ExactPmf::proper(entries).is_err());
    }

    proptest! {
        #[test]
        fn nested_sum_matches_enumeration(i in 0u64..7, k in 1u64..5) {
            let dp = stifling_sum(i, k).unwrap();
            let brute = oracle::stifling_sum_by_enumeration(i + 1, k);
            prop_assert_eq!(dp, brute);
        }

        #[test]
        fn pmfs_normalize(d in 2u32..12, k in 1u32..5) {
            let p = params(d, k);
            prop_assert!(offspring_pmf(p).total_mass().is_one());
            prop_assert!(root_pmf(p).total_mass().is_one());
            prop_assert_eq!(root_pmf(p).support_max(), Some(u64::from(d) + 1));
        }

        #[test]
        fn pgf_at_one_is_one(d in 2u32..10, k in 1u32..4) {
            let p = params(d, k);
            // exact in rational mode
            let one = BigRational::one();
            prop_assert_eq!(offspring_pmf(p).pgf::<BigRational>(&one), BigRational::one());
            // within 1e-14 in float mode
            let v: f64 = offspring_pgf(p, 1.0).unwrap();
            prop_assert!((v - 1.0).abs() < 1e-14);
        }

        #[test]
        fn float_projection_tracks_exact(d in 2u32..10, k in 1u32..4) {
            let pmf = offspring_pmf(params(d, k));
            for (v, f) in pmf.to_f64_entries() {
                let exact = pmf.mass(v).to_f64().unwrap();
                prop_assert!((f - exact).abs() <= f64::EPSILON * exact.abs());
            }
        }
    }
}
