//! Total number of individuals ever informed.
//!
//! The total progeny `T` of the branching process (initial count
//! distributed as the root law, offspring as the offspring law) counts
//! every informed vertex except the initial spreader; `S_inf = T + 1`
//! includes it. The pmf comes from the size-biased identity
//! `P(T = i) = sum_n P(root = n) * (n/i) * P(X_1 + ... + X_i = i - n)`,
//! with the iid-sum probabilities extracted as exact polynomial
//! coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::distributions::{offspring_mean, offspring_pmf, root_pmf};
use crate::error::{Error, Result};
use crate::exact::IntPolynomial;
use crate::params::ModelParams;
use crate::pmf::ExactPmf;

/// Offspring pgf as an integer polynomial over a common denominator,
/// reduced by content; `poly(1) = denom`.
struct PgfFraction {
    poly: IntPolynomial,
    denom: BigInt,
}

fn offspring_pgf_fraction(params: ModelParams) -> PgfFraction {
    let pmf = offspring_pmf(params);
    let d = u64::from(params.degree());
    let k = u64::from(params.stifling_threshold());
    let base = BigInt::from(d + 1);
    let common = base.pow((d + k) as u32);
    let coeffs: Vec<BigInt> = (0..=d)
        .map(|i| {
            let m = pmf.mass(i);
            // mass * common is integral: common is the largest denominator
            let scaled = m.numer() * &common / m.denom();
            scaled
        })
        .collect();
    let poly = IntPolynomial::new(coeffs);
    let g = poly.content().max(BigInt::one());
    let g = num_integer::Integer::gcd(&g, &common);
    PgfFraction {
        poly: poly.div_exact(&g),
        denom: common / g,
    }
}

/// `P(X_1 + ... + X_i = j)` for iid draws from the offspring law:
/// the coefficient of `s^j` in the `i`-th pgf power, exactly.
pub fn iid_sum_coefficient(params: ModelParams, i: u64, j: u64) -> Result<BigRational> {
    if i < 1 {
        return Err(Error::InvalidArgument(format!(
            "iid sum needs i >= 1 (got {i})"
        )));
    }
    let frac = offspring_pgf_fraction(params);
    let power = frac.poly.pow(i);
    let numer = power.coeff(j as usize);
    if numer.is_zero() {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::new(numer, frac.denom.pow(i as u32)))
}

/// Exact pmf of `T` for `i = 1..=i_max`. Always defective: truncation
/// leaves mass in the tail, and for supercritical parameters the deficit
/// converges to the survival probability instead of zero.
pub fn progeny_pmf(params: ModelParams, i_max: u64) -> Result<ExactPmf> {
    if i_max < 1 {
        return Err(Error::InvalidArgument("i_max must be >= 1".into()));
    }
    let frac = offspring_pgf_fraction(params);
    let root: Vec<(u64, BigRational)> = root_pmf(params)
        .entries()
        .to_vec();
    let mut entries = Vec::with_capacity(i_max as usize);
    let mut power = IntPolynomial::one();
    let mut denom_power = BigInt::one();
    for i in 1..=i_max {
        power = power.mul(&frac.poly);
        denom_power *= &frac.denom;
        let mut mass = BigRational::zero();
        for (n, pn) in &root {
            if i < *n {
                continue; // fewer vertices than initial spreaders: impossible
            }
            let coeff = power.coeff((i - n) as usize);
            if coeff.is_zero() {
                continue;
            }
            let weight = BigRational::new(BigInt::from(*n), BigInt::from(i));
            mass += pn * weight * BigRational::new(coeff, denom_power.clone());
        }
        entries.push((i, mass));
    }
    ExactPmf::defective(entries)
}

/// Float fast path for large truncation depths: the same size-biased
/// mixture evaluated through an `f64` convolution. Returns
/// `P(T = i)` for `i = 1..=i_max`.
#[must_use]
pub fn progeny_pmf_f64(params: ModelParams, i_max: u64) -> Vec<f64> {
    let offspring: Vec<f64> = {
        let pmf = offspring_pmf(params);
        let max = pmf.support_max().unwrap_or(0) as usize;
        let mut dense = vec![0.0; max + 1];
        for (v, m) in pmf.to_f64_entries() {
            dense[v as usize] = m;
        }
        dense
    };
    let root: Vec<(u64, f64)> = root_pmf(params).to_f64_entries();
    let mut dist = vec![1.0f64];
    let mut out = Vec::with_capacity(i_max as usize);
    for i in 1..=i_max {
        // dist <- dist * offspring; indices beyond i_max - 1 are never
        // read, at this step or any later one
        let mut next = vec![0.0f64; (dist.len() + offspring.len() - 1).min(i_max as usize)];
        for (a, &ca) in dist.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (b, &cb) in offspring.iter().enumerate() {
                if a + b < next.len() {
                    next[a + b] += ca * cb;
                }
            }
        }
        dist = next;
        let mut mass = 0.0;
        for &(n, pn) in &root {
            if i >= n {
                let j = (i - n) as usize;
                if j < dist.len() {
                    mass += pn * (n as f64 / i as f64) * dist[j];
                }
            }
        }
        out.push(mass);
    }
    out
}

/// Expected totals; finite only in the subcritical case.
#[derive(Debug, Clone, PartialEq)]
pub struct ProgenyMeans {
    /// `E[T]`: informed vertices, the initial spreader excluded.
    pub excluding_initial: BigRational,
    /// `E[S_inf] = E[T] + 1`: every vertex ever informed.
    pub including_initial: BigRational,
}

/// `E[T] = E[root count] / (1 - offspring mean)`, exactly. Rejects
/// parameters with offspring mean at or above one.
pub fn progeny_mean(params: ModelParams) -> Result<ProgenyMeans> {
    let mu = offspring_mean(params);
    if mu >= BigRational::one() {
        return Err(Error::SupercriticalMean {
            mean: mu.to_string(),
        });
    }
    let excluding = root_pmf(params).mean() / (BigRational::one() - mu);
    Ok(ProgenyMeans {
        including_initial: &excluding + BigRational::one(),
        excluding_initial: excluding,
    })
}

/// Closed coefficient form of the progeny pmf for `d = 2`, `k = 1`:
/// `P(T = i) = (3 c_{i-1} + 8 c_{i-2} + 6 c_{i-3}) / (9 i)` with
/// `c_j = [s^j] ((2s^2 + 4s + 3)/9)^i`, negative indices dropped.
/// Independent of the generic mixture; used as its cross-check.
pub fn progeny_pmf_d2_closed_form(i_max: u64) -> Result<Vec<(u64, BigRational)>> {
    if i_max < 1 {
        return Err(Error::InvalidArgument("i_max must be >= 1".into()));
    }
    let base = IntPolynomial::new(vec![BigInt::from(3), BigInt::from(4), BigInt::from(2)]);
    let nine = BigInt::from(9);
    let mut power = IntPolynomial::one();
    let mut nine_power = BigInt::one();
    let mut out = Vec::with_capacity(i_max as usize);
    for i in 1..=i_max {
        power = power.mul(&base);
        nine_power *= &nine;
        let mut numer = BigInt::zero();
        for (w, back) in [(3u64, 1u64), (8, 2), (6, 3)] {
            if i >= back {
                numer += BigInt::from(w) * power.coeff((i - back) as usize);
            }
        }
        let mass = BigRational::new(numer, &nine_power * &nine * BigInt::from(i));
        out.push((i, mass));
    }
    Ok(out)
}

/// Truncated mean `sum_{i <= i_max} i * P(T = i)` as a float; the exact
/// masses are the source, only the final sum is floating point.
#[must_use]
pub fn truncated_mean(pmf: &ExactPmf) -> f64 {
    pmf.entries()
        .iter()
        .map(|(i, m)| *i as f64 * m.to_f64().unwrap_or(f64::NAN))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn params(d: u32, k: u32) -> ModelParams {
        ModelParams::new(d, k).unwrap()
    }

    #[test]
    fn iid_sum_single_variable_is_offspring_law() {
        let p = params(2, 1);
        assert_eq!(iid_sum_coefficient(p, 1, 1).unwrap(), r(4, 9));
        assert_eq!(iid_sum_coefficient(p, 1, 0).unwrap(), r(1, 3));
    }

    #[test]
    fn iid_sum_two_variables() {
        // (2s^2+4s+3)^2 = 4s^4 + 16s^3 + 28s^2 + 24s + 9 over 81
        let p = params(2, 1);
        assert_eq!(iid_sum_coefficient(p, 2, 1).unwrap(), r(24, 81));
        assert_eq!(iid_sum_coefficient(p, 2, 4).unwrap(), r(4, 81));
    }

    #[test]
    fn iid_sum_beyond_support_is_zero() {
        let p = params(2, 1);
        assert!(iid_sum_coefficient(p, 3, 7).unwrap().is_zero());
        assert!(iid_sum_coefficient(p, 0, 0).is_err());
    }

    #[test]
    fn progeny_head_values() {
        let pmf = progeny_pmf(params(2, 1), 10).unwrap();
        assert_eq!(pmf.mass(1), r(1, 9));
        assert_eq!(pmf.mass(2), r(8, 81));
    }

    #[test]
    fn progeny_matches_recursive_convolution() {
        // independent oracle route, no size-biased weights
        for (d, k) in [(2u32, 1u32), (2, 2), (3, 1)] {
            let p = params(d, k);
            let pmf = progeny_pmf(p, 18).unwrap();
            let rec = oracle::progeny_by_recursive_convolution(p, 18);
            for i in 1..=18u64 {
                assert_eq!(pmf.mass(i), rec[i as usize], "d={d} k={k} i={i}");
            }
        }
    }

    #[test]
    fn closed_form_matches_mixture() {
        let pmf = progeny_pmf(params(2, 1), 50).unwrap();
        let closed = progeny_pmf_d2_closed_form(50).unwrap();
        for (i, mass) in closed {
            assert_eq!(pmf.mass(i), mass, "i={i}");
        }
    }

    #[test]
    fn float_path_tracks_exact() {
        let exact = progeny_pmf(params(2, 1), 60).unwrap();
        let float = progeny_pmf_f64(params(2, 1), 60);
        for (idx, f) in float.iter().enumerate() {
            let e = exact.mass(idx as u64 + 1).to_f64().unwrap();
            assert!((f - e).abs() < 1e-14, "i={} {f} vs {e}", idx + 1);
        }
    }

    #[test]
    fn means_d2_k1() {
        let m = progeny_mean(params(2, 1)).unwrap();
        assert_eq!(m.excluding_initial, r(17, 1));
        assert_eq!(m.including_initial, r(18, 1));
    }

    #[test]
    fn mean_rejects_supercritical() {
        assert!(matches!(
            progeny_mean(params(3, 1)),
            Err(Error::SupercriticalMean { .. })
        ));
        assert!(progeny_mean(params(2, 2)).is_err());
    }

    #[test]
    fn subcritical_mass_accumulates() {
        // cumulative mass reaches 99.668...% by i = 200 and crosses 0.999
        // near i = 273
        let pmf = progeny_pmf(params(2, 1), 300).unwrap();
        let head: BigRational = pmf
            .entries()
            .iter()
            .filter(|(i, _)| *i <= 200)
            .map(|(_, m)| m.clone())
            .sum();
        let head = head.to_f64().unwrap();
        assert!((head - 0.996_686_266).abs() < 1e-8, "mass at 200 = {head}");
        let total = pmf.total_mass().to_f64().unwrap();
        assert!(total >= 0.999, "mass at 300 = {total}");
    }

    #[test]
    fn supercritical_deficit_tracks_survival() {
        // deficit of the truncated pmf approaches theta from below
        let masses = progeny_pmf_f64(params(3, 1), 4000);
        let deficit = 1.0 - masses.iter().sum::<f64>();
        let theta = crate::survival::survival_probability(params(3, 1), 1e-12).unwrap();
        assert!((deficit - theta).abs() < 2e-4, "deficit {deficit} vs theta {theta}");
    }
}
