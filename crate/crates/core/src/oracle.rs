//! Independent cross-check oracles.
//!
//! Everything here recomputes a quantity the analytic modules produce,
//! through a route that shares no code with them: exhaustive enumeration
//! of contact sequences, brute-force nested sums, and a recursive
//! convolution for the total progeny. Slow and only usable for small
//! parameters, which is the point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::params::ModelParams;

/// Brute-force nested sum over non-decreasing sequences
/// `1 <= m_1 <= ... <= m_{k-1} <= upper` of the product of entries.
#[must_use]
pub fn stifling_sum_by_enumeration(upper: u64, k: u64) -> BigInt {
    fn rec(level: u64, lo: u64, upper: u64) -> BigInt {
        if level == 0 {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for m in lo..=upper {
            acc += BigInt::from(m) * rec(level - 1, m, upper);
        }
        acc
    }
    rec(k - 1, 1, upper)
}

/// Offspring law by exhaustive enumeration of contact sequences.
///
/// A non-root spreader starts with one informed neighbor (its parent)
/// and `d` ignorant ones. For each target count `i`, every placement of
/// the first `k - 1` stifling experiences among contacts `1..=i+k-1`
/// (the `k`-th lands on contact `i + k`) contributes the probability of
/// that exact sequence, multiplied out contact by contact.
#[must_use]
pub fn offspring_by_sequence_enumeration(params: ModelParams) -> Vec<BigRational> {
    sequence_enumeration(params, 1)
}

/// Root law by the same enumeration, starting with zero informed
/// neighbors and `d + 1` ignorant ones. Index 0 of the result is always
/// zero: the root's first contact necessarily informs.
#[must_use]
pub fn root_by_sequence_enumeration(params: ModelParams) -> Vec<BigRational> {
    sequence_enumeration(params, 0)
}

/// `initially_informed` is 1 for a non-root spreader (parent) and 0 for
/// the root. Support is `{0, ..., neighbors - initially_informed}`.
fn sequence_enumeration(params: ModelParams, initially_informed: u64) -> Vec<BigRational> {
    let neighbors = u64::from(params.neighbor_count());
    let k = u64::from(params.stifling_threshold());
    let max_informs = neighbors - initially_informed;
    let mut out = vec![BigRational::zero(); max_informs as usize + 1];
    for (i, slot) in out.iter_mut().enumerate() {
        let i = i as u64;
        let length = i + k; // the k-th stifling experience ends the sequence
        let mut positions = Vec::with_capacity(k as usize - 1);
        *slot = enumerate_positions(&mut positions, 1, length, k - 1, |stifling_at| {
            sequence_probability(neighbors, initially_informed, length, stifling_at)
        });
    }
    out
}

/// Sums `f` over all increasing choices of `remaining` stifling positions
/// in `next..length` (position `length` itself is always stifling).
fn enumerate_positions<F>(chosen: &mut Vec<u64>, next: u64, length: u64, remaining: u64, f: F) -> BigRational
where
    F: Fn(&[u64]) -> BigRational + Copy,
{
    if remaining == 0 {
        return f(chosen);
    }
    let mut acc = BigRational::zero();
    // leave room for the remaining - 1 later positions before `length`
    for p in next..=(length - remaining) {
        chosen.push(p);
        acc += enumerate_positions(chosen, p + 1, length, remaining - 1, f);
        chosen.pop();
    }
    acc
}

/// Probability of one fully specified contact sequence: contacts at the
/// listed positions (and at `length`) are stifling experiences, all
/// others inform a fresh neighbor.
fn sequence_probability(
    neighbors: u64,
    initially_informed: u64,
    length: u64,
    stifling_at: &[u64],
) -> BigRational {
    let total = BigInt::from(neighbors);
    let mut informed = initially_informed;
    let mut prob = BigRational::one();
    for t in 1..=length {
        let stifling = t == length || stifling_at.contains(&t);
        if stifling {
            prob *= BigRational::new(BigInt::from(informed), total.clone());
        } else {
            prob *= BigRational::new(BigInt::from(neighbors - informed), total.clone());
            informed += 1;
        }
        if prob.is_zero() {
            return prob;
        }
    }
    prob
}

/// Total-progeny law by recursive convolution, independent of the
/// size-biased route used by the progeny module.
///
/// The progeny count of a single spreader (itself included) has pgf `g`
/// solving `g(s) = s * phi(g(s))`; iterating that map fixes one further
/// coefficient per pass. The root's total (root excluded) then mixes the
/// single-spreader law over the root offspring count. Returns
/// `P(T = i)` for `i = 0..=i_max` (index 0 is zero).
#[must_use]
pub fn progeny_by_recursive_convolution(params: ModelParams, i_max: usize) -> Vec<BigRational> {
    let offspring: Vec<BigRational> = dense_masses(&crate::distributions::offspring_pmf(params));
    let root: Vec<BigRational> = dense_masses(&crate::distributions::root_pmf(params));

    // g <- s * phi(g), truncated beyond s^i_max
    let mut g = vec![BigRational::zero(); i_max + 1];
    for _ in 0..=i_max {
        let composed = compose_truncated(&offspring, &g, i_max);
        let mut next = vec![BigRational::zero(); i_max + 1];
        for (j, c) in composed.into_iter().enumerate() {
            if j < i_max {
                next[j + 1] = c;
            }
        }
        g = next;
    }

    // mix over the root offspring count
    let mixed = compose_truncated(&root, &g, i_max);
    mixed.into_iter().take(i_max + 1).collect()
}

fn dense_masses(pmf: &crate::pmf::ExactPmf) -> Vec<BigRational> {
    let max = pmf.support_max().unwrap_or(0) as usize;
    let mut out = vec![BigRational::zero(); max + 1];
    for (v, m) in pmf.entries() {
        out[*v as usize] = m.clone();
    }
    out
}

/// `sum_x outer[x] * inner(s)^x`, truncated beyond `s^max_deg`.
fn compose_truncated(outer: &[BigRational], inner: &[BigRational], max_deg: usize) -> Vec<BigRational> {
    let mut acc = vec![BigRational::zero(); max_deg + 1];
    let mut power = vec![BigRational::zero(); max_deg + 1];
    power[0] = BigRational::one();
    for (x, w) in outer.iter().enumerate() {
        if x > 0 {
            power = mul_truncated(&power, inner, max_deg);
        }
        if w.is_zero() {
            continue;
        }
        for (a, p) in acc.iter_mut().zip(power.iter()) {
            *a += w * p;
        }
    }
    acc
}

fn mul_truncated(a: &[BigRational], b: &[BigRational], max_deg: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); max_deg + 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() || i > max_deg {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if i + j > max_deg {
                break;
            }
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    out
}
