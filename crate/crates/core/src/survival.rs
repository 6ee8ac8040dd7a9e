//! Extinction fixed point and survival probability.
//!
//! The rumor survives with positive probability exactly when the
//! embedded branching process does. Its extinction probability is the
//! smallest non-negative root `psi` of `phi(s) = s` for the offspring
//! generating function `phi`, and the survival probability is
//! `theta = 1 - sum_i P(root = i) psi^i`.

use num_rational::BigRational;
use num_traits::One;

use crate::distributions::{offspring_mean, offspring_pmf, root_pmf};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::scalar::RealScalar;

/// Default solver tolerance; Table regressions compare at 5e-7, so this
/// leaves five orders of headroom.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Iteration cap; hitting it is reported, never silently truncated.
pub const MAX_ITERATIONS: u64 = 10_000_000;

/// Outcome of the fixed-point search.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FixedPointResult {
    /// Smallest non-negative root of `phi(s) = s` in `[0, 1]`.
    pub psi: f64,
    pub iterations: u64,
    /// `|phi(psi) - psi|` at the returned value.
    pub residual: f64,
    pub converged: bool,
}

/// Monotone fixed-point iteration `s_0 = 0`, `s_{n+1} = phi(s_n)` on the
/// dense coefficient vector of a pgf. The iterates increase toward the
/// smallest root, so no bracketing is needed.
pub fn smallest_pgf_fixed_point<F: RealScalar>(coeffs: &[F], tol: F, cap: u64) -> (F, u64, F, bool) {
    let horner = |s: F| -> F {
        let mut acc = F::zero();
        for c in coeffs.iter().rev() {
            acc = acc * s + *c;
        }
        acc
    };
    let mut s = F::zero();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cap {
        let next = horner(s);
        iterations += 1;
        if (next - s).abs() < tol {
            s = next;
            converged = true;
            break;
        }
        s = next;
    }
    let residual = (horner(s) - s).abs();
    (s, iterations, residual, converged)
}

fn validate_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol < 1e-6) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must satisfy 0 < tol < 1e-6 (got {tol})"
        )));
    }
    Ok(())
}

/// Smallest root of `phi(s) = s` for the offspring law of `params`.
///
/// Supercriticality is decided by the exact rational mean, so the
/// subcritical and critical cases return `psi = 1` exactly without
/// touching floats.
pub fn extinction_fixed_point(params: ModelParams, tol: f64) -> Result<FixedPointResult> {
    validate_tol(tol)?;
    if offspring_mean(params) <= BigRational::one() {
        return Ok(FixedPointResult {
            psi: 1.0,
            iterations: 0,
            residual: 0.0,
            converged: true,
        });
    }
    let pmf = offspring_pmf(params);
    let max = pmf.support_max().unwrap_or(0) as usize;
    let mut coeffs = vec![0.0f64; max + 1];
    for (v, m) in pmf.to_f64_entries() {
        coeffs[v as usize] = m;
    }
    let (psi, iterations, residual, converged) =
        smallest_pgf_fixed_point(&coeffs, tol, MAX_ITERATIONS);
    Ok(FixedPointResult {
        psi,
        iterations,
        residual,
        converged,
    })
}

/// Survival probability `theta(d, k)`.
///
/// Exactly zero in the subcritical/critical case (the root law sums to
/// one); otherwise `1 - sum_i P(root = i) psi^i` with `psi` from
/// [`extinction_fixed_point`]. Propagates solver non-convergence.
pub fn survival_probability(params: ModelParams, tol: f64) -> Result<f64> {
    let fp = extinction_fixed_point(params, tol)?;
    survival_from_fixed_point(params, &fp)
}

/// `theta` from an already computed fixed point.
pub fn survival_from_fixed_point(params: ModelParams, fp: &FixedPointResult) -> Result<f64> {
    if !fp.converged {
        return Err(Error::NonConvergence {
            iterations: fp.iterations,
            residual: fp.residual,
        });
    }
    if fp.psi >= 1.0 {
        return Ok(0.0);
    }
    let root = root_pmf(params);
    let mut extinct = 0.0f64;
    for (i, mass) in root.to_f64_entries() {
        extinct += mass * crate::scalar::scalar_pow(&fp.psi, i);
    }
    Ok(1.0 - extinct)
}

/// Grid of survival probabilities; a failing cell carries its error
/// without aborting the rest.
#[derive(Debug)]
pub struct ThetaTable {
    pub d_values: Vec<u32>,
    pub k_values: Vec<u32>,
    /// `cells[ki][di]` corresponds to `k_values[ki]`, `d_values[di]`.
    pub cells: Vec<Vec<Result<f64>>>,
}

pub fn theta_table(d_values: &[u32], k_values: &[u32], tol: f64) -> ThetaTable {
    let cells = k_values
        .iter()
        .map(|&k| {
            d_values
                .iter()
                .map(|&d| ModelParams::new(d, k).and_then(|p| survival_probability(p, tol)))
                .collect()
        })
        .collect();
    ThetaTable {
        d_values: d_values.to_vec(),
        k_values: k_values.to_vec(),
        cells,
    }
}
