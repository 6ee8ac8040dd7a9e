//! Finite-support probability mass functions with exact rational masses.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A pmf over non-negative integers with exact rational masses.
///
/// A *proper* pmf sums exactly to one. A *defective* pmf sums to at most
/// one and records the missing mass as its deficit; truncated progeny
/// distributions and supercritical totals are defective by nature.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactPmf {
    entries: Vec<(u64, BigRational)>,
    deficit: BigRational,
    defective: bool,
}

impl ExactPmf {
    /// Builds a proper pmf. Fails unless masses are non-negative, support
    /// values strictly increase, and the masses sum exactly to one.
    pub fn proper(entries: Vec<(u64, BigRational)>) -> Result<Self> {
        let total = Self::validate(&entries)?;
        if !total.is_one() {
            return Err(Error::InvalidArgument(format!(
                "masses sum to {total}, expected exactly 1"
            )));
        }
        Ok(ExactPmf {
            entries,
            deficit: BigRational::zero(),
            defective: false,
        })
    }

    /// Builds a defective pmf; masses must sum to at most one and the
    /// shortfall is recorded as the deficit.
    pub fn defective(entries: Vec<(u64, BigRational)>) -> Result<Self> {
        let total = Self::validate(&entries)?;
        if total > BigRational::one() {
            return Err(Error::InvalidArgument(format!(
                "masses sum to {total} > 1"
            )));
        }
        let deficit = BigRational::one() - total;
        Ok(ExactPmf {
            entries,
            deficit,
            defective: true,
        })
    }

    fn validate(entries: &[(u64, BigRational)]) -> Result<BigRational> {
        let mut total = BigRational::zero();
        let mut prev: Option<u64> = None;
        for (v, m) in entries {
            if *m < BigRational::zero() {
                return Err(Error::InvalidArgument(format!("negative mass at value {v}")));
            }
            if prev.is_some_and(|p| p >= *v) {
                return Err(Error::InvalidArgument(
                    "support values must be strictly increasing".into(),
                ));
            }
            prev = Some(*v);
            total += m;
        }
        Ok(total)
    }

    #[must_use]
    pub fn entries(&self) -> &[(u64, BigRational)] {
        &self.entries
    }

    /// Mass at `v`, zero outside the support.
    #[must_use]
    pub fn mass(&self, v: u64) -> BigRational {
        self.entries
            .iter()
            .find(|(value, _)| *value == v)
            .map_or_else(BigRational::zero, |(_, m)| m.clone())
    }

    #[must_use]
    pub fn total_mass(&self) -> BigRational {
        self.entries
            .iter()
            .fold(BigRational::zero(), |acc, (_, m)| acc + m)
    }

    #[must_use]
    pub fn deficit(&self) -> &BigRational {
        &self.deficit
    }

    #[must_use]
    pub fn is_defective(&self) -> bool {
        self.defective
    }

    #[must_use]
    pub fn support_max(&self) -> Option<u64> {
        self.entries.last().map(|(v, _)| *v)
    }

    /// Exact mean `sum v * m(v)`.
    #[must_use]
    pub fn mean(&self) -> BigRational {
        self.entries.iter().fold(BigRational::zero(), |acc, (v, m)| {
            acc + m * BigRational::from_integer((*v).into())
        })
    }

    /// Generating function `sum m(v) s^v`, evaluated by dense Horner in
    /// any scalar: floats for solver work, rationals for exact identities.
    pub fn pgf<S: Scalar>(&self, s: &S) -> S {
        let Some(max) = self.support_max() else {
            return S::zero();
        };
        let mut dense = vec![BigRational::zero(); max as usize + 1];
        for (v, m) in &self.entries {
            dense[*v as usize] = m.clone();
        }
        let mut acc = S::zero();
        for c in dense.iter().rev() {
            acc = acc * s.clone() + S::from_ratio(c);
        }
        acc
    }

    /// Float projection of the masses. A derived view: the rationals stay
    /// the source of truth.
    #[must_use]
    pub fn to_f64_entries(&self) -> Vec<(u64, f64)> {
        self.entries
            .iter()
            .map(|(v, m)| (*v, m.to_f64().unwrap_or(f64::NAN)))
            .collect()
    }
}
