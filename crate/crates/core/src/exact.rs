//! Exact integer building blocks: factorials, binomials, and dense
//! integer polynomials with arbitrary-precision coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// `n!` over arbitrary-precision integers.
#[must_use]
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= j;
    }
    acc
}

/// Binomial coefficient `C(n, k)` over arbitrary-precision integers.
/// Every intermediate division is exact.
#[must_use]
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 1..=k {
        acc = acc * (n - k + j) / j;
    }
    acc
}

/// Dense univariate polynomial with `BigInt` coefficients, ascending by
/// power. The trailing coefficient is non-zero unless the polynomial is
/// zero (empty coefficient vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    #[must_use]
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    #[must_use]
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    #[must_use]
    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    #[must_use]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `s^j` (zero beyond the degree).
    #[must_use]
    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_else(BigInt::zero)
    }

    #[must_use]
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Schoolbook product. Degrees stay small here; exactness matters,
    /// speed does not.
    #[must_use]
    pub fn mul(&self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in rhs.coeffs.iter().enumerate() {
                out[a + b] += ca * cb;
            }
        }
        IntPolynomial::new(out)
    }

    /// `self^exp` by binary exponentiation.
    #[must_use]
    pub fn pow(&self, mut exp: u64) -> IntPolynomial {
        let mut acc = IntPolynomial::one();
        let mut sq = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Horner evaluation in any scalar.
    pub fn eval<S: Scalar>(&self, s: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s.clone() + S::from_ratio(&num_rational::BigRational::from_integer(c.clone()));
        }
        acc
    }

    /// Greatest common divisor of all coefficients (zero for the zero
    /// polynomial).
    #[must_use]
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides every coefficient by `g`; `g` must divide the content.
    #[must_use]
    pub fn div_exact(&self, g: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| c / g).collect())
    }
}
