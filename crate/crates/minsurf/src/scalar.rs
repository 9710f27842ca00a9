//! Coefficient backends. Every algebraic structure in this crate is generic over
//! [`Scalar`], instantiated either with `f64` or with exact big rationals ([`Rat`]).
//! Identity-style checks (isothermality, harmonic completion, basis changes) are
//! meant to run on the exact backend; sampling and meshing run on floats.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// Exact rational scalar. Arbitrary precision, never rounds.
pub type Rat = BigRational;

/// Field of coefficients the crate's polynomials are built over.
///
/// `EXACT` backends compare with `==` and strip only true zeros; the float
/// backend treats magnitudes below [`crate::tol::COEFF_STRIP`] as zero when
/// normalizing polynomial representations.
pub trait Scalar: Clone + PartialEq + Num + Signed + Neg<Output = Self> + Debug + Display {
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    /// Exact quotient `num/den`. `den` must be nonzero.
    fn ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// True when a trailing/stored coefficient of this size should be dropped.
    fn negligible(&self) -> bool;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn negligible(&self) -> bool {
        self.abs() < crate::tol::COEFF_STRIP
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn negligible(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Exact conversion of a float into a rational (every finite `f64` is dyadic).
/// Rejects NaN and infinities, which must never enter the algebraic layer.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    if x.is_finite() {
        BigRational::from_float(x)
    } else {
        None
    }
}

/// |a - b| / max(|a|, |b|), zero when both vanish.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m == 0.0 {
        0.0
    } else {
        (a - b).abs() / m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_reduces() {
        assert_eq!(Rat::ratio(2, 4), Rat::ratio(1, 2));
        assert_eq!(Scalar::to_f64(&Rat::ratio(-3, 6)), -0.5);
    }

    #[test]
    fn float_negligibility_is_strict_on_rationals() {
        assert!(1e-15f64.negligible());
        assert!(!Rat::ratio(1, 1_000_000_000).negligible());
        assert!(Rat::from_int(0).negligible());
    }

    #[test]
    fn f64_to_rat_is_exact() {
        let r = rat_from_f64(0.375).unwrap();
        assert_eq!(r, Rat::ratio(3, 8));
        assert!(rat_from_f64(f64::NAN).is_none());
        assert!(rat_from_f64(f64::INFINITY).is_none());
    }

    #[test]
    fn rel_diff_handles_zero() {
        assert_eq!(rel_diff(0.0, 0.0), 0.0);
        assert!((rel_diff(1.0, 1.0 + 1e-12) - 1e-12).abs() < 1e-13);
    }
}
