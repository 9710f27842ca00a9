//! Univariate polynomials with complex coefficients, dense representation,
//! lowest degree first. The coefficient field is a [`Scalar`] backend, so the
//! same arithmetic runs exactly over rationals and approximately over floats.

use num_complex::Complex;
use thiserror::Error;

use crate::scalar::{rat_from_f64, Rat, Scalar};

pub type C<T> = Complex<T>;
pub type C64 = Complex<f64>;

#[derive(Debug, Error, PartialEq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("coefficient stream holds a non-finite value")]
    NonFinite,
}

/// Dense complex polynomial; `coeffs[k]` multiplies `z^k`.
/// Invariant: the trailing coefficient is non-negligible (zero poly is empty).
#[derive(Clone, PartialEq)]
pub struct ComplexPoly<T: Scalar> {
    coeffs: Vec<C<T>>,
}

fn c_negligible<T: Scalar>(c: &C<T>) -> bool {
    c.re.negligible() && c.im.negligible()
}

impl<T: Scalar> ComplexPoly<T> {
    pub fn new(mut coeffs: Vec<C<T>>) -> Self {
        while coeffs.last().is_some_and(c_negligible) {
            coeffs.pop();
        }
        ComplexPoly { coeffs }
    }

    pub fn zero() -> Self {
        ComplexPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C<T>) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(C::new(T::one(), T::zero()))
    }

    /// The identity polynomial z.
    pub fn z() -> Self {
        Self::new(vec![C::new(T::zero(), T::zero()), C::new(T::one(), T::zero())])
    }

    /// Real-coefficient constructor from (num, den) pairs, lowest degree first.
    pub fn from_real_ratios(pairs: &[(i64, i64)]) -> Self {
        Self::new(
            pairs
                .iter()
                .map(|&(n, d)| C::new(T::ratio(n, d), T::zero()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C<T> {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| C::new(T::zero(), T::zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the last non-negligible coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> ComplexPoly<U> {
        ComplexPoly::new(
            self.coeffs
                .iter()
                .map(|c| C::new(f(&c.re), f(&c.im)))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let zero = C::new(T::zero(), T::zero());
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &C<T>) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c.clone() * C::new(T::from_int(k as i64 + 1), T::zero()))
                .collect(),
        )
    }

    /// Antiderivative with value 0 at z = 0.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::new(T::zero(), T::zero())];
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c.clone() * C::new(T::ratio(1, k as i64 + 1), T::zero()));
        }
        Self::new(out)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &C<T>) -> C<T> {
        let mut acc = C::new(T::zero(), T::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    /// Largest coefficient modulus, measured in f64.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.re.to_f64().hypot(c.im.to_f64()))
            .fold(0.0, f64::max)
    }

    /// Euclidean division. Errors on a zero divisor; the remainder is returned
    /// as-is so callers can decide how exact the quotient must be.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return Ok((Self::zero(), self.clone()));
        }
        let lead = divisor.coeffs[dlen - 1].clone();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let zero = C::new(T::zero(), T::zero());
        let mut quot = vec![zero; qlen];
        for k in (0..qlen).rev() {
            let q = rem[k + dlen - 1].clone() / lead.clone();
            quot[k] = q.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * d.clone();
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }
}

impl ComplexPoly<f64> {
    /// Exact promotion of float coefficients into the rational backend.
    /// Errors if any coefficient is non-finite.
    pub fn to_exact(&self) -> Result<ComplexPoly<Rat>, PolyError> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let re = rat_from_f64(c.re).ok_or(PolyError::NonFinite)?;
            let im = rat_from_f64(c.im).ok_or(PolyError::NonFinite)?;
            out.push(C::new(re, im));
        }
        Ok(ComplexPoly::new(out))
    }
}

impl ComplexPoly<Rat> {
    pub fn to_f64(&self) -> ComplexPoly<f64> {
        self.map_scalar(|r| r.to_f64())
    }
}

impl<T: Scalar> std::fmt::Debug for ComplexPoly<T> {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(fm, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c_negligible(c))
            .map(|(k, c)| format!("({}+{}i)z^{}", c.re, c.im, k))
            .collect();
        write!(fm, "{}", terms.join(" + "))
    }
}

/// Wire format: array of [re, im] pairs, lowest degree first.
pub fn poly_from_json(text: &str) -> Result<ComplexPoly<f64>, serde_json::Error> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text)?;
    Ok(ComplexPoly::new(
        pairs.iter().map(|p| C::new(p[0], p[1])).collect(),
    ))
}

pub fn poly_to_json(p: &ComplexPoly<f64>) -> String {
    let pairs: Vec<[f64; 2]> = p.coeffs().iter().map(|c| [c.re, c.im]).collect();
    serde_json::to_string(&pairs).expect("number array serialization")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zr() -> ComplexPoly<Rat> {
        ComplexPoly::z()
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        let p = ComplexPoly::<f64>::new(vec![C::new(1.0, 0.0), C::new(0.0, 1e-16)]);
        assert_eq!(p.degree(), Some(0));
        let q = ComplexPoly::<Rat>::new(vec![
            C::new(Rat::from_int(1), Rat::from_int(0)),
            C::new(Rat::from_int(0), Rat::from_int(0)),
        ]);
        assert_eq!(q.degree(), Some(0));
        assert_eq!(ComplexPoly::<f64>::zero().degree(), None);
    }

    #[test]
    fn product_of_conjugate_linears() {
        // (z+1)(z-1) = z^2 - 1
        let p = zr().add(&ComplexPoly::one());
        let q = zr().sub(&ComplexPoly::one());
        let r = p.mul(&q);
        assert_eq!(r, ComplexPoly::from_real_ratios(&[(-1, 1), (0, 1), (1, 1)]));
    }

    #[test]
    fn derivative_and_antiderivative_invert() {
        // d/dz z^2 = 2z, and the antiderivative of 1 is z
        let sq = zr().mul(&zr());
        assert_eq!(sq.derivative(), zr().scale(&C::new(Rat::from_int(2), Rat::from_int(0))));
        assert_eq!(ComplexPoly::<Rat>::one().antiderivative(), zr());
        let p = ComplexPoly::<Rat>::from_real_ratios(&[(3, 2), (0, 1), (-5, 3), (7, 4)]);
        assert_eq!(p.antiderivative().derivative(), p);
    }

    #[test]
    fn horner_eval_matches_expansion() {
        let p = ComplexPoly::<f64>::new(vec![C::new(1.0, 0.0), C::new(0.0, 2.0), C::new(-3.0, 0.0)]);
        let z = C::new(0.5, -1.5);
        let direct = C::new(1.0, 0.0) + C::new(0.0, 2.0) * z + C::new(-3.0, 0.0) * z * z;
        let h = p.eval(&z);
        assert!((h - direct).norm() < 1e-15);
    }

    #[test]
    fn division_recovers_factors_exactly() {
        // (z^2 + 1) = (z + i)(z - i)
        let i = C::new(Rat::from_int(0), Rat::from_int(1));
        let num = zr().square().add(&ComplexPoly::one());
        let den = zr().add(&ComplexPoly::constant(i.clone()));
        let (q, r) = num.div_rem(&den).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, zr().sub(&ComplexPoly::constant(i)));
    }

    #[test]
    fn division_by_zero_poly_is_refused() {
        let e = zr().div_rem(&ComplexPoly::zero());
        assert_eq!(e.unwrap_err(), PolyError::DivisionByZero);
    }

    #[test]
    fn division_leaves_remainder_when_not_divisible() {
        let (q, r) = zr().square().div_rem(&zr().add(&ComplexPoly::one())).unwrap();
        // z^2 = (z-1)(z+1) + 1
        assert_eq!(q, zr().sub(&ComplexPoly::one()));
        assert_eq!(r, ComplexPoly::one());
    }

    #[test]
    fn json_roundtrip_lowest_degree_first() {
        let p = poly_from_json("[[0.0,0.0],[1.0,0.0],[0.0,-2.5]]").unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.coeff(2), C::new(0.0, -2.5));
        let back = poly_from_json(&poly_to_json(&p)).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn exact_promotion_rejects_non_finite() {
        let p = ComplexPoly::<f64>::new(vec![C::new(f64::NAN, 0.0)]);
        assert_eq!(p.to_exact().unwrap_err(), PolyError::NonFinite);
        let q = ComplexPoly::<f64>::new(vec![C::new(0.5, -0.25)]);
        let e = q.to_exact().unwrap();
        assert_eq!(e.coeff(0).re, Rat::ratio(1, 2));
        assert_eq!(e.coeff(0).im, Rat::ratio(-1, 4));
    }
}
