//! Minimal curves: triples of holomorphic polynomials whose derivative is
//! isotropic, built from a generating pair (f, g) via
//! psi' = (f(1-g^2)/2, i f(1+g^2)/2, f g), integrated with psi(0) = 0.

use num_complex::Complex as C;
use thiserror::Error;

use crate::poly::ComplexPoly;
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum CurveError {
    #[error("generating polynomial f is identically zero")]
    DegenerateGenerator,
}

/// Components are the integrated curve psi, not its derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalCurve<T: Scalar> {
    pub components: [ComplexPoly<T>; 3],
}

impl<T: Scalar> MinimalCurve<T> {
    /// Assembles a curve from arbitrary components. No isotropy is implied;
    /// use [`Self::isotropy_defect`] to measure it.
    pub fn from_components(components: [ComplexPoly<T>; 3]) -> Self {
        MinimalCurve { components }
    }

    pub fn derivative(&self) -> [ComplexPoly<T>; 3] {
        [
            self.components[0].derivative(),
            self.components[1].derivative(),
            self.components[2].derivative(),
        ]
    }

    /// Largest coefficient modulus of (psi_1')^2 + (psi_2')^2 + (psi_3')^2.
    /// Exactly 0.0 on the rational backend when the curve is isotropic.
    pub fn isotropy_defect(&self) -> f64 {
        let d = self.derivative();
        let sum = d[0]
            .square()
            .add(&d[1].square())
            .add(&d[2].square());
        sum.max_coeff_norm()
    }

    pub fn eval(&self, z: &C<T>) -> [C<T>; 3] {
        [
            self.components[0].eval(z),
            self.components[1].eval(z),
            self.components[2].eval(z),
        ]
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MinimalCurve<U> {
        MinimalCurve {
            components: [
                self.components[0].map_scalar(&f),
                self.components[1].map_scalar(&f),
                self.components[2].map_scalar(&f),
            ],
        }
    }
}

/// Integrated Weierstrass construction for a generating pair of polynomials.
/// f must not vanish identically; g may (the image then lies in a plane).
pub fn weierstrass_curve<T: Scalar>(
    f: &ComplexPoly<T>,
    g: &ComplexPoly<T>,
) -> Result<MinimalCurve<T>, CurveError> {
    if f.is_zero() {
        return Err(CurveError::DegenerateGenerator);
    }
    let one = ComplexPoly::one();
    let g2 = g.square();
    let half = C::new(T::ratio(1, 2), T::zero());
    let half_i = C::new(T::zero(), T::ratio(1, 2));
    let phi1 = f.mul(&one.sub(&g2)).scale(&half);
    let phi2 = f.mul(&one.add(&g2)).scale(&half_i);
    let phi3 = f.mul(g);
    Ok(MinimalCurve {
        components: [
            phi1.antiderivative(),
            phi2.antiderivative(),
            phi3.antiderivative(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    type P = ComplexPoly<Rat>;

    fn cr(n: i64, d: i64) -> C<Rat> {
        C::new(Rat::ratio(n, d), Rat::from_int(0))
    }

    fn ci(n: i64, d: i64) -> C<Rat> {
        C::new(Rat::from_int(0), Rat::ratio(n, d))
    }

    #[test]
    fn enneper_pair_derivative_components() {
        // (f,g) = (1,z): psi' = ((1-z^2)/2, i(1+z^2)/2, z)
        let curve = weierstrass_curve(&P::one(), &P::z()).unwrap();
        let d = curve.derivative();
        assert_eq!(d[0], P::new(vec![cr(1, 2), cr(0, 1), cr(-1, 2)]));
        assert_eq!(d[1], P::new(vec![ci(1, 2), cr(0, 1), ci(1, 2)]));
        assert_eq!(d[2], P::z());
        // psi(0) = 0
        let zero = C::new(Rat::from_int(0), Rat::from_int(0));
        for comp in &curve.components {
            assert_eq!(comp.coeff(0), zero);
        }
    }

    #[test]
    fn quartic_pair_derivative_components() {
        // (f,g) = (z,z): psi' = ((z-z^3)/2, i(z+z^3)/2, z^2)
        let curve = weierstrass_curve(&P::z(), &P::z()).unwrap();
        let d = curve.derivative();
        assert_eq!(d[0], P::new(vec![cr(0, 1), cr(1, 2), cr(0, 1), cr(-1, 2)]));
        assert_eq!(d[1], P::new(vec![cr(0, 1), ci(1, 2), cr(0, 1), ci(1, 2)]));
        assert_eq!(d[2], P::z().square());
    }

    #[test]
    fn construction_is_isotropic_for_seeded_pairs() {
        let f = P::new(vec![cr(2, 3), ci(-1, 2), cr(5, 1)]);
        let g = P::new(vec![ci(1, 3), cr(7, 2), ci(-2, 5)]);
        let curve = weierstrass_curve(&f, &g).unwrap();
        assert_eq!(curve.isotropy_defect(), 0.0);
    }

    #[test]
    fn zero_f_is_refused() {
        assert_eq!(
            weierstrass_curve(&P::zero(), &P::z()).unwrap_err(),
            CurveError::DegenerateGenerator
        );
    }

    #[test]
    fn isotropy_defect_flags_anisotropic_triples() {
        // components (z, iz, 0): derivative (1, i, 0) sums to 0
        let iso = MinimalCurve::from_components([
            P::z(),
            P::z().scale(&ci(1, 1)),
            P::zero(),
        ]);
        assert_eq!(iso.isotropy_defect(), 0.0);
        // components (z, z, 0): derivative (1, 1, 0) sums to 2
        let bad = MinimalCurve::from_components([P::z(), P::z(), P::zero()]);
        assert_eq!(bad.isotropy_defect(), 2.0);
    }

    #[test]
    fn degree_grows_with_generator_degree() {
        // f = z, g = z - 1 pushes psi to degree 4
        let g = P::z().sub(&P::one());
        let curve = weierstrass_curve(&P::z(), &g).unwrap();
        let degs: Vec<_> = curve.components.iter().map(|c| c.degree().unwrap()).collect();
        assert_eq!(degs.iter().max(), Some(&4));
    }
}
