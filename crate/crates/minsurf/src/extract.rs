//! Recovery of the generator pair (f, g) from a harmonic conformal chart.
//! Independent of the forward construction in `curve`; the two directions
//! cross-check each other.

use crate::chart::VectorChart;
use crate::poly::{C, ComplexPoly};
use crate::scalar::Scalar;
use crate::tol;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("chart is not harmonic (defect {defect:.3e})")]
    NotHarmonic { defect: f64 },
    #[error("chart is not conformal (defect {defect:.3e})")]
    NotIsothermal { defect: f64 },
    #[error("first generator vanishes identically")]
    DegenerateGenerator,
    #[error("third direction is not a polynomial multiple of f (remainder {remainder:.3e})")]
    NonPolynomialQuotient { remainder: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generators<T: Scalar> {
    pub f: ComplexPoly<T>,
    pub g: ComplexPoly<T>,
}

/// Directional derivative phi = d/du - i d/dv of a chart component,
/// restricted to v = 0. For a harmonic component this determines the full
/// holomorphic derivative.
fn holomorphic_derivative<T: Scalar>(comp: &crate::poly2::Poly2<T>) -> ComplexPoly<T> {
    let a = comp.du().column_v0();
    let b = comp.dv().column_v0();
    let len = a.len().max(b.len());
    let mut coeffs = Vec::with_capacity(len);
    for k in 0..len {
        let re = a.get(k).cloned().unwrap_or_else(T::zero);
        let im = b.get(k).cloned().unwrap_or_else(T::zero);
        coeffs.push(C::new(re, -im));
    }
    ComplexPoly::new(coeffs)
}

pub fn extract_generators<T: Scalar>(
    chart: &VectorChart<T>,
) -> Result<Generators<T>, ExtractError> {
    let scale = chart.max_abs_coeff();
    if T::EXACT {
        if !chart.is_harmonic() {
            return Err(ExtractError::NotHarmonic {
                defect: chart.harmonicity_defect(),
            });
        }
    } else {
        let defect = chart.harmonicity_defect();
        if defect > tol::COEFF_STRIP * (1.0 + scale) {
            return Err(ExtractError::NotHarmonic { defect });
        }
    }

    let (emg, fm) = chart.isothermal_polys();
    if T::EXACT {
        if !(emg.is_zero() && fm.is_zero()) {
            return Err(ExtractError::NotIsothermal {
                defect: emg.max_abs_coeff().max(fm.max_abs_coeff()),
            });
        }
    } else {
        let defect = emg.max_abs_coeff().max(fm.max_abs_coeff());
        if defect > tol::ISOTHERMAL_SAMPLED * (1.0 + scale) * (1.0 + scale) {
            return Err(ExtractError::NotIsothermal { defect });
        }
    }

    let phi1 = holomorphic_derivative(&chart.comps[0]);
    let phi2 = holomorphic_derivative(&chart.comps[1]);
    let phi3 = holomorphic_derivative(&chart.comps[2]);

    // f = phi1 - i phi2, g = phi3 / f
    let i = C::new(T::zero(), T::one());
    let f = phi1.sub(&phi2.scale(&i));
    if f.is_zero() {
        return Err(ExtractError::DegenerateGenerator);
    }
    let (g, rem) = phi3
        .div_rem(&f)
        .map_err(|_| ExtractError::DegenerateGenerator)?;
    let rem_norm = rem.max_coeff_norm();
    let rem_ok = if T::EXACT {
        rem.is_zero()
    } else {
        rem_norm <= tol::DIVISION_REMAINDER * (1.0 + phi3.max_coeff_norm())
    };
    if !rem_ok {
        return Err(ExtractError::NonPolynomialQuotient { remainder: rem_norm });
    }
    Ok(Generators { f, g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{imag_chart, nonisothermal_bicubic, real_chart};
    use crate::curve::weierstrass_curve;
    use crate::poly2::Poly2;
    use crate::scalar::Rat;
    use num_traits::{One, Zero};

    fn roundtrip(f: ComplexPoly<Rat>, g: ComplexPoly<Rat>) {
        let curve = weierstrass_curve(&f, &g).unwrap();
        let got = extract_generators(&real_chart(&curve)).unwrap();
        assert_eq!(got.f, f);
        assert_eq!(got.g, g);
    }

    #[test]
    fn real_chart_roundtrips_exactly() {
        roundtrip(
            ComplexPoly::from_real_ratios(&[(1, 1)]),
            ComplexPoly::from_real_ratios(&[(0, 1), (1, 1)]),
        );
        roundtrip(
            ComplexPoly::from_real_ratios(&[(0, 1), (1, 1)]),
            ComplexPoly::from_real_ratios(&[(-1, 1), (1, 1)]),
        );
        // complex rational coefficients
        roundtrip(
            ComplexPoly::new(vec![
                C::new(Rat::ratio(2, 3), Rat::ratio(1, 5)),
                C::new(Rat::ratio(-1, 2), Rat::ratio(3, 7)),
            ]),
            ComplexPoly::new(vec![
                C::new(Rat::ratio(0, 1), Rat::ratio(1, 4)),
                C::new(Rat::ratio(5, 6), Rat::ratio(-2, 9)),
            ]),
        );
    }

    #[test]
    fn conjugate_chart_yields_rotated_f() {
        let f = ComplexPoly::<Rat>::from_real_ratios(&[(0, 1), (1, 1)]);
        let g = ComplexPoly::from_real_ratios(&[(-1, 1), (1, 1)]);
        let curve = weierstrass_curve(&f, &g).unwrap();
        let got = extract_generators(&imag_chart(&curve)).unwrap();
        // y = Im Psi has phi = -i Psi', so f picks up a factor -i and g is unchanged
        let minus_i = C::new(Rat::zero(), -Rat::one());
        assert_eq!(got.f, f.scale(&minus_i));
        assert_eq!(got.g, g);
    }

    #[test]
    fn non_harmonic_and_non_conformal_inputs_are_rejected() {
        let bicubic = nonisothermal_bicubic::<Rat>();
        assert!(matches!(
            extract_generators(&bicubic),
            Err(ExtractError::NotHarmonic { .. })
        ));

        let curve = weierstrass_curve(
            &ComplexPoly::<Rat>::from_real_ratios(&[(1, 1)]),
            &ComplexPoly::from_real_ratios(&[(0, 1), (1, 1)]),
        )
        .unwrap();
        let mut chart = real_chart(&curve);
        // harmonic tweak of the third component that breaks conformality
        chart.comps[2] = chart.comps[2].add(&Poly2::var_u());
        assert!(matches!(
            extract_generators(&chart),
            Err(ExtractError::NotIsothermal { .. })
        ));
    }

    #[test]
    fn doubly_swept_plane_has_no_first_generator() {
        // (Re z^2, Im z^2, 0): harmonic and conformal, but phi1 - i phi2 = 0
        let chart = VectorChart::new([
            Poly2::<Rat>::from_ratio_terms(&[(2, 0, 1, 1), (0, 2, -1, 1)]),
            Poly2::from_ratio_terms(&[(1, 1, 2, 1)]),
            Poly2::zero(),
        ]);
        assert!(matches!(
            extract_generators(&chart),
            Err(ExtractError::DegenerateGenerator)
        ));
    }

    #[test]
    fn float_dust_in_third_direction_is_caught() {
        let curve = weierstrass_curve(
            &ComplexPoly::<Rat>::from_real_ratios(&[(0, 1), (1, 1)]),
            &ComplexPoly::from_real_ratios(&[(0, 1), (1, 1)]),
        )
        .unwrap();
        let mut chart = real_chart(&curve).to_f64();
        // below the conformality threshold but above the division threshold
        chart.comps[2] = chart.comps[2].add(&Poly2::from_terms(&[(1, 0, 5e-10)]));
        assert!(matches!(
            extract_generators(&chart),
            Err(ExtractError::NonPolynomialQuotient { .. })
        ));
        // dust at 1e-13 is ignored and the quotient comes back clean
        let mut chart = real_chart(&curve).to_f64();
        chart.comps[2] = chart.comps[2].add(&Poly2::from_terms(&[(1, 0, 1e-13)]));
        let got = extract_generators(&chart).unwrap();
        assert_eq!(got.g.degree(), Some(1));
    }
}
