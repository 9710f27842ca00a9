//! Polynomial surface charts. A chart is three bivariate polynomials
//! (x(u,v), y(u,v), z(u,v)); the real and imaginary parts of a holomorphic
//! curve give conjugate harmonic charts of the same surface family.

use crate::curve::MinimalCurve;
use crate::poly::ComplexPoly;
use crate::poly2::Poly2;
use crate::scalar::Scalar;
use crate::tol;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChartError {
    #[error("affine map is degenerate (jacobian {jacobian:.3e})")]
    DegenerateAffineMap { jacobian: f64 },
    #[error("chart json: {0}")]
    Json(String),
    #[error("coefficient slot ({i},{j}) exceeds the declared degrees")]
    CoeffOutOfRange { i: usize, j: usize },
    #[error("non-finite coefficient at ({i},{j})")]
    NonFinite { i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct VectorChart<T: Scalar> {
    pub comps: [Poly2<T>; 3],
}

/// Outcome of the sampled conformality test. `max_defect` is the largest
/// |E - G| or |F| seen over the probe points.
#[derive(Clone, Debug)]
pub struct IsothermalCheck {
    pub isothermal: bool,
    pub max_defect: f64,
}

impl<T: Scalar> VectorChart<T> {
    pub fn new(comps: [Poly2<T>; 3]) -> Self {
        VectorChart { comps }
    }

    pub fn eval(&self, u: &T, v: &T) -> [T; 3] {
        [
            self.comps[0].eval(u, v),
            self.comps[1].eval(u, v),
            self.comps[2].eval(u, v),
        ]
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.comps
            .iter()
            .map(|p| p.max_abs_coeff())
            .fold(0.0, f64::max)
    }

    /// Largest Laplacian coefficient across components; zero iff every
    /// component is harmonic (exactly so over rationals).
    pub fn harmonicity_defect(&self) -> f64 {
        self.comps
            .iter()
            .map(|p| p.laplacian().max_abs_coeff())
            .fold(0.0, f64::max)
    }

    pub fn is_harmonic(&self) -> bool {
        if T::EXACT {
            self.comps.iter().all(|p| p.laplacian().is_zero())
        } else {
            self.harmonicity_defect() <= tol::COEFF_STRIP * (1.0 + self.max_abs_coeff())
        }
    }

    /// Metric residual polynomials (E - G, F). Both vanish identically iff
    /// the chart is isothermal.
    pub fn isothermal_polys(&self) -> (Poly2<T>, Poly2<T>) {
        let xu: Vec<Poly2<T>> = self.comps.iter().map(|p| p.du()).collect();
        let xv: Vec<Poly2<T>> = self.comps.iter().map(|p| p.dv()).collect();
        let mut e_minus_g = Poly2::zero();
        let mut f = Poly2::zero();
        for k in 0..3 {
            e_minus_g = e_minus_g.add(&xu[k].mul(&xu[k])).sub(&xv[k].mul(&xv[k]));
            f = f.add(&xu[k].mul(&xv[k]));
        }
        (e_minus_g, f)
    }

    pub fn check_isothermal(&self, points: &[(f64, f64)], tolerance: f64) -> IsothermalCheck {
        let (emg, f) = self.isothermal_polys();
        if T::EXACT && emg.is_zero() && f.is_zero() {
            return IsothermalCheck {
                isothermal: true,
                max_defect: 0.0,
            };
        }
        let emg64 = emg.map_scalar(|v| v.to_f64());
        let f64p = f.map_scalar(|v| v.to_f64());
        let mut max_defect: f64 = 0.0;
        for &(u, v) in points {
            max_defect = max_defect
                .max(emg64.eval(&u, &v).abs())
                .max(f64p.eval(&u, &v).abs());
        }
        IsothermalCheck {
            isothermal: max_defect <= tolerance,
            max_defect,
        }
    }

    /// Substitute u <- a1 s + b1 t + c1, v <- a2 s + b2 t + c2. Refuses maps
    /// whose jacobian is numerically zero.
    pub fn reparam(&self, map: &AffineMap<T>) -> Result<VectorChart<T>, ChartError> {
        let jac = map.jacobian().to_f64();
        if jac.abs() < tol::AFFINE_JACOBIAN_MIN {
            return Err(ChartError::DegenerateAffineMap { jacobian: jac });
        }
        let pu = Poly2::from_terms(&[
            (1, 0, map.a1.clone()),
            (0, 1, map.b1.clone()),
            (0, 0, map.c1.clone()),
        ]);
        let pv = Poly2::from_terms(&[
            (1, 0, map.a2.clone()),
            (0, 1, map.b2.clone()),
            (0, 0, map.c2.clone()),
        ]);
        Ok(VectorChart::new([
            self.comps[0].compose(&pu, &pv),
            self.comps[1].compose(&pu, &pv),
            self.comps[2].compose(&pu, &pv),
        ]))
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> VectorChart<U> {
        VectorChart::new([
            self.comps[0].map_scalar(&f),
            self.comps[1].map_scalar(&f),
            self.comps[2].map_scalar(&f),
        ])
    }

    /// (max degree in u, max degree in v) over the three components.
    pub fn degrees(&self) -> (usize, usize) {
        self.comps.iter().fold((0, 0), |(du, dv), p| {
            let (a, b) = p.degrees();
            (du.max(a), dv.max(b))
        })
    }
}

impl VectorChart<crate::scalar::Rat> {
    pub fn to_f64(&self) -> VectorChart<f64> {
        self.map_scalar(|v| v.to_f64())
    }
}

/// First-order reparametrization (s, t) -> (a1 s + b1 t + c1, a2 s + b2 t + c2).
#[derive(Clone, Debug)]
pub struct AffineMap<T: Scalar> {
    pub a1: T,
    pub b1: T,
    pub c1: T,
    pub a2: T,
    pub b2: T,
    pub c2: T,
}

impl<T: Scalar> AffineMap<T> {
    pub fn jacobian(&self) -> T {
        self.a1.clone() * self.b2.clone() - self.b1.clone() * self.a2.clone()
    }
}

fn split_component<T: Scalar>(p: &ComplexPoly<T>, want_imag: bool) -> Poly2<T> {
    // Powers of u + iv built incrementally: re' = re*u - im*v, im' = re*v + im*u.
    let mut re = Poly2::one();
    let mut im = Poly2::zero();
    let mut out = Poly2::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if k > 0 {
            let re_next = re.shift_u().sub(&im.shift_v());
            let im_next = re.shift_v().add(&im.shift_u());
            re = re_next;
            im = im_next;
        }
        let term = if want_imag {
            re.scale(&c.im).add(&im.scale(&c.re))
        } else {
            re.scale(&c.re).sub(&im.scale(&c.im))
        };
        out = out.add(&term);
    }
    out
}

/// Chart x(u, v) = Re Psi(u + iv).
pub fn real_chart<T: Scalar>(curve: &MinimalCurve<T>) -> VectorChart<T> {
    VectorChart::new([
        split_component(&curve.components[0], false),
        split_component(&curve.components[1], false),
        split_component(&curve.components[2], false),
    ])
}

/// Conjugate chart y(u, v) = Im Psi(u + iv).
pub fn imag_chart<T: Scalar>(curve: &MinimalCurve<T>) -> VectorChart<T> {
    VectorChart::new([
        split_component(&curve.components[0], true),
        split_component(&curve.components[1], true),
        split_component(&curve.components[2], true),
    ])
}

/// Degree-(3,3) polynomial chart that is neither harmonic nor conformal;
/// stress case for the analysis routines. No affine change of parameters
/// makes its mixed metric coefficient vanish identically.
pub fn nonisothermal_bicubic<T: Scalar>() -> VectorChart<T> {
    VectorChart::new([
        Poly2::from_ratio_terms(&[(1, 1, 1, 2), (3, 3, -1, 6), (1, 3, 1, 2)]),
        Poly2::from_ratio_terms(&[(0, 1, -1, 2), (0, 3, 1, 6), (2, 3, -1, 2)]),
        Poly2::from_ratio_terms(&[(2, 2, 1, 2), (0, 2, -1, 2)]),
    ])
}

#[derive(Serialize, Deserialize)]
struct ChartJson {
    degree_u: usize,
    degree_v: usize,
    coeffs: Vec<ChartCoeff>,
}

#[derive(Serialize, Deserialize)]
struct ChartCoeff {
    i: usize,
    j: usize,
    v: [f64; 3],
}

pub fn chart_to_json(chart: &VectorChart<f64>) -> String {
    let (du, dv) = chart.degrees();
    let mut coeffs = Vec::new();
    for i in 0..=du {
        for j in 0..=dv {
            let v = [
                chart.comps[0].coeff(i, j),
                chart.comps[1].coeff(i, j),
                chart.comps[2].coeff(i, j),
            ];
            if v.iter().any(|x| *x != 0.0) {
                coeffs.push(ChartCoeff { i, j, v });
            }
        }
    }
    let doc = ChartJson {
        degree_u: du,
        degree_v: dv,
        coeffs,
    };
    serde_json::to_string_pretty(&doc).expect("chart serialization cannot fail")
}

pub fn chart_from_json(text: &str) -> Result<VectorChart<f64>, ChartError> {
    let doc: ChartJson = serde_json::from_str(text).map_err(|e| ChartError::Json(e.to_string()))?;
    let mut terms: [Vec<(usize, usize, f64)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for entry in &doc.coeffs {
        if entry.i > doc.degree_u || entry.j > doc.degree_v {
            return Err(ChartError::CoeffOutOfRange {
                i: entry.i,
                j: entry.j,
            });
        }
        for (k, x) in entry.v.iter().enumerate() {
            if !x.is_finite() {
                return Err(ChartError::NonFinite {
                    i: entry.i,
                    j: entry.j,
                });
            }
            terms[k].push((entry.i, entry.j, *x));
        }
    }
    Ok(VectorChart::new([
        Poly2::from_terms(&terms[0]),
        Poly2::from_terms(&terms[1]),
        Poly2::from_terms(&terms[2]),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::weierstrass_curve;
    use crate::scalar::Rat;
    use num_traits::{One, Zero};

    fn enneper() -> MinimalCurve<Rat> {
        weierstrass_curve(
            &ComplexPoly::from_real_ratios(&[(1, 1)]),
            &ComplexPoly::from_real_ratios(&[(0, 1), (1, 1)]),
        )
        .unwrap()
    }

    #[test]
    fn enneper_real_chart_coefficients() {
        let chart = real_chart(&enneper());
        let expect = [
            Poly2::from_ratio_terms(&[(1, 0, 1, 2), (3, 0, -1, 6), (1, 2, 1, 2)]),
            Poly2::from_ratio_terms(&[(0, 1, -1, 2), (0, 3, 1, 6), (2, 1, -1, 2)]),
            Poly2::from_ratio_terms(&[(2, 0, 1, 2), (0, 2, -1, 2)]),
        ];
        assert_eq!(chart.comps, expect);
    }

    #[test]
    fn degree_two_generator_chart_coefficients() {
        // f = z, g = z
        let curve = weierstrass_curve(
            &ComplexPoly::<Rat>::from_real_ratios(&[(0, 1), (1, 1)]),
            &ComplexPoly::from_real_ratios(&[(0, 1), (1, 1)]),
        )
        .unwrap();
        let chart = real_chart(&curve);
        let expect = [
            Poly2::from_ratio_terms(&[
                (4, 0, -1, 8),
                (2, 2, 3, 4),
                (2, 0, 1, 4),
                (0, 4, -1, 8),
                (0, 2, -1, 4),
            ]),
            Poly2::from_ratio_terms(&[(3, 1, -1, 2), (1, 3, 1, 2), (1, 1, -1, 2)]),
            Poly2::from_ratio_terms(&[(3, 0, 1, 3), (1, 2, -1, 1)]),
        ];
        assert_eq!(chart.comps, expect);
    }

    #[test]
    fn shifted_generator_chart_coefficients() {
        // f = z, g = z - 1
        let curve = weierstrass_curve(
            &ComplexPoly::<Rat>::from_real_ratios(&[(0, 1), (1, 1)]),
            &ComplexPoly::from_real_ratios(&[(-1, 1), (1, 1)]),
        )
        .unwrap();
        let chart = real_chart(&curve);
        let expect = [
            Poly2::from_ratio_terms(&[
                (4, 0, -1, 8),
                (3, 0, 1, 3),
                (2, 2, 3, 4),
                (1, 2, -1, 1),
                (0, 4, -1, 8),
            ]),
            Poly2::from_ratio_terms(&[
                (3, 1, -1, 2),
                (2, 1, 1, 1),
                (1, 3, 1, 2),
                (1, 1, -1, 1),
                (0, 3, -1, 3),
            ]),
            Poly2::from_ratio_terms(&[(3, 0, 1, 3), (2, 0, -1, 2), (1, 2, -1, 1), (0, 2, 1, 2)]),
        ];
        assert_eq!(chart.comps, expect);
    }

    #[test]
    fn conjugate_charts_are_harmonic_and_isothermal() {
        let curve = enneper();
        for chart in [real_chart(&curve), imag_chart(&curve)] {
            assert!(chart.is_harmonic());
            let (emg, f) = chart.isothermal_polys();
            assert!(emg.is_zero() && f.is_zero());
            let check = chart.check_isothermal(&[(0.3, -0.7)], 1e-9);
            assert!(check.isothermal && check.max_defect == 0.0);
        }
    }

    #[test]
    fn bicubic_fails_both_checks() {
        let chart: VectorChart<Rat> = nonisothermal_bicubic();
        assert!(!chart.is_harmonic());
        assert_eq!(chart.harmonicity_defect(), 3.0);
        let half = Rat::ratio(1, 2);
        let (emg, f) = chart.isothermal_polys();
        assert_eq!(f.eval(&half, &half), Rat::ratio(441, 4096));
        assert_eq!(emg.eval(&half, &half), Rat::ratio(-441, 1024));
        let check = chart.check_isothermal(&[(0.5, 0.5)], 1e-9);
        assert!(!check.isothermal);
    }

    #[test]
    fn conformal_reparam_preserves_isothermality() {
        let chart = real_chart(&enneper());
        // (s, t) -> (s - t, s + t): sqrt(2) times a rotation.
        let conformal = AffineMap {
            a1: Rat::from_int(1),
            b1: Rat::from_int(-1),
            c1: Rat::zero(),
            a2: Rat::from_int(1),
            b2: Rat::from_int(1),
            c2: Rat::zero(),
        };
        let pulled = chart.reparam(&conformal).unwrap();
        let (emg, f) = pulled.isothermal_polys();
        assert!(emg.is_zero() && f.is_zero());

        let stretch = AffineMap {
            a1: Rat::from_int(2),
            b1: Rat::zero(),
            c1: Rat::zero(),
            a2: Rat::zero(),
            b2: Rat::one(),
            c2: Rat::zero(),
        };
        let (emg, _) = chart.reparam(&stretch).unwrap().isothermal_polys();
        assert!(!emg.is_zero());
    }

    #[test]
    fn degenerate_map_is_refused() {
        let chart = real_chart(&enneper());
        let singular = AffineMap {
            a1: Rat::one(),
            b1: Rat::from_int(2),
            c1: Rat::zero(),
            a2: Rat::from_int(2),
            b2: Rat::from_int(4),
            c2: Rat::zero(),
        };
        assert!(matches!(
            chart.reparam(&singular),
            Err(ChartError::DegenerateAffineMap { .. })
        ));
    }

    #[test]
    fn json_roundtrip() {
        let chart = real_chart(&enneper()).to_f64();
        let text = chart_to_json(&chart);
        let back = chart_from_json(&text).unwrap();
        assert_eq!(back, chart);
        assert!(chart_from_json("{\"degree_u\":1}").is_err());
        let overflow = "{\"degree_u\":1,\"degree_v\":1,\"coeffs\":[{\"i\":2,\"j\":0,\"v\":[1,0,0]}]}";
        assert!(matches!(
            chart_from_json(overflow),
            Err(ChartError::CoeffOutOfRange { i: 2, j: 0 })
        ));
    }
}
