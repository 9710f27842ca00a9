//! Fundamental forms and curvature of polynomial charts, together with the
//! closed metric formulas attached to a generator pair. The two routes are
//! kept independent so they can cross-check each other.

use crate::chart::VectorChart;
use crate::poly::{C64, ComplexPoly};
use crate::poly2::Poly2;
use crate::tol;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormError {
    #[error("singular point at ({u}, {v}): |x_u x x_v| = {cross_norm:.3e}")]
    SingularPoint { u: f64, v: f64, cross_norm: f64 },
    #[error("conformal factor degenerates at {z}: E = {value:.3e}")]
    DegenerateMetric { z: C64, value: f64 },
}

/// Pointwise metric and shape data. `nu` is sqrt(-K), present only where the
/// Gauss curvature is nonpositive.
#[derive(Clone, Debug)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub gauss: f64,
    pub mean: f64,
    pub nu: Option<f64>,
}

/// Chart with its partial derivatives precomputed once, so repeated form
/// evaluations stay cheap.
pub struct ChartJet {
    val: [Poly2<f64>; 3],
    d_u: [Poly2<f64>; 3],
    d_v: [Poly2<f64>; 3],
    d_uu: [Poly2<f64>; 3],
    d_uv: [Poly2<f64>; 3],
    d_vv: [Poly2<f64>; 3],
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

impl ChartJet {
    pub fn new(chart: &VectorChart<f64>) -> Self {
        let each = |f: &dyn Fn(&Poly2<f64>) -> Poly2<f64>| {
            [
                f(&chart.comps[0]),
                f(&chart.comps[1]),
                f(&chart.comps[2]),
            ]
        };
        ChartJet {
            val: each(&|p| p.clone()),
            d_u: each(&|p| p.du()),
            d_v: each(&|p| p.dv()),
            d_uu: each(&|p| p.du().du()),
            d_uv: each(&|p| p.du().dv()),
            d_vv: each(&|p| p.dv().dv()),
        }
    }

    pub fn position(&self, u: f64, v: f64) -> [f64; 3] {
        let ev = |ps: &[Poly2<f64>; 3]| [ps[0].eval(&u, &v), ps[1].eval(&u, &v), ps[2].eval(&u, &v)];
        ev(&self.val)
    }

    pub fn forms(&self, u: f64, v: f64) -> Result<FundamentalForms, FormError> {
        let ev = |ps: &[Poly2<f64>; 3]| [ps[0].eval(&u, &v), ps[1].eval(&u, &v), ps[2].eval(&u, &v)];
        let xu = ev(&self.d_u);
        let xv = ev(&self.d_v);
        let xuu = ev(&self.d_uu);
        let xuv = ev(&self.d_uv);
        let xvv = ev(&self.d_vv);

        let e = dot(&xu, &xu);
        let f = dot(&xu, &xv);
        let g = dot(&xv, &xv);
        let nvec = cross(&xu, &xv);
        let w = dot(&nvec, &nvec).sqrt();
        if w < tol::REGULARITY_MIN {
            return Err(FormError::SingularPoint { u, v, cross_norm: w });
        }
        let l = dot(&xuu, &nvec) / w;
        let m = dot(&xuv, &nvec) / w;
        let n = dot(&xvv, &nvec) / w;
        let det = e * g - f * f;
        let gauss = (l * n - m * m) / det;
        let mean = (e * n - 2.0 * f * m + g * l) / (2.0 * det);
        let nu = if gauss <= 0.0 {
            Some((-gauss).sqrt())
        } else {
            None
        };
        Ok(FundamentalForms {
            e,
            f,
            g,
            l,
            m,
            n,
            gauss,
            mean,
            nu,
        })
    }
}

/// Conformal factor E = G = |f|^2 (1 + |g|^2)^2 / 4 of the chart induced by
/// the generator pair; F = 0 on the same chart.
pub fn closed_first_form(f: &ComplexPoly<f64>, g: &ComplexPoly<f64>, z: C64) -> f64 {
    let fa = f.eval(&z).norm();
    let gs = g.eval(&z).norm_sqr();
    0.25 * fa * fa * (1.0 + gs) * (1.0 + gs)
}

/// Curvature scale nu = 4 |g'| / (|f| (1 + |g|^2)^2); on the induced chart
/// nu^2 = -K. Fails where the conformal factor collapses.
pub fn closed_normal_curvature(
    f: &ComplexPoly<f64>,
    g: &ComplexPoly<f64>,
    z: C64,
) -> Result<f64, FormError> {
    let e = closed_first_form(f, g, z);
    if e < tol::REGULARITY_MIN {
        return Err(FormError::DegenerateMetric { z, value: e });
    }
    let fa = f.eval(&z).norm();
    let gs = g.eval(&z).norm_sqr();
    let gp = g.derivative().eval(&z).norm();
    Ok(4.0 * gp / (fa * (1.0 + gs) * (1.0 + gs)))
}
