//! Canonical principal parameters. In these coordinates the metric is
//! E = G = 1/nu, F = 0 with second form L = 1, M = 0, N = -1, and the whole
//! surface is encoded by the scalar nu(u, v), which satisfies the natural
//! equation  lap(ln nu) + 2 nu = 0.
//!
//! The parameter change w -> z(w) runs through a 2/3 power, so everything
//! here is branch-aware: evaluations are restricted to an annulus with a
//! guarded wedge around the positive imaginary axis, where the principal
//! branch jumps.

use crate::poly::C64;
use crate::tol;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CanonicalError {
    #[error("w = {w} lies outside the trusted branch region")]
    OutsideBranchRegion { w: C64 },
    #[error("formula is singular at the origin")]
    OriginSingular,
    #[error("scale parameters must be nonzero")]
    ZeroParameter,
    #[error("quadrature did not converge (error {err:.3e})")]
    QuadratureDivergence { err: f64 },
}

/// Region where principal-branch evaluations are trusted: an annulus minus
/// a wedge of half-width `cut_guard` radians around arg w = pi/2.
#[derive(Clone, Copy, Debug)]
pub struct BranchSpec {
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub cut_guard: f64,
}

impl Default for BranchSpec {
    fn default() -> Self {
        BranchSpec {
            inner_radius: 0.05,
            outer_radius: 2.0,
            cut_guard: 0.15,
        }
    }
}

impl BranchSpec {
    pub fn contains(&self, w: C64) -> bool {
        let r = w.norm();
        r >= self.inner_radius
            && r <= self.outer_radius
            && (w.arg() - std::f64::consts::FRAC_PI_2).abs() >= self.cut_guard
    }
}

fn k_factor() -> f64 {
    // (2/3)^(2/3), the radial normalization shared by the closed formulas
    (2.0f64 / 3.0).powf(2.0 / 3.0)
}

fn z0(w: C64) -> C64 {
    // principal branch of (3/2)^(2/3) (i w)^(2/3)
    (C64::new(0.0, 1.0) * w).powf(2.0 / 3.0) * (1.5f64).powf(2.0 / 3.0)
}

/// One-parameter base solution of the natural equation, radial in w.
pub fn nu_base(u: f64, v: f64) -> Result<f64, CanonicalError> {
    nu_scaled(1.0, u, v)
}

fn nu_scaled(k: f64, u: f64, v: f64) -> Result<f64, CanonicalError> {
    let rho2 = u * u + v * v;
    if rho2 == 0.0 {
        return Err(CanonicalError::OriginSingular);
    }
    let r13 = rho2.powf(1.0 / 3.0);
    let inner = 1.0 + (1.5f64).powf(4.0 / 3.0) * k * r13 * r13;
    Ok(4.0 * k_factor() * k / (r13 * inner * inner))
}

/// Curvature function of the two-parameter family; reduces to `nu_base`
/// when |c|^2 = |a|.
pub fn nu_family(a: C64, c: C64, u: f64, v: f64) -> Result<f64, CanonicalError> {
    if a.norm() == 0.0 || c.norm() == 0.0 {
        return Err(CanonicalError::ZeroParameter);
    }
    let k = (c.norm_sqr() / a.norm()).powf(2.0 / 3.0);
    nu_scaled(k, u, v)
}

/// Normal curvature of the offset family, derived from its generator pair
/// g(w) = a + i b + (3/2)^(2/3) (i w)^(2/3). Cube-root radial weight.
pub fn nu_offset_from_pair(a: f64, b: f64, u: f64, v: f64) -> Result<f64, CanonicalError> {
    let rho2 = u * u + v * v;
    if rho2 == 0.0 {
        return Err(CanonicalError::OriginSingular);
    }
    let off = C64::new(a, b) + z0(C64::new(u, v));
    let inner = 1.0 + off.norm_sqr();
    Ok(4.0 * k_factor() / (rho2.powf(1.0 / 3.0) * inner * inner))
}

/// Variant of the offset formula with a square-root radial weight. Agrees
/// with `nu_offset_from_pair` on the unit circle but fails the natural
/// equation away from it; kept so the two can be compared.
pub fn nu_offset_sqrt_variant(a: f64, b: f64, u: f64, v: f64) -> Result<f64, CanonicalError> {
    let rho2 = u * u + v * v;
    if rho2 == 0.0 {
        return Err(CanonicalError::OriginSingular);
    }
    let off = C64::new(a, b) + z0(C64::new(u, v));
    let inner = 1.0 + off.norm_sqr();
    Ok(4.0 * k_factor() / (rho2.sqrt() * inner * inner))
}

/// Pointwise gap between the two offset formulas.
pub fn offset_variant_gap(a: f64, b: f64, u: f64, v: f64) -> Result<f64, CanonicalError> {
    Ok((nu_offset_from_pair(a, b, u, v)? - nu_offset_sqrt_variant(a, b, u, v)?).abs())
}

/// Residual of the natural equation lap(ln nu) + 2 nu at (u, v), using a
/// five-point stencil of spacing h. O(h^2) for a true solution.
pub fn natural_pde_defect<F>(nu: F, u: f64, v: f64, h: f64) -> Result<f64, CanonicalError>
where
    F: Fn(f64, f64) -> Result<f64, CanonicalError>,
{
    let c = nu(u, v)?;
    let lap_ln = (nu(u + h, v)?.ln() + nu(u - h, v)?.ln() + nu(u, v + h)?.ln()
        + nu(u, v - h)?.ln()
        - 4.0 * c.ln())
        / (h * h);
    Ok((lap_ln + 2.0 * c).abs())
}

/// Parameter change w -> z(w) = (3/2)^(2/3) (i w / (sqrt(a) sqrt(c)))^(2/3)
/// taking the canonical parameter back to the natural one. Satisfies
/// (dz/dw)^2 a c z = -1 identically.
pub struct CanonicalSubstitution {
    beta: C64,
    ac: C64,
}

pub fn canonical_substitution(a: C64, c: C64) -> Result<CanonicalSubstitution, CanonicalError> {
    if a.norm() == 0.0 || c.norm() == 0.0 {
        return Err(CanonicalError::ZeroParameter);
    }
    let ac = a * c;
    let beta = (1.5f64).powf(2.0 / 3.0) / ac.powf(1.0 / 3.0);
    Ok(CanonicalSubstitution { beta, ac })
}

impl CanonicalSubstitution {
    pub fn apply(&self, w: C64) -> Result<C64, CanonicalError> {
        if w.norm() == 0.0 {
            return Err(CanonicalError::OriginSingular);
        }
        Ok(self.beta * (C64::new(0.0, 1.0) * w).powf(2.0 / 3.0))
    }

    /// |(z')^2 a c z + 1| with z' taken by central differences of step
    /// `tol::SUBSTITUTION_FD_FACTOR * |w|`.
    pub fn residual(&self, w: C64) -> Result<f64, CanonicalError> {
        let h = tol::SUBSTITUTION_FD_FACTOR * w.norm();
        let dz = (self.apply(w + C64::new(h, 0.0))? - self.apply(w - C64::new(h, 0.0))?)
            / C64::new(2.0 * h, 0.0);
        Ok((dz * dz * self.ac * self.apply(w)? + C64::new(1.0, 0.0)).norm())
    }
}

/// Same curvature as `nu_family`, but routed through the substitution
/// instead of the closed radial formula.
pub fn nu_family_from_substitution(
    a: C64,
    c: C64,
    w: C64,
) -> Result<f64, CanonicalError> {
    let sub = canonical_substitution(a, c)?;
    let z = sub.apply(w)?;
    let inner = 1.0 + (c * z).norm_sqr();
    Ok(4.0 * c.norm() / (a.norm() * z.norm() * inner * inner))
}

/// Integration path from the base point. Straight segments are used unless
/// they would cross the positive imaginary axis; those targets are reached
/// radially and then along a clockwise arc through the lower half plane.
#[derive(Clone, Copy, Debug)]
pub enum PathSeg {
    Line { from: C64, to: C64 },
    Arc { radius: f64, from_angle: f64, to_angle: f64 },
}

impl PathSeg {
    fn at(&self, t: f64) -> (C64, C64) {
        match *self {
            PathSeg::Line { from, to } => (from + (to - from) * t, to - from),
            PathSeg::Arc {
                radius,
                from_angle,
                to_angle,
            } => {
                let theta = from_angle + (to_angle - from_angle) * t;
                let p = C64::from_polar(radius, theta);
                (p, p * C64::new(0.0, to_angle - from_angle))
            }
        }
    }
}

/// Path from `base` (assumed on the positive real axis) to `w` that avoids
/// the branch cut on the positive imaginary axis.
pub fn branch_safe_path(base: f64, w: C64) -> Vec<PathSeg> {
    let start = C64::new(base, 0.0);
    if w.re < 0.0 && w.im > 0.0 {
        let r = w.norm();
        vec![
            PathSeg::Line {
                from: start,
                to: C64::new(r, 0.0),
            },
            PathSeg::Arc {
                radius: r,
                from_angle: 0.0,
                to_angle: w.arg() - 2.0 * std::f64::consts::PI,
            },
        ]
    } else {
        vec![PathSeg::Line { from: start, to: w }]
    }
}

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1]; even indices are the
// Kronrod extension, odd indices and the center carry the embedded
// 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15<F: Fn(f64) -> [C64; 3]>(f: &F, a: f64, b: f64) -> ([C64; 3], f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let zero = C64::new(0.0, 0.0);
    let mut kronrod = [zero; 3];
    let mut gauss = [zero; 3];
    for (idx, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let acc = if x == 0.0 {
            f(center)
        } else {
            let lo = f(center - half * x);
            let hi = f(center + half * x);
            [lo[0] + hi[0], lo[1] + hi[1], lo[2] + hi[2]]
        };
        for k in 0..3 {
            kronrod[k] += acc[k] * wk;
        }
        if idx % 2 == 1 || x == 0.0 {
            let wg = WG[idx / 2];
            for k in 0..3 {
                gauss[k] += acc[k] * wg;
            }
        }
    }
    let mut err = 0.0;
    for k in 0..3 {
        kronrod[k] *= half;
        err += (kronrod[k] - gauss[k] * half).norm();
    }
    (kronrod, err)
}

fn integrate_adaptive<F: Fn(f64) -> [C64; 3]>(
    f: &F,
    a: f64,
    b: f64,
    tol_abs: f64,
    depth: u32,
) -> Result<[C64; 3], CanonicalError> {
    let (est, err) = gk15(f, a, b);
    if err <= tol_abs {
        return Ok(est);
    }
    if depth == 0 {
        return Err(CanonicalError::QuadratureDivergence { err });
    }
    let mid = 0.5 * (a + b);
    let lo = integrate_adaptive(f, a, mid, 0.5 * tol_abs, depth - 1)?;
    let hi = integrate_adaptive(f, mid, b, 0.5 * tol_abs, depth - 1)?;
    Ok([lo[0] + hi[0], lo[1] + hi[1], lo[2] + hi[2]])
}

/// Integrate a holomorphic 3-vector along a path.
pub fn integrate_path<F: Fn(C64) -> [C64; 3]>(
    f: &F,
    path: &[PathSeg],
    tol_abs: f64,
) -> Result<[C64; 3], CanonicalError> {
    let zero = C64::new(0.0, 0.0);
    let mut total = [zero; 3];
    for seg in path {
        let integrand = |t: f64| {
            let (p, dp) = seg.at(t);
            let v = f(p);
            [v[0] * dp, v[1] * dp, v[2] * dp]
        };
        let part = integrate_adaptive(&integrand, 0.0, 1.0, tol_abs, 40)?;
        for k in 0..3 {
            total[k] += part[k];
        }
    }
    Ok(total)
}

/// Maximal first- and second-form deviations from the canonical shape
/// (E = G = 1/nu, F = 0; L = 1, M = 0, N = -1) at one point.
#[derive(Clone, Debug)]
pub struct FormDefects {
    pub nu: f64,
    pub first: f64,
    pub second: f64,
}

/// Surface chart in canonical parameters, built from one generator g(w)
/// and its derivative by integrating the associated holomorphic curve from
/// the base point w = 1.
pub struct CanonicalChart {
    g: Box<dyn Fn(C64) -> C64>,
    gp: Box<dyn Fn(C64) -> C64>,
    pub branch: BranchSpec,
    pub quad_tol: f64,
    base: f64,
}

impl CanonicalChart {
    pub fn new(
        g: impl Fn(C64) -> C64 + 'static,
        gp: impl Fn(C64) -> C64 + 'static,
    ) -> CanonicalChart {
        CanonicalChart {
            g: Box::new(g),
            gp: Box::new(gp),
            branch: BranchSpec::default(),
            quad_tol: tol::QUADRATURE_ABS,
            base: 1.0,
        }
    }

    /// Offset member of the family: g(w) = a + i b + (3/2)^(2/3) (i w)^(2/3).
    pub fn offset_generator(a: f64, b: f64) -> CanonicalChart {
        let off = C64::new(a, b);
        // g' = (2/3)^(1/3) i (i w)^(-1/3)
        let gp_scale = (2.0f64 / 3.0).powf(1.0 / 3.0);
        CanonicalChart::new(
            move |w| off + z0(w),
            move |w| C64::new(0.0, gp_scale) * (C64::new(0.0, 1.0) * w).powf(-1.0 / 3.0),
        )
    }

    pub fn eval(&self, w: C64) -> Result<[f64; 3], CanonicalError> {
        if !self.branch.contains(w) {
            return Err(CanonicalError::OutsideBranchRegion { w });
        }
        let path = branch_safe_path(self.base, w);
        let g = &self.g;
        let gp = &self.gp;
        let half = C64::new(0.5, 0.0);
        let half_i = C64::new(0.0, 0.5);
        let one = C64::new(1.0, 0.0);
        let integrand = move |t: C64| {
            let gv = g(t);
            let gpv = gp(t);
            [
                -half * (one - gv * gv) / gpv,
                -half_i * (one + gv * gv) / gpv,
                -gv / gpv,
            ]
        };
        let phi = integrate_path(&integrand, &path, self.quad_tol)?;
        Ok([phi[0].re, phi[1].re, phi[2].re])
    }

    pub fn nu(&self, w: C64) -> Result<f64, CanonicalError> {
        if !self.branch.contains(w) {
            return Err(CanonicalError::OutsideBranchRegion { w });
        }
        let gv = (self.g)(w);
        let gpv = (self.gp)(w);
        let inner = 1.0 + gv.norm_sqr();
        Ok(4.0 * gpv.norm_sqr() / (inner * inner))
    }

    /// Finite-difference check of the canonical form identities at w.
    pub fn form_defects(&self, w: C64) -> Result<FormDefects, CanonicalError> {
        let nu = self.nu(w)?;
        let h1 = tol::CANONICAL_FD_FIRST;
        let h2 = tol::CANONICAL_FD_SECOND;
        let ev = |du: f64, dv: f64| self.eval(w + C64::new(du, dv));

        let d = |a: [f64; 3], b: [f64; 3], s: f64| {
            [(a[0] - b[0]) / s, (a[1] - b[1]) / s, (a[2] - b[2]) / s]
        };
        let xu = d(ev(h1, 0.0)?, ev(-h1, 0.0)?, 2.0 * h1);
        let xv = d(ev(0.0, h1)?, ev(0.0, -h1)?, 2.0 * h1);
        let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let e = dot(&xu, &xu);
        let fm = dot(&xu, &xv);
        let gm = dot(&xv, &xv);
        let first = (e * nu - 1.0)
            .abs()
            .max((gm * nu - 1.0).abs())
            .max(fm.abs() * nu);

        let c = ev(0.0, 0.0)?;
        let second_diff = |pp: [f64; 3], mm: [f64; 3]| {
            [
                (pp[0] - 2.0 * c[0] + mm[0]) / (h2 * h2),
                (pp[1] - 2.0 * c[1] + mm[1]) / (h2 * h2),
                (pp[2] - 2.0 * c[2] + mm[2]) / (h2 * h2),
            ]
        };
        let xuu = second_diff(ev(h2, 0.0)?, ev(-h2, 0.0)?);
        let xvv = second_diff(ev(0.0, h2)?, ev(0.0, -h2)?);
        let pp = ev(h2, h2)?;
        let pm = ev(h2, -h2)?;
        let mp = ev(-h2, h2)?;
        let mm = ev(-h2, -h2)?;
        let xuv = [
            (pp[0] - pm[0] - mp[0] + mm[0]) / (4.0 * h2 * h2),
            (pp[1] - pm[1] - mp[1] + mm[1]) / (4.0 * h2 * h2),
            (pp[2] - pm[2] - mp[2] + mm[2]) / (4.0 * h2 * h2),
        ];
        let cr = [
            xu[1] * xv[2] - xu[2] * xv[1],
            xu[2] * xv[0] - xu[0] * xv[2],
            xu[0] * xv[1] - xu[1] * xv[0],
        ];
        let w_norm = dot(&cr, &cr).sqrt();
        let nhat = [cr[0] / w_norm, cr[1] / w_norm, cr[2] / w_norm];
        let l = dot(&xuu, &nhat);
        let m = dot(&xuv, &nhat);
        let n = dot(&xvv, &nhat);
        let second = (l - 1.0).abs().max(m.abs()).max((n + 1.0).abs());
        Ok(FormDefects { nu, first, second })
    }
}
