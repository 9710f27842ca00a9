//! Quartic tensor-product Bezier nets and harmonic completion. Nine control
//! points along two opposite edges (one of them missing its middle point)
//! determine the remaining sixteen uniquely if the patch is to be harmonic;
//! this module carries both the closed-form completion and an independent
//! linear-algebra oracle for it.

use crate::chart::VectorChart;
use crate::domain::Domain;
use crate::poly2::Poly2;
use crate::scalar::{rat_from_f64, Rat, Scalar};
use num_traits::Zero;
use serde::Deserialize;
use std::str::FromStr;
use thiserror::Error;

/// Wire identifier of the supported given-point mask.
pub const LAYOUT_ID: &str = "monterde-variant-fig2";

#[derive(Debug, Error)]
pub enum BezierError {
    #[error("net json: {0}")]
    Json(String),
    #[error("unsupported layout {found:?}, expected {LAYOUT_ID:?}")]
    WrongLayout { found: String },
    #[error("given slot ({i},{j}) is missing")]
    MissingGiven { i: usize, j: usize },
    #[error("slot ({i},{j}) must be null in completion input")]
    UnexpectedValue { i: usize, j: usize },
    #[error("bad value at ({i},{j}): {msg}")]
    BadValue { i: usize, j: usize, msg: String },
    #[error("chart degrees ({du},{dv}) exceed the quartic net")]
    DegreeTooHigh { du: usize, dv: usize },
    #[error("completion system lost rank")]
    RankDeficient,
    #[error("completion system is inconsistent (defect {defect:.3e})")]
    Inconsistent { defect: f64 },
}

/// Slots on the v = 0 and v = 1 edges that the completion takes as input;
/// note (2,4) is absent.
pub const GIVEN_SLOTS: [(usize, usize); 9] = [
    (0, 0),
    (0, 4),
    (1, 0),
    (1, 4),
    (2, 0),
    (3, 0),
    (3, 4),
    (4, 0),
    (4, 4),
];

/// The sixteen interior and edge slots produced by the completion.
pub const UNKNOWN_SLOTS: [(usize, usize); 16] = [
    (0, 1),
    (4, 1),
    (1, 1),
    (3, 1),
    (0, 2),
    (4, 2),
    (1, 2),
    (3, 2),
    (0, 3),
    (4, 3),
    (1, 3),
    (3, 3),
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
];

// Completion weights, one row per unknown slot in UNKNOWN_SLOTS order, one
// column per given slot in GIVEN_SLOTS order. Every row sums to its
// denominator, so constant nets complete to themselves.
const COMPLETION_DEN: [i64; 16] = [12, 12, 24, 24, 6, 6, 12, 12, 12, 12, 12, 12, 8, 12, 24, 6];
const COMPLETION_NUM: [[i64; 9]; 16] = [
    [25, 8, -40, -8, 36, -16, 4, 4, -1],
    [4, -1, -16, 4, 36, -40, -8, 25, 8],
    [17, 7, -14, -4, 18, -8, 2, 5, 1],
    [5, 1, -8, 2, 18, -14, -4, 17, 7],
    [13, 8, -28, -8, 30, -16, 4, 4, -1],
    [4, -1, -16, 4, 30, -28, -8, 13, 8],
    [11, 7, -20, -4, 24, -14, 2, 5, 1],
    [5, 1, -14, 2, 24, -20, -4, 11, 7],
    [14, 19, -32, -16, 36, -20, 8, 5, -2],
    [5, -2, -20, 8, 36, -32, -16, 14, 19],
    [5, 7, -8, -1, 9, -5, 2, 2, 1],
    [2, 1, -5, 2, 9, -8, -1, 5, 7],
    [3, 1, -4, 0, 8, -4, 0, 3, 1],
    [7, 3, -16, 0, 24, -16, 0, 7, 3],
    [7, 5, -16, 4, 24, -16, 4, 7, 5],
    [1, -1, -4, 4, 6, -4, 4, 1, -1],
];

// Quartic Bernstein polynomials in the monomial basis: B_i(u) = sum_k M[i][k] u^k.
const BERN_TO_MONO: [[i64; 5]; 5] = [
    [1, -4, 6, -4, 1],
    [0, 4, -12, 12, -4],
    [0, 0, 6, -12, 6],
    [0, 0, 0, 4, -4],
    [0, 0, 0, 0, 1],
];

const BINOM4: [i64; 5] = [1, 4, 6, 4, 1];

fn binom(n: usize, k: usize) -> i64 {
    let mut acc = 1i64;
    for s in 0..k {
        acc = acc * (n - s) as i64 / (s + 1) as i64;
    }
    acc
}

/// B_i^4(u); zero outside i = 0..4.
pub fn bernstein<T: Scalar>(i: usize, u: &T) -> T {
    if i > 4 {
        return T::zero();
    }
    let one_minus = T::one() - u.clone();
    let mut acc = T::from_int(BINOM4[i]);
    for _ in 0..i {
        acc = acc * u.clone();
    }
    for _ in 0..(4 - i) {
        acc = acc * one_minus.clone();
    }
    acc
}

/// 5x5 control net; `points[i][j]` weights B_i(u) B_j(v).
#[derive(Clone, Debug, PartialEq)]
pub struct BezierGrid<T: Scalar> {
    pub points: [[[T; 3]; 5]; 5],
}

impl<T: Scalar> BezierGrid<T> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> [T; 3]) -> Self {
        BezierGrid {
            points: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| [T::zero(), T::zero(), T::zero()])
    }

    pub fn eval(&self, u: &T, v: &T) -> [T; 3] {
        let bu: Vec<T> = (0..5).map(|i| bernstein(i, u)).collect();
        let bv: Vec<T> = (0..5).map(|j| bernstein(j, v)).collect();
        let mut out = [T::zero(), T::zero(), T::zero()];
        for i in 0..5 {
            for j in 0..5 {
                let w = bu[i].clone() * bv[j].clone();
                for k in 0..3 {
                    out[k] = out[k].clone() + self.points[i][j][k].clone() * w.clone();
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.points[j][i].clone())
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> BezierGrid<U> {
        BezierGrid::from_fn(|i, j| {
            [
                f(&self.points[i][j][0]),
                f(&self.points[i][j][1]),
                f(&self.points[i][j][2]),
            ]
        })
    }

    pub fn max_abs(&self) -> f64 {
        let mut m: f64 = 0.0;
        for row in &self.points {
            for p in row {
                for c in p {
                    m = m.max(c.to_f64().abs());
                }
            }
        }
        m
    }
}

impl BezierGrid<Rat> {
    pub fn to_f64(&self) -> BezierGrid<f64> {
        self.map_scalar(|v| v.to_f64())
    }
}

/// The nine prescribed points: the full v = 0 edge and the v = 1 edge
/// without its middle point.
#[derive(Clone, Debug, PartialEq)]
pub struct GivenNet<T: Scalar> {
    pub v0_edge: [[T; 3]; 5],
    pub v1_edge: [[T; 3]; 4],
}

impl<T: Scalar> GivenNet<T> {
    pub fn from_grid(grid: &BezierGrid<T>) -> Self {
        GivenNet {
            v0_edge: std::array::from_fn(|i| grid.points[i][0].clone()),
            v1_edge: std::array::from_fn(|k| {
                let i = [0, 1, 3, 4][k];
                grid.points[i][4].clone()
            }),
        }
    }

    /// Value of the k-th given slot, in GIVEN_SLOTS order.
    pub fn point(&self, k: usize) -> &[T; 3] {
        match GIVEN_SLOTS[k] {
            (i, 0) => &self.v0_edge[i],
            (0, 4) => &self.v1_edge[0],
            (1, 4) => &self.v1_edge[1],
            (3, 4) => &self.v1_edge[2],
            (4, 4) => &self.v1_edge[3],
            _ => unreachable!(),
        }
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> GivenNet<U> {
        let fp = |p: &[T; 3]| [f(&p[0]), f(&p[1]), f(&p[2])];
        GivenNet {
            v0_edge: std::array::from_fn(|i| fp(&self.v0_edge[i])),
            v1_edge: std::array::from_fn(|i| fp(&self.v1_edge[i])),
        }
    }
}

/// Fill the sixteen free slots with the unique values making the patch
/// harmonic, using the closed-form weights.
pub fn complete_harmonic<T: Scalar>(given: &GivenNet<T>) -> BezierGrid<T> {
    let mut grid = BezierGrid::zero();
    for (k, &(i, j)) in GIVEN_SLOTS.iter().enumerate() {
        grid.points[i][j] = given.point(k).clone();
    }
    for (m, &(i, j)) in UNKNOWN_SLOTS.iter().enumerate() {
        let mut acc = [T::zero(), T::zero(), T::zero()];
        for (k, &num) in COMPLETION_NUM[m].iter().enumerate() {
            let w = T::ratio(num, COMPLETION_DEN[m]);
            let p = given.point(k);
            for c in 0..3 {
                acc[c] = acc[c].clone() + p[c].clone() * w.clone();
            }
        }
        grid.points[i][j] = acc;
    }
    grid
}

// Laplacian coefficient of u^k v^l contributed by control point (i, j).
fn laplacian_weight(i: usize, j: usize, k: usize, l: usize) -> i64 {
    let mut w = 0i64;
    if k + 2 <= 4 {
        w += ((k + 1) * (k + 2)) as i64 * BERN_TO_MONO[i][k + 2] * BERN_TO_MONO[j][l];
    }
    if l + 2 <= 4 {
        w += ((l + 1) * (l + 2)) as i64 * BERN_TO_MONO[i][k] * BERN_TO_MONO[j][l + 2];
    }
    w
}

/// Independent completion: assemble the vanishing-Laplacian equations in the
/// monomial basis and solve them by elimination. Shares no coefficients with
/// `complete_harmonic`.
pub fn harmonic_oracle<T: Scalar>(given: &GivenNet<T>) -> Result<BezierGrid<T>, BezierError> {
    // 21 equations: Laplacian coefficients of u^k v^l with k <= 2 or l <= 2
    let mut rows: Vec<([T; 16], [T; 3])> = Vec::with_capacity(21);
    for k in 0..5 {
        for l in 0..5 {
            if k > 2 && l > 2 {
                continue;
            }
            let mut coef: [T; 16] = std::array::from_fn(|_| T::zero());
            let mut rhs = [T::zero(), T::zero(), T::zero()];
            for (m, &(i, j)) in UNKNOWN_SLOTS.iter().enumerate() {
                coef[m] = T::from_int(laplacian_weight(i, j, k, l));
            }
            for (m, &(i, j)) in GIVEN_SLOTS.iter().enumerate() {
                let w = T::from_int(laplacian_weight(i, j, k, l));
                let p = given.point(m);
                for c in 0..3 {
                    rhs[c] = rhs[c].clone() - p[c].clone() * w.clone();
                }
            }
            rows.push((coef, rhs));
        }
    }
    debug_assert_eq!(rows.len(), 21);

    // Gauss-Jordan with magnitude pivoting; exact over rationals.
    let mut pivot_row_of_col: [usize; 16] = [usize::MAX; 16];
    let mut used = vec![false; rows.len()];
    for col in 0..16 {
        let mut best: Option<(usize, f64)> = None;
        for (r, row) in rows.iter().enumerate() {
            if used[r] {
                continue;
            }
            let mag = row.0[col].to_f64().abs();
            if mag > best.map_or(0.0, |b| b.1) {
                best = Some((r, mag));
            }
        }
        let Some((r, mag)) = best else {
            return Err(BezierError::RankDeficient);
        };
        if mag < 1e-9 {
            return Err(BezierError::RankDeficient);
        }
        used[r] = true;
        pivot_row_of_col[col] = r;
        let inv = T::one() / rows[r].0[col].clone();
        for c in 0..16 {
            rows[r].0[c] = rows[r].0[c].clone() * inv.clone();
        }
        for c in 0..3 {
            rows[r].1[c] = rows[r].1[c].clone() * inv.clone();
        }
        let pivot = rows[r].clone();
        for (rr, row) in rows.iter_mut().enumerate() {
            if rr == r {
                continue;
            }
            let factor = row.0[col].clone();
            if factor.negligible() {
                continue;
            }
            for c in 0..16 {
                row.0[c] = row.0[c].clone() - factor.clone() * pivot.0[c].clone();
            }
            for c in 0..3 {
                row.1[c] = row.1[c].clone() - factor.clone() * pivot.1[c].clone();
            }
        }
    }

    // the five dependent equations must have been annihilated
    let scale = 1.0 + given_scale(given);
    for (r, row) in rows.iter().enumerate() {
        if used[r] {
            continue;
        }
        let defect = row
            .1
            .iter()
            .map(|v| v.to_f64().abs())
            .fold(0.0, f64::max);
        let ok = if T::EXACT {
            row.1.iter().all(|v| v.negligible())
        } else {
            defect <= 1e-9 * scale
        };
        if !ok {
            return Err(BezierError::Inconsistent { defect });
        }
    }

    let mut grid = BezierGrid::zero();
    for (k, &(i, j)) in GIVEN_SLOTS.iter().enumerate() {
        grid.points[i][j] = given.point(k).clone();
    }
    for (m, &(i, j)) in UNKNOWN_SLOTS.iter().enumerate() {
        grid.points[i][j] = rows[pivot_row_of_col[m]].1.clone();
    }
    Ok(grid)
}

fn given_scale<T: Scalar>(given: &GivenNet<T>) -> f64 {
    let mut m: f64 = 0.0;
    for k in 0..9 {
        for c in given.point(k) {
            m = m.max(c.to_f64().abs());
        }
    }
    m
}

/// Polynomial chart of the patch over `domain` (the unit square of the net
/// is mapped affinely onto the domain).
pub fn bezier_to_chart<T: Scalar>(grid: &BezierGrid<T>, domain: &Domain<T>) -> VectorChart<T> {
    // monomial coefficients on the unit square
    let mut comps = [Poly2::zero(), Poly2::zero(), Poly2::zero()];
    for c in 0..3 {
        let mut terms = Vec::new();
        for k in 0..5 {
            for l in 0..5 {
                let mut acc = T::zero();
                for i in 0..5 {
                    for j in 0..5 {
                        let w = BERN_TO_MONO[i][k] * BERN_TO_MONO[j][l];
                        if w != 0 {
                            acc = acc + grid.points[i][j][c].clone() * T::from_int(w);
                        }
                    }
                }
                terms.push((k, l, acc));
            }
        }
        comps[c] = Poly2::from_terms(&terms);
    }
    // substitute s = (u - u0)/w, t = (v - v0)/h
    let wd = domain.width();
    let hd = domain.height();
    let su = Poly2::from_terms(&[
        (1, 0, T::one() / wd.clone()),
        (0, 0, -domain.u0.clone() / wd),
    ]);
    let tv = Poly2::from_terms(&[
        (0, 1, T::one() / hd.clone()),
        (0, 0, -domain.v0.clone() / hd),
    ]);
    VectorChart::new([
        comps[0].compose(&su, &tv),
        comps[1].compose(&su, &tv),
        comps[2].compose(&su, &tv),
    ])
}

/// Inverse of `bezier_to_chart` for charts of degree at most four in each
/// variable.
pub fn chart_to_bezier<T: Scalar>(
    chart: &VectorChart<T>,
    domain: &Domain<T>,
) -> Result<BezierGrid<T>, BezierError> {
    let (du, dv) = chart.degrees();
    if du > 4 || dv > 4 {
        return Err(BezierError::DegreeTooHigh { du, dv });
    }
    // restrict to the unit square: u = u0 + w s, v = v0 + h t
    let su = Poly2::from_terms(&[(1, 0, domain.width()), (0, 0, domain.u0.clone())]);
    let tv = Poly2::from_terms(&[(0, 1, domain.height()), (0, 0, domain.v0.clone())]);
    let unit: Vec<Poly2<T>> = chart
        .comps
        .iter()
        .map(|p| p.compose(&su, &tv))
        .collect();
    let mut grid = BezierGrid::zero();
    for i in 0..5 {
        for j in 0..5 {
            for c in 0..3 {
                let mut acc = T::zero();
                for k in 0..=i {
                    for l in 0..=j {
                        let w = T::ratio(binom(i, k) * binom(j, l), BINOM4[k] * BINOM4[l]);
                        acc = acc + unit[c].coeff(k, l) * w;
                    }
                }
                grid.points[i][j][c] = acc;
            }
        }
    }
    Ok(grid)
}

/// Coordinate plane for mirror checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SymmetryPlane {
    Oxy,
    Oxz,
    Oyz,
}

impl SymmetryPlane {
    /// Index of the coordinate negated by the mirror.
    pub fn flipped_axis(&self) -> usize {
        match self {
            SymmetryPlane::Oxy => 2,
            SymmetryPlane::Oxz => 1,
            SymmetryPlane::Oyz => 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SymmetryCheck {
    pub symmetric: bool,
    pub max_defect: f64,
}

/// Mirror symmetry of the net under the row reversal i -> 4 - i combined
/// with negating one coordinate; the middle row must sit on the plane.
pub fn check_symmetry<T: Scalar>(grid: &BezierGrid<T>, plane: SymmetryPlane) -> SymmetryCheck {
    let axis = plane.flipped_axis();
    let mut exact = true;
    let mut max_defect: f64 = 0.0;
    for i in 0..5 {
        for j in 0..5 {
            let a = &grid.points[i][j];
            let b = &grid.points[4 - i][j];
            for c in 0..3 {
                let expect = if c == axis { -b[c].clone() } else { b[c].clone() };
                let diff = a[c].clone() - expect;
                if !diff.negligible() {
                    exact = false;
                }
                max_defect = max_defect.max(diff.to_f64().abs());
            }
        }
    }
    let symmetric = if T::EXACT {
        exact
    } else {
        max_defect <= crate::tol::SYMMETRY_MAX * (1.0 + grid.max_abs())
    };
    SymmetryCheck {
        symmetric,
        max_defect,
    }
}

/// Outcome of `find_matching_domain`: the domain on which the chart's net
/// equals the target, possibly after transposing the target's indexing.
#[derive(Clone, Debug)]
pub struct DomainMatch {
    pub domain: Domain<Rat>,
    pub transposed: bool,
}

/// Search symmetric domains [-h, h]^2 for one whose induced net matches the
/// target grid, in either index orientation.
pub fn find_matching_domain(
    chart: &VectorChart<Rat>,
    target: &BezierGrid<Rat>,
    half_widths: &[Rat],
) -> Option<DomainMatch> {
    let flipped = target.transpose();
    for h in half_widths {
        let domain = Domain::symmetric(h.clone());
        let Ok(net) = chart_to_bezier(chart, &domain) else {
            continue;
        };
        if net == *target {
            return Some(DomainMatch {
                domain,
                transposed: false,
            });
        }
        if net == flipped {
            return Some(DomainMatch {
                domain,
                transposed: true,
            });
        }
    }
    None
}

#[derive(Deserialize)]
struct NetJson {
    layout: String,
    points: Vec<Vec<Option<[serde_json::Value; 3]>>>,
}

fn value_to_rat(v: &serde_json::Value, i: usize, j: usize) -> Result<(Rat, bool), BezierError> {
    match v {
        serde_json::Value::String(s) => Rat::from_str(s)
            .map(|r| (r, true))
            .map_err(|e| BezierError::BadValue {
                i,
                j,
                msg: e.to_string(),
            }),
        serde_json::Value::Number(n) => {
            let x = n.as_f64().ok_or_else(|| BezierError::BadValue {
                i,
                j,
                msg: "not representable".into(),
            })?;
            rat_from_f64(x)
                .map(|r| (r, false))
                .ok_or_else(|| BezierError::BadValue {
                    i,
                    j,
                    msg: "non-finite".into(),
                })
        }
        other => Err(BezierError::BadValue {
            i,
            j,
            msg: format!("expected number or \"p/q\" string, got {other}"),
        }),
    }
}

fn parse_net(text: &str) -> Result<(Vec<Vec<Option<[Rat; 3]>>>, bool), BezierError> {
    let doc: NetJson = serde_json::from_str(text).map_err(|e| BezierError::Json(e.to_string()))?;
    if doc.layout != LAYOUT_ID {
        return Err(BezierError::WrongLayout { found: doc.layout });
    }
    if doc.points.len() != 5 || doc.points.iter().any(|row| row.len() != 5) {
        return Err(BezierError::Json("points must be a 5x5 array".into()));
    }
    let mut all_exact = true;
    let mut out: Vec<Vec<Option<[Rat; 3]>>> = Vec::with_capacity(5);
    for (i, row) in doc.points.iter().enumerate() {
        let mut orow = Vec::with_capacity(5);
        for (j, slot) in row.iter().enumerate() {
            match slot {
                None => orow.push(None),
                Some(triple) => {
                    let mut p = [Rat::zero(), Rat::zero(), Rat::zero()];
                    for (c, v) in triple.iter().enumerate() {
                        let (r, exact) = value_to_rat(v, i, j)?;
                        all_exact &= exact;
                        p[c] = r;
                    }
                    orow.push(Some(p));
                }
            }
        }
        out.push(orow);
    }
    Ok((out, all_exact))
}

/// Parse completion input: given slots must be present, all others null.
/// The boolean reports whether every value arrived as an exact "p/q" string.
pub fn given_net_from_json(text: &str) -> Result<(GivenNet<Rat>, bool), BezierError> {
    let (slots, all_exact) = parse_net(text)?;
    for i in 0..5 {
        for j in 0..5 {
            let is_given = GIVEN_SLOTS.contains(&(i, j));
            match (&slots[i][j], is_given) {
                (None, true) => return Err(BezierError::MissingGiven { i, j }),
                (Some(_), false) => return Err(BezierError::UnexpectedValue { i, j }),
                _ => {}
            }
        }
    }
    let grab = |i: usize, j: usize| slots[i][j].clone().unwrap();
    let given = GivenNet {
        v0_edge: std::array::from_fn(|i| grab(i, 0)),
        v1_edge: std::array::from_fn(|k| grab([0, 1, 3, 4][k], 4)),
    };
    Ok((given, all_exact))
}

/// Parse a full 25-point net.
pub fn grid_from_json(text: &str) -> Result<(BezierGrid<Rat>, bool), BezierError> {
    let (slots, all_exact) = parse_net(text)?;
    let mut grid = BezierGrid::zero();
    for i in 0..5 {
        for j in 0..5 {
            match &slots[i][j] {
                Some(p) => grid.points[i][j] = p.clone(),
                None => return Err(BezierError::MissingGiven { i, j }),
            }
        }
    }
    Ok((grid, all_exact))
}

/// Serialize a net; `exact` selects "p/q" strings over floating values.
pub fn grid_to_json(grid: &BezierGrid<Rat>, exact: bool) -> String {
    use serde_json::{json, Value};
    let points: Vec<Value> = (0..5)
        .map(|i| {
            let row: Vec<Value> = (0..5)
                .map(|j| {
                    let p = &grid.points[i][j];
                    if exact {
                        json!([p[0].to_string(), p[1].to_string(), p[2].to_string()])
                    } else {
                        json!([p[0].to_f64(), p[1].to_f64(), p[2].to_f64()])
                    }
                })
                .collect();
            Value::Array(row)
        })
        .collect();
    let doc = json!({ "layout": LAYOUT_ID, "points": points });
    serde_json::to_string_pretty(&doc).expect("net serialization cannot fail")
}
