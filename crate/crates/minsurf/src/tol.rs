//! Every numeric threshold used by the library, in one place.
//! Tests and the verification report must reference these constants instead of
//! re-pinning literals, so a tolerance change is a one-line diff.

/// Trailing polynomial coefficients below this are stripped on the float backend.
pub const COEFF_STRIP: f64 = 1e-14;

/// Max |sum of squared curve derivatives| coefficient for a float minimal curve.
pub const ISOTROPY_MAX: f64 = 1e-12;

/// Sampled |E-G| and |F| below this flag a float chart as isothermal.
pub const ISOTHERMAL_SAMPLED: f64 = 1e-9;

/// Max |H| accepted as "minimal" under float sampling.
pub const MEAN_CURVATURE_MAX: f64 = 1e-9;

/// Relative agreement demanded between closed-form and finite-form curvature data.
pub const CLOSED_FORM_REL: f64 = 1e-9;

/// Relative agreement between nu = sqrt(-K) routes.
pub const NU_REL: f64 = 1e-10;

/// Residual norm accepted when dividing out the third curve derivative (float).
pub const DIVISION_REMAINDER: f64 = 1e-10;

/// Charts are refused as singular where |x_u x x_v| falls below this.
pub const REGULARITY_MIN: f64 = 1e-12;

/// Step for the finite-difference evaluation cross-checks of chart partials.
pub const FD_EVAL_STEP: f64 = 1e-6;
pub const FD_EVAL_MAX: f64 = 1e-6;

/// Affine maps with |Jacobian| below this are degenerate.
pub const AFFINE_JACOBIAN_MIN: f64 = 1e-12;

/// Sampled mixed-form floor that certifies a reparametrization is NOT isothermal.
pub const MIXED_FORM_FLOOR: f64 = 1e-6;

/// Central-difference step factor for the substitution derivative (scaled by |w|).
pub const SUBSTITUTION_FD_FACTOR: f64 = 1e-6;

/// Max |(z')^2 + 1/(f g')| accepted for the canonical substitution.
pub const SUBSTITUTION_RESIDUAL_MAX: f64 = 1e-8;

/// Max finite-difference defect of the natural curvature equation at h = 1e-3.
pub const PDE_DEFECT_MAX: f64 = 1e-4;
pub const PDE_STEP: f64 = 1e-3;

/// First/second fundamental form budgets for integrated canonical charts.
pub const CANONICAL_FIRST_FORM: f64 = 1e-6;
pub const CANONICAL_SECOND_FORM: f64 = 1e-5;
pub const CANONICAL_FD_FIRST: f64 = 1e-5;
pub const CANONICAL_FD_SECOND: f64 = 1e-3;

/// Absolute tolerance for the adaptive quadrature behind canonical charts.
/// Tighter than the form budgets because finite differencing divides the
/// quadrature noise by the FD step.
pub const QUADRATURE_ABS: f64 = 1e-12;

/// Float-backend symmetry acceptance for completed control nets.
pub const SYMMETRY_MAX: f64 = 1e-10;

/// Vertex agreement demanded when OBJ output is parsed back.
pub const OBJ_ROUNDTRIP: f64 = 1e-15;

/// Default sampling seed; the CLI env var MINSURF_SEED overrides it.
pub const DEFAULT_SEED: u64 = 42;
