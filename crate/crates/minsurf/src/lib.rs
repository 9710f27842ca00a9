//! Polynomial minimal-surface toolkit: holomorphic curve generators,
//! conjugate harmonic charts, curvature analysis in conformal and canonical
//! parameters, and harmonic completion of quartic Bezier nets.
//!
//! Start with the runnable examples (`cargo run --example enneper`) for a
//! tour of the main entry points.

pub mod bezier;
pub mod canonical;
pub mod chart;
pub mod curve;
pub mod domain;
pub mod extract;
pub mod forms;
pub mod poly;
pub mod poly2;
pub mod reference;
pub mod sample;
pub mod scalar;
pub mod tol;
