//! Deterministic sampling plans. Every randomized check in the crate draws
//! from a seeded ChaCha stream so reruns see the same points.

use crate::domain::Domain;
use crate::poly::C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Regular grid plus seeded uniform points over a rectangle.
#[derive(Clone, Debug)]
pub struct SamplePlan {
    pub domain: Domain<f64>,
    pub grid_rows: usize,
    pub grid_cols: usize,
    pub n_random: usize,
    pub seed: u64,
}

impl SamplePlan {
    /// Grid-only plan.
    pub fn grid(domain: Domain<f64>, rows: usize, cols: usize) -> Self {
        SamplePlan {
            domain,
            grid_rows: rows,
            grid_cols: cols,
            n_random: 0,
            seed: 0,
        }
    }

    /// Seeded scatter without a grid.
    pub fn scatter(domain: Domain<f64>, n: usize, seed: u64) -> Self {
        SamplePlan {
            domain,
            grid_rows: 0,
            grid_cols: 0,
            n_random: n,
            seed,
        }
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.grid_rows * self.grid_cols + self.n_random);
        if self.grid_rows > 0 && self.grid_cols > 0 {
            for r in 0..self.grid_rows {
                let t = if self.grid_rows == 1 {
                    0.5
                } else {
                    r as f64 / (self.grid_rows - 1) as f64
                };
                for c in 0..self.grid_cols {
                    let s = if self.grid_cols == 1 {
                        0.5
                    } else {
                        c as f64 / (self.grid_cols - 1) as f64
                    };
                    out.push((
                        self.domain.u0 + s * self.domain.width(),
                        self.domain.v0 + t * self.domain.height(),
                    ));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..self.n_random {
            let u = rng.gen_range(self.domain.u0..=self.domain.u1);
            let v = rng.gen_range(self.domain.v0..=self.domain.v1);
            out.push((u, v));
        }
        out
    }
}

/// Annulus sampling that stays clear of the positive imaginary axis, where
/// the principal branch of w -> (iw)^(2/3) jumps. `cut_guard` is the
/// half-width in radians of the excluded wedge around arg w = pi/2.
#[derive(Clone, Debug)]
pub struct AnnulusPlan {
    pub r_min: f64,
    pub r_max: f64,
    pub cut_guard: f64,
    pub n_radii: usize,
    pub n_angles: usize,
    pub n_random: usize,
    pub seed: u64,
}

impl AnnulusPlan {
    pub fn points(&self) -> Vec<C64> {
        let mut out = Vec::new();
        for ir in 0..self.n_radii {
            let t = if self.n_radii == 1 {
                0.5
            } else {
                ir as f64 / (self.n_radii - 1) as f64
            };
            let r = self.r_min + t * (self.r_max - self.r_min);
            for ia in 0..self.n_angles {
                let theta = -std::f64::consts::PI
                    + 2.0 * std::f64::consts::PI * ia as f64 / self.n_angles as f64;
                if self.in_guard(theta) {
                    continue;
                }
                out.push(C64::new(r * theta.cos(), r * theta.sin()));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut drawn = 0;
        while drawn < self.n_random {
            let r = rng.gen_range(self.r_min..=self.r_max);
            let theta = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            if self.in_guard(theta) {
                continue;
            }
            out.push(C64::new(r * theta.cos(), r * theta.sin()));
            drawn += 1;
        }
        out
    }

    fn in_guard(&self, theta: f64) -> bool {
        (theta - std::f64::consts::FRAC_PI_2).abs() < self.cut_guard
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plans_are_reproducible() {
        let plan = SamplePlan::scatter(Domain::symmetric(1.0), 64, 7);
        assert_eq!(plan.points(), plan.points());
        let other = SamplePlan::scatter(Domain::symmetric(1.0), 64, 8);
        assert_ne!(plan.points(), other.points());
    }

    #[test]
    fn grid_covers_corners() {
        let plan = SamplePlan::grid(Domain::new(-1.0, 1.0, 0.0, 2.0), 3, 3);
        let pts = plan.points();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], (-1.0, 0.0));
        assert_eq!(pts[8], (1.0, 2.0));
    }

    #[test]
    fn annulus_avoids_branch_wedge() {
        let plan = AnnulusPlan {
            r_min: 0.05,
            r_max: 2.0,
            cut_guard: 0.15,
            n_radii: 8,
            n_angles: 64,
            n_random: 200,
            seed: 3,
        };
        let pts = plan.points();
        assert!(pts.len() > 200);
        for w in &pts {
            let r = w.norm();
            assert!(r >= 0.05 - 1e-12 && r <= 2.0 + 1e-12);
            assert!((w.arg() - std::f64::consts::FRAC_PI_2).abs() >= 0.15 - 1e-12);
        }
        assert_eq!(plan.points(), plan.points());
    }
}
