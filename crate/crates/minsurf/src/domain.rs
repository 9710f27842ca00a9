//! Rectangular parameter domains.

use crate::scalar::Scalar;

/// Axis-aligned rectangle [u0, u1] x [v0, v1]. Invariant: u0 < u1, v0 < v1.
#[derive(Clone, Debug, PartialEq)]
pub struct Domain<T: Scalar> {
    pub u0: T,
    pub u1: T,
    pub v0: T,
    pub v1: T,
}

impl<T: Scalar> Domain<T> {
    pub fn new(u0: T, u1: T, v0: T, v1: T) -> Self {
        debug_assert!(u0.to_f64() < u1.to_f64() && v0.to_f64() < v1.to_f64());
        Domain { u0, u1, v0, v1 }
    }

    pub fn unit() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::one())
    }

    /// [-h, h]^2.
    pub fn symmetric(h: T) -> Self {
        Self::new(-h.clone(), h.clone(), -h.clone(), h)
    }

    pub fn width(&self) -> T {
        self.u1.clone() - self.u0.clone()
    }

    pub fn height(&self) -> T {
        self.v1.clone() - self.v0.clone()
    }

    /// Map unit-square coordinates (s, t) into the domain.
    pub fn lerp(&self, s: &T, t: &T) -> (T, T) {
        (
            self.u0.clone() + self.width() * s.clone(),
            self.v0.clone() + self.height() * t.clone(),
        )
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Domain<U> {
        Domain {
            u0: f(&self.u0),
            u1: f(&self.u1),
            v0: f(&self.v0),
            v1: f(&self.v1),
        }
    }

    pub fn to_f64(&self) -> Domain<f64> {
        self.map_scalar(|x| x.to_f64())
    }
}

impl Domain<f64> {
    pub fn contains(&self, u: f64, v: f64) -> bool {
        self.u0 <= u && u <= self.u1 && self.v0 <= v && v <= self.v1
    }

    /// Shrink by `factor` about the center, preserving the aspect ratio.
    pub fn shrink(&self, factor: f64) -> Domain<f64> {
        let cu = 0.5 * (self.u0 + self.u1);
        let cv = 0.5 * (self.v0 + self.v1);
        let hw = 0.5 * self.width() * factor;
        let hh = 0.5 * self.height() * factor;
        Domain::new(cu - hw, cu + hw, cv - hh, cv + hh)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use num_traits::{One, Zero};

    #[test]
    fn lerp_hits_corners_and_center() {
        let d: Domain<Rat> = Domain::new(
            Rat::from_int(-4),
            Rat::from_int(4),
            Rat::from_int(-4),
            Rat::from_int(4),
        );
        assert_eq!(
            d.lerp(&Rat::zero(), &Rat::one()),
            (Rat::from_int(-4), Rat::from_int(4))
        );
        let half = Rat::ratio(1, 2);
        assert_eq!(d.lerp(&half, &half), (Rat::zero(), Rat::zero()));
    }

    #[test]
    fn shrink_keeps_center() {
        let d = Domain::new(-1.0, 3.0, 0.0, 2.0).shrink(0.5);
        assert_eq!((d.u0, d.u1, d.v0, d.v1), (0.0, 2.0, 0.5, 1.5));
    }
}
