//! Built-in reference data: a quartic harmonic net with an Oxz mirror
//! symmetry, reproduced exactly by the chart of the generator pair
//! (z, z - 1) over [-4, 4]^2 once the net indexing is transposed. The
//! verification suite replays all of its claimed properties against this
//! net.

use crate::bezier::{BezierGrid, GivenNet};
use crate::domain::Domain;
use crate::poly::ComplexPoly;
use crate::scalar::{Rat, Scalar};

// control points scaled by 3; net[i][j] = (3 x, 3 y, 3 z)
const NET_X3: [[(i64, i64, i64); 5]; 5] = [
    [
        (512, -176, 128),
        (128, 424, 152),
        (-384, 128, 32),
        (-128, -296, -104),
        (256, -80, -128),
    ],
    [
        (-64, -536, -88),
        (224, -44, 32),
        (0, 0, 8),
        (160, -20, -32),
        (64, 280, 40),
    ],
    [
        (-512, 0, -160),
        (0, 0, -8),
        (-128, 0, 0),
        (0, 0, -8),
        (-256, 0, 96),
    ],
    [
        (-64, 536, -88),
        (224, 44, 32),
        (0, 0, 8),
        (160, 20, -32),
        (64, -280, 40),
    ],
    [
        (512, 176, 128),
        (128, -424, 152),
        (-384, -128, 32),
        (-128, 296, -104),
        (256, 80, -128),
    ],
];

pub fn reference_grid() -> BezierGrid<Rat> {
    BezierGrid::from_fn(|i, j| {
        let (x, y, z) = NET_X3[i][j];
        [Rat::ratio(x, 3), Rat::ratio(y, 3), Rat::ratio(z, 3)]
    })
}

pub fn reference_given() -> GivenNet<Rat> {
    GivenNet::from_grid(&reference_grid())
}

/// The pair whose chart carries the reference net.
pub fn reference_generators() -> (ComplexPoly<Rat>, ComplexPoly<Rat>) {
    (
        ComplexPoly::from_real_ratios(&[(0, 1), (1, 1)]),
        ComplexPoly::from_real_ratios(&[(-1, 1), (1, 1)]),
    )
}

pub fn reference_domain() -> Domain<Rat> {
    Domain::symmetric(Rat::from_int(4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bezier::{
        bezier_to_chart, chart_to_bezier, check_symmetry, complete_harmonic, find_matching_domain,
        harmonic_oracle, SymmetryPlane,
    };
    use crate::chart::real_chart;
    use crate::curve::weierstrass_curve;
    use crate::extract::{extract_generators, ExtractError};

    #[test]
    fn net_is_the_transposed_chart_net() {
        let (f, g) = reference_generators();
        let chart = real_chart(&weierstrass_curve(&f, &g).unwrap());
        let net = chart_to_bezier(&chart, &reference_domain()).unwrap();
        assert_eq!(net.transpose(), reference_grid());
    }

    #[test]
    fn both_completion_routes_reproduce_the_net() {
        let given = reference_given();
        assert_eq!(complete_harmonic(&given), reference_grid());
        assert_eq!(harmonic_oracle(&given).unwrap(), reference_grid());
    }

    #[test]
    fn net_is_mirror_symmetric_and_harmonic() {
        let grid = reference_grid();
        let check = check_symmetry(&grid, SymmetryPlane::Oxz);
        assert!(check.symmetric && check.max_defect == 0.0);
        assert!(!check_symmetry(&grid, SymmetryPlane::Oxy).symmetric);
        let chart = bezier_to_chart(&grid, &Domain::unit());
        assert!(chart.is_harmonic());
    }

    #[test]
    fn domain_search_recovers_the_transposed_match() {
        let (f, g) = reference_generators();
        let chart = real_chart(&weierstrass_curve(&f, &g).unwrap());
        let halves: Vec<Rat> = (1..=8).map(Rat::from_int).collect();
        let found = find_matching_domain(&chart, &reference_grid(), &halves).unwrap();
        assert!(found.transposed);
        assert_eq!(found.domain, reference_domain());
    }

    #[test]
    fn generator_recovery_needs_the_transposed_orientation() {
        // the stored orientation swaps the parameters; its g would be
        // rational, so extraction refuses it
        let stored = bezier_to_chart(&reference_grid(), &reference_domain());
        assert!(matches!(
            extract_generators(&stored),
            Err(ExtractError::NonPolynomialQuotient { .. })
        ));
        // transposing the net first recovers the original pair exactly
        let flipped = bezier_to_chart(&reference_grid().transpose(), &reference_domain());
        let got = extract_generators(&flipped).unwrap();
        let (f, g) = reference_generators();
        assert_eq!((got.f, got.g), (f, g));
    }
}
