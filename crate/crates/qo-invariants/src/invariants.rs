//! The Betti-number pipeline: 1-eigenspace dimensions of the vertical
//! monodromy and the first Betti numbers of the vertical fibration
//! spaces and of the Milnor fiber boundary.
//!
//! The eigenspace dimension obeys a closed recursion over the derivation
//! tower,
//!
//!   xi[e-1] = (c[e-1] - 1)(d[e-1] - 1)
//!   xi[k]   = degree[k+1] * (c[k] - 1)(d[k] - 1) + xi[k+1]
//!
//! with `d[k]`, `c[k]` the truncation degree and numerator gcd of level
//! `k` and `degree[k+1]` the suffix degree. Both axes must produce the
//! same sequence, and the bottom value ties the whole pipeline together:
//! the vertical zeta function must carry `t - 1` with multiplicity
//! `1 - xi`. The fibration space then has first Betti number `xi + 1`,
//! and the boundary, glued from the two fibration spaces along a torus,
//! has first Betti number `2 * xi` (always even).

use num_bigint::BigInt;
use num_traits::One;

use crate::branch::DerivationSequence;
use crate::error::{Error, Result};
use crate::zeta::CycloProduct;

/// Betti data of the Milnor fiber boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiReport {
    /// Eigenspace dimensions per level, `xi_levels[k]` for level `k`.
    pub xi_levels: Vec<BigInt>,
    /// The level-0 value.
    pub xi: BigInt,
    /// First Betti number of each vertical fibration space: `xi + 1`.
    pub h1_vertical: BigInt,
    /// First Betti number of the boundary: `2 * xi`.
    pub h1_boundary: BigInt,
    /// Whether both vertical zeta functions carry `t - 1` with
    /// multiplicity `1 - xi`. Construction fails when this is false, so
    /// a built report always records `true`.
    pub zeta_consistency: bool,
}

/// Eigenspace dimensions of the vertical monodromy per level, by the
/// ascending closed recursion.
pub fn xi_sequence(seq: &DerivationSequence) -> Vec<BigInt> {
    let e = seq.levels.len();
    let degrees = seq.suffix_degrees();
    let mut xi = vec![BigInt::ZERO; e];
    for k in (0..e).rev() {
        let inv = &seq.levels[k].invariants;
        let local = (&inv.c_bullet - 1u32) * (&inv.d_bullet - 1u32);
        xi[k] = if k == e - 1 {
            local
        } else {
            &degrees[k + 1] * local + &xi[k + 1]
        };
    }
    xi
}

/// Assembles the Betti report from both towers and their vertical zeta
/// functions, enforcing the cross-axis equality of `xi` and the
/// multiplicity identity that links the zeta route to the closed
/// recursion. Violations are internal errors, never user errors.
pub fn betti_report(
    seq1: &DerivationSequence,
    seq2: &DerivationSequence,
    vertical1: &CycloProduct,
    vertical2: &CycloProduct,
) -> Result<BettiReport> {
    let xi1 = xi_sequence(seq1);
    let xi2 = xi_sequence(seq2);
    if xi1 != xi2 {
        return Err(Error::theorem(
            "eigenspace dimension axis symmetry",
            format!("axis 1 gives {xi1:?}, axis 2 gives {xi2:?}"),
        ));
    }
    let xi = xi1[0].clone();
    let expected = BigInt::one() - &xi;
    for (axis, zeta) in [(1, vertical1), (2, vertical2)] {
        let actual = zeta.tm1_multiplicity();
        if actual != expected {
            return Err(Error::theorem(
                "vertical zeta multiplicity",
                format!(
                    "axis {axis}: multiplicity of t - 1 is {actual}, expected 1 - xi = {expected}"
                ),
            ));
        }
    }
    Ok(BettiReport {
        xi_levels: xi1,
        h1_vertical: &xi + 1u32,
        h1_boundary: &xi * 2u32,
        zeta_consistency: true,
        xi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::{Axis, CharacteristicTuple, LiteralPair};
    use crate::zeta::vertical_zeta;

    fn sequences(pairs: &[LiteralPair]) -> (DerivationSequence, DerivationSequence) {
        let t = CharacteristicTuple::from_pairs(pairs);
        (
            DerivationSequence::compute(&t, Axis::One).unwrap(),
            DerivationSequence::compute(&t, Axis::Two).unwrap(),
        )
    }

    fn report(pairs: &[LiteralPair]) -> BettiReport {
        let (seq1, seq2) = sequences(pairs);
        let v1 = vertical_zeta(&seq1).unwrap();
        let v2 = vertical_zeta(&seq2).unwrap();
        betti_report(&seq1, &seq2, &v1, &v2).unwrap()
    }

    const GOLDEN: &[LiteralPair] = &[((2, 7), (4, 5)), ((5, 14), (1, 1)), ((2, 1), (19, 10))];

    #[test]
    fn xi_sequence_golden() {
        let (seq1, seq2) = sequences(GOLDEN);
        let expected: Vec<BigInt> = [416, 280, 0].map(BigInt::from).into();
        assert_eq!(xi_sequence(&seq1), expected);
        assert_eq!(xi_sequence(&seq2), expected);
    }

    #[test]
    fn xi_single_term_cases() {
        // numerator gcd 1 kills the product
        let (seq1, _) = sequences(&[((1, 2), (1, 2))]);
        assert_eq!(xi_sequence(&seq1), vec![BigInt::ZERO]);
        // (2/3, 2/3): (c - 1)(d - 1) = (2 - 1)(3 - 1) = 2, and the
        // vertical zeta multiplicity agrees: 1 - 2 = -1
        let (seq1, _) = sequences(&[((2, 3), (2, 3))]);
        assert_eq!(xi_sequence(&seq1), vec![BigInt::from(2)]);
        assert_eq!(
            vertical_zeta(&seq1).unwrap().tm1_multiplicity(),
            BigInt::from(-1)
        );
    }

    #[test]
    fn betti_report_golden() {
        let betti = report(GOLDEN);
        assert_eq!(betti.xi, BigInt::from(416));
        assert_eq!(betti.h1_vertical, BigInt::from(417));
        assert_eq!(betti.h1_boundary, BigInt::from(832));
        assert!(betti.zeta_consistency);
    }

    #[test]
    fn mismatched_zeta_input_is_a_theorem_violation() {
        // feeding the vertical zeta of a different branch breaks the
        // multiplicity identity and must surface as an internal error
        let (seq1, seq2) = sequences(GOLDEN);
        let v1 = vertical_zeta(&seq1).unwrap();
        let (other, _) = sequences(&[((1, 2), (1, 2))]);
        let wrong = vertical_zeta(&other).unwrap();
        let err = betti_report(&seq1, &seq2, &v1, &wrong).unwrap_err();
        assert!(matches!(err, crate::error::Error::TheoremViolation { .. }));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn betti_report_single_term_cases() {
        let trivial = report(&[((1, 2), (1, 2))]);
        assert_eq!(trivial.xi, BigInt::ZERO);
        assert_eq!(trivial.h1_vertical, BigInt::one());
        assert_eq!(trivial.h1_boundary, BigInt::ZERO);

        let third = report(&[((2, 3), (2, 3))]);
        assert_eq!(third.xi, BigInt::from(2));
        assert_eq!(third.h1_vertical, BigInt::from(3));
        assert_eq!(third.h1_boundary, BigInt::from(4));
    }
}
