//! Comparison of the two derivation towers.
//!
//! At every level `k >= 1` the level-`k` branches of the two towers are
//! related by a pair of 2x2 matrices: `U` mixes the coordinate vectors
//! across the towers,
//!
//!   [lambda1[j] of tower 1; lambda2[j] of tower 2]
//!     = U * [lambda1[j] of tower 2; lambda2[j] of tower 1],
//!
//! and `M = sw(U)` untangles them into a direct translation
//!
//!   [lambda1[j]; lambda2[j]] of tower 1 = M * [lambda1[j]; lambda2[j]] of tower 2,
//!
//! with `M` an integer matrix of determinant 1. `U` starts from the
//! level-0 closed form and advances by a recursion consuming level data
//! from both towers; `M` can either be computed as `sw(U)` or advanced
//! by its own recursion, and the two routes must agree.
//!
//! [`verify_comparison`] runs every structural identity the towers must
//! satisfy and returns a pass/fail report with witness values instead of
//! failing fast, so a single run surfaces all outcomes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::branch::{Axis, DerivationSequence, Level, LevelInvariants};
use crate::error::{Error, Result};
use crate::exact::{sw, Mat2, Rational};

/// The matrices relating the two towers at one level.
#[derive(Clone, Debug)]
pub struct ComparisonPair {
    pub level: usize,
    pub u: Mat2,
    pub m: Mat2,
}

/// Outcome of one structural check, with the values that witnessed it.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub level: usize,
    pub pass: bool,
    pub witness: String,
}

impl Check {
    fn equality<T: PartialEq + fmt::Display>(
        name: &'static str,
        level: usize,
        lhs: T,
        rhs: T,
    ) -> Check {
        Check {
            name,
            level,
            pass: lhs == rhs,
            witness: format!("{lhs} vs {rhs}"),
        }
    }
}

/// Full comparison result: one matrix pair per level from 1 on, plus
/// every check outcome.
#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub pairs: Vec<ComparisonPair>,
    pub checks: Vec<Check>,
}

impl ComparisonReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// The level-0 closed form
/// `U = [[b1/m1, b1*r1*lambda11], [b2*r2*lambda21, b2/m2]]`;
/// both diagonal entries equal `d / (m1 * m2)`.
pub fn u_base(inv: &LevelInvariants) -> Mat2 {
    let lambda11 = inv.leading(Axis::One);
    let lambda21 = inv.leading(Axis::Two);
    Mat2::new(
        Rational::reduce(inv.b1.clone(), inv.m1.clone()).expect("m1 > 0"),
        &(&Rational::from(&inv.b1) * &Rational::from(&inv.r1)) * &lambda11,
        &(&Rational::from(&inv.b2) * &Rational::from(&inv.r2)) * &lambda21,
        Rational::reduce(inv.b2.clone(), inv.m2.clone()).expect("m2 > 0"),
    )
}

/// One step of the `U` recursion. `level1` and `level2` are the same
/// level of the two towers: the top row consumes `b1`, `r1` and the
/// leading first exponent from tower 1, the bottom row `b2`, `r2` and
/// the leading second exponent from tower 2, and both rows divide by the
/// opposite tower's leading denominator.
pub fn u_step(u: &Mat2, level1: &Level, level2: &Level) -> Mat2 {
    let inv1 = &level1.invariants;
    let inv2 = &level2.invariants;
    let b1 = Rational::from(&inv1.b1);
    let b2 = Rational::from(&inv2.b2);
    let m1_of_2 = Rational::from(&inv2.m1);
    let m2_of_1 = Rational::from(&inv1.m2);
    let lambda11_1 = inv1.leading(Axis::One);
    let lambda21_2 = inv2.leading(Axis::Two);

    let scale = |num: &Rational, den: &Rational, entry: &Rational| {
        &(num * &den.recip().expect("denominator entry is positive")) * entry
    };
    Mat2::new(
        scale(&b1, &m1_of_2, &u.a11),
        &scale(&b1, &m2_of_1, &u.a12) + &(&(&b1 * &Rational::from(&inv1.r1)) * &lambda11_1),
        &scale(&b2, &m1_of_2, &u.a21) + &(&(&b2 * &Rational::from(&inv2.r2)) * &lambda21_2),
        scale(&b2, &m2_of_1, &u.a22),
    )
}

/// `M = sw(U)`, which must land in SL(2, Z); anything else contradicts
/// the comparison theorem and is reported as an internal error.
pub fn m_from_u(u: &Mat2) -> Result<Mat2> {
    let m = sw(u)?;
    if !m.is_integer() {
        return Err(Error::theorem(
            "comparison matrix integrality",
            format!("sw({u}) = {m} has a non-integer entry"),
        ));
    }
    if m.det() != Rational::one() {
        return Err(Error::theorem(
            "comparison matrix determinant",
            format!("det {m} = {} != 1", m.det()),
        ));
    }
    Ok(m)
}

/// One step of the direct `M` recursion; an independent route to the
/// same matrix as `m_from_u(u_step(..))`.
pub fn m_step_direct(m: &Mat2, level1: &Level, level2: &Level) -> Mat2 {
    let inv1 = &level1.invariants;
    let inv2 = &level2.invariants;
    let rat = Rational::from;
    let (m1_2, n1_2) = (rat(&inv2.m1), rat(&inv2.n1));
    let (m2_1, n2_1) = (rat(&inv1.m2), rat(&inv1.n2));
    let (r1, s1) = (rat(&inv1.r1), rat(&inv1.s1));
    let (r2, s2) = (rat(&inv2.r2), rat(&inv2.s2));
    let d_bullet = rat(&inv1.d_bullet);
    let lambda11_1 = inv1.leading(Axis::One);
    let lambda21_2 = inv2.leading(Axis::Two);

    let a12 = &(&(&s1 * &m1_2) * &m.a12) + &(&r1 * &n1_2);
    let a21 = &(&(&s2 * &m2_1) * &m.a21) - &(&r2 * &n2_1);
    let a22 = &(&m2_1 * &rat(&inv2.b2).recip().expect("b2 > 0")) * &m.a22;
    let mixed = &(&(&r1 * &s2) * &lambda21_2) + &(&(&r2 * &s1) * &lambda11_1);
    let a11 = &(&(&(&m1_2 * &rat(&inv2.b2)) * &(&s1 * &s2)) * &m.a11) - &(&d_bullet * &mixed);
    Mat2::new(a11, a12, a21, a22)
}

/// Runs every cross-tower identity and returns the full report. The two
/// sequences must come from the same branch, sliced along axis 1 and
/// axis 2 respectively.
pub fn verify_comparison(seq1: &DerivationSequence, seq2: &DerivationSequence) -> ComparisonReport {
    assert_eq!(seq1.axis, Axis::One);
    assert_eq!(seq2.axis, Axis::Two);
    assert_eq!(seq1.levels[0].branch, seq2.levels[0].branch);
    let e = seq1.levels.len();

    let mut checks = Vec::new();
    let mut pairs = Vec::new();

    // degree and gcd scalars agree level by level
    let suffix1 = seq1.suffix_degrees();
    let suffix2 = seq2.suffix_degrees();
    for k in 0..e {
        let inv1 = &seq1.levels[k].invariants;
        let inv2 = &seq2.levels[k].invariants;
        checks.push(Check::equality(
            "equal_truncation_degree",
            k,
            &inv1.d_bullet,
            &inv2.d_bullet,
        ));
        checks.push(Check::equality("equal_degree", k, &suffix1[k], &suffix2[k]));
        checks.push(Check::equality(
            "equal_c_bullet",
            k,
            &inv1.c_bullet,
            &inv2.c_bullet,
        ));
    }

    // denominator structure of the input exponents against each tower
    denominator_structure_checks(seq1, &mut checks);
    denominator_structure_checks(seq2, &mut checks);

    // degree of the shortened surface divides the transverse slice
    // degree product (with first-coordinate denominators from tower 2
    // and second-coordinate denominators from tower 1)
    let mut degree_product = BigInt::one();
    let mut slice_product = BigInt::one();
    for k in 1..=e {
        degree_product *= &seq1.levels[k - 1].invariants.d_bullet;
        slice_product *= &seq2.levels[k - 1].invariants.m1 * &seq1.levels[k - 1].invariants.m2;
        checks.push(Check {
            name: "degree_divisibility",
            level: k,
            pass: slice_product.mod_floor(&degree_product).is_zero(),
            witness: format!("{degree_product} divides {slice_product}"),
        });
    }

    // the matrix chain
    let mut u = u_base(&seq1.levels[0].invariants);
    let mut m_direct: Option<Mat2> = None;
    let mut diag_num = BigInt::one();
    let mut diag_den = BigInt::one();
    for k in 1..e {
        diag_num *= &seq1.levels[k - 1].invariants.d_bullet;
        diag_den *= &seq2.levels[k - 1].invariants.m1 * &seq1.levels[k - 1].invariants.m2;

        let m = sw(&u).expect("U has positive diagonal entries");
        if let Some(direct) = &m_direct {
            checks.push(Check::equality("m_step_agreement", k, direct, &m));
        }

        checks.push(Check::equality("u_equal_diagonal", k, &u.a11, &u.a22));
        checks.push(Check::equality(
            "u_diagonal_closed_form",
            k,
            u.a22.clone(),
            Rational::reduce(diag_num.clone(), diag_den.clone()).expect("positive denominator"),
        ));
        checks.push(Check {
            name: "m_in_sl2z",
            level: k,
            pass: m.is_integer() && m.det() == Rational::one(),
            witness: format!("{m}, det = {}", m.det()),
        });

        // vector relations at every term index
        let branch1 = &seq1.levels[k].branch;
        let branch2 = &seq2.levels[k].branch;
        for j in 0..branch1.len() {
            let pair1 = &branch1.terms[j];
            let pair2 = &branch2.terms[j];
            let u_rhs = u.apply(&(pair2.lambda1.clone(), pair1.lambda2.clone()));
            checks.push(Check {
                name: "u_relation",
                level: k,
                pass: u_rhs.0 == pair1.lambda1 && u_rhs.1 == pair2.lambda2,
                witness: format!(
                    "term {j}: U * [{}; {}] = [{}; {}], expected [{}; {}]",
                    pair2.lambda1, pair1.lambda2, u_rhs.0, u_rhs.1, pair1.lambda1, pair2.lambda2
                ),
            });
            let m_rhs = m.apply(&(pair2.lambda1.clone(), pair2.lambda2.clone()));
            checks.push(Check {
                name: "m_relation",
                level: k,
                pass: m_rhs.0 == pair1.lambda1 && m_rhs.1 == pair1.lambda2,
                witness: format!(
                    "term {j}: M * [{}; {}] = [{}; {}], expected [{}; {}]",
                    pair2.lambda1, pair2.lambda2, m_rhs.0, m_rhs.1, pair1.lambda1, pair1.lambda2
                ),
            });
        }

        pairs.push(ComparisonPair {
            level: k,
            u: u.clone(),
            m: m.clone(),
        });

        if k + 1 < e {
            let level1 = &seq1.levels[k];
            let level2 = &seq2.levels[k];
            m_direct = Some(m_step_direct(&m, level1, level2));
            u = u_step(&u, level1, level2);
        }
    }

    ComparisonReport { pairs, checks }
}

/// The input exponents on the coordinate opposite the sliced axis can be
/// written over the running product of that coordinate's leading
/// denominators, with the resulting numerator coprime to the last factor.
fn denominator_structure_checks(seq: &DerivationSequence, checks: &mut Vec<Check>) {
    let other = seq.axis.other();
    let input = &seq.levels[0].branch;
    let mut product = BigInt::one();
    for k in 0..input.len() {
        let last_factor = seq.levels[k].invariants.m(other).clone();
        product *= &last_factor;
        let exponent = input.terms[k].coord(other);
        let (scale, rem) = product.div_rem(exponent.denom());
        let pass = if rem.is_zero() {
            let alpha = exponent.numer() * &scale;
            alpha.gcd(&last_factor).is_one()
        } else {
            false
        };
        checks.push(Check {
            name: "denominator_structure",
            level: k,
            pass,
            witness: format!(
                "axis {}: exponent {} over denominator {product}, last factor {last_factor}",
                seq.axis, exponent
            ),
        });
    }
}
