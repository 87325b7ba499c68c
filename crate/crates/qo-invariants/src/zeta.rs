//! Factored monodromy zeta functions and their recursions.
//!
//! A zeta function is kept as a formal product `prod_a (t^a - 1)^{e_a}`
//! with integer (possibly negative) exponents, never expanded: the
//! queries the pipeline needs (multiplicity of `t - 1`, rational-function
//! degree, equality) are all answerable from the factored form, while an
//! expansion of something like `(t^140 - 1)^{-7}` would be enormous.
//!
//! The horizontal and vertical zeta functions of a derivation tower are
//! assembled from per-level closed forms:
//!
//!   horizontal base: (t^d - 1)(t^{n*b} - 1) / (t^{n*d} - 1)^b
//!   vertical base:   (t - 1)^d / (t^{n*b/c} - 1)^{c(d-1)}
//!
//! (with `n` the opposite leading numerator) and the descending
//! recursions
//!
//!   H[k](t) = Hbase[k](t^{d[k+1]}) * H[k+1](t)^{b[k]} / (t^{d[k+1]} - 1)^{b[k]}
//!   V[k](t) = Vbase[k](t)^{d[k+1]} * V[k+1](t^{b[k]}) / (t^{b[k]} - 1)^{d[k+1]}
//!
//! where `d[k]` are the suffix degrees of the tower.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::branch::{Axis, DerivationSequence, LevelInvariants};
use crate::error::{Error, Result};

/// A formal product `prod_a (t^a - 1)^{e_a}`: a map from positive `a` to
/// nonzero exponent `e_a`. Missing keys mean exponent zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CycloProduct {
    factors: BTreeMap<BigInt, BigInt>,
}

impl CycloProduct {
    /// The empty product, i.e. the constant 1.
    pub fn one() -> CycloProduct {
        CycloProduct::default()
    }

    /// The single factor `(t^a - 1)^e`.
    pub fn factor(a: impl Into<BigInt>, e: impl Into<BigInt>) -> CycloProduct {
        let mut p = CycloProduct::one();
        p.push(a.into(), e.into());
        p
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (BigInt, BigInt)>) -> CycloProduct {
        let mut p = CycloProduct::one();
        for (a, e) in factors {
            p.push(a, e);
        }
        p
    }

    fn push(&mut self, a: BigInt, e: BigInt) {
        assert!(a.is_positive(), "factor key must be >= 1");
        if e.is_zero() {
            return;
        }
        match self.factors.entry(a) {
            Entry::Occupied(mut occupied) => {
                *occupied.get_mut() += e;
                if occupied.get().is_zero() {
                    occupied.remove();
                }
            }
            Entry::Vacant(vacant) => {
                vacant.insert(e);
            }
        }
    }

    pub fn factors(&self) -> &BTreeMap<BigInt, BigInt> {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Pointwise product: exponent maps add, zero entries drop out.
    pub fn mul(&self, other: &CycloProduct) -> CycloProduct {
        let mut out = self.clone();
        for (a, e) in &other.factors {
            out.push(a.clone(), e.clone());
        }
        out
    }

    /// Raises the product to the power `k`; `k = 0` gives the constant 1.
    pub fn pow(&self, k: &BigInt) -> CycloProduct {
        if k.is_zero() {
            return CycloProduct::one();
        }
        CycloProduct {
            factors: self
                .factors
                .iter()
                .map(|(a, e)| (a.clone(), e * k))
                .collect(),
        }
    }

    /// The substitution `t -> t^b`: every key is multiplied by `b`.
    pub fn substitute(&self, b: &BigInt) -> CycloProduct {
        assert!(b.is_positive(), "substitution power must be >= 1");
        CycloProduct {
            factors: self
                .factors
                .iter()
                .map(|(a, e)| (a * b, e.clone()))
                .collect(),
        }
    }

    /// Multiplicity of `t - 1`: each factor `t^a - 1` contributes one,
    /// so this is the exponent sum.
    pub fn tm1_multiplicity(&self) -> BigInt {
        self.factors.values().sum()
    }

    /// Degree of the rational function: `sum a * e_a`. For a monodromy
    /// zeta function this is the Euler characteristic of the fiber.
    pub fn degree_sum(&self) -> BigInt {
        self.factors.iter().map(|(a, e)| a * e).sum()
    }

    /// Canonical form as a cyclotomic exponent map: since
    /// `t^a - 1 = prod_{d | a} Phi_d(t)`, the multiplicity of `Phi_d` is
    /// the sum of `e_a` over stored keys `a` divisible by `d`. Two
    /// products represent the same rational function exactly when their
    /// normal forms agree.
    pub fn cyclotomic_normal_form(&self) -> BTreeMap<BigInt, BigInt> {
        let mut form: BTreeMap<BigInt, BigInt> = BTreeMap::new();
        for (a, e) in &self.factors {
            for d in divisors(a) {
                let entry = form.entry(d).or_insert_with(BigInt::zero);
                *entry += e;
            }
        }
        form.retain(|_, e| !e.is_zero());
        form
    }
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (a, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e.is_one() {
                write!(f, "(t^{a} - 1)")?;
            } else {
                write!(f, "(t^{a} - 1)^{e}")?;
            }
        }
        Ok(())
    }
}

/// All positive divisors of `n > 0`, ascending.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(n.is_positive());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if n.mod_floor(&i).is_zero() {
            small.push(i.clone());
            let j = n / &i;
            if j != i {
                large.push(j);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Horizontal zeta function of a truncation:
/// `(t^d - 1)(t^{n*b} - 1)/(t^{n*d} - 1)^b` with `n` the opposite
/// leading numerator and `b` the sheet-count ratio for `axis`.
pub fn horizontal_zeta_base(inv: &LevelInvariants, axis: Axis) -> CycloProduct {
    let n_other = inv.n(axis.other());
    let b = inv.b(axis);
    CycloProduct::from_factors([
        (inv.d_bullet.clone(), BigInt::one()),
        (n_other * b, BigInt::one()),
        (n_other * &inv.d_bullet, -b),
    ])
}

/// Vertical zeta function of a truncation:
/// `(t - 1)^d / (t^{n*b/c} - 1)^{c(d-1)}`. The key `n*b/c` is an
/// integer because `c = gcd(n1, n2)` divides `n`; a failed division
/// signals a broken invariant upstream and is surfaced as an error.
pub fn vertical_zeta_base(inv: &LevelInvariants, axis: Axis) -> Result<CycloProduct> {
    let n_other = inv.n(axis.other());
    let b = inv.b(axis);
    let (key, rem) = (n_other * b).div_rem(&inv.c_bullet);
    if !rem.is_zero() {
        return Err(Error::theorem(
            "vertical zeta base exponent integrality",
            format!(
                "n * b / c is not an integer: n = {n_other}, b = {b}, c = {}",
                inv.c_bullet
            ),
        ));
    }
    let exponent = -(&inv.c_bullet * (&inv.d_bullet - BigInt::one()));
    Ok(CycloProduct::from_factors([
        (BigInt::one(), inv.d_bullet.clone()),
        (key, exponent),
    ]))
}

/// Horizontal zeta function of the full tower, by the descending
/// recursion over levels.
pub fn horizontal_zeta(seq: &DerivationSequence) -> CycloProduct {
    let e = seq.levels.len();
    let degrees = seq.suffix_degrees();
    let mut zeta = horizontal_zeta_base(&seq.levels[e - 1].invariants, seq.axis);
    for k in (0..e - 1).rev() {
        let inv = &seq.levels[k].invariants;
        let b = inv.b(seq.axis);
        let d_next = &degrees[k + 1];
        zeta = horizontal_zeta_base(inv, seq.axis)
            .substitute(d_next)
            .mul(&zeta.pow(b))
            .mul(&CycloProduct::factor(d_next.clone(), -b));
    }
    zeta
}

/// Vertical zeta function of the full tower, by the descending
/// recursion over levels.
pub fn vertical_zeta(seq: &DerivationSequence) -> Result<CycloProduct> {
    let e = seq.levels.len();
    let degrees = seq.suffix_degrees();
    let mut zeta = vertical_zeta_base(&seq.levels[e - 1].invariants, seq.axis)?;
    for k in (0..e - 1).rev() {
        let inv = &seq.levels[k].invariants;
        let b = inv.b(seq.axis);
        let d_next = &degrees[k + 1];
        zeta = vertical_zeta_base(inv, seq.axis)?
            .pow(d_next)
            .mul(&zeta.substitute(b))
            .mul(&CycloProduct::factor(b.clone(), -d_next));
    }
    Ok(zeta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::{CharacteristicTuple, DerivationSequence};

    fn golden_tuple() -> CharacteristicTuple {
        CharacteristicTuple::from_pairs(&[((2, 7), (4, 5)), ((5, 14), (1, 1)), ((2, 1), (19, 10))])
    }

    fn product(pairs: &[(i64, i64)]) -> CycloProduct {
        CycloProduct::from_factors(
            pairs
                .iter()
                .map(|&(a, e)| (BigInt::from(a), BigInt::from(e))),
        )
    }

    #[test]
    fn mul_merges_and_cancels() {
        assert_eq!(
            product(&[(35, 1)]).mul(&product(&[(14, -68)])),
            product(&[(35, 1), (14, -68)])
        );
        assert_eq!(
            product(&[(2, 1)]).mul(&product(&[(2, -1)])),
            CycloProduct::one()
        );
    }

    #[test]
    fn pow_and_substitute() {
        let p = product(&[(1, 35), (14, -68)]);
        assert_eq!(p.pow(&BigInt::zero()), CycloProduct::one());
        assert_eq!(product(&[(2, 3)]).pow(&BigInt::from(2)), product(&[(2, 6)]));
        assert_eq!(
            product(&[(1, 1)]).substitute(&BigInt::from(5)),
            product(&[(5, 1)])
        );
        assert_eq!(p.substitute(&BigInt::one()), p);
        assert_eq!(
            p.substitute(&BigInt::from(7)),
            product(&[(7, 35), (98, -68)])
        );
    }

    #[test]
    fn tm1_multiplicity_examples() {
        assert_eq!(
            product(&[(1, 35), (14, -68)]).tm1_multiplicity(),
            BigInt::from(-33)
        );
        assert_eq!(CycloProduct::one().tm1_multiplicity(), BigInt::zero());
    }

    #[test]
    fn degree_sum_examples() {
        assert_eq!(CycloProduct::one().degree_sum(), BigInt::zero());
        assert_eq!(
            product(&[(1, 35), (14, -68)]).degree_sum(),
            BigInt::from(-917)
        );
        // matches the closed Euler characteristic form 35 + 28 - 980
        assert_eq!(
            product(&[(35, 1), (28, 1), (140, -7)]).degree_sum(),
            BigInt::from(-917)
        );
    }

    #[test]
    fn normal_form_examples() {
        let nf = |p: &CycloProduct| -> Vec<(i64, i64)> {
            p.cyclotomic_normal_form()
                .into_iter()
                .map(|(a, e)| (i64::try_from(&a).unwrap(), i64::try_from(&e).unwrap()))
                .collect()
        };
        assert_eq!(
            nf(&product(&[(6, 1)])),
            vec![(1, 1), (2, 1), (3, 1), (6, 1)]
        );
        assert_eq!(nf(&product(&[(2, 1), (1, -1)])), vec![(2, 1)]);
        assert_eq!(
            nf(&product(&[(1, 35), (14, -68)])),
            vec![(1, -33), (2, -68), (7, -68), (14, -68)]
        );
    }

    #[test]
    fn divisor_enumeration() {
        let divs = |n: i64| -> Vec<i64> {
            divisors(&BigInt::from(n))
                .into_iter()
                .map(|d| i64::try_from(&d).unwrap())
                .collect()
        };
        assert_eq!(divs(1), vec![1]);
        assert_eq!(divs(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divs(7), vec![1, 7]);
    }

    #[test]
    fn horizontal_base_golden_levels() {
        let seq = DerivationSequence::compute(&golden_tuple(), Axis::One).unwrap();
        assert_eq!(
            horizontal_zeta_base(&seq.levels[0].invariants, Axis::One),
            product(&[(35, 1), (28, 1), (140, -7)])
        );
        // next level: d = 2, opposite numerator 141, b = 2; the middle
        // and last keys collide at 282 and merge.
        assert_eq!(
            horizontal_zeta_base(&seq.levels[1].invariants, Axis::One),
            product(&[(2, 1), (282, -1)])
        );
        let smooth = LevelInvariants::of(&CharacteristicTuple::from_pairs(&[((1, 1), (1, 1))]));
        assert_eq!(horizontal_zeta_base(&smooth, Axis::One), product(&[(1, 1)]));
    }

    #[test]
    fn vertical_base_golden_levels() {
        let seq = DerivationSequence::compute(&golden_tuple(), Axis::One).unwrap();
        assert_eq!(
            vertical_zeta_base(&seq.levels[0].invariants, Axis::One).unwrap(),
            product(&[(1, 35), (14, -68)])
        );
        assert_eq!(
            vertical_zeta_base(&seq.levels[2].invariants, Axis::One).unwrap(),
            product(&[(1, 2), (573, -1)])
        );
        let smooth = LevelInvariants::of(&CharacteristicTuple::from_pairs(&[((1, 1), (1, 1))]));
        assert_eq!(
            vertical_zeta_base(&smooth, Axis::One).unwrap(),
            product(&[(1, 1)])
        );
    }

    #[test]
    fn zeta_recursions_golden() {
        let seq1 = DerivationSequence::compute(&golden_tuple(), Axis::One).unwrap();
        let seq2 = DerivationSequence::compute(&golden_tuple(), Axis::Two).unwrap();

        let v1 = vertical_zeta(&seq1).unwrap();
        assert_eq!(v1, product(&[(1, 140), (14, -554), (8022, -1)]));
        let v2 = vertical_zeta(&seq2).unwrap();
        assert_eq!(v2, product(&[(1, 140), (5, -554), (3050, -1)]));
        assert_eq!(v1.tm1_multiplicity(), BigInt::from(-415));
        assert_eq!(v2.tm1_multiplicity(), BigInt::from(-415));

        let h1 = horizontal_zeta(&seq1);
        assert_eq!(
            h1,
            product(&[
                (112, 1),
                (140, 1),
                (560, -7),
                (564, -7),
                (573, 14),
                (1146, -14)
            ])
        );
        let h2 = horizontal_zeta(&seq2);
        assert_eq!(
            h2,
            product(&[(40, 1), (140, 1), (280, -5), (282, 5), (564, -5), (610, -5)])
        );

        // both fibrations share the transverse fiber, so both degree
        // sums give its Euler characteristic
        let chi1 = seq1.transverse_euler().unwrap()[0].clone();
        assert_eq!(h1.degree_sum(), chi1);
        assert_eq!(v1.degree_sum(), chi1);
        let chi2 = seq2.transverse_euler().unwrap()[0].clone();
        assert_eq!(h2.degree_sum(), chi2);
        assert_eq!(v2.degree_sum(), chi2);
    }

    #[test]
    fn single_term_zetas_equal_their_bases() {
        let single = CharacteristicTuple::from_pairs(&[((2, 3), (2, 3))]);
        let seq = DerivationSequence::compute(&single, Axis::One).unwrap();
        assert_eq!(
            horizontal_zeta(&seq),
            horizontal_zeta_base(&seq.levels[0].invariants, Axis::One)
        );
        assert_eq!(
            vertical_zeta(&seq).unwrap(),
            vertical_zeta_base(&seq.levels[0].invariants, Axis::One).unwrap()
        );
        // (t - 1)^3 / (t - 1)^4 = (t - 1)^{-1}
        assert_eq!(vertical_zeta(&seq).unwrap(), product(&[(1, -1)]));
    }
}
