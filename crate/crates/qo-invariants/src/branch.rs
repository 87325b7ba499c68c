//! Characteristic tuples, their validation, per-level lowest-terms data,
//! and the derivation recursion.
//!
//! A branch with `e` terms generates, for each coordinate axis, a tower
//! of `e` increasingly shorter branches: each step replaces the branch
//! by its derived branch, whose exponents are
//!
//!   new_other[j] = m_other * (lambda_other[j+1] - lambda_other[0] + d * lambda_other[0])
//!   new_axis[j]  = b * (lambda_axis[j+1] - lambda_axis[0] + d * lambda_axis[0])
//!                  + b * r * lambda_axis[0] * new_other[j]
//!
//! where `m_other` is the lowest-terms denominator of the leading
//! exponent on the opposite coordinate, `d = lcm(m1, m2)` is the degree
//! of the truncation, `b = d / m_other`, and `(r, s)` is the minimal
//! unimodular completion of `(m_other, n_other)`. The first line must be
//! computed before the second, since it feeds it.
//!
//! Every level caches its [`LevelInvariants`]; all downstream modules
//! (zeta functions, comparison matrices, Betti numbers) consume them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result, ValidationError};
use crate::exact::{gcd, lcm, unimodular_completion, Rational};

/// One of the two coordinate axes the recursion can slice along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    One,
    Two,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::One => Axis::Two,
            Axis::Two => Axis::One,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Axis::One => 1,
            Axis::Two => 2,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// One exponent pair `(lambda1, lambda2)` of a branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentPair {
    pub lambda1: Rational,
    pub lambda2: Rational,
}

impl ExponentPair {
    pub fn new(lambda1: Rational, lambda2: Rational) -> ExponentPair {
        ExponentPair { lambda1, lambda2 }
    }

    pub fn coord(&self, axis: Axis) -> &Rational {
        match axis {
            Axis::One => &self.lambda1,
            Axis::Two => &self.lambda2,
        }
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lambda1, self.lambda2)
    }
}

/// A branch term written with small integer literals, for tests:
/// `((p1, q1), (p2, q2))` meaning the pair `(p1/q1, p2/q2)`.
pub type LiteralPair = ((i64, i64), (i64, i64));

/// The ordered exponent pairs of a branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicTuple {
    pub terms: Vec<ExponentPair>,
}

impl CharacteristicTuple {
    pub fn new(terms: Vec<ExponentPair>) -> CharacteristicTuple {
        CharacteristicTuple { terms }
    }

    /// Convenience constructor from small literals, for tests.
    pub fn from_pairs(pairs: &[LiteralPair]) -> CharacteristicTuple {
        CharacteristicTuple::new(
            pairs
                .iter()
                .map(|&((a, b), (c, d))| {
                    ExponentPair::new(Rational::new(a, b), Rational::new(c, d))
                })
                .collect(),
        )
    }

    /// Number of terms `e`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> &ExponentPair {
        &self.terms[0]
    }

    /// Checks the standing assumptions: at least one term, all exponents
    /// nonnegative, both leading coordinates positive (reducedness), and
    /// componentwise nondecreasing terms with at least one strict
    /// increase per step. In strict mode each term must additionally be
    /// essential: it must not lie in the subgroup of the rational plane
    /// generated by the integer lattice and the preceding pairs.
    pub fn validate(&self, strict: bool) -> std::result::Result<(), ValidationError> {
        if self.terms.is_empty() {
            return Err(ValidationError::EmptyTuple);
        }
        for (index, pair) in self.terms.iter().enumerate() {
            if pair.lambda1.numer().is_negative() || pair.lambda2.numer().is_negative() {
                return Err(ValidationError::NegativeExponent {
                    index,
                    lambda1: pair.lambda1.to_string(),
                    lambda2: pair.lambda2.to_string(),
                });
            }
        }
        let lead = self.leading();
        if lead.lambda1.is_zero() || lead.lambda2.is_zero() {
            return Err(ValidationError::NotReduced {
                lambda11: lead.lambda1.to_string(),
                lambda21: lead.lambda2.to_string(),
            });
        }
        for (index, window) in self.terms.windows(2).enumerate() {
            let (cur, next) = (&window[0], &window[1]);
            let ok1 = cur.lambda1 <= next.lambda1;
            let ok2 = cur.lambda2 <= next.lambda2;
            let strict_step = cur.lambda1 < next.lambda1 || cur.lambda2 < next.lambda2;
            if !(ok1 && ok2 && strict_step) {
                return Err(ValidationError::NotMonotonic {
                    index,
                    next: index + 1,
                });
            }
        }
        if strict {
            self.check_essentiality()?;
        }
        Ok(())
    }

    /// For each term, membership in the subgroup generated by the
    /// integer lattice and the preceding pairs disqualifies the tuple.
    fn check_essentiality(&self) -> std::result::Result<(), ValidationError> {
        // One common denominator scales the whole problem into an
        // integer lattice question in the plane.
        let mut scale = BigInt::one();
        for pair in &self.terms {
            scale = lcm(&scale, pair.lambda1.denom());
            scale = lcm(&scale, pair.lambda2.denom());
        }
        let scaled: Vec<(BigInt, BigInt)> = self
            .terms
            .iter()
            .map(|p| {
                (
                    p.lambda1.numer() * (&scale / p.lambda1.denom()),
                    p.lambda2.numer() * (&scale / p.lambda2.denom()),
                )
            })
            .collect();
        let mut lattice = PlaneLattice::integer_multiples(&scale);
        for (index, point) in scaled.iter().enumerate() {
            if lattice.contains(point) {
                return Err(ValidationError::NotEssential { index });
            }
            lattice.insert(point);
        }
        Ok(())
    }

    /// The one-term branch consisting of the leading pair.
    pub fn truncate(&self) -> CharacteristicTuple {
        CharacteristicTuple::new(vec![self.leading().clone()])
    }
}

impl fmt::Display for CharacteristicTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, pair) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{pair}")?;
        }
        Ok(())
    }
}

/// A sublattice of the integer plane, kept as a triangular basis
/// `(g, h)`, `(0, c)` with `g, c > 0`.
struct PlaneLattice {
    g: BigInt,
    h: BigInt,
    c: BigInt,
}

impl PlaneLattice {
    /// The lattice of multiples of `scale` in both coordinates.
    fn integer_multiples(scale: &BigInt) -> PlaneLattice {
        PlaneLattice {
            g: scale.clone(),
            h: BigInt::zero(),
            c: scale.clone(),
        }
    }

    fn insert(&mut self, v: &(BigInt, BigInt)) {
        let (vx, vy) = v;
        if vx.is_zero() {
            self.c = gcd(&self.c, vy);
        } else {
            let ext = self.g.extended_gcd(vx);
            // Bezout combination achieves x-component gcd; the leftover
            // combination has zero x-component and drops into c.
            let new_h = &ext.x * &self.h + &ext.y * vy;
            let residue_y = (vx / &ext.gcd) * &self.h - (&self.g / &ext.gcd) * vy;
            self.c = gcd(&self.c, &residue_y);
            self.g = ext.gcd;
            self.h = new_h;
        }
    }

    fn contains(&self, v: &(BigInt, BigInt)) -> bool {
        let (vx, vy) = v;
        if !vx.mod_floor(&self.g).is_zero() {
            return false;
        }
        let residue = vy - (vx / &self.g) * &self.h;
        residue.mod_floor(&self.c).is_zero()
    }
}

/// Lowest-terms data of the leading exponent pair and the derived
/// constants of one level: `lambda_i1 = n_i / m_i`, `d = lcm(m1, m2)`,
/// `b_i = d / m_other(i)`, `c = gcd(n1, n2)`, and the minimal
/// unimodular completions `(r_i, s_i)` of `(m_other(i), n_other(i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelInvariants {
    pub n1: BigInt,
    pub m1: BigInt,
    pub n2: BigInt,
    pub m2: BigInt,
    pub d_bullet: BigInt,
    pub b1: BigInt,
    pub b2: BigInt,
    pub c_bullet: BigInt,
    pub r1: BigInt,
    pub s1: BigInt,
    pub r2: BigInt,
    pub s2: BigInt,
}

impl LevelInvariants {
    /// Reads the invariants off a validated branch.
    pub fn of(tuple: &CharacteristicTuple) -> LevelInvariants {
        let lead = tuple.leading();
        assert!(
            lead.lambda1.is_positive() && lead.lambda2.is_positive(),
            "level invariants require a reduced branch"
        );
        let (n1, m1) = (lead.lambda1.numer().clone(), lead.lambda1.denom().clone());
        let (n2, m2) = (lead.lambda2.numer().clone(), lead.lambda2.denom().clone());
        let d_bullet = lcm(&m1, &m2);
        let b1 = &d_bullet / &m2;
        let b2 = &d_bullet / &m1;
        let c_bullet = gcd(&n1, &n2);
        let (r1, s1) =
            unimodular_completion(&m2, &n2).expect("reduced leading exponent has coprime (m, n)");
        let (r2, s2) =
            unimodular_completion(&m1, &n1).expect("reduced leading exponent has coprime (m, n)");
        LevelInvariants {
            n1,
            m1,
            n2,
            m2,
            d_bullet,
            b1,
            b2,
            c_bullet,
            r1,
            s1,
            r2,
            s2,
        }
    }

    pub fn n(&self, axis: Axis) -> &BigInt {
        match axis {
            Axis::One => &self.n1,
            Axis::Two => &self.n2,
        }
    }

    pub fn m(&self, axis: Axis) -> &BigInt {
        match axis {
            Axis::One => &self.m1,
            Axis::Two => &self.m2,
        }
    }

    /// `b_i` for slicing along `axis`.
    pub fn b(&self, axis: Axis) -> &BigInt {
        match axis {
            Axis::One => &self.b1,
            Axis::Two => &self.b2,
        }
    }

    pub fn r(&self, axis: Axis) -> &BigInt {
        match axis {
            Axis::One => &self.r1,
            Axis::Two => &self.r2,
        }
    }

    pub fn s(&self, axis: Axis) -> &BigInt {
        match axis {
            Axis::One => &self.s1,
            Axis::Two => &self.s2,
        }
    }

    /// The leading exponent on `axis` as a fraction.
    pub fn leading(&self, axis: Axis) -> Rational {
        Rational::reduce(self.n(axis).clone(), self.m(axis).clone())
            .expect("denominators are positive")
    }
}

/// One level of the derivation tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub branch: CharacteristicTuple,
    pub invariants: LevelInvariants,
}

/// The shorthand sequence transform: `T(s)[j] = s[j+1] - s[0] + d * s[0]`,
/// one entry shorter than its input.
fn shifted_tail(seq: &[&Rational], d_bullet: &BigInt) -> Vec<Rational> {
    let first = seq[0];
    let scaled_first = &Rational::from(d_bullet) * first;
    seq[1..]
        .iter()
        .map(|s| &(*s - first) + &scaled_first)
        .collect()
}

/// One derivation step along `axis`. Fails on a single-term branch.
pub fn derive(tuple: &CharacteristicTuple, axis: Axis) -> Result<CharacteristicTuple> {
    if tuple.len() < 2 {
        return Err(Error::CannotDerive);
    }
    let inv = LevelInvariants::of(tuple);
    let other = axis.other();
    let coords = |a: Axis| tuple.terms.iter().map(|p| p.coord(a)).collect::<Vec<_>>();

    // The opposite coordinate feeds the sliced one, so it goes first.
    let m_other = Rational::from(inv.m(other));
    let new_other: Vec<Rational> = shifted_tail(&coords(other), &inv.d_bullet)
        .into_iter()
        .map(|t| &m_other * &t)
        .collect();

    let b = Rational::from(inv.b(axis));
    let mix = &(&b * &Rational::from(inv.r(axis))) * &inv.leading(axis);
    let new_axis: Vec<Rational> = shifted_tail(&coords(axis), &inv.d_bullet)
        .iter()
        .zip(&new_other)
        .map(|(t, w)| &(&b * t) + &(&mix * w))
        .collect();

    let terms = match axis {
        Axis::One => new_axis.into_iter().zip(new_other).collect::<Vec<_>>(),
        Axis::Two => new_other.into_iter().zip(new_axis).collect::<Vec<_>>(),
    };
    Ok(CharacteristicTuple::new(
        terms
            .into_iter()
            .map(|(l1, l2)| ExponentPair::new(l1, l2))
            .collect(),
    ))
}

/// The tower of derived branches along one axis, with cached invariants:
/// level `k` holds the `k`-fold derived branch, which has `e - k` terms.
#[derive(Clone, Debug)]
pub struct DerivationSequence {
    pub axis: Axis,
    pub levels: Vec<Level>,
}

impl DerivationSequence {
    /// Derives a validated branch down to a single term.
    pub fn compute(tuple: &CharacteristicTuple, axis: Axis) -> Result<DerivationSequence> {
        let mut levels = Vec::with_capacity(tuple.len());
        let mut current = tuple.clone();
        loop {
            let invariants = LevelInvariants::of(&current);
            let done = current.len() == 1;
            levels.push(Level {
                branch: current.clone(),
                invariants,
            });
            if done {
                break;
            }
            current = derive(&current, axis)?;
        }
        Ok(DerivationSequence { axis, levels })
    }

    /// Number of terms `e` of the original branch.
    pub fn term_count(&self) -> usize {
        self.levels.len()
    }

    /// Degree of the surface: the product of the truncation degrees over
    /// all levels.
    pub fn surface_degree(&self) -> BigInt {
        self.levels
            .iter()
            .fold(BigInt::one(), |acc, lvl| acc * &lvl.invariants.d_bullet)
    }

    /// Suffix degrees: entry `k` is the degree of the `k`-fold derived
    /// surface, the product of truncation degrees from level `k` on.
    /// Has `e + 1` entries; the last is 1.
    pub fn suffix_degrees(&self) -> Vec<BigInt> {
        let e = self.levels.len();
        let mut degrees = vec![BigInt::one(); e + 1];
        for k in (0..e).rev() {
            degrees[k] = &degrees[k + 1] * &self.levels[k].invariants.d_bullet;
        }
        degrees
    }

    /// Euler characteristic of the transverse Milnor fiber of each
    /// level's surface, via the downward recursion
    /// `chi[k] = d[k+1] * chi_trunc[k] + b[k] * (chi[k+1] - d[k+1])`
    /// with the closed base form at the last level. The intermediate
    /// arithmetic is rational but every result must be an integer.
    pub fn transverse_euler(&self) -> Result<Vec<BigInt>> {
        let e = self.levels.len();
        let degrees = self.suffix_degrees();
        let mut chi: Vec<Rational> = vec![Rational::zero(); e];
        for k in (0..e).rev() {
            let inv = &self.levels[k].invariants;
            let base = transverse_euler_base(inv, self.axis);
            chi[k] = if k == e - 1 {
                base
            } else {
                let d_next = Rational::from(&degrees[k + 1]);
                let b = Rational::from(inv.b(self.axis));
                &(&d_next * &base) + &(&b * &(&chi[k + 1] - &d_next))
            };
        }
        chi.into_iter()
            .map(|value| {
                value.to_integer().ok_or_else(|| {
                    Error::theorem(
                        "transverse Euler characteristic integrality",
                        format!("non-integer value {value}"),
                    )
                })
            })
            .collect()
    }
}

/// Euler characteristic of the transverse fiber of a truncation:
/// `d + d * lambda - d^2 * lambda` where `lambda` is the leading
/// exponent on the opposite coordinate.
pub fn transverse_euler_base(inv: &LevelInvariants, axis: Axis) -> Rational {
    let d = Rational::from(&inv.d_bullet);
    let lambda = inv.leading(axis.other());
    let d_lambda = &d * &lambda;
    &(&d + &d_lambda) - &(&d * &d_lambda)
}
