//! Exact scalar arithmetic: arbitrary-precision reduced fractions,
//! gcd/lcm, the minimal unimodular completion of a coprime pair, and the
//! 2x2 "swap" transform.
//!
//! Every quantity in the pipeline is a [`Rational`]. Fractions are kept
//! reduced with positive denominator at all times, so lowest-terms data
//! (numerator, denominator) can be read straight off the stored form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An arbitrary-precision rational, always stored reduced with positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// The unique reduced representative of `numer / denom`.
    ///
    /// Fails with [`Error::ZeroDenominator`] when `denom` is zero.
    pub fn reduce(numer: BigInt, denom: BigInt) -> Result<Rational> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Rational {
        Rational(BigRational::from_integer(n.into()))
    }

    /// Convenience constructor for small literals. Panics on zero
    /// denominator, so it is only for values known statically.
    pub fn new(numer: i64, denom: i64) -> Rational {
        Rational::reduce(BigInt::from(numer), BigInt::from(denom))
            .expect("nonzero literal denominator")
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    /// Numerator of the reduced form (carries the sign).
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Denominator of the reduced form; always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an integer, when the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn recip(&self) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Exact integer power with nonnegative exponent.
    pub fn pow(&self, exp: u32) -> Rational {
        Rational(
            self.0
                .pow(i32::try_from(exp).expect("exponent fits in i32")),
        )
    }
}

impl From<&BigInt> for Rational {
    fn from(n: &BigInt) -> Rational {
        Rational::from_integer(n.clone())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Renders `p/q`, or just `p` when the denominator is 1. Never floating
/// point, never truncated.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Parses the fraction grammar: optional sign, digits, optionally
/// followed by `/` and digits.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rational> {
        let malformed = || Error::Parse(format!("malformed fraction {s:?}"));
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let valid_int = |t: &str| {
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid_int(numer) || denom.is_some_and(|d| !valid_int(d)) {
            return Err(malformed());
        }
        let n = BigInt::from_str(numer).map_err(|_| malformed())?;
        let d = match denom {
            Some(d) => BigInt::from_str(d).map_err(|_| malformed())?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(Error::Parse(format!("fraction {s:?} has denominator zero")));
        }
        Rational::reduce(n, d)
    }
}

/// Least common multiple of two positive integers.
pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

/// Greatest common divisor, nonnegative.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// The smallest nonnegative integers `(r, s)` with `m*s - n*r = 1`, i.e.
/// the minimal completion of the row `(m, n)` to a determinant-1 matrix
/// `[[m, n], [r, s]]`.
///
/// Requires `m, n >= 1` coprime. All nonnegative solutions form the
/// arithmetic family `(r + t*m, s + t*n)`, so minimizing `s` also
/// minimizes `r`.
pub fn unimodular_completion(m: &BigInt, n: &BigInt) -> Result<(BigInt, BigInt)> {
    assert!(m.is_positive() && n.is_positive(), "arguments must be >= 1");
    if !gcd(m, n).is_one() {
        return Err(Error::NotCoprime {
            m: m.to_string(),
            n: n.to_string(),
        });
    }
    // For n = 1 the congruence below is vacuous; s = 0 would force
    // r = -1, so the minimal nonnegative solution is (m - 1, 1).
    if n.is_one() {
        return Ok((m - 1, BigInt::one()));
    }
    // s = m^{-1} mod n; the least residue is nonzero since n >= 2.
    let ext = m.extended_gcd(n);
    let s = ext.x.mod_floor(n);
    let r: BigInt = (m * &s - BigInt::one()) / n;
    debug_assert!(!r.is_negative());
    Ok((r, s))
}

/// An exact 2x2 matrix. Integrality and determinant constraints are
/// checked by the operations that need them, not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a11: Rational,
    pub a12: Rational,
    pub a21: Rational,
    pub a22: Rational,
}

impl Mat2 {
    pub fn new(a11: Rational, a12: Rational, a21: Rational, a22: Rational) -> Mat2 {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn identity() -> Mat2 {
        Mat2::new(
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
        )
    }

    pub fn det(&self) -> Rational {
        &(&self.a11 * &self.a22) - &(&self.a12 * &self.a21)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &(Rational, Rational)) -> (Rational, Rational) {
        (
            &(&self.a11 * &v.0) + &(&self.a12 * &v.1),
            &(&self.a21 * &v.0) + &(&self.a22 * &v.1),
        )
    }

    pub fn is_integer(&self) -> bool {
        self.entries().iter().all(|e| e.is_integer())
    }

    pub fn entries(&self) -> [&Rational; 4] {
        [&self.a11, &self.a12, &self.a21, &self.a22]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.a11, self.a12, self.a21, self.a22
        )
    }
}

/// The swap transform
/// `sw(U) = [[det(U)/U22, U12/U22], [-U21/U22, 1/U22]]`,
/// which exchanges the roles of the two vector entries in a linear
/// relation. Its determinant is `U11/U22`, so it lands in SL(2) exactly
/// when the diagonal entries of `U` agree. Undefined when `U22 = 0`.
pub fn sw(u: &Mat2) -> Result<Mat2> {
    if u.a22.is_zero() {
        return Err(Error::SingularSwap);
    }
    let inv22 = u.a22.recip()?;
    Ok(Mat2::new(
        &u.det() * &inv22,
        &u.a12 * &inv22,
        &(-&u.a21) * &inv22,
        inv22,
    ))
}
