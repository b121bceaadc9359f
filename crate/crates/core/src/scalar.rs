//! Scalar fields and Z2 parities.

use std::fmt;
use std::ops::{AddAssign, Mul, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Num;

/// An exact field. Every routine in this crate tests for equality and zero
/// exactly, so implementors must not round.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Num
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_i64(value: i64) -> Self;

    /// `1 / self`. Panics on zero.
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::one() / self.clone()
    }
}

impl Field for BigRational {
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
}

impl Field for Ratio<i64> {
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(value)
    }
}

/// Fields that are (a representation of) the rationals, with access to a
/// reduced numerator/denominator pair. Needed wherever roots of polynomials
/// have to be found exactly.
pub trait ExactRational: Field + Ord {
    fn to_big_ratio(&self) -> BigRational;
    fn from_big_ratio(value: &BigRational) -> Self;
}

impl ExactRational for BigRational {
    fn to_big_ratio(&self) -> BigRational {
        self.clone()
    }

    fn from_big_ratio(value: &BigRational) -> Self {
        value.clone()
    }
}

impl ExactRational for Ratio<i64> {
    fn to_big_ratio(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn from_big_ratio(value: &BigRational) -> Self {
        use num_traits::ToPrimitive;
        let numer = value.numer().to_i64().expect("numerator overflows i64");
        let denom = value.denom().to_i64().expect("denominator overflows i64");
        Ratio::new(numer, denom)
    }
}

/// `acc += a * b`
#[inline]
pub(crate) fn mul_add<F: Field>(acc: &mut F, a: &F, b: &F) {
    if a.is_zero() || b.is_zero() {
        return;
    }
    *acc += a.clone() * b;
}

/// Degree in Z2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Option<Self> {
        match bit {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^(self * other)` as a boolean "negate?"
    pub fn koszul(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }

    pub fn flip(self) -> Self {
        self + Parity::Odd
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// Returns `value` or `-value`.
#[inline]
pub(crate) fn signed<F: Field>(value: F, negate: bool) -> F {
    if negate {
        -value
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_arithmetic() {
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::Odd + Parity::Even, Parity::Odd);
        assert!(Parity::Odd.koszul(Parity::Odd));
        assert!(!Parity::Odd.koszul(Parity::Even));
        assert_eq!(Parity::from_bit(2), None);
    }

    #[test]
    fn rationals_stay_reduced() {
        let a = BigRational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(a.numer(), &BigInt::from(-3));
        assert_eq!(a.denom(), &BigInt::from(2));
        // a/b + c/d computed two ways
        let b = BigRational::new(BigInt::from(5), BigInt::from(7));
        let left = a.clone() + &b;
        let right = BigRational::new(
            a.numer() * b.denom() + b.numer() * a.denom(),
            a.denom() * b.denom(),
        );
        assert_eq!(left, right);
    }

    #[test]
    fn small_ratio_round_trips_through_big() {
        let x = Ratio::new(-3i64, 9);
        assert_eq!(Ratio::<i64>::from_big_ratio(&x.to_big_ratio()), x);
    }
}
