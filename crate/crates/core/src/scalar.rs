//! Scalar abstraction for coefficient arithmetic.
//!
//! All structure constants appearing in the straightening engine are integers,
//! so the coefficient type only has to be a field-like type that integers embed
//! into. `Rat` (arbitrary-precision rationals) is the canonical choice and the
//! only one with exactness guarantees.

use std::fmt;
use std::ops::{Div, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

/// Field-like coefficient type: ring operations via `Zero`/`One`/`Sub`/`Neg`,
/// exact division via `Div`, and an embedding of the integers.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + FromPrimitive
{
    /// Embed an integer.
    fn from_int(k: i128) -> Self {
        Self::from_i128(k).expect("integer does not embed into scalar type")
    }

    /// Embed a fraction `num/den`; `den` must be nonzero.
    fn from_ratio(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + PartialOrd
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Div<Output = T>
        + FromPrimitive
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    #[test]
    fn rational_embedding_is_reduced() {
        let x: Rat = Scalar::from_ratio(6, -4);
        assert_eq!(x, Rat::from_int(-3) / Rat::from_int(2));
        assert!(x.is_negative());
        assert_eq!(Scalar::abs(&x), Rat::from_ratio(3, 2));
    }

    #[test]
    fn works_for_floats_too() {
        let x: f64 = Scalar::from_ratio(1, 4);
        assert_eq!(x, 0.25);
    }
}
