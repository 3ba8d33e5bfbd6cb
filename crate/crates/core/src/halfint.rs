//! Exact half-integers, stored doubled.
//!
//! `HalfInt::from_doubled(3)` is `3/2`. Serialization writes the doubled
//! integer, so every JSON field carrying one uses a `_doubled` key.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt<T> {
    doubled: T,
}

pub type HalfIntVector<T> = Vec<HalfInt<T>>;

impl<T: Scalar> HalfInt<T> {
    pub fn from_doubled(doubled: T) -> Self {
        HalfInt { doubled }
    }

    pub fn from_int(value: T) -> Self {
        HalfInt { doubled: value * T::two() }
    }

    pub fn zero() -> Self {
        HalfInt { doubled: T::zero() }
    }

    pub fn doubled(&self) -> &T {
        &self.doubled
    }

    pub fn into_doubled(self) -> T {
        self.doubled
    }

    pub fn is_integral(&self) -> bool {
        self.doubled.is_even()
    }

    pub fn to_integer(&self) -> Option<T> {
        if self.is_integral() {
            Some(self.doubled.clone() / T::two())
        } else {
            None
        }
    }
}

impl<T: Scalar> Add for HalfInt<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        HalfInt::from_doubled(self.doubled + rhs.doubled)
    }
}

impl<T: Scalar> Sub for HalfInt<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        HalfInt::from_doubled(self.doubled - rhs.doubled)
    }
}

impl<T: Scalar> Neg for HalfInt<T> {
    type Output = Self;
    fn neg(self) -> Self {
        HalfInt::from_doubled(-self.doubled)
    }
}

impl<T: Scalar> fmt::Display for HalfInt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "{}/2", self.doubled),
        }
    }
}

/// Entrywise sum of an integer vector and a half-integer vector.
pub fn shift<T: Scalar>(ints: &[T], halves: &[HalfInt<T>]) -> HalfIntVector<T> {
    debug_assert_eq!(ints.len(), halves.len());
    ints.iter().zip(halves).map(|(x, h)| HalfInt::from_int(x.clone()) + h.clone()).collect()
}

/// The doubled entries of a half-integer vector.
pub fn doubled_all<T: Scalar>(v: &[HalfInt<T>]) -> Vec<T> {
    v.iter().map(|h| h.doubled().clone()).collect()
}

pub fn strictly_decreasing<T: Ord>(v: &[T]) -> bool {
    v.windows(2).all(|w| w[0] > w[1])
}
