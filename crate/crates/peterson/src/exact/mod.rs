//! Exact arithmetic substrate: dense matrices and polynomials in one
//! variable, generic over the scalar type.

mod matrix;
mod poly;

pub use matrix::{rank_one_update_inverse, Matrix};
pub use poly::Poly;

use crate::{Int, Rat};
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Scalar types the matrix and polynomial code can work over: a commutative
/// ring with equality. Division is deliberately not required so that
/// polynomial-valued matrices are first-class.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + Neg<Output = Self>
{
}

/// Shorthand for the exact rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Shorthand for the exact rational `n`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}
