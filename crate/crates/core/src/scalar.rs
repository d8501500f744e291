//! Numeric types usable for probabilities and costs.

use std::fmt::{Debug, Display};

use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

/// A totally ordered field closed under conversion from exact rationals.
/// Implemented for `f32`, `f64` and [`BigRational`].
pub trait Scalar: Num + Clone + PartialOrd + Debug + Display + 'static {
    fn from_rational(r: &BigRational) -> Self;

    fn from_usize(n: usize) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }

    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f64 {
    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_rational(r: &BigRational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }
}

impl Scalar for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn is_exact() -> bool {
        true
    }
}

/// `1 - p`, clamped at zero against rounding in floating types.
pub fn complement<S: Scalar>(p: &S) -> S {
    let c = S::one() - p.clone();
    if c < S::zero() {
        S::zero()
    } else {
        c
    }
}
