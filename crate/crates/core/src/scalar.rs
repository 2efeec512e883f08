//! Scalar traits the rest of the crate is generic over.
//!
//! [`Scalar`] covers weight coordinates: integers for lattice points,
//! rationals for `rho`-shifted quantities, floats for geometric sampling.
//! [`Coefficient`] covers the coefficient ring of Laurent polynomials and
//! therefore of every Hecke algebra and module element.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed};

/// Coordinate type for weights.
pub trait Scalar: Num + Clone + PartialOrd + FromPrimitive + Debug + Display + Send + Sync {
    /// Whether the value lies in `Z`.
    fn is_integral(&self) -> bool;
}

macro_rules! integral_scalar {
    ($($t:ty),*) => {
        $(impl Scalar for $t {
            fn is_integral(&self) -> bool {
                true
            }
        })*
    };
}

integral_scalar!(i32, i64, i128, BigInt);

impl Scalar for Ratio<i64> {
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

impl Scalar for BigRational {
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

impl Scalar for f32 {
    fn is_integral(&self) -> bool {
        self.fract() == 0.0
    }
}

impl Scalar for f64 {
    fn is_integral(&self) -> bool {
        self.fract() == 0.0
    }
}

/// Exact coefficient ring for Laurent polynomials.
pub trait Coefficient:
    Num + Signed + Clone + Eq + Hash + Debug + Display + FromStr + Send + Sync
{
}

impl<T> Coefficient for T where
    T: Num + Signed + Clone + Eq + Hash + Debug + Display + FromStr + Send + Sync
{
}
