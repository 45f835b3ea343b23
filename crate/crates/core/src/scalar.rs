//! Scalar types shared across the crate.
//!
//! Polytope code runs over [`Exact`] fields (arbitrary-precision rationals by
//! default); the quantum code runs over [`Real`] floats. Both are [`Scalar`]s,
//! so behaviors, correlators and Fourier data are written once.
//!
//! Rational-to-float conversion is provided through [`Scalar::as_f64`]; there
//! is deliberately no float-to-rational conversion.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive};

pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Signed + 'static {
    /// `true` for exact types; comparisons then use tolerance zero.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    fn as_f64(&self) -> f64;

    /// Default comparison tolerance: zero for exact types, `1e-9` for `f64`.
    fn default_tol() -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// `|self - other| <= tol`.
    fn close_to(&self, other: &Self, tol: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= *tol
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn default_tol() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f32
    }

    fn as_f64(&self) -> f64 {
        *self as f64
    }

    fn default_tol() -> Self {
        1e-5
    }
}

impl<I> Scalar for Ratio<I>
where
    I: Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + 'static,
    Ratio<I>: ToPrimitive,
{
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        Ratio::from_integer(I::from_i64(v).expect("integer out of range for rational type"))
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn default_tol() -> Self {
        Ratio::from_integer(I::zero())
    }
}

/// An exact ordered field. Equality tests on these values are exact, which
/// the polytope algorithms rely on.
pub trait Exact: Scalar + Ord {
    /// Positive factor `k` such that `k * v` is a primitive integer vector
    /// (integer entries with gcd 1). Returns one for the zero vector.
    fn primitive_factor(v: &[Self]) -> Self;

    /// `k * v` for the factor of [`Exact::primitive_factor`].
    fn make_primitive(v: &[Self]) -> Vec<Self> {
        let k = Self::primitive_factor(v);
        v.iter().map(|x| x.clone() * k.clone()).collect()
    }
}

impl<I> Exact for Ratio<I>
where
    I: Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + 'static,
    Ratio<I>: ToPrimitive,
{
    fn primitive_factor(v: &[Self]) -> Self {
        let lcm = v.iter().fold(I::one(), |acc, x| acc.lcm(x.denom()));
        let gcd = v.iter().fold(I::zero(), |acc, x| {
            let scaled = x.numer().clone() * (lcm.clone() / x.denom().clone());
            acc.gcd(&scaled)
        });
        if gcd.is_zero() {
            return Ratio::from_integer(I::one());
        }
        Ratio::new(lcm, gcd)
    }
}

/// Floating-point scalars for the quantum module.
pub trait Real: Scalar + Float + FloatConst {
    /// Hermiticity / unit-norm tolerance (`1e-12` for `f64`).
    fn strict_tol() -> Self;
}

impl Real for f64 {
    fn strict_tol() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn strict_tol() -> Self {
        1e-5
    }
}
