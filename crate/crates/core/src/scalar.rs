//! Floating-point carrier abstraction and the approximate-equality policy.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating carrier for semiring elements.
///
/// The toolkit works with extended reals, so the type must model `±∞`
/// natively. Two finite values compare equal when they differ by at most
/// the absolute tolerance or the relative tolerance scaled by their
/// magnitude, whichever is looser; infinities compare exactly.
pub trait Scalar: Float + FromPrimitive + Display + Debug + Send + Sync + 'static {
    /// Absolute tolerance floor for approximate equality.
    fn abs_tol() -> Self;
    /// Relative tolerance for approximate equality.
    fn rel_tol() -> Self;
    /// ln 2, the gap between the smooth and the exact maximum.
    fn ln_two() -> Self;
}

impl Scalar for f64 {
    fn abs_tol() -> f64 {
        1e-12
    }
    fn rel_tol() -> f64 {
        1e-9
    }
    fn ln_two() -> f64 {
        std::f64::consts::LN_2
    }
}

impl Scalar for f32 {
    fn abs_tol() -> f32 {
        1e-6
    }
    fn rel_tol() -> f32 {
        1e-4
    }
    fn ln_two() -> f32 {
        std::f32::consts::LN_2
    }
}

/// Approximate equality under the crate-wide tolerance policy.
pub fn approx_eq<T: Scalar>(a: T, b: T) -> bool {
    if a == b {
        return true;
    }
    if !a.is_finite() || !b.is_finite() {
        return false;
    }
    let diff = (a - b).abs();
    diff <= T::abs_tol() || diff <= T::rel_tol() * a.abs().max(b.abs())
}

/// Parses a scalar token; `inf` and `-inf` denote the infinities.
pub fn parse_scalar<T: Scalar>(token: &str) -> Option<T> {
    let v: f64 = token.trim().parse().ok()?;
    T::from_f64(v)
}
