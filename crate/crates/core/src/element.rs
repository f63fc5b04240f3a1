//! Values of a semiring carrier.

use std::fmt;

use crate::scalar::{approx_eq, parse_scalar, Scalar};

/// One value in the carrier of some semiring.
///
/// Scalar kinds store a single extended real; interval kinds store an
/// ordered pair of endpoints. Which variant is legal, and what the
/// endpoint order means, is decided by the owning
/// [`SemiringDescriptor`](crate::SemiringDescriptor).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Element<T> {
    Scalar(T),
    Interval(T, T),
}

impl<T: Scalar> Element<T> {
    pub fn scalar(v: T) -> Self {
        Element::Scalar(v)
    }

    pub fn interval(lo: T, hi: T) -> Self {
        Element::Interval(lo, hi)
    }

    pub fn as_scalar(&self) -> Option<T> {
        match self {
            Element::Scalar(v) => Some(*v),
            Element::Interval(..) => None,
        }
    }

    pub fn as_interval(&self) -> Option<(T, T)> {
        match self {
            Element::Scalar(_) => None,
            Element::Interval(lo, hi) => Some((*lo, *hi)),
        }
    }

    /// Equality under the tolerance policy; infinities compare exactly.
    pub fn approx_eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Element::Scalar(a), Element::Scalar(b)) => approx_eq(*a, *b),
            (Element::Interval(a0, a1), Element::Interval(b0, b1)) => {
                approx_eq(*a0, *b0) && approx_eq(*a1, *b1)
            }
            _ => false,
        }
    }

    /// Largest entrywise distance to `other`; zero for equal infinities.
    pub fn distance(&self, other: &Self) -> T {
        fn gap<T: Scalar>(a: T, b: T) -> T {
            if a == b {
                T::zero()
            } else {
                (a - b).abs()
            }
        }
        match (self, other) {
            (Element::Scalar(a), Element::Scalar(b)) => gap(*a, *b),
            (Element::Interval(a0, a1), Element::Interval(b0, b1)) => {
                gap(*a0, *b0).max(gap(*a1, *b1))
            }
            _ => T::infinity(),
        }
    }
}

impl<T: Scalar> fmt::Display for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Scalar(v) => write!(f, "{v}"),
            Element::Interval(lo, hi) => write!(f, "{lo}:{hi}"),
        }
    }
}

/// Parses an element token: a plain scalar, or `lo:hi` for intervals.
pub fn parse_element<T: Scalar>(token: &str) -> Option<Element<T>> {
    match token.split_once(':') {
        Some((lo, hi)) => Some(Element::Interval(parse_scalar(lo)?, parse_scalar(hi)?)),
        None => Some(Element::Scalar(parse_scalar(token)?)),
    }
}
