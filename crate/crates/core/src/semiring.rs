//! Semiring descriptors and their scalar operations.
//!
//! Every algebra here is a pair of operations `(⊕, ⊙)` with neutral
//! elements `(0̄, 1̄)` over a shared carrier:
//!
//! | name                | ⊕       | ⊙   | 0̄      | 1̄      | carrier                  |
//! |---------------------|---------|-----|--------|--------|--------------------------|
//! | `max-plus`          | max     | +   | `-inf` | `0`    | reals with `-inf`        |
//! | `min-plus`          | min     | +   | `inf`  | `0`    | reals with `inf`         |
//! | `max-min`           | max     | min | `-inf` | `inf`  | reals with both infinities |
//! | `field`             | +       | ×   | `0`    | `1`    | finite reals             |
//! | `deformed:h=<h>`    | ⊕ₕ      | +   | `-inf` | `0`    | reals with `-inf`        |
//! | `interval-max-plus` | per end | per end | `-inf:-inf` | `0:0` | intervals over max-plus |
//! | `interval-min-plus` | per end | per end | `inf:inf`   | `0:0` | intervals over min-plus |
//!
//! `⊕ₕ` is the smooth maximum `h·ln(e^{a/h} + e^{b/h})`: it tends to
//! `max` as `h → 0`, and it is exactly what makes [`dequantize`] a
//! homomorphism from `(R₊, +, ×)` into the deformed algebra.
//!
//! All kinds except `field` and `deformed` have idempotent addition
//! (`x ⊕ x = x`), which induces the order `x ⪯ y ⇔ x ⊕ y = y`. Interval
//! endpoints are ordered by that base order, so both interval operations
//! act per endpoint and multiplication stays distributive, unlike the
//! classical interval arithmetic exposed by [`classical_interval_ops`]
//! for contrast.

use std::fmt;
use std::str::FromStr;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Scalar};

/// Which algebra a descriptor selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemiringKind {
    MaxPlus,
    MinPlus,
    MaxMin,
    Field,
    Deformed,
    IntervalMaxPlus,
    IntervalMinPlus,
}

/// Identifies one semiring instance: the kind plus, for the deformed
/// family, the deformation parameter `h > 0`.
///
/// Descriptors are tiny copyable values; matrices and sampled functions
/// carry one so that cross-algebra mixing is caught as an error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiringDescriptor<T> {
    kind: SemiringKind,
    h: Option<T>,
}

impl<T: Scalar> SemiringDescriptor<T> {
    pub fn max_plus() -> Self {
        Self { kind: SemiringKind::MaxPlus, h: None }
    }

    pub fn min_plus() -> Self {
        Self { kind: SemiringKind::MinPlus, h: None }
    }

    pub fn max_min() -> Self {
        Self { kind: SemiringKind::MaxMin, h: None }
    }

    pub fn field() -> Self {
        Self { kind: SemiringKind::Field, h: None }
    }

    /// Smooth deformation of max-plus with parameter `h > 0`.
    pub fn deformed(h: T) -> Result<Self> {
        if h > T::zero() && h.is_finite() {
            Ok(Self { kind: SemiringKind::Deformed, h: Some(h) })
        } else {
            Err(Error::Domain(format!("deformation parameter must be positive and finite, got {h}")))
        }
    }

    pub fn interval_max_plus() -> Self {
        Self { kind: SemiringKind::IntervalMaxPlus, h: None }
    }

    pub fn interval_min_plus() -> Self {
        Self { kind: SemiringKind::IntervalMinPlus, h: None }
    }

    pub fn kind(&self) -> SemiringKind {
        self.kind
    }

    /// Deformation parameter; present exactly for the deformed kind.
    pub fn deformation(&self) -> Option<T> {
        self.h
    }

    /// Whether `x ⊕ x = x` holds. True for every kind except `field`
    /// and `deformed` (the latter is only idempotent in the `h → 0` limit).
    pub fn idempotent(&self) -> bool {
        !matches!(self.kind, SemiringKind::Field | SemiringKind::Deformed)
    }

    /// Whether every element other than `zero` has a `⊙`-inverse.
    pub fn has_division(&self) -> bool {
        matches!(
            self.kind,
            SemiringKind::MaxPlus | SemiringKind::MinPlus | SemiringKind::Field | SemiringKind::Deformed
        )
    }

    /// Base algebra of an interval kind.
    fn interval_base(&self) -> Option<SemiringDescriptor<T>> {
        match self.kind {
            SemiringKind::IntervalMaxPlus => Some(Self::max_plus()),
            SemiringKind::IntervalMinPlus => Some(Self::min_plus()),
            _ => None,
        }
    }

    /// Neutral element of `⊕`.
    pub fn zero(&self) -> Element<T> {
        match self.kind {
            SemiringKind::MaxPlus | SemiringKind::MaxMin | SemiringKind::Deformed => {
                Element::Scalar(T::neg_infinity())
            }
            SemiringKind::MinPlus => Element::Scalar(T::infinity()),
            SemiringKind::Field => Element::Scalar(T::zero()),
            SemiringKind::IntervalMaxPlus => {
                Element::Interval(T::neg_infinity(), T::neg_infinity())
            }
            SemiringKind::IntervalMinPlus => Element::Interval(T::infinity(), T::infinity()),
        }
    }

    /// Neutral element of `⊙`.
    pub fn one(&self) -> Element<T> {
        match self.kind {
            SemiringKind::MaxPlus | SemiringKind::MinPlus | SemiringKind::Deformed => {
                Element::Scalar(T::zero())
            }
            SemiringKind::MaxMin => Element::Scalar(T::infinity()),
            SemiringKind::Field => Element::Scalar(T::one()),
            SemiringKind::IntervalMaxPlus | SemiringKind::IntervalMinPlus => {
                Element::Interval(T::zero(), T::zero())
            }
        }
    }

    /// Both neutral elements, `(zero, one)`.
    pub fn constants(&self) -> (Element<T>, Element<T>) {
        (self.zero(), self.one())
    }

    pub fn is_zero(&self, e: &Element<T>) -> bool {
        *e == self.zero()
    }

    pub fn is_one(&self, e: &Element<T>) -> bool {
        *e == self.one()
    }

    /// Whether `e` belongs to this semiring's carrier.
    pub fn contains(&self, e: &Element<T>) -> bool {
        match self.kind {
            SemiringKind::MaxPlus | SemiringKind::Deformed => match e {
                Element::Scalar(v) => !v.is_nan() && *v != T::infinity(),
                Element::Interval(..) => false,
            },
            SemiringKind::MinPlus => match e {
                Element::Scalar(v) => !v.is_nan() && *v != T::neg_infinity(),
                Element::Interval(..) => false,
            },
            SemiringKind::MaxMin => match e {
                Element::Scalar(v) => !v.is_nan(),
                Element::Interval(..) => false,
            },
            SemiringKind::Field => match e {
                Element::Scalar(v) => v.is_finite(),
                Element::Interval(..) => false,
            },
            SemiringKind::IntervalMaxPlus | SemiringKind::IntervalMinPlus => {
                let base = self.interval_base().expect("interval kind");
                match e {
                    Element::Scalar(_) => false,
                    Element::Interval(lo, hi) => {
                        base.contains(&Element::Scalar(*lo))
                            && base.contains(&Element::Scalar(*hi))
                            && base.leq_raw(&Element::Scalar(*lo), &Element::Scalar(*hi))
                    }
                }
            }
        }
    }

    pub fn check_element(&self, e: &Element<T>) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{e} is not in the carrier of {self}")))
        }
    }

    /// Embeds a plain real as an element: the scalar itself, or the
    /// degenerate interval `[v, v]` for interval kinds.
    pub fn embed_real(&self, v: T) -> Result<Element<T>> {
        let e = match self.kind {
            SemiringKind::IntervalMaxPlus | SemiringKind::IntervalMinPlus => Element::Interval(v, v),
            _ => Element::Scalar(v),
        };
        self.check_element(&e)?;
        Ok(e)
    }

    /// `a ⊕ b`, with carrier validation.
    pub fn add(&self, a: Element<T>, b: Element<T>) -> Result<Element<T>> {
        self.check_element(&a)?;
        self.check_element(&b)?;
        Ok(self.add_raw(a, b))
    }

    /// `a ⊕ b` for elements already known to lie in the carrier.
    pub(crate) fn add_raw(&self, a: Element<T>, b: Element<T>) -> Element<T> {
        match self.kind {
            SemiringKind::MaxPlus | SemiringKind::MaxMin => {
                Element::Scalar(scalar_of(a).max(scalar_of(b)))
            }
            SemiringKind::MinPlus => Element::Scalar(scalar_of(a).min(scalar_of(b))),
            SemiringKind::Field => Element::Scalar(scalar_of(a) + scalar_of(b)),
            SemiringKind::Deformed => {
                let h = self.h.expect("deformed kind carries h");
                Element::Scalar(smooth_max(scalar_of(a), scalar_of(b), h))
            }
            SemiringKind::IntervalMaxPlus | SemiringKind::IntervalMinPlus => {
                let base = self.interval_base().expect("interval kind");
                per_endpoint(a, b, |x, y| {
                    scalar_of(base.add_raw(Element::Scalar(x), Element::Scalar(y)))
                })
            }
        }
    }

    /// `a ⊙ b`, with carrier validation. The absorbing law
    /// `0̄ ⊙ x = 0̄` is applied before any arithmetic, so no undefined
    /// `∞ + ∞` forms can arise.
    pub fn mul(&self, a: Element<T>, b: Element<T>) -> Result<Element<T>> {
        self.check_element(&a)?;
        self.check_element(&b)?;
        Ok(self.mul_raw(a, b))
    }

    pub(crate) fn mul_raw(&self, a: Element<T>, b: Element<T>) -> Element<T> {
        if self.is_zero(&a) || self.is_zero(&b) {
            return self.zero();
        }
        match self.kind {
            SemiringKind::MaxPlus | SemiringKind::MinPlus | SemiringKind::Deformed => {
                Element::Scalar(scalar_of(a) + scalar_of(b))
            }
            SemiringKind::MaxMin => Element::Scalar(scalar_of(a).min(scalar_of(b))),
            SemiringKind::Field => Element::Scalar(scalar_of(a) * scalar_of(b)),
            SemiringKind::IntervalMaxPlus | SemiringKind::IntervalMinPlus => {
                let base = self.interval_base().expect("interval kind");
                per_endpoint(a, b, |x, y| {
                    scalar_of(base.mul_raw(Element::Scalar(x), Element::Scalar(y)))
                })
            }
        }
    }

    /// The standard order `a ⪯ b ⇔ a ⊕ b = b`, defined for idempotent
    /// kinds only. Equality follows the tolerance policy.
    pub fn leq(&self, a: Element<T>, b: Element<T>) -> Result<bool> {
        if !self.idempotent() {
            return Err(Error::Unsupported(format!(
                "the standard order needs idempotent addition; {self} is not idempotent"
            )));
        }
        self.check_element(&a)?;
        self.check_element(&b)?;
        Ok(self.leq_raw(&a, &b))
    }

    pub(crate) fn leq_raw(&self, a: &Element<T>, b: &Element<T>) -> bool {
        self.add_raw(*a, *b).approx_eq(b)
    }

    /// Scalar closure `a* = 1̄ ⊕ a ⊕ a² ⊕ …`.
    ///
    /// For idempotent kinds the series stabilizes at `1̄` exactly when
    /// `1̄ ⊕ a = 1̄`; otherwise it leaves the carrier (in min-plus that is
    /// precisely a negative self-loop). Over the field the series is
    /// geometric and `a* = 1/(1 − a)`.
    pub fn star(&self, a: Element<T>) -> Result<Element<T>> {
        self.check_element(&a)?;
        match self.kind {
            SemiringKind::Field => {
                let v = scalar_of(a);
                let denom = T::one() - v;
                if denom == T::zero() {
                    Err(Error::StarUndefined(format!("1/(1 - {v}) for {self}")))
                } else {
                    Ok(Element::Scalar(denom.recip()))
                }
            }
            SemiringKind::Deformed => Err(Error::Unsupported(format!(
                "star is not defined over {self}"
            ))),
            _ => {
                let one = self.one();
                if self.add_raw(one, a).approx_eq(&one) {
                    Ok(one)
                } else {
                    Err(Error::StarUndefined(format!(
                        "series 1 ⊕ {a} ⊕ {a}² ⊕ … leaves the carrier of {self}"
                    )))
                }
            }
        }
    }

    /// Exact name understood by [`FromStr`]; `deformed:h=<h>` carries
    /// its parameter.
    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl<T: Scalar> fmt::Display for SemiringDescriptor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SemiringKind::MaxPlus => write!(f, "max-plus"),
            SemiringKind::MinPlus => write!(f, "min-plus"),
            SemiringKind::MaxMin => write!(f, "max-min"),
            SemiringKind::Field => write!(f, "field"),
            SemiringKind::Deformed => write!(f, "deformed:h={}", self.h.expect("deformed kind")),
            SemiringKind::IntervalMaxPlus => write!(f, "interval-max-plus"),
            SemiringKind::IntervalMinPlus => write!(f, "interval-min-plus"),
        }
    }
}

impl<T: Scalar> FromStr for SemiringDescriptor<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max-plus" => Ok(Self::max_plus()),
            "min-plus" => Ok(Self::min_plus()),
            "max-min" => Ok(Self::max_min()),
            "field" => Ok(Self::field()),
            "interval-max-plus" => Ok(Self::interval_max_plus()),
            "interval-min-plus" => Ok(Self::interval_min_plus()),
            _ => {
                if let Some(rest) = s.strip_prefix("deformed:h=") {
                    let h = parse_scalar::<T>(rest).ok_or_else(|| {
                        Error::Domain(format!("invalid deformation parameter '{rest}'"))
                    })?;
                    Self::deformed(h)
                } else {
                    Err(Error::Domain(format!("unknown semiring '{s}'")))
                }
            }
        }
    }
}

fn scalar_of<T: Scalar>(e: Element<T>) -> T {
    match e {
        Element::Scalar(v) => v,
        Element::Interval(..) => unreachable!("interval element in a scalar kind"),
    }
}

fn per_endpoint<T: Scalar>(a: Element<T>, b: Element<T>, op: impl Fn(T, T) -> T) -> Element<T> {
    match (a, b) {
        (Element::Interval(a0, a1), Element::Interval(b0, b1)) => {
            Element::Interval(op(a0, b0), op(a1, b1))
        }
        _ => unreachable!("scalar element in an interval kind"),
    }
}

/// Shifted evaluation of `h·ln(e^{a/h} + e^{b/h})`. The literal form
/// overflows for `|w|/h` large; this one never does.
fn smooth_max<T: Scalar>(a: T, b: T, h: T) -> T {
    if a == T::neg_infinity() {
        return b;
    }
    if b == T::neg_infinity() {
        return a;
    }
    if a == b {
        return a + h * T::ln_two();
    }
    let m = a.max(b);
    let gap = (a - b).abs();
    // for gap > 0 the true correction is strictly below ln 2; the clamp
    // keeps the rounded one there too
    m + h * (-(gap / h)).exp().ln_1p().min(T::ln_two())
}

/// Log-domain change of variables `u ↦ h·ln u`, carrying nonnegative
/// reals into the max-plus carrier with `0 ↦ -inf` and `1 ↦ 0`.
pub fn dequantize<T: Scalar>(u: T, h: T) -> Result<Element<T>> {
    if !h.is_finite() || h <= T::zero() {
        return Err(Error::Domain(format!("h must be positive and finite, got {h}")));
    }
    if u.is_nan() || u < T::zero() || u == T::infinity() {
        return Err(Error::Domain(format!("{u} is not a nonnegative real")));
    }
    if u == T::zero() {
        return Ok(Element::Scalar(T::neg_infinity()));
    }
    Ok(Element::Scalar(h * u.ln()))
}

/// Deformed addition `w1 ⊕ₕ w2 = h·ln(e^{w1/h} + e^{w2/h})` on the
/// max-plus carrier. Satisfies
/// `max(w1, w2) ≤ w1 ⊕ₕ w2 ≤ max(w1, w2) + h·ln 2`.
pub fn deformed_add<T: Scalar>(w1: Element<T>, w2: Element<T>, h: T) -> Result<Element<T>> {
    let s = SemiringDescriptor::deformed(h)?;
    s.add(w1, w2)
}

/// Classical (numeric-order) interval sum and product, returned as
/// `(sum, product)`. Kept separate from the semiring kinds: the
/// classical product does not distribute over the classical sum,
/// whereas the idempotent interval kinds distribute exactly.
pub fn classical_interval_ops<T: Scalar>(
    a: (T, T),
    b: (T, T),
) -> Result<((T, T), (T, T))> {
    for (lo, hi) in [a, b] {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::Domain(format!("[{lo}, {hi}] is not a real interval")));
        }
    }
    let sum = (a.0 + b.0, a.1 + b.1);
    let p = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    let mut lo = p[0];
    let mut hi = p[0];
    for v in &p[1..] {
        lo = lo.min(*v);
        hi = hi.max(*v);
    }
    Ok((sum, (lo, hi)))
}
