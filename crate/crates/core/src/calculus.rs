//! Integration, measures, inner products, integral operators, and the
//! Legendre transform on sampled functions.
//!
//! Functions are finite samples on a strictly increasing grid. Over an
//! idempotent semiring the integral of a sampled function is exact on
//! its own model: it is just the `⊕` of the samples. The generic
//! Riemann sum [`riemann_universal`] keeps the mesh widths as
//! `⊙`-factors instead, which makes the one routine meaningful over
//! every algebra: over the field it is the rectangle rule, over
//! max-plus it converges to the supremum as the mesh shrinks.

use crate::element::{parse_element, Element};
use crate::error::{Error, Result};
use crate::matrix::{mat_vec, Matrix};
use crate::scalar::{parse_scalar, Scalar};
use crate::semiring::{SemiringDescriptor, SemiringKind};

fn check_grid<T: Scalar>(xs: &[T]) -> Result<()> {
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("grid points must be finite".into()));
    }
    for w in xs.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::Domain(format!(
                "grid must be strictly increasing, got {} before {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// A map from a real grid into a semiring: the finite model of a
/// function `X → S`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction<T: Scalar> {
    semiring: SemiringDescriptor<T>,
    xs: Vec<T>,
    values: Vec<Element<T>>,
}

impl<T: Scalar> SampledFunction<T> {
    pub fn new(
        semiring: SemiringDescriptor<T>,
        xs: Vec<T>,
        values: Vec<Element<T>>,
    ) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} grid points but {} values",
                xs.len(),
                values.len()
            )));
        }
        check_grid(&xs)?;
        for v in &values {
            semiring.check_element(v)?;
        }
        Ok(Self { semiring, xs, values })
    }

    pub fn from_fn(
        semiring: SemiringDescriptor<T>,
        xs: Vec<T>,
        f: impl Fn(T) -> Element<T>,
    ) -> Result<Self> {
        let values = xs.iter().map(|x| f(*x)).collect();
        Self::new(semiring, xs, values)
    }

    pub fn constant(
        semiring: SemiringDescriptor<T>,
        xs: Vec<T>,
        value: Element<T>,
    ) -> Result<Self> {
        let values = vec![value; xs.len()];
        Self::new(semiring, xs, values)
    }

    pub fn semiring(&self) -> &SemiringDescriptor<T> {
        &self.semiring
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn values(&self) -> &[Element<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.semiring != other.semiring {
            return Err(Error::SemiringMismatch {
                left: self.semiring.name(),
                right: other.semiring.name(),
            });
        }
        if self.xs != other.xs {
            return Err(Error::GridMismatch(
                "functions are sampled on different grids".into(),
            ));
        }
        Ok(())
    }

    /// Pointwise `⊕`; functions form a semimodule under this and
    /// [`SampledFunction::scale`].
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| self.semiring.add_raw(*a, *b))
            .collect();
        Ok(Self { semiring: self.semiring, xs: self.xs.clone(), values })
    }

    /// Pointwise `c ⊙ φ`.
    pub fn scale(&self, c: Element<T>) -> Result<Self> {
        self.semiring.check_element(&c)?;
        let values = self.values.iter().map(|v| self.semiring.mul_raw(c, *v)).collect();
        Ok(Self { semiring: self.semiring, xs: self.xs.clone(), values })
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.semiring == other.semiring
            && self.xs == other.xs
            && self.values.iter().zip(&other.values).all(|(a, b)| a.approx_eq(b))
    }

    /// Emits the `x,value` CSV form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,value\n");
        for (x, v) in self.xs.iter().zip(&self.values) {
            out.push_str(&format!("{x},{v}\n"));
        }
        out
    }

    /// Parses the `x,value` CSV form over a chosen semiring.
    pub fn parse_csv(text: &str, semiring: SemiringDescriptor<T>) -> Result<Self> {
        let mut xs = Vec::new();
        let mut values = Vec::new();
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, message: "empty function file".into() })?;
        if header.trim() != "x,value" {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header 'x,value', got '{}'", header.trim()),
            });
        }
        for (i, raw) in lines {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (x_tok, v_tok) = line.split_once(',').ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected 'x,value'".into(),
            })?;
            let x = parse_scalar::<T>(x_tok).ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("invalid grid point '{x_tok}'"),
            })?;
            let v = parse_element::<T>(v_tok.trim()).ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("invalid value '{}'", v_tok.trim()),
            })?;
            xs.push(x);
            values.push(v);
        }
        Self::new(semiring, xs, values).map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::Parse { line: 1, message: other.to_string() },
        })
    }
}

/// A two-grid kernel `K(x, y)`, the finite model of an integral
/// operator's kernel.
#[derive(Debug, Clone)]
pub struct Kernel<T: Scalar> {
    xs: Vec<T>,
    ys: Vec<T>,
    matrix: Matrix<T>,
}

impl<T: Scalar> Kernel<T> {
    pub fn new(xs: Vec<T>, ys: Vec<T>, matrix: Matrix<T>) -> Result<Self> {
        check_grid(&xs)?;
        check_grid(&ys)?;
        if matrix.rows() != xs.len() || matrix.cols() != ys.len() {
            return Err(Error::DimensionMismatch(format!(
                "kernel is {}x{} but grids have {} and {} points",
                matrix.rows(),
                matrix.cols(),
                xs.len(),
                ys.len()
            )));
        }
        Ok(Self { xs, ys, matrix })
    }

    /// Identity kernel on one grid: `1̄` on the diagonal, `0̄` off it.
    pub fn identity(semiring: SemiringDescriptor<T>, xs: Vec<T>) -> Result<Self> {
        let n = xs.len();
        Self::new(xs.clone(), xs, Matrix::identity(semiring, n))
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn ys(&self) -> &[T] {
        &self.ys
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }
}

/// Generic Riemann sum `⊕_i φ(x_i) ⊙ Δ_i` with `Δ_i = x_i − x_{i−1}`.
///
/// The mesh widths enter as `⊙`-factors, so the same sum specializes
/// to the rectangle rule over the field and to a `Δ`-biased maximum
/// over max-plus.
pub fn riemann_universal<T: Scalar>(phi: &SampledFunction<T>) -> Result<Element<T>> {
    if phi.len() < 2 {
        return Err(Error::Domain(format!(
            "a Riemann sum needs at least 2 grid points, got {}",
            phi.len()
        )));
    }
    let s = phi.semiring;
    let mut acc = s.zero();
    for i in 1..phi.len() {
        let delta = s.embed_real(phi.xs[i] - phi.xs[i - 1])?;
        acc = s.add_raw(acc, s.mul_raw(phi.values[i], delta));
    }
    Ok(acc)
}

/// The exact integral on the finite model: `⊕` over all sample values.
/// The empty function integrates to `0̄`.
pub fn idempotent_integral<T: Scalar>(phi: &SampledFunction<T>) -> Result<Element<T>> {
    if !phi.semiring.idempotent() {
        return Err(Error::Unsupported(format!(
            "the idempotent integral needs idempotent addition; {} has none",
            phi.semiring
        )));
    }
    Ok(phi.values.iter().fold(phi.semiring.zero(), |acc, v| phi.semiring.add_raw(acc, *v)))
}

/// `⊕` of `φ` over a subset of grid indices; the measure the function
/// induces. The empty set measures `0̄`.
pub fn measure<T: Scalar>(phi: &SampledFunction<T>, indices: &[usize]) -> Result<Element<T>> {
    let mut acc = phi.semiring.zero();
    for &i in indices {
        let v = phi.values.get(i).ok_or_else(|| {
            Error::Domain(format!("index {i} out of range for {} samples", phi.len()))
        })?;
        acc = phi.semiring.add_raw(acc, *v);
    }
    Ok(acc)
}

/// `⟨φ, ψ⟩ = ⊕_i φ(x_i) ⊙ ψ(x_i)` on one shared grid.
pub fn scalar_product_fn<T: Scalar>(
    phi: &SampledFunction<T>,
    psi: &SampledFunction<T>,
) -> Result<Element<T>> {
    phi.check_compatible(psi)?;
    let s = phi.semiring;
    let mut acc = s.zero();
    for (a, b) in phi.values.iter().zip(&psi.values) {
        acc = s.add_raw(acc, s.mul_raw(*a, *b));
    }
    Ok(acc)
}

/// `(Kφ)(x_i) = ⊕_j K(x_i, y_j) ⊙ φ(y_j)`: the kernel matrix acting on
/// the sample vector.
pub fn integral_operator<T: Scalar>(
    kernel: &Kernel<T>,
    phi: &SampledFunction<T>,
) -> Result<SampledFunction<T>> {
    if kernel.matrix.semiring() != &phi.semiring {
        return Err(Error::SemiringMismatch {
            left: kernel.matrix.semiring().name(),
            right: phi.semiring.name(),
        });
    }
    if kernel.ys != phi.xs {
        return Err(Error::GridMismatch(
            "kernel's y grid differs from the function's grid".into(),
        ));
    }
    let column = Matrix::column(phi.semiring, phi.values.clone())?;
    let out = mat_vec(&kernel.matrix, &column)?;
    SampledFunction::new(phi.semiring, kernel.xs.clone(), out.elements().to_vec())
}

/// Legendre (Fenchel) transform `φ̃(ξ) = ⊕_i ξ·x_i ⊙ φ(x_i)` over
/// max-plus: the supremum of `ξ·x + φ(x)` over the sample grid,
/// evaluated by a full scan per `ξ`.
pub fn legendre_transform<T: Scalar>(
    phi: &SampledFunction<T>,
    xi_grid: &[T],
) -> Result<SampledFunction<T>> {
    if phi.semiring.kind() != SemiringKind::MaxPlus {
        return Err(Error::Unsupported(format!(
            "the Legendre transform is defined over max-plus, got {}",
            phi.semiring
        )));
    }
    if phi.is_empty() {
        return Err(Error::Domain("cannot transform an empty function".into()));
    }
    if xi_grid.is_empty() {
        return Err(Error::Domain("empty slope grid".into()));
    }
    check_grid(xi_grid)?;
    let values = xi_grid
        .iter()
        .map(|&xi| {
            let mut best = T::neg_infinity();
            for (x, v) in phi.xs.iter().zip(&phi.values) {
                let v = v.as_scalar().expect("max-plus elements are scalars");
                if v == T::neg_infinity() {
                    continue;
                }
                best = best.max(xi * *x + v);
            }
            Element::Scalar(best)
        })
        .collect();
    SampledFunction::new(phi.semiring, xi_grid.to_vec(), values)
}
