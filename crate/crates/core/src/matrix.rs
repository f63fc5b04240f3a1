//! Dense matrices and vectors over a chosen semiring.
//!
//! Storage is row major. Binary operations require both operands to
//! carry the same semiring; mixing algebras is an error, never a
//! silent conversion. Products reduce over the inner index in
//! ascending order, which pins the floating-point rounding sequence:
//! [`Matrix::mul_parallel`] partitions output cells across threads but
//! reuses the same per-cell reduction, so its result is bit-identical
//! to the sequential product.
//!
//! # Text format
//!
//! The first line holds `rows cols semiring-name`; each following line
//! holds one row of whitespace-separated entries. `inf` and `-inf`
//! denote the infinities and `lo:hi` an interval element. Lines that
//! are blank or start with `#` are skipped.

use std::fmt;

use rayon::prelude::*;

use crate::element::{parse_element, Element};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::semiring::SemiringDescriptor;

/// Dense rectangular array of semiring elements.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T: Scalar> {
    semiring: SemiringDescriptor<T>,
    rows: usize,
    cols: usize,
    data: Vec<Element<T>>,
}

/// A matrix with a single row or a single column.
pub type Vector<T> = Matrix<T>;

impl<T: Scalar> Matrix<T> {
    /// Builds a matrix from row-major elements, validating the shape
    /// and that every entry lies in the carrier.
    pub fn from_elements(
        semiring: SemiringDescriptor<T>,
        rows: usize,
        cols: usize,
        data: Vec<Element<T>>,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} elements, got {}",
                rows * cols,
                data.len()
            )));
        }
        for e in &data {
            semiring.check_element(e)?;
        }
        Ok(Self { semiring, rows, cols, data })
    }

    pub fn from_fn(
        semiring: SemiringDescriptor<T>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Element<T>,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_elements(semiring, rows, cols, data)
    }

    /// Matrix with every entry `0̄`.
    pub fn zeros(semiring: SemiringDescriptor<T>, rows: usize, cols: usize) -> Self {
        Self {
            semiring,
            rows,
            cols,
            data: vec![semiring.zero(); rows * cols],
        }
    }

    /// Square matrix with `1̄` on the diagonal and `0̄` elsewhere; the
    /// unity of the matrix semiring.
    pub fn identity(semiring: SemiringDescriptor<T>, n: usize) -> Self {
        let mut m = Self::zeros(semiring, n, n);
        for i in 0..n {
            m.data[i * n + i] = semiring.one();
        }
        m
    }

    /// Column vector from elements.
    pub fn column(semiring: SemiringDescriptor<T>, values: Vec<Element<T>>) -> Result<Self> {
        let rows = values.len();
        Self::from_elements(semiring, rows, 1, values)
    }

    /// Row vector from elements.
    pub fn row(semiring: SemiringDescriptor<T>, values: Vec<Element<T>>) -> Result<Self> {
        let cols = values.len();
        Self::from_elements(semiring, 1, cols, values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn semiring(&self) -> &SemiringDescriptor<T> {
        &self.semiring
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_vector(&self) -> bool {
        self.rows == 1 || self.cols == 1
    }

    pub fn get(&self, i: usize, j: usize) -> Element<T> {
        self.data[i * self.cols + j]
    }

    /// Replaces one entry, validating the carrier.
    pub fn set(&mut self, i: usize, j: usize, e: Element<T>) -> Result<()> {
        self.semiring.check_element(&e)?;
        self.data[i * self.cols + j] = e;
        Ok(())
    }

    pub(crate) fn set_raw(&mut self, i: usize, j: usize, e: Element<T>) {
        self.data[i * self.cols + j] = e;
    }

    /// Row-major elements.
    pub fn elements(&self) -> &[Element<T>] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Self { semiring: self.semiring, rows: self.cols, cols: self.rows, data }
    }

    fn check_same_semiring(&self, other: &Self) -> Result<()> {
        if self.semiring == other.semiring {
            Ok(())
        } else {
            Err(Error::SemiringMismatch {
                left: self.semiring.name(),
                right: other.semiring.name(),
            })
        }
    }

    /// Entrywise `⊕`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_semiring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.semiring.add_raw(*a, *b))
            .collect();
        Ok(Self { semiring: self.semiring, rows: self.rows, cols: self.cols, data })
    }

    fn product_cell(&self, other: &Self, i: usize, j: usize) -> Element<T> {
        let s = &self.semiring;
        let mut acc = s.zero();
        for k in 0..self.cols {
            acc = s.add_raw(acc, s.mul_raw(self.get(i, k), other.get(k, j)));
        }
        acc
    }

    fn check_product_dims(&self, other: &Self) -> Result<()> {
        self.check_same_semiring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Matrix product `(AB)_ij = ⊕_k a_ik ⊙ b_kj`, reducing over `k`
    /// in ascending order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_product_dims(other)?;
        let (rows, cols) = (self.rows, other.cols);
        let data = (0..rows * cols)
            .map(|idx| self.product_cell(other, idx / cols, idx % cols))
            .collect();
        Ok(Self { semiring: self.semiring, rows, cols, data })
    }

    /// Same product with output cells partitioned across threads.
    /// Bit-identical to [`Matrix::mul`] by the fixed per-cell reduction.
    pub fn mul_parallel(&self, other: &Self) -> Result<Self> {
        self.check_product_dims(other)?;
        let (rows, cols) = (self.rows, other.cols);
        let data = (0..rows * cols)
            .into_par_iter()
            .map(|idx| self.product_cell(other, idx / cols, idx % cols))
            .collect();
        Ok(Self { semiring: self.semiring, rows, cols, data })
    }

    /// Entrywise equality under the tolerance policy.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.semiring == other.semiring
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b))
    }

    /// Largest entrywise distance; infinite on shape mismatch.
    pub fn max_distance(&self, other: &Self) -> T {
        if self.rows != other.rows || self.cols != other.cols {
            return T::infinity();
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.distance(b))
            .fold(T::zero(), T::max)
    }
}

/// `⊕_i x_i ⊙ y_i` for two vectors of equal length, reducing in
/// ascending index order. Agrees with the first entry of
/// `row(x) · col(y)`.
pub fn scalar_product<T: Scalar>(x: &Vector<T>, y: &Vector<T>) -> Result<Element<T>> {
    x.check_same_semiring(y)?;
    if !x.is_vector() || !y.is_vector() {
        return Err(Error::DimensionMismatch("scalar product needs vectors".into()));
    }
    if x.data.len() != y.data.len() {
        return Err(Error::DimensionMismatch(format!(
            "vector lengths differ: {} vs {}",
            x.data.len(),
            y.data.len()
        )));
    }
    let s = &x.semiring;
    let mut acc = s.zero();
    for (a, b) in x.data.iter().zip(&y.data) {
        acc = s.add_raw(acc, s.mul_raw(*a, *b));
    }
    Ok(acc)
}

/// Matrix action on a column vector; the finite model of an integral
/// operator applied to a function.
pub fn mat_vec<T: Scalar>(a: &Matrix<T>, v: &Vector<T>) -> Result<Vector<T>> {
    if v.cols != 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected a column vector, got {}x{}",
            v.rows, v.cols
        )));
    }
    a.mul(v)
}

/// Truncated closure `1̄ ⊕ A ⊕ A² ⊕ … ⊕ A^k`.
///
/// This is the brute-force side of the closure pair: over an
/// idempotent semiring whose closure stabilizes, `k = n − 1` already
/// equals the full `A*`.
pub fn closure_truncated<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "closure needs a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    let mut acc = Matrix::identity(a.semiring, a.rows);
    let mut power = Matrix::identity(a.semiring, a.rows);
    for _ in 0..k {
        power = power.mul(a)?;
        acc = acc.add(&power)?;
    }
    Ok(acc)
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows, self.cols, self.semiring)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, "\t")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Parses the matrix text format.
pub fn parse_matrix<T: Scalar>(text: &str) -> Result<Matrix<T>> {
    let mut significant = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = significant
        .next()
        .ok_or_else(|| Error::Parse { line: 1, message: "empty matrix".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::Parse {
            line: line_no,
            message: format!("expected 'rows cols semiring-name', got '{header}'"),
        });
    }
    let rows: usize = fields[0].parse().map_err(|_| Error::Parse {
        line: line_no,
        message: format!("invalid row count '{}'", fields[0]),
    })?;
    let cols: usize = fields[1].parse().map_err(|_| Error::Parse {
        line: line_no,
        message: format!("invalid column count '{}'", fields[1]),
    })?;
    let semiring: SemiringDescriptor<T> = fields[2].parse().map_err(|_| Error::Parse {
        line: line_no,
        message: format!("unknown semiring '{}'", fields[2]),
    })?;

    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (line_no, row) = significant.next().ok_or_else(|| Error::Parse {
            line: text.lines().count(),
            message: format!("expected {rows} rows of entries"),
        })?;
        let entries: Vec<&str> = row.split_whitespace().collect();
        if entries.len() != cols {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {cols} entries, got {}", entries.len()),
            });
        }
        for token in entries {
            let e = parse_element::<T>(token).ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("invalid entry '{token}'"),
            })?;
            semiring.check_element(&e).map_err(|err| Error::Parse {
                line: line_no,
                message: err.to_string(),
            })?;
            data.push(e);
        }
    }
    if let Some((line_no, extra)) = significant.next() {
        return Err(Error::Parse {
            line: line_no,
            message: format!("unexpected trailing content '{extra}'"),
        });
    }
    Matrix::from_elements(semiring, rows, cols, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    type D = SemiringDescriptor<f64>;

    fn s(v: f64) -> Element<f64> {
        Element::Scalar(v)
    }

    fn mat(d: D, rows: usize, cols: usize, vals: &[f64]) -> Matrix<f64> {
        Matrix::from_elements(d, rows, cols, vals.iter().map(|v| s(*v)).collect()).unwrap()
    }

    const NEG: f64 = f64::NEG_INFINITY;
    const INF: f64 = f64::INFINITY;

    #[test]
    fn identity_and_zeros() {
        let id = Matrix::identity(D::max_plus(), 2);
        assert_eq!(id.get(0, 0), s(0.0));
        assert_eq!(id.get(0, 1), s(NEG));
        let z = Matrix::zeros(D::min_plus(), 1, 1);
        assert_eq!(z.get(0, 0), s(INF));
        let idf = Matrix::identity(D::field(), 2);
        assert_eq!(
            idf.elements(),
            &[s(1.0), s(0.0), s(0.0), s(1.0)]
        );
    }

    #[test]
    fn add_is_entrywise() {
        let a = mat(D::max_plus(), 2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let b = mat(D::max_plus(), 2, 2, &[4.0, 3.0, 2.0, 1.0]);
        let c = a.add(&b).unwrap();
        assert_eq!(c, mat(D::max_plus(), 2, 2, &[4.0, 3.0, 3.0, 4.0]));
        let z = Matrix::zeros(D::max_plus(), 2, 2);
        assert_eq!(a.add(&z).unwrap(), a);
        assert_eq!(a.add(&a).unwrap(), a);
    }

    #[test]
    fn min_plus_product() {
        let a = mat(D::min_plus(), 2, 2, &[0.0, 2.0, INF, 0.0]);
        let b = mat(D::min_plus(), 2, 2, &[0.0, INF, 3.0, 0.0]);
        let c = a.mul(&b).unwrap();
        assert_eq!(c, mat(D::min_plus(), 2, 2, &[0.0, 2.0, 3.0, 0.0]));
    }

    #[test]
    fn field_product_matches_hand_result() {
        let a = mat(D::field(), 2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let b = mat(D::field(), 2, 2, &[5.0, 6.0, 7.0, 8.0]);
        assert_eq!(a.mul(&b).unwrap(), mat(D::field(), 2, 2, &[19.0, 22.0, 43.0, 50.0]));
        let id = Matrix::identity(D::field(), 2);
        assert_eq!(a.mul(&id).unwrap(), a);
    }

    #[test]
    fn mixing_semirings_is_an_error() {
        let a = mat(D::max_plus(), 1, 1, &[1.0]);
        let b = mat(D::min_plus(), 1, 1, &[1.0]);
        assert!(matches!(a.add(&b), Err(Error::SemiringMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(Error::SemiringMismatch { .. })));
    }

    #[test]
    fn scalar_product_examples() {
        let d = D::max_plus();
        let x = Matrix::row(d, vec![s(1.0), s(2.0), s(3.0)]).unwrap();
        let y = Matrix::row(d, vec![s(3.0), s(2.0), s(1.0)]).unwrap();
        assert_eq!(scalar_product(&x, &y).unwrap(), s(4.0));

        let zeros = Matrix::row(d, vec![s(NEG), s(NEG), s(NEG)]).unwrap();
        assert_eq!(scalar_product(&zeros, &y).unwrap(), s(NEG));

        let f = D::field();
        let u = Matrix::row(f, vec![s(1.0), s(2.0)]).unwrap();
        let v = Matrix::row(f, vec![s(3.0), s(4.0)]).unwrap();
        assert_eq!(scalar_product(&u, &v).unwrap(), s(11.0));
    }

    #[test]
    fn scalar_product_matches_row_times_column() {
        let d = D::min_plus();
        let x = Matrix::row(d, vec![s(1.0), s(5.0), s(0.5)]).unwrap();
        let y = Matrix::column(d, vec![s(2.0), s(INF), s(3.0)]).unwrap();
        let via_product = x.mul(&y).unwrap().get(0, 0);
        let xr = x.clone();
        let yr = y.transpose();
        assert_eq!(scalar_product(&xr, &yr).unwrap(), via_product);
    }

    #[test]
    fn mat_vec_examples() {
        let d = D::max_plus();
        let a = mat(d, 2, 2, &[0.0, 1.0, NEG, 0.0]);
        let v = Matrix::column(d, vec![s(5.0), s(7.0)]).unwrap();
        let out = mat_vec(&a, &v).unwrap();
        assert_eq!(out.elements(), &[s(8.0), s(7.0)]);

        let id = Matrix::identity(d, 2);
        assert_eq!(mat_vec(&id, &v).unwrap(), v);

        let z = Matrix::zeros(d, 2, 2);
        assert_eq!(mat_vec(&z, &v).unwrap(), Matrix::zeros(d, 2, 1));
    }

    #[test]
    fn truncated_closure_examples() {
        let d = D::min_plus();
        let a = mat(d, 2, 2, &[INF, 2.0, 3.0, INF]);
        assert_eq!(closure_truncated(&a, 0).unwrap(), Matrix::identity(d, 2));
        assert_eq!(
            closure_truncated(&a, 2).unwrap(),
            mat(d, 2, 2, &[0.0, 2.0, 3.0, 0.0])
        );
    }

    #[test]
    fn parallel_product_is_bit_identical() {
        // moderately awkward values so any reduction reorder would show
        let d = D::field();
        let vals: Vec<f64> = (0..36).map(|i| ((i * 37 + 11) % 97) as f64 / 7.0).collect();
        let a = mat(d, 6, 6, &vals);
        let b = mat(d, 6, 6, &vals[..36.min(vals.len())]);
        let seq = a.mul(&b).unwrap();
        let par = a.mul_parallel(&b).unwrap();
        assert_eq!(seq, par);

        let t = D::max_plus();
        let at = mat(t, 3, 3, &[0.1, NEG, 2.7, 1.3, 0.0, NEG, 5.5, -2.2, 0.4]);
        assert_eq!(at.mul(&at).unwrap(), at.mul_parallel(&at).unwrap());
    }

    #[test]
    fn text_format_round_trips() {
        let d = D::min_plus();
        let a = mat(d, 2, 3, &[0.0, 2.5, INF, 3.0, INF, -1.0]);
        let text = a.to_string();
        let back = parse_matrix::<f64>(&text).unwrap();
        assert_eq!(a, back);

        let iv = Matrix::from_elements(
            D::interval_max_plus(),
            1,
            2,
            vec![Element::Interval(1.0, 3.0), Element::Interval(NEG, 0.5)],
        )
        .unwrap();
        assert_eq!(parse_matrix::<f64>(&iv.to_string()).unwrap(), iv);
    }

    #[test]
    fn parser_reports_line_numbers() {
        let bad = "2 2 min-plus\n0 1\n2 x\n";
        match parse_matrix::<f64>(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        let short = "2 2 min-plus\n0 1\n";
        assert!(matches!(parse_matrix::<f64>(short), Err(Error::Parse { .. })));
        let carrier = "1 1 max-plus\ninf\n";
        assert!(matches!(parse_matrix::<f64>(carrier), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn comments_and_blanks_are_skipped() {
        let text = "# closure of a triangle\n\n2 2 min-plus\n# node order: a b\n0\t2\n\ninf\t0\n";
        let m = parse_matrix::<f64>(text).unwrap();
        assert_eq!(m.get(0, 1), s(2.0));
    }
}
