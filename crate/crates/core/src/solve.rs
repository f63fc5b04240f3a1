//! Closure and fixed-point solvers, one code path for every semiring.
//!
//! All three solvers answer the same linear fixed-point problem
//! `X = AX ⊕ B`:
//!
//! * [`closure_gauss_jordan`] eliminates pivots in ascending order and
//!   returns the closure `A* = 1̄ ⊕ A ⊕ A² ⊕ …`, so `A* ⊙ B` solves the
//!   system. Over the field instance the very same elimination computes
//!   `(1 − A)⁻¹`, which is what [`field_inverse_via_closure`] exposes.
//! * [`solve_bellman_jacobi`] iterates `X ← AX ⊕ B` from `X = B`.
//! * [`solve_bellman_gauss_seidel`] performs the same sweep but reuses
//!   rows already updated within the current sweep.
//!
//! Over idempotent semirings, iteration stops at an exact fixed point,
//! reached within `n` steps whenever the closure exists; over the field
//! it stops when the max-norm step falls under
//! [`SolveOptions::residual_tol`]. Pivots are never reordered, which is
//! always sound over idempotent semirings; over the field it restricts
//! inputs to matrices whose elimination meets no unit pivot.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::semiring::{SemiringDescriptor, SemiringKind};

/// Result of a Bellman iteration.
#[derive(Debug, Clone)]
pub struct BellmanSolution<T: Scalar> {
    pub x: Matrix<T>,
    pub iterations: usize,
    pub stabilized: bool,
}

/// Stopping controls for the iterative solvers.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions<T> {
    /// Max-norm step size under which a field iteration is converged.
    pub residual_tol: T,
    /// Iteration cap; defaults to `10 · n`.
    pub max_iterations: Option<usize>,
}

impl<T: Scalar> Default for SolveOptions<T> {
    fn default() -> Self {
        Self {
            residual_tol: T::from_f64(1e-10).unwrap(),
            max_iterations: None,
        }
    }
}

fn square_side<T: Scalar>(a: &Matrix<T>) -> Result<usize> {
    if a.is_square() {
        Ok(a.rows())
    } else {
        Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )))
    }
}

/// Closure `A*` by pivot elimination.
///
/// For each pivot `k` in ascending order, every entry is updated as
/// `a_ij ← a_ij ⊕ a_ik ⊙ (a_kk)* ⊙ a_kj`, reading row `k` and column
/// `k` as they stood when the pivot was entered; the identity is
/// `⊕`-ed in at the end. An undefined pivot star aborts: in min-plus
/// that is a negative cycle, over the field a unit pivot.
pub fn closure_gauss_jordan<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = square_side(a)?;
    let s = *a.semiring();
    let mut m = a.clone();
    for k in 0..n {
        let pivot = m.get(k, k);
        let star = s.star(pivot).map_err(|_| Error::NonStabilizing {
            reason: format!("star of pivot {k} (value {pivot}) is undefined"),
            pivot: Some(k),
        })?;
        // Snapshot row k and column k: every update in this pass must
        // see their pre-pass values, or the pivot scaling would be
        // applied twice over non-idempotent semirings.
        let row_k: Vec<Element<T>> = (0..n).map(|j| m.get(k, j)).collect();
        let col_k: Vec<Element<T>> = (0..n).map(|i| m.get(i, k)).collect();
        for (i, &into_pivot) in col_k.iter().enumerate() {
            for (j, &out_of_pivot) in row_k.iter().enumerate() {
                let via = s.mul_raw(into_pivot, s.mul_raw(star, out_of_pivot));
                m.set_raw(i, j, s.add_raw(m.get(i, j), via));
            }
        }
    }
    m.add(&Matrix::identity(s, n))
}

/// `(1 − A)⁻¹` over the field instance, computed by the same closure
/// elimination that solves path problems.
pub fn field_inverse_via_closure<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    if a.semiring().kind() != SemiringKind::Field {
        return Err(Error::Unsupported(format!(
            "field inverse needs the field instance, got {}",
            a.semiring()
        )));
    }
    closure_gauss_jordan(a)
}

/// `M⁻¹`, obtained as the closure of `1 − M` over the field.
pub fn matrix_inverse<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    if m.semiring().kind() != SemiringKind::Field {
        return Err(Error::Unsupported(format!(
            "matrix inverse needs the field instance, got {}",
            m.semiring()
        )));
    }
    let n = square_side(m)?;
    let s = *m.semiring();
    let one_minus = Matrix::from_fn(s, n, n, |i, j| {
        let unit = if i == j { T::one() } else { T::zero() };
        let v = m.get(i, j).as_scalar().expect("field elements are scalars");
        Element::Scalar(unit - v)
    })?;
    closure_gauss_jordan(&one_minus)
}

fn check_bellman_shapes<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<usize> {
    let n = square_side(a)?;
    if a.semiring() != b.semiring() {
        return Err(Error::SemiringMismatch {
            left: a.semiring().name(),
            right: b.semiring().name(),
        });
    }
    if b.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "rhs has {} rows, expected {n}",
            b.rows()
        )));
    }
    Ok(n)
}

fn converged<T: Scalar>(
    s: &SemiringDescriptor<T>,
    next: &Matrix<T>,
    prev: &Matrix<T>,
    opts: &SolveOptions<T>,
) -> bool {
    if s.idempotent() {
        next.approx_eq(prev)
    } else {
        next.max_distance(prev) < opts.residual_tol
    }
}

pub fn solve_bellman_jacobi<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<BellmanSolution<T>> {
    solve_bellman_jacobi_with(a, b, &SolveOptions::default())
}

/// Jacobi iteration `X_{t+1} = (A ⊙ X_t) ⊕ B` from `X_0 = B`.
///
/// Over an idempotent semiring the iterates grow `⪯`-monotonically and,
/// when `A*` exists, reach the least solution `A* ⊙ B` within `n` steps.
pub fn solve_bellman_jacobi_with<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    opts: &SolveOptions<T>,
) -> Result<BellmanSolution<T>> {
    let n = check_bellman_shapes(a, b)?;
    let s = *a.semiring();
    let cap = opts.max_iterations.unwrap_or(10 * n.max(1));
    let mut x = b.clone();
    for t in 1..=cap {
        let next = a.mul(&x)?.add(b)?;
        if converged(&s, &next, &x, opts) {
            return Ok(BellmanSolution { x: next, iterations: t, stabilized: true });
        }
        x = next;
    }
    Err(Error::NonStabilizing {
        reason: format!("no fixed point within {cap} iterations"),
        pivot: None,
    })
}

pub fn solve_bellman_gauss_seidel<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
) -> Result<BellmanSolution<T>> {
    solve_bellman_gauss_seidel_with(a, b, &SolveOptions::default())
}

/// Gauss–Seidel sweeps for `X = AX ⊕ B`: row `i` of `X` is recomputed
/// in place, so rows below `i` already see the updated values within
/// one sweep. Same fixed point as Jacobi, usually fewer sweeps.
pub fn solve_bellman_gauss_seidel_with<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    opts: &SolveOptions<T>,
) -> Result<BellmanSolution<T>> {
    let n = check_bellman_shapes(a, b)?;
    let s = *a.semiring();
    let m = b.cols();
    let cap = opts.max_iterations.unwrap_or(10 * n.max(1));
    let mut x = b.clone();
    for sweep in 1..=cap {
        let before = x.clone();
        for i in 0..n {
            for c in 0..m {
                let mut acc = s.zero();
                for k in 0..n {
                    acc = s.add_raw(acc, s.mul_raw(a.get(i, k), x.get(k, c)));
                }
                x.set_raw(i, c, s.add_raw(acc, b.get(i, c)));
            }
        }
        if converged(&s, &x, &before, opts) {
            return Ok(BellmanSolution { x, iterations: sweep, stabilized: true });
        }
    }
    Err(Error::NonStabilizing {
        reason: format!("no fixed point within {cap} sweeps"),
        pivot: None,
    })
}

/// Which optimization a graph lowers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathProblem {
    /// Minimal total weight over paths; min-plus.
    ShortestPath,
    /// Maximal bottleneck capacity over paths; max-min.
    WidestPath,
    /// Reachability; max-min over `{0̄, 1̄}` weights.
    TransitiveClosure,
}

impl PathProblem {
    pub fn semiring<T: Scalar>(&self) -> SemiringDescriptor<T> {
        match self {
            PathProblem::ShortestPath => SemiringDescriptor::min_plus(),
            PathProblem::WidestPath | PathProblem::TransitiveClosure => {
                SemiringDescriptor::max_min()
            }
        }
    }
}

/// Answer of [`solve_path_problem`], with indices mapped back to node
/// names.
#[derive(Debug, Clone)]
pub enum PathSolution<T: Scalar> {
    /// Single source and target.
    Value { node: String, value: Element<T> },
    /// One endpoint fixed: `(node, value)` in node order.
    Distances(Vec<(String, Element<T>)>),
    /// Reachability answer, in node order.
    ReachableSet(Vec<String>),
    /// No endpoints fixed: the full closure.
    ClosureMatrix { nodes: Vec<String>, matrix: Matrix<T> },
}

fn named_nonstabilizing<T: Scalar>(g: &Graph, s: &SemiringDescriptor<T>, e: Error) -> Error {
    if let Error::NonStabilizing { pivot: Some(k), .. } = e {
        let node = &g.nodes()[k];
        let reason = match s.kind() {
            SemiringKind::MinPlus => format!("negative cycle through node '{node}'"),
            SemiringKind::MaxPlus => format!("positive cycle through node '{node}'"),
            _ => format!("closure diverges at node '{node}'"),
        };
        Error::NonStabilizing { reason, pivot: Some(k) }
    } else {
        e
    }
}

/// Lowers a graph over `s` and takes its closure, naming the offending
/// node if the closure does not stabilize.
pub fn closure_of_graph<T: Scalar>(g: &Graph, s: &SemiringDescriptor<T>) -> Result<Matrix<T>> {
    let a = g.to_matrix(s)?;
    closure_gauss_jordan(&a).map_err(|e| named_nonstabilizing(g, s, e))
}

/// Solves a graph optimization problem by picking the algebra and
/// reading the closure.
///
/// With both endpoints the answer is one value; with one endpoint it
/// is a distance table (or a reachable set for
/// [`PathProblem::TransitiveClosure`]); with none, the closure matrix.
pub fn solve_path_problem<T: Scalar>(
    g: &Graph,
    problem: PathProblem,
    source: Option<&str>,
    target: Option<&str>,
) -> Result<PathSolution<T>> {
    let s = problem.semiring::<T>();
    let src = source
        .map(|name| g.node_index(name).ok_or_else(|| Error::UnknownNode(name.to_string())))
        .transpose()?;
    let tgt = target
        .map(|name| g.node_index(name).ok_or_else(|| Error::UnknownNode(name.to_string())))
        .transpose()?;

    let a = match problem {
        PathProblem::TransitiveClosure => g.to_adjacency(&s)?,
        _ => g.to_matrix(&s)?,
    };
    let star = closure_gauss_jordan(&a).map_err(|e| named_nonstabilizing(g, &s, e))?;
    let nodes = g.nodes();

    let solution = match (src, tgt) {
        (Some(i), Some(j)) => PathSolution::Value {
            node: nodes[j].clone(),
            value: star.get(i, j),
        },
        (Some(i), None) => match problem {
            PathProblem::TransitiveClosure => PathSolution::ReachableSet(
                (0..nodes.len())
                    .filter(|&j| s.is_one(&star.get(i, j)))
                    .map(|j| nodes[j].clone())
                    .collect(),
            ),
            _ => PathSolution::Distances(
                (0..nodes.len()).map(|j| (nodes[j].clone(), star.get(i, j))).collect(),
            ),
        },
        (None, Some(j)) => match problem {
            PathProblem::TransitiveClosure => PathSolution::ReachableSet(
                (0..nodes.len())
                    .filter(|&i| s.is_one(&star.get(i, j)))
                    .map(|i| nodes[i].clone())
                    .collect(),
            ),
            _ => PathSolution::Distances(
                (0..nodes.len()).map(|i| (nodes[i].clone(), star.get(i, j))).collect(),
            ),
        },
        (None, None) => PathSolution::ClosureMatrix {
            nodes: nodes.to_vec(),
            matrix: star,
        },
    };
    Ok(solution)
}
