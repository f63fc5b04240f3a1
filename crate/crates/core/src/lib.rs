//! Universal numerical algorithms over interchangeable semirings.
//!
//! One code path serves many algebras. Pick a [`SemiringDescriptor`]
//! (max-plus, min-plus, max-min, the real field, a smooth deformation
//! of max-plus, or the interval variants) and the same matrix
//! products, closures, fixed-point solvers, integrals, and transforms
//! compute shortest paths, bottleneck capacities, reachability, or
//! ordinary linear algebra, depending only on that choice. The closure
//! elimination in [`solve`] is the sharpest example: over min-plus it
//! solves the all-pairs shortest path problem, over the field the same
//! loop inverts `1 − A`.
//!
//! The crate is generic over the floating carrier via [`Scalar`];
//! `f64` aliases are exported at the root for the common case.

pub mod axioms;
pub mod calculus;
pub mod element;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod scalar;
pub mod semiring;
pub mod solve;

pub use calculus::{
    idempotent_integral, integral_operator, legendre_transform, measure, riemann_universal,
    scalar_product_fn, Kernel, SampledFunction,
};
pub use element::{parse_element, Element};
pub use error::{Error, Result};
pub use graph::Graph;
pub use matrix::{closure_truncated, mat_vec, parse_matrix, scalar_product, Matrix, Vector};
pub use scalar::{approx_eq, Scalar};
pub use semiring::{
    classical_interval_ops, deformed_add, dequantize, SemiringDescriptor, SemiringKind,
};
pub use solve::{
    closure_gauss_jordan, closure_of_graph, field_inverse_via_closure, matrix_inverse,
    solve_bellman_gauss_seidel, solve_bellman_gauss_seidel_with, solve_bellman_jacobi,
    solve_bellman_jacobi_with, solve_path_problem, BellmanSolution, PathProblem, PathSolution,
    SolveOptions,
};

/// Double-precision aliases for the common instantiation.
pub type Descriptor64 = SemiringDescriptor<f64>;
pub type Element64 = Element<f64>;
pub type Matrix64 = Matrix<f64>;
pub type Vector64 = Vector<f64>;
pub type SampledFunction64 = SampledFunction<f64>;
pub type Kernel64 = Kernel<f64>;
