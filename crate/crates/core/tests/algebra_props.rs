//! Property tests for the algebraic invariants.

use proptest::prelude::*;

use semikit::{
    closure_gauss_jordan, closure_truncated, deformed_add, dequantize, idempotent_integral,
    integral_operator, legendre_transform, mat_vec, measure, riemann_universal, scalar_product,
    scalar_product_fn, solve_bellman_jacobi, Descriptor64, Element, Kernel, Matrix,
    SampledFunction,
};

const NEG: f64 = f64::NEG_INFINITY;
const INF: f64 = f64::INFINITY;

fn s(v: f64) -> Element<f64> {
    Element::Scalar(v)
}

fn finite() -> impl Strategy<Value = f64> {
    -8.0..8.0f64
}

fn max_plus_value() -> impl Strategy<Value = f64> {
    prop_oneof![9 => finite(), 1 => Just(NEG)]
}

fn min_plus_value() -> impl Strategy<Value = f64> {
    prop_oneof![9 => finite(), 1 => Just(INF)]
}

fn interval_max_plus_element() -> impl Strategy<Value = Element<f64>> {
    prop_oneof![
        1 => Just(Element::Interval(NEG, NEG)),
        9 => (max_plus_value(), max_plus_value())
            .prop_map(|(a, b)| Element::Interval(a.min(b), a.max(b))),
    ]
}

fn interval_min_plus_element() -> impl Strategy<Value = Element<f64>> {
    prop_oneof![
        1 => Just(Element::Interval(INF, INF)),
        9 => (min_plus_value(), min_plus_value())
            .prop_map(|(a, b)| Element::Interval(a.max(b), a.min(b))),
    ]
}

fn max_plus_matrix(n: usize) -> impl Strategy<Value = Matrix<f64>> {
    proptest::collection::vec(max_plus_value(), n * n).prop_map(move |vals| {
        Matrix::from_elements(Descriptor64::max_plus(), n, n, vals.into_iter().map(s).collect())
            .unwrap()
    })
}

fn min_plus_matrix(n: usize) -> impl Strategy<Value = Matrix<f64>> {
    proptest::collection::vec(prop_oneof![1 => Just(INF), 1 => 0.0..10.0f64], n * n).prop_map(
        move |vals| {
            Matrix::from_elements(Descriptor64::min_plus(), n, n, vals.into_iter().map(s).collect())
                .unwrap()
        },
    )
}

fn field_matrix(n: usize) -> impl Strategy<Value = Matrix<f64>> {
    proptest::collection::vec(-1.0..1.0f64, n * n).prop_map(move |vals| {
        Matrix::from_elements(Descriptor64::field(), n, n, vals.into_iter().map(s).collect())
            .unwrap()
    })
}

fn max_min_matrix(n: usize) -> impl Strategy<Value = Matrix<f64>> {
    proptest::collection::vec(
        prop_oneof![1 => Just(NEG), 1 => Just(INF), 4 => finite()],
        n * n,
    )
    .prop_map(move |vals| {
        Matrix::from_elements(Descriptor64::max_min(), n, n, vals.into_iter().map(s).collect())
            .unwrap()
    })
}

proptest! {
    // interval multiplication distributes exactly, unlike classical intervals
    #[test]
    fn interval_max_plus_distributes_exactly(
        x in interval_max_plus_element(),
        y in interval_max_plus_element(),
        z in interval_max_plus_element(),
    ) {
        let d = Descriptor64::interval_max_plus();
        let lhs = d.mul(x, d.add(y, z).unwrap()).unwrap();
        let rhs = d.add(d.mul(x, y).unwrap(), d.mul(x, z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = d.mul(d.add(x, y).unwrap(), z).unwrap();
        let rhs = d.add(d.mul(x, z).unwrap(), d.mul(y, z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interval_min_plus_distributes_exactly(
        x in interval_min_plus_element(),
        y in interval_min_plus_element(),
        z in interval_min_plus_element(),
    ) {
        let d = Descriptor64::interval_min_plus();
        let lhs = d.mul(x, d.add(y, z).unwrap()).unwrap();
        let rhs = d.add(d.mul(x, y).unwrap(), d.mul(x, z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    // the log map turns (+, ×) into (⊕ₕ, ⊙) up to rounding
    #[test]
    fn dequantization_is_a_homomorphism(
        u1 in 1e-6..1e6f64,
        u2 in 1e-6..1e6f64,
        h in prop::sample::select(vec![1.0, 0.1, 0.01]),
    ) {
        let w1 = dequantize(u1, h).unwrap();
        let w2 = dequantize(u2, h).unwrap();

        let prod = dequantize(u1 * u2, h).unwrap().as_scalar().unwrap();
        let w_sum = w1.as_scalar().unwrap() + w2.as_scalar().unwrap();
        let scale = prod.abs().max(w_sum.abs());
        prop_assert!((prod - w_sum).abs() <= (1e-9 * scale).max(1e-12));

        let sum = dequantize(u1 + u2, h).unwrap().as_scalar().unwrap();
        let deformed = deformed_add(w1, w2, h).unwrap().as_scalar().unwrap();
        let scale = sum.abs().max(deformed.abs());
        prop_assert!(
            (sum - deformed).abs() <= (1e-9 * scale).max(1e-12),
            "h={} u1={} u2={} sum={} deformed={}", h, u1, u2, sum, deformed
        );
    }

    // max(w1,w2) <= w1 ⊕ₕ w2 <= max(w1,w2) + h·ln 2, with no tolerance
    #[test]
    fn deformed_add_is_a_bounded_maximum(
        w1 in -50.0..50.0f64,
        w2 in -50.0..50.0f64,
        h in prop::sample::select(vec![1.0, 0.1, 0.01]),
    ) {
        let v = deformed_add(s(w1), s(w2), h).unwrap().as_scalar().unwrap();
        let m = w1.max(w2);
        prop_assert!(m <= v);
        prop_assert!(v <= m + h * std::f64::consts::LN_2);
    }

    // matrix semiring laws on small random matrices
    #[test]
    fn max_plus_matrices_form_an_idempotent_semiring(
        (a, b, c) in (1usize..=4).prop_flat_map(|n| {
            (max_plus_matrix(n), max_plus_matrix(n), max_plus_matrix(n))
        }),
    ) {
        let n = a.rows();
        let id = Matrix::identity(Descriptor64::max_plus(), n);
        let zero = Matrix::zeros(Descriptor64::max_plus(), n, n);

        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.add(&a).unwrap(), a.clone());
        prop_assert_eq!(a.add(&zero).unwrap(), a.clone());
        prop_assert_eq!(a.mul(&id).unwrap(), a.clone());
        prop_assert_eq!(id.mul(&a).unwrap(), a.clone());
        prop_assert_eq!(a.mul(&zero).unwrap(), zero.clone());

        // products reassociate floating additions: tolerance applies
        let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs));

        // distributivity picks among identical floats: exact
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.add(&b).unwrap().mul(&c).unwrap(),
            a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn field_matrices_satisfy_the_laws_within_tolerance(
        (a, b, c) in (1usize..=4).prop_flat_map(|n| {
            (field_matrix(n), field_matrix(n), field_matrix(n))
        }),
    ) {
        let n = a.rows();
        let id = Matrix::identity(Descriptor64::field(), n);
        prop_assert!(a.mul(&id).unwrap().approx_eq(&a));
        let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs));
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs));
    }

    // the two inner-product code paths agree bitwise
    #[test]
    fn scalar_product_equals_row_times_column(
        vals in (1usize..=8).prop_flat_map(|n| {
            (proptest::collection::vec(max_plus_value(), n),
             proptest::collection::vec(max_plus_value(), n))
        }),
    ) {
        let d = Descriptor64::max_plus();
        let (xs, ys) = vals;
        let x = Matrix::row(d, xs.into_iter().map(s).collect()).unwrap();
        let y = Matrix::column(d, ys.into_iter().map(s).collect()).unwrap();
        let direct = scalar_product(&x, &y).unwrap();
        let via_mul = x.mul(&y).unwrap().get(0, 0);
        prop_assert_eq!(direct, via_mul);
    }

    // cell partitioning must not change a single bit
    #[test]
    fn parallel_product_is_bit_identical(
        (a, b) in (1usize..=5).prop_flat_map(|n| (field_matrix(n), field_matrix(n))),
    ) {
        prop_assert_eq!(a.mul(&b).unwrap(), a.mul_parallel(&b).unwrap());
    }

    #[test]
    fn field_product_matches_a_naive_reference(
        (a, b) in (1usize..=4).prop_flat_map(|n| (field_matrix(n), field_matrix(n))),
    ) {
        let n = a.rows();
        let mut reference = vec![0.0f64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += a.get(i, k).as_scalar().unwrap() * b.get(k, j).as_scalar().unwrap();
                }
                reference[i * n + j] = acc;
            }
        }
        let product = a.mul(&b).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert!(semikit::approx_eq(
                    product.get(i, j).as_scalar().unwrap(),
                    reference[i * n + j]
                ));
            }
        }
    }

    // A* = 1̄ ⊕ A·A* = 1̄ ⊕ A*·A whenever the elimination succeeds
    #[test]
    fn closure_is_a_fixed_point(a in (1usize..=5).prop_flat_map(min_plus_matrix)) {
        let star = closure_gauss_jordan(&a).unwrap();
        let id = Matrix::identity(*a.semiring(), a.rows());
        let left = id.add(&a.mul(&star).unwrap()).unwrap();
        let right = id.add(&star.mul(&a).unwrap()).unwrap();
        prop_assert!(star.approx_eq(&left));
        prop_assert!(star.approx_eq(&right));
    }

    // truncation at n-1 already reaches the fixed point over min-plus
    #[test]
    fn truncated_closure_stabilizes_at_n_minus_one(
        a in (1usize..=5).prop_flat_map(min_plus_matrix),
    ) {
        let n = a.rows();
        let at_n1 = closure_truncated(&a, n.saturating_sub(1)).unwrap();
        let at_n = closure_truncated(&a, n).unwrap();
        prop_assert_eq!(at_n1, at_n);
    }

    // the elimination/series agreement is not a min-plus accident: the
    // bottleneck algebra closes every star, so it must hold everywhere
    #[test]
    fn max_min_elimination_equals_truncated_series(
        a in (1usize..=5).prop_flat_map(max_min_matrix),
    ) {
        let n = a.rows();
        let eliminated = closure_gauss_jordan(&a).unwrap();
        let truncated = closure_truncated(&a, n - 1).unwrap();
        prop_assert_eq!(eliminated, truncated);
    }

    // Jacobi iterates only ever grow in the standard order
    #[test]
    fn jacobi_iterates_are_monotone(
        (a, b_vals) in (2usize..=5).prop_flat_map(|n| {
            (min_plus_matrix(n), proptest::collection::vec(min_plus_value(), n))
        }),
    ) {
        let d = *a.semiring();
        let b = Matrix::column(d, b_vals.into_iter().map(s).collect()).unwrap();
        let mut x = b.clone();
        for _ in 0..a.rows() + 1 {
            let next = a.mul(&x).unwrap().add(&b).unwrap();
            for (prev_e, next_e) in x.elements().iter().zip(next.elements()) {
                prop_assert!(d.leq(*prev_e, *next_e).unwrap());
            }
            x = next;
        }
        let solved = solve_bellman_jacobi(&a, &b).unwrap();
        prop_assert!(solved.x.approx_eq(&x));
    }

    // m(B1 ∪ B2) = m(B1) ⊕ m(B2), exactly
    #[test]
    fn measure_is_completely_additive(
        values in proptest::collection::vec(max_plus_value(), 1..40),
        split in any::<u64>(),
    ) {
        let n = values.len();
        let xs: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let phi = SampledFunction::new(
            Descriptor64::max_plus(), xs, values.into_iter().map(s).collect()
        ).unwrap();
        let d = Descriptor64::max_plus();
        let (mut b1, mut b2) = (Vec::new(), Vec::new());
        for i in 0..n {
            if split >> (i % 64) & 1 == 1 { b1.push(i) } else { b2.push(i) }
        }
        let all: Vec<usize> = (0..n).collect();
        let lhs = measure(&phi, &all).unwrap();
        let rhs = d.add(measure(&phi, &b1).unwrap(), measure(&phi, &b2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(measure(&phi, &all).unwrap(), idempotent_integral(&phi).unwrap());
    }

    // K(φ ⊕ ψ) = Kφ ⊕ Kψ, exactly over max-plus
    #[test]
    fn integral_operators_are_linear(
        (kernel_vals, phi_vals, psi_vals) in (2usize..=6).prop_flat_map(|n| {
            (proptest::collection::vec(max_plus_value(), n * n),
             proptest::collection::vec(max_plus_value(), n),
             proptest::collection::vec(max_plus_value(), n))
        }),
    ) {
        let d = Descriptor64::max_plus();
        let n = phi_vals.len();
        let xs: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let k = Kernel::new(
            xs.clone(), xs.clone(),
            Matrix::from_elements(d, n, n, kernel_vals.into_iter().map(s).collect()).unwrap(),
        ).unwrap();
        let phi = SampledFunction::new(d, xs.clone(), phi_vals.into_iter().map(s).collect()).unwrap();
        let psi = SampledFunction::new(d, xs, psi_vals.into_iter().map(s).collect()).unwrap();

        let lhs = integral_operator(&k, &phi.add(&psi).unwrap()).unwrap();
        let rhs = integral_operator(&k, &phi).unwrap().add(&integral_operator(&k, &psi).unwrap()).unwrap();
        prop_assert_eq!(lhs.values(), rhs.values());
    }

    // the transform is linear over max-plus: T(φ ⊕ ψ) = Tφ ⊕ Tψ exactly
    #[test]
    fn legendre_transform_is_linear(
        (phi_vals, psi_vals) in (2usize..=12).prop_flat_map(|n| {
            (proptest::collection::vec(max_plus_value(), n),
             proptest::collection::vec(max_plus_value(), n))
        }),
    ) {
        let d = Descriptor64::max_plus();
        let n = phi_vals.len();
        let xs: Vec<f64> = (0..n).map(|i| i as f64 / 2.0 - 2.0).collect();
        let xi: Vec<f64> = (0..9).map(|i| i as f64 / 4.0 - 1.0).collect();
        let phi = SampledFunction::new(d, xs.clone(), phi_vals.into_iter().map(s).collect()).unwrap();
        let psi = SampledFunction::new(d, xs, psi_vals.into_iter().map(s).collect()).unwrap();

        let lhs = legendre_transform(&phi.add(&psi).unwrap(), &xi).unwrap();
        let rhs = legendre_transform(&phi, &xi).unwrap()
            .add(&legendre_transform(&psi, &xi).unwrap()).unwrap();
        prop_assert_eq!(lhs.values(), rhs.values());
    }
}

// the gap between the Riemann sum and the exact integral shrinks with the mesh
#[test]
fn riemann_gap_shrinks_first_order() {
    let d = Descriptor64::max_plus();
    let lipschitz = 1.0; // |sin'| <= 1
    let mut gaps = Vec::new();
    for n in [101usize, 201] {
        let h = std::f64::consts::PI / (n - 1) as f64;
        let xs: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let phi = SampledFunction::from_fn(d, xs, |x| s(x.sin())).unwrap();
        let sum = riemann_universal(&phi).unwrap().as_scalar().unwrap();
        let exact = idempotent_integral(&phi).unwrap().as_scalar().unwrap();
        let gap = (sum - exact).abs();
        assert!(gap <= h * (1.0 + lipschitz), "mesh {h}: gap {gap}");
        gaps.push(gap);
    }
    assert!(gaps[1] < gaps[0], "halving the mesh must shrink the gap: {gaps:?}");
}

// for concave samples the transform is convex in the slope variable
#[test]
fn legendre_of_concave_input_is_convex() {
    let d = Descriptor64::max_plus();
    let xs: Vec<f64> = (0..401).map(|i| -2.0 + i as f64 * 0.01).collect();
    let phi = SampledFunction::from_fn(d, xs, |x| s(-(x * x) / 2.0 - 0.25 * x.abs())).unwrap();
    let xi: Vec<f64> = (0..81).map(|i| -1.0 + i as f64 * 0.025).collect();
    let tilde = legendre_transform(&phi, &xi).unwrap();
    let v: Vec<f64> = tilde.values().iter().map(|e| e.as_scalar().unwrap()).collect();
    for w in v.windows(3) {
        let d1 = w[1] - w[0];
        let d2 = w[2] - w[1];
        assert!(d2 >= d1 - 1e-9, "difference dropped: {d1} then {d2}");
    }
}

// scalar product of functions against the constants collapses as expected
#[test]
fn function_products_against_constants() {
    let d = Descriptor64::max_plus();
    let xs = vec![0.0, 1.0, 2.0];
    let phi = SampledFunction::new(d, xs.clone(), vec![s(1.0), s(5.0), s(-2.0)]).unwrap();
    let one = SampledFunction::constant(d, xs.clone(), d.one()).unwrap();
    let zero = SampledFunction::constant(d, xs, d.zero()).unwrap();
    assert_eq!(
        scalar_product_fn(&phi, &one).unwrap(),
        idempotent_integral(&phi).unwrap()
    );
    assert_eq!(scalar_product_fn(&phi, &zero).unwrap(), d.zero());
}

// operator application and matrix action are the same computation
#[test]
fn integral_operator_matches_mat_vec() {
    let d = Descriptor64::max_plus();
    let xs = vec![0.0, 1.0, 2.0];
    let k = Kernel::new(
        xs.clone(),
        xs.clone(),
        Matrix::from_elements(
            d,
            3,
            3,
            [0.0, 1.0, NEG, 2.0, 0.0, -1.0, NEG, 3.0, 0.5].iter().map(|v| s(*v)).collect(),
        )
        .unwrap(),
    )
    .unwrap();
    let phi = SampledFunction::new(d, xs, vec![s(5.0), s(7.0), s(-1.0)]).unwrap();
    let out = integral_operator(&k, &phi).unwrap();
    let column = Matrix::column(d, phi.values().to_vec()).unwrap();
    let direct = mat_vec(k.matrix(), &column).unwrap();
    assert_eq!(out.values(), direct.elements());
}
