//! Oracles and generators shared by the acceptance suite.
//!
//! Where a criterion demands exact equality between independently
//! computed floating-point routes, weights are drawn from the dyadic
//! grid `k/64` with bounded magnitude: every path sum is then exactly
//! representable in an f64, so reassociating additions cannot change a
//! single bit and cross-oracle comparisons are meaningful bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semikit::{Descriptor64, Element, Matrix};

pub const INF: f64 = f64::INFINITY;

pub fn s(v: f64) -> Element<f64> {
    Element::Scalar(v)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonnegative dyadic weight in `[0, 10]` (a multiple of 1/64).
pub fn dyadic_weight(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(0..=640) as f64 / 64.0
}

/// A dyadic value in `[-8, 8]` (a multiple of 1/64).
pub fn dyadic_value(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(-512..=512) as f64 / 64.0
}

/// Random min-plus matrix: each edge present with probability
/// `density`, carrying a dyadic weight in `[0, 10]`.
pub fn random_min_plus_matrix(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Matrix<f64> {
    let d = Descriptor64::min_plus();
    let data = (0..n * n)
        .map(|_| {
            if rng.random_bool(density) {
                s(dyadic_weight(rng))
            } else {
                s(INF)
            }
        })
        .collect();
    Matrix::from_elements(d, n, n, data).unwrap()
}

/// Plants a directed cycle with strictly negative total weight into a
/// copy of `a`, and returns it.
pub fn plant_negative_cycle(rng: &mut ChaCha8Rng, a: &Matrix<f64>) -> Matrix<f64> {
    let n = a.rows();
    let mut m = a.clone();
    if n == 1 {
        m.set(0, 0, s(-1.0)).unwrap();
        return m;
    }
    let len = rng.random_range(2..=n);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    let cycle = &order[..len];
    // forward edges cost 1 each, the closing edge undercuts their total
    for w in cycle.windows(2) {
        m.set(w[0], w[1], s(1.0)).unwrap();
    }
    m.set(cycle[len - 1], cycle[0], s(-(len as f64))).unwrap();
    m
}

/// Closure by exhaustive walk enumeration: for each pair `(i, j)` the
/// minimum, over all walks of at most `n − 1` edges, of the walk's
/// weight accumulated front to back (plus `0` on the diagonal for the
/// empty walk). Independent of the elimination and of the matrix
/// powers.
pub fn enumerated_min_plus_closure(a: &Matrix<f64>) -> Matrix<f64> {
    let n = a.rows();
    let mut best = vec![INF; n * n];
    for (i, cell) in best.iter_mut().enumerate().take(n * n) {
        if i / n == i % n {
            *cell = 0.0;
        }
    }

    fn walk(
        a: &Matrix<f64>,
        best: &mut [f64],
        n: usize,
        start: usize,
        here: usize,
        cost: f64,
        edges_left: usize,
    ) {
        if edges_left == 0 {
            return;
        }
        for next in 0..n {
            let w = a.get(here, next).as_scalar().unwrap();
            if w == INF {
                continue;
            }
            let c = cost + w;
            let slot = &mut best[start * n + next];
            if c < *slot {
                *slot = c;
            }
            walk(a, best, n, start, next, c, edges_left - 1);
        }
    }

    for start in 0..n {
        walk(a, &mut best, n, start, start, 0.0, n.saturating_sub(1));
    }
    Matrix::from_elements(Descriptor64::min_plus(), n, n, best.into_iter().map(s).collect())
        .unwrap()
}

/// Random field matrix with `‖A‖_∞ ≤ bound`, hence spectral radius at
/// most `bound`.
pub fn random_contraction(rng: &mut ChaCha8Rng, n: usize, bound: f64) -> Matrix<f64> {
    let mut rows = Vec::with_capacity(n * n);
    for _ in 0..n {
        let raw: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let sum: f64 = raw.iter().map(|v| v.abs()).sum();
        let scale = if sum > 0.0 { bound * rng.random_range(0.5..1.0) / sum } else { 0.0 };
        rows.extend(raw.into_iter().map(|v| v * scale));
    }
    Matrix::from_elements(Descriptor64::field(), n, n, rows.into_iter().map(s).collect()).unwrap()
}

/// Solves `M X = I` by Gaussian elimination with partial pivoting.
/// Plain dense elimination, nothing shared with the closure path.
pub fn gauss_solve_inverse(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut aug: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = m[i].clone();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n).max_by(|&a, &b| {
            aug[a][col].abs().partial_cmp(&aug[b][col].abs()).unwrap()
        })?;
        if aug[pivot_row][col].abs() < 1e-300 {
            return None;
        }
        aug.swap(col, pivot_row);
        let pivot = aug[col][col];
        for j in col..2 * n {
            aug[col][j] /= pivot;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let factor = aug[i][col];
            if factor == 0.0 {
                continue;
            }
            for j in col..2 * n {
                aug[i][j] -= factor * aug[col][j];
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Random piecewise-linear samples on a shared grid: a handful of
/// random knots, linearly interpolated.
pub fn piecewise_linear(rng: &mut ChaCha8Rng, xs: &[f64]) -> Vec<Element<f64>> {
    let knots = rng.random_range(2..=5);
    let mut kx: Vec<f64> = vec![xs[0], xs[xs.len() - 1]];
    for _ in 0..knots {
        kx.push(rng.random_range(xs[0]..xs[xs.len() - 1]));
    }
    kx.sort_by(f64::total_cmp);
    kx.dedup();
    let ky: Vec<f64> = kx.iter().map(|_| rng.random_range(-4.0..4.0)).collect();
    xs.iter()
        .map(|&x| {
            let seg = kx.windows(2).position(|w| x <= w[1]).unwrap_or(kx.len() - 2);
            let (x0, x1) = (kx[seg], kx[seg + 1]);
            let t = if x1 > x0 { (x - x0) / (x1 - x0) } else { 0.0 };
            s(ky[seg] + t * (ky[seg + 1] - ky[seg]))
        })
        .collect()
}
