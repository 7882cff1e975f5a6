//! Small dense helpers around `nalgebra` for symplectic linear algebra.
//!
//! Two orderings of phase-space coordinates appear: block order `(x_1..x_n, xi_1..xi_n)` and
//! interleaved order `(x_1, xi_1, x_2, xi_2, ...)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Standard symplectic matrix `[[0, I], [-I, 0]]` in block order.
pub fn j_matrix(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = 1.0;
        j[(n + i, i)] = -1.0;
    }
    j
}

/// Block index of interleaved position `a`.
pub fn interleaved_to_block(n: usize, a: usize) -> usize {
    if a.is_multiple_of(2) {
        a / 2
    } else {
        n + a / 2
    }
}

/// Re-index a block-order matrix into interleaved order, rows and columns.
pub fn to_interleaved(s: &DMatrix<f64>) -> DMatrix<f64> {
    let n = s.nrows() / 2;
    DMatrix::from_fn(2 * n, 2 * n, |a, b| {
        s[(interleaved_to_block(n, a), interleaved_to_block(n, b))]
    })
}

/// Inverse of [`to_interleaved`].
pub fn from_interleaved(s: &DMatrix<f64>) -> DMatrix<f64> {
    let n = s.nrows() / 2;
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for a in 0..2 * n {
        for b in 0..2 * n {
            out[(interleaved_to_block(n, a), interleaved_to_block(n, b))] = s[(a, b)];
        }
    }
    out
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// `max |S^T J S - J|`.
pub fn symplectic_defect(s: &DMatrix<f64>) -> f64 {
    let j = j_matrix(s.nrows() / 2);
    max_abs(&(s.transpose() * &j * s - j))
}

/// `[[A, 0], [0, A^{-T}]] [[I, B], [0, I]] [[I, 0], [C, I]]` with `B, C` symmetrized.
pub fn symplectic_from_factors(a: &DMatrix<f64>, b: &DMatrix<f64>, c: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let a_inv_t = a
        .clone()
        .try_inverse()
        .expect("scaling factor must be invertible")
        .transpose();
    let bs = (b + b.transpose()) * 0.5;
    let cs = (c + c.transpose()) * 0.5;
    let mut d = DMatrix::zeros(2 * n, 2 * n);
    d.view_mut((0, 0), (n, n)).copy_from(a);
    d.view_mut((n, n), (n, n)).copy_from(&a_inv_t);
    let mut up = DMatrix::identity(2 * n, 2 * n);
    up.view_mut((0, n), (n, n)).copy_from(&bs);
    let mut low = DMatrix::identity(2 * n, 2 * n);
    low.view_mut((n, 0), (n, n)).copy_from(&cs);
    d * up * low
}

/// Block-order matrix rotating the `(x_k, xi_k)` plane by `angles[k]`; right-multiplying a frame by
/// it maps each column pair `(c_k, c_{n+k})` to `(cos c_k + sin c_{n+k}, -sin c_k + cos c_{n+k})`.
pub fn block_rotation(angles: &[f64]) -> DMatrix<f64> {
    let n = angles.len();
    let mut u = DMatrix::zeros(2 * n, 2 * n);
    for (k, &a) in angles.iter().enumerate() {
        let (s, c) = a.sin_cos();
        u[(k, k)] = c;
        u[(k, n + k)] = -s;
        u[(n + k, k)] = s;
        u[(n + k, n + k)] = c;
    }
    u
}

/// Outcome of a column-scaled least-squares solve.
#[derive(Clone, Debug)]
pub struct LeastSquares {
    pub x: DVector<Complex64>,
    pub rank: usize,
    /// Ratio of extreme singular values after column scaling.
    pub condition: f64,
    /// `||A x - b|| / max(||b||, 1)`.
    pub residual: f64,
    /// Columns with weight on the numerical null space.
    pub deficient: Vec<usize>,
}

/// Minimum-norm least squares for a complex system, with columns normalised before the SVD.
pub fn least_squares(a: &DMatrix<Complex64>, b: &DVector<Complex64>, rank_tol: f64) -> LeastSquares {
    let cols = a.ncols();
    if cols == 0 {
        return LeastSquares {
            x: DVector::zeros(0),
            rank: 0,
            condition: 1.0,
            residual: b.norm() / b.norm().max(1.0),
            deficient: Vec::new(),
        };
    }
    if a.nrows() < cols {
        return LeastSquares {
            x: DVector::zeros(cols),
            rank: a.nrows(),
            condition: f64::INFINITY,
            residual: b.norm() / b.norm().max(1.0),
            deficient: (0..cols).collect(),
        };
    }
    let scale: Vec<f64> = (0..cols)
        .map(|c| {
            let s = a.column(c).norm();
            if s > 0.0 {
                s
            } else {
                1.0
            }
        })
        .collect();
    let mut scaled = a.clone();
    for (c, s) in scale.iter().enumerate() {
        scaled.column_mut(c).unscale_mut(*s);
    }
    let svd = scaled.svd(true, true);
    let smax = svd.singular_values.max();
    let thresh = rank_tol * smax.max(f64::MIN_POSITIVE);
    let rank = svd.singular_values.iter().filter(|s| **s > thresh).count();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    let y = svd.solve(b, thresh).unwrap_or_else(|_| DVector::zeros(cols));
    let x = DVector::from_fn(cols, |c, _| y[c] / scale[c]);
    let residual = (a * &x - b).norm() / b.norm().max(1.0);
    let mut deficient = Vec::new();
    if rank < cols {
        let vt = svd.v_t.as_ref().expect("requested V");
        for c in 0..cols {
            let w: f64 = (0..vt.nrows())
                .filter(|r| svd.singular_values[*r] <= thresh)
                .map(|r| vt[(r, c)].norm_sqr())
                .sum();
            if w > 1e-6 {
                deficient.push(c);
            }
        }
    }
    LeastSquares {
        x,
        rank,
        condition,
        residual,
        deficient,
    }
}
