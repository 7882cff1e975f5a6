use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{j_matrix, max_abs};

/// Symplectic frame `S` with `S^T A S = diag(lambda) (+) diag(lambda)` in block order.
#[derive(Clone, Debug)]
pub struct SymplecticFrame {
    pub s: DMatrix<f64>,
    /// Symplectic eigenvalues, ascending.
    pub lambda: Vec<f64>,
    /// `max |S^T J S - J|`.
    pub symplectic_residual: f64,
    /// `max |S^T A S - diag(lambda, lambda)|`.
    pub diagonal_residual: f64,
}

/// Symplectic diagonalization of a symmetric positive definite `2n x 2n` matrix.
///
/// The frame is built from the Hermitian matrix `i A^{-1/2} J A^{-1/2}`: an eigenvector
/// `w = u + i v` with eigenvalue `omega > 0` yields the pair `(u, -v)` and `lambda = 1/omega`.
/// Each eigenvector's phase is fixed by making its first non-negligible component real and
/// positive, which pins the rotation freedom inside each block.
pub fn williamson(a: &DMatrix<f64>) -> Result<SymplecticFrame> {
    let dim = a.nrows();
    if dim == 0 || !dim.is_multiple_of(2) || a.ncols() != dim {
        return Err(Error::Parse(format!(
            "expected an even square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let n = dim / 2;
    let scale = max_abs(a).max(f64::MIN_POSITIVE);
    if max_abs(&(a - a.transpose())) > 1e-12 * scale {
        return Err(Error::NotPositiveDefinite);
    }
    let sym = (a + a.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym.clone());
    if eig.eigenvalues.iter().any(|&v| v <= 1e-14 * scale) {
        return Err(Error::NotPositiveDefinite);
    }
    let inv_sqrt = &eig.eigenvectors
        * DMatrix::from_diagonal(&eig.eigenvalues.map(|v| 1.0 / v.sqrt()))
        * eig.eigenvectors.transpose();
    let m = &inv_sqrt * j_matrix(n) * &inv_sqrt;
    let herm: DMatrix<Complex64> = m.map(|v| Complex64::new(0.0, v));
    let heig = SymmetricEigen::new(herm);

    let mut order: Vec<usize> = (0..dim).filter(|&c| heig.eigenvalues[c] > 0.0).collect();
    if order.len() != n {
        return Err(Error::NotPositiveDefinite);
    }
    // Descending omega is ascending lambda.
    order.sort_by(|&x, &y| heig.eigenvalues[y].partial_cmp(&heig.eigenvalues[x]).unwrap());

    let mut o = DMatrix::zeros(dim, dim);
    let mut lambda = Vec::with_capacity(n);
    for (slot, &c) in order.iter().enumerate() {
        let omega = heig.eigenvalues[c];
        let mut w: Vec<Complex64> = heig.eigenvectors.column(c).iter().copied().collect();
        let wmax = w.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
        let lead = w.iter().find(|z| z.norm() > 1e-6 * wmax).copied().unwrap();
        let phase = lead.conj() / lead.norm();
        for z in w.iter_mut() {
            *z *= phase;
        }
        let f = std::f64::consts::SQRT_2 / omega.sqrt();
        for r in 0..dim {
            o[(r, slot)] = w[r].re * f;
            o[(r, n + slot)] = -w[r].im * f;
        }
        lambda.push(1.0 / omega);
    }
    let s = inv_sqrt * o;
    let mut target = DMatrix::zeros(dim, dim);
    for (i, &l) in lambda.iter().enumerate() {
        target[(i, i)] = l;
        target[(n + i, n + i)] = l;
    }
    let j = j_matrix(n);
    let symplectic_residual = max_abs(&(s.transpose() * &j * &s - &j));
    let diagonal_residual = max_abs(&(s.transpose() * &sym * &s - target));
    Ok(SymplecticFrame {
        s,
        lambda,
        symplectic_residual,
        diagonal_residual,
    })
}

/// Symplectic eigenvalues as `|Im|` of the eigenvalues of `J A`, ascending and deduplicated in pairs.
pub fn symplectic_spectrum(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows() / 2;
    let ev = (j_matrix(n) * a).complex_eigenvalues();
    let mut ims: Vec<f64> = ev.iter().map(|z| z.im).filter(|&v| v > 0.0).collect();
    ims.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ims
}
