//! Truncated Fock-space oracle, independent of the symbol calculus in the library.
//!
//! The Weyl quantization of `z^j zbar^k` is the average of all words with `j` factors `a` and
//! `k` factors `a*`, with `[a, a*] = hbar`.

#![allow(dead_code)]

use birkhoff::phasepoly::PhasePoly;
use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

/// Lowering operator on the first `dim` number states of one degree of freedom.
pub fn lowering(dim: usize, hbar: f64) -> CMat {
    let mut a = CMat::zeros(dim, dim);
    for k in 1..dim {
        a[(k - 1, k)] = Complex64::new((k as f64 * hbar).sqrt(), 0.0);
    }
    a
}

/// All words with `j` lowering and `k` raising letters (`true` = raising).
fn words(j: u32, k: u32) -> Vec<Vec<bool>> {
    if j == 0 && k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    if j > 0 {
        for mut w in words(j - 1, k) {
            w.push(false);
            out.push(w);
        }
    }
    if k > 0 {
        for mut w in words(j, k - 1) {
            w.push(true);
            out.push(w);
        }
    }
    out
}

/// Weyl operator of a one-dof, time-independent symbol, computed in a larger space and cut down
/// so that products of ladder operators are exact on the returned block.
pub fn weyl_operator(poly: &PhasePoly, dim: usize, hbar: f64) -> CMat {
    assert_eq!(poly.n(), 1);
    let maxdeg = poly.keys().map(|k| k.j[0] + k.k[0]).max().unwrap_or(0) as usize;
    let big = dim + maxdeg + 1;
    let mut out = CMat::zeros(big, big);
    for (key, c) in poly.iter() {
        assert!(key.m == 0 && key.d == 0, "oracle handles the well setting only");
        let ws = words(key.j[0], key.k[0]);
        let mut sym = CMat::zeros(big, big);
        for w in &ws {
            let mut m = CMat::identity(big, big);
            for &raise in w {
                m = times_ladder(&m, raise, hbar);
            }
            sym += m;
        }
        let scale = *c * hbar.powi(key.p as i32) / ws.len() as f64;
        out += sym * scale;
    }
    out.view((0, 0), (dim, dim)).into_owned()
}

/// `m a*` (`raise`) or `m a`, using that right multiplication by a ladder operator shifts columns.
fn times_ladder(m: &CMat, raise: bool, hbar: f64) -> CMat {
    let dim = m.ncols();
    let mut out = CMat::zeros(m.nrows(), dim);
    for c in 0..dim {
        let (src, w) = if raise {
            if c + 1 >= dim {
                continue;
            }
            (c + 1, ((c + 1) as f64 * hbar).sqrt())
        } else {
            if c == 0 {
                continue;
            }
            (c - 1, (c as f64 * hbar).sqrt())
        };
        out.set_column(c, &(m.column(src) * Complex64::new(w, 0.0)));
    }
    out
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn eigenvalues(m: &CMat) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Matrix exponential by scaling and squaring with a Taylor kernel.
pub fn expm(m: &CMat) -> CMat {
    let norm = m.iter().map(|v| v.norm()).fold(0.0, f64::max) * m.nrows() as f64;
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.5 {
        s += 1;
    }
    let a = m / Complex64::new(2f64.powi(s), 0.0);
    let mut term = CMat::identity(m.nrows(), m.ncols());
    let mut out = term.clone();
    for k in 1..30 {
        term = &term * &a / Complex64::new(k as f64, 0.0);
        out += &term;
    }
    for _ in 0..s {
        out = &out * &out;
    }
    out
}
