use nalgebra::DMatrix;
use num_complex::Complex64;

use super::williamson::williamson;
use crate::error::{Error, Result};
use crate::phasepoly::{MonomialKey, PhasePoly};

/// A Hamiltonian brought to Fermi form `E + sum theta_i z_i zbar_i + (order >= 3)`.
#[derive(Clone, Debug)]
pub struct FermiFrame {
    pub theta: Vec<f64>,
    pub energy: f64,
    /// Symplectic change of variables, old coordinates `= S` new coordinates, block order.
    pub s: DMatrix<f64>,
    pub hamiltonian: PhasePoly,
    /// Size of the quadratic terms that were replaced by the exact harmonic part.
    pub quadratic_residual: f64,
}

/// Hessian in block order of the `hbar`-free quadratic part of a well Hamiltonian.
pub fn quadratic_hessian(h: &PhasePoly) -> DMatrix<f64> {
    let n = h.n();
    let mut q = PhasePoly::new(n);
    for (k, v) in h.iter() {
        if k.order() == 2 && k.p == 0 && k.m == 0 && k.d == 0 {
            q.add_term(k.clone(), *v);
        }
    }
    let dim = 2 * n;
    let eval = |v: &[f64]| q.eval_real(&v[..n], &v[n..], 0.0, 0.0, 0.0).re;
    let mut a = DMatrix::zeros(dim, dim);
    let unit = |i: usize| {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        e
    };
    for i in 0..dim {
        a[(i, i)] = 2.0 * eval(&unit(i));
    }
    for i in 0..dim {
        for j in i + 1..dim {
            let mut e = unit(i);
            e[j] = 1.0;
            let v = eval(&e) - 0.5 * a[(i, i)] - 0.5 * a[(j, j)];
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    a
}

/// Complex coordinates of the old variables as linear polynomials in the new ones, for
/// `old = S new` in block order.
pub fn linear_images(s: &DMatrix<f64>) -> (Vec<PhasePoly>, Vec<PhasePoly>) {
    let n = s.nrows() / 2;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut zs = Vec::with_capacity(n);
    for i in 0..n {
        // z_i = (x_i + i xi_i)/sqrt 2 with x_i = sum_b S_{i,b} v_b, xi_i = sum_b S_{n+i,b} v_b.
        let mut z = PhasePoly::new(n);
        for b in 0..n {
            let cx = Complex64::new(s[(i, b)], s[(n + i, b)]) * r;
            let cxi = Complex64::new(s[(i, n + b)], s[(n + i, n + b)]) * r;
            // x_b = (z_b + zbar_b)/sqrt 2, xi_b = (z_b - zbar_b)/(sqrt 2 i).
            let zb = cx * r + cxi * Complex64::new(0.0, -r);
            let zbb = cx * r + cxi * Complex64::new(0.0, r);
            z.add_term(MonomialKey::z_pow(n, b), zb);
            z.add_term(MonomialKey::zbar_pow(n, b), zbb);
        }
        zs.push(z);
    }
    let zbs = zs.iter().map(|z| z.conjugate()).collect();
    (zs, zbs)
}

/// Substitute `z_i -> zimg[i]`, `zbar_i -> zbimg[i]`, leaving `hbar, tau, t` alone.
pub fn substitute_linear(h: &PhasePoly, zimg: &[PhasePoly], zbimg: &[PhasePoly]) -> PhasePoly {
    let n = h.n();
    let caps = h.caps();
    let mut out = PhasePoly::with_caps(n, caps);
    let maxdeg = h
        .keys()
        .flat_map(|k| k.j.iter().chain(&k.k).copied())
        .max()
        .unwrap_or(0);
    let with_caps = |p: &PhasePoly| {
        let mut p = p.clone();
        p.set_caps(caps);
        p
    };
    let zpow: Vec<Vec<PhasePoly>> = zimg
        .iter()
        .map(|z| powers(&with_caps(z), maxdeg))
        .collect();
    let zbpow: Vec<Vec<PhasePoly>> = zbimg
        .iter()
        .map(|z| powers(&with_caps(z), maxdeg))
        .collect();
    for (k, v) in h.iter() {
        let mut rest = MonomialKey::one(n);
        rest.p = k.p;
        rest.m = k.m;
        rest.d = k.d;
        let mut term = PhasePoly::with_caps(n, caps);
        term.add_term(rest, *v);
        for i in 0..n {
            if k.j[i] > 0 {
                term = term.mul_poly(&zpow[i][k.j[i] as usize]);
            }
            if k.k[i] > 0 {
                term = term.mul_poly(&zbpow[i][k.k[i] as usize]);
            }
        }
        out.add_assign_poly(&term);
    }
    out
}

fn powers(p: &PhasePoly, maxdeg: u32) -> Vec<PhasePoly> {
    let mut out = vec![PhasePoly::with_caps(p.n(), p.caps())];
    out[0].add_term(MonomialKey::one(p.n()), Complex64::new(1.0, 0.0));
    for e in 1..=maxdeg as usize {
        let next = out[e - 1].mul_poly(p);
        out.push(next);
    }
    out
}

/// Bring a well Hamiltonian (critical point at the origin, positive definite Hessian) to Fermi form.
pub fn fermi_general(h: &PhasePoly) -> Result<FermiFrame> {
    let n = h.n();
    if h.keys().any(|k| k.m != 0 || k.d != 0) {
        return Err(Error::NotFermiForm(
            "well Hamiltonians cannot depend on t or tau".into(),
        ));
    }
    if let Some(k) = h.keys().find(|k| k.order() == 1) {
        return Err(Error::NotFermiForm(format!(
            "origin is not a critical point (linear term {k})"
        )));
    }
    let a = quadratic_hessian(h);
    let frame = williamson(&a)?;
    let (zi, zbi) = linear_images(&frame.s);
    let moved = substitute_linear(h, &zi, &zbi);
    let mut out = PhasePoly::with_caps(n, h.caps());
    let mut quad = PhasePoly::new(n);
    for (k, v) in moved.iter() {
        if k.order() == 2 && k.p == 0 {
            quad.add_term(k.clone(), *v);
        } else {
            out.add_term(k.clone(), *v);
        }
    }
    let harmonic = PhasePoly::harmonic(&frame.lambda);
    let quadratic_residual = quad.max_abs_diff(&harmonic);
    out.add_assign_poly(&harmonic);
    let energy = h.get(&MonomialKey::one(n)).re;
    Ok(FermiFrame {
        theta: frame.lambda,
        energy,
        s: frame.s,
        hamiltonian: out,
        quadratic_residual,
    })
}
