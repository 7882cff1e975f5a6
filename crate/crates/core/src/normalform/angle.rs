use num_complex::Complex64;

use super::birkhoff::{NormalFormResult, Setting};
use crate::error::{Error, Result};
use crate::phasepoly::{ActionPoly, MonomialKey, PhasePoly, ZERO_TOL};

/// Composition with the map `z_i -> e^{2 pi i k_i t} z_i`, `tau -> tau + 2 pi sum_i k_i z_i zbar_i`.
///
/// The map is symplectic and turns the harmonic model with frequencies `theta` into the one with
/// `theta + 2 pi k`; it shifts Fourier indices by `k . (j - k')` on `z^j zbar^k'`.
pub fn angle_shift(poly: &PhasePoly, k: &[i32]) -> PhasePoly {
    let n = poly.n();
    assert_eq!(k.len(), n, "shift vector has wrong length");
    let mut shift = PhasePoly::new(n);
    for (i, &ki) in k.iter().enumerate() {
        shift.add_term(
            MonomialKey::action(n, i),
            Complex64::new(2.0 * std::f64::consts::PI * ki as f64, 0.0),
        );
    }
    let mut tau_img = PhasePoly::monomial(MonomialKey::tau(n), Complex64::new(1.0, 0.0));
    tau_img.add_assign_poly(&shift);
    let caps = poly.caps();
    let mut out = PhasePoly::with_caps(n, caps);
    for (key, c) in poly.iter() {
        let dz: i32 = (0..n)
            .map(|i| k[i] * (key.j[i] as i32 - key.k[i] as i32))
            .sum();
        let mut base = key.clone();
        base.m = 0;
        base.d += dz;
        let mut term = PhasePoly::with_caps(n, caps);
        term.add_term(base, *c);
        for _ in 0..key.m {
            term = term.mul_poly(&tau_img);
        }
        out.add_assign_poly(&term);
    }
    out
}

/// The normal form after conjugation by the angle shift with integer vector `k`: frequencies
/// become `theta + 2 pi k`, the normal form and every generator piece are composed with the shift.
pub fn realize_angle_shift(nf: &NormalFormResult, k: &[i32]) -> Result<NormalFormResult> {
    if nf.setting != Setting::Periodic {
        return Err(Error::NotFermiForm(
            "angle shifts need the periodic setting".into(),
        ));
    }
    if nf.mode != crate::phasepoly::Mode::Classical {
        return Err(Error::NotFermiForm(
            "angle shifts act on classical normal forms".into(),
        ));
    }
    if k.len() != nf.theta.len() {
        return Err(Error::DofMismatch {
            left: k.len(),
            right: nf.theta.len(),
        });
    }
    let mut out = nf.clone();
    out.theta = nf
        .theta
        .iter()
        .zip(k)
        .map(|(t, &ki)| t + 2.0 * std::f64::consts::PI * ki as f64)
        .collect();
    out.h_symbol = angle_shift(&nf.h_symbol, k);
    let mut h = ActionPoly::from_diagonal_symbol(&out.h_symbol);
    h.prune(ZERO_TOL);
    out.h = h;
    out.generators = nf.generators.iter().map(|g| angle_shift(g, k)).collect();
    Ok(out)
}
