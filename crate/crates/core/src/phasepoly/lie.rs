use num_complex::Complex64;

use super::bracket::{bracket, Mode};
use super::key::Caps;
use super::poly::PhasePoly;
use crate::error::{Error, Result};

/// `sum_l L^l H / l!` with `L X = {X, F}` (classical) or `L X = Moyal(X, F)` (quantum).
///
/// Classically this is `H o exp(chi_F)`; in quantum mode it is the symbol of
/// `e^{iF/hbar} Op(H) e^{-iF/hbar}`. The series terminates under the order cap because every
/// term of `F` has order at least 3.
pub fn lie_transform(h: &PhasePoly, f: &PhasePoly, mode: Mode, caps: Caps) -> Result<PhasePoly> {
    if let Some(k) = f.iter().find(|(k, _)| k.order() <= 2).map(|(k, _)| k) {
        return Err(Error::LowOrderGenerator { order: k.order() });
    }
    if h.n() != f.n() {
        return Err(Error::DofMismatch {
            left: h.n(),
            right: f.n(),
        });
    }
    let caps = caps.meet(&h.caps());
    let mut h = h.clone();
    h.set_caps(caps);
    // A generator piece of order `cap + 1` still reaches order `cap` through order-1 terms of `h`.
    let mut f = f.clone();
    f.set_caps(Caps::new(caps.order + 1, caps.fourier_band));
    let mut out = h.clone();
    let mut term = h;
    let mut l = 1.0;
    loop {
        term = bracket(&term, &f, mode);
        if term.is_empty() {
            break;
        }
        term = term.scale(Complex64::new(1.0 / l, 0.0));
        out.add_assign_poly(&term);
        l += 1.0;
    }
    Ok(out)
}
