//! Poisson bracket, Weyl star product and Moyal bracket on phase polynomials.
//!
//! All three are built from the bivector
//! `P = sum_i -i (d_{z_i} (x) d_{zbar_i} - d_{zbar_i} (x) d_{z_i}) + (d_t (x) d_tau - d_tau (x) d_t)`:
//! `{f,g} = P(f,g)`, `f * g = f exp((i hbar/2) P) g`, and the Moyal bracket is
//! `(f*g - g*f)/(i hbar)`, which keeps only odd powers of `P`. With this choice
//! `z * zbar = z zbar + hbar/2`, matching `a a^* = P + hbar/2`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::key::MonomialKey;
use super::poly::PhasePoly;

/// Classical (Poisson) or quantum (Moyal) calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classical,
    Quantum,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Star,
    Moyal,
    Poisson,
}

pub(crate) fn factorial(r: u32) -> f64 {
    (1..=r).fold(1.0, |acc, i| acc * i as f64)
}

pub(crate) fn falling(a: u32, r: u32) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (a - i) as f64)
}

/// `{f, g}` with `{x, xi} = {t, tau} = 1`.
pub fn poisson_bracket(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    bidiff(f, g, Kind::Poisson)
}

/// Weyl symbol of `Op(f) Op(g)`. Exact finite series for polynomials.
pub fn star_product(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    bidiff(f, g, Kind::Star)
}

/// Weyl symbol of `[Op(f), Op(g)]/(i hbar)`.
pub fn moyal_bracket(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    bidiff(f, g, Kind::Moyal)
}

/// Poisson bracket in classical mode, Moyal bracket in quantum mode.
pub fn bracket(f: &PhasePoly, g: &PhasePoly, mode: Mode) -> PhasePoly {
    match mode {
        Mode::Classical => poisson_bracket(f, g),
        Mode::Quantum => moyal_bracket(f, g),
    }
}

fn bidiff(f: &PhasePoly, g: &PhasePoly, kind: Kind) -> PhasePoly {
    f.check_dof(g);
    let n = f.n();
    let caps = f.caps().meet(&g.caps());
    let mut out = PhasePoly::with_caps(n, caps);
    out.report_mut().merge(f.report());
    out.report_mut().merge(g.report());
    let drop_order = if kind == Kind::Star { 0 } else { 2 };
    // Slot layout: alpha_0..alpha_{n-1}, beta_0..beta_{n-1}, gamma, delta.
    let slots = 2 * n + 2;
    let mut bounds = vec![0u32; slots];
    let mut idx = vec![0u32; slots];
    for (ka, ca) in f.iter() {
        for (kb, cb) in g.iter() {
            let d = ka.d + kb.d;
            let order = (ka.order() + kb.order()).checked_sub(drop_order);
            let Some(order) = order else { continue };
            if order > caps.order || d.unsigned_abs() > caps.fourier_band {
                out.report_mut()
                    .record_drop(order > caps.order, (ca * cb).norm());
                continue;
            }
            for i in 0..n {
                bounds[i] = ka.j[i].min(kb.k[i]);
                bounds[n + i] = ka.k[i].min(kb.j[i]);
            }
            bounds[2 * n] = if ka.d != 0 { kb.m } else { 0 };
            bounds[2 * n + 1] = if kb.d != 0 { ka.m } else { 0 };
            idx.iter_mut().for_each(|v| *v = 0);
            loop {
                let total: u32 = idx.iter().sum();
                let wanted = match kind {
                    Kind::Star => true,
                    Kind::Moyal => total % 2 == 1,
                    Kind::Poisson => total == 1,
                };
                if wanted {
                    let (key, c) = pair_term(ka, kb, &idx, n, kind);
                    out.add_term(key, c * ca * cb);
                }
                // Odometer increment.
                let mut s = 0;
                loop {
                    if s == slots {
                        break;
                    }
                    if idx[s] < bounds[s] {
                        idx[s] += 1;
                        break;
                    }
                    idx[s] = 0;
                    s += 1;
                }
                if s == slots {
                    break;
                }
            }
        }
    }
    out
}

fn pair_term(
    ka: &MonomialKey,
    kb: &MonomialKey,
    idx: &[u32],
    n: usize,
    kind: Kind,
) -> (MonomialKey, Complex64) {
    let alpha = &idx[..n];
    let beta = &idx[n..2 * n];
    let gamma = idx[2 * n];
    let delta = idx[2 * n + 1];
    let a_tot: u32 = alpha.iter().sum();
    let b_tot: u32 = beta.iter().sum();
    let total = a_tot + b_tot + gamma + delta;

    // Derivative factors on both sides.
    let mut c = 1.0;
    for i in 0..n {
        c *= falling(ka.j[i], alpha[i]) * falling(kb.k[i], alpha[i]);
        c *= falling(ka.k[i], beta[i]) * falling(kb.j[i], beta[i]);
        c /= factorial(alpha[i]) * factorial(beta[i]);
    }
    c *= falling(kb.m, gamma) * falling(ka.m, delta);
    c /= factorial(gamma) * factorial(delta);
    let mut coef = Complex64::new(c, 0.0);
    // d_t on e^{2 pi i d t}.
    coef *= Complex64::new(0.0, 2.0 * PI * ka.d as f64).powu(gamma);
    coef *= Complex64::new(0.0, 2.0 * PI * kb.d as f64).powu(delta);
    // Bivector weights: (hbar/2), (-hbar/2), (i hbar/2), (-i hbar/2) per slot type, hbar kept formal.
    coef *= Complex64::new(0.5, 0.0).powu(a_tot);
    coef *= Complex64::new(-0.5, 0.0).powu(b_tot);
    coef *= Complex64::new(0.0, 0.5).powu(gamma);
    coef *= Complex64::new(0.0, -0.5).powu(delta);
    let mut p = ka.p + kb.p + total;
    if kind != Kind::Star {
        // (f*g - g*f)/(i hbar) doubles odd terms and removes one hbar.
        coef *= Complex64::new(0.0, -2.0);
        p -= 1;
    }
    let key = MonomialKey {
        p,
        j: (0..n).map(|i| ka.j[i] - alpha[i] + kb.j[i] - beta[i]).collect(),
        k: (0..n).map(|i| ka.k[i] - beta[i] + kb.k[i] - alpha[i]).collect(),
        m: ka.m - delta + kb.m - gamma,
        d: ka.d + kb.d,
    };
    (key, coef)
}
