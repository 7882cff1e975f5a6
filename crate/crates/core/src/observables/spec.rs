use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phasepoly::{MonomialKey, PhasePoly};

/// Which product of coordinates a quadratic observable is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadraticKind {
    XXi,
    XX,
    XiXi,
}

/// An observable used to probe the normal-form generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ObservableSpec {
    /// `e^{-2 pi i p t} z^m zbar^n` with `m_i n_i = 0`.
    Mode { m: Vec<u32>, n: Vec<u32>, p: i32 },
    /// `e^{-2 pi i q t} tau`.
    Energy { q: i32 },
    /// `x_i xi_j`, `x_i x_j` or `xi_i xi_j`.
    Quadratic { kind: QuadraticKind, i: usize, j: usize },
}

impl ObservableSpec {
    pub fn mode(m: Vec<u32>, n: Vec<u32>, p: i32) -> Self {
        Self::Mode { m, n, p }
    }

    /// Weighted order of the observable.
    pub fn order(&self) -> u32 {
        match self {
            Self::Mode { m, n, .. } => m.iter().sum::<u32>() + n.iter().sum::<u32>(),
            Self::Energy { .. } | Self::Quadratic { .. } => 2,
        }
    }
}

/// The observable as a phase polynomial in `dof` degrees of freedom.
pub fn make_observable(spec: &ObservableSpec, dof: usize) -> Result<PhasePoly> {
    match spec {
        ObservableSpec::Mode { m, n, p } => {
            if m.len() != dof || n.len() != dof {
                return Err(Error::DofMismatch {
                    left: m.len().max(n.len()),
                    right: dof,
                });
            }
            if m.iter().zip(n).any(|(a, b)| a * b != 0) {
                return Err(Error::Parse(format!(
                    "observable exponents m={m:?}, n={n:?} overlap"
                )));
            }
            Ok(PhasePoly::monomial(
                MonomialKey::new(0, m.clone(), n.clone(), 0, -p),
                Complex64::new(1.0, 0.0),
            ))
        }
        ObservableSpec::Energy { q } => {
            let mut key = MonomialKey::tau(dof);
            key.d = -q;
            Ok(PhasePoly::monomial(key, Complex64::new(1.0, 0.0)))
        }
        ObservableSpec::Quadratic { kind, i, j } => {
            if *i >= dof || *j >= dof {
                return Err(Error::Parse(format!("index out of range in {spec:?}")));
            }
            let (a, b) = match kind {
                QuadraticKind::XXi => (PhasePoly::x(dof, *i), PhasePoly::xi(dof, *j)),
                QuadraticKind::XX => (PhasePoly::x(dof, *i), PhasePoly::x(dof, *j)),
                QuadraticKind::XiXi => (PhasePoly::xi(dof, *i), PhasePoly::xi(dof, *j)),
            };
            Ok(a.mul_poly(&b))
        }
    }
}

/// Exponent pairs `(m, n)` with `m_i n_i = 0` and `0 < |m| + |n| <= max_order`, sorted.
pub fn mode_exponents(dof: usize, max_order: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    // A signed exponent per degree of freedom: positive on z, negative on zbar.
    let lim = max_order as i32;
    let mut out = Vec::new();
    let mut e = vec![-lim; dof];
    loop {
        let tot: i32 = e.iter().map(|v| v.abs()).sum();
        if tot > 0 && tot <= lim {
            out.push((
                e.iter().map(|&v| v.max(0) as u32).collect(),
                e.iter().map(|&v| (-v).max(0) as u32).collect(),
            ));
        }
        let mut i = 0;
        while i < dof && e[i] == lim {
            e[i] = -lim;
            i += 1;
        }
        if i == dof {
            break;
        }
        e[i] += 1;
    }
    out.sort();
    out
}

/// The observables whose averages determine a generator up to order `order`: every `O_{m,n,p}`
/// with `0 < |m| + |n| <= order` and `|p| <= band` (`p = 0` near a well), plus `O_q` with
/// `0 < |q| <= band` near a periodic orbit.
pub fn observable_family(dof: usize, order: u32, band: u32, periodic: bool) -> Vec<ObservableSpec> {
    let band = if periodic { band as i32 } else { 0 };
    let mut out = Vec::new();
    for (m, n) in mode_exponents(dof, order) {
        for p in -band..=band {
            out.push(ObservableSpec::mode(m.clone(), n.clone(), p));
        }
    }
    if periodic {
        for q in -band..=band {
            if q != 0 {
                out.push(ObservableSpec::Energy { q });
            }
        }
    }
    out
}
