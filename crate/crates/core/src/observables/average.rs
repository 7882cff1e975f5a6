use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::spec::{make_observable, ObservableSpec};
use crate::error::{Error, Result};
use crate::normalform::NormalFormResult;
use crate::phasepoly::{
    lie_transform, poisson_bracket, weyl_diagonal_to_operator, ActionKey, ActionPoly, Caps, Mode,
    MonomialKey, PhasePoly, ZERO_TOL,
};

/// Angle average (classical) or diagonal matrix elements (quantum) of one observable in the
/// normal-form coordinates, truncated at `order`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AveragedObservable {
    pub observable: ObservableSpec,
    pub mode: Mode,
    pub order: u32,
    /// In quantum mode, Taylor coefficients of `f(P, D_t, hbar)` with
    /// `<mu, nu| e^{iW/hbar} Op(O) e^{-iW/hbar} |mu, nu> = f((mu + 1/2) hbar, 2 pi nu hbar, hbar)`.
    pub average: ActionPoly,
}

/// Order cap at which the averages of `obs` see every generator piece up to `generator_order`.
pub fn data_order(obs: &ObservableSpec, generator_order: u32) -> u32 {
    obs.order() + generator_order - 2
}

fn conjugated(obs: &ObservableSpec, nf: &NormalFormResult, order: u32, mode: Mode) -> Result<PhasePoly> {
    let n = nf.theta.len();
    let o = make_observable(obs, n)?;
    let mut f = nf.generator();
    f.set_caps(Caps::new(order + 1, nf.caps.fourier_band));
    lie_transform(&o, &f, mode, Caps::new(order, nf.caps.fourier_band))
}

/// Angle average of `O o exp(chi_F)` as a polynomial in the actions and `tau`.
pub fn average_classical(obs: &ObservableSpec, nf: &NormalFormResult, order: u32) -> Result<AveragedObservable> {
    if nf.mode != Mode::Classical {
        return Err(Error::MissingData("classical averages need a classical normal form".into()));
    }
    let t = conjugated(obs, nf, order, Mode::Classical)?;
    let mut average = ActionPoly::from_diagonal_symbol(&t);
    average.prune(ZERO_TOL);
    Ok(AveragedObservable {
        observable: obs.clone(),
        mode: Mode::Classical,
        order,
        average,
    })
}

/// Diagonal matrix elements of `e^{iW/hbar} Op(O) e^{-iW/hbar}` in the joint eigenbasis of `P`
/// and `D_t`, as Taylor data of a function of `(P, D_t, hbar)`.
pub fn matrix_elements_quantum(obs: &ObservableSpec, nf: &NormalFormResult, order: u32) -> Result<AveragedObservable> {
    if nf.mode != Mode::Quantum {
        return Err(Error::MissingData("matrix elements need a quantum normal form".into()));
    }
    let t = conjugated(obs, nf, order, Mode::Quantum)?;
    let mut average = weyl_diagonal_to_operator(&t);
    average.prune(ZERO_TOL);
    Ok(AveragedObservable {
        observable: obs.clone(),
        mode: Mode::Quantum,
        order,
        average,
    })
}

/// Averages for a whole family, each at the order that sees generators up to `generator_order`.
pub fn average_family(
    nf: &NormalFormResult,
    family: &[ObservableSpec],
    generator_order: u32,
) -> Result<Vec<AveragedObservable>> {
    family
        .iter()
        .map(|o| {
            let order = data_order(o, generator_order);
            match nf.mode {
                Mode::Classical => average_classical(o, nf, order),
                Mode::Quantum => matrix_elements_quantum(o, nf, order),
            }
        })
        .collect()
}

/// Averaged first-order response `<{O, M}>` of an observable to the generator monomial `M`,
/// in closed form: for `O = e^{-2 pi i p t} z^m zbar^n` and `M = z^j zbar^k tau^s e^{2 pi i d t}`
/// it vanishes unless `j + m = k + n` and `d = p`, and then equals
/// `-i A^{max(j,k)} tau^s (sum_i (k_i m_i - j_i n_i)/A_i + 2 pi p s / tau)`.
/// For `O = e^{-2 pi i q t} tau` and `M = (z zbar)^j tau^s e^{2 pi i q t}` it equals
/// `-2 pi i q (1 + s) A^j tau^s`.
pub fn classical_response(obs: &ObservableSpec, key: &MonomialKey) -> ActionPoly {
    let nd = key.n();
    let mut out = ActionPoly::new(nd);
    let two_pi = 2.0 * std::f64::consts::PI;
    match obs {
        ObservableSpec::Mode { m, n, p } => {
            let diag = (0..nd).all(|i| key.j[i] + m[i] == key.k[i] + n[i]) && key.d == *p;
            if !diag {
                return out;
            }
            let top: Vec<u32> = (0..nd).map(|i| key.j[i] + m[i]).collect();
            for i in 0..nd {
                let c = key.k[i] as f64 * m[i] as f64 - key.j[i] as f64 * n[i] as f64;
                if c != 0.0 {
                    let mut l = top.clone();
                    l[i] -= 1;
                    out.add_term(ActionKey::new(key.p, l, key.m), Complex64::new(0.0, -c));
                }
            }
            if *p != 0 && key.m > 0 {
                let c = two_pi * *p as f64 * key.m as f64;
                out.add_term(
                    ActionKey::new(key.p, top, key.m - 1),
                    Complex64::new(0.0, -c),
                );
            }
        }
        ObservableSpec::Energy { q } => {
            if key.j == key.k && key.d == *q {
                // {e^{-2 pi i q t} tau, M}: d_t O d_tau M - d_tau O d_t M.
                let c = -two_pi * *q as f64 * (key.m as f64 + 1.0);
                out.add_term(
                    ActionKey::new(key.p, key.j.clone(), key.m),
                    Complex64::new(0.0, c),
                );
            }
        }
        ObservableSpec::Quadratic { .. } => {
            let o = make_observable(obs, nd).expect("valid quadratic observable");
            let br = poisson_bracket(&o, &PhasePoly::monomial(key.clone(), Complex64::new(1.0, 0.0)));
            out = ActionPoly::from_diagonal_symbol(&br);
        }
    }
    out
}
