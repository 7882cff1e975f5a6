use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ladder::weyl_diagonal_to_operator;
use super::poly::PhasePoly;

/// Joint eigenstate `|mu, nu>` of `P_i` (eigenvalue `(mu_i + 1/2) hbar`) and `D_t` (`2 pi nu hbar`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockState {
    pub mu: Vec<u32>,
    pub nu: i32,
}

impl FockState {
    pub fn new(mu: Vec<u32>, nu: i32) -> Self {
        Self { mu, nu }
    }

    /// Eigenvalues of `P` in this state.
    pub fn actions(&self, hbar: f64) -> Vec<f64> {
        self.mu.iter().map(|&m| (m as f64 + 0.5) * hbar).collect()
    }

    /// Eigenvalue of `D_t` in this state.
    pub fn energy(&self, hbar: f64) -> f64 {
        2.0 * PI * self.nu as f64 * hbar
    }
}

/// `<mu, nu| Op(f) |mu, nu>`; off-diagonal keys do not contribute.
pub fn diagonal_eval(f: &PhasePoly, state: &FockState, hbar: f64) -> Complex64 {
    assert_eq!(state.mu.len(), f.n(), "state has wrong number of degrees of freedom");
    weyl_diagonal_to_operator(f).eval(&state.actions(hbar), state.energy(hbar), hbar)
}
