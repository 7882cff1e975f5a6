use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phasepoly::{poisson_bracket, MonomialKey, PhasePoly};

/// Default threshold below which a non-resonant divisor is rejected.
pub const SMALL_DIVISOR: f64 = 1e-8;

/// Divisor met while solving the homological equation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorEntry {
    pub order: u32,
    pub key: MonomialKey,
    pub re: f64,
    pub im: f64,
}

/// Solution of `{H0, F} = G - G1`.
#[derive(Clone, Debug)]
pub struct HomologicalSolution {
    pub f: PhasePoly,
    /// Resonant (diagonal) part of `G`.
    pub g1: PhasePoly,
    /// `max |{H0, F} - G + G1|`.
    pub residual: f64,
    pub divisors: Vec<DivisorEntry>,
}

/// Eigenvalue of `X -> {H0, X}` on a monomial, read off the implemented bracket.
pub fn divisor(h0: &PhasePoly, key: &MonomialKey) -> Complex64 {
    let mut unit = key.clone();
    unit.p = 0;
    let br = poisson_bracket(h0, &PhasePoly::monomial(unit.clone(), Complex64::new(1.0, 0.0)));
    debug_assert!(br.len() <= 1, "harmonic part must act diagonally on monomials");
    br.get(&unit)
}

/// Split `G` into its resonant part `G1` and a generator `F` with `{H0, F} = G - G1`; the
/// generator has no diagonal keys.
pub fn solve_homological(
    g: &PhasePoly,
    h0: &PhasePoly,
    threshold: f64,
    completed_order: u32,
) -> Result<HomologicalSolution> {
    let mut f = g.empty_like();
    let mut g1 = g.empty_like();
    let mut divisors = Vec::new();
    for (key, c) in g.iter() {
        if key.is_diagonal() {
            g1.add_term(key.clone(), *c);
            continue;
        }
        let lam = divisor(h0, key);
        if lam.norm() < threshold {
            return Err(Error::SmallDivisor {
                key: key.to_string(),
                divisor: lam.norm(),
                completed_order,
            });
        }
        divisors.push(DivisorEntry {
            order: key.order(),
            key: key.clone(),
            re: lam.re,
            im: lam.im,
        });
        f.add_term(key.clone(), c / lam);
    }
    let check = &(&poisson_bracket(h0, &f) - g) + &g1;
    Ok(HomologicalSolution {
        f,
        g1,
        residual: check.max_abs(),
        divisors,
    })
}
