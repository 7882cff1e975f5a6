use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Low-lying eigenvalues with their semiclassical parameter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumList {
    pub levels: Vec<f64>,
    pub hbar: f64,
}

/// Frequencies recovered from a spectrum, ascending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frequencies {
    pub theta: Vec<f64>,
    pub ground: f64,
}

/// Nonnegative integer combinations of `basis` not exceeding `limit`.
fn lattice_points(basis: &[f64], limit: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    for &b in basis {
        let mut next = Vec::new();
        for &p in &pts {
            let mut v = p;
            while v <= limit + b {
                next.push(v);
                v += b;
            }
        }
        pts = next;
    }
    pts
}

/// Recover `n` frequencies from the lowest levels of `E_0 + sum theta_i (mu_i + 1/2) hbar`.
///
/// Gaps are measured from the ground level in units of `hbar`; each new frequency is the smallest
/// gap not within `tol` of the lattice spanned by the frequencies found so far. A gap closer to
/// the lattice than `10 tol` but farther than `tol` is reported as ambiguous.
pub fn recover_frequencies(spec: &SpectrumList, n: usize, tol: f64) -> Result<Frequencies> {
    if spec.levels.is_empty() {
        return Err(Error::InsufficientLevels { found: 0, wanted: n });
    }
    let mut levels = spec.levels.clone();
    levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let ground = levels[0];
    let mut gaps: Vec<f64> = levels[1..]
        .iter()
        .map(|l| (l - ground) / spec.hbar)
        .filter(|g| *g > tol)
        .collect();
    gaps.dedup_by(|a, b| (*a - *b).abs() <= tol);
    let mut theta: Vec<f64> = Vec::with_capacity(n);
    let limit = gaps.last().copied().unwrap_or(0.0);
    let mut lattice = lattice_points(&theta, limit);
    for &g in &gaps {
        if theta.len() == n {
            break;
        }
        let dist = lattice
            .iter()
            .map(|p| (g - p).abs())
            .fold(f64::INFINITY, f64::min);
        if dist <= tol {
            continue;
        }
        if dist <= 10.0 * tol {
            return Err(Error::AmbiguousLattice {
                gap: g,
                distance: dist,
                tol,
            });
        }
        theta.push(g);
        lattice = lattice_points(&theta, limit);
    }
    if theta.len() < n {
        return Err(Error::InsufficientLevels {
            found: theta.len(),
            wanted: n,
        });
    }
    Ok(Frequencies { theta, ground })
}

/// The lowest `count` levels `sum theta_i (mu_i + 1/2) hbar`, for tests and examples.
pub fn harmonic_levels(theta: &[f64], hbar: f64, count: usize) -> Vec<f64> {
    let top = theta.iter().fold(0.0f64, |a, t| a.max(*t));
    let mut limit = top * 4.0;
    loop {
        let pts = lattice_points(theta, limit);
        let mut pts: Vec<f64> = pts.into_iter().filter(|p| *p <= limit).collect();
        if pts.len() >= count {
            pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let zero: f64 = theta.iter().sum::<f64>() * 0.5;
            return pts[..count].iter().map(|p| (p + zero) * hbar).collect();
        }
        limit *= 1.5;
    }
}
