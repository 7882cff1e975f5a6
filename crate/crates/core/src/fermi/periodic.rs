use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::FftPlanner;

use super::invariants::{invariants_from, reconstruct_with_pairs, InvariantFamily};
use crate::error::{Error, Result};
use crate::linalg::{block_rotation, max_abs};

/// Per-block trace of the time-dependent quadratic generator of a loop of frames:
/// `sum_i (dS_{n+i,k} S_{i,k} + dS_{n+i,n+k} S_{i,n+k} - dS_{i,k} S_{n+i,k} - dS_{i,n+k} S_{n+i,n+k})`.
pub fn generator_trace(s: &DMatrix<f64>, ds: &DMatrix<f64>) -> Vec<f64> {
    let n = s.nrows() / 2;
    (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    ds[(n + i, k)] * s[(i, k)] + ds[(n + i, n + k)] * s[(i, n + k)]
                        - ds[(i, k)] * s[(n + i, k)]
                        - ds[(i, n + k)] * s[(n + i, n + k)]
                })
                .sum()
        })
        .collect()
}

/// Spectral `d/dt` of a loop of matrices sampled uniformly on `[0, 1)`.
pub fn spectral_derivative(samples: &[DMatrix<f64>]) -> Vec<DMatrix<f64>> {
    let m = samples.len();
    let (r, c) = samples[0].shape();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(m);
    let inv = planner.plan_fft_inverse(m);
    let mut out = vec![DMatrix::zeros(r, c); m];
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for a in 0..r {
        for b in 0..c {
            for (g, s) in samples.iter().enumerate() {
                buf[g] = Complex64::new(s[(a, b)], 0.0);
            }
            fwd.process(&mut buf);
            for (g, v) in buf.iter_mut().enumerate() {
                let f = if 2 * g < m {
                    g as f64
                } else if 2 * g == m {
                    0.0
                } else {
                    g as f64 - m as f64
                };
                *v *= Complex64::new(0.0, 2.0 * std::f64::consts::PI * f / m as f64);
            }
            inv.process(&mut buf);
            for (g, v) in buf.iter().enumerate() {
                out[g][(a, b)] = v.re;
            }
        }
    }
    out
}

/// Invariants and generator traces of a sampled loop, the data [`fermi_periodic`] consumes.
pub fn loop_data(samples: &[DMatrix<f64>]) -> (Vec<InvariantFamily>, Vec<Vec<f64>>) {
    let ds = spectral_derivative(samples);
    let fams = samples.iter().map(invariants_from).collect();
    let traces = samples
        .iter()
        .zip(&ds)
        .map(|(s, d)| generator_trace(s, d))
        .collect();
    (fams, traces)
}

/// Reconstructed loop of Fermi frames.
#[derive(Clone, Debug)]
pub struct PeriodicLoop {
    /// Canonical frames rebuilt from the invariants alone.
    pub canonical: Vec<DMatrix<f64>>,
    /// Recovered block angle rates, one vector per sample.
    pub theta_dot: Vec<Vec<f64>>,
    /// Integrated block angles with `theta(0) = 0`.
    pub theta: Vec<Vec<f64>>,
    /// `canonical * rotation(theta)`, equal to the true loop up to a constant block rotation.
    pub frames: Vec<DMatrix<f64>>,
}

/// Rebuild a loop of symplectic frames from sampled invariants and generator traces.
pub fn fermi_periodic(families: &[InvariantFamily], traces: &[Vec<f64>]) -> Result<PeriodicLoop> {
    let m = families.len();
    if m < 3 || traces.len() != m {
        return Err(Error::MissingData(format!(
            "need matching invariant and trace samples, got {} and {}",
            m,
            traces.len()
        )));
    }
    let n = families[0].n;
    // One row pair per block for the whole loop keeps the canonical frame continuous.
    let pairs: Vec<(usize, usize)> = (0..n)
        .map(|k| {
            let mut best = ((0, 1), f64::NEG_INFINITY);
            let dim = 2 * n;
            for i in 0..dim {
                for j in i + 1..dim {
                    let worst = families
                        .iter()
                        .map(|f| {
                            let g = &f.grams[k];
                            g[(i, i)] * g[(j, j)] - g[(i, j)] * g[(i, j)]
                        })
                        .fold(f64::INFINITY, f64::min);
                    if worst > best.1 {
                        best = ((i, j), worst);
                    }
                }
            }
            best.0
        })
        .collect();
    let mut canonical = Vec::with_capacity(m);
    for (g, fam) in families.iter().enumerate() {
        let rec = reconstruct_with_pairs(fam, &pairs)?;
        if let Some(prev) = canonical.last() {
            let jump = max_abs(&(&rec.t - prev));
            // Distance to the mirrored branch sets the continuity scale.
            let mirror = {
                let mut t = rec.t.clone();
                for k in 0..n {
                    t.column_mut(n + k).neg_mut();
                }
                t
            };
            let sep = max_abs(&(&rec.t - mirror));
            if jump > 0.5 * sep {
                return Err(Error::DiscontinuousLoop { sample: g });
            }
        }
        canonical.push(rec.t);
    }
    let dcan = spectral_derivative(&canonical);
    let theta_dot: Vec<Vec<f64>> = canonical
        .iter()
        .zip(&dcan)
        .zip(traces)
        .map(|((s, d), c)| {
            generator_trace(s, d)
                .iter()
                .zip(c)
                .map(|(t0, t)| 0.5 * (t - t0))
                .collect()
        })
        .collect();
    let h = 1.0 / m as f64;
    let mut theta = vec![vec![0.0; n]];
    for g in 1..m {
        let prev = &theta[g - 1];
        let next: Vec<f64> = (0..n)
            .map(|k| prev[k] + 0.5 * h * (theta_dot[g - 1][k] + theta_dot[g][k]))
            .collect();
        theta.push(next);
    }
    let frames = canonical
        .iter()
        .zip(&theta)
        .map(|(s, th)| s * block_rotation(th))
        .collect();
    Ok(PeriodicLoop {
        canonical,
        theta_dot,
        theta,
        frames,
    })
}
