use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::least_squares;
use crate::observables::{kernel_point, trace_kernel_u};
use crate::phasepoly::{factorial, ActionKey, ActionPoly};

/// One trace coefficient `X_p(l)` at integer time `l`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSample {
    pub p: u32,
    pub l: i64,
    pub re: f64,
    pub im: f64,
}

/// Taylor coefficients `b_{k,m,s}` of `f(x, y, z)` stored as `hbar^s A^k tau^m`, with fit diagnostics.
///
/// The kernels depend on `(t, alpha)` only through `t alpha`, so
/// `u^{(k,m)} = sum_{|s|=m} (m!/s!) theta^s u^{(k+s,0)}` and the samples only see the combinations
/// returned by [`identifiable_part`]. The fit reports that representative, which has no `y` terms.
#[derive(Clone, Debug)]
pub struct TraceTaylor {
    pub b: ActionPoly,
    pub condition: Vec<f64>,
    pub residual: Vec<f64>,
}

/// `(k, m)` pairs with `|k| + m <= p`, in a fixed order.
fn all_keys(n: usize, p: u32) -> Vec<(Vec<u32>, u32)> {
    let mut out = Vec::new();
    let mut k = vec![0u32; n];
    loop {
        let sk: u32 = k.iter().sum();
        if sk <= p {
            for m in 0..=(p - sk) {
                out.push((k.clone(), m));
            }
        }
        let mut i = 0;
        while i < n && k[i] == p {
            k[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        k[i] += 1;
    }
    out
}

fn check_time(l: i64, theta: &[f64]) -> Result<Vec<Complex64>> {
    let x = kernel_point(l as f64, theta);
    if l == 0 || x.iter().any(|xi| (xi * xi - 1.0).norm() < 1e-12) {
        return Err(Error::SingularKernel { time: l as f64 });
    }
    Ok(x)
}

fn b_key(k: &[u32], m: u32, p: u32) -> ActionKey {
    ActionKey::new(p - k.iter().sum::<u32>() - m, k.to_vec(), m)
}

/// `X_p(l) = sum_{|k|+m <= p} b_{k,m,p-|k|-m} u^{(k,m)}(l)` for every `p` in `1..=pmax` and every time.
pub fn synthesize_trace(b: &ActionPoly, theta: &[f64], times: &[i64], pmax: u32) -> Result<Vec<TraceSample>> {
    let n = theta.len();
    let mut out = Vec::new();
    for p in 1..=pmax {
        let keys = all_keys(n, p);
        for &l in times {
            let x = check_time(l, theta)?;
            let mut v = Complex64::new(0.0, 0.0);
            for (k, m) in &keys {
                let c = b.get(&b_key(k, *m, p));
                if c != Complex64::new(0.0, 0.0) {
                    v += c * trace_kernel_u(k, *m, &x, theta);
                }
            }
            out.push(TraceSample { p, l, re: v.re, im: v.im });
        }
    }
    Ok(out)
}

/// The representative of `b` without `y` dependence that produces the same trace coefficients.
pub fn identifiable_part(b: &ActionPoly, theta: &[f64]) -> ActionPoly {
    let n = theta.len();
    let mut out = ActionPoly::new(n);
    for (key, c) in b.iter() {
        let m = key.s;
        for s in super::general::compositions(n, m) {
            let mut w = factorial(m);
            let mut k = key.l.clone();
            for i in 0..n {
                w *= theta[i].powi(s[i] as i32) / factorial(s[i]);
                k[i] += s[i];
            }
            out.add_term(ActionKey::new(key.p, k, 0), c * w);
        }
    }
    out
}

/// Recover the identifiable combinations of `b_{k,m,s}`, `1 <= |k| + m + s <= pmax`, by a
/// least-squares fit per `p`.
pub fn unmix_trace(samples: &[TraceSample], theta: &[f64], pmax: u32, tol: f64) -> Result<TraceTaylor> {
    let n = theta.len();
    let mut b = ActionPoly::new(n);
    let mut condition = Vec::new();
    let mut residual = Vec::new();
    for p in 1..=pmax {
        let rows: Vec<&TraceSample> = samples.iter().filter(|s| s.p == p).collect();
        let keys: Vec<(Vec<u32>, u32)> = all_keys(n, p).into_iter().filter(|(_, m)| *m == 0).collect();
        if rows.is_empty() {
            return Err(Error::MissingData(format!("no trace samples for p = {p}")));
        }
        let mut a = DMatrix::zeros(rows.len(), keys.len());
        let mut rhs = DVector::zeros(rows.len());
        for (r, s) in rows.iter().enumerate() {
            let x = check_time(s.l, theta)?;
            for (c, (k, m)) in keys.iter().enumerate() {
                a[(r, c)] = trace_kernel_u(k, *m, &x, theta);
            }
            rhs[r] = Complex64::new(s.re, s.im);
        }
        let fit = least_squares(&a, &rhs, 1e-13);
        if fit.rank < keys.len() {
            return Err(Error::RankDeficient {
                order: p,
                rank: fit.rank,
                unknowns: keys.len(),
                unresolved: fit
                    .deficient
                    .iter()
                    .map(|c| format!("k={:?} m={}", keys[*c].0, keys[*c].1))
                    .collect(),
            });
        }
        if fit.residual > tol {
            return Err(Error::Residual {
                residual: fit.residual,
                tol,
                context: format!("trace fit at p = {p}"),
            });
        }
        for (c, (k, m)) in keys.iter().enumerate() {
            b.add_term(b_key(k, *m, p), fit.x[c]);
        }
        condition.push(fit.condition);
        residual.push(fit.residual);
    }
    Ok(TraceTaylor { b, condition, residual })
}
