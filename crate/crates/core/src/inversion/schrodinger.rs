use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::general::{compositions, OrderReport, RANK_TOL};
use crate::error::{Error, Result};
use crate::fermi::XPoly;
use crate::linalg::least_squares;
use crate::normalform::{birkhoff, HamiltonianSpec};
use crate::observables::{
    average_classical, matrix_elements_quantum, AveragedObservable, ObservableSpec,
};
use crate::phasepoly::{ActionKey, ActionPoly, Caps, Mode};

/// Taylor coefficients `a_k` of the cubic and higher part of the potential in Fermi coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RecoveredPotential {
    pub theta: Vec<f64>,
    pub energy: f64,
    pub achieved_order: u32,
    pub remainder: XPoly,
    pub reports: Vec<OrderReport>,
}

/// Observables `z^m` with `m` in `{0,1}^n \ {0}`, the data used besides the normal form.
pub fn schrodinger_observables(n: usize) -> Vec<ObservableSpec> {
    (1u32..(1 << n))
        .map(|mask| {
            let m = (0..n).map(|i| (mask >> i) & 1).collect();
            ObservableSpec::mode(m, vec![0; n], 0)
        })
        .collect()
}

type DataKey = (usize, ActionKey);

/// The forward data at order `k`: normal form coefficients of order `k` and averages of the
/// `z^m` at order `|m| + k - 2`.
fn forward_slice(
    theta: &[f64],
    energy: f64,
    remainder: &XPoly,
    observables: &[ObservableSpec],
    mode: Mode,
    k: u32,
) -> Result<BTreeMap<DataKey, Complex64>> {
    let spec = HamiltonianSpec::well(theta, energy, &remainder.to_phase(), Caps::order(k));
    let nf = birkhoff(&spec, mode, k)?;
    let mut out = BTreeMap::new();
    collect(&mut out, 0, &nf.h.order_part(k));
    for (i, obs) in observables.iter().enumerate() {
        let target = obs.order() + k - 2;
        let avg = match mode {
            Mode::Classical => average_classical(obs, &nf, target)?,
            Mode::Quantum => matrix_elements_quantum(obs, &nf, target)?,
        };
        collect(&mut out, i + 1, &avg.average.order_part(target));
    }
    Ok(out)
}

fn collect(out: &mut BTreeMap<DataKey, Complex64>, tag: usize, p: &ActionPoly) {
    for (key, c) in p.iter() {
        *out.entry((tag, key.clone())).or_default() += *c;
    }
}

/// Recover the Taylor coefficients of the potential, in Fermi coordinates, up to degree `order`.
///
/// The data at order `k` depend affinely on the degree-`k` coefficients once lower degrees are
/// known, so each order is a linear solve whose columns are the exact responses to unit
/// coefficients. Even exponents are pinned by the normal form and the others by the averages of
/// the `z^m`.
pub fn invert_schrodinger(
    h: &ActionPoly,
    averages: &[AveragedObservable],
    theta: &[f64],
    mode: Mode,
    order: u32,
    tol: f64,
) -> Result<RecoveredPotential> {
    let n = theta.len();
    if h.n() != n {
        return Err(Error::DofMismatch { left: h.n(), right: n });
    }
    let observables = schrodinger_observables(n);
    let mut data: BTreeMap<DataKey, Complex64> = BTreeMap::new();
    collect(&mut data, 0, h);
    for (i, obs) in observables.iter().enumerate() {
        let avg = averages
            .iter()
            .find(|a| &a.observable == obs)
            .ok_or_else(|| Error::MissingData(format!("average of {obs:?}")))?;
        let need = obs.order() + order - 2;
        if avg.order < need {
            return Err(Error::MissingData(format!(
                "average of {obs:?} known to order {} but order {need} is needed",
                avg.order
            )));
        }
        collect(&mut data, i + 1, &avg.average);
    }
    let energy = h.get(&ActionKey::new(0, vec![0; n], 0)).re;
    let mut remainder = XPoly::new(n);
    let mut reports = Vec::new();
    for k in 3..=order {
        let exps = compositions(n, k);
        let base = forward_slice(theta, energy, &remainder, &observables, mode, k)?;
        let mut columns = Vec::with_capacity(exps.len());
        for e in &exps {
            let mut probe = remainder.clone();
            probe.add_term(e.clone(), 1.0);
            let s = forward_slice(theta, energy, &probe, &observables, mode, k)?;
            let mut col = s;
            for (key, v) in &base {
                *col.entry(key.clone()).or_default() -= *v;
            }
            columns.push(col);
        }
        // Rows: every data key present at this order in the base, the responses, or the data.
        let mut rows: BTreeMap<DataKey, usize> = BTreeMap::new();
        let in_slice = |key: &DataKey| {
            let target = if key.0 == 0 { k } else { observables[key.0 - 1].order() + k - 2 };
            key.1.order() == target
        };
        for key in base
            .keys()
            .chain(columns.iter().flat_map(|c| c.keys()))
            .chain(data.keys())
        {
            if in_slice(key) && !rows.contains_key(key) {
                let next = rows.len();
                rows.insert(key.clone(), next);
            }
        }
        let mut a = DMatrix::zeros(rows.len(), exps.len());
        let mut b = DVector::zeros(rows.len());
        for (key, &r) in &rows {
            b[r] = data.get(key).copied().unwrap_or_default()
                - base.get(key).copied().unwrap_or_default();
            for (c, col) in columns.iter().enumerate() {
                a[(r, c)] = col.get(key).copied().unwrap_or_default();
            }
        }
        let fit = least_squares(&a, &b, RANK_TOL);
        reports.push(OrderReport {
            order: k,
            unknowns: exps.len(),
            equations: rows.len(),
            rank: fit.rank,
            condition: fit.condition,
            residual: fit.residual,
        });
        if fit.rank < exps.len() {
            return Err(Error::RankDeficient {
                order: k,
                rank: fit.rank,
                unknowns: exps.len(),
                unresolved: fit.deficient.iter().map(|c| format!("x^{:?}", exps[*c])).collect(),
            });
        }
        if fit.residual > tol {
            return Err(Error::Residual {
                residual: fit.residual,
                tol,
                context: format!("potential degree {k}"),
            });
        }
        for (c, e) in exps.iter().enumerate() {
            let v = fit.x[c].re;
            if v != 0.0 {
                remainder.add_term(e.clone(), v);
            }
        }
    }
    remainder.terms.retain(|_, v| v.abs() > 1e-300);
    Ok(RecoveredPotential {
        theta: theta.to_vec(),
        energy,
        achieved_order: order,
        remainder,
        reports,
    })
}
