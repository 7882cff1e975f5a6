use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::least_squares;
use crate::normalform::Setting;
use crate::observables::{make_observable, AveragedObservable};
use crate::phasepoly::{
    bracket, lie_transform, operator_to_weyl_diagonal, ActionPoly, Caps, Mode, MonomialKey,
    PhasePoly,
};

/// Diagnostics of one order of an inverse recursion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderReport {
    pub order: u32,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub condition: f64,
    pub residual: f64,
}

/// Hamiltonian recovered from its normal form and averaged data.
#[derive(Clone, Debug)]
pub struct RecoveredHamiltonian {
    pub setting: Setting,
    pub mode: Mode,
    pub achieved_order: u32,
    /// Full symbol (Weyl symbol in quantum mode) up to `achieved_order`.
    pub hamiltonian: PhasePoly,
    /// Generator pieces of orders `3..=achieved_order`.
    pub generators: Vec<PhasePoly>,
    pub reports: Vec<OrderReport>,
}

/// Relative rank threshold on column-normalised response matrices.
pub const RANK_TOL: f64 = 1e-10;

/// Exponent vectors of length `n` summing to `total`.
pub(crate) fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Non-diagonal keys of order `q` admissible for a generator.
pub fn generator_keys(n: usize, q: u32, setting: Setting, mode: Mode, band: u32) -> Vec<MonomialKey> {
    let pmax = if mode == Mode::Quantum { q / 2 } else { 0 };
    let (mmax, dband) = match setting {
        Setting::Well => (0, 0i32),
        Setting::Periodic => (q / 2, band as i32),
    };
    let mut out = Vec::new();
    for p in 0..=pmax {
        for m in 0..=mmax {
            let used = 2 * p + 2 * m;
            if used > q {
                continue;
            }
            let rest = q - used;
            for a in 0..=rest {
                for j in compositions(n, a) {
                    for k in compositions(n, rest - a) {
                        for d in -dband..=dband {
                            let key = MonomialKey::new(p, j.clone(), k.clone(), m, d);
                            if !key.is_diagonal() {
                                out.push(key);
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Data of an averaged observable as a diagonal phase-space symbol.
fn data_symbol(avg: &AveragedObservable) -> PhasePoly {
    match avg.mode {
        Mode::Classical => avg.average.to_diagonal_symbol(),
        Mode::Quantum => operator_to_weyl_diagonal(&avg.average),
    }
}

/// The normal form `h` as a diagonal symbol.
pub fn normal_form_symbol(h: &ActionPoly, mode: Mode) -> PhasePoly {
    match mode {
        Mode::Classical => h.to_diagonal_symbol(),
        Mode::Quantum => operator_to_weyl_diagonal(h),
    }
}

/// Recover the Hamiltonian up to order `order` from its normal form `h` and averaged observables.
///
/// At each order `q` the unknown generator coefficients enter the averages linearly at order
/// `ord(O) + q - 2`, through the diagonal part of the bracket of `O` with each unknown monomial;
/// the contribution of the already recovered lower pieces is subtracted and the remaining system
/// is solved in the least-squares sense. Diagonal generator components are taken to be zero.
#[allow(clippy::too_many_arguments)]
pub fn invert_general(
    h: &ActionPoly,
    averages: &[AveragedObservable],
    theta: &[f64],
    setting: Setting,
    mode: Mode,
    order: u32,
    band: u32,
    tol: f64,
) -> Result<RecoveredHamiltonian> {
    let n = theta.len();
    if h.n() != n {
        return Err(Error::DofMismatch { left: h.n(), right: n });
    }
    let band = if setting == Setting::Well { 0 } else { band };
    let caps = Caps::new(order, band);
    let mut prepared = Vec::with_capacity(averages.len());
    for avg in averages {
        if avg.mode != mode {
            return Err(Error::MissingData(format!(
                "average of {:?} was computed in {:?} mode",
                avg.observable, avg.mode
            )));
        }
        let o = make_observable(&avg.observable, n)?;
        prepared.push((avg.observable.order(), avg.order, o, data_symbol(avg)));
    }
    let mut f = PhasePoly::with_caps(n, caps);
    let mut generators = Vec::new();
    let mut reports = Vec::new();
    for q in 3..=order {
        let unknowns = generator_keys(n, q, setting, mode, band);
        let mut rows: BTreeMap<(usize, MonomialKey), usize> = BTreeMap::new();
        let mut entries: Vec<(usize, usize, Complex64)> = Vec::new();
        let mut rhs_map: BTreeMap<usize, Complex64> = BTreeMap::new();
        for (idx, (r0, have, o, data)) in prepared.iter().enumerate() {
            let target = r0 + q - 2;
            if *have < target {
                continue;
            }
            let ocaps = Caps::new(target, band);
            let mut oc = o.clone();
            oc.set_caps(ocaps);
            let row_of = |key: &MonomialKey, rows: &mut BTreeMap<(usize, MonomialKey), usize>| {
                let next = rows.len();
                *rows.entry((idx, key.clone())).or_insert(next)
            };
            let known = if f.is_empty() {
                oc.clone()
            } else {
                lie_transform(&oc, &f, mode, ocaps)?
            };
            let mut resid = data.order_part(target);
            resid.add_scaled(&known.diagonal_part().order_part(target), Complex64::new(-1.0, 0.0));
            for (key, c) in resid.iter() {
                let r = row_of(key, &mut rows);
                *rhs_map.entry(r).or_default() += *c;
            }
            for (col, u) in unknowns.iter().enumerate() {
                let mut m = PhasePoly::monomial(u.clone(), Complex64::new(1.0, 0.0));
                m.set_caps(Caps::UNBOUNDED);
                let resp = bracket(&oc, &m, mode).diagonal_part().order_part(target);
                for (key, c) in resp.iter() {
                    let r = row_of(key, &mut rows);
                    entries.push((r, col, *c));
                }
            }
        }
        let nrows = rows.len();
        let mut a = DMatrix::zeros(nrows, unknowns.len());
        for (r, c, v) in entries {
            a[(r, c)] += v;
        }
        let b = DVector::from_fn(nrows, |r, _| rhs_map.get(&r).copied().unwrap_or_default());
        let fit = least_squares(&a, &b, RANK_TOL);
        reports.push(OrderReport {
            order: q,
            unknowns: unknowns.len(),
            equations: nrows,
            rank: fit.rank,
            condition: fit.condition,
            residual: fit.residual,
        });
        if fit.rank < unknowns.len() {
            return Err(Error::RankDeficient {
                order: q,
                rank: fit.rank,
                unknowns: unknowns.len(),
                unresolved: fit.deficient.iter().map(|c| unknowns[*c].to_string()).collect(),
            });
        }
        if fit.residual > tol {
            return Err(Error::Residual {
                residual: fit.residual,
                tol,
                context: format!("generator order {q}"),
            });
        }
        let mut piece = PhasePoly::with_caps(n, caps);
        for (c, key) in unknowns.iter().enumerate() {
            piece.add_term(key.clone(), fit.x[c]);
        }
        let piece = piece.pruned();
        f.add_assign_poly(&piece);
        generators.push(piece);
    }
    let mut hs = normal_form_symbol(h, mode);
    hs.set_caps(caps);
    let hamiltonian = if f.is_empty() {
        hs
    } else {
        lie_transform(&hs, &f.scale_real(-1.0), mode, caps)?
    }
    .pruned();
    Ok(RecoveredHamiltonian {
        setting,
        mode,
        achieved_order: order,
        hamiltonian,
        generators,
        reports,
    })
}
