use serde::{Deserialize, Serialize};

use super::homological::{solve_homological, DivisorEntry, SMALL_DIVISOR};
use crate::error::{Error, Result};
use crate::phasepoly::{
    lie_transform, weyl_diagonal_to_operator, ActionPoly, Caps, Mode, PhasePoly,
    TruncationReport, ZERO_TOL,
};

/// Neighbourhood type: an elliptic well (no `t, tau`) or an elliptic periodic orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Setting {
    Well,
    Periodic,
}

/// A Hamiltonian symbol in Fermi form together with its frequencies and caps.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HamiltonianSpec {
    pub setting: Setting,
    pub theta: Vec<f64>,
    pub hamiltonian: PhasePoly,
    pub caps: Caps,
}

impl HamiltonianSpec {
    /// `E + sum theta z zbar + perturbation` near a well.
    pub fn well(theta: &[f64], energy: f64, perturbation: &PhasePoly, caps: Caps) -> Self {
        let n = theta.len();
        let mut h = PhasePoly::constant(n, energy);
        h.add_assign_poly(&PhasePoly::harmonic(theta));
        h.add_assign_poly(perturbation);
        Self {
            setting: Setting::Well,
            theta: theta.to_vec(),
            hamiltonian: h,
            caps,
        }
    }

    /// `E + sum theta z zbar + tau + perturbation` near a periodic orbit.
    pub fn periodic(theta: &[f64], energy: f64, perturbation: &PhasePoly, caps: Caps) -> Self {
        let n = theta.len();
        let mut h = PhasePoly::constant(n, energy);
        h.add_assign_poly(&PhasePoly::harmonic_periodic(theta));
        h.add_assign_poly(perturbation);
        Self {
            setting: Setting::Periodic,
            theta: theta.to_vec(),
            hamiltonian: h,
            caps,
        }
    }

    pub fn n(&self) -> usize {
        self.theta.len()
    }

    /// The quadratic model `sum theta z zbar (+ tau)`.
    pub fn harmonic(&self) -> PhasePoly {
        match self.setting {
            Setting::Well => PhasePoly::harmonic(&self.theta),
            Setting::Periodic => PhasePoly::harmonic_periodic(&self.theta),
        }
    }

    /// Check the Fermi-form preconditions.
    pub fn validate(&self) -> Result<()> {
        let h = &self.hamiltonian;
        if h.n() != self.n() {
            return Err(Error::DofMismatch {
                left: h.n(),
                right: self.n(),
            });
        }
        if self.setting == Setting::Well && h.keys().any(|k| k.m != 0 || k.d != 0) {
            return Err(Error::NotFermiForm(
                "well setting cannot depend on t or tau".into(),
            ));
        }
        let mut low = PhasePoly::new(h.n());
        for (k, v) in h.iter() {
            let o = k.order();
            if o == 1 {
                return Err(Error::NotFermiForm(format!("linear term {k}")));
            }
            if o == 2 && k.p == 0 {
                low.add_term(k.clone(), *v);
            }
            if o == 0 && k.d != 0 {
                return Err(Error::NotFermiForm(format!(
                    "energy must be constant in t, found {k}"
                )));
            }
        }
        let diff = low.max_abs_diff(&self.harmonic());
        if diff > 1e-12 * self.theta.iter().fold(1.0f64, |a, t| a.max(t.abs())) {
            return Err(Error::NotFermiForm(format!(
                "quadratic part differs from the harmonic model by {diff:e}"
            )));
        }
        Ok(())
    }
}

/// Output of [`birkhoff`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalFormResult {
    pub mode: Mode,
    pub setting: Setting,
    pub theta: Vec<f64>,
    pub order: u32,
    pub caps: Caps,
    /// Normal form as a function of the actions (classical) or of `P, D_t, hbar` (quantum).
    pub h: ActionPoly,
    /// Normal form as a diagonal phase-space symbol.
    pub h_symbol: PhasePoly,
    /// Generator pieces by order, starting at order 3. Their sum `F` satisfies
    /// `lie_transform(H, F) = h_symbol` up to terms above the order cap.
    pub generators: Vec<PhasePoly>,
    pub divisor_log: Vec<DivisorEntry>,
    pub homological_residuals: Vec<f64>,
    /// Largest off-diagonal coefficient left in the transformed Hamiltonian.
    pub normal_form_residual: f64,
    pub truncation_report: TruncationReport,
}

impl NormalFormResult {
    /// Sum of all generator pieces.
    pub fn generator(&self) -> PhasePoly {
        let n = self.theta.len();
        let mut f = PhasePoly::with_caps(n, self.caps);
        for g in &self.generators {
            f.add_assign_poly(g);
        }
        f
    }

    pub fn generator_up_to(&self, order: u32) -> PhasePoly {
        self.generator().up_to_order(order)
    }
}

/// Birkhoff normal form to order `order` (classical with Poisson brackets, quantum with Moyal
/// brackets on Weyl symbols).
pub fn birkhoff(spec: &HamiltonianSpec, mode: Mode, order: u32) -> Result<NormalFormResult> {
    birkhoff_with_threshold(spec, mode, order, SMALL_DIVISOR)
}

pub fn birkhoff_with_threshold(
    spec: &HamiltonianSpec,
    mode: Mode,
    order: u32,
    threshold: f64,
) -> Result<NormalFormResult> {
    spec.validate()?;
    let n = spec.n();
    let caps = Caps::new(order, spec.caps.fourier_band).meet(&spec.caps);
    let mut h = spec.hamiltonian.clone();
    h.set_caps(caps);
    let h0 = spec.harmonic();
    let mut f = PhasePoly::with_caps(n, caps);
    let mut generators = Vec::new();
    let mut divisor_log = Vec::new();
    let mut residuals = Vec::new();
    let mut report = *h.report();
    for q in 3..=caps.order {
        let t = if f.is_empty() {
            h.clone()
        } else {
            lie_transform(&h, &f, mode, Caps::new(q, caps.fourier_band))?
        };
        let g = t.order_part(q);
        let sol = solve_homological(&g, &h0, threshold, q - 1)?;
        residuals.push(sol.residual);
        divisor_log.extend(sol.divisors);
        let piece = sol.f.scale_real(-1.0).pruned();
        f.add_assign_poly(&piece);
        generators.push(piece);
    }
    let t = if f.is_empty() {
        h.clone()
    } else {
        lie_transform(&h, &f, mode, caps)?
    }
    .pruned();
    report.merge(t.report());
    let h_symbol = t.diagonal_part();
    let normal_form_residual = t.off_diagonal_part().max_abs();
    let mut hpoly = match mode {
        Mode::Classical => ActionPoly::from_diagonal_symbol(&h_symbol),
        Mode::Quantum => weyl_diagonal_to_operator(&h_symbol),
    };
    hpoly.prune(ZERO_TOL);
    Ok(NormalFormResult {
        mode,
        setting: spec.setting,
        theta: spec.theta.clone(),
        order: caps.order,
        caps,
        h: hpoly,
        h_symbol,
        generators,
        divisor_log,
        homological_residuals: residuals,
        normal_form_residual,
        truncation_report: report,
    })
}
