use num_complex::Complex64;

use super::*;
use crate::phasepoly::{ActionKey, Caps, Mode, MonomialKey, PhasePoly};

fn quartic(eps: f64) -> PhasePoly {
    PhasePoly::x(1, 0).pow(4).scale_real(eps)
}

#[test]
fn harmonic_is_a_fixed_point() {
    for mode in [Mode::Classical, Mode::Quantum] {
        let spec = HamiltonianSpec::well(&[1.0, 2f64.sqrt()], 0.5, &PhasePoly::new(2), Caps::order(6));
        let nf = birkhoff(&spec, mode, 6).unwrap();
        assert!(nf.generator().is_empty());
        assert_eq!(nf.h_symbol, spec.hamiltonian);
    }
}

#[test]
fn quartic_first_correction() {
    let eps = 0.01;
    let spec = HamiltonianSpec::well(&[1.0], 0.0, &quartic(eps), Caps::order(4));
    let nf = birkhoff(&spec, Mode::Classical, 4).unwrap();
    let a2 = nf.h.get(&ActionKey::new(0, vec![2], 0));
    assert!((a2.re - 1.5 * eps).abs() < 1e-15);
    assert!(nf.homological_residuals.iter().all(|r| *r < 1e-12));
}

#[test]
fn odd_orders_have_no_resonant_part() {
    let mut pert = PhasePoly::x(2, 0).pow(2).mul_poly(&PhasePoly::x(2, 1));
    pert.add_assign_poly(&PhasePoly::xi(2, 1).pow(3).scale_real(0.3));
    let spec = HamiltonianSpec::well(&[1.0, 2f64.sqrt()], 0.0, &pert.scale_real(0.1), Caps::order(6));
    let nf = birkhoff(&spec, Mode::Classical, 6).unwrap();
    assert!(nf.h_symbol.keys().all(|k| k.order() % 2 == 0));
    for g in &nf.generators {
        assert!(g.is_real(1e-13));
        assert!(g.keys().all(|k| !k.is_diagonal()));
    }
    assert!(nf.normal_form_residual < 1e-12);
}

#[test]
fn resonant_frequencies_raise_small_divisor() {
    let pert = PhasePoly::x(2, 0).pow(2).mul_poly(&PhasePoly::x(2, 1));
    let spec = HamiltonianSpec::well(&[1.0, 2.0], 0.0, &pert, Caps::order(4));
    match birkhoff(&spec, Mode::Classical, 4) {
        Err(crate::Error::SmallDivisor { completed_order, .. }) => assert_eq!(completed_order, 2),
        other => panic!("expected small divisor, got {other:?}"),
    }
}

#[test]
fn classical_slice_of_quantum() {
    let spec = HamiltonianSpec::well(&[1.0], 0.0, &quartic(0.05), Caps::order(8));
    let c = birkhoff(&spec, Mode::Classical, 8).unwrap();
    let q = birkhoff(&spec, Mode::Quantum, 8).unwrap();
    assert!(q.h.hbar_slice(0).max_abs_diff(&c.h) < 1e-12);
    // <x^4> = (hbar^2/4)(6 mu^2 + 6 mu + 3) = 1.5 P^2 + (3/8) hbar^2.
    let h2 = q.h.get(&ActionKey::new(2, vec![0], 0));
    assert!((h2.re - 0.375 * 0.05).abs() < 1e-12, "{h2}");
}

#[test]
fn periodic_angle_shift_matches_recomputation() {
    let n = 1;
    let theta = [0.7];
    let mut pert = PhasePoly::new(n);
    pert.add_term(MonomialKey::new(0, vec![2], vec![1], 0, 1), Complex64::new(0.05, 0.02));
    pert.add_term(MonomialKey::new(0, vec![1], vec![2], 0, -1), Complex64::new(0.05, -0.02));
    pert.add_term(MonomialKey::new(0, vec![1], vec![0], 1, 0), Complex64::new(0.03, 0.0));
    pert.add_term(MonomialKey::new(0, vec![0], vec![1], 1, 0), Complex64::new(0.03, 0.0));
    let caps = Caps::new(6, 12);
    let spec = HamiltonianSpec::periodic(&theta, 0.0, &pert, caps);
    let nf = birkhoff(&spec, Mode::Classical, 6).unwrap();
    let k = [1];
    let shifted = realize_angle_shift(&nf, &k).unwrap();
    let mut h2 = angle_shift(&spec.hamiltonian, &k);
    h2.set_caps(caps);
    let spec2 = HamiltonianSpec {
        setting: Setting::Periodic,
        theta: shifted.theta.clone(),
        hamiltonian: h2,
        caps,
    };
    let nf2 = birkhoff(&spec2, Mode::Classical, 6).unwrap();
    assert!(nf2.h_symbol.max_abs_diff(&shifted.h_symbol) < 1e-10);
    for (a, b) in nf2.generators.iter().zip(&shifted.generators) {
        assert!(a.max_abs_diff(b) < 1e-10);
    }
}
