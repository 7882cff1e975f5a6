// Time-periodic Hamiltonian near an orbit: normal form, averages of `e^{-2 pi i p t} z^m zbar^n`
// and of `e^{-2 pi i q t} tau`, then recovery of the Hamiltonian.

use birkhoff::inversion::invert_general;
use birkhoff::normalform::{birkhoff, HamiltonianSpec, Setting};
use birkhoff::observables::{average_family, observable_family};
use birkhoff::phasepoly::{Caps, MonomialKey, Mode, PhasePoly};

pub fn run_example() -> birkhoff::Result<()> {
    let band = 2;
    let tau = PhasePoly::monomial(MonomialKey::tau(1), 1.0.into());
    let mut pert = PhasePoly::x(1, 0).pow(3).mul_poly(&PhasePoly::cos_mode(1, 1)).scale_real(0.05);
    pert.add_assign_poly(&PhasePoly::x_xi(1, &[1], &[2]).mul_poly(&PhasePoly::sin_mode(1, 2)).scale_real(0.03));
    pert.add_assign_poly(&PhasePoly::xi(1, 0).mul_poly(&tau).scale_real(0.02));
    let spec = HamiltonianSpec::periodic(&[0.7], 0.0, &pert, Caps::new(4, band));
    let nf = birkhoff(&spec, Mode::Classical, 4)?;
    let family = observable_family(1, 4, band, true);
    let data = average_family(&nf, &family, 4)?;
    let got = invert_general(&nf.h, &data, &[0.7], Setting::Periodic, Mode::Classical, 4, band, 1e-9)?;
    let err = got.hamiltonian.max_abs_diff(&spec.hamiltonian) / spec.hamiltonian.max_abs();
    assert!(err <= 1e-6);
    println!("{} observables, relative error {err:.2e}", family.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
