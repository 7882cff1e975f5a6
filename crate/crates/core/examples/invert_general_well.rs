// Recover a two-degree-of-freedom Hamiltonian near a well from its normal form and the angle
// averages of the observables `z^m zbar^n`.

use birkhoff::inversion::invert_general;
use birkhoff::normalform::{birkhoff, HamiltonianSpec, Setting};
use birkhoff::observables::{average_family, observable_family};
use birkhoff::phasepoly::{Caps, Mode, PhasePoly};

pub fn run_example() -> birkhoff::Result<()> {
    let theta = [1.0, 2f64.sqrt()];
    let mut pert = PhasePoly::x_xi(2, &[2, 1], &[0, 0]).scale_real(0.08);
    pert.add_assign_poly(&PhasePoly::x_xi(2, &[1, 0], &[0, 2]).scale_real(-0.05));
    pert.add_assign_poly(&PhasePoly::x_xi(2, &[0, 1], &[1, 1]).scale_real(0.03));
    pert.add_assign_poly(&PhasePoly::x_xi(2, &[2, 0], &[0, 2]).scale_real(0.02));
    pert.add_assign_poly(&PhasePoly::x_xi(2, &[1, 1], &[1, 1]).scale_real(-0.04));
    let spec = HamiltonianSpec::well(&theta, 0.0, &pert, Caps::order(4));
    for mode in [Mode::Classical, Mode::Quantum] {
        let nf = birkhoff(&spec, mode, 4)?;
        let family = observable_family(2, 4, 0, false);
        let data = average_family(&nf, &family, 4)?;
        let got = invert_general(&nf.h, &data, &theta, Setting::Well, mode, 4, 0, 1e-9)?;
        let err = got.hamiltonian.max_abs_diff(&spec.hamiltonian) / spec.hamiltonian.max_abs();
        assert!(err <= 1e-6);
        println!("{mode:?}: {} observables, relative error {err:.2e}", family.len());
        for r in &got.reports {
            println!("  order {}: {} unknowns, {} equations, rank {}", r.order, r.unknowns, r.equations, r.rank);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
