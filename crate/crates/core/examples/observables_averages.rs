// Angle averages and quantum matrix elements of observables in normal-form coordinates.

use birkhoff::normalform::{birkhoff, HamiltonianSpec};
use birkhoff::observables::{average_classical, matrix_elements_quantum, ObservableSpec};
use birkhoff::phasepoly::{Caps, FockState, Mode, PhasePoly};

pub fn run_example() -> birkhoff::Result<()> {
    let pert = PhasePoly::x(1, 0).pow(3).scale_real(0.1);
    let spec = HamiltonianSpec::well(&[1.0], 0.0, &pert, Caps::order(6));
    let obs = ObservableSpec::mode(vec![1], vec![0], 0);

    let nf = birkhoff(&spec, Mode::Classical, 6)?;
    let avg = average_classical(&obs, &nf, 5)?;
    println!("<z> (classical):");
    for (k, c) in avg.average.iter() {
        println!("  A^{:?}: {:+.6e} {:+.6e}i", k.l, c.re, c.im);
    }

    let nfq = birkhoff(&spec, Mode::Quantum, 6)?;
    let melem = matrix_elements_quantum(&obs, &nfq, 5)?;
    // The hbar^0 part of the matrix elements is the classical average.
    assert!(melem.average.hbar_slice(0).max_abs_diff(&avg.average) < 1e-14);
    let hbar = 0.01;
    for mu in 0..4 {
        let state = FockState::new(vec![mu], 0);
        let v = melem.average.eval(&state.actions(hbar), state.energy(hbar), hbar);
        println!("mu {mu}: <mu|z|mu> = {:+.6e}", v.re);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
