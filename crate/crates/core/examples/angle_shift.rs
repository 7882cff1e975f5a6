// Shifting the angles by `2 pi k t` near a periodic orbit moves the frequencies by `2 pi k`;
// conjugating the normal form agrees with recomputing it for the shifted Hamiltonian.

use birkhoff::normalform::{angle_shift, birkhoff, realize_angle_shift, HamiltonianSpec, Setting};
use birkhoff::phasepoly::{Caps, Mode, PhasePoly};

pub fn run_example() -> birkhoff::Result<()> {
    let caps = Caps::new(6, 8);
    let mut pert = PhasePoly::x(1, 0).pow(3).mul_poly(&PhasePoly::cos_mode(1, 1)).scale_real(0.05);
    pert.add_assign_poly(&PhasePoly::x(1, 0).pow(4).scale_real(0.02));
    let spec = HamiltonianSpec::periodic(&[0.3], 0.0, &pert, caps);
    let nf = birkhoff(&spec, Mode::Classical, 6)?;
    let k = [1];
    let shifted = realize_angle_shift(&nf, &k)?;
    let mut moved = angle_shift(&spec.hamiltonian, &k);
    moved.set_caps(caps);
    let direct = birkhoff(
        &HamiltonianSpec { setting: Setting::Periodic, theta: shifted.theta.clone(), hamiltonian: moved, caps },
        Mode::Classical,
        6,
    )?;
    let diff = direct.h_symbol.max_abs_diff(&shifted.h_symbol);
    assert!(diff <= 1e-10);
    println!("frequency 0.3 -> {:.12}", shifted.theta[0]);
    println!("conjugated vs recomputed normal form: max difference {diff:.1e}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
