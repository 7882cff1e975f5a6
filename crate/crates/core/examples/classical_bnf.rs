// Classical Birkhoff normal form of a quartic oscillator `(x^2 + xi^2)/2 + eps x^4`.

use birkhoff::normalform::{birkhoff, HamiltonianSpec};
use birkhoff::phasepoly::{ActionKey, Caps, Mode, PhasePoly};

pub fn run_example() -> birkhoff::Result<()> {
    let eps = 0.05;
    let pert = PhasePoly::x(1, 0).pow(4).scale_real(eps);
    let spec = HamiltonianSpec::well(&[1.0], 0.0, &pert, Caps::order(8));
    let nf = birkhoff(&spec, Mode::Classical, 8)?;
    // h(A) = A + (3/2) eps A^2 - (17/4) eps^2 A^3 + ...
    let a2 = nf.h.get(&ActionKey::new(0, vec![2], 0)).re;
    let a3 = nf.h.get(&ActionKey::new(0, vec![3], 0)).re;
    assert!((a2 - 1.5 * eps).abs() < 1e-14);
    assert!((a3 + 4.25 * eps * eps).abs() < 1e-14);
    assert!(nf.homological_residuals.iter().all(|r| *r <= 1e-12));
    assert!(nf.normal_form_residual <= 1e-12);
    println!("h(A) terms:");
    for (k, c) in nf.h.iter() {
        println!("  A^{:?}: {:+.6e}", k.l, c.re);
    }
    println!("generator pieces: {}", nf.generators.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
