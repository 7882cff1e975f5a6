// Recover the Taylor coefficients of a potential from its quantum normal form and the diagonal
// matrix elements of `z^m`, `m` in `{0,1}^n`.

use birkhoff::fermi::{fermi_schrodinger, XPoly};
use birkhoff::inversion::{invert_schrodinger, schrodinger_observables};
use birkhoff::normalform::{birkhoff, HamiltonianSpec};
use birkhoff::observables::average_family;
use birkhoff::phasepoly::{Caps, Mode};

pub fn run_example() -> birkhoff::Result<()> {
    let order = 6;
    let v = XPoly::from_terms(1, [(vec![2], 0.5), (vec![3], 0.1), (vec![4], 0.02)]);
    let frame = fermi_schrodinger(&v, order)?;
    let spec = HamiltonianSpec::well(&frame.theta, frame.energy, &frame.remainder.to_phase(), Caps::order(order));
    let nf = birkhoff(&spec, Mode::Quantum, order)?;
    let data = average_family(&nf, &schrodinger_observables(1), order)?;
    let got = invert_schrodinger(&nf.h, &data, &frame.theta, Mode::Quantum, order, 1e-9)?;
    let back = frame.potential_from_remainder(&got.remainder, order);
    for k in 3..=order {
        let want = v.get(&[k]);
        let have = back.get(&[k]);
        assert!((have - want).abs() <= 1e-8 * want.abs().max(1e-300) || (want == 0.0 && have.abs() < 1e-12));
        println!("a_{k}: input {want:+.12e} recovered {have:+.12e}");
    }
    for r in &got.reports {
        println!("degree {}: {} unknowns, rank {}, residual {:.1e}", r.order, r.unknowns, r.rank, r.residual);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
