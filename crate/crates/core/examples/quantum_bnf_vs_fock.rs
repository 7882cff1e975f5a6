// Quantum normal form of `(x^2 + xi^2)/2 + eps x^4` against eigenvalues of the truncated matrix
// `(X^2 + Xi^2)/2 + eps X^4` built from ladder operators.

use birkhoff::normalform::{birkhoff, HamiltonianSpec};
use birkhoff::phasepoly::{Caps, Mode, PhasePoly};
use nalgebra::DMatrix;

fn fock_levels(eps: f64, hbar: f64, dim: usize) -> Vec<f64> {
    let big = dim + 4;
    let mut a = DMatrix::<f64>::zeros(big, big);
    for k in 1..big {
        a[(k - 1, k)] = (k as f64 * hbar).sqrt();
    }
    let ad = a.transpose();
    let x = (&a + &ad) * (0.5f64).sqrt();
    // xi = i (a* - a)/sqrt 2, so xi^2 = -(a* - a)^2 / 2.
    let d = &ad - &a;
    let xi2 = -(&d * &d) * 0.5;
    let x2 = &x * &x;
    let h = (&x2 + &xi2) * 0.5 + (&x2 * &x2) * eps;
    let h = h.view((0, 0), (dim, dim)).into_owned();
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|p, q| p.partial_cmp(q).unwrap());
    ev
}

pub fn run_example() -> birkhoff::Result<()> {
    let eps = 0.05;
    let pert = PhasePoly::x(1, 0).pow(4).scale_real(eps);
    let spec = HamiltonianSpec::well(&[1.0], 0.0, &pert, Caps::order(8));
    let nf = birkhoff(&spec, Mode::Quantum, 8)?;
    for hbar in [0.02, 0.01] {
        let ev = fock_levels(eps, hbar, 150);
        for (mu, e) in ev.iter().take(5).enumerate() {
            let h = nf.h.eval(&[(mu as f64 + 0.5) * hbar], 0.0, hbar).re;
            assert!((h - e).abs() < 1e-7);
            println!("hbar {hbar:<5} mu {mu}: matrix {e:.15} normal form {h:.15} diff {:+.2e}", h - e);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
