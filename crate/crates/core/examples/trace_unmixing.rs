// Taylor coefficients of the matrix-element function from trace samples at integer times.

use birkhoff::inversion::{identifiable_part, synthesize_trace, unmix_trace};
use birkhoff::phasepoly::{ActionKey, ActionPoly};
use num_complex::Complex64;

pub fn run_example() -> birkhoff::Result<()> {
    let theta = [1.0, 2f64.sqrt()];
    let mut b = ActionPoly::new(2);
    b.add_term(ActionKey::new(1, vec![0, 0], 0), Complex64::new(1.0, 0.0));
    b.add_term(ActionKey::new(0, vec![1, 0], 0), Complex64::new(0.5, -0.2));
    b.add_term(ActionKey::new(1, vec![0, 1], 0), Complex64::new(-0.3, 0.0));
    // A tau term aliases onto the action terms: only the combination is seen by the trace.
    b.add_term(ActionKey::new(0, vec![0, 0], 1), Complex64::new(0.25, 0.0));
    let times: Vec<i64> = (1..=200).collect();
    let samples = synthesize_trace(&b, &theta, &times, 2)?;
    let fit = unmix_trace(&samples, &theta, 2, 1e-8)?;
    let want = identifiable_part(&b, &theta);
    let err = fit.b.max_abs_diff(&want) / want.max_abs();
    assert!(err <= 1e-6);
    println!("relative error {err:.2e}; condition numbers {:?}", fit.condition);
    for (k, c) in fit.b.iter() {
        println!("  hbar^{} A^{:?} tau^{}: {:+.6} {:+.6}i", k.p, k.l, k.s, c.re, c.im);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
