// Frequencies from the lowest levels of a harmonic spectrum, exact and perturbed.

use birkhoff::inversion::{harmonic_levels, recover_frequencies, SpectrumList};

pub fn run_example() -> birkhoff::Result<()> {
    let theta = [1.0, 2f64.sqrt(), 3f64.sqrt()];
    let hbar = 0.1;
    let levels = harmonic_levels(&theta, hbar, 300);
    let exact = recover_frequencies(&SpectrumList { levels: levels.clone(), hbar }, 3, 1e-8)?;
    // A deterministic perturbation of size 1e-8 (levels scale with hbar).
    let noisy: Vec<f64> = levels
        .iter()
        .enumerate()
        .map(|(i, l)| l + 1e-8 * ((i * 7919 % 13) as f64 / 6.0 - 1.0))
        .collect();
    let rough = recover_frequencies(&SpectrumList { levels: noisy, hbar }, 3, 1e-6)?;
    for ((e, r), t) in exact.theta.iter().zip(&rough.theta).zip(theta) {
        assert!((e - t).abs() <= 1e-9);
        assert!((r - t).abs() <= 1e-6);
    }
    println!("exact levels: {:?}", exact.theta);
    println!("noisy levels: {:?}", rough.theta);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
