// Rebuild a loop of symplectic frames from sampled invariants and generator traces.

use birkhoff::fermi::{fermi_periodic, loop_data};
use birkhoff::linalg::{block_rotation, symplectic_from_factors};
use nalgebra::DMatrix;

pub fn run_example() -> birkhoff::Result<()> {
    let a = DMatrix::from_row_slice(2, 2, &[1.2, 0.3, -0.1, 0.9]);
    let b = DMatrix::from_row_slice(2, 2, &[0.2, 0.1, 0.1, -0.3]);
    let c = DMatrix::from_row_slice(2, 2, &[0.05, 0.0, 0.0, 0.1]);
    let s0 = symplectic_from_factors(&a, &b, &c);
    let m = 256;
    let two_pi = 2.0 * std::f64::consts::PI;
    let samples: Vec<DMatrix<f64>> = (0..m)
        .map(|g| &s0 * block_rotation(&[two_pi * g as f64 / m as f64, 0.0]))
        .collect();
    let (families, traces) = loop_data(&samples);
    let lp = fermi_periodic(&families, &traces)?;
    let worst = lp.theta_dot.iter().map(|td| (td[0] - two_pi).abs()).fold(0.0, f64::max);
    assert!(worst <= 1e-4);
    println!("max |theta_dot_1 - 2 pi| over the grid: {worst:.2e}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
