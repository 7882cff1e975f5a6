// Symplectic diagonalisation of a positive definite quadratic form.

use birkhoff::fermi::{symplectic_spectrum, williamson};
use nalgebra::DMatrix;

pub fn run_example() -> birkhoff::Result<()> {
    let a = DMatrix::from_row_slice(
        4,
        4,
        &[2.0, 0.3, 0.1, 0.0, 0.3, 1.0, 0.0, 0.2, 0.1, 0.0, 1.5, 0.0, 0.0, 0.2, 0.0, 3.0],
    );
    let frame = williamson(&a)?;
    let spectrum = symplectic_spectrum(&a);
    assert!(frame.symplectic_residual <= 1e-10);
    assert!(frame.diagonal_residual <= 1e-9);
    for (l, s) in frame.lambda.iter().zip(&spectrum) {
        assert!((l - s).abs() <= 1e-10);
    }
    println!("symplectic frequencies: {:?}", frame.lambda);
    println!("S^T J S - J residual {:.1e}, S^T A S - diag residual {:.1e}", frame.symplectic_residual, frame.diagonal_residual);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
