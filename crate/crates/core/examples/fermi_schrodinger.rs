// Fermi coordinates for `|xi|^2/2 + V(x)` at a nondegenerate minimum.

use birkhoff::fermi::{fermi_schrodinger, XPoly};

pub fn run_example() -> birkhoff::Result<()> {
    // V = (x1^2 + 2 x2^2)/2 + 0.1 x1^2 x2.
    let v = XPoly::from_terms(2, [(vec![2, 0], 0.5), (vec![0, 2], 1.0), (vec![2, 1], 0.1)]);
    let frame = fermi_schrodinger(&v, 4)?;
    assert!((frame.theta[0] - 1.0).abs() < 1e-14);
    assert!((frame.theta[1] - 2f64.sqrt()).abs() < 1e-14);
    // Pulling the remainder back reproduces the potential.
    let back = frame.potential_from_remainder(&frame.remainder, 4);
    assert!(back.max_abs_diff(&v) < 1e-13);
    println!("theta = {:?}", frame.theta);
    println!("remainder in Fermi coordinates: {:?}", frame.remainder.terms);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
