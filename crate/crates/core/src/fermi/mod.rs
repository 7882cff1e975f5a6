//! Symplectic linear algebra for Fermi coordinates: Williamson normal form, rotation invariants
//! of symplectic frames and their reconstruction, and the Fermi frames of Schrodinger operators
//! and of periodic orbits.

mod general;
mod invariants;
mod periodic;
mod schrodinger;
mod williamson;

pub use general::{fermi_general, linear_images, quadratic_hessian, substitute_linear, FermiFrame};
pub use invariants::{
    best_pair, determinant_sums, invariants_from, reconstruct_symplectic, reconstruct_with_pairs,
    InvariantEntry, InvariantFamily, Reconstruction,
};
pub use periodic::{
    fermi_periodic, generator_trace, loop_data, spectral_derivative, PeriodicLoop,
};
pub use schrodinger::{fermi_schrodinger, SchrodingerFrame, XPoly};
pub use williamson::{symplectic_spectrum, williamson, SymplecticFrame};
