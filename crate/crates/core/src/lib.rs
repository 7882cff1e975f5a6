//! Birkhoff normal forms near elliptic wells and elliptic periodic orbits, classical and quantum,
//! together with the inverse problems that recover the Hamiltonian from normal-form and
//! averaged-observable data.
//!
//! Modules, bottom up:
//!
//! - [`phasepoly`]: graded polynomials in `z, zbar, tau` and Fourier modes in `t`, Poisson and
//!   Moyal brackets, Lie transforms, ladder-operator conversions.
//! - [`fermi`]: symplectic normal form of the quadratic part, invariants of symplectic frames and
//!   their reconstruction, Fermi coordinates for Schrodinger operators and periodic orbits.
//! - [`normalform`]: homological equation and the classical/quantum Birkhoff normal form.
//! - [`observables`]: averaged observables, diagonal matrix elements, trace kernels.
//! - [`inversion`]: frequency recovery, trace unmixing, recovery of Taylor coefficients.
//! - [`cli`]: JSON job runner behind the `birkhoff` binary.
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example classical_bnf` is a good start.

pub mod cli;
pub mod error;
pub mod fermi;
pub mod inversion;
pub mod linalg;
pub mod normalform;
pub mod observables;
pub mod phasepoly;

pub use error::{Error, Result};
