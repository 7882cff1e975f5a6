//! Birkhoff normal forms: the homological equation, the order-by-order classical and quantum
//! normalization, and the integer shifts of frequencies around periodic orbits.

mod angle;
mod birkhoff;
mod homological;

pub use angle::{angle_shift, realize_angle_shift};
pub use birkhoff::{birkhoff, birkhoff_with_threshold, HamiltonianSpec, NormalFormResult, Setting};
pub use homological::{divisor, solve_homological, DivisorEntry, HomologicalSolution, SMALL_DIVISOR};

#[cfg(test)]
mod tests;
