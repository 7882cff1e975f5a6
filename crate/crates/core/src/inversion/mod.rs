//! Inverse problems: frequencies from a spectrum, Taylor data of a Hamiltonian from its normal
//! form and averaged observables, and Taylor coefficients of a trace expansion.

mod frequencies;
mod general;
mod schrodinger;
mod unmix;

pub use frequencies::{harmonic_levels, recover_frequencies, Frequencies, SpectrumList};
pub use general::{
    generator_keys, invert_general, normal_form_symbol, OrderReport, RecoveredHamiltonian, RANK_TOL,
};
pub use schrodinger::{invert_schrodinger, schrodinger_observables, RecoveredPotential};
pub use unmix::{identifiable_part, synthesize_trace, unmix_trace, TraceSample, TraceTaylor};
