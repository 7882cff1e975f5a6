//! Graded phase-space polynomials and their classical and quantum calculus.

mod action;
mod bracket;
mod fock;
mod key;
mod ladder;
mod lie;
mod poly;
mod serial;

pub use action::{ActionKey, ActionPoly};
pub use bracket::{bracket, moyal_bracket, poisson_bracket, star_product, Mode};
pub use fock::{diagonal_eval, FockState};
pub use key::{Caps, MonomialKey, TruncationReport};
pub use ladder::{
    ladder_to_weyl, normal_to_weyl, operator_to_weyl_diagonal, p_power_to_weyl,
    weyl_diagonal_to_operator, weyl_power_to_p, weyl_to_normal, Ladder,
};
pub use lie::lie_transform;
pub use poly::{PhasePoly, ZERO_TOL};
pub use serial::{ActionRecord, TermRecord};

pub(crate) use bracket::factorial;
