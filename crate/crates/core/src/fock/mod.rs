//! The Fock space `S`: a super-commutative polynomial algebra on generators
//! `v^i_{-n}`, with its Hopf structure and Heisenberg action.

mod heisenberg;
mod hopf;
mod newton;
mod pairing;
mod random;
mod state;

pub use heisenberg::{
    apply, apply_combination, commutator_check, degree, h_element, h_elements, hh_pairing_series,
    hh_pairing_series_q, hh_pairing_table, power_sum_element, CommutatorCheck,
};
pub use hopf::{
    coproduct, inner_product, multiply, primitive_dimension, tensor, tensor_inner_product,
    FockTensor,
};
pub use newton::{h_from_cycle_index, newton_convert, z_lambda, NewtonDirection, SymPoly};
pub use pairing::{q_pairing, PairingKind, PairingSpec};
pub use random::random_state;
pub use state::{FockState, FockVector, OperatorSymbol, Palette};

use crate::partitions::{enumerate_monomials, Multipartition};

/// Monomial basis of `S_n`.
pub fn basis(palette: &Palette, n: usize) -> Vec<Multipartition> {
    enumerate_monomials(&palette.strict_mask(), n)
}
