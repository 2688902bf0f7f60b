mod block;
mod decomposition;

pub use block::{
    block_coefficients, chi_block, chi_signed_closed, foulkes, foulkes_all, foulkes_inverse_check, from_coefficients,
    generalized_binomial, is_block_character, length_power_determinant, length_power_matrix, q_block_check,
    q_block_expansion, q_block_threshold, transform_round_trip, BlockFunction,
};
pub use decomposition::{
    branching_check, conjugate_descent_witness, duality_check, foulkes_multiplicities, labeling_twist,
    properties_check, signed_foulkes_combinatorial, summed_multiplicity_branching, unsummed_multiplicity_branching,
};
