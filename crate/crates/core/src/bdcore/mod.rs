//! BD pairs and triples: verification, standard orderings, parameter
//! arrays, bases, affine equivalence and isomorphism.

mod ordering;
mod sequence;
mod triple;

pub use ordering::{check_bijection_family, find_standard_ordering, StandardOrdering};
pub use sequence::{
    affine_equivalent_sequences, classical_sequence, compute_base, difference_ratios, has_distinct_entries,
    is_b_recurrent, q_from_base, quantum_sequence, reduced_kind, sequence_base, valid_q, AffineMap,
    ParameterArray, ReducedKind,
};
pub use triple::{
    affine_shift_triple, conjugate_triple, is_isomorphic, operator_affine_relation,
    ordering_affine_relation, verify_bd_pair, verify_bd_triple, BdTriple, VerifiedPair,
    VerifiedTriple,
};
