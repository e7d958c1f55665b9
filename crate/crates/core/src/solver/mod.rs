//! Sigma-consistent triples, their witnesses and the decision procedure built on them.

mod closure;
mod decide;
mod triple;
mod witness;

pub use closure::{in_acl, is_trivial, realizations, Realizations};
pub use decide::{decide, decide_enumerative, Caps, DecideError};
pub use triple::{
    all_triples, atom_env, consistent_triples, consistent_triples_within, holds_phi,
    is_sigma_consistent, refine_triple, triple_of_element, witness_size, Pattern, Triple,
    MAX_ENUMERATION_ATOMS,
};
pub use witness::{
    solution_table, witness_abstract, witness_via_four_power, TableEntry, Coord, Witness,
    WitnessError,
};
