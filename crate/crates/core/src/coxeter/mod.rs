//! Finite Weyl groups: elements, lengths, conjugacy classes, signed cycle types.

mod group;
mod label;
mod signed;

pub use group::{build_weyl, conjugacy_classes, generator_permutations, minimal_length_reps, ConjClassW, CoxeterGroup, WeylElement};
pub use label::{Family, TypeLabel};
pub use signed::{bipartition_to_s2n, format_bipartition, signed_cycle_type, to_s2n_cycle_type, Bipartition};
