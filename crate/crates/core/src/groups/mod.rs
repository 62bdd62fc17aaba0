//! Matrix models of the classical groups and their unipotent classes.

mod model;
mod unipotent;

pub use model::{cayley, jordan_type, regular_ss_rep, GroupElement, GroupModel, Provenance, Variant};
pub use unipotent::{
    closure_leq, component_group_order, find_class, springer_fiber_dim, unipotent_partitions, unipotent_rep,
    validate_partition, UnipotentClass,
};
