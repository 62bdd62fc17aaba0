//! From count vectors to interpolated tables, class sets and the verification report.

pub mod counts;
pub mod report;
pub mod sets;
pub mod verify;
pub mod xi;

pub use counts::{variants_of, Counter};
pub use report::{Check, Grade, Report, Status};
pub use sets::{
    cycle_type_class, is_set_partition, minimal_support_sets, phi_map, s_sets, special_piece_sets, springer_char_a,
    ss_sets,
};
pub use verify::{
    cost_estimate, data_checks, derived_primes, verify_all, Criterion, Verifier, VerifyConfig, RANK_THREE_Q_CAP,
    SECOND_A_PRIMES,
};
pub use xi::{certify, xi_from_samples, SampleMode, XiEntry, XiProvenance, XiTable};
