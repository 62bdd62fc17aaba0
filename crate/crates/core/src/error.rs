use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("Hecke elements belong to different groups ({0} vs {1})")]
    GroupMismatch(String, String),

    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {p} is not good for type {label}")]
    BadCharacteristic { p: u64, label: String },
    #[error("invalid partition {partition:?} for {label}: {reason}")]
    InvalidPartition { label: String, partition: Vec<usize>, reason: String },
    #[error("repeated or zero eigenvalue in {0:?}")]
    RepeatedEigenvalue(Vec<u64>),

    #[error("sample at q = {q} does not lie on the fitted polynomial")]
    OverdeterminedMismatch { q: String },
    #[error("duplicate abscissa q = {0}")]
    DuplicateAbscissa(String),
    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("interpolated polynomial has non-integer coefficients: {0}")]
    NonIntegerCoefficients(String),

    #[error("coefficients differ on minimal-length elements {first} and {second} of one class")]
    MinCoeffMismatch { first: String, second: String },
    #[error("element is not central: {0}")]
    NotCentral(String),
    #[error("coefficient of {0} has a pole at the specialization point")]
    PoleAtSpecialization(String),

    #[error("character matrix is singular at u = {0}")]
    SingularAtPoint(String),
    #[error("solved traces do not reproduce the count at w = {word}: expected {expected}, got {actual}")]
    FullSystemMismatch { word: String, expected: String, actual: String },

    #[error("flag is not isotropic")]
    NotIsotropic,
    #[error("flag is not self-dual")]
    NotSelfDual,
    #[error("relative position {0:?} is not in the Weyl group of the model")]
    PermutationOutsideSubgroup(Vec<usize>),
    #[error("form cannot be brought to standard shape: {0}")]
    FormMismatch(String),

    #[error("table incomplete: {0}")]
    IncompleteTable(String),
    #[error("no tabulated value for {0}")]
    NotTabulated(String),

    #[error("job too large: {0}")]
    CostTooHigh(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
