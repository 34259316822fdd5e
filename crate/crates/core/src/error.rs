use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("integer overflow in coefficient arithmetic")]
    Overflow,

    #[error("no smaller ring: cannot truncate the ring in 0 variables")]
    NoSmallerRing,

    #[error("variable-count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("label {label} has {rows} rows, more than the {n} variables available")]
    TooManyRows { label: String, rows: usize, n: usize },

    #[error("oracle scale exceeded: {n} variables (limit {limit})")]
    OracleScaleExceeded { n: usize, limit: usize },

    #[error("polynomial is not symmetric: {0}")]
    NotSymmetric(String),

    #[error("incompatible sequence at n = {n}: truncation disagrees on {labels}")]
    IncompatibleSequence { n: usize, labels: String },

    #[error("degree bound violated at n = {n}: degree {degree} exceeds declared bound {bound}")]
    DegreeBoundExceeded { n: usize, degree: usize, bound: usize },

    #[error("provider returned an element in {found} variables at probe n = {n}")]
    ProviderIndex { n: usize, found: usize },

    #[error("index mismatch: expected category index {expected}, found {found}")]
    IndexMismatch { expected: usize, found: usize },

    #[error("shortening map out of index {from_index} violates its contract on {label}: {reason}")]
    ShorteningViolation {
        from_index: usize,
        label: String,
        reason: String,
    },

    #[error("stabilization witness violated at index {index} on label {label}: {reason}")]
    WitnessViolated {
        index: usize,
        label: String,
        reason: String,
    },

    #[error("label {label} has level {level}, above the object's level bound {bound}")]
    LevelExceeded {
        label: String,
        level: u32,
        bound: u32,
    },

    #[error("anchor index {anchor} is below the stabilization witness {witness} for level {level}")]
    AnchorBelowWitness {
        anchor: usize,
        witness: usize,
        level: u32,
    },

    #[error("index {index} is beyond the presented horizon {horizon}")]
    BeyondPresentation { index: usize, horizon: usize },

    #[error("objects belong to different inverse systems ({left} vs {right})")]
    DifferentSystems { left: String, right: String },

    #[error("object belongs to system {found}, expected {expected}")]
    ForeignSystem { expected: String, found: String },

    #[error("incompatible prefix at index {index}: {reason}")]
    IncompatiblePrefix { index: usize, reason: String },

    #[error("morphism shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid system presentation: {0}")]
    InvalidSystem(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
