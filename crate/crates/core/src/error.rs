use thiserror::Error;

use crate::report::Report;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed value `{0}`")]
    Malformed(String),
    #[error("value {0} is outside [0, 1]")]
    OutOfRange(String),
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("ground set must have at least one element")]
    EmptyGroundSet,
    #[error("ground set has {size} elements; the limit is {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("element names must be non-empty")]
    EmptyName,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("subset mask {mask:#b} uses bits beyond a ground set of size {size}")]
    SubsetOutOfRange { mask: u32, size: usize },
    #[error("expected {expected} entries, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("image index {index} is out of range for a codomain of size {size}")]
    ImageOutOfRange { index: usize, size: usize },
    #[error("ground set mismatch: expected {expected:?}, found {found:?}")]
    GroundMismatch {
        expected: Vec<String>,
        found: Vec<String>,
    },

    #[error("subset {0:#b} is assigned more than once")]
    DuplicateAssignment(u32),
    #[error("no value assigned to subset {0:#b}")]
    MissingAssignment(u32),
    #[error("not a capacity: {0}")]
    NotACapacity(Report),
    #[error("support {support:#b} is not contained in {target:#b}")]
    SupportNotContained { support: u32, target: u32 },

    #[error("an inclusion hyperspace needs at least one generating set")]
    EmptyFamily,
    #[error("the empty set cannot belong to an inclusion hyperspace")]
    EmptySetMember,

    #[error("a finite support must be non-empty")]
    EmptySupport,

    #[error("functional is not defined on observable {0:?}")]
    OutsideDomain(Vec<String>),
    #[error("functional fails the Sugeno axioms: {0}")]
    AxiomsViolated(Report),
    #[error("chain {0} is not monotone")]
    ChainNotMonotone(usize),
    #[error("chain {0} does not approach its target from the required side")]
    ChainTargetMismatch(usize),
    #[error("invalid pseudomultiplication table: {0}")]
    InvalidTable(String),

    #[error("threshold must be positive")]
    ZeroThreshold,
    #[error("not a subgraph: {0}")]
    NotASubgraph(Report),
    #[error("section family is not antitone: {0}")]
    NotAntitone(Report),
}
