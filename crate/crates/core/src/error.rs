use thiserror::Error;

/// Everything that can go wrong while building groups, maps and certificates.
///
/// Points in messages are 1-based, matching the cycle notation used for I/O.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {actual}")]
    DegreeMismatch { expected: usize, actual: usize },
    #[error("malformed cycle notation: {0}")]
    MalformedCycles(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("element is not in the group: {0}")]
    NotInGroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("group is not transitive")]
    NotTransitive,
    #[error("partition is not invariant under the group")]
    NotInvariant,
    #[error("subgroup is not a direct product of nonabelian simple groups: {0}")]
    NotSemisimple(String),
    #[error("subgroup is not a minimal normal subgroup")]
    NotMinimalNormal,
    #[error("normal subgroup has an abelian composition factor")]
    AbelianFactor,
    #[error("constructed degree {m} violates the bound for n = {n} (transitive: {transitive})")]
    BoundViolation { m: usize, n: usize, transitive: bool },
    #[error("structural check failed: {0}")]
    LemmaViolated(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCapExceeded { order: String, cap: u64 },
    #[error("product action needs at least two points in the base domain")]
    DegenerateBase,
    #[error("bad points for the product-action orbit: {0}")]
    BadPoints(String),
    #[error("map is not injective: {0}")]
    NotInjective(String),
    #[error("generator images do not define a homomorphism")]
    NotAHomomorphism,
    #[error("kernel mismatch: {0}")]
    KernelMismatch(String),
    #[error("bound mismatch: {0}")]
    BoundMismatch(String),
    #[error("trace mismatch: {0}")]
    TraceMismatch(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("input error: {0}")]
    Input(String),
}

impl Error {
    /// Errors that indicate a bug in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::BoundViolation { .. }
                | Error::LemmaViolated(_)
                | Error::NotAHomomorphism
                | Error::SearchExhausted(_)
        )
    }

    /// Name of the variant, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::MalformedCycles(_) => "MalformedCycles",
            Error::PointOutOfRange { .. } => "PointOutOfRange",
            Error::NotASubgroup(_) => "NotASubgroup",
            Error::NotInGroup(_) => "NotInGroup",
            Error::NotNormal(_) => "NotNormal",
            Error::NotTransitive => "NotTransitive",
            Error::NotInvariant => "NotInvariant",
            Error::NotSemisimple(_) => "NotSemisimple",
            Error::NotMinimalNormal => "NotMinimalNormal",
            Error::AbelianFactor => "AbelianFactor",
            Error::BoundViolation { .. } => "BoundViolation",
            Error::LemmaViolated(_) => "LemmaViolated",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::OrderCapExceeded { .. } => "OrderCapExceeded",
            Error::DegenerateBase => "DegenerateBase",
            Error::BadPoints(_) => "BadPoints",
            Error::NotInjective(_) => "NotInjective",
            Error::NotAHomomorphism => "NotAHomomorphism",
            Error::KernelMismatch(_) => "KernelMismatch",
            Error::BoundMismatch(_) => "BoundMismatch",
            Error::TraceMismatch(_) => "TraceMismatch",
            Error::SearchExhausted(_) => "SearchExhausted",
            Error::Input(_) => "Input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
