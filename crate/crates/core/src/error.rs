use thiserror::Error;

/// Errors raised by the arrangement and derivation pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("hyperplane {index} has the zero form")]
    ZeroForm { index: usize },

    #[error("hyperplanes {first} and {second} define the same hyperplane")]
    DuplicateHyperplane { first: usize, second: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("need dimension at least {min}, found {found}")]
    DimensionTooSmall { min: usize, found: usize },

    #[error("hyperplane index {index} out of range for {len} hyperplanes")]
    IndexOutOfRange { index: usize, len: usize },

    /// Division of a central characteristic polynomial by `t - 1` left a
    /// remainder. Never expected; indicates a bug in lattice construction.
    #[error("characteristic polynomial is not divisible by t - 1")]
    NonzeroRemainder,

    #[error("the empty arrangement has no reduced characteristic polynomial")]
    EmptyArrangement,

    #[error("flat is not in the intersection lattice")]
    FlatNotInLattice,

    #[error("multiarrangement has total multiplicity zero")]
    EmptyMultiarrangement,

    #[error("expected rank {expected}, found rank {found}")]
    WrongRank { expected: usize, found: usize },

    #[error("vector field components are not homogeneous of one degree")]
    NotHomogeneous,

    #[error("basis element {index} is not a logarithmic derivation")]
    NotADerivation { index: usize },

    /// An exact sigma coefficient exceeded the matching b coefficient on
    /// inputs tagged tame on both sides.
    #[error("coefficient inequality violated at index {index}: b = {b}, sigma = {sigma}")]
    TheoremViolation { index: usize, b: i64, sigma: i64 },

    #[error("prime {prime} does not exceed the bad-prime bound {bound}")]
    BadPrime { prime: u64, bound: String },

    #[error("need at least {needed} primes, got {got}")]
    InsufficientPrimes { needed: usize, got: usize },

    #[error("point counts do not interpolate to a monic integer polynomial")]
    InconsistentCounts,

    #[error("{q}^{dim} points exceed the enumeration limit")]
    OracleTooLarge { q: u64, dim: usize },

    #[error("{location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
