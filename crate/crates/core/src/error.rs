use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus p^N = {p}^{n} exceeds the 2^62 word bound")]
    ModulusTooLarge { p: u64, n: u32 },
    #[error("modulus polynomial is not irreducible mod {0}")]
    NotIrreducible(u64),
    #[error("element is not a unit")]
    NotUnit,
    #[error("exact division failed: dividend not divisible at known precision")]
    NotDivisible,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("budget exceeded: {needed} candidates, cap {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
    #[error("non-contraction: Teichmüller iteration stalled after {0} steps")]
    NonContraction(usize),
    #[error("point is not on the variety or lies where the inverted function vanishes")]
    NotOnVariety,
    #[error("Frobenius lift image for variable {0} is not congruent to t^q mod p")]
    InvalidFrobeniusLift(usize),
    #[error("characteristic polynomial coefficient is not Frobenius-invariant at precision")]
    NotFrobeniusInvariant,
    #[error("segment split failed: {0}")]
    SegmentSplitFailed(String),
    #[error("rank overflow: rank {rank} exceeds cap {cap}")]
    RankOverflow { rank: usize, cap: usize },
    #[error("unsupported base: {0}")]
    UnsupportedBase(String),
    #[error("basis overflow: {0}")]
    BasisOverflow(String),
    #[error("Fredholm determinant unstable between bases {b1} and {b2}")]
    Unstable { b1: usize, b2: usize },
    #[error("insufficient degree: no complete slope segment at degree {0}")]
    InsufficientDegree(usize),
    #[error("fiber is supersingular")]
    Supersingular,
    #[error("denominator is not a unit (supersingular contamination or short truncation)")]
    DenominatorNonUnit,
    #[error("p = 2 is unsupported for the Legendre family")]
    P2Unsupported,
    #[error("incompatible operands: {0}")]
    Mismatch(String),
}

impl Error {
    /// True for errors that stem from budget or precision limits rather
    /// than malformed input or a failed identity.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. }
                | Error::PrecisionExhausted(_)
                | Error::ModulusTooLarge { .. }
                | Error::RankOverflow { .. }
                | Error::BasisOverflow(_)
                | Error::Unstable { .. }
        )
    }
}
