use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall in two groups: parameter problems the caller can fix
/// (bad bounds, sizes, sets from different fields) and internal findings
/// that mean a construction did not behave as proved (`ZeroAtBstar`,
/// `NotUnique`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value has negative {p}-adic valuation and cannot be reduced mod {p}")]
    NotPIntegral { p: u64 },
    #[error("sets live in different fields (p = {0} vs p = {1})")]
    ContextMismatch(u64, u64),
    #[error("h = {h} exceeds |A| = {size}")]
    BadH { h: usize, size: usize },
    #[error("empty range of cardinalities: {0}")]
    BadBounds(String),
    #[error("empty input set")]
    EmptyInput,
    #[error("wrap excess delta = {delta} too large for {what}")]
    DeltaTooLarge { delta: u64, what: String },
    #[error("the construction needs an odd prime")]
    BadField,
    #[error("parameters out of range: {0}")]
    BadParams(String),
    #[error("set is not asymmetric: A meets -A")]
    NotAsymmetric,
    #[error("cover has {got} elements but the construction needs {needed}")]
    CoverTooSmall { needed: usize, got: usize },
    #[error("cover has {got} elements but the construction needs {needed}")]
    CoverTooLarge { needed: usize, got: usize },
    #[error("point is not a member of the grid row")]
    NotAMember,
    #[error("grid has {size} points, limit is {limit}")]
    GridTooLarge { size: u128, limit: u64 },
    #[error("dense expansion too large: {0}")]
    TooLarge(String),
    #[error("enumeration space of {size} instances exceeds limit {limit}")]
    SpaceTooLarge { size: u128, limit: u64 },
    #[error("the model polynomial vanishes at its distinguished point")]
    ZeroAtBstar,
    #[error("expected a unique non-vanishing grid point, found {0}")]
    NotUnique(u64),
}

impl Error {
    /// True for failures that indicate a broken construction rather than
    /// bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::ZeroAtBstar | Error::NotUnique(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
