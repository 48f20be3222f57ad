use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("no bi-infinite sequence avoids the forbidden words")]
    EmptyLanguage,
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("forbidden words must be nonempty")]
    EmptyForbiddenWord,
    #[error("presentation too large: {0}")]
    TooLarge(String),
    #[error("{count} words exceed the enumeration limit {limit}")]
    ExplosionLimit { count: String, limit: u64 },
    #[error("word is not allowed in the shift")]
    NotAWord,
    #[error("rank out of range")]
    RankOutOfRange,
    #[error("word of length {len} is shorter than the code window {window}")]
    WordTooShort { len: usize, window: usize },
    #[error("block code image is not allowed in the target")]
    ImageNotAllowed,
    #[error("two symbols of a window have no common coordinate")]
    NoCommonCoordinate,
    #[error("shift is not mixing ({0})")]
    NotMixing(String),
    #[error("shift is not irreducible")]
    NotIrreducible,
    #[error("no word of length {0} qualifies")]
    NoneFound(usize),
    #[error("no marker word of length {0} found")]
    NoMarkerFound(usize),
    #[error("only {found} separated words available, {wanted} requested")]
    InsufficientWords { found: usize, wanted: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("entropy shortfall: {0}")]
    EntropyShortfall(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("marker too short: {0}")]
    MarkerTooShort(String),
    #[error("no feasible stage plan: {0}")]
    NoFeasiblePlan(String),
    #[error("rank overflow: {0}")]
    RankOverflow(String),
    #[error("admissibility failure: {0}")]
    AdmissibilityFailure(String),
    #[error("window too short: {0}")]
    WindowTooShort(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
