use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid base: {0}")]
    InvalidBase(String),

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("invalid digits: {0}")]
    InvalidDigits(String),

    #[error("root of the unit equation is not greater than 1")]
    RootAtOrBelowOne,

    #[error("digit decision undecidable at {bits} bits")]
    BoundaryUndecidable { bits: u32 },

    #[error("word is not admissible")]
    NotAdmissible,

    #[error("word is not full")]
    NotFull,

    #[error("word is not self-admissible")]
    NotSelfAdmissible,

    #[error("length {n} exceeds enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("digit eps*_{index} vanishes")]
    ZeroTerminalDigit { index: usize },

    #[error("block length {d} must exceed {min}")]
    BlockTooShort { d: u64, min: u64 },

    #[error("empty level set: a = {a} exceeds b/(1+b) for b = {b}")]
    EmptyLevelSet { a: String, b: String },

    #[error("invalid target: {0}")]
    InvalidTarget(String),

    #[error("schedule entry overflows 64 bits at level {level}")]
    ScheduleOverflow { level: usize },

    #[error("profile depth {depth} does not exceed tail start {tail_start}")]
    InsufficientDepth { depth: usize, tail_start: usize },

    #[error("no parameter in range realizes the word")]
    EmptyCylinder,

    #[error("{0} is a simple Parry number")]
    SimpleParryEndpoint(String),

    #[error("no index N <= {max} satisfies the prefix order condition")]
    PrefixOrderViolation { max: usize },

    #[error("sample has {got} points, at least {need} required")]
    InsufficientSample { got: usize, need: usize },

    #[error("outside the formula domain: {0}")]
    DomainError(String),

    #[error("witness check failed: {0}")]
    WitnessFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
