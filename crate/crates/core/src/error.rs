use thiserror::Error;

/// Errors produced by validation, construction and the checkers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate operation symbol `{0}` in signature")]
    DuplicateSymbol(String),
    #[error("table for `{symbol}` has {found} entries, expected {expected}")]
    TableLength {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("table entry {value} for `{symbol}` at row {index} is outside carrier 0..{size}")]
    EntryOutOfRange {
        symbol: String,
        index: usize,
        value: usize,
        size: usize,
    },
    #[error("missing table for symbol `{0}`")]
    MissingTable(String),
    #[error("designated constant tuples must be non-empty")]
    MissingConstants,
    #[error("designated tuples have different lengths: |zero| = {zero}, |one| = {one}")]
    ConstantLengthMismatch { zero: usize, one: usize },
    #[error("designated `{which}` coordinate {coord} has value {value}, outside carrier 0..{size}")]
    ConstantOutOfRange {
        which: &'static str,
        coord: usize,
        value: usize,
        size: usize,
    },
    #[error("nullary symbol `{symbol}` evaluates to {found}, but the designated constant is {expected}")]
    DesignationMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("display table has {found} names, expected {expected}")]
    DisplayLength { expected: usize, found: usize },
    #[error("algebras do not share a signature")]
    SignatureMismatch,
    #[error("product of zero factors is not supported")]
    EmptyProduct,

    #[error("term references symbol index {index} outside the signature")]
    UnknownSymbol { index: usize },
    #[error("`{symbol}` applied to {found} arguments, expected {expected}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("term variable x{index} is unbound (assignment has {have} values)")]
    UnboundVariable { index: usize, have: usize },
    #[error("designated-constant index {index} is outside the tuple length {len}")]
    BadConstantIndex { index: usize, len: usize },

    #[error("map covers {found} elements, expected {expected}")]
    MapNotTotal { expected: usize, found: usize },
    #[error("map sends {index} to {value}, outside codomain carrier 0..{size}")]
    MapOutOfRange {
        index: usize,
        value: usize,
        size: usize,
    },
    #[error("map does not preserve `{symbol}` at arguments {args:?}")]
    NotHomomorphism { symbol: String, args: Vec<usize> },
    #[error("map does not preserve the designated `{which}` tuple at coordinate {coord}")]
    ConstantsNotPreserved { which: &'static str, coord: usize },

    #[error("congruences live on different carriers ({left} vs {right})")]
    BaseMismatch { left: usize, right: usize },
    #[error("element {value} is outside carrier 0..{size}")]
    OutOfRange { value: usize, size: usize },
    #[error("partition is not compatible with `{symbol}` at {args:?} vs {others:?}")]
    NotACongruence {
        symbol: String,
        args: Vec<usize>,
        others: Vec<usize>,
    },
    #[error("not a canonical representative array")]
    BadRepresentatives,
    #[error("the two congruences are not complementary factor congruences")]
    NotAFactorPair,
    #[error("system entries {i} and {j} are incompatible: (x_{i}, x_{j}) is not in the join")]
    InvalidSystem { i: usize, j: usize },
    #[error("pair ({}, {}) is not in the generated congruence", pair.0, pair.1)]
    NotInCongruence { pair: (usize, usize) },
    #[error("Maltsev chain exceeds the length cap {limit}")]
    ChainTooLong { limit: usize },
    #[error("witness term exceeds the depth cap {limit}")]
    TermTooDeep { limit: usize },

    #[error("carrier size {size} exceeds cap {cap}")]
    CarrierCap { size: usize, cap: usize },
    #[error("product carrier size {size} exceeds cap {cap}")]
    ProductCap { size: usize, cap: usize },
    #[error("congruence enumeration needs carrier <= {cap}, got {size}")]
    ConEnumCap { size: usize, cap: usize },
    #[error("congruence lattice exceeds {cap} congruences")]
    ConCountCap { cap: usize },
    #[error("direct power of size {size} exceeds cap {cap}")]
    PowerCap { size: u64, cap: u64 },
    #[error("generated free algebra exceeds {cap} elements")]
    FreeSizeCap { cap: usize },

    #[error("the designated tuples do not generate the universal congruence; central machinery refuses to run")]
    ZeroOneCollapse,
    #[error("tuple {0:?} is not a central element")]
    NotCentral(Vec<usize>),
    #[error("a factor pair admits no solution for the central-element system")]
    NoSolution,
    #[error("a central-element system has more than one solution")]
    AmbiguousSolution,
    #[error("central elements are not in bijection with factor congruences")]
    BijectionFailure,
    #[error("formula expects a z-slot of length {expected}, got {found}")]
    ZArityMismatch { expected: usize, found: usize },

    #[error("principal-congruence evidence fails on `{algebra}`: the construction premise does not hold")]
    RexdfcPremise { algebra: String },
    #[error("synthesized formula failed its exhaustive verification")]
    SynthesisVerification,
    #[error("cocone does not identify the pair ({}, {})", pair.0, pair.1)]
    CoconeNotConstant { pair: (usize, usize) },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("bad fixture parameters: {0}")]
    BadFixtureParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
