use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("division by the zero function")]
    DivisionByZero,

    #[error("the zero function has no order or degree")]
    ZeroFunction,

    #[error("pullback along a constant map")]
    ConstantPullback,

    #[error("{0} is not a monic irreducible polynomial over Q")]
    NotIrreducible(String),

    #[error("critical tuple for degree {d} needs {expected} entries, got {got}")]
    TupleLength { d: usize, expected: usize, got: usize },

    #[error("polynomial degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },

    #[error("derivative does not split over Q(t): found {found} of {degree} roots")]
    NotSplit { found: usize, degree: usize },

    #[error("iteration count {n} exceeds the cap {cap}")]
    IterationCap { n: usize, cap: usize },

    #[error("size {size} exceeds the cap {cap}")]
    SizeCap { size: u128, cap: u128 },

    #[error("point is not periodic of exact period {period}")]
    NotPeriodic { period: usize },

    #[error("conjugating map has zero linear coefficient")]
    DegenerateConjugacy,

    #[error("valuation indeterminate at place {place} even with {cap} expansion terms")]
    PrecisionExhausted { place: String, cap: usize },

    #[error("value {value} lies outside [{low}, {high}]")]
    OutOfRange { value: String, low: String, high: String },

    #[error("a critical point is zero, so 0 is superattracting and the gap lemma is vacuous")]
    Superattracting,

    #[error("S-set undefined: the first critical point is zero")]
    ZeroFirstCritical,

    #[error("no non-isotrivial family with constant multiplier in this normal form at d = 2")]
    NoZeroRatioFamily,

    #[error("ratio {x} has no normal-form realization at d = 2 with the marked point 0")]
    RatioUnrealizable { x: String },

    #[error("`{0}` is not a critical point")]
    NotCritical(String),

    #[error("normal form needs {0}")]
    NotNormalizable(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}
