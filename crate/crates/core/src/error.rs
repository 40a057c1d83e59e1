use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("window length d = {d} is outside the supported range 1..={max}")]
    DimensionOutOfRange { d: usize, max: usize },

    #[error("ambient size N = {n} is smaller than the window length d = {d}")]
    AmbientTooSmall { n: usize, d: usize },

    #[error("shift j = {j} is outside 1..={d}")]
    ShiftOutOfRange { j: usize, d: usize },

    #[error("cyclic sets live in different groups: Z_{0} vs Z_{1}")]
    ModulusMismatch(u64, u64),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("walk is not closed")]
    WalkNotClosed,

    #[error("flow conservation violated at vertex {vertex}: in-weight {inflow}, out-weight {outflow}")]
    FlowViolation {
        vertex: usize,
        inflow: u64,
        outflow: u64,
    },

    #[error("not a simple cycle of the graph: {0}")]
    NotACycle(String),

    #[error("cycle enumeration exceeded the cap of {cap} cycles")]
    CycleCapExceeded { cap: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid coordinate selection: {0}")]
    InvalidPoints(String),

    #[error("invalid convex weights: {0}")]
    InvalidWeights(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("brute-force enumeration of the {kind} cloud is capped at N <= {cap}, got N = {n}")]
    EnumerationCap {
        kind: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("malformed rational {0:?}")]
    ParseRational(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for the errors raised when a size ceiling (window length, cycle
    /// count, enumeration size) is hit rather than for malformed input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::DimensionOutOfRange { .. }
                | Error::CycleCapExceeded { .. }
                | Error::EnumerationCap { .. }
        )
    }
}
