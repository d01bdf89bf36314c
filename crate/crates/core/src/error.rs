use std::fmt;

use thiserror::Error;

/// Everything that can go wrong in `runslab-core`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty permutation")]
    Empty,

    #[error("length {n} exceeds the hard cap of {cap}")]
    TooLong { n: usize, cap: usize },

    #[error("duplicate {0}")]
    Duplicate(u64),

    #[error("entry {value} out of range 1..={n}")]
    OutOfRange { value: u64, n: usize },

    #[error("invalid entry {0:?}")]
    InvalidToken(String),

    #[error("digit-string form only allowed for n <= 9 (got {0} digits); delimit entries with spaces or commas")]
    DigitStringTooLong(usize),

    #[error("{value} is in T but not in U")]
    NotSubset { value: u32 },

    #[error("position {i} outside 1..={n}")]
    PositionOutOfRange { i: usize, n: usize },

    #[error("generator set is for n = {expected}, permutation has length {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("group element mask {mask:#b} has bits beyond m = {m}")]
    MaskOutOfRange { mask: u32, m: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("not divisible by (1+z) at stage {stage}: remainder {remainder}")]
    Divisibility { stage: u32, remainder: i128 },

    #[error("multiplicity at -1 is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("coefficient overflow")]
    Overflow,

    #[error("polynomial span of {0} coefficients is too large for dense arithmetic")]
    SpanTooLarge(u64),

    #[error("invalid polynomial encoding: {0}")]
    Decode(String),

    #[error("{0}")]
    CapExceeded(CapExceeded),

    #[error("length must be at least 1")]
    ZeroLength,

    #[error("unknown property {0:?}")]
    UnknownProperty(String),

    #[error("invalid range {min}..={max}")]
    InvalidRange { min: usize, max: usize },
}

/// Details of a refused enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapExceeded {
    pub what: &'static str,
    pub n: usize,
    pub cap: usize,
    pub forced: bool,
}

impl fmt::Display for CapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cost = crate::enumerate::factorial(self.n as u32)
            .map(|v| v.to_string())
            .unwrap_or_else(|| "more than 2^64".to_owned());
        write!(
            f,
            "{} for n = {} would visit {}! = {} permutations; cap is {}",
            self.what, self.n, self.n, cost, self.cap
        )?;
        if !self.forced {
            write!(f, " (use --force to raise it to the hard cap)")?;
        }
        Ok(())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
