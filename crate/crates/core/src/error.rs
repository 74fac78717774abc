use thiserror::Error;

/// Failures reported by the exact engines.
///
/// `Defect` marks a broken mathematical invariant (a division that must be
/// exact was not). It is never expected in practice and callers map it to a
/// distinct exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision must be positive, got {0}")]
    NonPositiveEps(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("scan cap {cap} exceeded while searching for {what}")]
    ResourceCap { cap: u64, what: &'static str },
    #[error("internal invariant violated: {0}")]
    Defect(String),
    #[error("degenerate approximant at n = {n}: F(r) = 0")]
    DegenerateApproximant { n: u64 },
    #[error("continued fraction digit {index} is not determined by the enclosure")]
    IndeterminateDigit { index: usize },
    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;
