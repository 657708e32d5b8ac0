use thiserror::Error;

/// Every failure the library can report.
///
/// Variants split into two families: bad input (the caller asked for
/// something outside an operation's domain) and computational failure
/// (the inputs were fine but the requested certificate could not be
/// produced). [`Error::is_computational`] tells them apart; the CLI maps
/// the two families onto distinct exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field mismatch: Q(sqrt({0})) vs Q(sqrt({1}))")]
    FieldMismatch(i64, i64),
    #[error("division by zero")]
    DivByZero,
    #[error("invalid root-of-unity order {0}")]
    InvalidOrder(u64),
    #[error("argument {0} outside the domain (expected an integer >= 2)")]
    OutOfDomain(i64),
    #[error("period {period} does not divide {n}")]
    PeriodMismatch { period: usize, n: usize },
    #[error("exact entries required, got a numeric literal")]
    ExactnessRequired,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("pole collision at h = {h}")]
    PoleCollision { h: u64 },
    #[error("unknown case id {0}")]
    UnknownCase(u32),
    #[error("every term of the series was skipped")]
    EmptySeries,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("hypotheses violated: {}", .0.join("; "))]
    InvalidHypotheses(Vec<String>),
    #[error("ambiguous: |q| = 1, exponent cannot be isolated")]
    Ambiguous,
    #[error("degenerate basis: rows are linearly dependent")]
    DegenerateBasis,
    #[error("precision too low: {bits} bits cannot certify height {height} ({detail})")]
    PrecisionTooLow {
        bits: u32,
        height: u64,
        detail: String,
    },
    #[error("too many monomials ({0} > 200)")]
    TooManyMonomials(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for failures of the computation itself rather than of the input.
    pub fn is_computational(&self) -> bool {
        matches!(
            self,
            Error::PoleCollision { .. }
                | Error::PrecisionTooLow { .. }
                | Error::DegenerateBasis
                | Error::EmptySeries
                | Error::Ambiguous
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
