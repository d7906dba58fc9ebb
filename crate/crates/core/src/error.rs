use alloc::string::String;

/// Errors raised by the exact-arithmetic and verification layers.
///
/// Most of these signal a broken identity (an implementation bug) rather
/// than a recoverable condition; callers in the test-suites treat them as
/// hard failures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
    #[error("antiderivative of a series with a nonzero z^-1 coefficient")]
    ExponentMinusOne,
    #[error("coefficient of z^{requested} requested but the series is only trusted below z^{order}")]
    TruncationUnderflow { requested: i64, order: i64 },
    #[error("series does not start with a unit constant term")]
    NotUnit,
    #[error("operation is undefined on the zero element")]
    ZeroElement,
    #[error("mode {0} does not belong to the requested generator family")]
    WrongFamily(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid realization parameters: {0}")]
    InvalidParams(String),
    #[error("mode sum is not finite on the given state: {0}")]
    InfiniteModeSum(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
