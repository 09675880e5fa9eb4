use thiserror::Error;

/// Errors shared by every layer of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("left endpoint {0} is not below right endpoint {1}")]
    GapViolation(String, String),
    #[error("ordinal nesting depth {0} exceeds the configured bound {1}")]
    OrdinalOverflow(usize, usize),
    #[error("recursion depth {0} exceeds the configured bound {1}")]
    DepthExceeded(usize, usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument is not infinitesimal")]
    NotInfinitesimal,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("exponent outside the supported classes of g/h: {0}")]
    UnsupportedExponent(String),
    #[error("argument is not purely infinite")]
    NotPurelyInfinite,
    #[error("argument must be positive")]
    NotPositive,
    #[error("argument must exceed every natural number")]
    NotInfinite,
    #[error("real constants are closed under neither exp nor log in exact mode: {0}")]
    CoefficientNotRepresentable(String),
    #[error("a real constant has no path")]
    NoPath,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable code, also used as the CLI exit code.
    pub fn code(&self) -> i32 {
        match self {
            Error::UnsupportedExponent(_) => 3,
            Error::DepthExceeded(..) | Error::OrdinalOverflow(..) => 5,
            _ => 4,
        }
    }
}
