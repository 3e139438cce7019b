use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is constant; it has no roots")]
    ConstantPolynomial,
    #[error("root iteration did not converge (worst relative residual {residual:e})")]
    NonConvergence { residual: f64 },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("all four Pauli components are zero")]
    AllZero,
    #[error("determinant is constant; the matrix polynomial has no isolated zeros")]
    ConstantDeterminant,
    #[error("cannot classify an empty point set")]
    EmptyInput,
    #[error("no transition bracketed by [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },
    #[error("bounding box is degenerate")]
    DegenerateBox,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse polynomial spec: {0}")]
    Parse(String),
}

impl Error {
    /// Numerical failures are distinguished from bad input so the CLI can
    /// report them with a separate exit status.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. } | Error::NoBracket { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
