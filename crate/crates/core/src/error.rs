use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a trajectory stopped early.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularReason {
    /// `A_n + B_n z_n` is exactly zero.
    ZeroDenominator,
    /// The floating backends produced an infinity or NaN.
    NonFinite,
}

impl std::fmt::Display for SingularReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingularReason::ZeroDenominator => f.write_str("zero denominator"),
            SingularReason::NonFinite => f.write_str("non-finite value"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("model order must be at least 1")]
    ZeroOrder,

    #[error("coefficient {name} vanishes at index {index}")]
    ZeroCoefficient { name: &'static str, index: usize },

    #[error("ecological constraint violated at index {index}: {detail}")]
    Ecology { index: usize, detail: String },

    /// The single-step map hit the forbidden set: `A_n + B_n z = 0`.
    #[error("singularity at n = {index} (z = {z}): {reason}")]
    Singular {
        index: usize,
        z: String,
        reason: SingularReason,
    },

    /// A closed-form denominator vanished for strand `j` after `n` strand steps.
    #[error("closed form is singular at n = {n}, j = {j}")]
    ClosedFormSingular { n: usize, j: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cannot parse {what} from {input:?}: {detail}")]
    Parse {
        what: &'static str,
        input: String,
        detail: String,
    },
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, detail: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_owned(),
            detail: detail.into(),
        }
    }
}
