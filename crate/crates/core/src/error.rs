use thiserror::Error;

/// Everything that can go wrong while loading a graph or running a walk.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed graph document: {0}")]
    Syntax(#[from] serde_json::Error),

    #[error("invalid graph ({locus}): {kind}")]
    Validation { locus: String, kind: ValidationKind },

    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("eigensolver did not converge: residual {residual:e} after {sweeps} sweeps")]
    ConvergenceFailure { residual: f64, sweeps: usize },

    #[error("two fermions cannot occupy the same orbital (site {0})")]
    PauliViolation(usize),

    #[error("tensor-space oracle limited to {limit} sites, got {n}")]
    DimensionLimit { n: usize, limit: usize },

    #[error("site {site} out of range for a {n}-site graph")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("probability series is empty or has a single sample")]
    EmptySeries,

    #[error("probability {value} at sample {index} is outside [0, 1]")]
    ProbabilityOutOfRange { index: usize, value: f64 },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("sweep failed at {parameter} = {value}: {source}")]
    SweepPoint {
        parameter: String,
        value: f64,
        #[source]
        source: Box<Error>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationKind {
    NoSites,
    DuplicateSite(usize),
    NonDenseIds { missing: usize },
    SiteOutOfRange(usize),
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    UnknownParameter(String),
    NonFinite,
}

impl std::fmt::Display for ValidationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationKind::NoSites => write!(f, "graph has no sites"),
            ValidationKind::DuplicateSite(id) => write!(f, "duplicate site id {id}"),
            ValidationKind::NonDenseIds { missing } => {
                write!(f, "site ids are not dense, id {missing} is missing")
            }
            ValidationKind::SiteOutOfRange(id) => write!(f, "site {id} does not exist"),
            ValidationKind::SelfLoop(id) => write!(f, "self-loop on site {id}"),
            ValidationKind::DuplicateEdge(a, b) => write!(f, "duplicate edge {{{a},{b}}}"),
            ValidationKind::UnknownParameter(name) => write!(f, "unknown parameter `{name}`"),
            ValidationKind::NonFinite => write!(f, "value is not finite"),
        }
    }
}

impl Error {
    pub(crate) fn validation(locus: impl Into<String>, kind: ValidationKind) -> Self {
        Error::Validation {
            locus: locus.into(),
            kind,
        }
    }

    /// True for errors caused by bad input (as opposed to numerical trouble).
    pub fn is_validation(&self) -> bool {
        match self {
            Error::Syntax(_)
            | Error::Validation { .. }
            | Error::UnknownParameter(_)
            | Error::DimensionMismatch { .. }
            | Error::PauliViolation(_)
            | Error::DimensionLimit { .. }
            | Error::SiteOutOfRange { .. }
            | Error::InvalidGrid(_)
            | Error::EmptySeries
            | Error::ProbabilityOutOfRange { .. }
            | Error::InvalidSweep(_) => true,
            Error::ConvergenceFailure { .. } => false,
            Error::SweepPoint { source, .. } => source.is_validation(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
