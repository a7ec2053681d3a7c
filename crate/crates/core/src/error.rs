use thiserror::Error;

/// Everything that can go wrong while evaluating a function, an integral or a bound.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A hypothesis of an inequality is not met at the requested point.
    #[error("hypothesis violated for {inequality}: requires {condition}")]
    Hypothesis {
        inequality: &'static str,
        condition: &'static str,
    },

    /// The result does not fit in an `f64`.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A series did not meet its stopping rule within the term budget.
    #[error("series did not converge within {max_terms} terms ({what})")]
    NonConvergence {
        what: &'static str,
        max_terms: usize,
    },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error(
        "quadrature hit the subdivision limit of {limit} (estimated error {error:e}, target {target:e})"
    )]
    SubdivisionLimit {
        limit: usize,
        error: f64,
        target: f64,
    },

    /// A configuration value is out of range.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// An error raised while evaluating a specific grid point.
    #[error("{context}: {source}")]
    Context { context: String, source: Box<Error> },
}

impl Error {
    /// True for errors caused by the caller's arguments rather than by numerics.
    pub fn is_domain(&self) -> bool {
        match self {
            Error::Domain(_) | Error::Hypothesis { .. } | Error::Config(_) => true,
            Error::Context { source, .. } => source.is_domain(),
            _ => false,
        }
    }

    pub fn with_context(self, context: impl Into<String>) -> Error {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
