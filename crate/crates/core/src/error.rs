use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size limit exceeded in {what} (cap {limit})")]
    SizeLimit { what: &'static str, limit: usize },

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("numeric consistency error: {0}")]
    Numeric(String),

    #[error("unsupported group: {0}")]
    Unsupported(String),

    /// A named hypothesis of the problem fails, e.g. `(A5)`.
    #[error("assumption {assumption} violated: {detail}")]
    Assumption { assumption: &'static str, detail: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("ambiguous crossing at alpha = {0}")]
    AmbiguousCrossing(f64),

    #[error("malformed configuration: {0}")]
    Config(String),
}

impl Error {
    /// True for errors caused by unusable input files rather than failed checks.
    pub fn is_malformed_input(&self) -> bool {
        matches!(self, Error::Config(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
