use thiserror::Error;

/// Errors raised by the library.
///
/// Input problems (bad files, bad arguments, disconnected graphs) are kept
/// apart from instances that are well formed but outside what a routine
/// accepts; the CLI maps the two groups to different exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("graph is disconnected: no path between `{0}` and `{1}`")]
    Disconnected(String, String),

    #[error("{what} exceeds the limit of {limit} (got {got})")]
    TooLarge {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("graph has a bridge ({0}-{1}); contract bridges before decomposing")]
    HasBridge(String, String),

    #[error("distance matrix is not a metric ({0} violations, first: {1})")]
    NotMetric(usize, String),

    #[error("graph is not complete: pair `{0}`-`{1}` has no edge")]
    NotComplete(String, String),

    #[error("not a (1,2)-graph: edge `{0}`-`{1}` has weight {2}")]
    NotOneTwo(String, String, f64),

    #[error("tour is not Hamiltonian: {0}")]
    NotHamiltonian(String),
}

impl Error {
    /// True for errors caused by malformed input rather than an instance the
    /// requested routine cannot handle.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::Invalid(_) | Error::Disconnected(..)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
