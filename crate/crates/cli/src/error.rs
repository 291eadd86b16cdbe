use labprim_core::Error as CoreError;

/// Process exit statuses.
pub const STATUS_OK: i32 = 0;
pub const STATUS_UNVERIFIED: i32 = 1;
pub const STATUS_INPUT: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read input {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse input {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("cannot write output {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                CoreError::AssumptionViolated(_)
                | CoreError::SpaceUnverified
                | CoreError::TrivialFamily
                | CoreError::BudgetExceeded { .. } => STATUS_UNVERIFIED,
                _ => STATUS_INPUT,
            },
            _ => STATUS_INPUT,
        }
    }
}
