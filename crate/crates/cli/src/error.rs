use symspace_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        Self::Config(msg.into())
    }

    /// 2 for bad input, 1 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Core(
                CoreError::NonFinite
                | CoreError::Truncation { .. }
                | CoreError::NotIntegrable(_)
                | CoreError::IllConditioned(_)
                | CoreError::WallProximity { .. }
                | CoreError::JetOrder { .. },
            ) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Config(_) => "config",
            Self::Core(_) if self.exit_code() == 1 => "numerical",
            Self::Core(_) => "input",
            Self::Io(_) => "io",
            Self::Json(_) => "json",
            Self::Csv(_) => "csv",
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
