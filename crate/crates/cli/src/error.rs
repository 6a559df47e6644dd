use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("contraction gate failed: {0}")]
    Gate(String),

    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    #[error("{0}")]
    Domain(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed solution file: {0}")]
    Solution(String),
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl ToString) -> Self {
        CliError::Config {
            field: field.into(),
            message: message.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Gate(_) | CliError::NonConvergence(_) => 3,
            _ => 2,
        }
    }
}
