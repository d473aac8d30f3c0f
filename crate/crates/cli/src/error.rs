use std::io;

/// Anything that stops a run before a verdict exists. Maps to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] adelic_core::Error),
    #[error("in `{input}`: {source}")]
    Input { input: String, source: adelic_core::Error },
    #[error("cannot write report: {0}")]
    Io(#[from] io::Error),
    #[error("cannot encode report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Config(String),
}

impl CliError {
    pub fn input(input: &str, source: adelic_core::Error) -> Self {
        CliError::Input { input: input.to_string(), source }
    }
}
