use thiserror::Error;

/// Exit status: residuals exceed tolerance.
pub const EXIT_RESIDUAL: i32 = 1;
/// Exit status: malformed or invalid input.
pub const EXIT_INPUT: i32 = 2;
/// Exit status: eigenvalue or layout machinery failed.
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("{0}")]
    Core(#[from] cmv_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "ParseError",
            CliError::Validation(_) => "ValidationError",
            CliError::Core(e) if e.is_numerical() => "NumericalError",
            CliError::Core(_) => "ValidationError",
        }
    }

    /// Machine-readable error record.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        })
        .to_string()
    }
}
