//! Input parsing, report assembly and ensemble sweeps behind the `cmvtrace` binary.

pub mod error;
pub mod input;
pub mod report;
pub mod sweep;

pub use error::CliError;
pub use input::{parse_input, parse_input_file, InputDocument};
pub use report::{run_analyze, AnalyzeOutcome, AnalyzeReport};
pub use sweep::{run_random_sweep, EnsembleSpec, SweepSummary};
