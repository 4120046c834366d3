use std::path::PathBuf;

use thiserror::Error;

/// Exit code for argument and precondition failures.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for numerical failures (non-convergence, ill-conditioning).
pub const EXIT_NUMERICAL: i32 = 3;
/// Exit code for I/O failures.
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid arguments: {0}")]
    Usage(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o failure at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io { .. } => EXIT_IO,
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

/// Splits library failures into bad-argument and numerical classes so the
/// exit status names the right culprit.
impl From<helstrom::Error> for CliError {
    fn from(e: helstrom::Error) -> Self {
        use helstrom::Error::*;
        match e {
            NonFiniteDisplacement { .. }
            | ZeroDimension
            | EmptyEnsemble
            | NonPositiveWeight { .. }
            | WeightSumNotOne { .. }
            | TailToleranceOutOfRange { .. }
            | NonPositiveTolerance { .. }
            | TooManyComponents { .. }
            | EntryCountMismatch { .. }
            | DimensionMismatch { .. }
            | ProbabilityOutOfRange { .. } => CliError::Usage(e.to_string()),
            DisplacementTooLarge { .. }
            | TailToleranceUnreachable { .. }
            | NotHermitian { .. }
            | NoConvergence { .. }
            | TruncationUnsound { .. }
            | GramIllConditioned { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_stable() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Numerical("x".into()).exit_code(), 3);
        let io = CliError::io("/tmp/f")(std::io::Error::other("boom"));
        assert_eq!(io.exit_code(), 4);
    }

    #[test]
    fn library_errors_map_to_the_right_class() {
        let usage: CliError = helstrom::Error::ZeroDimension.into();
        assert_eq!(usage.exit_code(), 2);
        let numerical: CliError = helstrom::Error::NoConvergence {
            sweeps: 100,
            residual: 0.1,
        }
        .into();
        assert_eq!(numerical.exit_code(), 3);
    }
}
