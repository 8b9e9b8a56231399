use std::fmt;
use std::process::ExitCode;

use gausssep::Error;

#[derive(Debug)]
pub enum CliError {
    /// The reader closed the output early; not reported.
    BrokenPipe,
    Io(String),
    Parse(String),
    Invalid(String),
    Domain(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Self::BrokenPipe => 0,
            Self::Io(_) => 1,
            Self::Parse(_) => 2,
            Self::Invalid(_) => 3,
            Self::Domain(_) => 4,
            Self::Internal(_) => 5,
        })
    }

    pub fn context(self, prefix: impl fmt::Display) -> Self {
        let wrap = |m: String| format!("{prefix}: {m}");
        match self {
            Self::BrokenPipe => Self::BrokenPipe,
            Self::Io(m) => Self::Io(wrap(m)),
            Self::Parse(m) => Self::Parse(wrap(m)),
            Self::Invalid(m) => Self::Invalid(wrap(m)),
            Self::Domain(m) => Self::Domain(wrap(m)),
            Self::Internal(m) => Self::Internal(wrap(m)),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, m) = match self {
            Self::BrokenPipe => return f.write_str("broken pipe"),
            Self::Io(m) => ("i/o error", m),
            Self::Parse(m) => ("parse error", m),
            Self::Invalid(m) => ("invalid input", m),
            Self::Domain(m) => ("domain error", m),
            Self::Internal(m) => ("internal error", m),
        };
        write!(f, "{kind}: {m}")
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let m = e.to_string();
        match e {
            Error::InvalidParameter(_)
            | Error::NotHermitian { .. }
            | Error::NotCovarianceLayout { .. } => Self::Invalid(m),
            Error::Domain(_)
            | Error::PrescriptionInapplicable { .. }
            | Error::DegenerateBound { .. }
            | Error::SingularBlock { .. }
            | Error::SamplingBudget { .. } => Self::Domain(m),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            Self::BrokenPipe
        } else {
            Self::Io(e.to_string())
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => io.into(),
            kind => Self::Io(format!("csv output: {kind:?}")),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        match e.io_error_kind() {
            Some(std::io::ErrorKind::BrokenPipe) => Self::BrokenPipe,
            _ => Self::Io(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
