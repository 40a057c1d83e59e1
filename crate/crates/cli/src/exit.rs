use std::fmt;
use std::io;
use std::path::Path;

use convopoly::Error;

/// A failed run, classified by exit code.
#[derive(Debug)]
pub enum Failure {
    /// 1
    Io(String),
    /// 2
    Usage(String),
    /// 3
    Cap(Error),
    /// 4
    Input(String),
    /// 5
    Invariant(String),
}

impl Failure {
    pub fn io(path: &Path, e: io::Error) -> Self {
        Failure::Io(format!("{}: {e}", path.display()))
    }

    pub fn from_core(e: Error) -> Self {
        if e.is_cap() {
            return Failure::Cap(e);
        }
        match e {
            Error::Invariant(_) | Error::FlowViolation { .. } | Error::WalkNotClosed => {
                Failure::Invariant(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }

    pub fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Input(_) => 4,
            Failure::Invariant(_) => 5,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Io(m) | Failure::Usage(m) | Failure::Input(m) | Failure::Invariant(m) => f.write_str(m),
            Failure::Cap(e) => write!(f, "{e} (raise the limit with --cap-cycles or --max-d)"),
        }
    }
}
