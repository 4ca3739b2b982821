use pnt_core::PntError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(PntError),
    #[error("contract failure: {0}")]
    Contract(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Contract(_) => 3,
        }
    }
}

impl From<PntError> for CliError {
    /// Bad numeric arguments are usage errors; everything else traces back to input data.
    fn from(e: PntError) -> Self {
        match e {
            PntError::Domain(msg) => CliError::Usage(msg),
            other => CliError::Data(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(PntError::Io(e))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
