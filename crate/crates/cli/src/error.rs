use thiserror::Error;

/// Failure of a subcommand, mapped onto the process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("oracle size bound exceeded: {0}")]
    SizeBound(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
            CliError::SizeBound(_) => 4,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<bpodc::Error> for CliError {
    fn from(e: bpodc::Error) -> Self {
        use bpodc::Error as E;
        match e {
            E::InstanceTooLarge { .. } | E::TooManyEdges { .. } => {
                CliError::SizeBound(e.to_string())
            }
            E::MalformedLine { .. } | E::EmptyGraph | E::MalformedSchedule { .. } => {
                CliError::Data(e.to_string())
            }
            E::InvalidBounds { .. } | E::UnknownAlgorithm(_) | E::InvalidParameter(_) => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
