use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or parameter values. Exit code 2.
    #[error("{0}")]
    Usage(String),
    /// Cutoff too small, failed cross-check or other numerical failure. Exit code 3.
    #[error("{0}")]
    Numerical(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Classifies a library error: bad inputs are usage errors, everything
    /// else is numerical.
    pub fn from_core(e: qreading::Error, context: String) -> Self {
        use qreading::Error as E;
        let msg = format!("{context}: {e}");
        match e {
            E::Domain { .. } | E::InvalidTransmitter(_) | E::DegenerateCell(_) => CliError::Usage(msg),
            _ => CliError::Numerical(msg),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}
