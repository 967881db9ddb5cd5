use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Engine(#[from] anacont::Error),
}

impl CliError {
    /// 1 for invalid input, 2 for numerical failure.
    pub fn exit_code(&self) -> u8 {
        use anacont::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Engine(e) => match e {
                E::OutOfDisk { .. }
                | E::DegenerateOrder(_)
                | E::InsufficientOrder { .. }
                | E::CenterMismatch(_)
                | E::SectorViolation { .. }
                | E::PoleAtNonpositiveInteger { .. }
                | E::DomainViolation(_)
                | E::MultipleZero(..)
                | E::InvalidInput(_) => 1,
                E::Overflow(_)
                | E::StalledLoop { .. }
                | E::NoConvergence { .. }
                | E::OverlapMismatch { .. }
                | E::InvariantViolation(_) => 2,
            },
        }
    }
}
