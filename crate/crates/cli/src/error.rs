use thiserror::Error;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NO_ORBIT: u8 = 2;
pub const EXIT_ORACLE: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("state ({n_r},{l}): {source}")]
    Expansion { n_r: u32, l: u32, source: pdm_core::Error },

    #[error("oracle failed for state ({n_r},{l}): {source}")]
    Oracle { n_r: u32, l: u32, source: pdm_core::Error },

    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("invalid parameter: {0}")]
    Parameter(#[from] pdm_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) | Self::Io { .. } | Self::Parameter(_) => EXIT_USAGE,
            Self::Expansion { source, .. } => match source {
                pdm_core::Error::InvalidParameter(_) => EXIT_USAGE,
                _ => EXIT_NO_ORBIT,
            },
            Self::Oracle { source, .. } => match source {
                pdm_core::Error::NoStableOrbit(_) | pdm_core::Error::UnstableOrbit { .. } => EXIT_NO_ORBIT,
                _ => EXIT_ORACLE,
            },
        }
    }
}
