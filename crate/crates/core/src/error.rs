use std::path::PathBuf;

/// Errors produced by the synthesis engine, the metrics and the file formats.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {index} lies at the origin, radial direction undefined")]
    DegenerateDirection { index: usize },

    #[error("invalid transform: {0}")]
    InvalidTransform(String),

    #[error("voxelization requires a watertight mesh: {0}")]
    Topology(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("empty support: {0}")]
    EmptySupport(String),

    #[error("no nonempty cavity after {attempts} attempts")]
    DegenerateCavity { attempts: usize },

    #[error("alpha value {value} at voxel {index} is outside [0, 1]")]
    InvalidAlpha { index: usize, value: f32 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{}: malformed file at byte {offset}: {message}", path.display())]
    Format {
        path: PathBuf,
        offset: u64,
        message: String,
    },

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Whether the error stems from user-supplied configuration or parameters,
    /// as opposed to a failure while processing data.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::InvalidTransform(_)
                | Error::GridMismatch(_)
                | Error::Config(_)
                | Error::InvalidInput(_)
                | Error::Parse { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
