use thiserror::Error;

/// Crate-wide error type. Scoring attaches the offending frame id via
/// [`Error::for_frame`] so batch runs can report which record failed.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate point configuration: {0}")]
    DegenerateConfiguration(&'static str),

    #[error("source points have zero variance")]
    ZeroVariance,

    #[error("point behind camera (z = {z})")]
    BehindCamera { z: f64 },

    #[error("mesh has no vertices, no faces, or zero surface area")]
    EmptyMesh,

    #[error("point cloud is empty")]
    EmptyCloud,

    #[error("empty input")]
    EmptyInput,

    #[error("point count mismatch: pred {pred}, gt {gt}")]
    CountMismatch { pred: usize, gt: usize },

    #[error("matrix is not a rotation (orthonormality or determinant off by more than 1e-6)")]
    NonRotation,

    #[error("invalid threshold schedule: {0}")]
    InvalidSchedule(&'static str),

    #[error("mesh bounding box has zero extent")]
    ZeroExtent,

    #[error("mask has no foreground pixels")]
    EmptyMask,

    #[error("heatmap has no positive value")]
    AllZero,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("unknown object id '{0}'")]
    UnknownObject(String),

    #[error("no curve data for this track")]
    NoCurveData,

    #[error("reports mix different tracks")]
    MixedTracks,

    #[error("report aggregates do not match rows: {0}")]
    InconsistentReport(String),

    #[error("frame '{frame_id}': {source}")]
    Frame {
        frame_id: String,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub fn for_frame(self, frame_id: &str) -> Error {
        Error::Frame {
            frame_id: frame_id.to_owned(),
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
