use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid depth at pixel ({u}, {v})")]
    InvalidPixel { u: usize, v: usize },

    #[error("pixel ({u}, {v}) outside {width}x{height} image")]
    OutOfBounds {
        u: f64,
        v: f64,
        width: usize,
        height: usize,
    },

    #[error("point is behind the camera (z = {z} m)")]
    BehindCamera { z: f64 },

    #[error("render failed at pixel ({u}, {v}): {reason}")]
    Render { u: usize, v: usize, reason: String },

    #[error("insufficient data: {found} valid samples, need at least {needed}")]
    InsufficientData { found: usize, needed: usize },

    #[error("cannot interpolate gap: stroke endpoint row {v} has no valid depth")]
    UninterpolatableGap { v: usize },

    #[error("singular fit: {0}")]
    SingularFit(String),

    #[error("domain too short: {length} m span for a {step} m step")]
    DomainTooShort { length: f64, step: f64 },

    #[error("waypoints are not strictly increasing in y at index {index}")]
    Ordering { index: usize },

    #[error("unsupported transform: {0}")]
    UnsupportedTransform(String),

    #[error("degenerate path: total arc length is zero")]
    DegeneratePath,

    #[error("waypoint {index} at y = {y} m is outside the reference coverage")]
    Coverage { index: usize, y: f64 },

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("format error in {context}: {message}")]
    Format { context: String, message: String },

    #[error("cannot access {}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn format(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format {
            context: context.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
