//! Error types shared across the library.

use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Shapes of two inputs (joint counts, frame widths, lengths) disagree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A frame is geometrically degenerate (e.g. coincident shoulders).
    #[error("geometry error at frame {frame}: {msg}")]
    Geometry { frame: usize, msg: String },

    /// An argument is outside its documented range.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A filter specification is invalid (cutoff at or above Nyquist, bad order).
    #[error("invalid filter spec: {0}")]
    FilterSpec(String),

    /// Input data contains non-finite values.
    #[error("non-finite data: {0}")]
    Data(String),

    /// A gloss string normalizes to nothing usable.
    #[error("invalid gloss {gloss:?}: {msg}")]
    InvalidGloss { gloss: String, msg: String },

    /// A gloss could not be resolved against the dictionary by any route.
    #[error("unresolvable gloss {gloss:?}: {reason}")]
    UnresolvableGloss { gloss: String, reason: String },

    /// A face token is outside the dictionary's dense id range.
    #[error("face token {token} out of range 0..{count}")]
    FaceToken { token: usize, count: usize },

    /// Smoothing-spline fit could not be performed.
    #[error("spline fit: {0}")]
    Spline(String),

    /// A structured input file failed validation.
    #[error("parse error in {path} (line {line}): {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    /// Wraps an error with the gloss position in the script that produced it.
    #[error("gloss {index} ({gloss:?}): {source}")]
    AtGloss {
        index: usize,
        gloss: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Attach gloss-position context to an error bubbling out of the pipeline.
    pub fn at_gloss(self, index: usize, gloss: &str) -> Error {
        Error::AtGloss {
            index,
            gloss: gloss.to_string(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
