//! Turns a gloss script and a dictionary of isolated signs into one
//! continuous, natural 3D pose sequence.
//!
//! The library covers the full synthesis path: dictionary lookup with
//! embedding-based substitution, forward kinematics onto a canonical
//! skeleton, rest-pose cropping, duration resampling, face attachment,
//! velocity-bounded transition synthesis, assembly, and low-pass style
//! filtering. It also provides the spectral cutoff estimator used to label
//! training sequences and the DTW mean-joint-error metric used to compare
//! pose tracks.

pub mod cutoff;
pub mod dictionary;
pub mod dsp;
pub mod error;
pub mod geom;
pub mod metrics;
pub mod skeleton;
pub mod spline;
pub mod stitcher;

pub use error::{Error, Result};
pub use skeleton::{CanonicalSkeleton, JointAngleSequence, PoseSequence};
pub use stitcher::{GlossScript, PipelineOutput, StitchPlan};
