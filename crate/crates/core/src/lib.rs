//! Scoring core for a three-track human/object reconstruction benchmark:
//! object 6DoF pose, human joint/part recovery, and joint human-object
//! reconstruction, plus the geometric data-preparation tools used to build
//! synthetic training imagery (NOCS rendering, RoI extraction, seeded
//! augmentation, keypoint decoding).
//!
//! Everything here is deterministic: all randomness flows through seeds
//! derived from `(seed, frame_id, role)`, per-frame scoring is pure, and
//! reports serialize with stable key order so reruns are byte-identical
//! regardless of worker count.
//!
//! Internal unit convention: lengths are meters everywhere; millimeters
//! appear only in reported metric values.

pub mod data;
pub mod error;
pub mod geom;
pub mod metrics;
pub mod nocs;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
pub use geom::{Mat3, PointCloud, RigidPose, SimilarityTransform, TriMesh, Vec3};
pub use report::{ScoreReport, Track};
