//! Independent checks: exhaustive search over prime fields and
//! re-verification of stored artifacts.

pub mod artifact;
pub mod brute;

pub use artifact::{verify_artifact, verify_artifact_file, verify_artifact_str, ArtifactReport, Finding, Verdict};
pub use brute::{brute_force_suitable_search, SearchReport, SearchSpaceSpec};
