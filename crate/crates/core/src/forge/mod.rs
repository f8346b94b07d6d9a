//! Construction of suitable sequences: closure over the series ring,
//! specialization back to the field, and the diagonal row builders.

pub mod artifact;
pub mod build;
pub mod close;
pub mod config;
pub mod extend;
pub mod greedy;
pub mod program;
pub mod specialize;

pub use artifact::{build_artifact, Artifact, ArtifactKind, Certificate};
pub use build::{build_frontier_topology, build_topology, BuildOutcome, BuildStatus, SampleSet, StageMatrix};
pub use close::{close_core, CloseLimits, SeriesBuilder};
pub use config::{FieldSpec, RunConfig, Strategy};
pub use extend::{extend_in_k, extend_in_r};
pub use greedy::close_down_in_k;
pub use program::{Node, WitnessProgram};
pub use specialize::{certify, specialize_to_k};
