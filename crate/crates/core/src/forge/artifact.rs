//! The stage-matrix JSON artifact.

use serde::{Deserialize, Serialize};

use super::build::{BuildOutcome, BuildStatus, SampleSet};
use super::config::RunConfig;
use crate::conditions::{check_suitable, schedule_prefix, StageSequence, VerificationReport, SCHEDULE_ID};
use crate::field::{Elem, FieldDescriptor, FieldOracle};
use crate::ring::Ring;

pub const FORMAT: &str = "topoforge-stage-matrix/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArtifactKind {
    Build,
    Frontier,
}

/// The checker's verdict on one row or on the union prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// `row <j>` or `union`.
    pub scope: String,
    pub report: VerificationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub dimension: usize,
    pub tuples: Vec<Vec<String>>,
    pub limit: Vec<String>,
    /// Sample used by each row `j ≥ 1`.
    pub chosen: Vec<usize>,
}

/// Every element is encoded in the final working field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifact {
    pub format: String,
    pub kind: ArtifactKind,
    pub config: RunConfig,
    pub descriptor: FieldDescriptor,
    pub schedule_id: String,
    pub status: BuildStatus,
    pub rows: Vec<Vec<Vec<String>>>,
    pub union_prefix: Vec<Vec<String>>,
    pub diagonal_witnesses: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<SampleRecord>,
    pub certificates: Vec<Certificate>,
}

impl Artifact {
    pub fn is_complete(&self) -> bool {
        self.status == BuildStatus::Complete
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let s = if pretty { serde_json::to_string_pretty(self) } else { serde_json::to_string(self) };
        s.expect("artifact serializes")
    }
}

fn encode_seq<R: Ring>(k: &R, seq: &StageSequence<R::Elem>) -> Vec<Vec<String>> {
    seq.stages.iter().map(|s| s.iter().map(|x| k.encode(x)).collect()).collect()
}

/// Assembles the artifact for a build, certifying every row and the union
/// of the rows with the checker.
pub fn build_artifact<O: FieldOracle>(
    oracle: &mut O,
    kind: ArtifactKind,
    cfg: &RunConfig,
    outcome: &BuildOutcome<Elem<O>>,
    samples: Option<&SampleSet<Elem<O>>>,
) -> Artifact {
    let j_max = cfg.rows;
    let rules = schedule_prefix(oracle, j_max);
    let k = oracle.flat();
    let zero = k.zero();
    let m = &outcome.matrix;
    let union = m.union_prefix(&zero);
    let mut certificates = Vec::new();
    for (j, row) in m.rows.iter().enumerate().skip(1) {
        certificates.push(Certificate { scope: format!("row {j}"), report: check_suitable(&k, row, &rules, j_max, cfg.exec) });
    }
    certificates.push(Certificate { scope: "union".into(), report: check_suitable(&k, &union, &rules, j_max, cfg.exec) });
    let samples = samples.map(|s| SampleRecord {
        dimension: s.dimension,
        tuples: s.tuples.iter().map(|t| t.iter().map(|x| k.encode(&oracle.lift(x))).collect()).collect(),
        limit: s.limit.iter().map(|x| k.encode(&oracle.lift(x))).collect(),
        chosen: m.samples.clone(),
    });
    Artifact {
        format: FORMAT.into(),
        kind,
        config: cfg.clone(),
        descriptor: oracle.descriptor(),
        schedule_id: SCHEDULE_ID.into(),
        status: outcome.status.clone(),
        rows: m.rows.iter().map(|r| encode_seq(&k, r)).collect(),
        union_prefix: encode_seq(&k, &union),
        diagonal_witnesses: m.witnesses.iter().map(|x| k.encode(x)).collect(),
        samples,
        certificates,
    }
}
