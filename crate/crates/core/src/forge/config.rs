//! Run configuration shared by the builders and the CLI.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conditions::SCHEDULE_ID;
use crate::par::Exec;

/// The field a build runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    /// The algebraic closure of `F_p`.
    Prime(u32),
    /// The rationals, which are not large.
    RationalControl,
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "p={p}"),
            FieldSpec::RationalControl => f.write_str("rational-control"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "rational-control" {
            return Ok(FieldSpec::RationalControl);
        }
        let digits = s.strip_prefix("p=").unwrap_or(s);
        digits.parse::<u32>().map(FieldSpec::Prime).map_err(|_| format!("unknown field `{s}`"))
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// How each row's extension is found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Close down over `K[[t]]`, then specialize the seed to elements of `K`.
    #[default]
    SeriesGuided,
    /// Close down in `K` directly, picking roots as obligations arise.
    DirectGreedy,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "series-guided" => Ok(Strategy::SeriesGuided),
            "direct-greedy" => Ok(Strategy::DirectGreedy),
            _ => Err(format!("unknown strategy `{s}`")),
        }
    }
}

/// Everything that determines an artifact. Execution details (thread count,
/// parallel or sequential kernels, output location) are left out of the
/// serialized form since they never change the result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub rows: usize,
    /// Starting precision `N` of the series ring.
    pub precision: usize,
    pub max_precision: usize,
    /// Seed candidates tried per row.
    pub tau_budget: usize,
    /// Root assignments tried per seed candidate.
    pub branch_budget: usize,
    pub strategy: Strategy,
    pub seed: u64,
    /// Largest stage any single closure step may produce.
    pub max_stage_size: usize,
    /// Seed candidates come from a field with at least this many elements.
    pub min_seed_field: u64,
    pub schedule: String,
    #[serde(skip)]
    pub exec: Exec,
    #[serde(skip)]
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn new(field: FieldSpec, rows: usize) -> Self {
        RunConfig { field, rows, ..Self::default() }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: FieldSpec::Prime(2),
            rows: 3,
            precision: 16,
            max_precision: 256,
            tau_budget: 64,
            branch_budget: 8,
            strategy: Strategy::SeriesGuided,
            seed: 0,
            max_stage_size: 250_000,
            min_seed_field: 64,
            schedule: SCHEDULE_ID.to_string(),
            exec: Exec::Parallel,
            jobs: None,
        }
    }
}
