//! The diagonal construction: rows of suitable sequences, each strictly
//! growing at its own index, and the frontier variant driven by samples.

use serde::{Deserialize, Serialize};

use super::close::CloseLimits;
use super::config::RunConfig;
use super::extend::{extend_in_k, lift_seq};
use super::greedy::close_down_in_k;
use crate::conditions::{schedule_prefix, StageSequence};
use crate::error::ForgeError;
use crate::field::{Elem, FieldOracle};
use crate::ring::Ring;

/// Rows `0..=J` of stages `A^j_0, …, A^j_J`, with row 0 all `{0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageMatrix<E> {
    pub rows: Vec<StageSequence<E>>,
    /// `witnesses[j - 1]` is an element of `A^j_j` missing from `A^{j-1}_j`.
    pub witnesses: Vec<E>,
    /// For frontier builds, the index of the sample used in each row `j ≥ 1`.
    pub samples: Vec<usize>,
}

impl<E: Ord + Clone> StageMatrix<E> {
    pub fn new(zero: E, stages: usize) -> Self {
        StageMatrix { rows: vec![StageSequence::zeros(zero, stages)], witnesses: Vec::new(), samples: Vec::new() }
    }

    /// Number of rows past row 0.
    pub fn certified_rows(&self) -> usize {
        self.rows.len() - 1
    }

    /// The stagewise union of all rows.
    pub fn union_prefix(&self, zero: &E) -> StageSequence<E> {
        self.rows.iter().skip(1).fold(self.rows[0].clone(), |acc, r| acc.union(r, zero))
    }

    pub fn map<F: Ord + Clone>(&self, mut f: impl FnMut(&E) -> F) -> StageMatrix<F> {
        StageMatrix {
            rows: self.rows.iter().map(|r| r.map(&mut f)).collect(),
            witnesses: self.witnesses.iter().map(&mut f).collect(),
            samples: self.samples.clone(),
        }
    }
}

/// Whether a build finished every requested row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "kebab-case")]
pub enum BuildStatus {
    Complete,
    BudgetExhausted { row: usize, reason: String },
}

/// A finished or partial build; partial matrices keep every certified row.
#[derive(Clone, Debug)]
pub struct BuildOutcome<E> {
    pub matrix: StageMatrix<E>,
    pub status: BuildStatus,
}

fn into_status(err: ForgeError, row: usize) -> Result<BuildStatus, ForgeError> {
    match err {
        ForgeError::BudgetExhausted { row, reason } => Ok(BuildStatus::BudgetExhausted { row, reason }),
        e @ ForgeError::StageTooLarge { .. } => Ok(BuildStatus::BudgetExhausted { row, reason: e.to_string() }),
        e => Err(e),
    }
}

/// Builds rows `1..=J` (with `J = cfg.rows`), row `j` extending row `j - 1`
/// at index `j`. Every element in the result lives in the oracle's final
/// working field.
pub fn build_topology<O: FieldOracle>(oracle: &mut O, cfg: &RunConfig) -> Result<BuildOutcome<Elem<O>>, ForgeError> {
    let j_max = cfg.rows;
    let mut matrix = StageMatrix::new(oracle.flat().zero(), j_max + 1);
    let mut status = BuildStatus::Complete;
    for j in 1..=j_max {
        let prev = matrix.rows.last().unwrap().clone();
        match extend_in_k(oracle, &prev, j, cfg) {
            Ok((row, tau)) => {
                matrix.rows.push(row);
                matrix.witnesses.push(tau);
            }
            Err(e) => {
                status = into_status(e, j)?;
                break;
            }
        }
    }
    Ok(BuildOutcome { matrix: lift_matrix(oracle, &matrix), status })
}

/// Lifts every element of a matrix into the oracle's working field.
pub fn lift_matrix<O: FieldOracle>(oracle: &O, m: &StageMatrix<Elem<O>>) -> StageMatrix<Elem<O>> {
    StageMatrix {
        rows: m.rows.iter().map(|r| lift_seq(oracle, r)).collect(),
        witnesses: m.witnesses.iter().map(|x| oracle.lift(x)).collect(),
        samples: m.samples.clone(),
    }
}

/// Sample tuples accumulating at a limit point that is not among them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSet<E> {
    pub dimension: usize,
    pub tuples: Vec<Vec<E>>,
    pub limit: Vec<E>,
}

impl<E: Clone + Eq> SampleSet<E> {
    pub fn new(dimension: usize, tuples: Vec<Vec<E>>, limit: Vec<E>) -> Result<Self, ForgeError> {
        if dimension == 0 {
            return Err(ForgeError::Precondition("sample dimension must be positive".into()));
        }
        if tuples.is_empty() {
            return Err(ForgeError::Precondition("sample list is empty".into()));
        }
        if limit.len() != dimension || tuples.iter().any(|t| t.len() != dimension) {
            return Err(ForgeError::Precondition(format!("samples must have {dimension} coordinates")));
        }
        if tuples.contains(&limit) {
            return Err(ForgeError::Precondition("the limit point is among the samples".into()));
        }
        Ok(SampleSet { dimension, tuples, limit })
    }
}

/// Like [`build_topology`], but row `j` adds all coordinates of a sample
/// tuple (translated so the limit point is `0`) to stage `j`, trying the
/// samples in order.
pub fn build_frontier_topology<O: FieldOracle>(
    oracle: &mut O,
    samples: &SampleSet<Elem<O>>,
    cfg: &RunConfig,
) -> Result<BuildOutcome<Elem<O>>, ForgeError> {
    let j_max = cfg.rows;
    let limits = CloseLimits { max_stage_size: cfg.max_stage_size, exec: cfg.exec };
    let mut shifted = Vec::with_capacity(samples.tuples.len());
    for t in &samples.tuples {
        let mut row = Vec::with_capacity(t.len());
        for (x, b) in t.iter().zip(&samples.limit) {
            let x = oracle.import(x);
            let b = oracle.import(b);
            row.push((x, b));
        }
        shifted.push(row);
    }
    let shifted: Vec<Vec<Elem<O>>> = shifted
        .iter()
        .map(|row| {
            let k = oracle.flat();
            row.iter().map(|(x, b)| k.sub(&oracle.lift(x), &oracle.lift(b))).collect()
        })
        .collect();

    let mut matrix = StageMatrix::new(oracle.flat().zero(), j_max + 1);
    let mut status = BuildStatus::Complete;
    for j in 1..=j_max {
        let rules = schedule_prefix(oracle, j_max);
        let prev = lift_seq(oracle, matrix.rows.last().unwrap());
        let zero = oracle.flat().zero();
        let old = prev.stage(j, &zero);
        let shared: &O = oracle;
        let found = cfg.exec.find_first(shifted.len(), |s| {
            let coords: Vec<_> = shifted[s].iter().map(|x| shared.lift(x)).collect();
            let fresh = coords.iter().find(|x| !old.contains(x))?.clone();
            let mut o = shared.clone();
            for attempt in 0..cfg.branch_budget.max(1) {
                match close_down_in_k(&mut o, &prev, j, &coords, &rules, attempt, limits) {
                    Ok(Some(seq)) => return Some(Ok((seq, o.lift(&fresh), o))),
                    Ok(None) => {}
                    Err(e) => return Some(Err(e)),
                }
            }
            None
        });
        match found {
            Some((s, Ok((row, w, o)))) => {
                *oracle = o;
                matrix.rows.push(row);
                matrix.witnesses.push(w);
                matrix.samples.push(s);
            }
            Some((_, Err(e))) => {
                status = into_status(e, j)?;
                break;
            }
            None => {
                status = BuildStatus::BudgetExhausted { row: j, reason: format!("no sample among {} gives a certified row", shifted.len()) };
                break;
            }
        }
    }
    Ok(BuildOutcome { matrix: lift_matrix(oracle, &matrix), status })
}
