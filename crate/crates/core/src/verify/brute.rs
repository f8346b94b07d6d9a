//! Exhaustive search for suitable sequences in a prime field `F_p`.

use serde::{Deserialize, Serialize};

use crate::conditions::{check_condition, FiniteStage, Rule};
use crate::error::SearchError;
use crate::field::{FieldElement, GfField};
use crate::par::Exec;
use crate::ring::Ring;

/// Primes for which the subset lattice is searched.
pub const SEARCH_PRIMES: [u32; 3] = [2, 3, 5];
pub const MAX_LENGTH: usize = 64;

/// What to search: sequences `A_0, …, A_{L-1}` of subsets of `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpaceSpec {
    pub p: u32,
    pub length: usize,
    /// `(a_i, n_i)` for `i < length - 1`, with `a_i` read mod `p`.
    pub schedule: Vec<(u64, usize)>,
}

impl SearchSpaceSpec {
    /// The diagonal schedule reduced into `F_p`: `a_i` is the enumeration
    /// index of the Cantor schedule taken mod `p`.
    pub fn with_default_schedule(p: u32, length: usize) -> Self {
        let schedule = (0..length.saturating_sub(1) as u64).map(|i| {
            let (e, n) = crate::conditions::schedule_index(i);
            (e % p as u64, n)
        });
        SearchSpaceSpec { p, length, schedule: schedule.collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub p: u32,
    pub length: usize,
    /// Largest `k` such that some suitable sequence has `A_k ≠ {0}`.
    pub max_depth: usize,
    /// `forced_zero[k]`: every suitable sequence has `A_k = {0}`.
    pub forced_zero: Vec<bool>,
    /// A suitable sequence reaching `max_depth`, as sorted residues.
    pub example: Vec<Vec<u32>>,
    /// Number of `C_i` instances evaluated.
    pub checks: u64,
}

fn subset(p: u32, mask: u32) -> FiniteStage<FieldElement> {
    (0..p).filter(|x| mask >> x & 1 == 1).map(|x| FieldElement { degree: 1, coeffs: vec![x] }).collect()
}

/// Forward search over the subset lattice: `S_0` is every subset containing
/// `0`, and `S_{i+1}` collects each `Y` with `C_i(X, Y)` for some `X ∈ S_i`.
/// Any member of `S_i` can be followed by `{0}`s, so `S_i` is exactly the set
/// of possible `i`-th stages of suitable sequences.
pub fn brute_force_suitable_search(spec: &SearchSpaceSpec, exec: Exec) -> Result<SearchReport, SearchError> {
    if !SEARCH_PRIMES.contains(&spec.p) {
        return Err(SearchError::CapExceeded(spec.p));
    }
    if spec.length == 0 || spec.length > MAX_LENGTH || spec.schedule.len() + 1 < spec.length {
        return Err(SearchError::CapExceeded(spec.p));
    }
    let p = spec.p;
    let k = GfField::from_modulus(p, vec![0, 1]);
    let masks: Vec<u32> = (0..1u32 << p).filter(|m| m & 1 == 1).collect();
    let mut layers: Vec<Vec<u32>> = vec![masks.clone()];
    // parent[i][y] = some x in layer i with C_i(x, y)
    let mut parents: Vec<Vec<Option<u32>>> = Vec::new();
    let mut checks = 0u64;
    for i in 0..spec.length - 1 {
        let (a, n) = spec.schedule[i];
        let rule = Rule { a: k.from_int(a as i64), n };
        let prev = layers[i].clone();
        let found: Vec<Option<u32>> = exec.map(&masks, |&y| {
            let b = subset(p, y);
            prev.iter().copied().find(|&x| check_condition(&k, i, &rule, &subset(p, x), &b, Exec::Sequential).passed())
        });
        checks += (masks.len() * prev.len()) as u64;
        let mut parent = vec![None; 1 << p];
        let mut next = Vec::new();
        for (&y, x) in masks.iter().zip(found) {
            if let Some(x) = x {
                parent[y as usize] = Some(x);
                next.push(y);
            }
        }
        parents.push(parent);
        layers.push(next);
    }
    let forced_zero: Vec<bool> = layers.iter().map(|l| l.iter().all(|&m| m == 1)).collect();
    let max_depth = (0..spec.length).rev().find(|&i| !forced_zero[i]).unwrap_or(0);
    let mut example = vec![1u32; spec.length];
    if let Some(&top) = layers[max_depth].iter().find(|&&m| m != 1) {
        example[max_depth] = top;
        for i in (0..max_depth).rev() {
            example[i] = parents[i][example[i + 1] as usize].expect("reachable stage has a parent");
        }
    }
    let example = example.iter().map(|&m| (0..p).filter(|x| m >> x & 1 == 1).collect()).collect();
    Ok(SearchReport { p, length: spec.length, max_depth, forced_zero, example, checks })
}
