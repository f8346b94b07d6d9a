//! Finite stages and stage sequences.

use serde::{Deserialize, Serialize};

/// A finite set of ring elements, kept sorted and without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FiniteStage<E> {
    elems: Vec<E>,
}

impl<E: Ord + Clone> FiniteStage<E> {
    pub fn new(mut elems: Vec<E>) -> Self {
        elems.sort();
        elems.dedup();
        FiniteStage { elems }
    }

    pub fn singleton(x: E) -> Self {
        FiniteStage { elems: vec![x] }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: &E) -> bool {
        self.elems.binary_search(x).is_ok()
    }

    pub fn position(&self, x: &E) -> Option<usize> {
        self.elems.binary_search(x).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, E> {
        self.elems.iter()
    }

    pub fn as_slice(&self) -> &[E] {
        &self.elems
    }

    pub fn into_vec(self) -> Vec<E> {
        self.elems
    }

    pub fn insert(&mut self, x: E) -> bool {
        match self.elems.binary_search(&x) {
            Ok(_) => false,
            Err(k) => {
                self.elems.insert(k, x);
                true
            }
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut v = self.elems.clone();
        v.extend(other.elems.iter().cloned());
        Self::new(v)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.elems.iter().all(|x| other.contains(x))
    }

    /// First element of `self` missing from `other`.
    pub fn first_missing_from(&self, other: &Self) -> Option<&E> {
        self.elems.iter().find(|x| !other.contains(x))
    }

    pub fn map<F: Ord + Clone>(&self, f: impl FnMut(&E) -> F) -> FiniteStage<F> {
        FiniteStage::new(self.elems.iter().map(f).collect())
    }
}

impl<E: Ord + Clone> FromIterator<E> for FiniteStage<E> {
    fn from_iter<I: IntoIterator<Item = E>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl<'a, E> IntoIterator for &'a FiniteStage<E> {
    type Item = &'a E;
    type IntoIter = std::slice::Iter<'a, E>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

/// Stages `A_0, …, A_{T-1}`; every later stage is `{0}`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StageSequence<E> {
    pub stages: Vec<FiniteStage<E>>,
}

impl<E: Ord + Clone> StageSequence<E> {
    pub fn new(stages: Vec<FiniteStage<E>>) -> Self {
        StageSequence { stages }
    }

    /// `len` copies of `{0}`.
    pub fn zeros(zero: E, len: usize) -> Self {
        StageSequence { stages: vec![FiniteStage::singleton(zero); len] }
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// Stage `i`, which is `{zero}` beyond the stored prefix.
    pub fn stage(&self, i: usize, zero: &E) -> FiniteStage<E> {
        self.stages.get(i).cloned().unwrap_or_else(|| FiniteStage::singleton(zero.clone()))
    }

    /// Stagewise union, padding the shorter sequence with `{zero}`.
    pub fn union(&self, other: &Self, zero: &E) -> Self {
        let n = self.len().max(other.len());
        StageSequence { stages: (0..n).map(|i| self.stage(i, zero).union(&other.stage(i, zero))).collect() }
    }

    /// Whether `self_i ⊆ other_i` for every stored index.
    pub fn is_contained_in(&self, other: &Self, zero: &E) -> bool {
        (0..self.len().max(other.len())).all(|i| self.stage(i, zero).is_subset(&other.stage(i, zero)))
    }

    pub fn map<F: Ord + Clone>(&self, mut f: impl FnMut(&E) -> F) -> StageSequence<F> {
        StageSequence { stages: self.stages.iter().map(|s| s.map(&mut f)).collect() }
    }
}
