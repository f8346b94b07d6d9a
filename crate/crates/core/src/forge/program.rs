//! Straight-line programs recording how every closure element was built.

use crate::conditions::{FiniteStage, StageSequence};
use crate::error::SeriesError;
use crate::ring::{Field, Ring};
use crate::series::{SeriesRing, TruncatedSeries};

/// One step of a witness program. Operands refer to earlier nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node<E> {
    Const(E),
    /// The formal variable `t`, later replaced by a seed in `K`.
    Seed,
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
    /// `(1 + x)^{-1} - 1`.
    InvOnePlus(usize),
    /// A simple root of `X^n + X^{n-1} + c_{n-2} X^{n-2} + … + c_0`.
    HenselRoot {
        coeffs: Vec<usize>,
        degree: usize,
        /// Rank of this root among the lifted roots of the same polynomial.
        branch: usize,
        /// Residue the root was lifted from.
        residue_root: E,
        /// Closure level the root was introduced for.
        stage: usize,
    },
}

/// A program together with the nodes that make up each stage.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessProgram<E> {
    pub nodes: Vec<Node<E>>,
    pub stages: Vec<Vec<usize>>,
}

impl<E: Clone + Ord> WitnessProgram<E> {
    pub fn new() -> Self {
        WitnessProgram { nodes: Vec::new(), stages: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn push(&mut self, node: Node<E>) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    /// Evaluates every node over `K[[t]] / t^N` with the seed set to `t`.
    pub fn evaluate_series<F: Field<Elem = E>>(&self, ring: &SeriesRing<F>) -> Result<Vec<TruncatedSeries<E>>, SeriesError> {
        let mut vals: Vec<TruncatedSeries<E>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                Node::Const(c) => ring.constant(c.clone()),
                Node::Seed => ring.t(),
                Node::Add(x, y) => ring.add(&vals[*x], &vals[*y]),
                Node::Sub(x, y) => ring.sub(&vals[*x], &vals[*y]),
                Node::Mul(x, y) => ring.mul(&vals[*x], &vals[*y]),
                Node::InvOnePlus(x) => ring.inv_one_plus_checked(&vals[*x])?,
                Node::HenselRoot { coeffs, degree, residue_root, .. } => {
                    let cs: Vec<_> = coeffs.iter().map(|&c| vals[c].clone()).collect();
                    ring.hensel_lift_normed(*degree, &cs, residue_root)?
                }
            };
            vals.push(v);
        }
        Ok(vals)
    }

    /// The stages as sets of values, given the value of every node.
    pub fn stage_values<V: Clone + Ord>(&self, values: &[V]) -> StageSequence<V> {
        StageSequence::new(self.stages.iter().map(|ids| ids.iter().map(|&k| values[k].clone()).collect::<FiniteStage<V>>()).collect())
    }
}
