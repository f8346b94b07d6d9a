//! Replaying a witness program in `K` with the seed set to a field element.

use super::program::{Node, WitnessProgram};
use crate::conditions::{check_suitable, FiniteStage, Rule, StageSequence};
use crate::field::{Elem, FieldOracle};
use crate::par::Exec;
use crate::ring::Ring;

/// Evaluates `program` with the seed set to `tau` and certifies the result.
///
/// Root nodes first take the root at their recorded branch in the sorted list
/// of simple roots of the specialized polynomial; attempt `k` shifts every
/// choice by `k`. A returned sequence contains `base` stagewise, grows
/// strictly at `target`, and passes the checker on all stored indices.
#[allow(clippy::too_many_arguments)]
pub fn specialize_to_k<O: FieldOracle>(
    oracle: &mut O,
    program: &WitnessProgram<Elem<O>>,
    base: &StageSequence<Elem<O>>,
    tau: &Elem<O>,
    target: usize,
    rules: &[Rule<Elem<O>>],
    branch_budget: usize,
    exec: Exec,
) -> Option<StageSequence<Elem<O>>> {
    let tau = oracle.lift(tau);
    if oracle.flat().is_zero(&tau) {
        return None;
    }
    for attempt in 0..branch_budget.max(1) {
        let Some(values) = evaluate(oracle, program, &tau, attempt) else { continue };
        let cand = program.stage_values(&values);
        if certify(oracle, &cand, base, target, rules, exec) {
            return Some(cand);
        }
    }
    None
}

fn evaluate<O: FieldOracle>(oracle: &mut O, program: &WitnessProgram<Elem<O>>, tau: &Elem<O>, attempt: usize) -> Option<Vec<Elem<O>>> {
    let mut k = oracle.flat();
    let mut epoch = oracle.epoch();
    let tau = oracle.lift(tau);
    let mut vals: Vec<Elem<O>> = Vec::with_capacity(program.len());
    for node in &program.nodes {
        let v = match node {
            Node::Const(c) => oracle.lift(c),
            Node::Seed => oracle.lift(&tau),
            Node::Add(x, y) => k.add(&vals[*x], &vals[*y]),
            Node::Sub(x, y) => k.sub(&vals[*x], &vals[*y]),
            Node::Mul(x, y) => k.mul(&vals[*x], &vals[*y]),
            Node::InvOnePlus(x) => k.inv_one_plus(&vals[*x])?,
            Node::HenselRoot { coeffs, degree, branch, stage, .. } => {
                let cs: Vec<_> = coeffs.iter().map(|&c| vals[c].clone()).collect();
                let roots = oracle.simple_roots(*degree, &cs).ok()?;
                if oracle.epoch() != epoch {
                    epoch = oracle.epoch();
                    k = oracle.flat();
                    for v in vals.iter_mut() {
                        *v = oracle.lift(v);
                    }
                }
                // a root of -2 would put -1 into a stage that must avoid it
                let minus_two = k.from_int(-2);
                let roots: Vec<_> = roots.into_iter().filter(|r| *stage == 0 || *r != minus_two).collect();
                if roots.is_empty() {
                    return None;
                }
                roots[(branch + attempt) % roots.len()].clone()
            }
        };
        vals.push(v);
    }
    Some(vals)
}

/// Whether `cand` is a certified extension of `base` at `target`.
pub fn certify<O: FieldOracle>(
    oracle: &O,
    cand: &StageSequence<Elem<O>>,
    base: &StageSequence<Elem<O>>,
    target: usize,
    rules: &[Rule<Elem<O>>],
    exec: Exec,
) -> bool {
    let k = oracle.flat();
    let zero = k.zero();
    let base = StageSequence::new(base.stages.iter().map(|s| s.iter().map(|x| oracle.lift(x)).collect::<FiniteStage<_>>()).collect());
    if !base.is_contained_in(cand, &zero) {
        return false;
    }
    if cand.stage(target, &zero).len() <= base.stage(target, &zero).len() {
        return false;
    }
    let rules: Vec<_> = rules.iter().map(|r| Rule { a: oracle.lift(&r.a), n: r.n }).collect();
    let upto = cand.len().saturating_sub(1).min(rules.len());
    check_suitable(&k, cand, &rules, upto, exec).passed()
}
