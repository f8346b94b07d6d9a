//! Closing a seeded sequence downward directly in `K`.

use super::close::CloseLimits;
use super::specialize::certify;
use crate::conditions::{root_table, FiniteStage, Rule, StageSequence};
use crate::error::ForgeError;
use crate::field::{Elem, FieldOracle};
use crate::ring::Ring;

/// Adds `seeds` to stage `target` of `base` and closes every lower stage in
/// `K`, choosing root `attempt` (cyclically) wherever clause 7 still lacks
/// one. Returns the certified sequence, or `None` if this attempt fails.
pub fn close_down_in_k<O: FieldOracle>(
    oracle: &mut O,
    base: &StageSequence<Elem<O>>,
    target: usize,
    seeds: &[Elem<O>],
    rules: &[Rule<Elem<O>>],
    attempt: usize,
    limits: CloseLimits,
) -> Result<Option<StageSequence<Elem<O>>>, ForgeError> {
    let zero = oracle.flat().zero();
    let len = base.len().max(target + 1);
    let mut stages: Vec<FiniteStage<Elem<O>>> = (0..len).map(|i| lift_stage(oracle, &base.stage(i, &zero))).collect();
    for s in seeds {
        stages[target].insert(oracle.lift(s));
    }
    for i in (0..target).rev() {
        let Some(out) = close_one(oracle, &mut stages, i, &rules[i], attempt, limits)? else {
            return Ok(None);
        };
        stages[i] = out;
    }
    let cand = StageSequence::new(stages);
    Ok(certify(oracle, &cand, base, target, rules, limits.exec).then_some(cand))
}

fn lift_stage<O: FieldOracle>(oracle: &O, s: &FiniteStage<Elem<O>>) -> FiniteStage<Elem<O>> {
    s.iter().map(|x| oracle.lift(x)).collect()
}

fn close_one<O: FieldOracle>(
    oracle: &mut O,
    stages: &mut [FiniteStage<Elem<O>>],
    i: usize,
    rule: &Rule<Elem<O>>,
    attempt: usize,
    limits: CloseLimits,
) -> Result<Option<FiniteStage<Elem<O>>>, ForgeError> {
    let k = oracle.flat();
    let b = stages[i + 1].clone();
    let m = b.len();
    let too_large = |size: usize| ForgeError::StageTooLarge { stage: i, size, limit: limits.max_stage_size };
    if m.saturating_mul(m) > limits.max_stage_size {
        return Err(too_large(m.saturating_mul(m)));
    }
    let bs = b.as_slice();
    let mut out: Vec<Elem<O>> = stages[i].iter().cloned().collect();
    out.push(k.zero());
    out.extend(bs.iter().cloned());
    let a = oracle.lift(&rule.a);
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|x| (0..m).map(move |y| (x, y))).collect();
    out.extend(limits.exec.map(&pairs, |&(x, y)| k.sub(&bs[x], &bs[y])));
    out.extend(limits.exec.map(&pairs, |&(x, y)| k.mul(&bs[x], &bs[y])));
    for y in bs {
        out.push(k.mul(&a, y));
        match k.inv_one_plus(y) {
            Some(v) => out.push(v),
            None => return Ok(None),
        }
    }
    let mut out = FiniteStage::new(out);
    if out.len() > limits.max_stage_size {
        return Err(too_large(out.len()));
    }

    let n = rule.n;
    let table = root_table(&k, n, &out, &b, limits.exec);
    let missing: Vec<usize> = (0..table.len()).filter(|&t| table[t].is_empty()).collect();
    let mut found = Vec::with_capacity(missing.len());
    for t in missing {
        let mut rest = t;
        let coeffs: Vec<Elem<O>> = (0..n - 1)
            .map(|_| {
                let c = oracle.lift(&bs[rest % m]);
                rest /= m;
                c
            })
            .collect();
        let roots = oracle.simple_roots(n, &coeffs)?;
        let kk = oracle.flat();
        let minus_two = kk.from_int(-2);
        let roots: Vec<_> = roots.into_iter().filter(|r| i == 0 || *r != minus_two).collect();
        if roots.is_empty() {
            return Ok(None);
        }
        found.push(kk.add(&roots[attempt % roots.len()], &kk.one()));
    }
    if !found.is_empty() {
        out = out.iter().map(|x| oracle.lift(x)).chain(found.iter().map(|x| oracle.lift(x))).collect();
        for s in stages.iter_mut() {
            *s = lift_stage(oracle, s);
        }
    }
    Ok(Some(out))
}
