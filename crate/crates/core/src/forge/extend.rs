//! One row of the diagonal construction: seeded extension over `K[[t]]`,
//! then transfer back to `K`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::close::{close_core, CloseLimits, SeriesBuilder};
use super::config::{RunConfig, Strategy};
use super::greedy::close_down_in_k;
use super::specialize::specialize_to_k;
use crate::conditions::{schedule_prefix, FiniteStage, Rule, StageSequence};
use crate::error::ForgeError;
use crate::field::{Elem, FieldOracle};
use crate::ring::{Field, Ring};

/// Builds stages over `K[[t]] / t^N`: stages above `target` are copied,
/// stage `target` gains the seed `t`, and lower stages come from
/// [`close_core`]. The stage node lists end up in `program.stages`.
pub fn extend_in_r<F: Field>(
    field: F,
    base: &StageSequence<F::Elem>,
    target: usize,
    rules: &[Rule<F::Elem>],
    precision: usize,
    limits: CloseLimits,
) -> Result<SeriesBuilder<F>, ForgeError> {
    let zero = field.zero();
    let len = base.len().max(target + 1);
    let mut b = SeriesBuilder::new(field, precision);
    let mut stages: Vec<Vec<usize>> = vec![Vec::new(); len];
    for (i, slot) in stages.iter_mut().enumerate().skip(target) {
        let mut ids: Vec<usize> = base.stage(i, &zero).iter().map(|x| b.constant(x.clone())).collect();
        if i == target {
            ids.push(b.seed());
        }
        ids.sort_unstable();
        ids.dedup();
        *slot = ids;
    }
    for i in (0..target).rev() {
        let a = base.stage(i, &zero);
        let next = stages[i + 1].clone();
        stages[i] = close_core(&mut b, i, &rules[i], &a, &next, limits)?;
    }
    b.program.stages = stages;
    Ok(b)
}

/// Extends a suitable sequence in `K` so that stage `target` strictly grows,
/// keeping every stage a superset of the old one. On success the oracle is
/// left at the working field of the returned stages; returns the stages and
/// the element that made stage `target` grow.
pub fn extend_in_k<O: FieldOracle>(
    oracle: &mut O,
    base: &StageSequence<Elem<O>>,
    target: usize,
    cfg: &RunConfig,
) -> Result<(StageSequence<Elem<O>>, Elem<O>), ForgeError> {
    let len = base.len().max(target + 1);
    let rules = schedule_prefix(oracle, len.saturating_sub(1).max(target));
    let base = lift_seq(oracle, base);
    let limits = CloseLimits { max_stage_size: cfg.max_stage_size, exec: cfg.exec };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (target as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));

    let program = match cfg.strategy {
        Strategy::SeriesGuided => {
            let mut precision = cfg.precision.max(1);
            loop {
                let b = extend_in_r(oracle.flat(), &base, target, &rules, precision, limits)?;
                if !b.precision_lost() || precision * 2 > cfg.max_precision {
                    break Some(b.program);
                }
                precision *= 2;
            }
        }
        Strategy::DirectGreedy => None,
    };

    let candidates = oracle.seed_candidates(cfg.min_seed_field, cfg.tau_budget, &mut rng);
    let base = lift_seq(oracle, &base);
    let rules: Vec<_> = rules.iter().map(|r| Rule { a: oracle.lift(&r.a), n: r.n }).collect();
    let zero = oracle.flat().zero();
    let old_target = base.stage(target, &zero);
    let shared: &O = oracle;
    let found = cfg.exec.find_first(candidates.len(), |c| {
        let tau = &candidates[c];
        if old_target.contains(tau) {
            return None;
        }
        let mut o = shared.clone();
        let got = match &program {
            Some(p) => Ok(specialize_to_k(&mut o, p, &base, tau, target, &rules, cfg.branch_budget, cfg.exec)),
            None => (0..cfg.branch_budget.max(1))
                .map(|attempt| close_down_in_k(&mut o, &base, target, std::slice::from_ref(tau), &rules, attempt, limits))
                .find(|r| !matches!(r, Ok(None)))
                .unwrap_or(Ok(None)),
        };
        match got {
            Ok(Some(seq)) => Some(Ok((seq, o.lift(tau), o))),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        }
    });
    match found {
        Some((_, Ok((seq, tau, o)))) => {
            *oracle = o;
            Ok((seq, tau))
        }
        Some((_, Err(e))) => Err(e),
        None => Err(ForgeError::BudgetExhausted {
            row: target,
            reason: format!("no certified extension among {} seed candidates", candidates.len()),
        }),
    }
}

/// Brings every element of `seq` into the oracle's working field.
pub fn lift_seq<O: FieldOracle>(oracle: &O, seq: &StageSequence<Elem<O>>) -> StageSequence<Elem<O>> {
    StageSequence::new(seq.stages.iter().map(|s| s.iter().map(|x| oracle.lift(x)).collect::<FiniteStage<_>>()).collect())
}
