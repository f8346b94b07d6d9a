mod common;

use std::sync::OnceLock;

use common::{naive_condition, prime_field};
use proptest::prelude::*;
use topoforge_core::conditions::{schedule_prefix, Rule};
use topoforge_core::field::{FieldElement, FieldOracle, Fpbar};
use topoforge_core::forge::{build_artifact, build_topology, Artifact, ArtifactKind, BuildOutcome, FieldSpec, RunConfig};
use topoforge_core::par::Exec;
use topoforge_core::ring::Ring;
use topoforge_core::verify::{brute_force_suitable_search, verify_artifact, verify_artifact_str, SearchSpaceSpec, Verdict};

/// Every subset of `F_p` containing `0`, as bitmasks.
fn zero_sets(p: u32) -> Vec<u32> {
    (0..1u32 << p).filter(|m| m & 1 == 1).collect()
}

fn set(p: u32, mask: u32) -> Vec<FieldElement> {
    let k = prime_field(p);
    (0..p).filter(|x| mask >> x & 1 == 1).map(|x| k.from_int(x as i64)).collect()
}

/// Depth-first enumeration of suitable sequences with the definition-level
/// checker; `reach[i]` collects every possible `A_i`.
fn reachable(p: u32, schedule: &[(u64, usize)], length: usize) -> Vec<Vec<u32>> {
    let k = prime_field(p);
    let mut reach = vec![Vec::new(); length];
    fn go(
        k: &topoforge_core::field::GfField,
        p: u32,
        schedule: &[(u64, usize)],
        length: usize,
        i: usize,
        a: u32,
        reach: &mut Vec<Vec<u32>>,
    ) {
        if reach[i].contains(&a) {
            return;
        }
        reach[i].push(a);
        if i + 1 == length {
            return;
        }
        let (ai, n) = schedule[i];
        let rule = Rule { a: k.from_int(ai as i64), n };
        for b in zero_sets(p) {
            if naive_condition(k, &rule, &set(p, a), &set(p, b)).is_none() {
                go(k, p, schedule, length, i + 1, b, reach);
            }
        }
    }
    for a in zero_sets(p) {
        go(&k, p, schedule, length, 0, a, &mut reach);
    }
    reach
}

#[test]
fn search_agrees_with_direct_enumeration() {
    for p in [2, 3, 5] {
        let spec = SearchSpaceSpec::with_default_schedule(p, 4);
        let rep = brute_force_suitable_search(&spec, Exec::Parallel).unwrap();
        let reach = reachable(p, &spec.schedule, 4);
        let forced: Vec<bool> = reach.iter().map(|r| r.iter().all(|&m| m == 1)).collect();
        assert_eq!(rep.forced_zero, forced, "p={p}");
    }
}

#[test]
fn f2_forces_the_first_stage_under_any_schedule() {
    for a in 0..2 {
        for n in 2..5 {
            let spec = SearchSpaceSpec { p: 2, length: 3, schedule: vec![(a, n); 2] };
            let rep = brute_force_suitable_search(&spec, Exec::Sequential).unwrap();
            assert_eq!(rep.max_depth, 0);
            assert!(rep.forced_zero[1]);
        }
    }
}

#[test]
fn f3_forces_the_second_stage_under_any_schedule() {
    for a0 in 0..3 {
        for a1 in 0..3 {
            for n0 in 2..5 {
                for n1 in 2..5 {
                    let spec = SearchSpaceSpec { p: 3, length: 3, schedule: vec![(a0, n0), (a1, n1)] };
                    let rep = brute_force_suitable_search(&spec, Exec::Sequential).unwrap();
                    assert!(rep.forced_zero[2], "schedule {:?}", spec.schedule);
                }
            }
        }
    }
}

#[test]
fn f5_search_reports_a_finite_depth() {
    let rep = brute_force_suitable_search(&SearchSpaceSpec::with_default_schedule(5, 4), Exec::Parallel).unwrap();
    assert_eq!(rep.max_depth, 1);
    assert!(rep.forced_zero[2] && rep.forced_zero[3]);
    assert_eq!(rep.example.len(), 4);
    assert_ne!(rep.example[1], vec![0]);
}

#[test]
fn search_caps() {
    assert!(brute_force_suitable_search(&SearchSpaceSpec::with_default_schedule(7, 3), Exec::Sequential).is_err());
    assert!(brute_force_suitable_search(&SearchSpaceSpec::with_default_schedule(2, 65), Exec::Sequential).is_err());
    assert!(brute_force_suitable_search(&SearchSpaceSpec::with_default_schedule(2, 0), Exec::Sequential).is_err());
}

struct Built {
    oracle: Fpbar,
    outcome: BuildOutcome<FieldElement>,
    rules: Vec<Rule<FieldElement>>,
    artifact: Artifact,
}

fn built() -> &'static Built {
    static B: OnceLock<Built> = OnceLock::new();
    B.get_or_init(|| {
        let cfg = RunConfig::new(FieldSpec::Prime(3), 2);
        let mut oracle = Fpbar::new(3).unwrap();
        let outcome = build_topology(&mut oracle, &cfg).unwrap();
        let artifact = build_artifact(&mut oracle, ArtifactKind::Build, &cfg, &outcome, None);
        let rules = schedule_prefix(&mut oracle, 2);
        Built { oracle, outcome, rules, artifact }
    })
}

#[test]
fn fresh_artifact_is_certified() {
    let b = built();
    let text = b.artifact.to_json(false);
    let rep = verify_artifact_str(&text, Exec::Parallel).unwrap();
    assert_eq!(rep.verdict, Verdict::Certified, "{:?}", rep.findings.iter().filter(|f| !f.pass).collect::<Vec<_>>());
    assert!(rep.findings.iter().all(|f| f.pass));
}

#[test]
fn minus_one_in_the_first_stage_breaks_clause_six() {
    let b = built();
    let k = b.oracle.flat();
    let mut art = b.artifact.clone();
    let m1 = k.encode(&k.neg(&k.one()));
    let last = art.rows.len() - 1;
    art.rows[last][1].push(m1.clone());
    art.rows[last][0].push(m1.clone());
    let rep = verify_artifact(&art, Exec::Parallel).unwrap();
    assert_eq!(rep.verdict, Verdict::Failed);
    let scope = format!("row {last}");
    let (_, rec) = rep.clause_failures().find(|(s, r)| *s == scope && r.clause == 6).expect("clause 6 fails");
    assert_eq!(rec.index, 0);
    assert_eq!(rec.witness.as_deref(), Some(&[m1][..]));
}

#[test]
fn tampered_descriptor_is_rejected() {
    let b = built();
    let mut art = b.artifact.clone();
    let last = art.descriptor.polynomials.len() - 1;
    art.descriptor.polynomials[last].coeffs[0] = (art.descriptor.polynomials[last].coeffs[0] + 1) % 3;
    assert!(verify_artifact(&art, Exec::Sequential).map(|r| r.verdict == Verdict::Failed).unwrap_or(true));
    let mut art = b.artifact.clone();
    art.descriptor.characteristic = 4;
    assert!(verify_artifact(&art, Exec::Sequential).map(|r| r.verdict == Verdict::Failed).unwrap_or(true));
}

#[test]
fn malformed_text_is_a_parse_error() {
    assert!(verify_artifact_str("{", Exec::Sequential).is_err());
    assert!(verify_artifact_str("{\"format\": \"something-else\"}", Exec::Sequential).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn single_deletions_are_caught_exactly_when_a_clause_breaks(row in 1usize..3, stage in 0usize..3, pick in any::<prop::sample::Index>()) {
        let b = built();
        let k = b.oracle.flat();
        let seq = &b.outcome.matrix.rows[row];
        let victim = pick.index(seq.stages[stage].len());
        let mut stages: Vec<Vec<FieldElement>> = seq.stages.iter().map(|s| s.as_slice().to_vec()).collect();
        stages[stage].remove(victim);
        let mut art = b.artifact.clone();
        art.rows[row][stage].remove(victim);

        let broken = (0..2).any(|i| naive_condition(&k, &b.rules[i], &stages[i], &stages[i + 1]).is_some());
        let rep = verify_artifact(&art, Exec::Parallel).unwrap();
        let scope = format!("row {row}");
        prop_assert_eq!(rep.clause_failures().any(|(s, _)| s == scope), broken);
        prop_assert_ne!(rep.verdict, Verdict::Certified);
    }
}
