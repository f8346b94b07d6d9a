mod common;

use common::prime_field;
use topoforge_core::conditions::{check_axioms, check_condition, check_suitable, schedule_prefix, FiniteStage, Rule, StageSequence};
use topoforge_core::field::{FieldOracle, Fpbar, GfField, RationalOracle};
use topoforge_core::forge::{
    build_frontier_topology, build_topology, certify, close_core, extend_in_k, extend_in_r, specialize_to_k, BuildStatus, CloseLimits,
    FieldSpec, RunConfig, SampleSet, SeriesBuilder, StageMatrix, Strategy,
};
use topoforge_core::par::Exec;
use topoforge_core::ring::Ring;
use topoforge_core::series::{SeriesRing, TruncatedSeries};
use topoforge_core::ForgeError;

fn series(k: &GfField, r: &SeriesRing<GfField>, bits: &[i64]) -> TruncatedSeries<topoforge_core::field::FieldElement> {
    r.from_coeffs(bits.iter().map(|&b| k.from_int(b)).collect())
}

fn golden(k: &GfField, r: &SeriesRing<GfField>) -> FiniteStage<TruncatedSeries<topoforge_core::field::FieldElement>> {
    [vec![0], vec![0, 1], vec![0, 0, 1], vec![0, 1, 1, 1, 1, 1, 1, 1], vec![0, 1, 1, 0, 1]]
        .iter()
        .map(|bits| series(k, r, bits))
        .collect()
}

fn zeros(k: &GfField, len: usize) -> StageSequence<topoforge_core::field::FieldElement> {
    StageSequence::zeros(k.zero(), len)
}

fn config(p: u32, rows: usize) -> RunConfig {
    RunConfig::new(FieldSpec::Prime(p), rows)
}

/// Columns increase, the diagonal grows strictly, and every row and the
/// union pass the checker.
fn assert_well_formed<O: FieldOracle>(oracle: &mut O, m: &StageMatrix<topoforge_core::field::Elem<O>>) {
    let k = oracle.flat();
    let zero = k.zero();
    let j_max = m.certified_rows();
    let rules = schedule_prefix(oracle, j_max);
    for j in 1..=j_max {
        let (prev, row) = (&m.rows[j - 1], &m.rows[j]);
        assert!(prev.is_contained_in(row, &zero), "row {j} drops elements");
        assert!(row.stage(j, &zero).len() > prev.stage(j, &zero).len(), "row {j} does not grow at {j}");
        assert!(!prev.stage(j, &zero).contains(&m.witnesses[j - 1]));
        assert!(row.stage(j, &zero).contains(&m.witnesses[j - 1]));
        let rep = check_suitable(&k, row, &rules, j_max, Exec::Parallel);
        assert!(rep.passed(), "row {j}: {:?}", rep.first_failure());
    }
    let union = m.union_prefix(&zero);
    assert!(check_suitable(&k, &union, &rules, j_max, Exec::Parallel).passed());
    for j in 1..=j_max {
        assert!(union.stage(j, &zero).iter().any(|x| !k.is_zero(x)));
    }
}

#[test]
fn golden_closure_has_residues_in_a() {
    let k = prime_field(2);
    let mut b = SeriesBuilder::new(k.clone(), 8);
    let ids = [b.constant(k.zero()), b.seed()];
    let rule = Rule { a: k.one(), n: 2 };
    let out = close_core(&mut b, 0, &rule, &FiniteStage::singleton(k.zero()), &ids, CloseLimits::default()).unwrap();
    let got = b.stage_set(&out);
    assert_eq!(got, golden(&k, &b.ring));
    assert!(got.iter().all(|s| k.is_zero(s.residue())));
    let bp = b.stage_set(&ids);
    assert!(check_condition(&b.ring, 0, &Rule { a: b.ring.constant(k.one()), n: 2 }, &got, &bp, Exec::Sequential).passed());
}

#[test]
fn extension_over_series_from_the_zero_sequence() {
    let k = prime_field(2);
    for a in [k.zero(), k.one()] {
        let rules = vec![Rule { a, n: 2 }];
        let b = extend_in_r(k.clone(), &zeros(&k, 2), 1, &rules, 8, CloseLimits::default()).unwrap();
        let seq = b.program.stage_values(b.values());
        let r = &b.ring;
        let zero = r.zero();
        assert_eq!(seq.stage(1, &zero), [r.zero(), r.t()].into_iter().collect());
        assert_eq!(seq.stage(0, &zero), golden(&k, r));
    }
}

#[test]
fn extension_leaves_stages_above_the_target() {
    let k = prime_field(2);
    let rules = vec![Rule { a: k.zero(), n: 2 }, Rule { a: k.zero(), n: 2 }];
    let b = extend_in_r(k.clone(), &zeros(&k, 5), 2, &rules, 8, CloseLimits::default()).unwrap();
    let seq = b.program.stage_values(b.values());
    let zero = b.ring.zero();
    for i in 3..5 {
        assert_eq!(seq.stage(i, &zero), FiniteStage::singleton(zero.clone()));
    }
    assert_eq!(seq.stage(2, &zero).len(), 2);
}

#[test]
fn seed_is_fresh_at_a_nonzero_target() {
    let k = prime_field(2);
    let base = StageSequence::new(vec![[k.zero(), k.one()].into_iter().collect(), FiniteStage::singleton(k.zero())]);
    let b = extend_in_r(k.clone(), &base, 0, &[], 8, CloseLimits::default()).unwrap();
    let seq = b.program.stage_values(b.values());
    assert_eq!(seq.stage(0, &b.ring.zero()).len(), 3);
}

#[test]
fn replaying_a_program_reproduces_the_stages() {
    let mut o = Fpbar::new(3).unwrap();
    let rules = schedule_prefix(&mut o, 3);
    let k = o.flat();
    let b = extend_in_r(k.clone(), &zeros(&k, 4), 2, &rules, 8, CloseLimits::default()).unwrap();
    let again = extend_in_r(k.clone(), &zeros(&k, 4), 2, &rules, 8, CloseLimits::default()).unwrap();
    assert_eq!(b.program, again.program);
    assert_eq!(b.program.evaluate_series(&b.ring).unwrap(), b.values());
}

#[test]
fn specializing_at_the_generator_of_f4() {
    let mut o = Fpbar::new(2).unwrap();
    o.ensure_degree(2);
    let rules = schedule_prefix(&mut o, 1);
    let k = o.flat();
    let base = zeros(&k, 2);
    let b = extend_in_r(k.clone(), &base, 1, &rules, 8, CloseLimits::default()).unwrap();
    let g = k.generator();
    let got = specialize_to_k(&mut o, &b.program, &base, &g, 1, &rules, 8, Exec::Parallel);
    let k = o.flat();
    let g = FieldOracle::lift(&o, &g);
    if let Some(seq) = got {
        let a0 = seq.stage(0, &k.zero());
        let g2 = k.mul(&g, &g);
        let inv = k.inv_one_plus(&g).unwrap();
        for x in [k.zero(), g.clone(), g2, inv] {
            assert!(a0.contains(&x));
        }
        assert_eq!(o.top_degree() % 4, 0, "roots of X^2 + X + g lie in F_16");
        assert!(certify(&o, &seq, &base, 1, &rules, Exec::Sequential));
    } else {
        let rep = check_suitable(&k, &base, &rules, 1, Exec::Sequential);
        assert!(rep.passed());
    }
}

#[test]
fn zero_seed_is_rejected() {
    let mut o = Fpbar::new(2).unwrap();
    let rules = schedule_prefix(&mut o, 1);
    let k = o.flat();
    let base = zeros(&k, 2);
    let b = extend_in_r(k.clone(), &base, 1, &rules, 8, CloseLimits::default()).unwrap();
    assert!(specialize_to_k(&mut o, &b.program, &base, &k.zero(), 1, &rules, 8, Exec::Parallel).is_none());
}

#[test]
fn extension_in_k_contains_its_seed() {
    let mut o = Fpbar::new(2).unwrap();
    let k = o.flat();
    let base = zeros(&k, 2);
    let (seq, tau) = extend_in_k(&mut o, &base, 1, &config(2, 1)).unwrap();
    let k = o.flat();
    assert!(!k.is_zero(&tau));
    assert!(seq.stage(1, &k.zero()).contains(&tau));
    let rules = schedule_prefix(&mut o, 1);
    assert!(check_suitable(&k, &seq, &rules, 1, Exec::Parallel).passed());
}

#[test]
fn repeated_extension_grows_the_diagonal() {
    for strategy in [Strategy::SeriesGuided, Strategy::DirectGreedy] {
        let mut o = Fpbar::new(2).unwrap();
        let cfg = RunConfig { strategy, ..config(2, 3) };
        let out = build_topology(&mut o, &cfg).unwrap();
        assert_eq!(out.status, BuildStatus::Complete);
        assert_eq!(out.matrix.certified_rows(), 3);
        assert_well_formed(&mut o, &out.matrix);
    }
}

#[test]
fn built_sequences_satisfy_the_basis_conditions() {
    let mut o = Fpbar::new(3).unwrap();
    let out = build_topology(&mut o, &config(3, 2)).unwrap();
    let k = o.flat();
    let union = out.matrix.union_prefix(&k.zero());
    let rules = schedule_prefix(&mut o, 2);
    let rep = check_axioms(&k, &union, &rules, 2, Exec::Parallel);
    assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
}

#[test]
fn single_row_and_empty_builds() {
    let mut o = Fpbar::new(2).unwrap();
    let one = build_topology(&mut o, &config(2, 1)).unwrap();
    assert_eq!(one.status, BuildStatus::Complete);
    assert_well_formed(&mut o, &one.matrix);

    let mut o = Fpbar::new(2).unwrap();
    let none = build_topology(&mut o, &config(2, 0)).unwrap();
    assert_eq!(none.status, BuildStatus::Complete);
    assert_eq!(none.matrix.rows, vec![StageSequence::zeros(o.flat().zero(), 1)]);
}

#[test]
fn builds_are_deterministic_across_execution_modes() {
    let run = |exec| {
        let mut o = Fpbar::new(5).unwrap();
        let out = build_topology(&mut o, &RunConfig { exec, ..config(5, 2) }).unwrap();
        (out.matrix, o.descriptor())
    };
    let a = run(Exec::Parallel);
    assert_eq!(a, run(Exec::Sequential));
    assert_eq!(a, run(Exec::Parallel));
}

#[test]
fn rational_control_exhausts_its_budget() {
    let mut o = RationalOracle::new();
    let cfg = RunConfig::new(FieldSpec::RationalControl, 2);
    let out = build_topology(&mut o, &cfg).unwrap();
    assert!(matches!(out.status, BuildStatus::BudgetExhausted { row: 2, .. }), "{:?}", out.status);
    assert_eq!(out.matrix.certified_rows(), 1);
    let k = o.flat();
    let rules = schedule_prefix(&mut o, 2);
    assert!(check_suitable(&k, &out.matrix.rows[1], &rules, 2, Exec::Sequential).passed());
}

fn one_dim(o: &mut Fpbar, indices: std::ops::Range<u64>) -> SampleSet<topoforge_core::field::FieldElement> {
    let tuples = indices.map(|i| vec![o.element(i)]).collect();
    let zero = o.flat().zero();
    SampleSet::new(1, tuples, vec![zero]).unwrap()
}

#[test]
fn frontier_over_degree_four_samples() {
    let mut o = Fpbar::new(2).unwrap();
    let samples = one_dim(&mut o, 9..17);
    let out = build_frontier_topology(&mut o, &samples, &config(2, 3)).unwrap();
    assert_eq!(out.status, BuildStatus::Complete);
    assert_well_formed(&mut o, &out.matrix);
    let k = o.flat();
    for (j, &s) in out.matrix.samples.iter().enumerate() {
        let x = FieldOracle::lift(&o, &samples.tuples[s][0]);
        assert!(!k.is_zero(&x));
        assert!(out.matrix.rows[j + 1].stage(j + 1, &k.zero()).contains(&x));
    }
}

#[test]
fn frontier_over_the_first_nonzero_elements_stalls() {
    let mut o = Fpbar::new(2).unwrap();
    let samples = one_dim(&mut o, 1..9);
    let out = build_frontier_topology(&mut o, &samples, &config(2, 3)).unwrap();
    assert!(matches!(out.status, BuildStatus::BudgetExhausted { row: 3, .. }), "{:?}", out.status);
    assert_eq!(out.matrix.certified_rows(), 2);
    assert_well_formed(&mut o, &out.matrix);
}

#[test]
fn sample_sets_exclude_their_limit() {
    let k = prime_field(2);
    let only_zero = SampleSet::new(1, vec![vec![k.zero()]], vec![k.zero()]);
    assert!(matches!(only_zero, Err(ForgeError::Precondition(_))));
    assert!(SampleSet::<topoforge_core::field::FieldElement>::new(1, vec![], vec![k.zero()]).is_err());
    assert!(SampleSet::new(2, vec![vec![k.one()]], vec![k.zero(), k.zero()]).is_err());
}

#[test]
fn sample_containing_minus_one_is_passed_over() {
    let mut o = Fpbar::new(3).unwrap();
    let m1 = o.element(2);
    let k = o.flat();
    assert_eq!(m1, k.neg(&k.one()));
    let tuples = vec![vec![m1.clone(), o.element(12)], vec![o.element(10), o.element(11)]];
    let samples = SampleSet::new(2, tuples, vec![k.zero(), k.zero()]).unwrap();
    let out = build_frontier_topology(&mut o, &samples, &config(3, 1)).unwrap();
    assert_eq!(out.status, BuildStatus::Complete);
    assert_eq!(out.matrix.samples, vec![1]);

    let k = o.flat();
    let m1 = FieldOracle::lift(&o, &m1);
    let rule = schedule_prefix(&mut o, 1).remove(0);
    let rep = check_condition(&k, 0, &rule, &out.matrix.rows[1].stage(0, &k.zero()), &[k.zero(), m1.clone()].into_iter().collect(), Exec::Sequential);
    assert_eq!(rep.clause(0, 6).unwrap().witness.as_deref(), Some(&[k.encode(&m1)][..]));
}
