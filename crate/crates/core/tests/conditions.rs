mod common;

use common::{elements, f16, finite_closure, naive_condition, prime_field};
use proptest::prelude::*;
use topoforge_core::conditions::{
    check_condition, find_simple_root_in, pair, schedule_index, unpair, FiniteStage, Rule,
};
use topoforge_core::field::{FieldElement, GfField};
use topoforge_core::par::Exec;
use topoforge_core::ring::{eval_normed, Ring};

fn subset(all: &[FieldElement], mask: u32) -> Vec<FieldElement> {
    all.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, x)| x.clone()).collect()
}

fn holds(k: &GfField, rule: &Rule<FieldElement>, a: &[FieldElement], b: &[FieldElement]) -> bool {
    check_condition(k, 0, rule, &FiniteStage::new(a.to_vec()), &FiniteStage::new(b.to_vec()), Exec::Parallel).passed()
}

#[test]
fn zero_over_zero_holds_for_every_degree() {
    for p in [2, 3, 5, 7] {
        let k = prime_field(p);
        let all = elements(&k);
        for n in 2..=6 {
            for a in &all {
                let rule = Rule { a: a.clone(), n };
                let z = FiniteStage::singleton(k.zero());
                let rep = check_condition(&k, 0, &rule, &z, &z, Exec::Sequential);
                assert!(rep.passed(), "p={p} n={n}: {:?}", rep.first_failure());
            }
        }
    }
}

#[test]
fn minus_one_is_a_simple_root_of_the_zero_tuple() {
    for p in [2, 3, 5, 7] {
        let k = prime_field(p);
        let a = FiniteStage::singleton(k.zero());
        let one = k.one();
        for n in 2..=6 {
            let coeffs = vec![k.zero(); n - 1];
            let x = find_simple_root_in(&k, n, &coeffs, &a).expect("root -1 found");
            let r = k.sub(x, &one);
            let (v, d) = eval_normed(&k, n, &coeffs, &r);
            assert!(k.is_zero(&v));
            assert!(d == one || d == k.neg(&one), "p={p} n={n}");
        }
    }
}

#[test]
fn any_stage_with_zero_covers_the_zero_stage() {
    let k = f16();
    let all = elements(&k);
    for mask in [1u32, 0b1011, 0xffff, 0x8001] {
        let a = subset(&all, mask);
        for n in 2..=5 {
            let rule = Rule { a: k.generator(), n };
            assert!(holds(&k, &rule, &a, &[k.zero()]));
        }
    }
}

#[test]
fn minus_one_in_b_is_reported_by_clause_six() {
    let k = prime_field(5);
    let all = elements(&k);
    let m1 = k.neg(&k.one());
    let rule = Rule { a: k.zero(), n: 2 };
    let rep = check_condition(&k, 3, &rule, &FiniteStage::new(all.clone()), &FiniteStage::new(vec![k.zero(), m1.clone()]), Exec::Parallel);
    let rec = rep.clause(3, 6).unwrap();
    assert!(!rec.pass);
    assert_eq!(rec.witness.as_deref(), Some(&[k.encode(&m1)][..]));
    assert!(rep.failures().all(|r| r.clause >= 6));
}

#[test]
fn all_of_a_small_field_fails_only_by_minus_one() {
    let k = prime_field(3);
    let all = elements(&k);
    let rule = Rule { a: k.one(), n: 3 };
    let rep = check_condition(&k, 0, &rule, &FiniteStage::new(all.clone()), &FiniteStage::new(all.clone()), Exec::Parallel);
    assert!(rep.failures().all(|r| r.clause == 6 || r.clause == 7));
    assert!(!rep.clause(0, 6).unwrap().pass);
}

#[test]
fn closure_in_f16_satisfies_the_condition() {
    let k = f16();
    let g = k.generator();
    let rule = Rule { a: g.clone(), n: 3 };
    let b = vec![k.zero(), g.clone()];
    let a = finite_closure(&k, &rule, &b, &[]).expect("closure exists");
    assert!(holds(&k, &rule, a.as_slice(), &b));
    assert_eq!(naive_condition(&k, &rule, a.as_slice(), &b), None);
}

#[test]
fn schedule_starts_on_the_diagonal() {
    let firsts: Vec<(u64, usize)> = (0..6).map(schedule_index).collect();
    assert_eq!(firsts, vec![(0, 2), (0, 2), (1, 3), (0, 2), (1, 3), (2, 4)]);
    for z in 0..2000 {
        let (x, y) = unpair(z);
        assert_eq!(pair(x, y), z);
    }
}

#[test]
fn every_element_recurs_in_the_schedule() {
    for e in 0..8u64 {
        let hits = (0..400u64).filter(|&i| schedule_index(i).0 == e).count();
        assert!(hits >= 10, "element {e} seen {hits} times");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn checker_agrees_with_the_definition(
        amask in any::<u16>(),
        bmask in any::<u16>(),
        ai in 0usize..16,
        n in 2usize..5,
    ) {
        let k = f16();
        let all = elements(&k);
        let a = subset(&all, amask as u32);
        let b = subset(&all, ((bmask & amask) | (bmask & 0b111)) as u32);
        let rule = Rule { a: all[ai].clone(), n };
        let fast = check_condition(&k, 0, &rule, &FiniteStage::new(a.clone()), &FiniteStage::new(b.clone()), Exec::Sequential);
        let par = check_condition(&k, 0, &rule, &FiniteStage::new(a.clone()), &FiniteStage::new(b.clone()), Exec::Parallel);
        prop_assert_eq!(&fast, &par);
        prop_assert_eq!(fast.first_failure().map(|r| r.clause), naive_condition(&k, &rule, &a, &b));
    }

    #[test]
    fn enlarging_a_and_shrinking_b_preserve_the_condition(
        bmask in any::<u16>(),
        extra in any::<u16>(),
        drop in any::<u16>(),
        ai in 0usize..16,
        n in 2usize..4,
    ) {
        let k = f16();
        let all = elements(&k);
        let rule = Rule { a: all[ai].clone(), n };
        let b = subset(&all, (bmask & 0x00ff) as u32 | 1);
        let Some(a) = finite_closure(&k, &rule, &b, &[]) else { return Ok(()); };
        prop_assert!(holds(&k, &rule, a.as_slice(), &b));
        let bigger = a.union(&FiniteStage::new(subset(&all, extra as u32)));
        prop_assert!(holds(&k, &rule, bigger.as_slice(), &b));
        let smaller: Vec<_> = b.iter().enumerate().filter(|(j, _)| drop >> j & 1 == 0).map(|(_, x)| x.clone()).collect();
        prop_assert!(holds(&k, &rule, a.as_slice(), &smaller));
    }

    #[test]
    fn union_of_solutions_over_one_b_is_a_solution(
        b1 in any::<u8>(), x1 in any::<u16>(), x2 in any::<u16>(), ai in 0usize..16,
    ) {
        let k = f16();
        let all = elements(&k);
        let rule = Rule { a: all[ai].clone(), n: 2 };
        let b = subset(&all, b1 as u32 | 1);
        let Some(a1) = finite_closure(&k, &rule, &b, &subset(&all, x1 as u32)) else { return Ok(()); };
        let Some(a2) = finite_closure(&k, &rule, &b, &subset(&all, x2 as u32)) else { return Ok(()); };
        prop_assert!(holds(&k, &rule, a1.union(&a2).as_slice(), &b));
    }
}
