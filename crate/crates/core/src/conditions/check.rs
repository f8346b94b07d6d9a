//! The condition `C_i(A, B)` and suitability of stage sequences.

use std::sync::atomic::{AtomicU64, Ordering};

use super::report::{ClauseRecord, VerificationReport};
use super::schedule::Rule;
use super::stage::{FiniteStage, StageSequence};
use crate::par::Exec;
use crate::ring::Ring;

/// Evaluates all seven clauses of `C_i(A, B)` for the schedule entry `rule`.
pub fn check_condition<R: Ring>(
    ring: &R,
    i: usize,
    rule: &Rule<R::Elem>,
    a: &FiniteStage<R::Elem>,
    b: &FiniteStage<R::Elem>,
    exec: Exec,
) -> VerificationReport {
    let witnesses: [Option<Vec<R::Elem>>; 7] = [
        clause1(ring, a),
        b.first_missing_from(a).map(|x| vec![x.clone()]),
        pairwise(ring, a, b, exec, false, |x, y| ring.sub(x, y)),
        pairwise(ring, a, b, exec, true, |x, y| ring.mul(x, y)),
        scaled(ring, &rule.a, a, b),
        clause6(ring, a, b, exec),
        clause7(ring, rule.n, a, b, exec),
    ];
    let records = witnesses
        .into_iter()
        .enumerate()
        .map(|(k, w)| ClauseRecord {
            index: i,
            clause: k as u8 + 1,
            pass: w.is_none(),
            witness: w.map(|xs| xs.iter().map(|x| ring.encode(x)).collect()),
        })
        .collect();
    VerificationReport { records }
}

/// Checks `C_i(A_i, A_{i+1})` for every `i < upto`, with `rules[i]` the
/// schedule entry at `i`.
pub fn check_suitable<R: Ring>(
    ring: &R,
    seq: &StageSequence<R::Elem>,
    rules: &[Rule<R::Elem>],
    upto: usize,
    exec: Exec,
) -> VerificationReport {
    let zero = ring.zero();
    let mut report = VerificationReport::default();
    for (i, rule) in rules[..upto].iter().enumerate() {
        let a = seq.stage(i, &zero);
        let b = seq.stage(i + 1, &zero);
        report.extend(check_condition(ring, i, rule, &a, &b, exec));
    }
    report
}

fn clause1<R: Ring>(ring: &R, a: &FiniteStage<R::Elem>) -> Option<Vec<R::Elem>> {
    let z = ring.zero();
    (!a.contains(&z)).then(|| vec![z])
}

/// First pair `(x, y)` from `B` with `op(x, y) ∉ A`; only `x <= y` when
/// `symmetric`.
fn pairwise<R: Ring>(
    _ring: &R,
    a: &FiniteStage<R::Elem>,
    b: &FiniteStage<R::Elem>,
    exec: Exec,
    symmetric: bool,
    op: impl Fn(&R::Elem, &R::Elem) -> R::Elem + Sync + Send,
) -> Option<Vec<R::Elem>> {
    let bs = b.as_slice();
    exec.find_first(bs.len(), |k| {
        let x = &bs[k];
        let start = if symmetric { k } else { 0 };
        bs[start..].iter().find(|y| !a.contains(&op(x, y))).map(|y| vec![x.clone(), y.clone()])
    })
    .map(|(_, w)| w)
}

fn scaled<R: Ring>(ring: &R, c: &R::Elem, a: &FiniteStage<R::Elem>, b: &FiniteStage<R::Elem>) -> Option<Vec<R::Elem>> {
    b.iter().find(|x| !a.contains(&ring.mul(c, x))).map(|x| vec![x.clone()])
}

fn clause6<R: Ring>(ring: &R, a: &FiniteStage<R::Elem>, b: &FiniteStage<R::Elem>, exec: Exec) -> Option<Vec<R::Elem>> {
    let m1 = ring.neg(&ring.one());
    if b.contains(&m1) {
        return Some(vec![m1]);
    }
    let bs = b.as_slice();
    exec.find_first(bs.len(), |k| match ring.inv_one_plus(&bs[k]) {
        Some(w) if a.contains(&w) => None,
        _ => Some(vec![bs[k].clone()]),
    })
    .map(|(_, w)| w)
}

/// Clause 7 by marking: every `x ∈ A` with `r = x - 1` and every choice of
/// `c_1, …, c_{n-2}` in `B` determines the unique `c_0` making `r` a root;
/// the clause holds iff every tuple of `B^{n-1}` gets marked by a simple root.
/// The witness is the first unmarked tuple `(c_0, …, c_{n-2})`.
pub fn clause7<R: Ring>(ring: &R, n: usize, a: &FiniteStage<R::Elem>, b: &FiniteStage<R::Elem>, exec: Exec) -> Option<Vec<R::Elem>> {
    assert!(n >= 2);
    let bs = b.as_slice();
    let m = bs.len();
    if m == 0 {
        return None;
    }
    let inner = m.checked_pow(n as u32 - 2).expect("coefficient tuple count overflows");
    let total = inner.checked_mul(m).expect("coefficient tuple count overflows");
    let marks: Vec<AtomicU64> = (0..total.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let one = ring.one();
    let consts: Vec<R::Elem> = (0..=n as i64).map(|k| ring.from_int(k)).collect();
    let xs = a.as_slice();
    exec.for_each(xs.len(), |ix| {
        let r = ring.sub(&xs[ix], &one);
        let mut pw = Vec::with_capacity(n + 1);
        pw.push(one.clone());
        for k in 1..=n {
            pw.push(ring.mul(&pw[k - 1], &r));
        }
        let head = ring.add(&pw[n], &pw[n - 1]);
        let dhead = ring.add(&ring.mul(&consts[n], &pw[n - 1]), &ring.mul(&consts[n - 1], &pw[n - 2]));
        let mut digits = vec![0usize; n - 2];
        for t in 0..inner {
            if t > 0 {
                // odometer over (c_1, …, c_{n-2})
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < m {
                        break;
                    }
                    *d = 0;
                }
            }
            let mut s = head.clone();
            for (k, &d) in digits.iter().enumerate() {
                s = ring.add(&s, &ring.mul(&bs[d], &pw[k + 1]));
            }
            let Some(j) = b.position(&ring.neg(&s)) else { continue };
            let mut ds = dhead.clone();
            for (k, &d) in digits.iter().enumerate() {
                ds = ring.add(&ds, &ring.mul(&ring.mul(&consts[k + 1], &bs[d]), &pw[k]));
            }
            if ring.is_simple_derivative(&ds) {
                let slot = j + m * t;
                marks[slot / 64].fetch_or(1 << (slot % 64), Ordering::Relaxed);
            }
        }
    });
    let missing = (0..total).find(|&slot| marks[slot / 64].load(Ordering::Relaxed) >> (slot % 64) & 1 == 0)?;
    let mut rest = missing;
    let mut tuple = Vec::with_capacity(n - 1);
    for _ in 0..n - 1 {
        tuple.push(bs[rest % m].clone());
        rest /= m;
    }
    Some(tuple)
}

/// For every coefficient tuple of `B^{n-1}` (indexed with `c_0` varying
/// fastest), the positions in `A` of the elements `x` for which `x - 1` is a
/// simple root, in increasing order.
pub fn root_table<R: Ring>(ring: &R, n: usize, a: &FiniteStage<R::Elem>, b: &FiniteStage<R::Elem>, exec: Exec) -> Vec<Vec<usize>> {
    assert!(n >= 2);
    let bs = b.as_slice();
    let m = bs.len();
    let inner = m.pow(n as u32 - 2);
    let one = ring.one();
    let consts: Vec<R::Elem> = (0..=n as i64).map(|k| ring.from_int(k)).collect();
    let hits: Vec<Vec<usize>> = exec.map_range(a.len(), |ix| {
        let r = ring.sub(&a.as_slice()[ix], &one);
        let mut pw = vec![one.clone()];
        for k in 1..=n {
            pw.push(ring.mul(&pw[k - 1], &r));
        }
        let head = ring.add(&pw[n], &pw[n - 1]);
        let dhead = ring.add(&ring.mul(&consts[n], &pw[n - 1]), &ring.mul(&consts[n - 1], &pw[n - 2]));
        let mut out = Vec::new();
        let mut digits = vec![0usize; n - 2];
        for t in 0..inner {
            if t > 0 {
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < m {
                        break;
                    }
                    *d = 0;
                }
            }
            let mut s = head.clone();
            let mut ds = dhead.clone();
            for (k, &d) in digits.iter().enumerate() {
                s = ring.add(&s, &ring.mul(&bs[d], &pw[k + 1]));
                ds = ring.add(&ds, &ring.mul(&ring.mul(&consts[k + 1], &bs[d]), &pw[k]));
            }
            if let Some(j) = b.position(&ring.neg(&s)) {
                if ring.is_simple_derivative(&ds) {
                    out.push(j + m * t);
                }
            }
        }
        out
    });
    let mut table = vec![Vec::new(); inner * m];
    for (ix, slots) in hits.into_iter().enumerate() {
        for s in slots {
            table[s].push(ix);
        }
    }
    table
}

/// Index of a coefficient tuple `(c_0, …, c_{n-2})` given by positions in `B`.
pub fn tuple_index(positions: &[usize], m: usize) -> usize {
    positions.iter().rev().fold(0, |acc, &p| acc * m + p)
}

/// Whether `X^n + X^{n-1} + c_{n-2} X^{n-2} + … + c_0` has a simple root in
/// `-1 + A`; returns the first such `x ∈ A`.
pub fn find_simple_root_in<'a, R: Ring>(ring: &R, n: usize, coeffs: &[R::Elem], a: &'a FiniteStage<R::Elem>) -> Option<&'a R::Elem> {
    let one = ring.one();
    a.iter().find(|x| {
        let r = ring.sub(x, &one);
        let (v, d) = crate::ring::eval_normed(ring, n, coeffs, &r);
        ring.is_zero(&v) && ring.is_simple_derivative(&d)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GfField;

    fn fp(p: u32) -> GfField {
        GfField::from_modulus(p, vec![0, 1])
    }

    fn stage(k: &GfField, xs: &[i64]) -> FiniteStage<crate::field::FieldElement> {
        xs.iter().map(|&x| k.from_int(x)).collect()
    }

    #[test]
    fn trivial_pair_passes() {
        let k = fp(2);
        let z = stage(&k, &[0]);
        let rule = Rule { a: k.zero(), n: 2 };
        assert!(check_condition(&k, 0, &rule, &z, &z, Exec::Sequential).passed());
    }

    #[test]
    fn minus_one_in_b_fails_clause6() {
        let k = fp(2);
        let rule = Rule { a: k.zero(), n: 2 };
        let rep = check_condition(&k, 0, &rule, &stage(&k, &[0]), &stage(&k, &[1]), Exec::Sequential);
        let c6 = rep.clause(0, 6).unwrap();
        assert!(!c6.pass);
        assert_eq!(c6.witness.as_deref(), Some(&["p:2;d:1;c:[1]".to_string()][..]));
    }

    #[test]
    fn zero_and_one_over_zero() {
        let k = fp(2);
        let rule = Rule { a: k.zero(), n: 2 };
        let rep = check_condition(&k, 0, &rule, &stage(&k, &[0, 1]), &stage(&k, &[0]), Exec::Sequential);
        assert!(rep.passed());
    }

    #[test]
    fn clause7_witness_is_unmarked_tuple() {
        // over F_3 with B = {0, 1}: X^2 + X + 1 = (X - 1)^2 has no simple root
        let k = fp(3);
        let a = stage(&k, &[0, 1, 2]);
        let b = stage(&k, &[0, 1]);
        let w = clause7(&k, 2, &a, &b, Exec::Parallel).unwrap();
        assert_eq!(w, vec![k.one()]);
    }

    #[test]
    fn modes_agree_on_clause7() {
        let k = fp(5);
        let a = stage(&k, &[0, 1, 2, 3]);
        let b = stage(&k, &[0, 2, 3]);
        for n in 2..5 {
            assert_eq!(clause7(&k, n, &a, &b, Exec::Sequential), clause7(&k, n, &a, &b, Exec::Parallel));
        }
    }
}
