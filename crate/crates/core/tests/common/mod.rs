#![allow(dead_code)]

use topoforge_core::conditions::{FiniteStage, Rule};
use topoforge_core::field::{FieldElement, GfField};
use topoforge_core::ring::{eval_normed, Ring};

/// `F_16` as `F_2[X] / (X^4 + X + 1)`.
pub fn f16() -> GfField {
    GfField::from_modulus(2, vec![1, 1, 0, 0, 1])
}

pub fn prime_field(p: u32) -> GfField {
    GfField::from_modulus(p, vec![0, 1])
}

pub fn elements(k: &GfField) -> Vec<FieldElement> {
    let q = k.ctx.order_u64().unwrap();
    (0..q).map(|n| k.wrap(k.ctx.element_from_index(n))).collect()
}

/// Every coefficient tuple of `B^{n-1}`, `c_0` first.
pub fn tuples<E: Clone>(b: &[E], len: usize) -> Vec<Vec<E>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| b.iter().map(move |x| {
            let mut t = t.clone();
            t.push(x.clone());
            t
        })).collect();
    }
    out
}

/// The seven clauses read straight off the definition, one quantifier at a
/// time. Returns the first failing clause.
pub fn naive_condition<R: Ring>(ring: &R, rule: &Rule<R::Elem>, a: &[R::Elem], b: &[R::Elem]) -> Option<u8> {
    let has = |x: &R::Elem| a.contains(x);
    let one = ring.one();
    if !has(&ring.zero()) {
        return Some(1);
    }
    if !b.iter().all(has) {
        return Some(2);
    }
    if !b.iter().all(|x| b.iter().all(|y| has(&ring.sub(x, y)))) {
        return Some(3);
    }
    if !b.iter().all(|x| b.iter().all(|y| has(&ring.mul(x, y)))) {
        return Some(4);
    }
    if !b.iter().all(|y| has(&ring.mul(&rule.a, y))) {
        return Some(5);
    }
    for y in b {
        let u = ring.add(&one, y);
        match ring.inv_unit(&u) {
            Some(w) if has(&ring.sub(&w, &one)) => {}
            _ => return Some(6),
        }
    }
    for cs in tuples(b, rule.n - 1) {
        let ok = a.iter().any(|x| {
            let r = ring.sub(x, &one);
            let (v, d) = eval_normed(ring, rule.n, &cs, &r);
            ring.is_zero(&v) && ring.is_simple_derivative(&d)
        });
        if !ok {
            return Some(7);
        }
    }
    None
}

/// Smallest `A ⊇ extra` with `C_i(A, B)` in a finite field, taking the first
/// available simple root for each clause-7 tuple. `None` when `-1 ∈ B` or a
/// tuple has no simple root in the field.
pub fn finite_closure(k: &GfField, rule: &Rule<FieldElement>, b: &[FieldElement], extra: &[FieldElement]) -> Option<FiniteStage<FieldElement>> {
    let one = k.one();
    let mut out: Vec<FieldElement> = extra.to_vec();
    out.push(k.zero());
    out.extend(b.iter().cloned());
    for x in b {
        for y in b {
            out.push(k.sub(x, y));
            out.push(k.mul(x, y));
        }
        out.push(k.mul(&rule.a, x));
        out.push(k.inv_one_plus(x)?);
    }
    let all = elements(k);
    for cs in tuples(b, rule.n - 1) {
        let r = all.iter().find(|r| {
            let (v, d) = eval_normed(k, rule.n, &cs, r);
            k.is_zero(&v) && !k.is_zero(&d)
        })?;
        out.push(k.add(r, &one));
    }
    Some(FiniteStage::new(out))
}
