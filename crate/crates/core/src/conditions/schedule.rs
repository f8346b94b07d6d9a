//! The fair schedules `i ↦ a_i` and `i ↦ n_i`.
//!
//! Both read the first coordinate of the Cantor diagonal unpairing of `i`:
//! `a_i` is that element of the field enumeration and `n_i = 2 + first`.
//! Every first coordinate recurs for infinitely many `i`, which is all the
//! construction needs.

use crate::field::{Elem, FieldOracle};

pub const SCHEDULE_ID: &str = "cantor-diagonal";

/// Cantor pairing `π(x, y) = (x + y)(x + y + 1)/2 + x`.
pub fn pair(x: u64, y: u64) -> u64 {
    let w = x + y;
    w * (w + 1) / 2 + x
}

/// Inverse of [`pair`].
pub fn unpair(z: u64) -> (u64, u64) {
    // largest w with w(w+1)/2 <= z
    let mut w = ((8.0 * z as f64 + 1.0).sqrt() as u64).saturating_sub(1) / 2;
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    let x = z - w * (w + 1) / 2;
    (x, w - x)
}

/// The schedule entry at stage index `i`: the constant `a_i` for clause 5
/// and the degree `n_i` for clause 7.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule<E> {
    pub a: E,
    pub n: usize,
}

/// Enumeration index of `a_i` and the degree `n_i`.
pub fn schedule_index(i: u64) -> (u64, usize) {
    let (first, _) = unpair(i);
    (first, 2 + first as usize)
}

pub fn schedule_at<O: FieldOracle>(oracle: &mut O, i: usize) -> Rule<Elem<O>> {
    let (e, n) = schedule_index(i as u64);
    Rule { a: oracle.element(e), n }
}

/// Rules for indices `0..len`, all in the oracle's final working field.
pub fn schedule_prefix<O: FieldOracle>(oracle: &mut O, len: usize) -> Vec<Rule<Elem<O>>> {
    let rules: Vec<_> = (0..len).map(|i| schedule_at(oracle, i)).collect();
    rules.into_iter().map(|r| Rule { a: oracle.lift(&r.a), n: r.n }).collect()
}

/// A stage index `i` at which `a_i` is the `element`-th enumerated element,
/// the `k`-th such index.
pub fn occurrence(element: u64, k: u64) -> u64 {
    pair(element, k)
}
