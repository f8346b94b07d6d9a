//! The rational numbers, used only as a non-large control field.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::error::ParseError;
use crate::ring::{Field, Ring};

/// Trial division bound when factoring for the rational root test.
const TRIAL_LIMIT: u64 = 1 << 20;
/// Maximum number of candidate roots tried for degree three and above.
const CANDIDATE_LIMIT: usize = 1 << 16;

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn inv_unit(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn encode(&self, a: &BigRational) -> String {
        encode(a)
    }
}

impl Field for Rationals {}

pub fn encode(a: &BigRational) -> String {
    format!("q:{}/{}", a.numer(), a.denom())
}

pub fn decode(s: &str) -> Result<BigRational, ParseError> {
    let bad = || ParseError::Element(s.to_string());
    let body = s.trim().strip_prefix("q:").ok_or_else(bad)?;
    let (n, d) = body.split_once('/').ok_or_else(bad)?;
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if !d.is_positive() {
        return Err(bad());
    }
    let q = BigRational::new(n.clone(), d.clone());
    // only the reduced form is canonical
    if q.numer() != &n || q.denom() != &d {
        return Err(bad());
    }
    Ok(q)
}

/// The `k`-th term (from 1) of the Calkin–Wilf sequence of positive rationals.
fn calkin_wilf(k: u64) -> BigRational {
    let bits = 64 - k.leading_zeros();
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    for i in (0..bits - 1).rev() {
        if k >> i & 1 == 1 {
            a = &a + &b;
        } else {
            b = &a + &b;
        }
    }
    BigRational::new(a, b)
}

/// Enumeration of `Q`: `0, 1, -1, 1/2, -1/2, 2, -2, …`.
pub fn enumerate(index: u64) -> BigRational {
    if index == 0 {
        return BigRational::zero();
    }
    let q = calkin_wilf(index.div_ceil(2));
    if index % 2 == 1 {
        q
    } else {
        -q
    }
}

fn is_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn factor(n: &BigInt) -> Option<Vec<(BigInt, u32)>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((bd, e));
        }
        d += 1;
    }
    if n > BigInt::one() {
        let bound = BigInt::from(TRIAL_LIMIT);
        if &bound * &bound < n {
            return None;
        }
        out.push((n, 1));
    }
    Some(out)
}

fn divisors(n: &BigInt, limit: usize) -> Option<Vec<BigInt>> {
    let fs = factor(n)?;
    let mut out = vec![BigInt::one()];
    for (q, e) in fs {
        let mut next = Vec::new();
        for d in &out {
            let mut x = d.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x = &x * &q;
            }
        }
        if next.len() > limit {
            return None;
        }
        out = next;
    }
    Some(out)
}

fn eval(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn deflate(coeffs: &[BigRational], r: &BigRational) -> Vec<BigRational> {
    // synthetic division by X - r, dropping the zero remainder
    let n = coeffs.len() - 1;
    let mut q = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for k in (0..n).rev() {
        carry = &coeffs[k + 1] + &carry * r;
        q[k] = carry.clone();
    }
    q
}

/// Rational roots of a nonzero polynomial (constant term first) with
/// multiplicities, and whether the search was exhaustive. Quadratics are
/// solved exactly; higher degrees use the rational root theorem with a cap
/// on trial division and candidate count.
pub fn rational_roots(coeffs: &[BigRational]) -> (Vec<(BigRational, usize)>, bool) {
    let mut f: Vec<BigRational> = coeffs.to_vec();
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    assert!(!f.is_empty(), "zero polynomial");
    let mut roots: Vec<(BigRational, usize)> = Vec::new();
    let mut complete = true;
    let push = |roots: &mut Vec<(BigRational, usize)>, r: BigRational| match roots.iter_mut().find(|(x, _)| *x == r) {
        Some((_, m)) => *m += 1,
        None => roots.push((r, 1)),
    };
    while f.len() > 1 && f[0].is_zero() {
        f.remove(0);
        push(&mut roots, BigRational::zero());
    }
    loop {
        let n = f.len() - 1;
        if n == 0 {
            break;
        }
        if n == 1 {
            push(&mut roots, -&f[0] / &f[1]);
            break;
        }
        if n == 2 {
            let (a, b, c) = (&f[2], &f[1], &f[0]);
            let disc = b * b - BigRational::from_integer(BigInt::from(4)) * a * c;
            if let (Some(sn), Some(sd)) = (is_square(disc.numer()), is_square(disc.denom())) {
                let s = BigRational::new(sn, sd);
                let two_a = a * BigRational::from_integer(BigInt::from(2));
                push(&mut roots, (-b - &s) / &two_a);
                push(&mut roots, (-b + &s) / &two_a);
            }
            break;
        }
        // integer model: L * f with L the lcm of denominators
        let l = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = f.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        let (Some(num_div), Some(den_div)) = (divisors(&ints[0], CANDIDATE_LIMIT), divisors(&ints[n], CANDIDATE_LIMIT)) else {
            complete = false;
            break;
        };
        if num_div.len().saturating_mul(den_div.len()) > CANDIDATE_LIMIT {
            complete = false;
            break;
        }
        let mut found = None;
        'search: for u in &num_div {
            for v in &den_div {
                for s in [Sign::Plus, Sign::Minus] {
                    let x = BigRational::new(BigInt::from_biguint(s, u.magnitude().clone()), v.clone());
                    if eval(&f, &x).is_zero() {
                        found = Some(x);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                f = deflate(&f, &r);
                push(&mut roots, r);
            }
            None => break,
        }
    }
    roots.sort();
    (roots, complete)
}

/// The rational control field as a field oracle. It never grows, so
/// polynomials without rational roots stay unsolved.
#[derive(Clone, Debug, Default)]
pub struct RationalOracle {
    incomplete: bool,
}

impl RationalOracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Whether some root search gave up before finishing.
    pub fn saw_incomplete_search(&self) -> bool {
        self.incomplete
    }

    pub fn simple_roots(&mut self, n: usize, coeffs: &[BigRational]) -> Vec<BigRational> {
        let mut f = coeffs.to_vec();
        f.push(BigRational::one());
        f.push(BigRational::one());
        debug_assert_eq!(f.len(), n + 1);
        let (roots, complete) = rational_roots(&f);
        if !complete {
            self.incomplete = true;
        }
        roots.into_iter().filter(|(_, m)| *m == 1).map(|(r, _)| r).collect()
    }

    pub fn seed_candidates(&self, count: usize, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
        let mut all: Vec<BigRational> = (1..=2 * count as u64).map(enumerate).collect();
        all.shuffle(rng);
        all.truncate(count);
        all
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn enumeration_prefix() {
        let got: Vec<BigRational> = (0..7).map(enumerate).collect();
        assert_eq!(got, vec![q(0, 1), q(1, 1), q(-1, 1), q(1, 2), q(-1, 2), q(2, 1), q(-2, 1)]);
    }

    #[test]
    fn quadratic_roots() {
        // X^2 + X - 2 = (X - 1)(X + 2)
        let (r, complete) = rational_roots(&[q(-2, 1), q(1, 1), q(1, 1)]);
        assert!(complete);
        assert_eq!(r, vec![(q(-2, 1), 1), (q(1, 1), 1)]);
        // X^2 + X + 1 has none
        assert!(rational_roots(&[q(1, 1), q(1, 1), q(1, 1)]).0.is_empty());
    }

    #[test]
    fn cubic_roots_with_multiplicity() {
        // (X - 1/2)^2 (X + 3) = X^3 + 2X^2 - 11/4 X + 3/4
        let (r, complete) = rational_roots(&[q(3, 4), q(-11, 4), q(2, 1), q(1, 1)]);
        assert!(complete);
        assert_eq!(r, vec![(q(-3, 1), 1), (q(1, 2), 2)]);
    }

    #[test]
    fn encoding_roundtrip() {
        let x = q(-6, 4);
        assert_eq!(encode(&x), "q:-3/2");
        assert_eq!(decode("q:-3/2").unwrap(), x);
        assert!(decode("q:6/4").is_err());
    }
}
