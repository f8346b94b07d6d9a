//! Ring interfaces shared by the field, the series ring and the checker.

use std::fmt::Debug;
use std::hash::Hash;

/// An integral ring with decidable equality, as used by the stage checker.
///
/// Elements are plain values; the ring object carries whatever context the
/// arithmetic needs (modulus, precision, ...). Implementations must be
/// read-only so that the checker can share them across threads.
pub trait Ring: Sync + Send {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem;

    /// Multiplicative inverse of a unit; `None` for non-units.
    fn inv_unit(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Text encoding used in reports and artifacts.
    fn encode(&self, a: &Self::Elem) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// Whether a root with this derivative value counts as simple.
    fn is_simple_derivative(&self, d: &Self::Elem) -> bool {
        !self.is_zero(d)
    }

    /// `(1 + x)^{-1} - 1`, or `None` when `1 + x` is not a unit.
    fn inv_one_plus(&self, x: &Self::Elem) -> Option<Self::Elem> {
        let u = self.add(&self.one(), x);
        self.inv_unit(&u).map(|w| self.sub(&w, &self.one()))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is a unit.
pub trait Field: Ring + Clone {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.inv_unit(a)
    }
}

/// Evaluates `X^n + X^{n-1} + c_{n-2} X^{n-2} + ... + c_0` and its derivative
/// at `x`. `coeffs[k]` is `c_k` and must have length `n - 1`.
pub fn eval_normed<R: Ring + ?Sized>(ring: &R, n: usize, coeffs: &[R::Elem], x: &R::Elem) -> (R::Elem, R::Elem) {
    debug_assert_eq!(coeffs.len() + 1, n);
    // Horner on value and derivative together.
    let mut val = ring.one();
    let mut der = ring.zero();
    // leading X^n, next coefficient of X^{n-1} is 1
    let mut step = |c: &R::Elem| {
        der = ring.add(&ring.mul(&der, x), &val);
        val = ring.add(&ring.mul(&val, x), c);
    };
    step(&ring.one());
    for c in coeffs.iter().rev() {
        step(c);
    }
    (val, der)
}
