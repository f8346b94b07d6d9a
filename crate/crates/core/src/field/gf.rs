//! Arithmetic in a single finite field `F_p[X]/(f)`.

use std::sync::Arc;

use num_bigint::BigUint;

use super::element::FieldElement;
use super::{fpoly, modp};
use crate::ring::{Field, Ring};

/// Context for `F_{p^d}` presented by a monic irreducible `f` of degree `d`.
#[derive(Debug)]
pub struct GfCtx {
    pub p: u32,
    pub degree: usize,
    /// Monic modulus, constant term first, length `d + 1`.
    pub modulus: Vec<u32>,
    /// Nonzero entries of `-f` below the leading term.
    neg_tail: Vec<(usize, u32)>,
}

impl GfCtx {
    pub fn new(p: u32, modulus: Vec<u32>) -> Self {
        let degree = modulus.len() - 1;
        assert!(degree >= 1 && modulus[degree] == 1, "modulus must be monic");
        let neg_tail = modulus[..degree]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, modp::neg(c, p)))
            .collect();
        GfCtx { p, degree, modulus, neg_tail }
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.degree]
    }

    pub fn constant(&self, c: u32) -> Vec<u32> {
        let mut v = self.zero();
        v[0] = c % self.p;
        v
    }

    pub fn generator(&self) -> Vec<u32> {
        let mut x = vec![0u32, 1];
        x.resize(self.degree.max(2), 0);
        fpoly::trim(&mut x);
        let mut out = fpoly::rem(&x, &self.modulus, self.p);
        out.resize(self.degree, 0);
        out
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| modp::add(x, y, self.p)).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| modp::sub(x, y, self.p)).collect()
    }

    pub fn neg(&self, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| modp::neg(x, self.p)).collect()
    }

    pub fn scale(&self, a: &[u32], c: u32) -> Vec<u32> {
        a.iter().map(|&x| modp::mul(x, c, self.p)).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let d = self.degree;
        let p = self.p as u64;
        if d == 1 {
            return vec![((a[0] as u64 * b[0] as u64) % p) as u32];
        }
        let mut acc = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            for (slot, &y) in acc[i..i + d].iter_mut().zip(b) {
                *slot += x * y as u64;
            }
        }
        self.reduce(acc)
    }

    fn reduce(&self, mut acc: Vec<u64>) -> Vec<u32> {
        let d = self.degree;
        let p = self.p as u64;
        for k in (d..acc.len()).rev() {
            let c = acc[k] % p;
            if c == 0 {
                continue;
            }
            let base = k - d;
            for &(j, nf) in &self.neg_tail {
                acc[base + j] += c * nf as u64;
            }
        }
        acc.truncate(d);
        acc.into_iter().map(|x| (x % p) as u32).collect()
    }

    pub fn is_zero(&self, a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &[u32]) -> bool {
        a[0] == 1 % self.p && a[1..].iter().all(|&c| c == 0)
    }

    pub fn pow_u64(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut acc = self.constant(1);
        let mut base = a.to_vec();
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

    pub fn pow_big(&self, a: &[u32], e: &BigUint) -> Vec<u32> {
        let mut acc = self.constant(1);
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The Frobenius image `a^p`.
    pub fn frobenius(&self, a: &[u32]) -> Vec<u32> {
        self.pow_u64(a, self.p as u64)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: &[u32]) -> Option<Vec<u32>> {
        let p = self.p;
        let mut r0: Vec<u32> = self.modulus.clone();
        let mut r1: Vec<u32> = a.to_vec();
        fpoly::trim(&mut r1);
        if r1.is_empty() {
            return None;
        }
        let mut s0: Vec<u32> = Vec::new();
        let mut s1: Vec<u32> = vec![1];
        while fpoly::degree(&r1).unwrap_or(0) > 0 {
            let (q, r) = fpoly::div_rem(&r0, &r1, p);
            let s = fpoly::sub(&s0, &fpoly::mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            if r1.is_empty() {
                return None;
            }
        }
        let c = modp::inv(r1[0], p);
        let mut out: Vec<u32> = s1.iter().map(|&x| modp::mul(x, c, p)).collect();
        out.resize(self.degree, 0);
        Some(out)
    }

    /// Order of the field as an integer.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.degree as u32)
    }

    /// `Some(q)` when `q = p^d` fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        let mut q: u64 = 1;
        for _ in 0..self.degree {
            q = q.checked_mul(self.p as u64)?;
        }
        Some(q)
    }

    /// The element with index `n` in the base-`p` numbering whose least
    /// significant digit is the coefficient of `g^{d-1}`.
    pub fn element_from_index(&self, mut n: u64) -> Vec<u32> {
        let mut v = self.zero();
        for k in (0..self.degree).rev() {
            v[k] = (n % self.p as u64) as u32;
            n /= self.p as u64;
        }
        v
    }
}

/// `F_{p^d}` as a [`Ring`] over [`FieldElement`] values of degree `d`.
#[derive(Clone, Debug)]
pub struct GfField {
    pub ctx: Arc<GfCtx>,
}

impl GfField {
    pub fn new(ctx: Arc<GfCtx>) -> Self {
        GfField { ctx }
    }

    pub fn from_modulus(p: u32, modulus: Vec<u32>) -> Self {
        GfField { ctx: Arc::new(GfCtx::new(p, modulus)) }
    }

    pub fn p(&self) -> u32 {
        self.ctx.p
    }

    pub fn degree(&self) -> usize {
        self.ctx.degree
    }

    pub fn wrap(&self, coeffs: Vec<u32>) -> FieldElement {
        FieldElement { degree: self.ctx.degree, coeffs }
    }

    pub fn generator(&self) -> FieldElement {
        self.wrap(self.ctx.generator())
    }

    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.wrap(self.ctx.frobenius(&a.coeffs))
    }
}

impl Ring for GfField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        self.wrap(self.ctx.zero())
    }

    fn one(&self) -> FieldElement {
        self.wrap(self.ctx.constant(1))
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.wrap(self.ctx.add(&a.coeffs, &b.coeffs))
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.wrap(self.ctx.sub(&a.coeffs, &b.coeffs))
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.wrap(self.ctx.mul(&a.coeffs, &b.coeffs))
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.wrap(self.ctx.neg(&a.coeffs))
    }

    fn from_int(&self, n: i64) -> FieldElement {
        self.wrap(self.ctx.constant(modp::from_i64(n, self.ctx.p)))
    }

    fn inv_unit(&self, a: &FieldElement) -> Option<FieldElement> {
        self.ctx.inv(&a.coeffs).map(|c| self.wrap(c))
    }

    fn encode(&self, a: &FieldElement) -> String {
        a.encode(self.ctx.p)
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
}

impl Field for GfField {}
