//! Dense univariate polynomials over `F_p`, constant term first.
//!
//! Only what the tower needs: products, remainders, gcd, modular powers and
//! the Rabin irreducibility test used to pick defining polynomials.

use super::modp;

pub type FpPoly = Vec<u32>;

pub fn trim(f: &mut FpPoly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub fn degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn add(f: &[u32], g: &[u32], p: u32) -> FpPoly {
    let n = f.len().max(g.len());
    let mut out: FpPoly = (0..n)
        .map(|i| modp::add(*f.get(i).unwrap_or(&0), *g.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut out);
    out
}

pub fn sub(f: &[u32], g: &[u32], p: u32) -> FpPoly {
    let n = f.len().max(g.len());
    let mut out: FpPoly = (0..n)
        .map(|i| modp::sub(*f.get(i).unwrap_or(&0), *g.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut out);
    out
}

pub fn mul(f: &[u32], g: &[u32], p: u32) -> FpPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            acc[i + j] += a as u64 * b as u64;
        }
        if i % 1024 == 1023 {
            acc.iter_mut().for_each(|x| *x %= p as u64);
        }
    }
    let mut out: FpPoly = acc.into_iter().map(|x| (x % p as u64) as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `f` modulo a nonzero `g`.
pub fn rem(f: &[u32], g: &[u32], p: u32) -> FpPoly {
    div_rem(f, g, p).1
}

pub fn div_rem(f: &[u32], g: &[u32], p: u32) -> (FpPoly, FpPoly) {
    let dg = degree(g).expect("division by zero polynomial");
    let mut r: FpPoly = f.to_vec();
    trim(&mut r);
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let lc_inv = modp::inv(g[dg], p);
    let mut q = vec![0u32; r.len() - dg];
    for k in (dg..r.len()).rev() {
        let c = modp::mul(r[k], lc_inv, p);
        if c == 0 {
            continue;
        }
        q[k - dg] = c;
        for j in 0..=dg {
            r[k - dg + j] = modp::sub(r[k - dg + j], modp::mul(c, g[j], p), p);
        }
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn monic(f: &[u32], p: u32) -> FpPoly {
    match degree(f) {
        None => Vec::new(),
        Some(d) => {
            let inv = modp::inv(f[d], p);
            f[..=d].iter().map(|&c| modp::mul(c, inv, p)).collect()
        }
    }
}

pub fn gcd(f: &[u32], g: &[u32], p: u32) -> FpPoly {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

pub fn mulmod(f: &[u32], g: &[u32], m: &[u32], p: u32) -> FpPoly {
    rem(&mul(f, g, p), m, p)
}

/// `base^(p^k) mod m` by repeated Frobenius.
pub fn frobenius_pow(base: &[u32], k: usize, m: &[u32], p: u32) -> FpPoly {
    let mut x = rem(base, m, p);
    for _ in 0..k {
        x = powmod_u64(&x, p as u64, m, p);
    }
    x
}

pub fn powmod_u64(base: &[u32], mut e: u64, m: &[u32], p: u32) -> FpPoly {
    let mut acc: FpPoly = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(&b, &b, m, p);
        }
    }
    acc
}

/// Rabin's test: a monic `f` of degree `n` is irreducible over `F_p` iff
/// `X^(p^n) = X mod f` and `gcd(X^(p^(n/q)) - X, f) = 1` for each prime `q | n`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = match degree(f) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let x: FpPoly = vec![0, 1];
    for q in modp::prime_factors(n as u64) {
        let h = frobenius_pow(&x, n / q as usize, f, p);
        let g = gcd(&sub(&h, &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    let h = frobenius_pow(&x, n, f, p);
    sub(&h, &x, p).is_empty()
}

/// Lexicographically least monic irreducible polynomial of degree `d`.
///
/// Candidates `X^d + c_{d-1} X^{d-1} + ... + c_0` are ordered by the
/// coefficient vector `(c_{d-1}, ..., c_0)` read as a base-`p` number, so
/// for `p = 2` the degree-2 answer is `X^2 + X + 1`.
pub fn lex_least_irreducible(d: usize, p: u32) -> FpPoly {
    assert!(d >= 1);
    if d == 1 {
        return vec![0, 1];
    }
    let mut digits = vec![0u32; d];
    loop {
        // digits[0] is the most significant (coefficient of X^{d-1}).
        let mut f: FpPoly = vec![0; d + 1];
        for (k, &c) in digits.iter().enumerate() {
            f[d - 1 - k] = c;
        }
        f[d] = 1;
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
        let mut k = d;
        loop {
            if k == 0 {
                unreachable!("irreducible polynomials of every degree exist");
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
        }
    }
}
