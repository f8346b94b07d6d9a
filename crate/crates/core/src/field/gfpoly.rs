//! Univariate polynomials over a single `F_q` and their roots.
//!
//! Coefficients are raw coordinate vectors of a [`GfCtx`], constant term
//! first, with no trailing zero coefficients.

use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::gf::GfCtx;

pub type GPoly = Vec<Vec<u32>>;

/// Fields at most this large are searched exhaustively for roots.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

const SPLIT_SEED: u64 = 0x05ee_d0ff_1e1d;

pub fn trim(ctx: &GfCtx, f: &mut GPoly) {
    while f.last().is_some_and(|c| ctx.is_zero(c)) {
        f.pop();
    }
}

pub fn degree(f: &GPoly) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn add(ctx: &GfCtx, f: &GPoly, g: &GPoly) -> GPoly {
    let n = f.len().max(g.len());
    let z = ctx.zero();
    let mut out: GPoly = (0..n).map(|i| ctx.add(f.get(i).unwrap_or(&z), g.get(i).unwrap_or(&z))).collect();
    trim(ctx, &mut out);
    out
}

pub fn sub(ctx: &GfCtx, f: &GPoly, g: &GPoly) -> GPoly {
    let n = f.len().max(g.len());
    let z = ctx.zero();
    let mut out: GPoly = (0..n).map(|i| ctx.sub(f.get(i).unwrap_or(&z), g.get(i).unwrap_or(&z))).collect();
    trim(ctx, &mut out);
    out
}

pub fn mul(ctx: &GfCtx, f: &GPoly, g: &GPoly) -> GPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out: GPoly = vec![ctx.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if ctx.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            if ctx.is_zero(b) {
                continue;
            }
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
        }
    }
    trim(ctx, &mut out);
    out
}

pub fn monic(ctx: &GfCtx, f: &GPoly) -> GPoly {
    match f.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = ctx.inv(lc).expect("nonzero leading coefficient");
            f.iter().map(|c| ctx.mul(c, &inv)).collect()
        }
    }
}

pub fn div_rem(ctx: &GfCtx, f: &GPoly, g: &GPoly) -> (GPoly, GPoly) {
    let dg = degree(g).expect("division by zero polynomial");
    let mut r = f.clone();
    trim(ctx, &mut r);
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let lc_inv = ctx.inv(&g[dg]).expect("nonzero leading coefficient");
    let monic_g = ctx.is_one(&g[dg]);
    let mut q: GPoly = vec![ctx.zero(); r.len() - dg];
    for k in (dg..r.len()).rev() {
        if ctx.is_zero(&r[k]) {
            continue;
        }
        let c = if monic_g { r[k].clone() } else { ctx.mul(&r[k], &lc_inv) };
        for j in 0..dg {
            if !ctx.is_zero(&g[j]) {
                r[k - dg + j] = ctx.sub(&r[k - dg + j], &ctx.mul(&c, &g[j]));
            }
        }
        r[k] = ctx.zero();
        q[k - dg] = c;
    }
    trim(ctx, &mut r);
    trim(ctx, &mut q);
    (q, r)
}

pub fn rem(ctx: &GfCtx, f: &GPoly, g: &GPoly) -> GPoly {
    div_rem(ctx, f, g).1
}

pub fn gcd(ctx: &GfCtx, f: &GPoly, g: &GPoly) -> GPoly {
    let mut a = f.clone();
    let mut b = g.clone();
    trim(ctx, &mut a);
    trim(ctx, &mut b);
    while !b.is_empty() {
        let r = rem(ctx, &a, &b);
        a = std::mem::replace(&mut b, r);
    }
    monic(ctx, &a)
}

pub fn derivative(ctx: &GfCtx, f: &GPoly) -> GPoly {
    let mut out: GPoly = f.iter().enumerate().skip(1).map(|(i, c)| ctx.scale(c, (i as u64 % ctx.p as u64) as u32)).collect();
    trim(ctx, &mut out);
    out
}

pub fn eval(ctx: &GfCtx, f: &GPoly, x: &[u32]) -> Vec<u32> {
    let mut acc = ctx.zero();
    for c in f.iter().rev() {
        acc = ctx.add(&ctx.mul(&acc, x), c);
    }
    acc
}

pub fn mulmod(ctx: &GfCtx, f: &GPoly, g: &GPoly, m: &GPoly) -> GPoly {
    rem(ctx, &mul(ctx, f, g), m)
}

pub fn powmod(ctx: &GfCtx, base: &GPoly, mut e: u64, m: &GPoly) -> GPoly {
    let mut acc = rem(ctx, &vec![ctx.constant(1)], m);
    let mut b = rem(ctx, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(ctx, &acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(ctx, &b, &b, m);
        }
    }
    acc
}

/// `a^(q^k) mod m` where `q = p^d` is the order of the coefficient field.
fn frob_power(ctx: &GfCtx, a: &GPoly, k: usize, m: &GPoly) -> GPoly {
    let mut x = rem(ctx, a, m);
    for _ in 0..k * ctx.degree {
        x = powmod(ctx, &x, ctx.p as u64, m);
    }
    x
}

fn x_poly(ctx: &GfCtx) -> GPoly {
    vec![ctx.zero(), ctx.constant(1)]
}

fn linear(ctx: &GfCtx, r: &[u32]) -> GPoly {
    vec![ctx.neg(r), ctx.constant(1)]
}

fn random_poly(ctx: &GfCtx, len: usize, rng: &mut ChaCha8Rng) -> GPoly {
    let mut f: GPoly = (0..len).map(|_| (0..ctx.degree).map(|_| rng.gen_range(0..ctx.p)).collect()).collect();
    trim(ctx, &mut f);
    f
}

/// Splits a monic squarefree `h` whose irreducible factors all have degree
/// `k` into a nontrivial factorization step, or returns `None` if `h` is
/// already irreducible.
fn split_once(ctx: &GfCtx, h: &GPoly, k: usize, rng: &mut ChaCha8Rng) -> Option<(GPoly, GPoly)> {
    let n = degree(h)?;
    if n <= k {
        return None;
    }
    let ext = k * ctx.degree;
    loop {
        let a = random_poly(ctx, n, rng);
        if a.is_empty() {
            continue;
        }
        let b = if ctx.p == 2 {
            // absolute trace of a in F_{2^ext}
            let mut acc = a.clone();
            let mut w = a;
            for _ in 1..ext {
                w = mulmod(ctx, &w, &w, h);
                acc = add(ctx, &acc, &w);
            }
            acc
        } else {
            let u = powmod(ctx, &a, (ctx.p as u64 - 1) / 2, h);
            let mut acc = u.clone();
            let mut w = u;
            for _ in 1..ext {
                w = powmod(ctx, &w, ctx.p as u64, h);
                acc = mulmod(ctx, &acc, &w, h);
            }
            sub(ctx, &acc, &vec![ctx.constant(1)])
        };
        let g = gcd(ctx, h, &b);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let (q, _) = div_rem(ctx, h, &g);
            return Some((g, monic(ctx, &q)));
        }
    }
}

fn equal_degree_factors(ctx: &GfCtx, h: &GPoly, k: usize, rng: &mut ChaCha8Rng, out: &mut Vec<GPoly>) {
    match split_once(ctx, h, k, rng) {
        None => out.push(h.clone()),
        Some((a, b)) => {
            equal_degree_factors(ctx, &a, k, rng, out);
            equal_degree_factors(ctx, &b, k, rng, out);
        }
    }
}

fn multiplicity(ctx: &GfCtx, f: &GPoly, r: &[u32]) -> usize {
    let lin = linear(ctx, r);
    let mut g = f.clone();
    let mut m = 0;
    loop {
        let (q, rr) = div_rem(ctx, &g, &lin);
        if !rr.is_empty() {
            return m;
        }
        m += 1;
        g = q;
    }
}

/// Distinct roots of `f` in `F_q` with multiplicities, sorted by coordinates.
pub fn roots(ctx: &GfCtx, f: &GPoly) -> Vec<(Vec<u32>, usize)> {
    let f = monic(ctx, f);
    let n = match degree(&f) {
        None | Some(0) => return Vec::new(),
        Some(n) => n,
    };
    let mut found: Vec<Vec<u32>> = Vec::new();
    match ctx.order_u64() {
        Some(q) if q <= EXHAUSTIVE_LIMIT => {
            for i in 0..q {
                let x = ctx.element_from_index(i);
                if ctx.is_zero(&eval(ctx, &f, &x)) {
                    found.push(x);
                    if found.len() == n {
                        break;
                    }
                }
            }
        }
        _ => {
            let xq = frob_power(ctx, &x_poly(ctx), 1, &f);
            let h = gcd(ctx, &f, &sub(ctx, &xq, &x_poly(ctx)));
            if degree(&h).unwrap_or(0) > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
                let mut lins = Vec::new();
                equal_degree_factors(ctx, &h, 1, &mut rng, &mut lins);
                for l in lins {
                    found.push(ctx.neg(&l[0]));
                }
            }
        }
    }
    found.sort();
    found.into_iter().map(|r| {
        let m = multiplicity(ctx, &f, &r);
        (r, m)
    }).collect()
}

/// A monic irreducible factor of `f` of least degree.
pub fn smallest_factor(ctx: &GfCtx, f: &GPoly) -> GPoly {
    let f = monic(ctx, f);
    let n = degree(&f).expect("nonzero polynomial");
    assert!(n >= 1, "constant polynomial has no factors");
    // squarefree part first so that distinct-degree gcds are clean
    let df = derivative(ctx, &f);
    let mut g = if df.is_empty() { f.clone() } else {
        let c = gcd(ctx, &f, &df);
        if degree(&c).unwrap_or(0) == 0 { f.clone() } else { monic(ctx, &div_rem(ctx, &f, &c).0) }
    };
    if degree(&g).unwrap_or(0) == 0 {
        // f is a p-th power; its p-th root has the same roots
        g = pth_root(ctx, &f);
        return smallest_factor(ctx, &g);
    }
    let x = x_poly(ctx);
    let mut xk = rem(ctx, &x, &g);
    let mut k = 0;
    loop {
        k += 1;
        xk = frob_power(ctx, &xk, 1, &g);
        let h = gcd(ctx, &g, &sub(ctx, &xk, &x));
        if degree(&h).unwrap_or(0) > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ k as u64);
            let mut cur = h;
            while let Some((a, b)) = split_once(ctx, &cur, k, &mut rng) {
                cur = if degree(&a) <= degree(&b) { a } else { b };
            }
            return cur;
        }
        if 2 * k > degree(&g).unwrap() {
            return g;
        }
    }
}

/// For `f(X) = h(X^p)`, returns the polynomial whose `p`-th power is `f`.
fn pth_root(ctx: &GfCtx, f: &GPoly) -> GPoly {
    let p = ctx.p as usize;
    let root_exp = ctx.order_u64().map(|q| q / ctx.p as u64);
    f.iter()
        .step_by(p)
        .map(|c| match root_exp {
            Some(e) => ctx.pow_u64(c, e),
            None => {
                let e = ctx.order() / num_bigint::BigUint::from(ctx.p);
                ctx.pow_big(c, &e)
            }
        })
        .collect()
}
