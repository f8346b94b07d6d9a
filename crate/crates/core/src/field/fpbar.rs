//! The algebraic closure of `F_p` as a lazily grown tower of finite fields.
//!
//! The working field is the top of a chain `F_p = F_{p^{D_0}} ⊂ F_{p^{D_1}} ⊂ …`
//! whose consecutive embeddings are stored as matrices. Any other degree `d`
//! that has been touched is anchored at the first chain level it divides, by
//! the image of its generator there; every embedding is a composite of these,
//! so they agree on the whole tower.
//!
//! Chain levels up to [`LEX_LIMIT`] use the lexicographically least
//! irreducible polynomial. Larger levels are presented by the minimal
//! polynomial of a primitive element of the relative extension, which avoids
//! root finding over a field of twice the size.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::element::FieldElement;
use super::gf::{GfCtx, GfField};
use super::gfpoly::{self, GPoly};
use super::linalg::Matrix;
use super::poly::Poly;
use super::{fpoly, modp};
use crate::error::FieldError;

/// Chain levels of at most this degree use lexicographically least polynomials.
pub const LEX_LIMIT: usize = 32;

/// Degrees whose enumeration lists are cached in full.
const ENUM_CACHE_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug)]
struct Level {
    ctx: Arc<GfCtx>,
    /// Columns are the images of the previous level's power basis.
    embed: Option<Matrix>,
}

#[derive(Clone, Debug)]
struct Anchor {
    level: usize,
    image: Vec<u32>,
}

/// Exported description of a tower: enough to rebuild every field and check
/// every stored embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub characteristic: u32,
    /// Degree of the field all exported elements are written in.
    pub working_degree: usize,
    /// Degrees of the chain of working fields, in order of construction.
    pub chain: Vec<usize>,
    pub polynomials: Vec<PolynomialRecord>,
    pub embeddings: Vec<EmbeddingRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialRecord {
    pub degree: usize,
    /// Monic, constant term first.
    pub coeffs: Vec<u32>,
}

/// The image of the degree-`from` generator in degree `to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingRecord {
    pub from: usize,
    pub to: usize,
    pub image: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Fpbar {
    p: u32,
    chain: Vec<Level>,
    polys: BTreeMap<usize, Vec<u32>>,
    anchors: BTreeMap<usize, Anchor>,
    enum_cache: BTreeMap<usize, Arc<Vec<Vec<u32>>>>,
    epoch: u64,
}

impl Fpbar {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if !(2..1 << 16).contains(&p) || !modp::is_prime(p as u64) {
            return Err(FieldError::BadCharacteristic(p));
        }
        let base = vec![0, 1];
        let mut polys = BTreeMap::new();
        polys.insert(1, base.clone());
        let mut anchors = BTreeMap::new();
        anchors.insert(1, Anchor { level: 0, image: vec![0] });
        Ok(Fpbar {
            p,
            chain: vec![Level { ctx: Arc::new(GfCtx::new(p, base)), embed: None }],
            polys,
            anchors,
            enum_cache: BTreeMap::new(),
            epoch: 0,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn top_degree(&self) -> usize {
        self.top_ctx().degree
    }

    fn top_ctx(&self) -> &Arc<GfCtx> {
        &self.chain.last().unwrap().ctx
    }

    /// The current working field.
    pub fn top(&self) -> GfField {
        GfField::new(self.top_ctx().clone())
    }

    /// Changes whenever the working field grows.
    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    pub fn chain_degrees(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.ctx.degree).collect()
    }

    /// Defining polynomial of `F_{p^d}`, fixing it on first use.
    pub fn poly_for_degree(&mut self, d: usize) -> Vec<u32> {
        self.polys.entry(d).or_insert_with(|| fpoly::lex_least_irreducible(d, self.p)).clone()
    }

    fn field_of_degree(&mut self, d: usize) -> GfCtx {
        GfCtx::new(self.p, self.poly_for_degree(d))
    }

    /// Grows the working field until `d` divides its degree and anchors `d`.
    pub fn ensure_degree(&mut self, d: usize) {
        assert!(d >= 1);
        if self.anchors.contains_key(&d) {
            return;
        }
        let top = self.top_degree();
        if !top.is_multiple_of(d) {
            let f = self.poly_for_degree(d);
            let ctx = self.top_ctx().clone();
            let fg: GPoly = f.iter().map(|&c| ctx.constant(c)).collect();
            let h = gfpoly::smallest_factor(&ctx, &fg);
            self.grow_with(&h);
        }
        if self.anchors.contains_key(&d) {
            return;
        }
        let level = self.chain.iter().position(|l| l.ctx.degree % d == 0).unwrap();
        let ctx = self.chain[level].ctx.clone();
        let f = self.poly_for_degree(d);
        let image = if ctx.degree == d && ctx.modulus == f {
            ctx.generator()
        } else {
            let fg: GPoly = f.iter().map(|&c| ctx.constant(c)).collect();
            gfpoly::roots(&ctx, &fg).into_iter().next().expect("subfield generator has a root").0
        };
        self.anchors.insert(d, Anchor { level, image });
    }

    /// Adjoins a root of `h`, irreducible over the working field.
    fn grow_with(&mut self, h: &GPoly) {
        let old = self.top_ctx().clone();
        let m = h.len() - 1;
        assert!(m >= 2, "growth needs an irreducible factor of degree at least 2");
        let d_old = old.degree;
        let d_new = d_old * m;
        let (ctx, embed) = if d_new <= LEX_LIMIT || self.polys.contains_key(&d_new) {
            let ctx = self.field_of_degree(d_new);
            let fg: GPoly = old.modulus.iter().map(|&c| ctx.constant(c)).collect();
            let gamma = gfpoly::roots(&ctx, &fg).into_iter().next().expect("embedding exists").0;
            let mut cols = Vec::with_capacity(d_old);
            let mut pw = ctx.constant(1);
            for _ in 0..d_old {
                cols.push(pw.clone());
                pw = ctx.mul(&pw, &gamma);
            }
            let embed = Matrix::from_columns(d_new, &cols);
            (ctx, embed)
        } else {
            relative_presentation(&old, h)
        };
        self.polys.insert(d_new, ctx.modulus.clone());
        let level = self.chain.len();
        let gen = ctx.generator();
        self.chain.push(Level { ctx: Arc::new(ctx), embed: Some(embed) });
        self.anchors.entry(d_new).or_insert(Anchor { level, image: gen });
        self.epoch += 1;
    }

    fn chain_level(&self, degree: usize) -> Option<usize> {
        self.chain.iter().position(|l| l.ctx.degree == degree)
    }

    /// Maps coordinates at chain level `from` up to chain level `to`.
    fn lift_levels(&self, mut v: Vec<u32>, from: usize, to: usize) -> Vec<u32> {
        for lvl in &self.chain[from + 1..=to] {
            v = lvl.embed.as_ref().unwrap().mul_vec(&v, self.p);
        }
        v
    }

    /// Value of an element of a registered degree at its anchor level.
    fn at_anchor(&self, x: &FieldElement) -> Result<(usize, Vec<u32>), FieldError> {
        let a = self.anchors.get(&x.degree).ok_or(FieldError::UnknownDegree(x.degree))?;
        let ctx = &self.chain[a.level].ctx;
        if ctx.degree == x.degree && self.chain_level(x.degree) == Some(a.level) {
            return Ok((a.level, x.coeffs.clone()));
        }
        let mut acc = ctx.zero();
        for c in x.coeffs.iter().rev() {
            acc = ctx.mul(&acc, &a.image);
            acc[0] = modp::add(acc[0], *c, self.p);
        }
        Ok((a.level, acc))
    }

    /// Image of `x` in the working field. The degree of `x` must already be
    /// part of the tower; see [`Fpbar::import`].
    pub fn lift(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        let top = self.chain.len() - 1;
        if x.degree == self.top_degree() && self.chain_level(x.degree) == Some(top) {
            return Ok(x.clone());
        }
        let (level, v) = self.at_anchor(x)?;
        let coeffs = self.lift_levels(v, level, top);
        Ok(FieldElement { degree: self.top_degree(), coeffs })
    }

    /// Brings `x` into the working field, growing it if needed.
    pub fn import(&mut self, x: &FieldElement) -> FieldElement {
        self.ensure_degree(x.degree);
        self.lift(x).expect("degree was just registered")
    }

    /// Canonical equality: compares images in a common field.
    pub fn equal(&mut self, x: &FieldElement, y: &FieldElement) -> bool {
        self.import(x) == self.import(y)
    }

    /// The least `e` with `x` in `F_{p^e}`, for `x` in the working field.
    pub fn minimal_degree(&self, x: &FieldElement) -> usize {
        let ctx = self.top_ctx();
        let d = ctx.degree;
        let mut y = x.coeffs.clone();
        for e in 1..=d {
            y = ctx.frobenius(&y);
            if d.is_multiple_of(e) && y == x.coeffs {
                return e;
            }
        }
        d
    }

    /// Rewrites a working-field element in the basis of its own degree.
    pub fn home(&mut self, x: &FieldElement) -> FieldElement {
        let e = self.minimal_degree(x);
        self.ensure_degree(e);
        let gen = self.lift(&FieldElement { degree: e, coeffs: unit_vector(e, 1.min(e - 1)) }).unwrap();
        let ctx = self.top_ctx().clone();
        let mut cols = Vec::with_capacity(e);
        let mut pw = ctx.constant(1);
        for _ in 0..e {
            cols.push(pw.clone());
            pw = ctx.mul(&pw, &gen.coeffs);
        }
        let m = Matrix::from_columns(ctx.degree, &cols);
        let coeffs = m.solve(&x.coeffs, self.p).expect("element lies in its minimal subfield");
        FieldElement { degree: e, coeffs }
    }

    /// All roots of a nonzero polynomial in the algebraic closure, with
    /// multiplicities, written in their own degrees and sorted by
    /// (degree, coefficients).
    pub fn roots_of(&mut self, f: &Poly) -> Result<Vec<(FieldElement, usize)>, FieldError> {
        let n = f.degree().ok_or(FieldError::ZeroPolynomial)?;
        for c in &f.coeffs {
            if c.coeffs.len() != c.degree {
                return Err(FieldError::UnknownDegree(c.degree));
            }
            self.ensure_degree(c.degree);
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        let found = loop {
            let ctx = self.top_ctx().clone();
            let g: GPoly = f.coeffs.iter().map(|c| self.lift(c).unwrap().coeffs).collect();
            let rs = gfpoly::roots(&ctx, &g);
            let total: usize = rs.iter().map(|(_, m)| m).sum();
            if total == n {
                break rs;
            }
            let mut rest = gfpoly::monic(&ctx, &g);
            for (r, m) in &rs {
                let lin = vec![ctx.neg(r), ctx.constant(1)];
                for _ in 0..*m {
                    rest = gfpoly::div_rem(&ctx, &rest, &lin).0;
                }
            }
            let h = gfpoly::smallest_factor(&ctx, &rest);
            self.grow_with(&h);
        };
        let top = self.top();
        let mut out: Vec<(FieldElement, usize)> = found.into_iter().map(|(r, m)| (self.home(&top.wrap(r)), m)).collect();
        out.sort();
        Ok(out)
    }

    /// Simple roots of `X^n + X^{n-1} + c_{n-2} X^{n-2} + … + c_0` (coefficients
    /// in the working field), growing the field by the least degree that
    /// produces one. Roots are returned in the (possibly new) working field,
    /// sorted by coordinates.
    pub fn simple_roots(&mut self, n: usize, coeffs: &[FieldElement]) -> Result<Vec<FieldElement>, FieldError> {
        let start = self.top_degree();
        let ctx0 = self.top_ctx().clone();
        let mut g0: GPoly = coeffs.iter().map(|c| c.coeffs.clone()).collect();
        g0.push(ctx0.constant(1));
        g0.push(ctx0.constant(1));
        debug_assert_eq!(g0.len(), n + 1);
        loop {
            let ctx = self.top_ctx().clone();
            let g: GPoly = if ctx.degree == start {
                g0.clone()
            } else {
                let level = self.chain_level(start).unwrap();
                let top = self.chain.len() - 1;
                g0.iter().map(|c| self.lift_levels(c.clone(), level, top)).collect()
            };
            let u = simple_part(&ctx, &g);
            if gfpoly::degree(&u).unwrap_or(0) == 0 {
                return Err(FieldError::NoSimpleRoot);
            }
            let rs = gfpoly::roots(&ctx, &u);
            if !rs.is_empty() {
                let field = self.top();
                return Ok(rs.into_iter().map(|(r, _)| field.wrap(r)).collect());
            }
            let h = gfpoly::smallest_factor(&ctx, &u);
            self.grow_with(&h);
        }
    }

    /// Number of elements whose degree over `F_p` is exactly `d`.
    pub fn count_of_degree(&self, d: usize) -> u128 {
        let mut total: i128 = 0;
        for e in modp::divisors(d as u64) {
            total += modp::moebius(d as u64 / e) as i128 * (self.p as i128).pow(e as u32);
        }
        total as u128
    }

    fn is_new_in_degree(ctx: &GfCtx, x: &[u32]) -> bool {
        let d = ctx.degree;
        for q in modp::prime_factors(d as u64) {
            let mut y = x.to_vec();
            for _ in 0..d / q as usize {
                y = ctx.frobenius(&y);
            }
            if y == x {
                return false;
            }
        }
        true
    }

    /// Elements of degree exactly `d`, in lexicographic order of
    /// `(c_0, …, c_{d-1})`.
    fn new_elements(&mut self, d: usize) -> Arc<Vec<Vec<u32>>> {
        if let Some(v) = self.enum_cache.get(&d) {
            return v.clone();
        }
        let ctx = self.field_of_degree(d);
        let q = (self.p as u64).checked_pow(d as u32).filter(|&q| q <= ENUM_CACHE_LIMIT).expect("enumeration degree too large to list");
        let mut out = Vec::new();
        for n in 0..q {
            let x = lex_vector(n, d, self.p);
            if d == 1 || Self::is_new_in_degree(&ctx, &x) {
                out.push(x);
            }
        }
        let out = Arc::new(out);
        self.enum_cache.insert(d, out.clone());
        out
    }

    /// The `index`-th element of the fixed enumeration of `F_p`-bar, in its
    /// own degree.
    pub fn element_home(&mut self, index: u64) -> FieldElement {
        let mut rest = index as u128;
        let mut d = 1;
        loop {
            let c = self.count_of_degree(d);
            if rest < c {
                break;
            }
            rest -= c;
            d += 1;
        }
        let coeffs = if (self.p as u64).checked_pow(d as u32).is_some_and(|q| q <= ENUM_CACHE_LIMIT) {
            self.new_elements(d)[rest as usize].clone()
        } else {
            let ctx = self.field_of_degree(d);
            let mut n = 0u64;
            loop {
                let x = lex_vector(n, d, self.p);
                if Self::is_new_in_degree(&ctx, &x) {
                    if rest == 0 {
                        break x;
                    }
                    rest -= 1;
                }
                n += 1;
            }
        };
        FieldElement { degree: d, coeffs }
    }

    /// The `index`-th enumerated element in the working field.
    pub fn element(&mut self, index: u64) -> FieldElement {
        let x = self.element_home(index);
        self.import(&x)
    }

    /// Elements of the least degree `d` with `p^d >= min_field` that lie in
    /// no proper subfield, shuffled by `rng`, at most `count` of them, in
    /// their own degree.
    pub fn seed_candidates_home(&mut self, min_field: u64, count: usize, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
        let mut d = 1;
        while (self.p as u64).pow(d as u32) < min_field.max(2) {
            d += 1;
        }
        let mut all: Vec<Vec<u32>> = self.new_elements(d).iter().filter(|x| x.iter().any(|&c| c != 0)).cloned().collect();
        all.shuffle(rng);
        all.truncate(count);
        all.into_iter().map(|coeffs| FieldElement { degree: d, coeffs }).collect()
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        let polynomials = self.polys.iter().map(|(&degree, c)| PolynomialRecord { degree, coeffs: c.clone() }).collect();
        let mut embeddings = Vec::new();
        for (&d, a) in &self.anchors {
            for (k, lvl) in self.chain.iter().enumerate().skip(a.level) {
                if lvl.ctx.degree == d {
                    continue;
                }
                let gen = FieldElement { degree: d, coeffs: unit_vector(d, 1.min(d - 1)) };
                let (level, v) = self.at_anchor(&gen).unwrap();
                let image = self.lift_levels(v, level, k);
                embeddings.push(EmbeddingRecord { from: d, to: lvl.ctx.degree, image });
            }
        }
        FieldDescriptor {
            characteristic: self.p,
            working_degree: self.top_degree(),
            chain: self.chain_degrees(),
            polynomials,
            embeddings,
        }
    }
}

/// The generator of degree `d`; for `d = 1` this is the root of `X`, i.e. 0.
fn unit_vector(d: usize, k: usize) -> Vec<u32> {
    let mut v = vec![0; d];
    if d > 1 {
        v[k] = 1;
    }
    v
}

/// Digits of `n` in base `p`, most significant first, as `d` coordinates.
fn lex_vector(mut n: u64, d: usize, p: u32) -> Vec<u32> {
    let mut v = vec![0u32; d];
    for k in (0..d).rev() {
        v[k] = (n % p as u64) as u32;
        n /= p as u64;
    }
    v
}

/// The factor of `g` whose roots are exactly the simple roots of `g`.
fn simple_part(ctx: &GfCtx, g: &GPoly) -> GPoly {
    let dg = gfpoly::derivative(ctx, g);
    let mut u = gfpoly::monic(ctx, g);
    if dg.is_empty() {
        return vec![ctx.constant(1)];
    }
    let rep = gfpoly::gcd(ctx, g, &dg);
    loop {
        let c = gfpoly::gcd(ctx, &u, &rep);
        if gfpoly::degree(&c).unwrap_or(0) == 0 {
            return u;
        }
        u = gfpoly::div_rem(ctx, &u, &c).0;
    }
}

/// Presents `F_q[Y]/(h)` over `F_p` by the minimal polynomial of a primitive
/// element `Y + c`, returning the new field and the embedding of `F_q`.
fn relative_presentation(base: &GfCtx, h: &GPoly) -> (GfCtx, Matrix) {
    let p = base.p;
    let d = base.degree;
    let m = h.len() - 1;
    let n = d * m;
    let flatten = |f: &GPoly| -> Vec<u32> {
        let mut v = vec![0u32; n];
        for (j, c) in f.iter().enumerate() {
            v[j * d..(j + 1) * d].copy_from_slice(c);
        }
        v
    };
    let h = gfpoly::monic(base, h);
    for s in 0u64.. {
        let c = base.element_from_index(s);
        let theta: GPoly = {
            let mut t = vec![c, base.constant(1)];
            gfpoly::trim(base, &mut t);
            t
        };
        let mut powers = Vec::with_capacity(n + 1);
        let mut pw: GPoly = vec![base.constant(1)];
        for _ in 0..=n {
            powers.push(flatten(&pw));
            pw = gfpoly::mulmod(base, &pw, &theta, &h);
        }
        let pm = Matrix::from_columns(n, &powers[..n]);
        let Some(pinv) = pm.inverse(p) else { continue };
        let a = pinv.mul_vec(&powers[n], p);
        let mut modulus: Vec<u32> = a.iter().map(|&x| modp::neg(x, p)).collect();
        modulus.push(1);
        let mut embed = Matrix::zeros(n, d);
        for i in 0..n {
            for j in 0..d {
                embed.set(i, j, pinv.get(i, j));
            }
        }
        return (GfCtx::new(p, modulus), embed);
    }
    unreachable!()
}
