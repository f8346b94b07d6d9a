//! Truncated power series `K[[t]] / t^N` over an exact field.

use crate::error::{ParseError, SeriesError};
use crate::ring::{Field, Ring};

/// A power series known modulo `t^N`; `coeffs[k]` is the coefficient of `t^k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TruncatedSeries<E> {
    pub coeffs: Vec<E>,
}

impl<E> TruncatedSeries<E> {
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn residue(&self) -> &E {
        &self.coeffs[0]
    }
}

/// `K[[t]] / t^N` for a field `K`.
#[derive(Clone, Debug)]
pub struct SeriesRing<F> {
    pub field: F,
    pub precision: usize,
}

impl<F: Field> SeriesRing<F> {
    pub fn new(field: F, precision: usize) -> Self {
        assert!(precision >= 1);
        SeriesRing { field, precision }
    }

    pub fn constant(&self, c: F::Elem) -> TruncatedSeries<F::Elem> {
        let mut coeffs = vec![self.field.zero(); self.precision];
        coeffs[0] = c;
        TruncatedSeries { coeffs }
    }

    /// The uniformizer `t`.
    pub fn t(&self) -> TruncatedSeries<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    pub fn monomial(&self, c: F::Elem, k: usize) -> TruncatedSeries<F::Elem> {
        let mut coeffs = vec![self.field.zero(); self.precision];
        if k < self.precision {
            coeffs[k] = c;
        }
        TruncatedSeries { coeffs }
    }

    /// Builds a series from its leading coefficients, padding with zeros.
    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> TruncatedSeries<F::Elem> {
        coeffs.resize(self.precision, self.field.zero());
        TruncatedSeries { coeffs }
    }

    /// Restricts or zero-extends to this ring's precision.
    pub fn coerce(&self, s: &TruncatedSeries<F::Elem>) -> TruncatedSeries<F::Elem> {
        self.from_coeffs(s.coeffs.iter().take(self.precision).cloned().collect())
    }

    /// Index of the first nonzero coefficient, `None` for zero mod `t^N`.
    pub fn valuation(&self, s: &TruncatedSeries<F::Elem>) -> Option<usize> {
        s.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn check_precision(&self, s: &TruncatedSeries<F::Elem>) -> Result<(), SeriesError> {
        if s.precision() == self.precision {
            Ok(())
        } else {
            Err(SeriesError::PrecisionMismatch(s.precision(), self.precision))
        }
    }

    /// `(1 + s)^{-1} - 1`; fails when the residue of `s` is `-1`.
    pub fn inv_one_plus_checked(&self, s: &TruncatedSeries<F::Elem>) -> Result<TruncatedSeries<F::Elem>, SeriesError> {
        self.check_precision(s)?;
        self.inv_one_plus(s).ok_or(SeriesError::NonUnit)
    }

    /// Lifts a simple root `rho` of the residue polynomial of `f` (coefficients
    /// constant term first) to a root of `f` modulo `t^N`, by Newton iteration
    /// with doubling precision.
    pub fn hensel_lift(&self, f: &[TruncatedSeries<F::Elem>], rho: &F::Elem) -> Result<TruncatedSeries<F::Elem>, SeriesError> {
        for c in f {
            self.check_precision(c)?;
        }
        let k = &self.field;
        let res: Vec<F::Elem> = f.iter().map(|c| c.residue().clone()).collect();
        let (v, dv) = eval_poly(k, &res, rho);
        if !k.is_zero(&v) || k.is_zero(&dv) {
            return Err(SeriesError::NotSimpleRoot);
        }
        let mut r = self.constant(rho.clone());
        let mut prec = 1;
        while prec < self.precision {
            prec = (2 * prec).min(self.precision);
            let sub = SeriesRing::new(k.clone(), prec);
            let rr = sub.coerce(&r);
            let fs: Vec<_> = f.iter().map(|c| sub.coerce(c)).collect();
            let (v, dv) = eval_poly(&sub, &fs, &rr);
            let step = sub.mul(&v, &sub.inv_unit(&dv).ok_or(SeriesError::NonUnit)?);
            r = self.coerce(&sub.sub(&rr, &step));
        }
        Ok(r)
    }

    /// Hensel lifting for `X^n + X^{n-1} + c_{n-2} X^{n-2} + … + c_0`.
    pub fn hensel_lift_normed(&self, n: usize, coeffs: &[TruncatedSeries<F::Elem>], rho: &F::Elem) -> Result<TruncatedSeries<F::Elem>, SeriesError> {
        let mut f = coeffs.to_vec();
        f.push(self.one());
        f.push(self.one());
        debug_assert_eq!(f.len(), n + 1);
        self.hensel_lift(&f, rho)
    }

    pub fn decode(&self, s: &str, decode_elem: impl Fn(&str) -> Result<F::Elem, ParseError>) -> Result<TruncatedSeries<F::Elem>, ParseError> {
        let coeffs = decode_series(s, decode_elem)?;
        if coeffs.len() != self.precision {
            return Err(ParseError::Series(s.to_string()));
        }
        Ok(TruncatedSeries { coeffs })
    }
}

/// Value and derivative of `f` (constant term first) at `x`.
pub fn eval_poly<R: Ring + ?Sized>(ring: &R, f: &[R::Elem], x: &R::Elem) -> (R::Elem, R::Elem) {
    let mut val = ring.zero();
    let mut der = ring.zero();
    for c in f.iter().rev() {
        der = ring.add(&ring.mul(&der, x), &val);
        val = ring.add(&ring.mul(&val, x), c);
    }
    (val, der)
}

/// Parses `N:<N>;coeffs:[e_0,…]`, splitting elements at top-level commas.
pub fn decode_series<E>(s: &str, decode_elem: impl Fn(&str) -> Result<E, ParseError>) -> Result<Vec<E>, ParseError> {
    let bad = || ParseError::Series(s.to_string());
    let rest = s.trim().strip_prefix("N:").ok_or_else(bad)?;
    let (n, rest) = rest.split_once(";coeffs:[").ok_or_else(bad)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    let body = rest.strip_suffix(']').ok_or_else(bad)?;
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in body.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !body.is_empty() {
        parts.push(&body[start..]);
    }
    if parts.len() != n || n == 0 {
        return Err(bad());
    }
    parts.into_iter().map(decode_elem).collect()
}

impl<F: Field> Ring for SeriesRing<F> {
    type Elem = TruncatedSeries<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.constant(self.field.zero())
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.field.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        TruncatedSeries { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.field.add(x, y)).collect() }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        TruncatedSeries { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.field.sub(x, y)).collect() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.field;
        let n = self.precision;
        let mut out = vec![k.zero(); n];
        let bnz: Vec<usize> = (0..n).filter(|&j| !k.is_zero(&b.coeffs[j])).collect();
        for (i, x) in a.coeffs.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for &j in &bnz {
                if i + j >= n {
                    break;
                }
                out[i + j] = k.add(&out[i + j], &k.mul(x, &b.coeffs[j]));
            }
        }
        TruncatedSeries { coeffs: out }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        TruncatedSeries { coeffs: a.coeffs.iter().map(|x| self.field.neg(x)).collect() }
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.field.from_int(n))
    }

    fn inv_unit(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let k = &self.field;
        let a0inv = k.inv_unit(&a.coeffs[0])?;
        let n = self.precision;
        let mut w: Vec<F::Elem> = Vec::with_capacity(n);
        w.push(a0inv.clone());
        for m in 1..n {
            let mut acc = k.zero();
            for j in 1..=m {
                if !k.is_zero(&a.coeffs[j]) {
                    acc = k.add(&acc, &k.mul(&a.coeffs[j], &w[m - j]));
                }
            }
            w.push(k.neg(&k.mul(&a0inv, &acc)));
        }
        Some(TruncatedSeries { coeffs: w })
    }

    fn encode(&self, a: &Self::Elem) -> String {
        let cs: Vec<String> = a.coeffs.iter().map(|c| self.field.encode(c)).collect();
        format!("N:{};coeffs:[{}]", a.coeffs.len(), cs.join(","))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.iter().all(|c| self.field.is_zero(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GfField;

    fn f2() -> GfField {
        GfField::from_modulus(2, vec![0, 1])
    }

    fn bits(r: &SeriesRing<GfField>, bits: &[u32]) -> TruncatedSeries<crate::field::FieldElement> {
        r.from_coeffs(bits.iter().map(|&b| r.field.from_int(b as i64)).collect())
    }

    #[test]
    fn squaring_spreads_in_char_two() {
        let r = SeriesRing::new(f2(), 8);
        let s = bits(&r, &[0, 1, 1]);
        assert_eq!(r.mul(&s, &s), bits(&r, &[0, 0, 1, 0, 1]));
        assert_eq!(r.mul(&r.t(), &r.t()), bits(&r, &[0, 0, 1]));
    }

    #[test]
    fn geometric_inverse() {
        let r = SeriesRing::new(f2(), 4);
        assert_eq!(r.inv_one_plus_checked(&r.t()).unwrap(), bits(&r, &[0, 1, 1, 1]));
        assert_eq!(r.inv_one_plus_checked(&r.zero()).unwrap(), r.zero());
        assert_eq!(r.inv_one_plus_checked(&r.one()), Err(SeriesError::NonUnit));
    }

    #[test]
    fn hensel_examples() {
        let r = SeriesRing::new(f2(), 4);
        let t = r.t();
        let root = r.hensel_lift_normed(2, std::slice::from_ref(&t), &r.field.zero()).unwrap();
        assert_eq!(root, bits(&r, &[0, 1, 1]));
        let r8 = SeriesRing::new(f2(), 8);
        let root = r8.hensel_lift_normed(2, &[r8.t()], &r8.field.one()).unwrap();
        assert_eq!(root, bits(&r8, &[1, 1, 1, 0, 1]));
    }

    #[test]
    fn rejects_multiple_root() {
        let k = GfField::from_modulus(3, vec![0, 1]);
        let r = SeriesRing::new(k.clone(), 4);
        // X^2 + X + 1 = (X - 1)^2 over F_3
        assert_eq!(r.hensel_lift_normed(2, &[r.one()], &k.one()), Err(SeriesError::NotSimpleRoot));
    }

    #[test]
    fn encoding_roundtrip() {
        let r = SeriesRing::new(f2(), 3);
        let s = bits(&r, &[1, 0, 1]);
        let text = r.encode(&s);
        assert_eq!(text, "N:3;coeffs:[p:2;d:1;c:[1],p:2;d:1;c:[0],p:2;d:1;c:[1]]");
        let back = r.decode(&text, |e| crate::field::FieldElement::decode(e).map(|x| x.1)).unwrap();
        assert_eq!(back, s);
    }
}
