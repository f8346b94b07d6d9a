//! Field elements and their text encoding.

use std::fmt;

use crate::error::ParseError;

/// An element of `F_{p^d}` given by its coordinates in the power basis of the
/// degree-`d` generator.
///
/// Equality and ordering compare representations. Elements produced by the
/// same oracle are kept in a common degree, where this is canonical.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElement {
    pub degree: usize,
    pub coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn zero(degree: usize) -> Self {
        FieldElement { degree, coeffs: vec![0; degree] }
    }

    pub fn constant(c: u32, degree: usize) -> Self {
        let mut e = Self::zero(degree);
        e.coeffs[0] = c;
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Whether the element lies in the prime field.
    pub fn is_prime_field(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn encode(&self, p: u32) -> String {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("p:{};d:{};c:[{}]", p, self.degree, cs.join(","))
    }

    /// Parses `p:<p>;d:<d>;c:[c_0,...]`, returning the characteristic too.
    pub fn decode(s: &str) -> Result<(u32, FieldElement), ParseError> {
        let bad = || ParseError::Element(s.to_string());
        let rest = s.trim().strip_prefix("p:").ok_or_else(bad)?;
        let (p, rest) = rest.split_once(";d:").ok_or_else(bad)?;
        let (d, rest) = rest.split_once(";c:[").ok_or_else(bad)?;
        let body = rest.strip_suffix(']').ok_or_else(bad)?;
        let p: u32 = p.parse().map_err(|_| bad())?;
        let degree: usize = d.parse().map_err(|_| bad())?;
        let coeffs: Vec<u32> = if body.is_empty() {
            Vec::new()
        } else {
            body.split(',').map(|c| c.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<_, _>>()?
        };
        if p < 2 || coeffs.len() != degree || degree == 0 || coeffs.iter().any(|&c| c >= p) {
            return Err(bad());
        }
        Ok((p, FieldElement { degree, coeffs }))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", cs.join(","))
    }
}
