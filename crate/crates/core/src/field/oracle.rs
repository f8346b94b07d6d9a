//! One interface over the fields the forge can build in.

use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;

use super::element::FieldElement;
use super::fpbar::{FieldDescriptor, Fpbar};
use super::gf::GfField;
use super::rational::{self, RationalOracle, Rationals};
use crate::error::{FieldError, ParseError};
use crate::ring::{Field, Ring};

pub type Elem<O> = <<O as FieldOracle>::Flat as Ring>::Elem;

/// A computable field whose working presentation may grow.
///
/// Arithmetic goes through [`FieldOracle::flat`], a snapshot of the current
/// working field. Operations taking `&mut self` may enlarge it, after which
/// elements held by the caller must be brought over with
/// [`FieldOracle::lift`]; [`FieldOracle::epoch`] tells when that is due.
pub trait FieldOracle: Clone + Send + Sync {
    type Flat: Field;

    fn flat(&self) -> Self::Flat;
    fn epoch(&self) -> u64;

    /// Image in the current working field of an element from an earlier one.
    fn lift(&self, x: &Elem<Self>) -> Elem<Self>;

    /// Brings an element given in its own presentation into the working
    /// field, growing it if needed.
    fn import(&mut self, x: &Elem<Self>) -> Elem<Self>;

    /// The `index`-th element of the field's fixed enumeration.
    fn element(&mut self, index: u64) -> Elem<Self>;

    /// Simple roots of `X^n + X^{n-1} + c_{n-2} X^{n-2} + … + c_0`, growing
    /// the field if it has none yet. Empty when none exist here.
    fn simple_roots(&mut self, n: usize, coeffs: &[Elem<Self>]) -> Result<Vec<Elem<Self>>, FieldError>;

    /// Nonzero seed candidates for specialization, in the working field.
    fn seed_candidates(&mut self, min_field: u64, count: usize, rng: &mut ChaCha8Rng) -> Vec<Elem<Self>>;

    fn descriptor(&self) -> FieldDescriptor;

    /// Parses an element encoding and imports it.
    fn decode(&mut self, s: &str) -> Result<Elem<Self>, ParseError>;
}

impl FieldOracle for Fpbar {
    type Flat = GfField;

    fn flat(&self) -> GfField {
        self.top()
    }

    fn epoch(&self) -> u64 {
        Fpbar::epoch(self)
    }

    fn lift(&self, x: &FieldElement) -> FieldElement {
        Fpbar::lift(self, x).expect("element comes from this tower")
    }

    fn import(&mut self, x: &FieldElement) -> FieldElement {
        Fpbar::import(self, x)
    }

    fn element(&mut self, index: u64) -> FieldElement {
        Fpbar::element(self, index)
    }

    fn simple_roots(&mut self, n: usize, coeffs: &[FieldElement]) -> Result<Vec<FieldElement>, FieldError> {
        match Fpbar::simple_roots(self, n, coeffs) {
            Err(FieldError::NoSimpleRoot) => Ok(Vec::new()),
            other => other,
        }
    }

    fn seed_candidates(&mut self, min_field: u64, count: usize, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
        let home = self.seed_candidates_home(min_field, count, rng);
        for x in &home {
            self.ensure_degree(x.degree);
        }
        home.iter().map(|x| Fpbar::lift(self, x).unwrap()).collect()
    }

    fn descriptor(&self) -> FieldDescriptor {
        Fpbar::descriptor(self)
    }

    fn decode(&mut self, s: &str) -> Result<FieldElement, ParseError> {
        let (p, x) = FieldElement::decode(s)?;
        if p != self.p() {
            return Err(ParseError::Element(s.to_string()));
        }
        Ok(Fpbar::import(self, &x))
    }
}

impl FieldOracle for RationalOracle {
    type Flat = Rationals;

    fn flat(&self) -> Rationals {
        Rationals
    }

    fn epoch(&self) -> u64 {
        0
    }

    fn lift(&self, x: &BigRational) -> BigRational {
        x.clone()
    }

    fn import(&mut self, x: &BigRational) -> BigRational {
        x.clone()
    }

    fn element(&mut self, index: u64) -> BigRational {
        rational::enumerate(index)
    }

    fn simple_roots(&mut self, n: usize, coeffs: &[BigRational]) -> Result<Vec<BigRational>, FieldError> {
        Ok(RationalOracle::simple_roots(self, n, coeffs))
    }

    fn seed_candidates(&mut self, _min_field: u64, count: usize, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
        RationalOracle::seed_candidates(self, count, rng)
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { characteristic: 0, working_degree: 1, chain: Vec::new(), polynomials: Vec::new(), embeddings: Vec::new() }
    }

    fn decode(&mut self, s: &str) -> Result<BigRational, ParseError> {
        rational::decode(s)
    }
}
