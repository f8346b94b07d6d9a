//! Polynomials over the algebraic closure, as seen by callers.

use super::element::FieldElement;

/// Univariate polynomial with [`FieldElement`] coefficients, constant term
/// first. Coefficients may live in different degrees; the oracle brings them
/// into a common field before computing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Polynomial with prime-field coefficients, given as residues.
    pub fn from_prime_coeffs(coeffs: &[u32]) -> Self {
        Poly::new(coeffs.iter().map(|&c| FieldElement::constant(c, 1)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}
