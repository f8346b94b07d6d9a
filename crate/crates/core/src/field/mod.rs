//! Exact arithmetic in `F_p`-bar and in the rational control field.

pub mod element;
pub mod fpbar;
pub mod fpoly;
pub mod gf;
pub mod gfpoly;
pub mod linalg;
pub mod modp;
pub mod oracle;
pub mod poly;
pub mod rational;

pub use element::FieldElement;
pub use fpbar::{EmbeddingRecord, FieldDescriptor, Fpbar, PolynomialRecord};
pub use gf::{GfCtx, GfField};
pub use oracle::{Elem, FieldOracle};
pub use poly::Poly;
pub use rational::{RationalOracle, Rationals};
