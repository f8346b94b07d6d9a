//! Finite-stage neighborhood bases for field topologies on `F_p`-bar.
//!
//! The crate builds essentially finite *suitable sequences*: chains of finite
//! sets `A_0 ⊇ A_1 ⊇ …` tied together by the seven-clause condition `C_i`.
//! Such sequences are neighborhood bases of zero for a generalized
//! t-henselian field topology. Construction runs in the truncated power
//! series ring `K[[t]]`, then transfers to `K` by specializing the formal
//! seed and re-verifying every clause.

pub mod conditions;
pub mod error;
pub mod field;
pub mod forge;
pub mod par;
pub mod ring;
pub mod series;
pub mod verify;

pub use error::{FieldError, ForgeError, ParseError, SearchError, SeriesError};
pub use ring::{Field, Ring};
