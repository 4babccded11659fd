//! Dynamics of homographies over p-adic fields: cycle structure of
//! Möbius maps on P¹(Q_p), minimal decompositions and invariant measures.

pub mod cells;
pub mod cli;
pub mod cycle_engine;
pub mod decomposer;
pub mod error;
pub mod measure;
pub mod padic;
pub mod projective;
pub mod quad_ext;
pub mod quad_field;
pub mod rational;
pub mod verifier;

pub use error::{Error, Result};
