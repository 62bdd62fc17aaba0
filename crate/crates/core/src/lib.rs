//! Exact point counts of the pieces `{B : (B, gBg^-1) in O_w}` of the flag
//! variety over prime fields, and the Hecke-algebra, character-theoretic and
//! combinatorial data they determine for groups of rank at most three.

pub mod analysis;
pub mod coxeter;
pub mod error;
pub mod exact;
pub mod flags;
pub mod groups;
pub mod hecke;
pub mod hecke_chars;
pub mod partition;
pub mod tables;

pub use error::{Error, Result};
