//! Exact Newton polyhedra, symbolic polyhedra and Newton–Okounkov bodies of
//! monomial ideals and graded families, with the invariants read off them.

pub mod bodies;
pub mod cli;
pub mod error;
pub mod families;
pub mod ideal;
pub mod invariants;
pub mod linalg;
pub mod parse;
pub mod polyhedron;
pub mod rational;
pub mod report;
pub mod simis;

pub use error::{Error, Result};
