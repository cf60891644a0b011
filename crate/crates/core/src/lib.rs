//! Exact computations with finite-dimensional solvable Lie algebras:
//! subspace lattices, Frattini and prefrattini subalgebras, chief series,
//! and checks of structure theorems about complemented algebras.

pub mod algebra;
pub mod arith;
pub mod classify;
pub mod error;
pub mod frattini;
pub mod lattice;
pub mod linalg;
pub mod report;
pub mod workbench;

pub use error::{Error, Result};
