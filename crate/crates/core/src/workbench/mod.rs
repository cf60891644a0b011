//! Catalog of named algebras, the `.lie` file format and the command line.

pub mod catalog;
pub mod cli;
pub mod lie_file;

pub use catalog::{catalog, finite_field_instances, random_solvable, CatalogEntry, CATALOG};
pub use lie_file::{parse_lie_file, serialize_lie};
