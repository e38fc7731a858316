//! Digital images in ℤⁿ, their clique complexes, and computable models of
//! the digital fundamental group.

pub mod cli_io;
pub mod clique_complex;
pub mod constructions;
pub mod edge_group;
pub mod error;
pub mod group_algebra;
pub mod homotopy_oracle;
pub mod image_core;
pub mod two_dim;

pub use error::{Error, Result};
