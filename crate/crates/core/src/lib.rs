//! Costas arrays and Costas cubes.
//!
//! A Costas cube of order `n` is an `n x n x n` 0/1 array whose three
//! projections onto coordinate planes are all Costas arrays. This crate
//! verifies such objects, builds them from finite-field constructions,
//! classifies them up to the symmetries of the cube, and enumerates them
//! exhaustively from complete lists of Costas arrays.

pub mod construct;
pub mod cube;
pub mod enumerate;
pub mod error;
pub mod gf;
pub mod perm;
pub mod published;
pub mod symmetry;

pub use cube::{
    cube_from_pair, cube_from_projections, CostasCube, ProjectionPair, ProjectionTriple,
};
pub use error::{Error, Result};
pub use gf::{FieldElement, FieldSpec, LogTable};
pub use perm::Permutation;
pub use symmetry::{PlanarSymmetry, SymmetryElement};
