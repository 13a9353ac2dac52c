//! Walk matrices of dissected polygons over Laurent polynomial rings.
//!
//! A dissection of a convex `n`-gon into pieces determines an `n × n`
//! matrix counting (or weighting) counterclockwise walks between vertices.
//! This crate builds those matrices exactly, computes their determinants
//! two independent ways, reduces them to diagonal form with explicit
//! transforming matrices, and lays them out as generalized frieze patterns.

pub mod cli;
pub mod dissection;
pub mod frieze;
pub mod matrix;
pub mod normalform;
pub mod poly;
pub mod walks;

pub use dissection::{Dissection, DissectionError, EdgeRef, PieceId};
pub use matrix::PolyMatrix;
pub use poly::{LaurentPoly, Var, VarNames};
pub use walks::{weight_matrix, Flavor, WeightMatrix};
