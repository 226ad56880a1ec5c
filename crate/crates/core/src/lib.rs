//! Combinatorial knot Floer homology from grid diagrams, with a mechanical
//! check of the grid skein exact triangle.

pub mod alexander;
pub mod cli;
pub mod complex;
pub mod corpus;
pub mod grid;
pub mod homology;
pub mod invariants;
pub mod skein;
