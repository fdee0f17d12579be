//! Exact-arithmetic accordion complexes of polygon dissections.
//!
//! A reference dissection of the hollow polygon (odd points of a 2n circle)
//! determines which solid diagonals (even points) cross a connected set of
//! its barred diagonals; those accordion diagonals span a simplicial complex
//! realized here three ways: as the oriented flip graph with its lattice
//! order, as complete simplicial g- and d-vector fans certified by exact
//! rational arithmetic, and as the accordiohedron polytope with its zonotope
//! and parallelepiped companions. Everything is integer or rational exact;
//! floating point only ever appears in SVG rendering downstream.

pub mod complex;
pub mod enumerate;
pub mod error;
pub mod fan;
pub mod linalg;
pub mod polygon;
pub mod polytope;
pub mod symmetry;
pub mod text;
pub mod vectors;

pub use error::{Error, Result};
pub use polygon::{Circle, Diag, Dissection, Parity};
