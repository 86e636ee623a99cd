//! Dunwoody tracks in triangular presentation 2-complexes.
//!
//! A finite presentation is triangulated into a 2-complex with one vertex.
//! Patterns are non-negative corner vectors satisfying the matching
//! equations; connected patterns are tracks. Each untwisted track yields an
//! amalgam or HNN decomposition of the group, and a family of tracks yields
//! a quotient square complex.

#![no_std]

extern crate alloc;

pub mod complex;
pub mod cubing;
pub mod lattice;
pub mod pattern;
pub mod presentation;
pub mod splitting;
mod unionfind;

pub use complex::{build_complex, matching_system, occurrence_count, residual, MatchingSystem, TriangularComplex};
pub use lattice::{lattice_member, nonnegativize, nullspace_basis, SolutionBasis};
pub use presentation::{parse_presentation, parse_structured, triangulate, Letter, Presentation, TriangulatedPresentation, Word};
