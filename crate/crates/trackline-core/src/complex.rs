//! The triangular 2-complex of a triangulated presentation, its corner
//! coordinates and matching equations.
//!
//! Corner `i` of triangle `t` sits at the start of side `i`, between sides
//! `i - 1` and `i`, and has flat index `3t + i`. Side `s` is therefore
//! bounded by corners `s` (at its start) and `s + 1` (at its end).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::presentation::TriangulatedPresentation;

/// One side of a triangle: the 1-cell it runs along and whether it follows
/// (`+1`) or opposes (`-1`) that 1-cell's orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Side {
    pub edge: usize,
    pub orientation: i8,
}

/// A side occurrence `(triangle, side index)`.
pub type Occurrence = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularComplex {
    pub edge_count: usize,
    pub triangles: Vec<[Side; 3]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionMismatch {
    pub expected: usize,
    pub found: usize,
}

impl fmt::Display for DimensionMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expected a vector of length {}, found {}", self.expected, self.found)
    }
}

pub fn corner_index(triangle: usize, corner: usize) -> usize {
    3 * triangle + corner
}

pub fn build_complex(tp: &TriangulatedPresentation) -> TriangularComplex {
    let triangles = tp
        .triangles
        .iter()
        .map(|tri| {
            let mut sides = [Side { edge: 0, orientation: 1 }; 3];
            for (s, l) in tri.iter().enumerate() {
                sides[s] = Side { edge: l.generator, orientation: l.sign };
            }
            sides
        })
        .collect();
    TriangularComplex { edge_count: tp.generator_count(), triangles }
}

impl TriangularComplex {
    pub fn corner_count(&self) -> usize {
        3 * self.triangles.len()
    }

    pub fn side(&self, t: usize, s: usize) -> Side {
        self.triangles[t][s]
    }

    /// All `(triangle, side)` pairs running along edge `e`, in order.
    pub fn occurrences(&self, e: usize) -> Vec<Occurrence> {
        let mut out = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for (s, side) in tri.iter().enumerate() {
                if side.edge == e {
                    out.push((t, s));
                }
            }
        }
        out
    }

    pub fn occurrence_table(&self) -> Vec<Vec<Occurrence>> {
        let mut table = vec![Vec::new(); self.edge_count];
        for (t, tri) in self.triangles.iter().enumerate() {
            for (s, side) in tri.iter().enumerate() {
                table[side.edge].push((t, s));
            }
        }
        table
    }

    /// Number of intersection points a corner vector puts on side `s`.
    pub fn side_count<T>(&self, v: &[T], t: usize, s: usize) -> T
    where
        T: Copy + core::ops::Add<Output = T>,
    {
        v[corner_index(t, s)] + v[corner_index(t, (s + 1) % 3)]
    }
}

pub fn occurrence_count(c: &TriangularComplex, e: usize) -> usize {
    c.triangles.iter().flatten().filter(|s| s.edge == e).count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingSystem {
    pub width: usize,
    pub matrix: Vec<Vec<i64>>,
    /// `(edge, earlier occurrence, later occurrence)` per row.
    pub row_origin: Vec<(usize, Occurrence, Occurrence)>,
}

/// Chains each edge's occurrences in `(triangle, side)` order and equates
/// the point counts of consecutive occurrences.
pub fn matching_system(c: &TriangularComplex) -> MatchingSystem {
    let width = c.corner_count();
    let mut matrix = Vec::new();
    let mut row_origin = Vec::new();
    for (e, occ) in c.occurrence_table().iter().enumerate() {
        for pair in occ.windows(2) {
            let mut row = vec![0i64; width];
            for (&(t, s), sign) in [(&pair[0], 1i64), (&pair[1], -1i64)] {
                row[corner_index(t, s)] += sign;
                row[corner_index(t, (s + 1) % 3)] += sign;
            }
            matrix.push(row);
            row_origin.push((e, pair[0], pair[1]));
        }
    }
    MatchingSystem { width, matrix, row_origin }
}

impl MatchingSystem {
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_solution(&self, v: &[i64]) -> bool {
        matches!(residual(self, v), Ok(r) if r.iter().all(|&x| x == 0))
    }
}

pub fn residual(sys: &MatchingSystem, v: &[i64]) -> Result<Vec<i64>, DimensionMismatch> {
    if v.len() != sys.width {
        return Err(DimensionMismatch { expected: sys.width, found: v.len() });
    }
    Ok(sys
        .matrix
        .iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect())
}
