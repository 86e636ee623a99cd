//! Patterns realized from corner vectors: intersection points, normal arcs,
//! track components, twisting, and the regions cut out of the complex.
//!
//! Points on an edge are numbered `1..=n` from its initial vertex. A side
//! with orientation `-1` sees them in reverse. The `k`-th arc at corner `i`
//! joins the `k`-th point from that corner on side `i` to the `k`-th point
//! from it on side `i - 1`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::{corner_index, DimensionMismatch, MatchingSystem, TriangularComplex};
use crate::lattice::SolutionBasis;
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternError {
    DimensionMismatch(DimensionMismatch),
    NegativeEntry(usize),
    NotASolution,
    Disconnected,
    TwistedInput,
    /// Two independent computations of the same property disagree.
    InvariantViolation(&'static str),
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::DimensionMismatch(d) => d.fmt(f),
            PatternError::NegativeEntry(i) => write!(f, "negative corner coordinate at {i}"),
            PatternError::NotASolution => write!(f, "vector does not satisfy the matching equations"),
            PatternError::Disconnected => write!(f, "pattern is not connected"),
            PatternError::TwistedInput => write!(f, "track is twisted"),
            PatternError::InvariantViolation(what) => write!(f, "invariant violated: {what}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub edge: usize,
    /// 1-based, counted from the edge's initial vertex.
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arc {
    pub triangle: usize,
    pub corner: usize,
    /// 1-based distance from the corner's vertex.
    pub layer: usize,
    /// Endpoint on side `corner`.
    pub a: Point,
    /// Endpoint on side `corner - 1`.
    pub b: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub vector: Vec<i64>,
    /// Points per edge.
    pub points: Vec<usize>,
    offsets: Vec<usize>,
    /// Ordered by `(triangle, corner, layer)`.
    pub arcs: Vec<Arc>,
}

/// Edge point index of side position `q` (1-based from the side's start).
pub fn side_to_edge(orientation: i8, n: usize, q: usize) -> usize {
    if orientation > 0 {
        q
    } else {
        n + 1 - q
    }
}

/// Edge segment index of side segment `sp` (segment `j` lies between
/// points `j` and `j + 1`).
pub fn side_segment_to_edge(orientation: i8, n: usize, sp: usize) -> usize {
    if orientation > 0 {
        sp
    } else {
        n - sp
    }
}

pub fn realize(v: &[i64], c: &TriangularComplex) -> Result<Pattern, PatternError> {
    if v.len() != c.corner_count() {
        return Err(PatternError::DimensionMismatch(DimensionMismatch {
            expected: c.corner_count(),
            found: v.len(),
        }));
    }
    if let Some(i) = v.iter().position(|&x| x < 0) {
        return Err(PatternError::NegativeEntry(i));
    }
    let mut points: Vec<Option<usize>> = vec![None; c.edge_count];
    for (t, tri) in c.triangles.iter().enumerate() {
        for (s, side) in tri.iter().enumerate() {
            let n = c.side_count(v, t, s) as usize;
            match points[side.edge] {
                Some(m) if m != n => return Err(PatternError::NotASolution),
                _ => points[side.edge] = Some(n),
            }
        }
    }
    let points: Vec<usize> = points.into_iter().map(|p| p.unwrap_or(0)).collect();
    let mut offsets = Vec::with_capacity(c.edge_count + 1);
    let mut acc = 0;
    for &n in &points {
        offsets.push(acc);
        acc += n;
    }
    offsets.push(acc);
    let mut arcs = Vec::new();
    for (t, tri) in c.triangles.iter().enumerate() {
        for i in 0..3 {
            let sa = tri[i];
            let sb = tri[(i + 2) % 3];
            let (na, nb) = (points[sa.edge], points[sb.edge]);
            for k in 1..=v[corner_index(t, i)] as usize {
                arcs.push(Arc {
                    triangle: t,
                    corner: i,
                    layer: k,
                    a: Point { edge: sa.edge, index: side_to_edge(sa.orientation, na, k) },
                    b: Point { edge: sb.edge, index: side_to_edge(sb.orientation, nb, nb + 1 - k) },
                });
            }
        }
    }
    Ok(Pattern { vector: v.to_vec(), points, offsets, arcs })
}

/// Realizes `v` after checking it against the matching equations.
pub fn realize_checked(
    v: &[i64],
    c: &TriangularComplex,
    sys: &MatchingSystem,
) -> Result<Pattern, PatternError> {
    if v.len() == sys.width && !sys.is_solution(v) {
        return Err(PatternError::NotASolution);
    }
    realize(v, c)
}

impl Pattern {
    pub fn point_count(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn global(&self, p: Point) -> usize {
        self.offsets[p.edge] + p.index - 1
    }

    pub fn point(&self, g: usize) -> Point {
        let e = self.offsets.partition_point(|&o| o <= g) - 1;
        Point { edge: e, index: g - self.offsets[e] + 1 }
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// `V - E` of the pattern viewed as a graph.
    pub fn euler(&self) -> i64 {
        self.point_count() as i64 - self.arcs.len() as i64
    }

    fn arc_union(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.point_count());
        for a in &self.arcs {
            uf.union(self.global(a.a), self.global(a.b));
        }
        uf
    }

    /// Component label per point, numbered by least point.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        self.arc_union().labels()
    }

    pub fn corner_vector_of(&self, arcs: impl Iterator<Item = usize>) -> Vec<i64> {
        let mut out = vec![0i64; self.vector.len()];
        for i in arcs {
            let a = &self.arcs[i];
            out[corner_index(a.triangle, a.corner)] += 1;
        }
        out
    }

    /// Coorientation sign per point, or `None` if some cycle reverses it.
    ///
    /// Sign `+1` means the positive side faces the edge's terminal end.
    /// Within each component the first arc has its positive side toward
    /// the end of side `corner`.
    pub fn coorientation(&self, c: &TriangularComplex) -> Option<Vec<i8>> {
        let n = self.point_count();
        let mut uf = UnionFind::new(n);
        for a in &self.arcs {
            let tri = &c.triangles[a.triangle];
            let oa = tri[a.corner].orientation;
            let ob = tri[(a.corner + 2) % 3].orientation;
            // s_b = -oa * ob * s_a
            let odd = oa * ob > 0;
            uf.union_parity(self.global(a.a), self.global(a.b), odd)?;
        }
        let mut root_sign = vec![0i8; n];
        for a in &self.arcs {
            let ga = self.global(a.a);
            let (r, par) = uf.find_parity(ga);
            if root_sign[r] == 0 {
                let oa = c.triangles[a.triangle][a.corner].orientation;
                // want s_a * oa = +1
                let s_a = oa;
                root_sign[r] = if par { -s_a } else { s_a };
            }
        }
        Some(
            (0..n)
                .map(|g| {
                    let (r, par) = uf.find_parity(g);
                    let s = if root_sign[r] == 0 { 1 } else { root_sign[r] };
                    if par {
                        -s
                    } else {
                        s
                    }
                })
                .collect(),
        )
    }

    /// Signed intersection count per edge under the coorientation.
    pub fn signed_counts(&self, c: &TriangularComplex) -> Option<Vec<i64>> {
        let s = self.coorientation(c)?;
        let mut out = vec![0i64; self.points.len()];
        for (g, sign) in s.iter().enumerate() {
            out[self.point(g).edge] += *sign as i64;
        }
        Some(out)
    }
}

/// A connected pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Track {
    pub pattern: Pattern,
    pub euler: i64,
}

impl Track {
    pub fn new(pattern: Pattern) -> Result<Track, PatternError> {
        if pattern.component_labels().1 != 1 {
            return Err(PatternError::Disconnected);
        }
        let euler = pattern.euler();
        Ok(Track { pattern, euler })
    }

    pub fn from_vector(v: &[i64], c: &TriangularComplex) -> Result<Track, PatternError> {
        Track::new(realize(v, c)?)
    }

    pub fn vector(&self) -> &[i64] {
        &self.pattern.vector
    }
}

/// Splits a pattern into its connected components, each re-realized from
/// its own corner vector, ordered by least point.
pub fn components(p: &Pattern, c: &TriangularComplex) -> Vec<Track> {
    let (labels, k) = p.component_labels();
    let mut vectors = vec![vec![0i64; p.vector.len()]; k];
    for a in &p.arcs {
        vectors[labels[p.global(a.a)]][corner_index(a.triangle, a.corner)] += 1;
    }
    vectors
        .into_iter()
        .map(|v| {
            let pattern = realize(&v, c).expect("component of a pattern is a pattern");
            let euler = pattern.euler();
            Track { pattern, euler }
        })
        .collect()
}

/// Twisted iff the transverse orientation reverses around some cycle; the
/// same answer must come from checking that the double is connected.
pub fn is_twisted(t: &Track, c: &TriangularComplex) -> Result<bool, PatternError> {
    let by_parity = t.pattern.coorientation(c).is_none();
    let double: Vec<i64> = t.vector().iter().map(|x| 2 * x).collect();
    let by_double = realize(&double, c)?.component_labels().1 == 1;
    if t.pattern.is_empty() {
        return Ok(false);
    }
    if by_parity != by_double {
        return Err(PatternError::InvariantViolation("twisting tests disagree"));
    }
    Ok(by_parity)
}

/// Faces of a triangle cut by a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Face {
    /// The piece at corner `corner` between layers `layer` and
    /// `layer + 1`; layer 0 contains the corner's vertex.
    Corner { triangle: usize, corner: usize, layer: usize },
    Central { triangle: usize },
}

impl Face {
    pub fn triangle(self) -> usize {
        match self {
            Face::Corner { triangle, .. } | Face::Central { triangle } => triangle,
        }
    }
}

/// Complement of a pattern: segments of the edges, faces of the triangles
/// and the vertex, grouped into connected regions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionDecomposition {
    pub count: usize,
    /// Region per element: the vertex, then segments, then faces.
    pub region_of: Vec<usize>,
    seg_offset: Vec<usize>,
    face_offset: Vec<usize>,
    vector: Vec<i64>,
    pub basepoint_region: usize,
}

impl RegionDecomposition {
    pub fn segment_element(&self, e: usize, s: usize) -> usize {
        self.seg_offset[e] + s
    }

    pub fn face_element(&self, f: Face) -> usize {
        match f {
            Face::Corner { triangle: t, corner: i, layer: k } => {
                let before: i64 = (0..i).map(|j| self.vector[corner_index(t, j)]).sum();
                self.face_offset[t] + before as usize + k
            }
            Face::Central { triangle: t } => {
                let all: i64 = (0..3).map(|j| self.vector[corner_index(t, j)]).sum();
                self.face_offset[t] + all as usize
            }
        }
    }

    pub fn region_of_segment(&self, e: usize, s: usize) -> usize {
        self.region_of[self.segment_element(e, s)]
    }

    pub fn region_of_face(&self, f: Face) -> usize {
        self.region_of[self.face_element(f)]
    }
}

/// The face of triangle `t` touching side `s` along side segment `sp`.
pub fn face_at_side_segment(v: &[i64], t: usize, s: usize, n: usize, sp: usize) -> Face {
    let x = v[corner_index(t, s)] as usize;
    let face = |corner: usize, layer: usize| {
        if layer >= v[corner_index(t, corner)] as usize {
            Face::Central { triangle: t }
        } else {
            Face::Corner { triangle: t, corner, layer }
        }
    };
    if sp < x {
        face(s, sp)
    } else if sp == x {
        Face::Central { triangle: t }
    } else {
        face((s + 1) % 3, n - sp)
    }
}

pub fn cut_regions(p: &Pattern, c: &TriangularComplex) -> RegionDecomposition {
    let mut seg_offset = Vec::with_capacity(c.edge_count);
    let mut acc = 1;
    for &n in &p.points {
        seg_offset.push(acc);
        acc += n + 1;
    }
    let mut face_offset = Vec::with_capacity(c.triangles.len());
    for t in 0..c.triangles.len() {
        face_offset.push(acc);
        acc += (0..3).map(|i| p.vector[corner_index(t, i)] as usize).sum::<usize>() + 1;
    }
    let mut rd = RegionDecomposition {
        count: 0,
        region_of: Vec::new(),
        seg_offset,
        face_offset,
        vector: p.vector.clone(),
        basepoint_region: 0,
    };
    let mut uf = UnionFind::new(acc);
    for (e, &n) in p.points.iter().enumerate() {
        uf.union(0, rd.segment_element(e, 0));
        uf.union(0, rd.segment_element(e, n));
    }
    for (t, tri) in c.triangles.iter().enumerate() {
        for (s, side) in tri.iter().enumerate() {
            let n = p.points[side.edge];
            for sp in 0..=n {
                let f = face_at_side_segment(&p.vector, t, s, n, sp);
                let seg = side_segment_to_edge(side.orientation, n, sp);
                uf.union(rd.face_element(f), rd.segment_element(side.edge, seg));
            }
        }
    }
    let (labels, count) = uf.labels();
    rd.region_of = labels;
    rd.count = count;
    rd.basepoint_region = rd.region_of[0];
    rd
}

/// Separating iff the complement has two regions. The parity of every edge
/// count and the vanishing of the signed counts must agree with that.
pub fn is_separating(t: &Track, c: &TriangularComplex) -> Result<bool, PatternError> {
    let signed = t.pattern.signed_counts(c).ok_or(PatternError::TwistedInput)?;
    let regions = cut_regions(&t.pattern, c).count;
    let by_regions = regions == 2;
    let by_parity = t.pattern.points.iter().all(|n| n % 2 == 0);
    let by_coorientation = signed.iter().all(|&x| x == 0);
    if t.pattern.is_empty() {
        return Ok(false);
    }
    if !(1..=2).contains(&regions) || by_regions != by_parity || by_regions != by_coorientation {
        return Err(PatternError::InvariantViolation("separation tests disagree"));
    }
    Ok(by_regions)
}

/// Classification of one component of a basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub vector: Vec<i64>,
    pub twisted: bool,
    /// The untwisted track used downstream: the component, or its double.
    pub track: Track,
    pub separating: bool,
    pub regions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisReport {
    pub index: usize,
    pub vector: Vec<i64>,
    pub components: Vec<ComponentReport>,
}

pub fn classify_component(t: &Track, c: &TriangularComplex) -> Result<ComponentReport, PatternError> {
    let twisted = is_twisted(t, c)?;
    let track = if twisted {
        let double: Vec<i64> = t.vector().iter().map(|x| 2 * x).collect();
        Track::new(realize(&double, c)?)?
    } else {
        t.clone()
    };
    let separating = is_separating(&track, c)?;
    if twisted && !separating {
        return Err(PatternError::InvariantViolation("double of a twisted track must separate"));
    }
    let regions = cut_regions(&track.pattern, c).count;
    Ok(ComponentReport { vector: t.vector().to_vec(), twisted, track, separating, regions })
}

/// Replaces each basis element by its untwisted track components, doubling
/// twisted ones.
pub fn untwist_basis(b: &SolutionBasis, c: &TriangularComplex) -> Result<Vec<BasisReport>, PatternError> {
    let mut out = Vec::with_capacity(b.rank());
    for (index, v) in b.vectors.iter().enumerate() {
        let p = realize(v, c)?;
        let components = components(&p, c)
            .iter()
            .map(|t| classify_component(t, c))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(BasisReport { index, vector: v.clone(), components });
    }
    Ok(out)
}
