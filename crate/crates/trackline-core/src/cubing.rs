//! The quotient dual square complex of a finite set of untwisted tracks,
//! and patterns in it built from integer combinations of the tracks.
//!
//! Tracks are drawn with straight arcs in a fixed scalene triangle so that
//! two arcs of distinct tracks meet at most once. Points of all tracks on an
//! edge are interleaved by a per-edge ordering. The complex cut along every
//! track gives the vertices, the tracks cut at their crossings give the
//! edges, and every crossing gives a square.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::TriangularComplex;
use crate::pattern::{cut_regions, side_segment_to_edge, side_to_edge, Point, Track};
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubingError {
    TwistedTrack(usize),
    DimensionMismatch { expected: usize, found: usize },
    /// The ordering of edge `0` does not list each track's points.
    InvalidOrdering(usize),
    /// Three arcs through one point in this triangle.
    Degenerate(usize),
    TooManyPoints(usize),
    AllZero,
    /// The combination has a negative corner coordinate at this index.
    NotAPattern(usize),
    ResolutionFailed { triangle: usize, returning: i64 },
    InvariantViolation(&'static str),
}

impl fmt::Display for CubingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubingError::TwistedTrack(i) => write!(f, "track {i} is twisted"),
            CubingError::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
            CubingError::InvalidOrdering(e) => write!(f, "ordering of edge {e} does not match the tracks' points"),
            CubingError::Degenerate(t) => write!(f, "three arcs meet in one point of triangle {t}"),
            CubingError::TooManyPoints(e) => write!(f, "too many points on edge {e}"),
            CubingError::AllZero => write!(f, "all coefficients are zero"),
            CubingError::NotAPattern(i) => write!(f, "the combination is negative at corner {i}"),
            CubingError::ResolutionFailed { triangle, returning } => {
                write!(f, "{returning} returning arcs remain in triangle {triangle}")
            }
            CubingError::InvariantViolation(what) => write!(f, "invariant violated: {what}"),
        }
    }
}

/// Two arcs of distinct tracks meeting inside a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Crossing {
    pub triangle: usize,
    /// `(track, arc index)` pairs, the lower track first.
    pub arcs: [(usize, usize); 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub tracks: Vec<Track>,
    /// Per edge, the track owning each point, from the initial vertex.
    pub edge_orderings: Vec<Vec<usize>>,
    pub crossings: Vec<Crossing>,
    /// `[track][edge][index - 1]` gives the 1-based position on the edge.
    position: Vec<Vec<Vec<usize>>>,
    coorientation: Vec<Vec<i8>>,
}

/// Largest number of points per edge the geometric embedding supports.
const MAX_POINTS: usize = 16_000;
const SCALE: i128 = 1 << 20;
const CORNERS: [(i128, i128); 3] = [(0, 0), (7, 0), (2, 5)];

/// Each track's points in one block, lower tracks nearer the initial vertex.
pub fn default_ordering(tracks: &[Track], c: &TriangularComplex) -> Vec<Vec<usize>> {
    (0..c.edge_count)
        .map(|e| {
            let mut order = Vec::new();
            for (k, t) in tracks.iter().enumerate() {
                order.extend(core::iter::repeat(k).take(t.pattern.points[e]));
            }
            order
        })
        .collect()
}

/// Ordering for `copies` parallel copies of one track: later copies are
/// pushed off to the track's positive side, so no two copies cross.
pub fn parallel_copies_ordering(
    track: &Track,
    copies: usize,
    c: &TriangularComplex,
) -> Result<Vec<Vec<usize>>, CubingError> {
    let s = track.pattern.coorientation(c).ok_or(CubingError::TwistedTrack(0))?;
    Ok((0..c.edge_count)
        .map(|e| {
            let mut order = Vec::new();
            for index in 1..=track.pattern.points[e] {
                let g = track.pattern.global(Point { edge: e, index });
                if s[g] > 0 {
                    order.extend(0..copies);
                } else {
                    order.extend((0..copies).rev());
                }
            }
            order
        })
        .collect())
}

pub fn build_arrangement(tracks: Vec<Track>, c: &TriangularComplex) -> Result<Arrangement, CubingError> {
    let ordering = default_ordering(&tracks, c);
    build_arrangement_with(tracks, c, ordering)
}

/// Builds an arrangement from an explicit per-edge interleaving.
pub fn build_arrangement_with(
    tracks: Vec<Track>,
    c: &TriangularComplex,
    edge_orderings: Vec<Vec<usize>>,
) -> Result<Arrangement, CubingError> {
    if edge_orderings.len() != c.edge_count {
        return Err(CubingError::DimensionMismatch { expected: c.edge_count, found: edge_orderings.len() });
    }
    let mut coorientation = Vec::new();
    for (k, t) in tracks.iter().enumerate() {
        if t.pattern.vector.len() != c.corner_count() {
            return Err(CubingError::DimensionMismatch {
                expected: c.corner_count(),
                found: t.pattern.vector.len(),
            });
        }
        coorientation.push(t.pattern.coorientation(c).ok_or(CubingError::TwistedTrack(k))?);
    }
    let mut position = vec![vec![Vec::new(); c.edge_count]; tracks.len()];
    for (e, order) in edge_orderings.iter().enumerate() {
        if order.len() > MAX_POINTS {
            return Err(CubingError::TooManyPoints(e));
        }
        for (i, &k) in order.iter().enumerate() {
            if k >= tracks.len() {
                return Err(CubingError::InvalidOrdering(e));
            }
            position[k][e].push(i + 1);
        }
        for (k, t) in tracks.iter().enumerate() {
            if position[k][e].len() != t.pattern.points[e] {
                return Err(CubingError::InvalidOrdering(e));
            }
        }
    }
    let mut a = Arrangement { tracks, edge_orderings, crossings: Vec::new(), position, coorientation };
    for t in 0..c.triangles.len() {
        let chords = a.chords(c, t);
        for (i, x) in chords.iter().enumerate() {
            for y in &chords[i + 1..] {
                if x.track != y.track && interleaved(x, y) {
                    a.crossings.push(Crossing { triangle: t, arcs: [(x.track, x.arc), (y.track, y.arc)] });
                }
            }
        }
    }
    Ok(a)
}

/// An arc drawn in its triangle, with endpoints as boundary positions.
#[derive(Clone, Copy, Debug)]
struct Chord {
    track: usize,
    arc: usize,
    /// `(side, position on side)` of the endpoints on sides `corner` and
    /// `corner - 1`.
    a: (usize, usize),
    b: (usize, usize),
    /// Track point ids of the two endpoints.
    point_a: usize,
    point_b: usize,
    /// The positive side lies to the right when walking from `a` to `b`.
    positive_right: bool,
}

fn boundary_key(p: (usize, usize)) -> usize {
    p.0 * (MAX_POINTS + 2) + p.1
}

fn interleaved(x: &Chord, y: &Chord) -> bool {
    let (lo, hi) = {
        let (p, q) = (boundary_key(x.a), boundary_key(x.b));
        (p.min(q), p.max(q))
    };
    let inside = |k: usize| lo < k && k < hi;
    inside(boundary_key(y.a)) != inside(boundary_key(y.b))
}

impl Arrangement {
    /// 1-based position of a track point among all points on its edge.
    pub fn combined_index(&self, track: usize, p: Point) -> usize {
        self.position[track][p.edge][p.index - 1]
    }

    pub fn combined_points(&self, e: usize) -> usize {
        self.edge_orderings[e].len()
    }

    fn chords(&self, c: &TriangularComplex, t: usize) -> Vec<Chord> {
        let tri = &c.triangles[t];
        let mut out = Vec::new();
        for (k, track) in self.tracks.iter().enumerate() {
            let p = &track.pattern;
            for (idx, arc) in p.arcs.iter().enumerate().filter(|(_, a)| a.triangle == t) {
                let on_side = |s: usize, q: Point| {
                    let n = self.combined_points(q.edge);
                    (s, side_to_edge(tri[s].orientation, n, self.combined_index(k, q)))
                };
                let sa = arc.corner;
                let sb = (arc.corner + 2) % 3;
                let point_a = p.global(arc.a);
                out.push(Chord {
                    track: k,
                    arc: idx,
                    a: on_side(sa, arc.a),
                    b: on_side(sb, arc.b),
                    point_a,
                    point_b: p.global(arc.b),
                    positive_right: self.coorientation[k][point_a] * tri[sa].orientation > 0,
                });
            }
        }
        out
    }
}

/// Exact coordinates of a boundary position, scaled by `SCALE`.
fn boundary_xy(t: usize, side: usize, q: usize, n: usize) -> (i128, i128) {
    let (x0, y0) = CORNERS[side];
    let (x1, y1) = CORNERS[(side + 1) % 3];
    let lambda = if q == 0 {
        0
    } else {
        let base = q as i128 * SCALE / (n as i128 + 1);
        // a small irregular shift keeps arcs out of symmetric, concurrent positions
        let h = (q as i128 * 2_654_435_761 + side as i128 * 97 + t as i128 * 31) % 61;
        base + h - 30
    };
    (x0 * SCALE + (x1 - x0) * lambda, y0 * SCALE + (y1 - y0) * lambda)
}

fn cross(u: (i128, i128), v: (i128, i128)) -> i128 {
    u.0 * v.1 - u.1 * v.0
}

fn sub(u: (i128, i128), v: (i128, i128)) -> (i128, i128) {
    (u.0 - v.0, u.1 - v.1)
}

struct SubArc {
    track: usize,
    /// Faces on the left and right walking from `a` toward `b`, as
    /// local face numbers.
    left: usize,
    right: usize,
    positive_right: bool,
    /// Track point ids at its ends, when an end is on the boundary.
    ends: [Option<usize>; 2],
}

struct LocalSquare {
    crossing: usize,
    corners: [usize; 4],
    sides: [usize; 4],
    marked: usize,
}

/// One triangle cut by all chords.
struct TriangleCells {
    faces: usize,
    /// Local face touching each side segment, `[side][segment]`.
    boundary: [Vec<usize>; 3],
    subarcs: Vec<SubArc>,
    squares: Vec<LocalSquare>,
}

fn triangle_cells(
    a: &Arrangement,
    c: &TriangularComplex,
    t: usize,
    first_crossing: usize,
) -> Result<TriangleCells, CubingError> {
    let tri = &c.triangles[t];
    let n: [usize; 3] = core::array::from_fn(|s| a.combined_points(tri[s].edge));
    // nodes: corners, then side points, then crossings
    let mut side_base = [0usize; 3];
    let mut next_node = 3;
    for s in 0..3 {
        side_base[s] = next_node;
        next_node += n[s];
    }
    let node_of = |s: usize, q: usize| if q == 0 { s } else { side_base[s] + q - 1 };
    let boundary_after = |s: usize, q: usize| if q == n[s] { (s + 1) % 3 } else { node_of(s, q + 1) };
    let xy = |p: (usize, usize)| boundary_xy(t, p.0, p.1, n[p.0]);

    let chords = a.chords(c, t);
    let crossings: Vec<(usize, usize)> = a
        .crossings
        .iter()
        .skip(first_crossing)
        .take_while(|x| x.triangle == t)
        .map(|x| {
            let find = |(k, arc): (usize, usize)| chords.iter().position(|ch| ch.track == k && ch.arc == arc).unwrap();
            (find(x.arcs[0]), find(x.arcs[1]))
        })
        .collect();
    let crossing_node = |i: usize| next_node + i;
    let node_count = next_node + crossings.len();

    // intersection parameter along each chord, as a fraction with positive denominator
    let mut along: Vec<Vec<(i128, i128, usize)>> = vec![Vec::new(); chords.len()];
    let mut left_turn = Vec::with_capacity(crossings.len());
    for (i, &(x, y)) in crossings.iter().enumerate() {
        let (pa, pb) = (xy(chords[x].a), xy(chords[x].b));
        let (qa, qb) = (xy(chords[y].a), xy(chords[y].b));
        let (r, s) = (sub(pb, pa), sub(qb, qa));
        let den = cross(r, s);
        if den == 0 {
            return Err(CubingError::InvariantViolation("interleaved arcs are parallel"));
        }
        let tn = cross(sub(qa, pa), s);
        let un = cross(sub(qa, pa), r);
        let sign = den.signum();
        let (tn, un, den_abs) = (tn * sign, un * sign, den.abs());
        if !(0 < tn && tn < den_abs && 0 < un && un < den_abs) {
            return Err(CubingError::InvariantViolation("interleaved arcs do not meet"));
        }
        along[x].push((tn, den_abs, i));
        along[y].push((un, den_abs, i));
        left_turn.push(den > 0);
    }
    for list in along.iter_mut() {
        list.sort_by(|p, q| (p.0 * q.1).cmp(&(q.0 * p.1)));
        if list.windows(2).any(|w| w[0].0 * w[1].1 == w[1].0 * w[0].1) {
            return Err(CubingError::Degenerate(t));
        }
    }
    let paths: Vec<Vec<usize>> = chords
        .iter()
        .zip(&along)
        .map(|(ch, list)| {
            let mut p = vec![node_of(ch.a.0, ch.a.1)];
            p.extend(list.iter().map(|&(_, _, i)| crossing_node(i)));
            p.push(node_of(ch.b.0, ch.b.1));
            p
        })
        .collect();
    let step = |ch: usize, node: usize, forward: bool| {
        let p = &paths[ch];
        let i = p.iter().position(|&x| x == node).unwrap();
        if forward {
            p[i + 1]
        } else {
            p[i - 1]
        }
    };

    // counterclockwise neighbour lists
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for s in 0..3 {
        let prev_side = (s + 2) % 3;
        rot[s] = vec![boundary_after(s, 0), node_of(prev_side, n[prev_side])];
        for q in 1..=n[s] {
            let node = node_of(s, q);
            let chord = chords.iter().position(|ch| ch.a == (s, q) || ch.b == (s, q));
            let mut r = vec![boundary_after(s, q)];
            if let Some(ch) = chord {
                r.push(step(ch, node, chords[ch].a == (s, q)));
            }
            r.push(node_of(s, q - 1));
            rot[node] = r;
        }
    }
    for (i, &(x, y)) in crossings.iter().enumerate() {
        let v = crossing_node(i);
        let (xf, xb) = (step(x, v, true), step(x, v, false));
        let (yf, yb) = (step(y, v, true), step(y, v, false));
        rot[v] = if left_turn[i] { vec![xf, yf, xb, yb] } else { vec![xf, yb, xb, yf] };
    }

    // faces: a dart is (node, slot); its face lies on its left
    let mut dart_base = vec![0usize; node_count + 1];
    for v in 0..node_count {
        dart_base[v + 1] = dart_base[v] + rot[v].len();
    }
    let slot_of = |v: usize, w: usize| rot[v].iter().position(|&x| x == w).unwrap();
    let dart = |v: usize, w: usize| dart_base[v] + slot_of(v, w);
    let mut face = vec![usize::MAX; dart_base[node_count]];
    let outer_start = dart(0, rot[0][1]);
    let mut faces = 0;
    let mut starts = vec![outer_start];
    starts.extend(0..dart_base[node_count]);
    let mut outer = true;
    for start in starts {
        if face[start] != usize::MAX {
            continue;
        }
        let id = if outer { usize::MAX - 1 } else { faces };
        let mut d = start;
        loop {
            face[d] = id;
            let u = dart_base.partition_point(|&b| b <= d) - 1;
            let v = rot[u][d - dart_base[u]];
            let back = slot_of(v, u);
            let deg = rot[v].len();
            d = dart_base[v] + (back + deg - 1) % deg;
            if d == start {
                break;
            }
            if face[d] != usize::MAX {
                return Err(CubingError::InvariantViolation("face tracing is inconsistent"));
            }
        }
        if outer {
            outer = false;
        } else {
            faces += 1;
        }
    }
    let inner = |d: usize| {
        let f = face[d];
        if f >= faces {
            Err(CubingError::InvariantViolation("arc borders the outside"))
        } else {
            Ok(f)
        }
    };

    let mut boundary: [Vec<usize>; 3] = Default::default();
    for s in 0..3 {
        for q in 0..=n[s] {
            boundary[s].push(inner(dart(node_of(s, q), boundary_after(s, q)))?);
        }
    }
    let mut subarcs = Vec::new();
    let mut subarc_at: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (ch, path) in chords.iter().zip(&paths) {
        let last = path.len() - 2;
        for (j, w) in path.windows(2).enumerate() {
            subarc_at.insert((w[0], w[1]), subarcs.len());
            subarc_at.insert((w[1], w[0]), subarcs.len());
            subarcs.push(SubArc {
                track: ch.track,
                left: inner(dart(w[0], w[1]))?,
                right: inner(dart(w[1], w[0]))?,
                positive_right: ch.positive_right,
                ends: [(j == 0).then_some(ch.point_a), (j == last).then_some(ch.point_b)],
            });
        }
    }
    let mut squares = Vec::new();
    for (i, &(x, y)) in crossings.iter().enumerate() {
        let v = crossing_node(i);
        let corners = core::array::from_fn(|m| face[dart_base[v] + m]);
        let sides = core::array::from_fn(|m| subarc_at[&(v, rot[v][m])]);
        // the side shared by both arcs' corners, the lower one when they share two
        let sides_of = |ch: &Chord| [ch.a.0, ch.b.0];
        let shared = (0..3)
            .find(|s| sides_of(&chords[x]).contains(s) && sides_of(&chords[y]).contains(s))
            .ok_or(CubingError::InvariantViolation("crossing arcs share no side"))?;
        let toward = |ch: usize| {
            let end = if chords[ch].a.0 == shared { chords[ch].a } else { chords[ch].b };
            let forward = chords[ch].b == end;
            slot_of(v, step(ch, v, forward))
        };
        let (sx, sy) = (toward(x), toward(y));
        let marked = (0..4)
            .find(|&m| {
                let pair = [m, (m + 1) % 4];
                pair.contains(&sx) && pair.contains(&sy)
            })
            .ok_or(CubingError::InvariantViolation("marked corner is not a sector"))?;
        squares.push(LocalSquare { crossing: first_crossing + i, corners, sides, marked });
    }
    Ok(TriangleCells { faces, boundary, subarcs, squares })
}

/// Edge of the dual complex: a piece of one track between crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubeEdge {
    pub track: usize,
    /// Region on the positive side of the piece.
    pub positive: usize,
    pub negative: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Square {
    pub crossing: usize,
    /// Regions in the four sectors around the crossing, counterclockwise.
    pub corners: [usize; 4],
    /// `sides[m]` is the edge leaving the crossing between corners
    /// `m - 1` and `m`.
    pub sides: [usize; 4],
    /// Index of the corner facing the side that holds an endpoint of both arcs.
    pub marked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSquareComplex {
    pub vertices: usize,
    pub edges: Vec<CubeEdge>,
    pub squares: Vec<Square>,
    /// Region per element: the vertex, then combined segments, then faces.
    region_of: Vec<usize>,
    seg_offset: Vec<usize>,
    /// Pairs of elements separated only by a piece of the given track.
    separators: Vec<(usize, usize, usize)>,
}

impl DualSquareComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.squares.len() as i64
    }

    /// Region containing segment `s` (between combined points `s` and
    /// `s + 1`) of edge `e`.
    pub fn region_of_segment(&self, e: usize, s: usize) -> usize {
        self.region_of[self.seg_offset[e] + s]
    }

    pub fn basepoint_region(&self) -> usize {
        self.region_of[0]
    }
}

pub fn build_dual_complex(a: &Arrangement, c: &TriangularComplex) -> Result<DualSquareComplex, CubingError> {
    let mut seg_offset = Vec::with_capacity(c.edge_count);
    let mut acc = 1;
    for e in 0..c.edge_count {
        seg_offset.push(acc);
        acc += a.combined_points(e) + 1;
    }
    let mut cells = Vec::new();
    let mut face_offset = Vec::new();
    let mut first_crossing = 0;
    for t in 0..c.triangles.len() {
        let tc = triangle_cells(a, c, t, first_crossing)?;
        first_crossing += tc.squares.len();
        face_offset.push(acc);
        acc += tc.faces;
        cells.push(tc);
    }
    let mut uf = UnionFind::new(acc);
    for e in 0..c.edge_count {
        uf.union(0, seg_offset[e]);
        uf.union(0, seg_offset[e] + a.combined_points(e));
    }
    for (t, tc) in cells.iter().enumerate() {
        for (s, faces) in tc.boundary.iter().enumerate() {
            let side = c.triangles[t][s];
            let n = a.combined_points(side.edge);
            for (sp, &f) in faces.iter().enumerate() {
                uf.union(face_offset[t] + f, seg_offset[side.edge] + side_segment_to_edge(side.orientation, n, sp));
            }
        }
    }
    let (region_of, vertices) = uf.labels();

    // pieces: sub-arcs glued at the track points they share
    let mut subarc_offset = Vec::new();
    let mut total = 0;
    for tc in &cells {
        subarc_offset.push(total);
        total += tc.subarcs.len();
    }
    let mut pieces = UnionFind::new(total);
    let mut at_point: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (t, tc) in cells.iter().enumerate() {
        for (j, sa) in tc.subarcs.iter().enumerate() {
            for p in sa.ends.iter().flatten() {
                let id = subarc_offset[t] + j;
                match at_point.get(&(sa.track, *p)) {
                    Some(&other) => {
                        pieces.union(other, id);
                    }
                    None => {
                        at_point.insert((sa.track, *p), id);
                    }
                }
            }
        }
    }
    let (piece_of, piece_count) = pieces.labels();
    let mut edges: Vec<Option<CubeEdge>> = vec![None; piece_count];
    let mut separators = Vec::new();
    for (t, tc) in cells.iter().enumerate() {
        for (j, sa) in tc.subarcs.iter().enumerate() {
            let (l, r) = (face_offset[t] + sa.left, face_offset[t] + sa.right);
            let (pos, neg) = if sa.positive_right { (r, l) } else { (l, r) };
            let e = CubeEdge { track: sa.track, positive: region_of[pos], negative: region_of[neg] };
            let slot = &mut edges[piece_of[subarc_offset[t] + j]];
            match slot {
                Some(prev) if *prev != e => {
                    return Err(CubingError::InvariantViolation("piece borders inconsistent regions"));
                }
                _ => *slot = Some(e),
            }
            separators.push((sa.track, l, r));
        }
    }
    for (k, track) in a.tracks.iter().enumerate() {
        for e in 0..c.edge_count {
            for index in 1..=track.pattern.points[e] {
                let q = a.combined_index(k, Point { edge: e, index });
                separators.push((k, seg_offset[e] + q - 1, seg_offset[e] + q));
            }
        }
    }
    let edges: Vec<CubeEdge> = edges.into_iter().map(|e| e.unwrap()).collect();
    let mut squares = Vec::new();
    for (t, tc) in cells.iter().enumerate() {
        for sq in &tc.squares {
            squares.push(Square {
                crossing: sq.crossing,
                corners: sq.corners.map(|f| region_of[face_offset[t] + f]),
                sides: sq.sides.map(|j| piece_of[subarc_offset[t] + j]),
                marked: sq.marked,
            });
        }
    }
    Ok(DualSquareComplex { vertices, edges, squares, region_of, seg_offset, separators })
}

/// Per-square line counts and marked-corner crossings of a combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SquareCounts {
    /// Lines parallel to the sides of the first track's pieces.
    pub p: u64,
    pub q: u64,
    pub marked_crossings: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarePattern {
    pub squares: Vec<SquareCounts>,
    /// Intersection count per edge of the dual complex.
    pub edge_counts: Vec<u64>,
}

pub fn combination_pattern(
    a: &Arrangement,
    coeffs: &[i64],
    d: &DualSquareComplex,
) -> Result<SquarePattern, CubingError> {
    if coeffs.len() != a.tracks.len() {
        return Err(CubingError::DimensionMismatch { expected: a.tracks.len(), found: coeffs.len() });
    }
    if coeffs.iter().all(|&b| b == 0) {
        return Err(CubingError::AllZero);
    }
    let squares = d
        .squares
        .iter()
        .map(|sq| {
            let [(i, _), (j, _)] = a.crossings[sq.crossing].arcs;
            let (bi, bj) = (coeffs[i], coeffs[j]);
            let mixed = bi.signum() * bj.signum() < 0;
            SquareCounts {
                p: bi.unsigned_abs(),
                q: bj.unsigned_abs(),
                marked_crossings: if mixed { bi.unsigned_abs().min(bj.unsigned_abs()) } else { 0 },
            }
        })
        .collect();
    let edge_counts = d.edges.iter().map(|e| coeffs[e.track].unsigned_abs()).collect();
    Ok(SquarePattern { squares, edge_counts })
}

/// The normal pattern left after cancelling oppositely coloured points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    /// Points per edge after cancellation.
    pub edge_counts: Vec<i64>,
    pub vector: Vec<i64>,
}

/// Arcs that would have to leave and return to the same side of each
/// triangle for the given edge counts.
pub fn returning_arcs(edge_counts: &[i64], c: &TriangularComplex) -> Vec<i64> {
    c.triangles
        .iter()
        .map(|tri| {
            let m: [i64; 3] = core::array::from_fn(|s| edge_counts[tri[s].edge]);
            (0..3).map(|s| (m[s] - m[(s + 1) % 3] - m[(s + 2) % 3]).max(0) / 2).sum()
        })
        .collect()
}

/// Cancels points of positively and negatively weighted copies in adjacent
/// pairs along every edge, and reads off the normal pattern that remains.
/// The combination itself must be a pattern, so that every edge meets the
/// positive copies at least as often as the negative ones.
pub fn resolve_mixed(a: &Arrangement, coeffs: &[i64], c: &TriangularComplex) -> Result<Resolution, CubingError> {
    if coeffs.len() != a.tracks.len() {
        return Err(CubingError::DimensionMismatch { expected: a.tracks.len(), found: coeffs.len() });
    }
    if coeffs.iter().all(|&b| b == 0) {
        return Err(CubingError::AllZero);
    }
    let mut combined = vec![0i64; c.corner_count()];
    for (t, &b) in a.tracks.iter().zip(coeffs) {
        for (x, &y) in combined.iter_mut().zip(t.vector()) {
            *x += b * y;
        }
    }
    if let Some(i) = combined.iter().position(|&x| x < 0) {
        return Err(CubingError::NotAPattern(i));
    }
    let edge_counts: Vec<i64> = (0..c.edge_count)
        .map(|e| {
            // net excess of one colour after adjacent red/blue cancellations
            let mut stack: Vec<bool> = Vec::new();
            for &k in &a.edge_orderings[e] {
                let red = coeffs[k] > 0;
                for _ in 0..coeffs[k].unsigned_abs() {
                    match stack.last() {
                        Some(&top) if top != red => {
                            stack.pop();
                        }
                        _ => stack.push(red),
                    }
                }
            }
            stack.len() as i64
        })
        .collect();
    for (t, r) in returning_arcs(&edge_counts, c).into_iter().enumerate() {
        if r > 0 {
            return Err(CubingError::ResolutionFailed { triangle: t, returning: r });
        }
    }
    let mut vector = Vec::with_capacity(c.corner_count());
    for (t, tri) in c.triangles.iter().enumerate() {
        let m: [i64; 3] = core::array::from_fn(|s| edge_counts[tri[s].edge]);
        if (m[0] + m[1] + m[2]) % 2 != 0 {
            return Err(CubingError::ResolutionFailed { triangle: t, returning: 1 });
        }
        for i in 0..3 {
            // corner i lies between sides i - 1 and i
            vector.push((m[(i + 2) % 3] + m[i] - m[(i + 1) % 3]) / 2);
        }
    }
    if vector != combined {
        return Err(CubingError::InvariantViolation("resolved pattern differs from the combination"));
    }
    Ok(Resolution { edge_counts, vector })
}

/// A region lying on the given side of every track, where `fixed[k]` is a
/// region of track `k` alone as numbered by its own cut.
pub fn common_side_region(
    a: &Arrangement,
    d: &DualSquareComplex,
    c: &TriangularComplex,
    fixed: &[usize],
) -> Option<usize> {
    let mut candidates: Vec<bool> = vec![true; d.vertices];
    for (k, track) in a.tracks.iter().enumerate() {
        let own = cut_regions(&track.pattern, c);
        // merge across everything except track k to see track k's sides
        let mut uf = UnionFind::new(d.region_of.len());
        let mut first = vec![usize::MAX; d.vertices];
        for (x, &r) in d.region_of.iter().enumerate() {
            if first[r] == usize::MAX {
                first[r] = x;
            }
            uf.union(first[r], x);
        }
        for &(j, x, y) in &d.separators {
            if j != k {
                uf.union(x, y);
            }
        }
        let mut side_of_class: BTreeMap<usize, usize> = BTreeMap::new();
        side_of_class.insert(uf.find(0), own.basepoint_region);
        for e in 0..c.edge_count {
            let mut before = 0;
            for s in 0..=a.combined_points(e) {
                if s > 0 && a.edge_orderings[e][s - 1] == k {
                    before += 1;
                }
                side_of_class.entry(uf.find(d.seg_offset[e] + s)).or_insert(own.region_of_segment(e, before));
            }
        }
        for (x, &r) in d.region_of.iter().enumerate() {
            if side_of_class.get(&uf.find(x)).copied() != Some(fixed[k]) {
                candidates[r] = false;
            }
        }
    }
    candidates.iter().position(|&ok| ok)
}
