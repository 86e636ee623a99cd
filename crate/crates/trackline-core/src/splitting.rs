//! Splittings carried by untwisted tracks: edge and vertex group
//! generators, the HNN homomorphism, and the "clearly trivial" test.
//!
//! Words are computed by sliding every pattern point to the terminal vertex
//! of its edge. Under this map the initial segment of an edge becomes the
//! whole edge, every other segment and every arc collapses to the vertex,
//! and paths in the cut complex become words in the group.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::TriangularComplex;
use crate::pattern::{cut_regions, face_at_side_segment, side_segment_to_edge, Face, Pattern, PatternError, Point, RegionDecomposition, Track};
use crate::presentation::{free_reduce, inverse_word, Letter, Presentation, TriangulatedPresentation, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitError {
    TwistedInput,
    InvalidRegion(usize),
    PathNotComposable(usize),
    Pattern(PatternError),
    InvariantViolation(&'static str),
}

impl fmt::Display for SplitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitError::TwistedInput => write!(f, "track is twisted; double it first"),
            SplitError::InvalidRegion(r) => write!(f, "no region {r}"),
            SplitError::PathNotComposable(i) => write!(f, "path step {i} does not start where step {} ends", i - 1),
            SplitError::Pattern(e) => e.fmt(f),
            SplitError::InvariantViolation(what) => write!(f, "invariant violated: {what}"),
        }
    }
}

impl From<PatternError> for SplitError {
    fn from(e: PatternError) -> Self {
        SplitError::Pattern(e)
    }
}

/// A vertex of the pattern-subdivided 1-skeleton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Node {
    Vertex,
    Point(Point),
}

/// One step of an edge path in the pattern-subdivided complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathStep {
    /// Segment `segment` of `edge`, between points `segment` and
    /// `segment + 1` (the vertex at either end).
    Segment { edge: usize, segment: usize, forward: bool },
    /// An arc of the pattern, from `a` to `b` when `forward`.
    Arc { index: usize, forward: bool },
}

/// Evaluates paths and boundary routes to words.
pub struct WordFunctor<'a> {
    pub complex: &'a TriangularComplex,
    pub pattern: &'a Pattern,
    pub presentation: &'a TriangulatedPresentation,
}

impl<'a> WordFunctor<'a> {
    pub fn new(
        complex: &'a TriangularComplex,
        pattern: &'a Pattern,
        presentation: &'a TriangulatedPresentation,
    ) -> Self {
        WordFunctor { complex, pattern, presentation }
    }

    fn step_ends(&self, step: PathStep) -> (Node, Node) {
        match step {
            PathStep::Segment { edge, segment, forward } => {
                let n = self.pattern.points[edge];
                let lo = if segment == 0 { Node::Vertex } else { Node::Point(Point { edge, index: segment }) };
                let hi = if segment == n { Node::Vertex } else { Node::Point(Point { edge, index: segment + 1 }) };
                if forward {
                    (lo, hi)
                } else {
                    (hi, lo)
                }
            }
            PathStep::Arc { index, forward } => {
                let a = self.pattern.arcs[index];
                if forward {
                    (Node::Point(a.a), Node::Point(a.b))
                } else {
                    (Node::Point(a.b), Node::Point(a.a))
                }
            }
        }
    }

    /// Word of an edge path, over the original generators.
    pub fn evaluate(&self, path: &[PathStep]) -> Result<Word, SplitError> {
        let mut w = Vec::new();
        let mut at: Option<Node> = None;
        for (i, &step) in path.iter().enumerate() {
            let (from, to) = self.step_ends(step);
            if at.is_some_and(|n| n != from) {
                return Err(SplitError::PathNotComposable(i));
            }
            at = Some(to);
            if let PathStep::Segment { edge, segment: 0, forward } = step {
                w.push(Letter::new(edge, if forward { 1 } else { -1 }));
            }
        }
        Ok(self.presentation.expand(&w))
    }

    /// Route inside triangle `t` from the basepoint of a segment on side
    /// `i` forward around the boundary to the basepoint of a segment on
    /// side `j`. `phi` is 0 for an initial segment and 1 otherwise.
    pub fn boundary_word(&self, t: usize, i: usize, phi_i: u8, j: usize, phi_j: u8) -> Word {
        let tri = &self.complex.triangles[t];
        let mut w = Vec::new();
        let si = tri[i];
        if si.orientation > 0 && phi_i == 0 {
            w.push(Letter::pos(si.edge));
        }
        if si.orientation < 0 && phi_i == 1 {
            w.push(Letter::neg(si.edge));
        }
        let mut k = (i + 1) % 3;
        while k != j {
            w.push(Letter::new(tri[k].edge, tri[k].orientation));
            k = (k + 1) % 3;
        }
        let sj = tri[j];
        if sj.orientation > 0 && phi_j == 1 {
            w.push(Letter::pos(sj.edge));
        }
        if sj.orientation < 0 && phi_j == 0 {
            w.push(Letter::neg(sj.edge));
        }
        w
    }

    /// Word (extended alphabet) carried by arc `index` from `b` to `a`.
    pub fn arc_word(&self, index: usize) -> Word {
        let a = self.pattern.arcs[index];
        self.boundary_word(a.triangle, (a.corner + 2) % 3, 1, a.corner, 1)
    }
}

/// Graph whose spanning trees give generating sets.
struct WordGraph {
    nodes: usize,
    edges: Vec<(usize, usize, Word)>,
}

impl WordGraph {
    /// Non-tree edges of a BFS tree from `root`, as loops
    /// `tail(a) w tail(b)^-1`, restricted to nodes where `keep` holds.
    /// Also returns the tail words.
    fn loops(&self, root: usize, keep: impl Fn(usize) -> bool) -> (Vec<Word>, Vec<Option<Word>>) {
        let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); self.nodes];
        for (idx, (a, b, _)) in self.edges.iter().enumerate() {
            if keep(*a) && keep(*b) {
                adj[*a].push((idx, *b, true));
                adj[*b].push((idx, *a, false));
            }
        }
        let mut tail: Vec<Option<Word>> = vec![None; self.nodes];
        let mut tree = vec![false; self.edges.len()];
        tail[root] = Some(Vec::new());
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(idx, v, fwd) in &adj[u] {
                if tail[v].is_some() {
                    continue;
                }
                let w = &self.edges[idx].2;
                let mut t = tail[u].clone().unwrap();
                if fwd {
                    t.extend_from_slice(w);
                } else {
                    t.extend(inverse_word(w));
                }
                tail[v] = Some(t);
                tree[idx] = true;
                queue.push_back(v);
            }
        }
        let mut out = Vec::new();
        for (idx, (a, b, w)) in self.edges.iter().enumerate() {
            if tree[idx] || !keep(*a) || !keep(*b) || tail[*a].is_none() {
                continue;
            }
            let mut l = tail[*a].clone().unwrap();
            l.extend_from_slice(w);
            l.extend(inverse_word(tail[*b].as_ref().unwrap()));
            out.push(l);
        }
        (out, tail)
    }
}

fn region_graph(f: &WordFunctor<'_>, rd: &RegionDecomposition) -> WordGraph {
    let p = f.pattern;
    let c = f.complex;
    let mut edges = Vec::new();
    for (e, &n) in p.points.iter().enumerate() {
        edges.push((0, rd.segment_element(e, 0), Vec::new()));
        let w = if n == 0 { vec![Letter::pos(e)] } else { Vec::new() };
        edges.push((rd.segment_element(e, n), 0, w));
    }
    for (t, tri) in c.triangles.iter().enumerate() {
        // segments touching each face of t, in (side, segment) order
        let mut touching: Vec<(Face, usize, u8, usize)> = Vec::new();
        for (s, side) in tri.iter().enumerate() {
            let n = p.points[side.edge];
            for sp in 0..=n {
                let face = face_at_side_segment(&p.vector, t, s, n, sp);
                let seg = side_segment_to_edge(side.orientation, n, sp);
                touching.push((face, s, u8::from(seg != 0), rd.segment_element(side.edge, seg)));
            }
        }
        touching.sort_by_key(|x| x.0);
        for group in touching.chunk_by(|x, y| x.0 == y.0) {
            let (_, s0, phi0, e0) = group[0];
            for &(_, s, phi, el) in &group[1..] {
                edges.push((e0, el, f.boundary_word(t, s0, phi0, s, phi)));
            }
        }
    }
    let nodes = rd.region_of.len();
    WordGraph { nodes, edges }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingKind {
    Amalgam,
    Hnn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivialFlag {
    Trivial,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub kind: SplittingKind,
    pub edge_words: Vec<Word>,
    /// Two lists for an amalgam (the basepoint side first), one for HNN.
    pub vertex_words: Vec<Vec<Word>>,
    /// Region of the track's decomposition each vertex list belongs to.
    pub vertex_regions: Vec<usize>,
    /// Signed crossing number per original generator (HNN only).
    pub stable_hom: Option<Vec<i64>>,
    /// A loop crossing the track once (HNN only).
    pub stable_letter: Option<Word>,
    pub trivial_flag: TrivialFlag,
    /// Index into `vertex_words` of a list certified to generate the group.
    pub trivial_side: Option<usize>,
}

/// Generators of the track's fundamental group, based at its least point.
pub fn edge_group_words(
    t: &Track,
    c: &TriangularComplex,
    tp: &TriangulatedPresentation,
) -> Result<Vec<Word>, SplitError> {
    let p = &t.pattern;
    if p.coorientation(c).is_none() {
        return Err(SplitError::TwistedInput);
    }
    if p.point_count() == 0 {
        return Ok(Vec::new());
    }
    let f = WordFunctor::new(c, p, tp);
    let edges = (0..p.arcs.len())
        .map(|i| (p.global(p.arcs[i].b), p.global(p.arcs[i].a), f.arc_word(i)))
        .collect();
    let g = WordGraph { nodes: p.point_count(), edges };
    let (loops, _) = g.loops(0, |_| true);
    Ok(loops.iter().map(|w| tp.expand(w)).collect())
}

/// Segment elements adjacent to the track's least point, and that point.
fn base_segments(p: &Pattern, rd: &RegionDecomposition) -> Option<(Point, usize, usize)> {
    if p.point_count() == 0 {
        return None;
    }
    let q = p.point(0);
    Some((q, rd.segment_element(q.edge, q.index - 1), rd.segment_element(q.edge, q.index)))
}

fn conjugated(tp: &TriangulatedPresentation, pre: &[Letter], w: &[Letter]) -> Word {
    let mut full = pre.to_vec();
    full.extend_from_slice(w);
    full.extend(inverse_word(pre));
    tp.expand(&full)
}

/// Generators of the fundamental group of `region`. Regions next to the
/// track's least point are based there so that they agree with the edge
/// group; other regions are based at their first element.
pub fn vertex_group_words(
    rd: &RegionDecomposition,
    region: usize,
    c: &TriangularComplex,
    p: &Pattern,
    tp: &TriangulatedPresentation,
) -> Result<Vec<Word>, SplitError> {
    if region >= rd.count {
        return Err(SplitError::InvalidRegion(region));
    }
    let f = WordFunctor::new(c, p, tp);
    let g = region_graph(&f, rd);
    let (root, pre) = match base_segments(p, rd) {
        Some((q, lo, _)) if rd.region_of[lo] == region => {
            (lo, if q.index == 1 { vec![Letter::neg(q.edge)] } else { Vec::new() })
        }
        Some((_, _, hi)) if rd.region_of[hi] == region => (hi, Vec::new()),
        _ => {
            let root = (0..rd.region_of.len()).find(|&x| rd.region_of[x] == region).unwrap();
            (root, Vec::new())
        }
    };
    let (loops, _) = g.loops(root, |x| rd.region_of[x] == region);
    Ok(loops.iter().map(|w| conjugated(tp, &pre, w)).collect())
}

pub fn evaluate_hom(hom: &[i64], w: &[Letter]) -> i64 {
    w.iter().map(|l| l.sign as i64 * hom[l.generator]).sum()
}

pub fn classify_splitting(
    t: &Track,
    c: &TriangularComplex,
    tp: &TriangulatedPresentation,
) -> Result<Splitting, SplitError> {
    let p = &t.pattern;
    let signed = p.signed_counts(c).ok_or(SplitError::TwistedInput)?;
    let rd = cut_regions(p, c);
    let edge_words = edge_group_words(t, c, tp)?;
    let ng = tp.original_count();
    let mut s = match rd.count {
        2 => {
            let other = 1 - rd.basepoint_region;
            let regions = vec![rd.basepoint_region, other];
            let lists = regions
                .iter()
                .map(|&r| vertex_group_words(&rd, r, c, p, tp))
                .collect::<Result<Vec<_>, _>>()?;
            Splitting {
                kind: SplittingKind::Amalgam,
                edge_words,
                vertex_words: lists,
                vertex_regions: regions,
                stable_hom: None,
                stable_letter: None,
                trivial_flag: TrivialFlag::Unknown,
                trivial_side: None,
            }
        }
        1 => {
            let (q, lo, hi) = base_segments(p, &rd).ok_or(SplitError::InvariantViolation("empty track"))?;
            let list = vertex_group_words(&rd, 0, c, p, tp)?;
            let f = WordFunctor::new(c, p, tp);
            let g = region_graph(&f, &rd);
            let (_, tails) = g.loops(lo, |_| true);
            let mut w = if q.index == 1 { vec![Letter::pos(q.edge)] } else { Vec::new() };
            w.extend(inverse_word(tails[hi].as_ref().unwrap()));
            let pre = if q.index == 1 { vec![Letter::neg(q.edge)] } else { Vec::new() };
            let letter = conjugated(tp, &pre, &w);
            let hom: Vec<i64> = signed[..ng].to_vec();
            if evaluate_hom(&hom, &letter).abs() != 1 {
                return Err(SplitError::InvariantViolation("stable letter must cross the track once"));
            }
            Splitting {
                kind: SplittingKind::Hnn,
                edge_words,
                vertex_words: vec![list],
                vertex_regions: vec![0],
                stable_hom: Some(hom),
                stable_letter: Some(letter),
                trivial_flag: TrivialFlag::Unknown,
                trivial_side: None,
            }
        }
        _ => return Err(SplitError::InvariantViolation("a track cuts the complex into at most two regions")),
    };
    s.trivial_side = trivial_side(&s, &tp.base);
    s.trivial_flag = if s.trivial_side.is_some() { TrivialFlag::Trivial } else { TrivialFlag::Unknown };
    Ok(s)
}

/// Shortens words by multiplying them by each other while the total length
/// strictly drops, then removes empty words and duplicates.
pub fn nielsen_reduce(words: &[Word]) -> Vec<Word> {
    let mut ws: Vec<Word> = words.iter().map(|w| free_reduce(w)).filter(|w| !w.is_empty()).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..ws.len() {
            for j in 0..ws.len() {
                if i == j || ws[j].is_empty() {
                    continue;
                }
                let vj = ws[j].clone();
                let vj_inv = inverse_word(&vj);
                let candidates = [
                    [ws[i].as_slice(), vj.as_slice()].concat(),
                    [ws[i].as_slice(), vj_inv.as_slice()].concat(),
                    [vj.as_slice(), ws[i].as_slice()].concat(),
                    [vj_inv.as_slice(), ws[i].as_slice()].concat(),
                ];
                for cand in candidates {
                    let r = free_reduce(&cand);
                    if r.len() < ws[i].len() {
                        ws[i] = r;
                        changed = true;
                        break;
                    }
                }
            }
        }
        ws.retain(|w| !w.is_empty());
    }
    let mut seen = BTreeSet::new();
    ws.retain(|w| seen.insert(w.clone()));
    ws
}

fn covers_generators(words: &[Word], generators: usize) -> bool {
    let singles: BTreeSet<usize> = words.iter().filter(|w| w.len() == 1).map(|w| w[0].generator).collect();
    (0..generators).all(|g| singles.contains(&g))
}

/// First vertex list whose Nielsen-reduced form contains every generator
/// as a single letter.
pub fn trivial_side(s: &Splitting, p: &Presentation) -> Option<usize> {
    s.vertex_words
        .iter()
        .position(|ws| covers_generators(&nielsen_reduce(ws), p.generators.len()))
}

pub fn triviality_check(s: &Splitting, p: &Presentation) -> TrivialFlag {
    if trivial_side(s, p).is_some() {
        TrivialFlag::Trivial
    } else {
        TrivialFlag::Unknown
    }
}

/// Abelianization of a presentation via Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    /// Invariant factors greater than 1.
    pub torsion: Vec<i64>,
    pub free_rank: usize,
    /// Free-part coordinates of each generator.
    pub images: Vec<Vec<i64>>,
}

pub fn abelianization(p: &Presentation) -> Abelianization {
    let g = p.generators.len();
    let mut a: Vec<Vec<i128>> = p
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0i128; g];
            for l in r {
                row[l.generator] += l.sign as i128;
            }
            row
        })
        .collect();
    let rows = a.len();
    // column operations are mirrored on q, so that generator j maps to row j of q
    let mut q: Vec<Vec<i128>> = (0..g).map(|i| (0..g).map(|j| i128::from(i == j)).collect()).collect();
    let mut diag = Vec::new();
    let mut k = 0;
    while k < rows.min(g) {
        let Some((pi, pj)) = (k..rows)
            .flat_map(|i| (k..g).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| (a[i][j].abs(), i, j))
        else {
            break;
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        for row in q.iter_mut() {
            row.swap(k, pj);
        }
        let piv = a[k][k];
        let mut dirty = false;
        for i in k + 1..rows {
            let f = a[i][k] / piv;
            if f != 0 {
                for j in k..g {
                    a[i][j] -= f * a[k][j];
                }
            }
            dirty |= a[i][k] != 0;
        }
        for j in k + 1..g {
            let f = a[k][j] / piv;
            if f != 0 {
                for i in k..rows {
                    a[i][j] -= f * a[i][k];
                }
                for row in q.iter_mut() {
                    row[j] -= f * row[k];
                }
            }
            dirty |= a[k][j] != 0;
        }
        if dirty {
            continue;
        }
        // enforce divisibility of the remaining block by the pivot
        if let Some(i) = (k + 1..rows).find(|&i| (k + 1..g).any(|j| a[i][j] % piv != 0)) {
            for j in k..g {
                a[k][j] += a[i][j];
            }
            continue;
        }
        diag.push(piv.abs());
        k += 1;
    }
    let rank = diag.len();
    Abelianization {
        torsion: diag.iter().filter(|&&d| d > 1).map(|&d| d as i64).collect(),
        free_rank: g - rank,
        images: q.iter().map(|row| row[rank..].iter().map(|&x| x as i64).collect()).collect(),
    }
}

/// Free-part coordinates per generator.
pub fn abelianization_hom(p: &Presentation) -> Vec<Vec<i64>> {
    abelianization(p).images
}
