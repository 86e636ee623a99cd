//! Fixtures, random presentations and independent oracles shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trackline_core::complex::corner_index;
use trackline_core::cubing::Arrangement;
use trackline_core::pattern::{components, realize, Track};
use trackline_core::presentation::free_reduce;
use trackline_core::*;

pub const HIGMAN: &str = "a b c d : ab-a-b-b bc-b-c-c cd-c-d-d da-d-a-a";
pub const TREFOIL: &str = "c d : ccc-d-d";
pub const T1: [i64; 9] = [1, 1, 1, 0, 2, 0, 0, 0, 0];
pub const RED: [i64; 9] = [2, 0, 2, 4, 0, 2, 3, 3, 0];

pub struct Setup {
    pub tp: TriangulatedPresentation,
    pub c: TriangularComplex,
    pub sys: MatchingSystem,
    pub basis: SolutionBasis,
}

pub fn setup(p: &Presentation) -> Setup {
    let tp = triangulate(p);
    let c = build_complex(&tp);
    let sys = matching_system(&c);
    let raw = nullspace_basis(&sys).unwrap();
    let basis = if raw.rank() > 0 { nonnegativize(&raw).unwrap() } else { raw };
    Setup { tp, c, sys, basis }
}

pub fn setup_text(text: &str) -> Setup {
    setup(&parse_presentation(text).unwrap())
}

/// A presentation on 1 to 3 generators with 1 or 2 short relators.
pub fn random_presentation(rng: &mut ChaCha8Rng) -> Presentation {
    let ng = rng.gen_range(1..=3usize);
    let names: Vec<String> = ["a", "b", "c"][..ng].iter().map(|s| s.to_string()).collect();
    let nr = rng.gen_range(1..=2usize);
    let mut relators = Vec::new();
    while relators.len() < nr {
        let len = rng.gen_range(2..=6usize);
        let w: Word = (0..len)
            .map(|_| Letter::new(rng.gen_range(0..ng), if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        let w = free_reduce(&w);
        if !w.is_empty() {
            relators.push(w);
        }
    }
    Presentation::new(names, relators).unwrap()
}

pub fn random_presentations(seed: u64, count: usize) -> Vec<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_presentation(&mut rng)).collect()
}

/// Connected tracks found among basis vectors and small non-negative
/// combinations of them, deduplicated by vector.
pub fn harvest_tracks(s: &Setup, seed: u64, combos: usize, max_points: usize) -> Vec<Track> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut consider = |v: Vec<i64>, out: &mut Vec<Track>| {
        let Ok(p) = realize(&v, &s.c) else { return };
        if p.is_empty() || p.point_count() > max_points {
            return;
        }
        for t in components(&p, &s.c) {
            if seen.insert(t.vector().to_vec()) {
                out.push(t);
            }
        }
    };
    for v in &s.basis.vectors {
        consider(v.clone(), &mut out);
    }
    if s.basis.rank() > 0 {
        for _ in 0..combos {
            let coeffs: Vec<i64> = (0..s.basis.rank()).map(|_| rng.gen_range(0..=2)).collect();
            consider(s.basis.combine(&coeffs), &mut out);
        }
    }
    out
}

/// Rank over the rationals by fraction-free elimination.
pub fn rational_rank(matrix: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let (f, g) = (a[rank][col].clone(), a[i][col].clone());
            for j in col..cols {
                a[i][j] = &a[i][j] * &f - &a[rank][j] * &g;
            }
        }
        rank += 1;
    }
    rank
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from gcds of minors, and the free rank, of the
/// abelianized relator matrix. Only meant for small matrices.
pub fn smith_oracle(p: &Presentation) -> (Vec<i64>, usize) {
    let g = p.generators.len();
    let m: Vec<Vec<BigInt>> = p
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); g];
            for l in r {
                row[l.generator] += l.sign as i64;
            }
            row
        })
        .collect();
    let mut divisors = vec![BigInt::from(1)];
    for k in 1..=m.len().min(g) {
        let mut d = BigInt::zero();
        for rows in subsets(m.len(), k) {
            for cols in subsets(g, k) {
                let sub: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect();
                d = d.gcd(&det(&sub));
            }
        }
        if d.is_zero() {
            break;
        }
        divisors.push(d);
    }
    let rank = divisors.len() - 1;
    let factors: Vec<i64> = (1..=rank)
        .map(|k| (&divisors[k] / &divisors[k - 1]).abs().try_into().unwrap())
        .filter(|&f: &i64| f > 1)
        .collect();
    (factors, g - rank)
}

/// Primitive integer vectors of max-norm at most `bound` killing every
/// relator, up to sign.
pub fn kernel_homs(p: &Presentation, bound: i64) -> Vec<Vec<i64>> {
    let g = p.generators.len();
    let mut out = Vec::new();
    let mut h = vec![-bound; g];
    loop {
        let nonzero = h.iter().any(|&x| x != 0);
        let first = h.iter().find(|&&x| x != 0).copied().unwrap_or(0);
        let gcd = h.iter().fold(0i64, |a, &x| a.gcd(&x));
        if nonzero && first > 0 && gcd == 1 {
            let kills = p.relators.iter().all(|r| r.iter().map(|l| l.sign as i64 * h[l.generator]).sum::<i64>() == 0);
            if kills {
                out.push(h.clone());
            }
        }
        let mut i = 0;
        while i < g && h[i] == bound {
            h[i] = -bound;
            i += 1;
        }
        if i == g {
            return out;
        }
        h[i] += 1;
    }
}

/// Combined 1-based positions of every track's points on each edge, read
/// straight from the per-edge orderings.
pub fn combined_positions(a: &Arrangement, edges: usize) -> BTreeMap<(usize, usize, usize), usize> {
    let mut out = BTreeMap::new();
    for e in 0..edges {
        let mut count = vec![0usize; a.tracks.len()];
        for (pos, &k) in a.edge_orderings[e].iter().enumerate() {
            count[k] += 1;
            out.insert((k, e, count[k]), pos + 1);
        }
    }
    out
}

/// Chords of one triangle as pairs of keys along its boundary circle.
/// Point keys are even and side segment keys odd.
struct TriangleChords {
    chords: Vec<(usize, usize, usize)>,
    segment_keys: Vec<Vec<usize>>,
}

fn triangle_chords(a: &Arrangement, c: &TriangularComplex, t: usize) -> TriangleChords {
    let pos = combined_positions(a, c.edge_count);
    let tri = c.triangles[t];
    let n: Vec<usize> = tri.iter().map(|s| a.edge_orderings[s.edge].len()).collect();
    let offset = [0, n[0] + 1, n[0] + n[1] + 2];
    let key = |s: usize, q: usize| {
        let side_pos = if tri[s].orientation > 0 { q } else { n[s] + 1 - q };
        2 * (offset[s] + side_pos)
    };
    let mut chords = Vec::new();
    for (k, track) in a.tracks.iter().enumerate() {
        for arc in track.pattern.arcs.iter().filter(|x| x.triangle == t) {
            let sa = arc.corner;
            let sb = (arc.corner + 2) % 3;
            let ka = key(sa, pos[&(k, arc.a.edge, arc.a.index)]);
            let kb = key(sb, pos[&(k, arc.b.edge, arc.b.index)]);
            chords.push((k, ka.min(kb), ka.max(kb)));
        }
    }
    let segment_keys = (0..3).map(|s| (0..=n[s]).map(|sp| 2 * (offset[s] + sp) + 1).collect()).collect();
    TriangleChords { chords, segment_keys }
}

fn interleave(x: (usize, usize), y: (usize, usize)) -> bool {
    let inside = |k: usize| x.0 < k && k < x.1;
    inside(y.0) != inside(y.1)
}

/// Crossings between arcs of distinct tracks, by endpoint interleaving.
pub fn crossing_oracle(a: &Arrangement, c: &TriangularComplex) -> usize {
    (0..c.triangles.len())
        .map(|t| {
            let tc = triangle_chords(a, c, t);
            let mut count = 0;
            for (i, x) in tc.chords.iter().enumerate() {
                for y in &tc.chords[i + 1..] {
                    if x.0 != y.0 && interleave((x.1, x.2), (y.1, y.2)) {
                        count += 1;
                    }
                }
            }
            count
        })
        .sum()
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }
    fn union(&mut self, x: usize, y: usize) {
        let (a, b) = (self.find(x), self.find(y));
        self.0[a] = b;
    }
    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// `(V, E, F)` of the dual square complex, counted combinatorially.
///
/// Arcs are straight chords of a convex triangle, so each face of a
/// triangle is determined by which side of every chord it lies on. A chord
/// arrangement with `k` chords and `x` crossings has `1 + k + x` faces; the
/// ones not touching the boundary are regions on their own. Boundary faces
/// are glued across edge segments and at the vertex.
pub fn euler_oracle(a: &Arrangement, c: &TriangularComplex) -> (usize, usize, usize) {
    let mut crossings = 0;
    let mut interior = 0;
    let mut seg_offset = Vec::new();
    let mut acc = 1;
    for e in 0..c.edge_count {
        seg_offset.push(acc);
        acc += a.edge_orderings[e].len() + 1;
    }
    let mut glue: Vec<(usize, (usize, Vec<bool>))> = Vec::new();
    for t in 0..c.triangles.len() {
        let tc = triangle_chords(a, c, t);
        let mut x = 0;
        for (i, p) in tc.chords.iter().enumerate() {
            for q in &tc.chords[i + 1..] {
                if interleave((p.1, p.2), (q.1, q.2)) {
                    x += 1;
                }
            }
        }
        crossings += x;
        let mut signs = BTreeSet::new();
        for (s, keys) in tc.segment_keys.iter().enumerate() {
            let side = c.triangles[t][s];
            let n = keys.len() - 1;
            for (sp, &k) in keys.iter().enumerate() {
                let sv: Vec<bool> = tc.chords.iter().map(|ch| ch.1 < k && k < ch.2).collect();
                signs.insert(sv.clone());
                let seg = if side.orientation > 0 { sp } else { n - sp };
                glue.push((seg_offset[side.edge] + seg, (t, sv)));
            }
        }
        interior += 1 + tc.chords.len() + x - signs.len();
    }
    let mut face_ids: BTreeMap<(usize, Vec<bool>), usize> = BTreeMap::new();
    for (_, f) in &glue {
        let next = acc + face_ids.len();
        face_ids.entry(f.clone()).or_insert(next);
    }
    let mut dsu = Dsu::new(acc + face_ids.len());
    for e in 0..c.edge_count {
        dsu.union(0, seg_offset[e]);
        dsu.union(0, seg_offset[e] + a.edge_orderings[e].len());
    }
    for (seg, f) in &glue {
        dsu.union(*seg, face_ids[f]);
    }
    let vertices = dsu.classes() + interior;

    // pieces: arcs cut at their crossings, glued at the track's points
    let mut pieces = 0;
    for (k, track) in a.tracks.iter().enumerate() {
        let mut cuts = vec![0usize; track.pattern.arcs.len()];
        for (t, tri_chords) in (0..c.triangles.len()).map(|t| (t, triangle_chords(a, c, t))) {
            let mine: Vec<usize> = track.pattern.arcs.iter().enumerate().filter(|(_, x)| x.triangle == t).map(|(i, _)| i).collect();
            let own: Vec<&(usize, usize, usize)> = tri_chords.chords.iter().filter(|ch| ch.0 == k).collect();
            for (&i, ch) in mine.iter().zip(own) {
                cuts[i] = tri_chords.chords.iter().filter(|o| o.0 != k && interleave((ch.1, ch.2), (o.1, o.2))).count();
            }
        }
        let mut first = Vec::new();
        let mut total = 0;
        for &x in &cuts {
            first.push(total);
            total += x + 1;
        }
        let mut dsu = Dsu::new(total);
        let mut at: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (i, arc) in track.pattern.arcs.iter().enumerate() {
            for (p, sub) in [(arc.a, first[i]), (arc.b, first[i] + cuts[i])] {
                match at.get(&(p.edge, p.index)) {
                    Some(&o) => dsu.union(o, sub),
                    None => {
                        at.insert((p.edge, p.index), sub);
                    }
                }
            }
        }
        // sub-arcs of one arc stay apart; only the point gluing joins them
        pieces += dsu.classes();
    }
    (vertices, pieces, crossings)
}

pub fn corner(t: usize, i: usize) -> usize {
    corner_index(t, i)
}

/// Whether the exponent-sum vectors of `words` together with the relators
/// span all of `Z^g`, i.e. the words generate the abelianization.
pub fn generates_abelianization(words: &[Word], p: &Presentation) -> bool {
    let g = p.generators.len();
    let row = |w: &Word| {
        let mut r = vec![0i128; g];
        for l in w {
            r[l.generator] += l.sign as i128;
        }
        r
    };
    let mut rows: Vec<Vec<i128>> = words.iter().chain(&p.relators).map(row).collect();
    for col in 0..g {
        // Euclid down the column until one row holds its gcd
        loop {
            let live: Vec<usize> = (col..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if live.len() <= 1 {
                break;
            }
            let m = *live.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            for &i in &live {
                if i != m {
                    let f = rows[i][col] / rows[m][col];
                    let pivot = rows[m].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pivot) {
                        *x -= f * y;
                    }
                }
            }
        }
        let Some(i) = (col..rows.len()).find(|&i| rows[i][col] != 0) else { return false };
        if rows[i][col].abs() != 1 {
            return false;
        }
        rows.swap(col, i);
    }
    true
}

/// Exponent sum of a word under a homomorphism to the integers.
pub fn hom_value(h: &[i64], w: &[Letter]) -> i64 {
    w.iter().map(|l| l.sign as i64 * h[l.generator]).sum()
}
