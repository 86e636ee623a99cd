//! Command-line driver for trackline: reading presentations, running the
//! track pipeline, rendering reports and cubing dumps, and structured export.

pub mod document;
pub mod report;

use std::fmt;
use std::path::Path;

use trackline_core::cubing::{
    build_arrangement_with, build_dual_complex, combination_pattern, default_ordering, resolve_mixed, CubingError,
};
use trackline_core::lattice::{is_vertex_solution, LatticeError, VertexVerdict};
use trackline_core::pattern::{untwist_basis, PatternError, Track};
use trackline_core::presentation::{format_word, ParseError};
use trackline_core::splitting::{classify_splitting, SplitError, SplittingKind};
use trackline_core::{
    build_complex, matching_system, nonnegativize, nullspace_basis, parse_presentation, parse_structured, triangulate,
    Presentation, TriangularComplex, TriangulatedPresentation,
};

use document::*;

/// Failures, each tied to a process exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Read(String),
    Invariant(String),
    Twisted(String),
    Resolve(String),
    Write(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Read(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Twisted(_) => 4,
            CliError::Resolve(_) => 5,
            CliError::Write(_) => 6,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Read(m) => write!(f, "cannot read input: {m}"),
            CliError::Invariant(m) => write!(f, "internal error: {m}"),
            CliError::Twisted(m) => write!(f, "{m}"),
            CliError::Resolve(m) => write!(f, "resolution failed: {m}"),
            CliError::Write(m) => write!(f, "cannot write output: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

fn invariant(e: impl fmt::Display) -> CliError {
    CliError::Invariant(e.to_string())
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        invariant(e)
    }
}

impl From<PatternError> for CliError {
    fn from(e: PatternError) -> Self {
        invariant(e)
    }
}

impl From<SplitError> for CliError {
    fn from(e: SplitError) -> Self {
        invariant(e)
    }
}

impl From<CubingError> for CliError {
    fn from(e: CubingError) -> Self {
        match e {
            CubingError::TwistedTrack(_) => CliError::Twisted(e.to_string()),
            CubingError::ResolutionFailed { .. } | CubingError::NotAPattern(_) => CliError::Resolve(e.to_string()),
            CubingError::InvalidOrdering(_) | CubingError::AllZero | CubingError::DimensionMismatch { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => invariant(e),
        }
    }
}

/// Reads either input format. A file using `gens`/`rel` lines is structured;
/// anything else is the single-line text format.
pub fn parse_input(text: &str) -> Result<Presentation, CliError> {
    let structured = text.lines().any(|l| {
        let l = l.trim_start();
        l.starts_with("gens ") || l == "gens" || l.starts_with("rel ")
    });
    let p = if structured {
        parse_structured(text)?
    } else {
        let body: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join("\n");
        parse_presentation(&body)?
    };
    Ok(p)
}

pub fn read_input(path: &Path) -> Result<Presentation, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Read(format!("{}: {e}", path.display())))?;
    parse_input(&text)
}

pub fn default_jobname(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "job".to_string())
}

/// Everything the pipeline computed, kept alongside the document so that
/// the cubing command can reuse tracks.
pub struct Analysis {
    pub presentation: TriangulatedPresentation,
    pub complex: TriangularComplex,
    pub document: Document,
}

fn side_string(names: &[String], generator: usize, sign: i8) -> String {
    if sign < 0 {
        format!("-{}", names[generator])
    } else {
        names[generator].clone()
    }
}

pub fn analyze(p: &Presentation, jobname: &str, vertex_bound: Option<u32>) -> Result<Analysis, CliError> {
    let tp = triangulate(p);
    let c = build_complex(&tp);
    let sys = matching_system(&c);
    let basis = nullspace_basis(&sys)?;
    let basis = if basis.rank() > 0 { nonnegativize(&basis)? } else { basis };
    let names = &tp.extended_generators;
    let word = |w: &[trackline_core::Letter]| format_word(&p.generators, w);

    let mut tracks = Vec::new();
    for report in untwist_basis(&basis, &c)? {
        let vertex = match vertex_bound {
            Some(bound) => Some(
                match is_vertex_solution(&basis, &report.vector, bound)? {
                    VertexVerdict::Vertex => "vertex",
                    VertexVerdict::NotVertex => "not-vertex",
                    VertexVerdict::Inconclusive => "inconclusive",
                }
                .to_string(),
            ),
            None => None,
        };
        let mut components = Vec::new();
        for comp in &report.components {
            let s = classify_splitting(&comp.track, &c, &tp)?;
            if (s.kind == SplittingKind::Amalgam) != comp.separating {
                return Err(CliError::Invariant("splitting kind disagrees with separation".into()));
            }
            let splitting = SplittingDoc {
                kind: match s.kind {
                    SplittingKind::Amalgam => "amalgam",
                    SplittingKind::Hnn => "hnn",
                }
                .to_string(),
                edge_words: s.edge_words.iter().map(|w| word(w)).collect(),
                vertex_words: s.vertex_words.iter().map(|l| l.iter().map(|w| word(w)).collect()).collect(),
                stable_hom: s.stable_hom.as_ref().map(|h| {
                    h.iter()
                        .enumerate()
                        .map(|(g, &value)| HomEntry { generator: p.generators[g].clone(), value })
                        .collect()
                }),
                stable_letter: s.stable_letter.as_ref().map(|w| word(w)),
                trivial: s.trivial_side.is_some(),
                trivial_side: s.trivial_side,
            };
            components.push(ComponentDoc {
                vector: comp.vector.clone(),
                twisted: comp.twisted,
                track: comp.track.vector().to_vec(),
                separating: comp.separating,
                regions: comp.regions,
                splitting,
            });
        }
        tracks.push(TrackDoc { index: report.index, vector: report.vector.clone(), vertex, components });
    }

    let document = Document {
        format: FORMAT.to_string(),
        jobname: jobname.to_string(),
        presentation: PresentationDoc {
            generators: p.generators.clone(),
            relators: p.relators.iter().map(|r| word(r)).collect(),
        },
        complex: ComplexDoc {
            vertices: 1,
            edges: c.edge_count,
            faces: c.triangles.len(),
            generators: names.clone(),
            definitions: tp
                .definitions
                .iter()
                .enumerate()
                .map(|(i, d)| format!("{} = {}", names[p.generators.len() + i], format_word(names, d)))
                .collect(),
            triangles: c
                .triangles
                .iter()
                .map(|t| std::array::from_fn(|s| side_string(names, t[s].edge, t[s].orientation)))
                .collect(),
        },
        matching: MatchingDoc { rows: sys.rows(), width: sys.width, matrix: sys.matrix.clone() },
        basis: BasisDoc { rank: basis.rank(), width: basis.width, vectors: basis.vectors.clone() },
        vertex_bound,
        tracks,
        cubing: None,
    };
    Ok(Analysis { presentation: tp, complex: c, document })
}

/// Parses a comma-separated list of integers.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| CliError::Usage(format!("bad list entry '{x}'"))))
        .collect()
}

/// Reads an ordering file: lines `edge: t t t ...` naming an edge of the
/// complex and listing, from its initial vertex, which selected track
/// (by position in the track list) owns each point. Unlisted edges keep
/// the default ordering.
pub fn parse_ordering(text: &str, names: &[String], default: Vec<Vec<usize>>) -> Result<Vec<Vec<usize>>, CliError> {
    let mut out = default;
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (edge, rest) = line
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("ordering line without ':': {line}")))?;
        let e = names
            .iter()
            .position(|n| n == edge.trim())
            .ok_or_else(|| CliError::Usage(format!("unknown edge '{}' in ordering", edge.trim())))?;
        out[e] = rest
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| CliError::Usage(format!("bad track index '{t}' in ordering"))))
            .collect::<Result<_, _>>()?;
    }
    Ok(out)
}

/// Builds the cubing of the listed basis elements, followed by explicit
/// corner vectors, into the document.
pub fn cubing(
    a: &mut Analysis,
    indices: &[usize],
    vectors: &[Vec<i64>],
    coeffs: Option<Vec<i64>>,
    ordering: Option<&str>,
) -> Result<(), CliError> {
    let c = &a.complex;
    if indices.is_empty() && vectors.is_empty() {
        return Err(CliError::Usage("no tracks selected".into()));
    }
    let mut tracks = Vec::new();
    let mut labels = Vec::new();
    for &i in indices {
        labels.push(i.to_string());
        let t = a
            .document
            .tracks
            .get(i)
            .ok_or_else(|| CliError::Usage(format!("no basis element {i}")))?;
        match t.components.as_slice() {
            [comp] if !comp.twisted => tracks.push(Track::from_vector(&comp.vector, c)?),
            [_] => return Err(CliError::Twisted(format!("basis element {i} is twisted"))),
            _ => return Err(CliError::Twisted(format!("basis element {i} is not a single track"))),
        }
    }
    for (j, v) in vectors.iter().enumerate() {
        labels.push(format!("v{j}"));
        let sys = matching_system(c);
        if v.len() != c.corner_count() || v.iter().any(|&x| x < 0) || !sys.is_solution(v) {
            return Err(CliError::Usage(format!("vector {j} is not a non-negative solution of length {}", c.corner_count())));
        }
        let t = Track::from_vector(v, c).map_err(|_| CliError::Usage(format!("vector {j} is not connected")))?;
        if t.pattern.coorientation(c).is_none() {
            return Err(CliError::Twisted(format!("vector {j} is twisted")));
        }
        tracks.push(t);
    }
    if let Some(k) = &coeffs {
        if k.len() != tracks.len() {
            return Err(CliError::Usage(format!("{} coefficients for {} tracks", k.len(), tracks.len())));
        }
    }
    let order = default_ordering(&tracks, c);
    let order = match ordering {
        Some(text) => parse_ordering(text, &a.presentation.extended_generators, order)?,
        None => order,
    };
    let arr = build_arrangement_with(tracks, c, order)?;
    let d = build_dual_complex(&arr, c)?;
    let pattern = match &coeffs {
        Some(k) => {
            let sp = combination_pattern(&arr, k, &d)?;
            let mixed = k.iter().any(|&x| x > 0) && k.iter().any(|&x| x < 0);
            let res = if mixed { Some(resolve_mixed(&arr, k, c)?) } else { None };
            Some(PatternDoc {
                squares: sp.squares.iter().map(|s| [s.p, s.q, s.marked_crossings]).collect(),
                edge_counts: sp.edge_counts,
                resolution: res.as_ref().map(|r| r.vector.clone()),
                resolved_edge_counts: res.map(|r| r.edge_counts),
            })
        }
        None => None,
    };
    a.document.cubing = Some(CubingDoc {
        labels,
        vectors: arr.tracks.iter().map(|t| t.vector().to_vec()).collect(),
        orderings: arr.edge_orderings.clone(),
        vertices: d.vertices,
        edges: d
            .edges
            .iter()
            .map(|e| CubeEdgeDoc { track: e.track, positive: e.positive, negative: e.negative })
            .collect(),
        squares: d
            .squares
            .iter()
            .map(|s| {
                let x = arr.crossings[s.crossing];
                SquareDoc {
                    triangle: x.triangle,
                    arcs: [[x.arcs[0].0, x.arcs[0].1], [x.arcs[1].0, x.arcs[1].1]],
                    corners: s.corners,
                    sides: s.sides,
                    marked: s.marked,
                }
            })
            .collect(),
        euler: d.euler_characteristic(),
        coefficients: coeffs,
        pattern,
    });
    Ok(())
}

pub fn to_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Document, CliError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    if doc.format != FORMAT {
        return Err(CliError::Parse(format!("unsupported format '{}'", doc.format)));
    }
    Ok(doc)
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Write(format!("{}: {e}", path.display())))
}
