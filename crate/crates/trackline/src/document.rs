//! The structured analysis document. Reports are rendered from it, so an
//! exported document re-renders to the same bytes.

use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "trackline/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub format: String,
    pub jobname: String,
    pub presentation: PresentationDoc,
    pub complex: ComplexDoc,
    pub matching: MatchingDoc,
    pub basis: BasisDoc,
    /// Bound used for the vertex-solution test, when one was requested.
    pub vertex_bound: Option<u32>,
    pub tracks: Vec<TrackDoc>,
    pub cubing: Option<CubingDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    /// Original generators followed by the ones added by triangulation.
    pub generators: Vec<String>,
    /// Definitions of the added generators, such as `e = ab`.
    pub definitions: Vec<String>,
    /// Each triangle as its three sides, `-x` for a reversed side.
    pub triangles: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingDoc {
    pub rows: usize,
    pub width: usize,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub rank: usize,
    pub width: usize,
    pub vectors: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackDoc {
    pub index: usize,
    pub vector: Vec<i64>,
    /// `vertex`, `not-vertex` or `inconclusive`.
    pub vertex: Option<String>,
    pub components: Vec<ComponentDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub vector: Vec<i64>,
    pub twisted: bool,
    /// The untwisted track used for the splitting: the component or its double.
    pub track: Vec<i64>,
    pub separating: bool,
    pub regions: usize,
    pub splitting: SplittingDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomEntry {
    pub generator: String,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingDoc {
    /// `amalgam` or `hnn`.
    pub kind: String,
    pub edge_words: Vec<String>,
    pub vertex_words: Vec<Vec<String>>,
    pub stable_hom: Option<Vec<HomEntry>>,
    pub stable_letter: Option<String>,
    pub trivial: bool,
    pub trivial_side: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubingDoc {
    /// Basis index, or `vN` for the N-th explicit vector, per track.
    pub labels: Vec<String>,
    pub vectors: Vec<Vec<i64>>,
    pub orderings: Vec<Vec<usize>>,
    pub vertices: usize,
    pub edges: Vec<CubeEdgeDoc>,
    pub squares: Vec<SquareDoc>,
    pub euler: i64,
    pub coefficients: Option<Vec<i64>>,
    pub pattern: Option<PatternDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeEdgeDoc {
    pub track: usize,
    pub positive: usize,
    pub negative: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareDoc {
    pub triangle: usize,
    /// `[track, arc]` for the two crossing arcs.
    pub arcs: [[usize; 2]; 2],
    pub corners: [usize; 4],
    pub sides: [usize; 4],
    pub marked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternDoc {
    /// `[p, q, marked-corner crossings]` per square.
    pub squares: Vec<[u64; 3]>,
    pub edge_counts: Vec<u64>,
    /// Normal pattern left after cancelling mixed-sign copies.
    pub resolution: Option<Vec<i64>>,
    pub resolved_edge_counts: Option<Vec<i64>>,
}
