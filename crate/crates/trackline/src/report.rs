//! Plain-text reports in the layout of the original track program's
//! transcripts, rendered from a [`Document`].

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::document::*;

fn vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Words in order, without empty words or repeats.
fn distinct(words: &[String]) -> Vec<&str> {
    let mut seen = BTreeSet::new();
    words
        .iter()
        .map(|w| w.as_str())
        .filter(|w| !w.is_empty() && seen.insert(*w))
        .collect()
}

fn word_list(out: &mut String, words: &[String]) {
    let ws = distinct(words);
    if ws.is_empty() {
        out.push_str("1\n");
    }
    for w in ws {
        out.push_str(w);
        out.push('\n');
    }
}

fn label(t: &TrackDoc, j: usize) -> String {
    if t.components.len() == 1 {
        format!("track basis element {}", t.index)
    } else {
        format!("track basis element {} component {}", t.index, j)
    }
}

fn vertex_block(out: &mut String, ordinal: &str, words: &[String], whole: bool) {
    if whole {
        let _ = writeln!(out, "{ordinal} vertex stabilizer.\nG");
    } else {
        let _ = writeln!(out, "{ordinal} vertex stabilizer generators.");
        word_list(out, words);
    }
}

pub fn render(doc: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Group presentation:\n");
    let _ = writeln!(
        out,
        "  {} : {}\n",
        doc.presentation.generators.join("  "),
        doc.presentation.relators.join(" ")
    );
    let _ = writeln!(out, "Jobname: {}\n", doc.jobname);
    let _ = writeln!(
        out,
        "Triangular 2-complex comprises: {} 0-cells, {} 1-cells and {} 2-cells.\n",
        doc.complex.vertices, doc.complex.edges, doc.complex.faces
    );
    if doc.basis.rank == 0 {
        let _ = writeln!(out, "The solution space has rank 0 and gives no tracks.");
        if let Some(cub) = &doc.cubing {
            render_cubing(&mut out, cub);
        }
        return out;
    }
    let _ = writeln!(out, "Track basis (size {} x {})\n", doc.basis.rank, doc.basis.width);
    for v in &doc.basis.vectors {
        for x in v {
            let _ = write!(out, "{x:>4}");
        }
        out.push_str("\n\n");
    }
    out.push('\n');

    for t in &doc.tracks {
        let _ = writeln!(out, "check track basis element {}", t.index);
        if t.components.len() > 1 {
            let _ = writeln!(out, "The pattern {}  has {} components", vector(&t.vector), t.components.len());
        }
        for comp in &t.components {
            let sep = if comp.separating { "separating" } else { "non-separating" };
            if comp.twisted {
                let _ = writeln!(
                    out,
                    "The track {}  is twisted; its double {}  is untwisted and {sep}",
                    vector(&comp.vector),
                    vector(&comp.track)
                );
            } else {
                let _ = writeln!(out, "The track {}  is untwisted and {sep}", vector(&comp.vector));
            }
        }
        if let (Some(v), Some(bound)) = (&t.vertex, doc.vertex_bound) {
            let verdict = match v.as_str() {
                "vertex" => "a vertex solution",
                "not-vertex" => "not a vertex solution",
                _ => "inconclusive",
            };
            let _ = writeln!(out, "Vertex solution test (bound {bound}): {verdict}");
        }
        out.push('\n');
    }

    let separating: Vec<(&TrackDoc, usize, &ComponentDoc)> = doc
        .tracks
        .iter()
        .flat_map(|t| t.components.iter().enumerate().map(move |(j, c)| (t, j, c)))
        .filter(|(_, _, c)| c.separating)
        .collect();
    let others: Vec<(&TrackDoc, usize, &ComponentDoc)> = doc
        .tracks
        .iter()
        .flat_map(|t| t.components.iter().enumerate().map(move |(j, c)| (t, j, c)))
        .filter(|(_, _, c)| !c.separating)
        .collect();

    let _ = writeln!(out, "\nprune list of {} separating tracks:\n", separating.len());
    for (t, j, comp) in separating {
        let s = &comp.splitting;
        let _ = writeln!(out, "\n{}\n", label(t, j));
        let _ = writeln!(out, "The separating track\n\n{}\n", vector(&comp.track));
        if s.trivial {
            let _ = writeln!(out, "Gives a trivial decomposition.\n");
        }
        let _ = writeln!(out, "Edge stabilizer generators.");
        word_list(&mut out, &s.edge_words);
        out.push_str("\n\n");
        for (side, ordinal) in ["First", "Second"].iter().enumerate() {
            let words = s.vertex_words.get(side).map(|w| w.as_slice()).unwrap_or(&[]);
            vertex_block(&mut out, ordinal, words, s.trivial_side == Some(side));
            out.push_str("\n\n");
        }
    }

    if !others.is_empty() {
        let _ = writeln!(out, "\nlist of {} non-separating tracks:\n", others.len());
        for (t, j, comp) in others {
            let s = &comp.splitting;
            let _ = writeln!(out, "\n{}\n", label(t, j));
            let _ = writeln!(out, "The non-separating track\n\n{}\n", vector(&comp.track));
            let _ = writeln!(out, "Edge stabilizer generators.");
            word_list(&mut out, &s.edge_words);
            out.push_str("\n\n");
            let words = s.vertex_words.first().map(|w| w.as_slice()).unwrap_or(&[]);
            vertex_block(&mut out, "The", words, false);
            out.push_str("\n\n");
            if let Some(w) = &s.stable_letter {
                let _ = writeln!(out, "Stable letter.\n{}\n", if w.is_empty() { "1" } else { w });
            }
            if let Some(h) = &s.stable_hom {
                let parts: Vec<String> = h.iter().map(|e| format!("{} -> {}", e.generator, e.value)).collect();
                let _ = writeln!(out, "Homomorphism to the integers.\n{}\n", parts.join(", "));
            }
        }
    }

    if let Some(cub) = &doc.cubing {
        render_cubing(&mut out, cub);
    }
    out
}

/// Cubing dump alone, as printed by the cubing command.
pub fn render_cubing_only(doc: &Document) -> String {
    let mut out = format!("Jobname: {}\n", doc.jobname);
    if let Some(cub) = &doc.cubing {
        render_cubing(&mut out, cub);
    }
    out
}

fn render_cubing(out: &mut String, cub: &CubingDoc) {
    let _ = writeln!(out, "\nDual square complex of tracks {}\n", cub.labels.join(", "));
    for (l, v) in cub.labels.iter().zip(&cub.vectors) {
        let _ = writeln!(out, "track {l} {}", vector(v));
    }
    out.push('\n');
    let _ = writeln!(out, "Vertices: {}", cub.vertices);
    let _ = writeln!(out, "Edges: {}", cub.edges.len());
    for (i, e) in cub.edges.iter().enumerate() {
        let _ = writeln!(
            out,
            "  edge {i}: track {}, positive side {}, negative side {}",
            cub.labels[e.track], e.positive, e.negative
        );
    }
    let _ = writeln!(out, "Squares: {}", cub.squares.len());
    for (i, s) in cub.squares.iter().enumerate() {
        let _ = writeln!(
            out,
            "  square {i}: triangle {}, arcs {}:{} and {}:{}, corners {:?}, sides {:?}, marked corner {}",
            s.triangle, cub.labels[s.arcs[0][0]], s.arcs[0][1], cub.labels[s.arcs[1][0]], s.arcs[1][1], s.corners, s.sides, s.marked
        );
    }
    let _ = writeln!(out, "Euler characteristic: {}", cub.euler);
    if let (Some(k), Some(p)) = (&cub.coefficients, &cub.pattern) {
        let ks: Vec<String> = k.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "\nPattern for coefficients ({})", ks.join(", "));
        for (i, s) in p.squares.iter().enumerate() {
            let _ = writeln!(out, "  square {i}: p {}, q {}, marked-corner crossings {}", s[0], s[1], s[2]);
        }
        let counts: Vec<String> = p.edge_counts.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "  edge counts ({})", counts.join(", "));
        if let (Some(v), Some(m)) = (&p.resolution, &p.resolved_edge_counts) {
            let _ = writeln!(out, "Resolved pattern {}", vector(v));
            let _ = writeln!(out, "  points per 1-cell {}", vector(m));
        }
    }
}
