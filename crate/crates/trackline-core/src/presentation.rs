//! Finite presentations, their text formats, and triangulation into
//! 3-sided relators.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    /// `+1` or `-1`.
    pub sign: i8,
}

impl Letter {
    pub fn new(generator: usize, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter { generator, sign }
    }

    pub fn pos(generator: usize) -> Self {
        Letter { generator, sign: 1 }
    }

    pub fn neg(generator: usize) -> Self {
        Letter { generator, sign: -1 }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, sign: -self.sign }
    }
}

pub type Word = Vec<Letter>;

/// Free reduction by cancelling adjacent inverse pairs.
pub fn free_reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        match out.last() {
            Some(&top) if top == l.inverse() => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

pub fn inverse_word(word: &[Letter]) -> Word {
    word.iter().rev().map(|l| l.inverse()).collect()
}

pub fn is_freely_reduced(word: &[Letter]) -> bool {
    word.windows(2).all(|w| w[0] != w[1].inverse())
}

/// Renders a word in the `ab-a-b` convention. Names longer than one
/// character are separated by spaces so the output stays parseable.
pub fn format_word(names: &[String], word: &[Letter]) -> String {
    let single = names.iter().all(|n| n.chars().count() == 1);
    let mut s = String::new();
    for (i, l) in word.iter().enumerate() {
        if !single && i > 0 {
            s.push(' ');
        }
        if l.sign < 0 {
            s.push('-');
        }
        s.push_str(&names[l.generator]);
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    MissingColon,
    DuplicateGenerator(String),
    InvalidGeneratorName(String),
    UnknownGenerator(String),
    EmptyRelator(usize),
    MalformedToken(String),
    UnknownDirective(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::MissingColon => write!(f, "expected ':' between generators and relators"),
            ParseError::DuplicateGenerator(g) => write!(f, "duplicate generator '{g}'"),
            ParseError::InvalidGeneratorName(g) => write!(f, "invalid generator name '{g}'"),
            ParseError::UnknownGenerator(g) => write!(f, "unknown generator '{g}'"),
            ParseError::EmptyRelator(i) => write!(f, "relator {i} is empty"),
            ParseError::MalformedToken(t) => write!(f, "malformed relator token '{t}'"),
            ParseError::UnknownDirective(d) => write!(f, "unknown directive '{d}'"),
        }
    }
}

fn check_generators(names: &[String]) -> Result<(), ParseError> {
    let mut seen = BTreeSet::new();
    for n in names {
        if n.is_empty() || n.starts_with('-') || n.chars().any(|c| c.is_whitespace() || c == ':') {
            return Err(ParseError::InvalidGeneratorName(n.clone()));
        }
        if !seen.insert(n.as_str()) {
            return Err(ParseError::DuplicateGenerator(n.clone()));
        }
    }
    Ok(())
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, ParseError> {
        check_generators(&generators)?;
        for (i, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(ParseError::EmptyRelator(i));
            }
            for l in r {
                if l.generator >= generators.len() {
                    return Err(ParseError::UnknownGenerator(format!("#{}", l.generator)));
                }
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        format_word(&self.generators, w)
    }

    /// Prints in the single-character text format accepted by
    /// [`parse_presentation`].
    pub fn to_text(&self) -> String {
        let mut s = self.generators.join(" ");
        s.push_str(" :");
        for r in &self.relators {
            s.push(' ');
            s.push_str(&format_word(&self.generators, r));
        }
        s
    }

    /// Prints in the line-oriented structured format accepted by
    /// [`parse_structured`].
    pub fn to_structured(&self) -> String {
        let mut s = String::from("gens");
        for g in &self.generators {
            s.push(' ');
            s.push_str(g);
        }
        s.push('\n');
        for r in &self.relators {
            s.push_str("rel");
            for l in r {
                s.push(' ');
                if l.sign < 0 {
                    s.push('-');
                }
                s.push_str(&self.generators[l.generator]);
            }
            s.push('\n');
        }
        s
    }
}

/// Parses `a b c d : ab-a-b-b bc-b-c-c ...`: single-character generator
/// names, a colon, and relator tokens where `-` inverts the next letter.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let (head, tail) = text.split_once(':').ok_or(ParseError::MissingColon)?;
    let generators: Vec<String> = head.split_whitespace().map(|s| s.to_string()).collect();
    for g in &generators {
        if g.chars().count() != 1 || g == "-" {
            return Err(ParseError::InvalidGeneratorName(g.clone()));
        }
    }
    check_generators(&generators)?;
    let mut relators = Vec::new();
    for token in tail.split_whitespace() {
        let mut word = Vec::new();
        let mut chars = token.chars();
        while let Some(ch) = chars.next() {
            let (name, sign) = if ch == '-' {
                match chars.next() {
                    Some(n) if n != '-' => (n, -1),
                    _ => return Err(ParseError::MalformedToken(token.to_string())),
                }
            } else {
                (ch, 1)
            };
            let idx = generators
                .iter()
                .position(|g| g.chars().next() == Some(name))
                .ok_or_else(|| ParseError::UnknownGenerator(name.to_string()))?;
            word.push(Letter::new(idx, sign));
        }
        relators.push(word);
    }
    Ok(Presentation { generators, relators })
}

/// Parses the structured format, which allows multi-character names:
///
/// ```text
/// # comment
/// gens x y t
/// rel t x -t -y
/// ```
pub fn parse_structured(text: &str) -> Result<Presentation, ParseError> {
    let mut generators: Vec<String> = Vec::new();
    let mut raw: Vec<Vec<&str>> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("gens") => generators.extend(parts.map(|s| s.to_string())),
            Some("rel") => raw.push(parts.collect()),
            Some(other) => return Err(ParseError::UnknownDirective(other.to_string())),
            None => {}
        }
    }
    check_generators(&generators)?;
    let mut relators = Vec::new();
    for (i, toks) in raw.iter().enumerate() {
        if toks.is_empty() {
            return Err(ParseError::EmptyRelator(i));
        }
        let mut word = Vec::new();
        for t in toks {
            let (name, sign) = match t.strip_prefix('-') {
                Some("") => return Err(ParseError::MalformedToken(t.to_string())),
                Some(n) => (n, -1),
                None => (*t, 1),
            };
            let idx = generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| ParseError::UnknownGenerator(name.to_string()))?;
            word.push(Letter::new(idx, sign));
        }
        relators.push(word);
    }
    Ok(Presentation { generators, relators })
}

/// A presentation whose relators have all been cut into triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulatedPresentation {
    pub base: Presentation,
    /// Original generators followed by the fresh ones.
    pub extended_generators: Vec<String>,
    /// Defining word of each fresh generator in the extended alphabet,
    /// indexed from the first fresh generator.
    pub definitions: Vec<Word>,
    pub triangles: Vec<[Letter; 3]>,
    /// `(relator index, position within the relator's fan)` per triangle.
    pub origin: Vec<(usize, usize)>,
    /// Relators after padding.
    pub padded: Vec<Word>,
    expansions: Vec<Word>,
}

fn fresh_names(taken: &[String], count: usize) -> Vec<String> {
    let mut used: BTreeSet<String> = taken.iter().cloned().collect();
    let mut out = Vec::with_capacity(count);
    let mut letters = ('a'..='z').map(|c| c.to_string());
    let mut k = 1usize;
    while out.len() < count {
        let name = loop {
            match letters.next() {
                Some(n) if !used.contains(&n) => break n,
                Some(_) => continue,
                None => {
                    let n = format!("z{k}");
                    k += 1;
                    if !used.contains(&n) {
                        break n;
                    }
                }
            }
        };
        used.insert(name.clone());
        out.push(name);
    }
    out
}

/// Cuts every relator into a fan of triangles.
///
/// A relator `g1 ... gn` with `n >= 4` gets fresh generators with
/// `z1 = g1 g2` and `zi = z(i-1) g(i+1)`, and triangles
/// `(g1, g2, -z1)`, `(z(i-1), g(i+1), -zi)`, `(z(n-3), g(n-1), gn)`.
/// Relators shorter than 3 are padded with `g -g` for the first generator.
pub fn triangulate(p: &Presentation) -> TriangulatedPresentation {
    let ng = p.generators.len();
    let padded: Vec<Word> = p
        .relators
        .iter()
        .map(|r| {
            let mut w = r.clone();
            while w.len() < 3 {
                w.push(Letter::pos(0));
                w.push(Letter::neg(0));
            }
            w
        })
        .collect();
    let fresh_count: usize = padded.iter().map(|r| r.len() - 3).sum();
    let names = fresh_names(&p.generators, fresh_count);
    let mut definitions = Vec::with_capacity(fresh_count);
    let mut triangles = Vec::new();
    let mut origin = Vec::new();
    let mut next = ng;
    for (ri, r) in padded.iter().enumerate() {
        let n = r.len();
        if n == 3 {
            triangles.push([r[0], r[1], r[2]]);
            origin.push((ri, 0));
            continue;
        }
        let z0 = next;
        next += n - 3;
        for i in 0..n - 3 {
            let def = if i == 0 {
                vec![r[0], r[1]]
            } else {
                vec![Letter::pos(z0 + i - 1), r[i + 1]]
            };
            definitions.push(def);
        }
        triangles.push([r[0], r[1], Letter::neg(z0)]);
        origin.push((ri, 0));
        for i in 1..n - 3 {
            triangles.push([Letter::pos(z0 + i - 1), r[i + 1], Letter::neg(z0 + i)]);
            origin.push((ri, i));
        }
        triangles.push([Letter::pos(z0 + n - 4), r[n - 2], r[n - 1]]);
        origin.push((ri, n - 3));
    }
    let mut expansions: Vec<Word> = Vec::with_capacity(fresh_count);
    for def in &definitions {
        let mut w = Vec::new();
        for l in def {
            push_expanded(&mut w, *l, ng, &expansions);
        }
        expansions.push(free_reduce(&w));
    }
    let mut extended_generators = p.generators.clone();
    extended_generators.extend(names);
    TriangulatedPresentation {
        base: p.clone(),
        extended_generators,
        definitions,
        triangles,
        origin,
        padded,
        expansions,
    }
}

fn push_expanded(out: &mut Word, l: Letter, ng: usize, expansions: &[Word]) {
    if l.generator < ng {
        out.push(l);
    } else if l.sign > 0 {
        out.extend_from_slice(&expansions[l.generator - ng]);
    } else {
        out.extend(inverse_word(&expansions[l.generator - ng]));
    }
}

impl TriangulatedPresentation {
    pub fn generator_count(&self) -> usize {
        self.extended_generators.len()
    }

    pub fn original_count(&self) -> usize {
        self.base.generators.len()
    }

    /// Substitutes fresh generators by their definitions and freely reduces.
    pub fn expand(&self, word: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(word.len());
        for &l in word {
            push_expanded(&mut out, l, self.original_count(), &self.expansions);
        }
        free_reduce(&out)
    }

    /// The word over original generators that a fresh generator stands for.
    pub fn expansion(&self, generator: usize) -> Word {
        self.expand(&[Letter::pos(generator)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HIGMAN: &str = "a b c d : ab-a-b-b bc-b-c-c cd-c-d-d da-d-a-a";

    #[test]
    fn parses_higman() {
        let p = parse_presentation(HIGMAN).unwrap();
        assert_eq!(p.generators, ["a", "b", "c", "d"]);
        assert_eq!(p.relators.len(), 4);
        assert!(p.relators.iter().all(|r| r.len() == 5));
        assert_eq!(p.relators[0][2], Letter::neg(0));
    }

    #[test]
    fn parses_trefoil_and_free() {
        let p = parse_presentation("c d : ccc-d-d").unwrap();
        assert_eq!(
            p.relators[0],
            [Letter::pos(0), Letter::pos(0), Letter::pos(0), Letter::neg(1), Letter::neg(1)]
        );
        let f = parse_presentation("a : ").unwrap();
        assert_eq!(f.generators.len(), 1);
        assert!(f.relators.is_empty());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_presentation("a b : ab-c"), Err(ParseError::UnknownGenerator("c".into())));
        assert_eq!(parse_presentation("a a : aa"), Err(ParseError::DuplicateGenerator("a".into())));
        assert_eq!(parse_presentation("a b : ab-"), Err(ParseError::MalformedToken("ab-".into())));
        assert_eq!(parse_presentation("a b"), Err(ParseError::MissingColon));
        assert!(matches!(parse_presentation("ab : a"), Err(ParseError::InvalidGeneratorName(_))));
        assert_eq!(parse_structured("gens x\nrel\n"), Err(ParseError::EmptyRelator(0)));
    }

    #[test]
    fn structured_round_trip() {
        let p = parse_structured("gens x1 y\nrel x1 y -x1 -y\n").unwrap();
        assert_eq!(p.relators[0].len(), 4);
        assert_eq!(parse_structured(&p.to_structured()).unwrap(), p);
        assert_eq!(p.format_word(&p.relators[0]), "x1 y -x1 -y");
    }

    #[test]
    fn trefoil_triangulation() {
        let p = parse_presentation("c d : ccc-d-d").unwrap();
        let t = triangulate(&p);
        assert_eq!(t.extended_generators, ["c", "d", "a", "b"]);
        let (c, d, z1, z2) = (0, 1, 2, 3);
        assert_eq!(
            t.triangles,
            vec![
                [Letter::pos(c), Letter::pos(c), Letter::neg(z1)],
                [Letter::pos(z1), Letter::pos(c), Letter::neg(z2)],
                [Letter::pos(z2), Letter::neg(d), Letter::neg(d)],
            ]
        );
        assert_eq!(t.expansion(z1), vec![Letter::pos(c); 2]);
        assert_eq!(t.expansion(z2), vec![Letter::pos(c); 3]);
    }

    #[test]
    fn higman_triangulation_counts() {
        let t = triangulate(&parse_presentation(HIGMAN).unwrap());
        assert_eq!(t.generator_count(), 12);
        assert_eq!(t.triangles.len(), 12);
        assert_eq!(t.extended_generators[4..8], ["e", "f", "g", "h"]);
    }

    #[test]
    fn padding_short_relators() {
        let p = parse_presentation("a b : b -a-a").unwrap();
        let t = triangulate(&p);
        assert_eq!(t.padded[0], vec![Letter::pos(1), Letter::pos(0), Letter::neg(0)]);
        assert_eq!(t.padded[1].len(), 4);
        assert_eq!(t.triangles.len(), 1 + 2);
    }

    #[test]
    fn fresh_names_escalate() {
        let gens: Vec<String> = ('a'..='z').map(|c| c.to_string()).collect();
        assert_eq!(fresh_names(&gens, 2), ["z1", "z2"]);
        assert_eq!(fresh_names(&["z1".to_string()], 0), Vec::<String>::new());
    }

    #[test]
    fn free_reduction() {
        let w = [Letter::pos(0), Letter::pos(1), Letter::neg(1), Letter::neg(0), Letter::pos(2)];
        assert_eq!(free_reduce(&w), vec![Letter::pos(2)]);
        assert!(is_freely_reduced(&free_reduce(&w)));
    }
}
