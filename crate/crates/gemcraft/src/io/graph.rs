//! Graph serialization: the `gem-v1` JSON format and the compact text format.
//!
//! # `gem-v1` JSON
//!
//! ```json
//! {"format": "gem-v1", "vertices": 8, "edges": [[0, 1, 0], [2, 3, 0], ...]}
//! ```
//!
//! Each edge is a `[u, v, c]` triple with 0-based vertex ids and a colour
//! `c ∈ {0,1,2,3}`.  Every `(vertex, colour)` slot may be used at most once;
//! colour 3 may be missing at some vertices (boundary vertices), the other
//! colours must cover every vertex.  An optional `"name"` field carries
//! human-readable provenance.  The loader rejects malformed files with
//! positional error messages (JSON position for syntax errors, edge index
//! for semantic ones).
//!
//! # Compact text
//!
//! One header line `gem <n>`, then one line per colour giving the colour's
//! vertex involution in cycle notation:
//!
//! ```text
//! gem 4
//! 0: (0 1)(2 3)
//! 1: (0 2)(1 3)
//! 2: (0 3)(1 2)
//! 3: (0 1)(2 -)(3 -)
//! ```
//!
//! Colour lines appear in ascending colour order.  On the colour-3 line a
//! vertex without a colour-3 edge appears as a `(v -)` entry marking the
//! missing edge; on colours 0–2 every vertex must be matched.  Lines starting
//! with `#` are comments; the writer stores the graph name as `# name: ...`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph};

/// On-disk shape of a `gem-v1` file.
#[derive(Serialize, Deserialize)]
struct GemFile {
    format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    vertices: usize,
    edges: Vec<(usize, usize, u8)>,
}

/// Serializes a graph as `gem-v1` JSON (pretty-printed, trailing newline).
///
/// The edge list is emitted sorted by colour and then by lower endpoint, so
/// equal graphs produce byte-identical files.
pub fn graph_to_json(graph: &ColouredGraph) -> String {
    let file = GemFile {
        format: "gem-v1".to_string(),
        name: graph.name().map(str::to_string),
        vertices: graph.vertex_count(),
        edges: graph
            .edges()
            .into_iter()
            .map(|(u, v, c)| (u, v, c.value()))
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("gem file serializes");
    out.push('\n');
    out
}

/// Parses a `gem-v1` JSON document into a validated graph.
pub fn graph_from_json(text: &str) -> Result<ColouredGraph> {
    let file: GemFile = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("gem-v1 JSON: {e}")))?;
    if file.format != "gem-v1" {
        return Err(Error::parse(format!(
            "unsupported format {:?}, expected \"gem-v1\"",
            file.format
        )));
    }
    for (pos, &(u, v, c)) in file.edges.iter().enumerate() {
        if c > 3 {
            return Err(Error::parse(format!(
                "edge #{pos} [{u}, {v}, {c}]: colour {c} outside 0..=3"
            )));
        }
        if u >= file.vertices || v >= file.vertices {
            return Err(Error::parse(format!(
                "edge #{pos} [{u}, {v}, {c}]: vertex id exceeds \"vertices\": {}",
                file.vertices
            )));
        }
        if u == v {
            return Err(Error::parse(format!(
                "edge #{pos} [{u}, {v}, {c}]: loops are not allowed"
            )));
        }
    }
    let graph = ColouredGraph::new(file.vertices, &file.edges)?;
    Ok(match file.name {
        Some(name) => graph.with_name(name),
        None => graph,
    })
}

/// Serializes a graph in the compact text format.
pub fn graph_to_text(graph: &ColouredGraph) -> String {
    let n = graph.vertex_count();
    let mut out = String::new();
    if let Some(name) = graph.name() {
        out.push_str(&format!("# name: {name}\n"));
    }
    out.push_str(&format!("gem {n}\n"));
    for c in Colour::ALL {
        out.push_str(&format!("{c}:"));
        for u in 0..n {
            match graph.partner(u, c) {
                Some(v) if v > u => out.push_str(&format!(" ({u} {v})")),
                Some(_) => {}
                None => out.push_str(&format!(" ({u} -)")),
            }
        }
        out.push('\n');
    }
    out
}

/// Parses the compact text format into a validated graph.
pub fn graph_from_text(text: &str) -> Result<ColouredGraph> {
    let mut name = None;
    let mut vertices: Option<usize> = None;
    let mut edges: Vec<(usize, usize, u8)> = Vec::new();
    let mut seen_colours: Vec<u8> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(n) = comment.trim().strip_prefix("name:") {
                name = Some(n.trim().to_string());
            }
            continue;
        }
        if let Some(count) = line.strip_prefix("gem") {
            if vertices.is_some() {
                return Err(Error::parse(format!(
                    "line {lineno}: repeated \"gem\" header"
                )));
            }
            vertices = Some(count.trim().parse().map_err(|_| {
                Error::parse(format!("line {lineno}: bad vertex count {:?}", count.trim()))
            })?);
            continue;
        }
        let n = vertices.ok_or_else(|| {
            Error::parse(format!("line {lineno}: expected \"gem <n>\" header first"))
        })?;
        let (colour_part, cycles) = line.split_once(':').ok_or_else(|| {
            Error::parse(format!("line {lineno}: expected \"<colour>: (u v)...\""))
        })?;
        let colour: u8 = colour_part.trim().parse().map_err(|_| {
            Error::parse(format!(
                "line {lineno}: bad colour label {:?}",
                colour_part.trim()
            ))
        })?;
        let expected = seen_colours.len() as u8;
        if colour != expected {
            return Err(Error::parse(format!(
                "line {lineno}: expected colour {expected} next, found {colour}"
            )));
        }
        seen_colours.push(colour);
        let mut matched = vec![false; n];
        for cycle in parse_cycles(cycles, lineno)? {
            let (u, v) = cycle;
            if u >= n {
                return Err(Error::parse(format!(
                    "line {lineno}: vertex {u} exceeds gem size {n}"
                )));
            }
            for x in [Some(u), v].into_iter().flatten() {
                if x >= n {
                    return Err(Error::parse(format!(
                        "line {lineno}: vertex {x} exceeds gem size {n}"
                    )));
                }
                if matched[x] {
                    return Err(Error::parse(format!(
                        "line {lineno}: vertex {x} appears twice on the colour-{colour} line"
                    )));
                }
                matched[x] = true;
            }
            match v {
                Some(v) => edges.push((u.min(v), u.max(v), colour)),
                None if colour == 3 => {}
                None => {
                    return Err(Error::parse(format!(
                        "line {lineno}: \"-\" entries mark missing colour-3 edges only"
                    )));
                }
            }
        }
        if let Some(u) = matched.iter().position(|&m| !m) {
            return Err(Error::parse(format!(
                "line {lineno}: vertex {u} missing from the colour-{colour} line"
            )));
        }
    }
    let n = vertices.ok_or_else(|| Error::parse("missing \"gem <n>\" header"))?;
    if seen_colours.len() != 4 {
        return Err(Error::parse(format!(
            "expected 4 colour lines, found {}",
            seen_colours.len()
        )));
    }
    let graph = ColouredGraph::new(n, &edges)?;
    Ok(match name {
        Some(name) => graph.with_name(name),
        None => graph,
    })
}

/// Parses `(u v)(w x)(y -)` cycle lists; `None` partner marks a `-` entry.
fn parse_cycles(text: &str, lineno: usize) -> Result<Vec<(usize, Option<usize>)>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| {
            Error::parse(format!("line {lineno}: expected '(' at {rest:?}"))
        })?;
        let (inside, tail) = body.split_once(')').ok_or_else(|| {
            Error::parse(format!("line {lineno}: unclosed '(' at {rest:?}"))
        })?;
        let parts: Vec<&str> = inside.split_whitespace().collect();
        let [u_str, v_str] = parts[..] else {
            return Err(Error::parse(format!(
                "line {lineno}: cycle ({inside}) must have exactly two entries"
            )));
        };
        let u: usize = u_str.parse().map_err(|_| {
            Error::parse(format!("line {lineno}: bad vertex {u_str:?}"))
        })?;
        let v = if v_str == "-" {
            None
        } else {
            Some(v_str.parse().map_err(|_| {
                Error::parse(format!("line {lineno}: bad vertex {v_str:?}"))
            })?)
        };
        if v == Some(u) {
            return Err(Error::parse(format!(
                "line {lineno}: cycle ({inside}) pairs vertex {u} with itself"
            )));
        }
        out.push((u, v));
        rest = tail.trim_start();
    }
    Ok(out)
}

/// Loads a graph from either supported format, sniffing JSON by the leading
/// `{`.
pub fn load_graph(text: &str) -> Result<ColouredGraph> {
    if text.trim_start().starts_with('{') {
        graph_from_json(text)
    } else {
        graph_from_text(text)
    }
}
