//! Diagnostic exports: Graphviz DOT, an SVG face layout, and the spanned
//! pseudocomplex as JSON.
//!
//! Edge colours map to line styles in both graphical formats:
//! colour 0 = solid, 1 = dashed, 2 = dotted, 3 = bold.
//!
//! None of these formats round-trips; they exist for inspection only.  The
//! pseudocomplex JSON in particular mirrors internal structure and is not a
//! stable interchange format.

use serde::Serialize;
use std::fmt::Write as _;

use crate::complex::{Generation, Pseudocomplex};
use crate::embedding::{embed, CyclicOrder};
use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, Residue};

/// Largest graph the SVG layout accepts; bigger graphs produce unreadable
/// sheets of polygons and are refused.
pub const SVG_VERTEX_LIMIT: usize = 200;

const STYLE_NAMES: [&str; 4] = ["solid", "dashed", "dotted", "bold"];

/// The faces of the regular embedding induced by a cyclic colour order:
/// bicoloured cycles, plus the boundary walks of a non-regular graph (paths
/// in the two pairs involving colour 3).
fn embedding_faces(graph: &ColouredGraph, order: &CyclicOrder) -> Vec<Residue> {
    let mut faces = Vec::new();
    for (a, b) in order.consecutive_pairs() {
        faces.extend(graph.residues(&[a, b]));
    }
    faces
}

/// Renders a graph as Graphviz DOT.
///
/// Edges carry the colour-to-style mapping above plus a `colour` comment.
/// With an embedding order the faces of the induced regular embedding are
/// appended as `cluster` subgraphs listing their member vertices (a vertex
/// on several faces renders inside the first cluster naming it — DOT cannot
/// tile a closed surface — so the clusters are a face index, not a drawing).
pub fn graph_to_dot(graph: &ColouredGraph, order: Option<&CyclicOrder>) -> String {
    let mut out = String::new();
    out.push_str("graph gem {\n");
    if let Some(name) = graph.name() {
        let _ = writeln!(out, "  label=\"{}\";", name.replace('"', "'"));
    }
    out.push_str("  // colour styles: 0 solid, 1 dashed, 2 dotted, 3 bold\n");
    out.push_str("  node [shape=circle, fontsize=10];\n");
    for (u, v, c) in graph.edges() {
        let _ = writeln!(
            out,
            "  {u} -- {v} [style={}];  // colour {c}",
            STYLE_NAMES[c.index()]
        );
    }
    if let Some(order) = order {
        let _ = writeln!(out, "  // faces of the regular embedding {order}");
        for (i, face) in embedding_faces(graph, order).iter().enumerate() {
            let kind = if face.is_cycle { "cycle" } else { "walk" };
            let members = face
                .vertices
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(
                out,
                "  subgraph cluster_face_{i} {{ label=\"face {i} {{{},{}}} {kind}\"; {members}; }}",
                face.colours[0], face.colours[1]
            );
        }
    }
    out.push_str("}\n");
    out
}

/// Renders the face layout of a regular embedding as SVG: every face drawn
/// as a labelled polygon (boundary walks of non-regular graphs as open
/// polylines), faces arranged in a grid.
///
/// Deterministic for a given graph and order.  Refused above
/// [`SVG_VERTEX_LIMIT`] vertices.
pub fn graph_to_svg(graph: &ColouredGraph, order: &CyclicOrder) -> Result<String> {
    if graph.vertex_count() > SVG_VERTEX_LIMIT {
        return Err(Error::precondition(format!(
            "SVG layout is a small-graph diagnostic: {} vertices exceeds the limit of {}",
            graph.vertex_count(),
            SVG_VERTEX_LIMIT
        )));
    }
    let embedding = embed(graph, order)?;
    let faces = embedding_faces(graph, order);
    let columns = (faces.len() as f64).sqrt().ceil() as usize;
    let columns = columns.max(1);
    let rows = faces.len().div_ceil(columns);
    let cell = 150.0;
    let radius = 52.0;
    let width = columns as f64 * cell;
    let height = rows as f64 * cell + 30.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">"
    );
    let title = match graph.name() {
        Some(name) => format!("{name}: "),
        None => String::new(),
    };
    let _ = writeln!(
        out,
        "  <text x=\"8\" y=\"18\" font-size=\"13\">{title}faces of the embedding {order} \
         into {}</text>",
        embedding.surface
    );
    for (i, face) in faces.iter().enumerate() {
        let cx = (i % columns) as f64 * cell + cell / 2.0;
        let cy = (i / columns) as f64 * cell + cell / 2.0 + 30.0;
        let k = face.vertices.len();
        let corner = |j: usize| -> (f64, f64) {
            let angle = std::f64::consts::TAU * j as f64 / k.max(1) as f64
                - std::f64::consts::FRAC_PI_2;
            (cx + radius * angle.cos(), cy + radius * angle.sin())
        };
        // Sides alternate the two face colours; a cycle of length k has k
        // sides, a boundary walk k−1.
        let sides = if face.is_cycle { k } else { k.saturating_sub(1) };
        for j in 0..sides {
            let (x1, y1) = corner(j);
            let (x2, y2) = corner((j + 1) % k);
            let u = face.vertices[j];
            let colour = side_colour(graph, face, j);
            let (dash, width) = match colour.value() {
                0 => ("", 1.4),
                1 => (" stroke-dasharray=\"7 4\"", 1.4),
                2 => (" stroke-dasharray=\"1.5 3.5\"", 1.4),
                _ => ("", 3.0),
            };
            let _ = writeln!(
                out,
                "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" \
                 stroke=\"black\" stroke-width=\"{width}\"{dash}><title>colour {colour} \
                 from {u}</title></line>"
            );
        }
        for (j, &v) in face.vertices.iter().enumerate() {
            let (x, y) = corner(j);
            let _ = writeln!(
                out,
                "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2.6\" fill=\"black\"/>"
            );
            let _ = writeln!(
                out,
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"9\">{v}</text>",
                x + 4.0,
                y - 4.0
            );
        }
        let kind = if face.is_cycle { "" } else { " (boundary walk)" };
        let _ = writeln!(
            out,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" text-anchor=\"middle\">f{i} \
             {{{},{}}}{kind}</text>",
            cx,
            cy + radius + 16.0,
            face.colours[0],
            face.colours[1]
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// The colour of the side leaving `face.vertices[j]` towards the next face
/// vertex.
fn side_colour(graph: &ColouredGraph, face: &Residue, j: usize) -> Colour {
    let u = face.vertices[j];
    let v = face.vertices[(j + 1) % face.vertices.len()];
    for &c in &face.colours {
        if graph.partner(u, c) == Some(v) {
            return c;
        }
    }
    // Unreachable for residues in traversal order; fall back defensively.
    face.colours[0]
}

#[derive(Serialize)]
struct ComplexFile {
    format: &'static str,
    tetrahedra: Vec<TetEntry>,
    gluings: Vec<[Option<usize>; 4]>,
}

#[derive(Serialize)]
struct TetEntry {
    source: usize,
    generations: [Generation; 4],
}

/// Dumps the pseudocomplex spanned by a graph as `complex-v1` JSON —
/// debugging output mirroring internal structure, not a stable format.
pub fn complex_to_json(complex: &Pseudocomplex) -> String {
    let n = complex.tetrahedron_count();
    let file = ComplexFile {
        format: "complex-v1",
        tetrahedra: (0..n)
            .map(|t| TetEntry {
                source: complex.source(t),
                generations: complex.generations(t),
            })
            .collect(),
        gluings: (0..n)
            .map(|t| std::array::from_fn(|c| complex.gluing(t, Colour::ALL[c])))
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("complex file serializes");
    out.push('\n');
    out
}
