//! Heegaard diagram serialization: the `hdiag-v1` JSON format.
//!
//! ```json
//! {
//!   "format": "hdiag-v1",
//!   "genus": 2,
//!   "orientable": true,
//!   "curves": [{"system": "V", "crossings": [0, 1, 2]}, ...],
//!   "rotations": [[[0, 0], [7, 1], [2, 1], [8, 0]], ...],
//!   "edge_flips": [false, ...],
//!   "planar": {...}
//! }
//! ```
//!
//! The format describes a diagram whose map consists solely of 4-valent
//! curve crossings.  Crossings are numbered `0..N`; `rotations[n]` lists the
//! four arc-ends around crossing `n` in counterclockwise order.  Arcs are
//! numbered globally by concatenating the curves' arc runs in file order:
//! a curve visiting crossings `[c₀, ..., c_{L−1}]` contributes `L` arcs, its
//! `j`-th arc running from `c_j` (end 0) to `c_{(j+1) mod L}` (end 1).  A
//! curve with an empty crossing list is a crossing-free circle; it has no
//! arcs and is recorded next to the map rather than in it.
//!
//! `edge_flips` (optional, default all-false) marks arcs whose traversal
//! reverses local orientation, allowing non-orientable diagrams.  `planar`
//! (optional) carries the planar presentation required by the doubling
//! construction.  `genus`/`orientable` declare the expected closed surface;
//! loading fails if the rotations assemble to anything else.  Diagrams whose
//! maps carry capped-boundary structure (star vertices, seam edges) are
//! internal to complexity computations and are not representable here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heegaard::{
    Curve, EdgeKind, HeegaardDiagram, NodeKind, PlanarPresentation, SurfaceMap, System,
};
use crate::surface::SurfaceType;

/// On-disk shape of an `hdiag-v1` file.
#[derive(Serialize, Deserialize)]
struct DiagramFile {
    format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    genus: u32,
    orientable: bool,
    curves: Vec<CurveEntry>,
    rotations: Vec<Vec<(usize, u8)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edge_flips: Option<Vec<bool>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    planar: Option<PlanarPresentation>,
}

#[derive(Serialize, Deserialize)]
struct CurveEntry {
    system: System,
    crossings: Vec<usize>,
}

/// Serializes a diagram as `hdiag-v1` JSON (pretty-printed, trailing
/// newline).
///
/// Fails with a precondition error when the map carries star vertices or
/// seam edges, which the format cannot express.
pub fn diagram_to_json(diagram: &HeegaardDiagram) -> Result<String> {
    let map = &diagram.map;
    for (n, node) in map.nodes().iter().enumerate() {
        if !matches!(node.kind, NodeKind::Crossing { .. }) {
            return Err(Error::precondition(format!(
                "map node {n} is not a curve crossing; diagrams with capped-boundary \
                 structure are not representable in hdiag-v1"
            )));
        }
        if node.rotation.len() != 4 {
            return Err(Error::precondition(format!(
                "map node {n} has valence {}, expected 4",
                node.rotation.len()
            )));
        }
    }
    // Global arc numbering: curves in order, each curve's arcs in traversal
    // order.  `file_end 0` sits at the arc's from-crossing, which may be the
    // map edge's end 1 when the constructor happened to build it reversed.
    let mut file_id = vec![usize::MAX; map.edge_count()];
    let mut reversed = vec![false; map.edge_count()];
    let mut next = 0usize;
    for curve in &diagram.curves {
        for (j, &arc) in curve.arcs.iter().enumerate() {
            file_id[arc] = next;
            next += 1;
            let from = curve.nodes[j];
            let ends = map.edges()[arc].ends;
            reversed[arc] = ends[0].0 != from;
        }
    }
    if let Some(seam) = file_id.iter().position(|&id| id == usize::MAX) {
        return Err(Error::precondition(format!(
            "map edge {seam} belongs to no curve; diagrams with seam edges are not \
             representable in hdiag-v1"
        )));
    }
    let mut flips = vec![false; map.edge_count()];
    let rotations: Vec<Vec<(usize, u8)>> = map
        .nodes()
        .iter()
        .map(|node| {
            node.rotation
                .iter()
                .map(|&(edge, end)| {
                    let end = if reversed[edge] { 1 - end } else { end };
                    (file_id[edge], end)
                })
                .collect()
        })
        .collect();
    for (edge, data) in map.edges().iter().enumerate() {
        flips[file_id[edge]] = data.flip;
    }
    let surface = diagram.surface();
    let file = DiagramFile {
        format: "hdiag-v1".to_string(),
        name: Some(diagram.label.clone()),
        genus: surface.genus,
        orientable: surface.orientable,
        curves: diagram
            .curves
            .iter()
            .map(|c| CurveEntry {
                system: c.system,
                crossings: c.nodes.clone(),
            })
            .chain(diagram.free_circles.iter().map(|&system| CurveEntry {
                system,
                crossings: Vec::new(),
            }))
            .collect(),
        rotations,
        edge_flips: if flips.iter().any(|&f| f) {
            Some(flips)
        } else {
            None
        },
        planar: diagram.planar.clone(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("diagram file serializes");
    out.push('\n');
    Ok(out)
}

/// Parses an `hdiag-v1` JSON document into a validated diagram.
///
/// The rotations must assemble into a single connected closed surface
/// matching the declared genus and orientability; a disconnected map is
/// rejected (two disjoint diagrams are two files).
pub fn diagram_from_json(text: &str) -> Result<HeegaardDiagram> {
    let file: DiagramFile = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("hdiag-v1 JSON: {e}")))?;
    if file.format != "hdiag-v1" {
        return Err(Error::parse(format!(
            "unsupported format {:?}, expected \"hdiag-v1\"",
            file.format
        )));
    }
    let node_count = file.rotations.len();
    let arc_count: usize = file.curves.iter().map(|c| c.crossings.len()).sum();

    // Each crossing lies on exactly one curve of each system.
    let mut on_curve: Vec<[Option<usize>; 2]> = vec![[None; 2]; node_count];
    let mut free_circles = Vec::new();
    let mut curves: Vec<Curve> = Vec::new();
    let mut arc_base = 0usize;
    let mut system_counts = [0usize; 2];
    for (k, entry) in file.curves.iter().enumerate() {
        let side = match entry.system {
            System::V => 0,
            System::W => 1,
        };
        if entry.crossings.is_empty() {
            free_circles.push(entry.system);
            continue;
        }
        let id = curves.len();
        for &c in &entry.crossings {
            if c >= node_count {
                return Err(Error::parse(format!(
                    "curve #{k}: crossing {c} has no rotation entry (only {node_count} \
                     crossings)"
                )));
            }
            if let Some(other) = on_curve[c][side] {
                return Err(Error::parse(format!(
                    "crossing {c} lies on two {} curves (#{other} and #{id})",
                    entry.system
                )));
            }
            on_curve[c][side] = Some(id);
        }
        curves.push(Curve {
            system: entry.system,
            nodes: entry.crossings.clone(),
            arcs: (arc_base..arc_base + entry.crossings.len()).collect(),
            label: format!("{}{}", entry.system, system_counts[side]),
        });
        system_counts[side] += 1;
        arc_base += entry.crossings.len();
    }
    for (c, sides) in on_curve.iter().enumerate() {
        if sides[0].is_none() || sides[1].is_none() {
            return Err(Error::parse(format!(
                "crossing {c} must lie on one V and one W curve"
            )));
        }
    }

    // Every arc-end placed exactly once, at the crossing its curve visits.
    let mut end_at: Vec<[Option<usize>; 2]> = vec![[None; 2]; arc_count];
    for (n, rotation) in file.rotations.iter().enumerate() {
        if rotation.len() != 4 {
            return Err(Error::parse(format!(
                "rotation of crossing {n} lists {} arc-ends, expected 4",
                rotation.len()
            )));
        }
        for &(arc, end) in rotation {
            if arc >= arc_count {
                return Err(Error::parse(format!(
                    "crossing {n}: arc {arc} out of range (only {arc_count} arcs)"
                )));
            }
            if end > 1 {
                return Err(Error::parse(format!(
                    "crossing {n}: arc end {end} must be 0 or 1"
                )));
            }
            if let Some(prev) = end_at[arc][end as usize] {
                return Err(Error::parse(format!(
                    "end {end} of arc {arc} appears at crossings {prev} and {n}"
                )));
            }
            end_at[arc][end as usize] = Some(n);
        }
    }
    for (id, curve) in curves.iter().enumerate() {
        let len = curve.nodes.len();
        for j in 0..len {
            let arc = curve.arcs[j];
            let want = [curve.nodes[j], curve.nodes[(j + 1) % len]];
            for end in 0..2 {
                match end_at[arc][end] {
                    Some(n) if n == want[end] => {}
                    Some(n) => {
                        return Err(Error::parse(format!(
                            "end {end} of arc {arc} sits at crossing {n}, but curve \
                             {} traverses it at crossing {}",
                            curves[id].label, want[end]
                        )));
                    }
                    None => {
                        return Err(Error::parse(format!(
                            "end {end} of arc {arc} appears in no rotation"
                        )));
                    }
                }
            }
        }
    }

    let flips = match file.edge_flips {
        Some(flips) if flips.len() != arc_count => {
            return Err(Error::parse(format!(
                "edge_flips lists {} entries for {arc_count} arcs",
                flips.len()
            )));
        }
        Some(flips) => flips,
        None => vec![false; arc_count],
    };

    let nodes = file
        .rotations
        .iter()
        .enumerate()
        .map(|(n, rotation)| {
            let kind = NodeKind::Crossing {
                v_curve: on_curve[n][0].expect("checked above"),
                w_curve: on_curve[n][1].expect("checked above"),
            };
            (kind, rotation.clone())
        })
        .collect();
    let mut owner = Vec::with_capacity(arc_count);
    for (id, curve) in curves.iter().enumerate() {
        owner.extend(std::iter::repeat(id).take(curve.nodes.len()));
    }
    let edges = owner
        .into_iter()
        .zip(&flips)
        .map(|(curve, &flip)| (EdgeKind::CurveArc { curve }, flip))
        .collect();
    let map = SurfaceMap::assemble(nodes, edges)?;

    let declared = SurfaceType {
        orientable: file.orientable,
        genus: file.genus,
        boundary_components: 0,
    };
    if map.surface() != declared {
        return Err(Error::invalid(format!(
            "file declares {declared} but the rotations assemble to {}",
            map.surface()
        )));
    }

    let diagram = HeegaardDiagram {
        map,
        curves,
        free_circles,
        planar: file.planar,
        label: file.name.unwrap_or_else(|| "loaded diagram".to_string()),
    };
    diagram.validate()?;
    if let Some(planar) = &diagram.planar {
        planar.validate(&diagram)?;
    }
    Ok(diagram)
}
