//! Generalized Heegaard diagrams as combinatorial maps: extraction from
//! coloured graphs, reduction enumeration, and the modified Heegaard
//! complexity of diagrams.

pub mod map;

mod complexity;
mod double;
mod extract;
mod reduction;

pub use complexity::{
    chm_diagram, chm_reduced, gm_complexity, regions, survivor_regions, ComplexityReport, Region,
    SearchMode, SearchOptions, SearchStatus, Witness,
};
pub use double::{
    condition_star, double_diagram, is_connected_diagram, HalfPlane, PlanarPresentation,
    RouteStep,
};
pub(crate) use complexity::chm_of_choices;
pub use extract::{diagram_from_closed, diagram_from_gem, diagram_from_singular};
pub use map::{EdgeKind, MapEdge, MapNode, NodeKind, PieceAnalysis, PieceInfo, SurfaceMap};
pub use reduction::{
    enumerate_reductions, system_analysis, CutDualGraph, ReductionChoice, SystemAnalysis,
};

use crate::error::{Error, Result};
use crate::surface::SurfaceType;
use serde::{Deserialize, Serialize};

/// Which of the two transversal curve systems a curve belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum System {
    V,
    W,
}

impl std::fmt::Display for System {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            System::V => "V",
            System::W => "W",
        })
    }
}

/// A closed curve of a diagram, listing its map nodes and arcs in cyclic
/// traversal order.
#[derive(Clone, Debug)]
pub struct Curve {
    pub system: System,
    /// Map node ids along the curve (crossings and path vertices alike).
    pub nodes: Vec<usize>,
    /// Map edge ids of the curve's arcs, `arcs[i]` joining `nodes[i]` to
    /// `nodes[i+1]` (cyclically).
    pub arcs: Vec<usize>,
    /// Human-readable provenance, e.g. the residue the curve came from.
    pub label: String,
}

/// A generalized Heegaard diagram: two transversal curve systems on a closed
/// surface, realized as an annotated combinatorial map.  Non-curve structure
/// (open strands, capped boundary circles) lives in the map as seam edges and
/// star nodes.
#[derive(Clone, Debug)]
pub struct HeegaardDiagram {
    pub map: SurfaceMap,
    pub curves: Vec<Curve>,
    /// Systems of curves without crossings.  Such circles cannot be placed in
    /// the map; they are recorded so predicates can account for them.
    pub free_circles: Vec<System>,
    /// Planar presentation, present when the diagram was generated or loaded
    /// with one; required by the doubling construction.
    pub planar: Option<PlanarPresentation>,
    /// Human-readable provenance of the diagram.
    pub label: String,
}

impl HeegaardDiagram {
    pub fn surface(&self) -> SurfaceType {
        self.map.surface()
    }

    /// Curve ids of the given system, ascending.
    pub fn system_curves(&self, system: System) -> Vec<usize> {
        (0..self.curves.len())
            .filter(|&c| self.curves[c].system == system)
            .collect()
    }

    /// Number of crossings (4-valent curve intersections) in the map.
    pub fn crossing_count(&self) -> usize {
        self.map
            .nodes()
            .iter()
            .filter(|n| matches!(n.kind, NodeKind::Crossing { .. }))
            .count()
    }

    /// Structural validation tying curves, nodes and arcs together.  All
    /// constructors call this; it fails with a consistency error on internal
    /// contradiction, never silently.
    pub fn validate(&self) -> Result<()> {
        let mut owner = vec![None; self.map.edge_count()];
        for (c, curve) in self.curves.iter().enumerate() {
            if curve.nodes.len() != curve.arcs.len() || curve.nodes.is_empty() {
                return Err(Error::consistency(format!(
                    "curve {c} has {} nodes but {} arcs",
                    curve.nodes.len(),
                    curve.arcs.len()
                )));
            }
            for &a in &curve.arcs {
                match self.map.edges()[a].kind {
                    EdgeKind::CurveArc { curve: owner_id } if owner_id == c => {}
                    _ => {
                        return Err(Error::consistency(format!(
                            "arc {a} of curve {c} is not tagged as its curve arc"
                        )))
                    }
                }
                if owner[a].replace(c).is_some() {
                    return Err(Error::consistency(format!("arc {a} listed twice")));
                }
            }
            for (i, &n) in curve.nodes.iter().enumerate() {
                let arc = &self.map.edges()[curve.arcs[i]];
                let next = curve.nodes[(i + 1) % curve.nodes.len()];
                let joins = (arc.ends[0].0 == n && arc.ends[1].0 == next)
                    || (arc.ends[0].0 == next && arc.ends[1].0 == n);
                if !joins {
                    return Err(Error::consistency(format!(
                        "arc {} of curve {c} does not join nodes {n} and {next}",
                        curve.arcs[i]
                    )));
                }
            }
        }
        for (e, edge) in self.map.edges().iter().enumerate() {
            if let EdgeKind::CurveArc { curve } = edge.kind {
                if owner[e] != Some(curve) {
                    return Err(Error::consistency(format!(
                        "curve arc {e} is not listed by curve {curve}"
                    )));
                }
            }
        }
        for (n, node) in self.map.nodes().iter().enumerate() {
            if let NodeKind::Crossing { v_curve, w_curve } = node.kind {
                let ok = v_curve < self.curves.len()
                    && w_curve < self.curves.len()
                    && self.curves[v_curve].system == System::V
                    && self.curves[w_curve].system == System::W;
                if !ok {
                    return Err(Error::consistency(format!(
                        "crossing {n} references invalid curve pair ({v_curve}, {w_curve})"
                    )));
                }
                // A crossing is transversal: its rotation alternates between
                // the two curves.
                let rot = &node.rotation;
                if rot.len() != 4 {
                    return Err(Error::consistency(format!(
                        "crossing {n} is not 4-valent"
                    )));
                }
                for i in 0..4 {
                    let here = curve_of(&self.map, rot[i].0);
                    let opposite = curve_of(&self.map, rot[(i + 2) % 4].0);
                    let adjacent = curve_of(&self.map, rot[(i + 1) % 4].0);
                    if here != opposite || here == adjacent {
                        return Err(Error::consistency(format!(
                            "crossing {n} rotation does not alternate V,W,V,W"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn curve_of(map: &SurfaceMap, edge: usize) -> Option<usize> {
    match map.edges()[edge].kind {
        EdgeKind::CurveArc { curve } => Some(curve),
        EdgeKind::Seam => None,
    }
}
