//! Extraction of generalized Heegaard diagrams from coloured graphs.
//!
//! A cyclic colour order `ε = (ε₀, ε₁, ε₂, ε₃)` embeds a graph regularly in a
//! surface.  The `{ε₀, ε₂}`-cycles and the `{ε₁, ε₃}`-cycles are transversal
//! to the embedding's faces and to each other, so they form the two curve
//! systems of a diagram on that surface.  This module realizes the diagram as
//! an explicit combinatorial map:
//!
//! * every graph vertex becomes a map node whose rotation lists its four
//!   edge-ends in `ε` slot order;
//! * for a gem with boundary (where colour 3 is partial) each boundary vertex
//!   additionally grows a *star* node beyond the boundary circle, stars being
//!   joined by arcs that trace the capped boundary, so the map lives on the
//!   capped surface and the caps appear as ordinary faces;
//! * curve arcs are tagged with their owning curve, everything else (open
//!   `{ε₁, 3}`-strands, star legs, cap boundary arcs) is a seam.
//!
//! Every constructor cross-checks the assembled map against the residue-count
//! embedding computed independently by the `embedding` module and fails with
//! a consistency error on any mismatch.

use crate::embedding::{embed, CyclicOrder};
use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, GraphClassTag, Residue};
use crate::heegaard::map::{EdgeKind, NodeKind, SurfaceMap};
use crate::heegaard::{Curve, HeegaardDiagram, System};

/// Extracts the Heegaard diagram of a gem with boundary for splitting colour
/// `alpha ∈ {0, 1, 2}`.
///
/// With `{β, β′} = {0, 1, 2} \ {alpha}`, `β < β′`, the graph is embedded for
/// the order `(β, alpha, β′, 3)`; the diagram lives on the capped embedding
/// surface.  The `{β, β′}`-cycles form the V system; the closed
/// `{alpha, 3}`-residues form the W system, while the open ones become seams
/// running into the capped boundary.
pub fn diagram_from_gem(graph: &ColouredGraph, alpha: Colour) -> Result<HeegaardDiagram> {
    let class = graph.classify();
    if class.tag != GraphClassTag::BoundaryGem {
        return Err(Error::precondition(format!(
            "diagram extraction for a splitting colour in {{0, 1, 2}} needs a gem \
             with boundary; this graph is {}",
            class.tag
        )));
    }
    if alpha.value() > 2 {
        return Err(Error::precondition(
            "the splitting colour of a gem with boundary must lie in {0, 1, 2}",
        ));
    }
    let mut betas = alpha.complement().to_vec();
    betas.retain(|c| c.value() != 3);
    let (beta, beta_prime) = (betas[0], betas[1]);
    let order = [beta, alpha, beta_prime, Colour::BOUNDARY];
    build_diagram(graph, order, true)
}

/// Extracts the Heegaard diagram of a singular-regular graph whose singular
/// colour is 0, for splitting colour `alpha ∈ {1, 2, 3}`.
///
/// With `β` the cyclic successor of `alpha` in `(1, 2, 3)` and `α′` the
/// remaining colour, the graph is embedded for the order `(β, alpha, 0, α′)`.
/// The `{β, 0}`-cycles form the V system and the `{alpha, α′}`-cycles the W
/// system; every vertex is a crossing.
pub fn diagram_from_singular(graph: &ColouredGraph, alpha: Colour) -> Result<HeegaardDiagram> {
    let class = graph.classify();
    let singular_zero =
        matches!(class.tag, GraphClassTag::SingularRegular(c) if c.value() == 0);
    if !singular_zero {
        return Err(Error::precondition(format!(
            "diagram extraction for a splitting colour in {{1, 2, 3}} needs a \
             singular-regular graph with singular colour 0 (or a closed gem; use the \
             closed-gem constructor); this graph is {}",
            class.tag
        )));
    }
    diagram_from_regular(graph, alpha)
}

/// Extracts the Heegaard diagram of a closed gem for splitting colour
/// `alpha ∈ {1, 2, 3}`; the construction is the one used for singular-regular
/// graphs, closed gems being the case without singular vertices.
pub fn diagram_from_closed(graph: &ColouredGraph, alpha: Colour) -> Result<HeegaardDiagram> {
    let class = graph.classify();
    if class.tag != GraphClassTag::ClosedGem {
        return Err(Error::precondition(format!(
            "closed-gem diagram extraction needs a closed gem; this graph is {}",
            class.tag
        )));
    }
    diagram_from_regular(graph, alpha)
}

fn diagram_from_regular(graph: &ColouredGraph, alpha: Colour) -> Result<HeegaardDiagram> {
    if alpha.value() == 0 {
        return Err(Error::precondition(
            "the splitting colour of a regular graph must lie in {1, 2, 3}",
        ));
    }
    let beta = Colour::new(alpha.value() % 3 + 1).expect("cyclic successor in {1, 2, 3}");
    let alpha_prime = *alpha
        .complement()
        .iter()
        .find(|c| c.value() != 0 && *c != &beta)
        .expect("remaining colour of {1, 2, 3}");
    let zero = Colour::new(0).expect("colour 0");
    let order = [beta, alpha, zero, alpha_prime];
    build_diagram(graph, order, false)
}

/// Shared assembly for both the bordered and the regular case.  `order` is
/// the embedding order `(ε₀, ε₁, ε₂, ε₃)`; when `bordered` is set, colour
/// `ε₃ = 3` may be partial and stars are grown over the boundary vertices.
fn build_diagram(
    graph: &ColouredGraph,
    order: [Colour; 4],
    bordered: bool,
) -> Result<HeegaardDiagram> {
    let n = graph.vertex_count();
    let slot_of = |c: Colour| -> u8 {
        order
            .iter()
            .position(|&o| o == c)
            .expect("every colour appears in the order") as u8
    };

    // Curve systems from residues.  V over {ε₀, ε₂}, W over {ε₁, ε₃}; in the
    // bordered case the open {ε₁, 3}-residues are seams, not curves.
    let v_residues = sorted_residues(graph, order[0], order[2]);
    let w_residues = sorted_residues(graph, order[1], order[3]);
    if bordered {
        debug_assert!(v_residues.iter().all(|r| r.is_cycle));
    } else {
        debug_assert!(v_residues.iter().all(|r| r.is_cycle));
        debug_assert!(w_residues.iter().all(|r| r.is_cycle));
    }

    let mut v_curve_of = vec![usize::MAX; n];
    for (i, residue) in v_residues.iter().enumerate() {
        for &v in &residue.vertices {
            v_curve_of[v] = i;
        }
    }
    let mut w_curve_of = vec![None; n];
    let mut w_curve_ids = Vec::new();
    for residue in &w_residues {
        if residue.is_cycle {
            let id = v_residues.len() + w_curve_ids.len();
            w_curve_ids.push(id);
            for &v in &residue.vertices {
                w_curve_of[v] = Some(id);
            }
        }
    }

    // Graph vertices come first as map nodes; stars (bordered case) follow in
    // ascending boundary-vertex order.
    let boundary = if bordered {
        graph.boundary_vertices()
    } else {
        Vec::new()
    };
    let mut star_of = vec![None; n];
    for (i, &v) in boundary.iter().enumerate() {
        star_of[v] = Some(n + i);
    }

    let mut rotations: Vec<Vec<(usize, u8)>> = vec![vec![(usize::MAX, 0); 4]; n];
    rotations.extend(boundary.iter().map(|_| vec![(usize::MAX, 0); 3]));
    let mut edges: Vec<(EdgeKind, bool)> = Vec::new();
    let mut edge_at: Vec<[Option<usize>; 4]> = vec![[None; 4]; n];

    // Graph edges, in the graph's canonical edge order, end 0 at the lesser
    // endpoint.  Written in ε slot coordinates every graph edge is flipped.
    for (u, v, c) in graph.edges() {
        let kind = if c == order[0] || c == order[2] {
            EdgeKind::CurveArc {
                curve: v_curve_of[u],
            }
        } else {
            match w_curve_of[u] {
                Some(curve) => EdgeKind::CurveArc { curve },
                None => EdgeKind::Seam,
            }
        };
        let e = edges.len();
        edges.push((kind, true));
        let slot = slot_of(c) as usize;
        rotations[u][slot] = (e, 0);
        rotations[v][slot] = (e, 1);
        edge_at[u][c.index()] = Some(e);
        edge_at[v][c.index()] = Some(e);
    }

    if bordered {
        // Star legs: one unflipped seam from each boundary vertex (slot 3 of
        // its rotation, slot 0 of the star's).
        for &v in &boundary {
            let star = star_of[v].expect("star exists for boundary vertex");
            let e = edges.len();
            edges.push((EdgeKind::Seam, false));
            rotations[v][3] = (e, 0);
            rotations[star][0] = (e, 1);
        }
        // Cap boundary arcs: star-to-star seams tracing the capped boundary.
        // The open {ε₀, 3}-residues attach at star slot 2, the open
        // {ε₂, 3}-residues at star slot 1; both families are flipped.
        for (family, star_slot) in [(order[0], 2u8), (order[2], 1u8)] {
            for residue in sorted_residues(graph, family, Colour::BOUNDARY) {
                if residue.is_cycle {
                    continue;
                }
                let first = *residue.vertices.first().expect("non-empty residue");
                let last = *residue.vertices.last().expect("non-empty residue");
                let (s0, s1) = (
                    star_of[first].expect("path ends at a boundary vertex"),
                    star_of[last].expect("path ends at a boundary vertex"),
                );
                let e = edges.len();
                edges.push((EdgeKind::Seam, true));
                rotations[s0][star_slot as usize] = (e, 0);
                rotations[s1][star_slot as usize] = (e, 1);
            }
        }
    }

    // Node kinds: a graph vertex is a crossing when a W curve passes through
    // it (its V curve always does); otherwise it only carries strands.
    let mut nodes = Vec::with_capacity(rotations.len());
    for v in 0..n {
        let kind = match w_curve_of[v] {
            Some(w_curve) => NodeKind::Crossing {
                v_curve: v_curve_of[v],
                w_curve,
            },
            None => NodeKind::PathVertex,
        };
        nodes.push(kind);
    }
    nodes.extend(boundary.iter().map(|_| NodeKind::Star));

    for (node, rotation) in rotations.iter().enumerate() {
        if rotation.iter().any(|&(e, _)| e == usize::MAX) {
            return Err(Error::consistency(format!(
                "map node {node} has an unfilled rotation slot"
            )));
        }
    }
    let map = SurfaceMap::assemble(
        nodes.into_iter().zip(rotations).collect(),
        edges,
    )?;

    // The independent oracle: the residue-count embedding must agree with the
    // assembled map on census and surface.
    let emb = embed(
        graph,
        &CyclicOrder::from_values([
            order[0].value(),
            order[1].value(),
            order[2].value(),
            order[3].value(),
        ])?,
    )?;
    let expected_faces =
        emb.internal_faces + emb.boundary_regions + emb.surface.boundary_components as usize;
    if map.face_count() != expected_faces {
        return Err(Error::consistency(format!(
            "assembled map has {} faces where the embedding predicts {}",
            map.face_count(),
            expected_faces
        )));
    }
    if map.surface() != emb.capped_surface {
        return Err(Error::consistency(format!(
            "assembled map lives on {} where the embedding predicts {}",
            map.surface(),
            emb.capped_surface
        )));
    }

    // Curves: traversal order of the residue, with the arc colour alternating
    // from the smaller colour of the pair onwards.
    let mut curves = Vec::new();
    for residue in &v_residues {
        curves.push(curve_from_cycle(
            residue,
            System::V,
            order[0].min(order[2]),
            order[0].max(order[2]),
            &edge_at,
        ));
    }
    for residue in w_residues.iter().filter(|r| r.is_cycle) {
        curves.push(curve_from_cycle(
            residue,
            System::W,
            order[1].min(order[3]),
            order[1].max(order[3]),
            &edge_at,
        ));
    }
    debug_assert_eq!(
        curves.len(),
        v_residues.len() + w_curve_ids.len(),
        "every closed residue yields a curve"
    );

    let label = match graph.name() {
        Some(name) => format!("diagram of {name} for splitting colour {}", order[1]),
        None => format!("diagram for splitting colour {}", order[1]),
    };
    let diagram = HeegaardDiagram {
        map,
        curves,
        free_circles: Vec::new(),
        planar: None,
        label,
    };
    diagram.validate()?;
    Ok(diagram)
}

/// Residues over `{a, b}` with the colour pair sorted ascending, as the
/// residue API expects.
fn sorted_residues(graph: &ColouredGraph, a: Colour, b: Colour) -> Vec<Residue> {
    let pair = [a.min(b), a.max(b)];
    graph.residues(&pair)
}

/// Builds a curve from a cyclic two-colour residue.  Residue traversal leaves
/// the least vertex along the smaller colour, so even steps run along
/// `small` and odd steps along `large`.
fn curve_from_cycle(
    residue: &Residue,
    system: System,
    small: Colour,
    large: Colour,
    edge_at: &[[Option<usize>; 4]],
) -> Curve {
    let nodes = residue.vertices.clone();
    let arcs = nodes
        .iter()
        .enumerate()
        .map(|(step, &v)| {
            let colour = if step % 2 == 0 { small } else { large };
            edge_at[v][colour.index()].expect("curve vertices carry both pair colours")
        })
        .collect();
    Curve {
        system,
        nodes,
        arcs,
        label: format!(
            "{system} {{{small},{large}}}-cycle at {}",
            residue.vertices[0]
        ),
    }
}
