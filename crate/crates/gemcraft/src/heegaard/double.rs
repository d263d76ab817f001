//! Planar presentations of generalized Heegaard diagrams and the doubling
//! construction turning a presented diagram into a coloured graph.
//!
//! A planar presentation realizes the diagram in the plane: the Heegaard
//! surface is a sphere with one handle per V curve, the V curves are the belt
//! circles of the handles, and each W curve is drawn as a closed route that
//! alternates between the upper and the lower half-plane, switching sides
//! each time it runs over a handle or crosses the axis line separating the
//! half-planes.  The route data — which handle slot or axis crossing each
//! step uses, in what cyclic order the axis is met, and in which half-plane
//! each route starts — suffices to rebuild a coloured graph whose vertices
//! are two copies of every route step ("doubling").

use crate::embedding::{embed, CyclicOrder};
use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, GraphClassTag};
use crate::heegaard::{HeegaardDiagram, NodeKind, System};
use serde::{Deserialize, Serialize};

/// The half-plane a route segment lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HalfPlane {
    Upper,
    Lower,
}

impl HalfPlane {
    fn flipped(self) -> HalfPlane {
        match self {
            HalfPlane::Upper => HalfPlane::Lower,
            HalfPlane::Lower => HalfPlane::Upper,
        }
    }
}

/// One step of a W-curve route: running over a handle (crossing the V curve
/// that is the handle's belt circle) or crossing the axis line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RouteStep {
    /// Passage through slot `slot` of the handle of V curve `v_curve`
    /// (curve indices count within the V system, slots along the handle).
    Handle { v_curve: usize, slot: usize },
    /// Crossing of the axis line.
    Axis,
}

/// A planar presentation of a diagram.  Curve indices count within each
/// system: `handle_slots[v]` belongs to the `v`-th V curve and `routes[w]`,
/// `start_plane[w]` to the `w`-th W curve, both in diagram curve order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarPresentation {
    /// Number of slots on each handle, i.e. how often W curves run over it.
    pub handle_slots: Vec<usize>,
    /// The cyclic route of each W curve; `routes[w][s]` is its `s`-th step.
    pub routes: Vec<Vec<RouteStep>>,
    /// The axis crossings `(w_curve, step)` in their cyclic order along the
    /// axis line.
    pub axis: Vec<(usize, usize)>,
    /// Half-plane of each route's segment from step 0 to step 1.
    pub start_plane: Vec<HalfPlane>,
}

impl PlanarPresentation {
    /// Half-plane of the segment from step `s` to step `s + 1` of route `w`.
    pub fn segment_plane(&self, w: usize, s: usize) -> HalfPlane {
        if s % 2 == 0 {
            self.start_plane[w]
        } else {
            self.start_plane[w].flipped()
        }
    }

    /// Structural validation, and validation against the diagram the
    /// presentation claims to present: route lengths are even and positive,
    /// handle slots and axis crossings are used exactly once each, and the
    /// per-curve passage counts equal the diagram's crossing counts.
    pub fn validate(&self, diagram: &HeegaardDiagram) -> Result<()> {
        let v_curves = diagram.system_curves(System::V);
        let w_curves = diagram.system_curves(System::W);
        if self.handle_slots.len() != v_curves.len() {
            return Err(Error::invalid(format!(
                "presentation has {} handles for {} V curves",
                self.handle_slots.len(),
                v_curves.len()
            )));
        }
        if self.routes.len() != w_curves.len() || self.start_plane.len() != w_curves.len() {
            return Err(Error::invalid(format!(
                "presentation has {} routes and {} start planes for {} W curves",
                self.routes.len(),
                self.start_plane.len(),
                w_curves.len()
            )));
        }
        let mut slot_seen: Vec<Vec<bool>> =
            self.handle_slots.iter().map(|&k| vec![false; k]).collect();
        let mut axis_steps = 0usize;
        for (w, route) in self.routes.iter().enumerate() {
            if route.is_empty() || route.len() % 2 != 0 {
                return Err(Error::invalid(format!(
                    "route of W curve {w} has odd or zero length {}",
                    route.len()
                )));
            }
            let mut handle_steps = 0usize;
            for step in route {
                match *step {
                    RouteStep::Handle { v_curve, slot } => {
                        handle_steps += 1;
                        let valid = v_curve < self.handle_slots.len()
                            && slot < self.handle_slots[v_curve];
                        if !valid {
                            return Err(Error::invalid(format!(
                                "route of W curve {w} uses slot {slot} of handle \
                                 {v_curve}, which does not exist"
                            )));
                        }
                        if std::mem::replace(&mut slot_seen[v_curve][slot], true) {
                            return Err(Error::invalid(format!(
                                "slot {slot} of handle {v_curve} is used twice"
                            )));
                        }
                    }
                    RouteStep::Axis => axis_steps += 1,
                }
            }
            let crossings = crossings_on_curve(diagram, w_curves[w]);
            if handle_steps != crossings {
                return Err(Error::invalid(format!(
                    "route of W curve {w} runs over {handle_steps} handles but the \
                     curve has {crossings} crossings"
                )));
            }
        }
        for (v, seen) in slot_seen.iter().enumerate() {
            if let Some(slot) = seen.iter().position(|&s| !s) {
                return Err(Error::invalid(format!(
                    "slot {slot} of handle {v} is never used"
                )));
            }
            let crossings = crossings_on_curve(diagram, v_curves[v]);
            if seen.len() != crossings {
                return Err(Error::invalid(format!(
                    "handle {v} has {} slots but its V curve has {crossings} crossings",
                    seen.len()
                )));
            }
        }
        if self.axis.len() != axis_steps {
            return Err(Error::invalid(format!(
                "axis order lists {} crossings but the routes make {axis_steps}",
                self.axis.len()
            )));
        }
        let mut axis_seen = std::collections::BTreeSet::new();
        for &(w, s) in &self.axis {
            let is_axis = self
                .routes
                .get(w)
                .and_then(|r| r.get(s))
                .is_some_and(|step| *step == RouteStep::Axis);
            if !is_axis {
                return Err(Error::invalid(format!(
                    "axis order lists step {s} of W curve {w}, which is not an axis \
                     crossing"
                )));
            }
            if !axis_seen.insert((w, s)) {
                return Err(Error::invalid(format!(
                    "axis order lists step {s} of W curve {w} twice"
                )));
            }
        }
        Ok(())
    }
}

fn crossings_on_curve(diagram: &HeegaardDiagram, curve: usize) -> usize {
    diagram.curves[curve]
        .nodes
        .iter()
        .filter(|&&n| matches!(diagram.map.nodes()[n].kind, NodeKind::Crossing { .. }))
        .count()
}

/// True when no curve of either system is crossing-free.  Crossing-free
/// circles carry no combinatorial information and the complexity machinery
/// refuses diagrams containing them.
pub fn condition_star(diagram: &HeegaardDiagram) -> bool {
    diagram.free_circles.is_empty()
        && (0..diagram.curves.len()).all(|c| crossings_on_curve(diagram, c) > 0)
}

/// True when the diagram is connected: no crossing-free circles and every
/// region of the curve complement is an open disk.
pub fn is_connected_diagram(diagram: &HeegaardDiagram) -> bool {
    if !diagram.free_circles.is_empty() {
        return false;
    }
    let barrier: Vec<bool> = diagram
        .map
        .edges()
        .iter()
        .map(|e| matches!(e.kind, crate::heegaard::EdgeKind::CurveArc { .. }))
        .collect();
    diagram
        .map
        .analyze(&barrier)
        .pieces
        .iter()
        .all(|p| p.is_disk())
}

/// Doubles a planarly presented diagram into a coloured graph.
///
/// Every route step `t` (numbered globally, route by route) yields an
/// original vertex `2t` and a twin `2t + 1`.  Route segments connect
/// consecutive originals and consecutive twins by edges coloured 1 in the
/// upper and 3 in the lower half-plane; each handle's slot cycle and the
/// axis cycle connect step pairs by 0-edges (original to its twin) and
/// 2-edges (twin to the next step's original).  The result is checked to be
/// a closed gem or a singular-regular graph with singular colour 0 whose
/// `(2, 1, 0, 3)`-embedding reproduces the diagram surface.
pub fn double_diagram(diagram: &HeegaardDiagram) -> Result<ColouredGraph> {
    let planar = diagram.planar.as_ref().ok_or_else(|| {
        Error::precondition("doubling needs a diagram with a planar presentation")
    })?;
    planar.validate(diagram)?;
    if !condition_star(diagram) {
        return Err(Error::precondition(
            "doubling needs every curve to meet the other system; the diagram has a \
             crossing-free circle",
        ));
    }

    let mut offset = Vec::with_capacity(planar.routes.len());
    let mut total = 0usize;
    for route in &planar.routes {
        offset.push(total);
        total += route.len();
    }
    let orig = |w: usize, s: usize| 2 * (offset[w] + s);
    let twin = |w: usize, s: usize| 2 * (offset[w] + s) + 1;

    let mut edges: Vec<(usize, usize, u8)> = Vec::with_capacity(4 * total);
    for (w, route) in planar.routes.iter().enumerate() {
        for s in 0..route.len() {
            let next = (s + 1) % route.len();
            let colour = match planar.segment_plane(w, s) {
                HalfPlane::Upper => 1,
                HalfPlane::Lower => 3,
            };
            edges.push((orig(w, s), orig(w, next), colour));
            edges.push((twin(w, s), twin(w, next), colour));
        }
    }
    let mut cycles: Vec<Vec<(usize, usize)>> = planar
        .handle_slots
        .iter()
        .map(|&k| vec![(usize::MAX, usize::MAX); k])
        .collect();
    for (w, route) in planar.routes.iter().enumerate() {
        for (s, step) in route.iter().enumerate() {
            if let RouteStep::Handle { v_curve, slot } = *step {
                cycles[v_curve][slot] = (w, s);
            }
        }
    }
    cycles.push(planar.axis.clone());
    for cycle in &cycles {
        for (i, &(w, s)) in cycle.iter().enumerate() {
            let (w2, s2) = cycle[(i + 1) % cycle.len()];
            edges.push((orig(w, s), twin(w, s), 0));
            edges.push((twin(w, s), orig(w2, s2), 2));
        }
    }

    let doubled = ColouredGraph::new(2 * total, &edges).map_err(|e| {
        Error::consistency(format!("doubling produced an inadmissible graph: {e}"))
    })?;
    let doubled = match diagram.label.as_str() {
        "" => doubled,
        label => doubled.with_name(format!("double of {label}")),
    };

    let class = doubled.classify();
    let admissible = match class.tag {
        GraphClassTag::ClosedGem => true,
        GraphClassTag::SingularRegular(c) => c.value() == 0,
        _ => false,
    };
    if !admissible {
        return Err(Error::consistency(format!(
            "doubling produced a graph classified as {}",
            class.tag
        )));
    }
    let emb = embed(&doubled, &CyclicOrder::from_values([2, 1, 0, 3])?)?;
    if emb.surface != diagram.surface() {
        return Err(Error::consistency(format!(
            "doubled graph embeds in {} but the diagram lives on {}",
            emb.surface,
            diagram.surface()
        )));
    }
    Ok(doubled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::torus_singularity_graph;
    use crate::heegaard::{diagram_from_closed, diagram_from_singular, Curve, EdgeKind, SurfaceMap};
    use crate::surface::SurfaceType;
    use crate::Colour;

    /// The one-crossing diagram on the torus: one V loop, one W loop, a
    /// single crossing, presented with one handle slot and one axis crossing.
    fn one_crossing_diagram() -> HeegaardDiagram {
        let map = SurfaceMap::assemble(
            vec![(
                NodeKind::Crossing {
                    v_curve: 0,
                    w_curve: 1,
                },
                vec![(0, 0), (1, 0), (0, 1), (1, 1)],
            )],
            vec![
                (EdgeKind::CurveArc { curve: 0 }, false),
                (EdgeKind::CurveArc { curve: 1 }, false),
            ],
        )
        .unwrap();
        assert_eq!(map.surface(), SurfaceType::TORUS);
        let diagram = HeegaardDiagram {
            map,
            curves: vec![
                Curve {
                    system: System::V,
                    nodes: vec![0],
                    arcs: vec![0],
                    label: "V loop".into(),
                },
                Curve {
                    system: System::W,
                    nodes: vec![0],
                    arcs: vec![1],
                    label: "W loop".into(),
                },
            ],
            free_circles: Vec::new(),
            planar: Some(PlanarPresentation {
                handle_slots: vec![1],
                routes: vec![vec![
                    RouteStep::Handle {
                        v_curve: 0,
                        slot: 0,
                    },
                    RouteStep::Axis,
                ]],
                axis: vec![(0, 1)],
                start_plane: vec![HalfPlane::Upper],
            }),
            label: "one-crossing torus diagram".into(),
        };
        diagram.validate().unwrap();
        diagram
    }

    #[test]
    fn one_crossing_torus_doubles_to_a_closed_gem() {
        let d = one_crossing_diagram();
        let g = double_diagram(&d).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.classify().tag, GraphClassTag::ClosedGem);
        // The doubled graph carries the diagram back: extraction for
        // splitting colour 1 lives on the torus again.
        let back = diagram_from_closed(&g, Colour::new(1).unwrap()).unwrap();
        assert_eq!(back.surface(), SurfaceType::TORUS);
        assert_eq!(back.crossing_count(), 4);
    }

    #[test]
    fn doubling_without_presentation_is_refused() {
        let g = torus_singularity_graph();
        let d = diagram_from_singular(&g, Colour::new(1).unwrap()).unwrap();
        assert!(double_diagram(&d).is_err());
    }

    #[test]
    fn connectivity_predicates_on_extracted_diagram() {
        let g = torus_singularity_graph();
        let d = diagram_from_singular(&g, Colour::new(1).unwrap()).unwrap();
        assert!(condition_star(&d));
        assert!(is_connected_diagram(&d));
    }

    #[test]
    fn presentation_validation_catches_mismatches() {
        let mut d = one_crossing_diagram();
        let planar = d.planar.as_mut().unwrap();
        planar.axis.clear();
        assert!(d.planar.as_ref().unwrap().validate(&d).is_err());
    }
}
