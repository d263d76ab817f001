//! Combinatorial maps on closed surfaces.
//!
//! A [`SurfaceMap`] is a graph cellularly embedded in a closed surface,
//! described by a rotation system: every node carries the cyclic order of its
//! incident edge-ends, and every edge carries an orientation flag (`flip`)
//! marking orientation-reversing identifications.  Faces are computed from the
//! rotation data, never supplied, so every constructor is validated against an
//! independently known Euler characteristic by its caller.
//!
//! The module also provides the cutting engine ([`SurfaceMap::analyze`]) used
//! for curve-system computations: given a set of *barrier* edges, it computes
//! the connected pieces of the surface cut along the barriers, together with
//! each piece's Euler characteristic and number of boundary circles.

use crate::error::{Error, Result};
use crate::graph::UnionFind;
use crate::surface::SurfaceType;

/// Role of a node in a diagram map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Transversal intersection of a V-curve and a W-curve.
    Crossing { v_curve: usize, w_curve: usize },
    /// A vertex lying on open (non-curve) strand structure.
    PathVertex,
    /// Auxiliary vertex on a capped boundary circle.
    Star,
}

/// Role of an edge in a diagram map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Arc of a closed curve; `curve` indexes the owning diagram's curve list.
    CurveArc { curve: usize },
    /// Non-curve structure: open strands, cap spokes, boundary arcs.
    Seam,
}

/// A node together with the cyclic order of its incident edge-ends.
#[derive(Clone, Debug)]
pub struct MapNode {
    pub kind: NodeKind,
    /// Counterclockwise cyclic list of (edge id, end index ∈ {0,1}).
    pub rotation: Vec<(usize, u8)>,
}

/// An edge with its two attachment points.
#[derive(Clone, Debug)]
pub struct MapEdge {
    pub kind: EdgeKind,
    /// For each end 0/1: (node id, position in that node's rotation).
    pub ends: [(usize, usize); 2],
    /// True when traversing the edge reverses local orientation.
    pub flip: bool,
}

/// One connected piece of the surface cut along the barrier edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceInfo {
    /// Euler characteristic of the bordered piece.
    pub chi: i64,
    /// Number of boundary circles produced by the cut.
    pub boundary_circles: usize,
    /// Number of map faces contained in the piece.
    pub face_count: usize,
}

impl PieceInfo {
    /// Euler characteristic after capping every boundary circle with a disk.
    pub fn closed_chi(&self) -> i64 {
        self.chi + self.boundary_circles as i64
    }

    /// True when the piece is a sphere with holes (capped χ = 2).
    pub fn is_genus_zero(&self) -> bool {
        self.closed_chi() == 2
    }

    /// True for a disk: χ = 1 with a single boundary circle.
    pub fn is_disk(&self) -> bool {
        self.chi == 1 && self.boundary_circles == 1
    }
}

/// Result of cutting the map surface along a set of barrier edges.
#[derive(Clone, Debug)]
pub struct PieceAnalysis {
    /// Piece id of every face; pieces are numbered by least contained face.
    pub piece_of_face: Vec<usize>,
    pub pieces: Vec<PieceInfo>,
}

/// A graph cellularly embedded in a closed surface.
#[derive(Clone, Debug)]
pub struct SurfaceMap {
    nodes: Vec<MapNode>,
    edges: Vec<MapEdge>,
    /// Base offset of each node's corner block in the global corner numbering,
    /// with a final entry equal to the total corner count.
    corner_base: Vec<usize>,
    /// Face id of every corner; corner `j` of node `n` lies between
    /// `rotation[j]` and `rotation[j+1]` (cyclically).
    face_of_corner: Vec<usize>,
    face_count: usize,
    surface: SurfaceType,
}

impl SurfaceMap {
    /// Assembles a map from rotations.  `nodes` lists, per node, its kind and
    /// counterclockwise rotation of (edge, end) pairs; `edges` lists, per
    /// edge, its kind and flip flag.  Fails unless every edge-end occurs
    /// exactly once and the map is connected.
    pub fn assemble(
        nodes: Vec<(NodeKind, Vec<(usize, u8)>)>,
        edges: Vec<(EdgeKind, bool)>,
    ) -> Result<SurfaceMap> {
        let node_count = nodes.len();
        let edge_count = edges.len();
        if node_count == 0 {
            return Err(Error::invalid("map has no nodes"));
        }
        let mut ends: Vec<[Option<(usize, usize)>; 2]> = vec![[None, None]; edge_count];
        for (n, (_, rotation)) in nodes.iter().enumerate() {
            if rotation.is_empty() {
                return Err(Error::invalid(format!("map node {n} has empty rotation")));
            }
            for (pos, &(e, side)) in rotation.iter().enumerate() {
                if e >= edge_count || side > 1 {
                    return Err(Error::invalid(format!(
                        "map node {n} rotation slot {pos} references invalid edge end ({e}, {side})"
                    )));
                }
                if ends[e][side as usize].replace((n, pos)).is_some() {
                    return Err(Error::invalid(format!(
                        "edge end ({e}, {side}) attached more than once"
                    )));
                }
            }
        }
        let mut full_edges = Vec::with_capacity(edge_count);
        for (e, (kind, flip)) in edges.into_iter().enumerate() {
            let (a, b) = (ends[e][0], ends[e][1]);
            match (a, b) {
                (Some(a), Some(b)) => full_edges.push(MapEdge { kind, ends: [a, b], flip }),
                _ => return Err(Error::invalid(format!("edge {e} is missing an attachment"))),
            }
        }
        let nodes: Vec<MapNode> = nodes
            .into_iter()
            .map(|(kind, rotation)| MapNode { kind, rotation })
            .collect();

        // Connectivity over nodes.
        let mut uf = UnionFind::new(node_count);
        for edge in &full_edges {
            uf.union(edge.ends[0].0, edge.ends[1].0);
        }
        if uf.component_count() != 1 {
            return Err(Error::invalid("map is disconnected"));
        }

        // Corner numbering.
        let mut corner_base = Vec::with_capacity(node_count + 1);
        let mut total = 0usize;
        for node in &nodes {
            corner_base.push(total);
            total += node.rotation.len();
        }
        corner_base.push(total);

        // Faces: union corners across every edge.  Walking an edge from end 0
        // to end 1, the face counterclockwise of end 0 continues as the face
        // clockwise of end 1 (sides swap when the edge flips).
        let ccw = |n: usize, p: usize| corner_base[n] + p;
        let cw = |n: usize, p: usize, deg: usize| corner_base[n] + (p + deg - 1) % deg;
        let mut faces = UnionFind::new(total);
        for edge in &full_edges {
            let (n0, p0) = edge.ends[0];
            let (n1, p1) = edge.ends[1];
            let d1 = nodes[n1].rotation.len();
            if edge.flip {
                faces.union(ccw(n0, p0), ccw(n1, p1));
                faces.union(cw(n0, p0, nodes[n0].rotation.len()), cw(n1, p1, d1));
            } else {
                faces.union(ccw(n0, p0), cw(n1, p1, d1));
                faces.union(cw(n0, p0, nodes[n0].rotation.len()), ccw(n1, p1));
            }
        }
        let mut face_id = vec![usize::MAX; total];
        let mut face_count = 0usize;
        for c in 0..total {
            let root = faces.find(c);
            if face_id[root] == usize::MAX {
                face_id[root] = face_count;
                face_count += 1;
            }
            face_id[c] = face_id[root];
        }

        // Orientability: flips must be removable by reversing node rotations.
        let orientable = {
            let mut side = vec![u8::MAX; node_count];
            let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); node_count];
            for edge in &full_edges {
                adj[edge.ends[0].0].push((edge.ends[1].0, edge.flip));
                adj[edge.ends[1].0].push((edge.ends[0].0, edge.flip));
            }
            let mut ok = true;
            let mut stack = vec![0usize];
            side[0] = 0;
            while let Some(n) = stack.pop() {
                for &(m, flip) in &adj[n] {
                    let want = side[n] ^ u8::from(flip);
                    if side[m] == u8::MAX {
                        side[m] = want;
                        stack.push(m);
                    } else if side[m] != want {
                        ok = false;
                    }
                }
            }
            ok
        };

        let chi = node_count as i64 - edge_count as i64 + face_count as i64;
        let surface = SurfaceType::from_euler(chi, 0, orientable).map_err(|e| {
            Error::invalid(format!("rotation data yields no closed surface: {e}"))
        })?;

        Ok(SurfaceMap {
            nodes,
            edges: full_edges,
            corner_base,
            face_of_corner: face_id,
            face_count,
            surface,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.face_count
    }

    pub fn surface(&self) -> SurfaceType {
        self.surface
    }

    pub fn nodes(&self) -> &[MapNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[MapEdge] {
        &self.edges
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.nodes.len() as i64 - self.edges.len() as i64 + self.face_count as i64
    }

    /// Face lying in corner `j` of node `n` (between rotation entries `j` and
    /// `j+1`).
    pub fn face_at(&self, n: usize, corner: usize) -> usize {
        self.face_of_corner[self.corner_base[n] + corner]
    }

    /// All faces incident to node `n`, one entry per corner.
    pub fn faces_at_node(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (self.corner_base[n]..self.corner_base[n + 1]).map(|c| self.face_of_corner[c])
    }

    /// The two face sides of edge `e`: `[counterclockwise-of-end-0,
    /// clockwise-of-end-0]`.
    pub fn edge_faces(&self, e: usize) -> [usize; 2] {
        let (n0, p0) = self.edges[e].ends[0];
        let deg = self.nodes[n0].rotation.len();
        [
            self.face_of_corner[self.corner_base[n0] + p0],
            self.face_of_corner[self.corner_base[n0] + (p0 + deg - 1) % deg],
        ]
    }

    /// Cuts the surface along the barrier edges (`barrier[e]` true) and
    /// reports the resulting pieces.  Non-barrier edges merge their two face
    /// sides; barrier edges become boundary.  Piece data stays correct for
    /// arbitrary barrier sets, including open arcs.
    pub fn analyze(&self, barrier: &[bool]) -> PieceAnalysis {
        assert_eq!(barrier.len(), self.edges.len(), "barrier mask length mismatch");
        let mut uf = UnionFind::new(self.face_count);
        for e in 0..self.edges.len() {
            if !barrier[e] {
                let [a, b] = self.edge_faces(e);
                uf.union(a, b);
            }
        }
        let mut piece_id = vec![usize::MAX; self.face_count];
        let mut count = 0usize;
        for f in 0..self.face_count {
            let root = uf.find(f);
            if piece_id[root] == usize::MAX {
                piece_id[root] = count;
                count += 1;
            }
            piece_id[f] = piece_id[root];
        }
        let piece_of_face: Vec<usize> = (0..self.face_count).map(|f| piece_id[f]).collect();

        let mut vertices = vec![0i64; count];
        let mut edges_interior = vec![0i64; count];
        let mut boundary_sides = vec![0i64; count];
        let mut face_counts = vec![0usize; count];
        for f in 0..self.face_count {
            face_counts[piece_of_face[f]] += 1;
        }
        for e in 0..self.edges.len() {
            let [a, b] = self.edge_faces(e);
            if barrier[e] {
                boundary_sides[piece_of_face[a]] += 1;
                boundary_sides[piece_of_face[b]] += 1;
            } else {
                debug_assert_eq!(piece_of_face[a], piece_of_face[b]);
                edges_interior[piece_of_face[a]] += 1;
            }
        }

        // Vertices: a node untouched by barriers lies in one piece; a node on
        // barrier edges splits into sectors (maximal rotation runs between
        // barrier ends), each becoming a vertex of the piece holding it.
        for (n, node) in self.nodes.iter().enumerate() {
            let deg = node.rotation.len();
            let barrier_positions: Vec<usize> = (0..deg)
                .filter(|&p| barrier[node.rotation[p].0])
                .collect();
            if barrier_positions.is_empty() {
                let piece = piece_of_face[self.face_at(n, 0)];
                debug_assert!(self
                    .faces_at_node(n)
                    .all(|f| piece_of_face[f] == piece));
                vertices[piece] += 1;
            } else {
                for (idx, &start) in barrier_positions.iter().enumerate() {
                    let piece = piece_of_face[self.face_at(n, start)];
                    if cfg!(debug_assertions) {
                        let end = barrier_positions[(idx + 1) % barrier_positions.len()];
                        let span = (end + deg - start) % deg;
                        let span = if span == 0 { deg } else { span };
                        for off in 0..span {
                            debug_assert_eq!(
                                piece_of_face[self.face_at(n, (start + off) % deg)],
                                piece,
                                "sector corners straddle pieces"
                            );
                        }
                    }
                    vertices[piece] += 1;
                }
            }
        }

        // Boundary circles: walk the cut boundary.  Each barrier edge side
        // has an attachment point at each of its ends; sector walks at nodes
        // pair them up, and circle count is the number of components.
        let att = |e: usize, end: usize, is_ccw: bool| 4 * e + 2 * end + usize::from(!is_ccw);
        let mut circles_uf = UnionFind::new(4 * self.edges.len());
        let mut active = vec![false; 4 * self.edges.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            if !barrier[e] {
                continue;
            }
            for end in 0..2 {
                active[att(e, end, true)] = true;
                active[att(e, end, false)] = true;
            }
            // Side continuity along the edge: the ccw side at end 0 meets the
            // cw side at end 1 (swapped by flip), mirroring the face gluing.
            if edge.flip {
                circles_uf.union(att(e, 0, true), att(e, 1, true));
                circles_uf.union(att(e, 0, false), att(e, 1, false));
            } else {
                circles_uf.union(att(e, 0, true), att(e, 1, false));
                circles_uf.union(att(e, 0, false), att(e, 1, true));
            }
        }
        // Record, for every attachment, the face whose piece it borders.
        let mut att_face = vec![usize::MAX; 4 * self.edges.len()];
        for (n, node) in self.nodes.iter().enumerate() {
            let deg = node.rotation.len();
            let barrier_positions: Vec<usize> = (0..deg)
                .filter(|&p| barrier[node.rotation[p].0])
                .collect();
            if barrier_positions.is_empty() {
                continue;
            }
            let s = barrier_positions.len();
            for idx in 0..s {
                let here = barrier_positions[idx];
                let next = barrier_positions[(idx + 1) % s];
                let (e_here, side_here) = node.rotation[here];
                let (e_next, side_next) = node.rotation[next];
                // The sector from `here` to `next` joins the ccw attachment
                // of the barrier end at `here` to the cw attachment at `next`.
                let a = att(e_here, side_here as usize, true);
                let b = att(e_next, side_next as usize, false);
                circles_uf.union(a, b);
                att_face[a] = self.face_at(n, here);
                let before_next = (next + deg - 1) % deg;
                att_face[b] = self.face_at(n, before_next);
            }
        }
        let mut circle_roots: Vec<(usize, usize)> = Vec::new();
        for a in 0..4 * self.edges.len() {
            if !active[a] {
                continue;
            }
            let root = circles_uf.find(a);
            debug_assert_ne!(att_face[a], usize::MAX);
            circle_roots.push((root, piece_of_face[att_face[a]]));
        }
        circle_roots.sort_unstable();
        circle_roots.dedup();
        let mut circles = vec![0usize; count];
        let mut seen_root = std::collections::BTreeMap::new();
        for &(root, piece) in &circle_roots {
            let entry = seen_root.entry(root).or_insert(piece);
            debug_assert_eq!(*entry, piece, "boundary circle straddles pieces");
            let _ = entry;
        }
        for (_, piece) in seen_root {
            circles[piece] += 1;
        }

        let pieces = (0..count)
            .map(|i| PieceInfo {
                chi: vertices[i] + face_counts[i] as i64 - edges_interior[i] - boundary_sides[i],
                boundary_circles: circles[i],
                face_count: face_counts[i],
            })
            .collect();
        PieceAnalysis { piece_of_face, pieces }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Torus map: one 4-valent node, a loop for each of the two curves.
    fn one_crossing_torus() -> SurfaceMap {
        SurfaceMap::assemble(
            vec![(
                NodeKind::Crossing { v_curve: 0, w_curve: 1 },
                vec![(0, 0), (1, 0), (0, 1), (1, 1)],
            )],
            vec![
                (EdgeKind::CurveArc { curve: 0 }, false),
                (EdgeKind::CurveArc { curve: 1 }, false),
            ],
        )
        .unwrap()
    }

    /// Theta graph on the sphere: 2 nodes, 3 parallel edges, 3 faces.
    fn sphere_theta() -> SurfaceMap {
        SurfaceMap::assemble(
            vec![
                (NodeKind::PathVertex, vec![(0, 0), (1, 0), (2, 0)]),
                (NodeKind::PathVertex, vec![(0, 1), (2, 1), (1, 1)]),
            ],
            vec![
                (EdgeKind::Seam, false),
                (EdgeKind::Seam, false),
                (EdgeKind::Seam, false),
            ],
        )
        .unwrap()
    }

    #[test]
    fn torus_map_census() {
        let m = one_crossing_torus();
        assert_eq!(m.face_count(), 1);
        assert_eq!(m.euler_characteristic(), 0);
        assert_eq!(m.surface(), SurfaceType::TORUS);
    }

    #[test]
    fn flipped_loop_gives_klein_bottle() {
        let m = SurfaceMap::assemble(
            vec![(
                NodeKind::Crossing { v_curve: 0, w_curve: 1 },
                vec![(0, 0), (1, 0), (0, 1), (1, 1)],
            )],
            vec![
                (EdgeKind::CurveArc { curve: 0 }, false),
                (EdgeKind::CurveArc { curve: 1 }, true),
            ],
        )
        .unwrap();
        assert_eq!(m.euler_characteristic(), 0);
        assert!(!m.surface().orientable);
    }

    #[test]
    fn theta_map_census() {
        let m = sphere_theta();
        assert_eq!(m.face_count(), 3);
        assert_eq!(m.surface(), SurfaceType::SPHERE);
    }

    #[test]
    fn theta_same_rotation_is_torus() {
        let m = SurfaceMap::assemble(
            vec![
                (NodeKind::PathVertex, vec![(0, 0), (1, 0), (2, 0)]),
                (NodeKind::PathVertex, vec![(0, 1), (1, 1), (2, 1)]),
            ],
            vec![
                (EdgeKind::Seam, false),
                (EdgeKind::Seam, false),
                (EdgeKind::Seam, false),
            ],
        )
        .unwrap();
        assert_eq!(m.surface(), SurfaceType::TORUS);
    }

    #[test]
    fn cut_sphere_along_single_arc_gives_disk() {
        let m = sphere_theta();
        let analysis = m.analyze(&[true, false, false]);
        assert_eq!(analysis.pieces.len(), 1);
        let piece = &analysis.pieces[0];
        assert_eq!(piece.chi, 1);
        assert_eq!(piece.boundary_circles, 1);
        assert!(piece.is_disk());
    }

    #[test]
    fn cut_sphere_along_circle_gives_two_disks() {
        // Two-node map with two parallel edges forming a circle plus a chord
        // inside each face would be overkill; the bigon circle alone suffices:
        // cutting the sphere along a bigon's two edges yields two disks.
        let m = SurfaceMap::assemble(
            vec![
                (NodeKind::PathVertex, vec![(0, 0), (1, 0)]),
                (NodeKind::PathVertex, vec![(0, 1), (1, 1)]),
            ],
            vec![(EdgeKind::Seam, false), (EdgeKind::Seam, false)],
        )
        .unwrap();
        assert_eq!(m.surface(), SurfaceType::SPHERE);
        let analysis = m.analyze(&[true, true]);
        assert_eq!(analysis.pieces.len(), 2);
        for piece in &analysis.pieces {
            assert!(piece.is_disk(), "piece {piece:?} should be a disk");
        }
    }

    #[test]
    fn cut_torus_along_essential_curve_gives_annulus() {
        let m = one_crossing_torus();
        // Barrier: the w-loop (edge 1).  Cutting the torus along an essential
        // simple closed curve that meets v once yields an annulus.
        let analysis = m.analyze(&[false, true]);
        assert_eq!(analysis.pieces.len(), 1);
        let piece = &analysis.pieces[0];
        assert_eq!(piece.chi, 0);
        assert_eq!(piece.boundary_circles, 2);
        assert!(piece.is_genus_zero());
        assert!(!piece.is_disk());
    }

    #[test]
    fn cut_torus_along_both_curves_gives_square() {
        let m = one_crossing_torus();
        let analysis = m.analyze(&[true, true]);
        assert_eq!(analysis.pieces.len(), 1);
        let piece = &analysis.pieces[0];
        assert_eq!(piece.chi, 1);
        assert_eq!(piece.boundary_circles, 1);
        assert!(piece.is_disk());
    }

    #[test]
    fn empty_barrier_recovers_whole_surface() {
        let m = one_crossing_torus();
        let analysis = m.analyze(&[false, false]);
        assert_eq!(analysis.pieces.len(), 1);
        assert_eq!(analysis.pieces[0].chi, 0);
        assert_eq!(analysis.pieces[0].boundary_circles, 0);
        assert!(!analysis.pieces[0].is_genus_zero());
    }

    #[test]
    fn disconnected_map_rejected() {
        let err = SurfaceMap::assemble(
            vec![
                (NodeKind::PathVertex, vec![(0, 0), (0, 1)]),
                (NodeKind::PathVertex, vec![(1, 0), (1, 1)]),
            ],
            vec![(EdgeKind::Seam, false), (EdgeKind::Seam, false)],
        )
        .unwrap_err();
        assert!(err.to_string().contains("disconnected"));
    }
}
