//! The 3-dimensional pseudocomplex spanned by a 4-coloured graph, and the
//! desingularization of singular-regular graphs.
//!
//! A graph spans a pseudocomplex with one abstract tetrahedron per vertex.
//! Tetrahedron corners are labelled by the four colours; an `i`-coloured edge
//! glues the two tetrahedra along the faces opposite their colour-`i`
//! corners, matching corners of equal colour.  Vertices of the complex are
//! the equivalence classes of corners under these gluings — the colour-`c`
//! classes correspond to the `ĉ`-residues of the graph, and the link of such
//! a vertex is the surface of its residue.
//!
//! A singular-regular graph (all singular links at colour 0) is repaired by
//! subdividing every tetrahedron incident to a singular vertex and removing
//! the open star of that vertex.  The subdivision is a fixed three-step
//! sequence of edge splits — trisect the 0–2 edges at the singular corner,
//! bisect the 0–3 edges there (relabelling the singular corner to colour 3),
//! then trisect the new 3–1 edges — after which the star is a union of whole
//! small tetrahedra.  Each affected tetrahedron ends up split into six
//! pieces, five of which survive star removal; the dual of the surviving
//! complex is again a 4-coloured graph, now a gem with boundary.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, GraphClassTag, UnionFind};
use crate::surface::SurfaceType;

/// Provenance of a corner of the (possibly subdivided) complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generation {
    /// A corner of the original complex.
    Original,
    /// A point created by the first trisection round (single prime).
    Prime,
    /// A point created by the bisection or second trisection round
    /// (double prime).
    DoublePrime,
    /// The former singular vertex after its relabelling to colour 3.
    Singular,
}

impl fmt::Display for Generation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generation::Original => write!(f, ""),
            Generation::Prime => write!(f, "'"),
            Generation::DoublePrime => write!(f, "''"),
            Generation::Singular => write!(f, "*"),
        }
    }
}

/// One corner of a tetrahedron.  Its colour is implicit in its slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corner {
    /// Which subdivision round created the corner.
    pub generation: Generation,
    /// Marks corners at a singular vertex scheduled for removal.
    pub flagged: bool,
}

impl Corner {
    fn original() -> Corner {
        Corner {
            generation: Generation::Original,
            flagged: false,
        }
    }

    fn fresh(generation: Generation) -> Corner {
        Corner {
            generation,
            flagged: false,
        }
    }
}

/// Where a surviving tetrahedron piece sits inside the subdivided model of
/// its source tetrahedron, identified by its corner generations in colour
/// order 0, 1, 2, 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PieceKind {
    /// `(0″, 1′, 2′, 3″)` — second layer of the tower at the singular
    /// corner; after star removal these pieces carry the boundary faces.
    Rim,
    /// `(0″, 1, 2′, 3″)` — third tower layer, containing the original
    /// colour-1 corner.
    Collar,
    /// `(0″, 1, 2′, 3)` — the piece below the bisection midpoint.
    Basin,
    /// `(0′, 1, 2′, 3)` — the middle piece of the trisected 0–2 edge.
    Belt,
    /// `(0′, 1, 2, 3)` — the piece at the original colour-2 corner.
    FarCorner,
    /// An unaffected source tetrahedron, kept whole.
    Whole,
    /// `(0″, 1′, 2′, 3*)` — the piece at the singular vertex itself; removed
    /// with the open star and never present in a desingularized complex.
    Apex,
}

impl PieceKind {
    /// Recovers the piece kind from corner generations, if they match one of
    /// the shapes produced by the desingularization pipeline.
    pub fn from_generations(gens: [Generation; 4]) -> Option<PieceKind> {
        use Generation::{DoublePrime as D, Original as O, Prime as P, Singular as S};
        match gens {
            [O, O, O, O] => Some(PieceKind::Whole),
            [D, P, P, S] => Some(PieceKind::Apex),
            [D, P, P, D] => Some(PieceKind::Rim),
            [D, O, P, D] => Some(PieceKind::Collar),
            [D, O, P, O] => Some(PieceKind::Basin),
            [P, O, P, O] => Some(PieceKind::Belt),
            [P, O, O, O] => Some(PieceKind::FarCorner),
            _ => None,
        }
    }
}

impl fmt::Display for PieceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PieceKind::Rim => "rim",
            PieceKind::Collar => "collar",
            PieceKind::Basin => "basin",
            PieceKind::Belt => "belt",
            PieceKind::FarCorner => "far-corner",
            PieceKind::Whole => "whole",
            PieceKind::Apex => "apex",
        };
        write!(f, "{s}")
    }
}

/// A vertex class of the complex: a set of corners identified by gluings.
#[derive(Clone, Debug)]
pub struct VertexClass {
    /// The colour slot of every member.
    pub colour: Colour,
    /// The shared generation tag.
    pub generation: Generation,
    /// Members as `(tetrahedron, colour slot)`, ascending.
    pub members: Vec<(usize, Colour)>,
}

/// A 3-pseudocomplex of abstract tetrahedra with colour-matched face gluings.
///
/// `gluing(t, c) = Some(u)` means the face of `t` opposite its colour-`c`
/// corner is glued to the face of `u` opposite *its* colour-`c` corner, with
/// the remaining corners matched by colour.  `None` marks a boundary face.
#[derive(Clone, Debug)]
pub struct Pseudocomplex {
    corners: Vec<[Corner; 4]>,
    gluings: Vec<[Option<usize>; 4]>,
    /// For each tetrahedron, the graph vertex it descends from.
    sources: Vec<usize>,
}

impl Pseudocomplex {
    /// Builds the complex spanned by a coloured graph: one tetrahedron per
    /// graph vertex, glued along faces according to the edges.
    pub fn from_graph(graph: &ColouredGraph) -> Pseudocomplex {
        let n = graph.vertex_count();
        let corners = vec![[Corner::original(); 4]; n];
        let mut gluings = vec![[None; 4]; n];
        for t in 0..n {
            for c in Colour::ALL {
                gluings[t][c.index()] = graph.partner(t, c);
            }
        }
        Pseudocomplex {
            corners,
            gluings,
            sources: (0..n).collect(),
        }
    }

    /// Number of tetrahedra.
    pub fn tetrahedron_count(&self) -> usize {
        self.corners.len()
    }

    /// The corner of tetrahedron `t` at colour slot `c`.
    pub fn corner(&self, t: usize, c: Colour) -> Corner {
        self.corners[t][c.index()]
    }

    /// The generations of the corners of `t` in colour order.
    pub fn generations(&self, t: usize) -> [Generation; 4] {
        std::array::from_fn(|i| self.corners[t][i].generation)
    }

    /// The tetrahedron glued opposite the colour-`c` corner of `t`.
    pub fn gluing(&self, t: usize, c: Colour) -> Option<usize> {
        self.gluings[t][c.index()]
    }

    /// The graph vertex that tetrahedron `t` descends from.
    pub fn source(&self, t: usize) -> usize {
        self.sources[t]
    }

    /// Boundary faces as `(tetrahedron, opposite colour)`.
    pub fn boundary_faces(&self) -> Vec<(usize, Colour)> {
        let mut out = Vec::new();
        for t in 0..self.tetrahedron_count() {
            for c in Colour::ALL {
                if self.gluings[t][c.index()].is_none() {
                    out.push((t, c));
                }
            }
        }
        out
    }

    /// Class id per `(tetrahedron, colour slot)` corner, plus the class count.
    fn corner_class_ids(&self) -> (Vec<[usize; 4]>, usize) {
        let n = self.tetrahedron_count();
        let mut uf = UnionFind::new(4 * n);
        for t in 0..n {
            for c in Colour::ALL {
                if let Some(u) = self.gluings[t][c.index()] {
                    for s in Colour::ALL {
                        if s != c {
                            uf.union(4 * t + s.index(), 4 * u + s.index());
                        }
                    }
                }
            }
        }
        let mut roots: Vec<usize> = (0..4 * n).map(|i| uf.find(i)).collect();
        let mut sorted = roots.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let count = sorted.len();
        for r in roots.iter_mut() {
            *r = sorted.binary_search(r).expect("root");
        }
        let ids = (0..n)
            .map(|t| std::array::from_fn(|s| roots[4 * t + s]))
            .collect();
        (ids, count)
    }

    /// The vertex classes of the complex, ordered by least member.
    ///
    /// # Errors
    ///
    /// Fails with a consistency error if a class mixes colours or
    /// generations, which would indicate a corrupted complex.
    pub fn vertex_classes(&self) -> Result<Vec<VertexClass>> {
        let (ids, count) = self.corner_class_ids();
        let mut classes: Vec<Option<VertexClass>> = vec![None; count];
        for t in 0..self.tetrahedron_count() {
            for c in Colour::ALL {
                let id = ids[t][c.index()];
                let corner = self.corners[t][c.index()];
                match &mut classes[id] {
                    None => {
                        classes[id] = Some(VertexClass {
                            colour: c,
                            generation: corner.generation,
                            members: vec![(t, c)],
                        });
                    }
                    Some(class) => {
                        if class.colour != c || class.generation != corner.generation {
                            return Err(Error::consistency(format!(
                                "vertex class mixes labels: ({}, {:?}) vs ({}, {:?})",
                                class.colour, class.generation, c, corner.generation
                            )));
                        }
                        class.members.push((t, c));
                    }
                }
            }
        }
        Ok(classes.into_iter().map(|c| c.expect("nonempty class")).collect())
    }

    /// Number of edge classes whose corners have colours `{a, b}`.
    ///
    /// Each tetrahedron has exactly one such edge; two are identified when
    /// their tetrahedra are glued along a face containing both endpoints,
    /// i.e. opposite a colour not in `{a, b}`.
    fn edge_class_count(&self, a: Colour, b: Colour) -> usize {
        let mut uf = self.edge_class_uf(a, b);
        uf.component_count()
    }

    fn edge_class_uf(&self, a: Colour, b: Colour) -> UnionFind {
        let n = self.tetrahedron_count();
        let mut uf = UnionFind::new(n);
        for t in 0..n {
            for c in Colour::ALL {
                if c != a && c != b {
                    if let Some(u) = self.gluings[t][c.index()] {
                        uf.union(t, u);
                    }
                }
            }
        }
        uf
    }

    /// Number of face classes (each glued pair counts once, each boundary
    /// face once).
    fn face_count(&self) -> usize {
        let mut doubled = 0;
        for t in 0..self.tetrahedron_count() {
            for c in Colour::ALL {
                doubled += match self.gluings[t][c.index()] {
                    Some(_) => 1,
                    None => 2,
                };
            }
        }
        doubled / 2
    }

    /// Euler characteristic `V − E + F − T` of the complex.
    pub fn euler_characteristic(&self) -> Result<i64> {
        let v = self.vertex_classes()?.len() as i64;
        let mut e = 0i64;
        for i in 0..4u8 {
            for j in (i + 1)..4 {
                e += self.edge_class_count(Colour::new(i)?, Colour::new(j)?) as i64;
            }
        }
        let f = self.face_count() as i64;
        let t = self.tetrahedron_count() as i64;
        Ok(v - e + f - t)
    }

    /// Structural validation: gluings are colour-consistent involutions
    /// without self-gluings, and every vertex class carries uniform labels.
    pub fn validate(&self) -> Result<()> {
        let n = self.tetrahedron_count();
        for t in 0..n {
            for c in Colour::ALL {
                if let Some(u) = self.gluings[t][c.index()] {
                    if u >= n {
                        return Err(Error::consistency(format!(
                            "gluing of tetrahedron {t} opposite colour {c} out of range"
                        )));
                    }
                    if u == t {
                        return Err(Error::consistency(format!(
                            "tetrahedron {t} glued to itself opposite colour {c}"
                        )));
                    }
                    if self.gluings[u][c.index()] != Some(t) {
                        return Err(Error::consistency(format!(
                            "gluing opposite colour {c} between {t} and {u} is not mutual"
                        )));
                    }
                }
            }
        }
        self.vertex_classes()?;
        Ok(())
    }

    /// Reconstructs the dual coloured graph: one vertex per tetrahedron,
    /// one `c`-edge per gluing opposite colour `c`.
    ///
    /// Fails if a boundary face sits opposite a colour other than 3, since
    /// coloured graphs require total matchings for colours 0–2.
    pub fn to_graph(&self) -> Result<ColouredGraph> {
        let n = self.tetrahedron_count();
        let mut matchings: [Vec<Option<usize>>; 4] = std::array::from_fn(|_| vec![None; n]);
        for t in 0..n {
            for c in Colour::ALL {
                matchings[c.index()][t] = self.gluings[t][c.index()];
            }
        }
        ColouredGraph::from_matchings(matchings, None)
    }

    /// Splits every `{x, y}`-coloured edge whose colour-`x` corner is
    /// flagged, stacking `points.len() + 1` pieces along the edge.
    ///
    /// For a trisection `points` holds the two new corners ordered from the
    /// `x` end: the first must take colour `y`, the second colour `x`.  For a
    /// bisection `points` holds one corner of colour `x` and `relabel` must
    /// be true: the flagged `x` corner is relabelled to colour `y` with
    /// generation [`Generation::Singular`] to keep piece colours distinct.
    fn subdivide_flagged(
        &self,
        x: Colour,
        y: Colour,
        points: &[(Colour, Generation)],
        relabel: bool,
    ) -> Result<Pseudocomplex> {
        match points {
            [(p, _), (q, _)] if !relabel => {
                if *p != y || *q != x {
                    return Err(Error::precondition(
                        "trisection points must take the far-end colours",
                    ));
                }
            }
            [(m, _)] if relabel => {
                if *m != x {
                    return Err(Error::precondition(
                        "bisection midpoint must take the near-end colour",
                    ));
                }
            }
            _ => {
                return Err(Error::precondition(
                    "subdivision needs two points, or one point with a relabel",
                ))
            }
        }
        let n = self.tetrahedron_count();
        let split: Vec<bool> = (0..n).map(|t| self.corners[t][x.index()].flagged).collect();
        // Splitting must be constant on edge classes, otherwise a face
        // containing the edge would glue a split tetrahedron to a whole one.
        let mut uf = self.edge_class_uf(x, y);
        for t in 0..n {
            if split[t] != split[uf.find(t)] {
                return Err(Error::consistency(
                    "edge selection is not constant on an edge class",
                ));
            }
        }
        let pieces_per_split = points.len() + 1;
        let mut base = vec![0usize; n];
        let mut total = 0usize;
        for t in 0..n {
            base[t] = total;
            total += if split[t] { pieces_per_split } else { 1 };
        }
        let mut corners: Vec<[Corner; 4]> = Vec::with_capacity(total);
        let mut sources: Vec<usize> = Vec::with_capacity(total);
        for t in 0..n {
            if !split[t] {
                corners.push(self.corners[t]);
                sources.push(self.sources[t]);
                continue;
            }
            let old = self.corners[t];
            if points.len() == 2 {
                // Trisection: [x-corner, p | p, q | q, y-corner].
                let p = Corner::fresh(points[0].1);
                let q = Corner::fresh(points[1].1);
                let mut p1 = old;
                p1[y.index()] = p;
                let mut p2 = old;
                p2[x.index()] = q;
                p2[y.index()] = p;
                let mut p3 = old;
                p3[x.index()] = q;
                corners.extend([p1, p2, p3]);
            } else {
                // Bisection with relabel: [x-corner*, m | m, y-corner];
                // the flagged x corner moves to slot y.
                let m = Corner::fresh(points[0].1);
                let moved = Corner {
                    generation: Generation::Singular,
                    flagged: self.corners[t][x.index()].flagged,
                };
                let mut p1 = old;
                p1[x.index()] = m;
                p1[y.index()] = moved;
                let mut p2 = old;
                p2[x.index()] = m;
                corners.extend([p1, p2]);
            }
            for _ in 0..pieces_per_split {
                sources.push(self.sources[t]);
            }
        }
        let mut gluings: Vec<[Option<usize>; 4]> = vec![[None; 4]; total];
        for t in 0..n {
            if !split[t] {
                for c in Colour::ALL {
                    gluings[base[t]][c.index()] = match self.gluings[t][c.index()] {
                        None => None,
                        Some(u) if !split[u] => Some(base[u]),
                        Some(u) => {
                            // A whole tetrahedron glued to a split one: only
                            // legal along faces avoiding the split edge.
                            if c == x {
                                // The far piece keeps the original face.
                                Some(base[u] + pieces_per_split - 1)
                            } else if c == y && points.len() == 2 {
                                Some(base[u])
                            } else {
                                return Err(Error::consistency(format!(
                                    "face opposite colour {c} glues a whole tetrahedron to a split one"
                                )));
                            }
                        }
                    };
                }
                continue;
            }
            // Helper resolving the neighbour piece for inherited gluings.
            let external = |c: Colour, pick_split: usize| -> Option<usize> {
                self.gluings[t][c.index()].map(|u| {
                    if split[u] {
                        base[u] + pick_split
                    } else {
                        base[u]
                    }
                })
            };
            if points.len() == 2 {
                let (p1, p2, p3) = (base[t], base[t] + 1, base[t] + 2);
                // Internal stack gluings.
                gluings[p1][x.index()] = Some(p2);
                gluings[p2][x.index()] = Some(p1);
                gluings[p2][y.index()] = Some(p3);
                gluings[p3][y.index()] = Some(p2);
                // Faces avoiding the edge transfer whole.
                gluings[p1][y.index()] = external(y, 0);
                gluings[p3][x.index()] = external(x, pieces_per_split - 1);
                // Faces containing the edge split piecewise.
                for c in Colour::ALL {
                    if c == x || c == y {
                        continue;
                    }
                    match self.gluings[t][c.index()] {
                        None => {}
                        Some(u) if split[u] => {
                            gluings[p1][c.index()] = Some(base[u]);
                            gluings[p2][c.index()] = Some(base[u] + 1);
                            gluings[p3][c.index()] = Some(base[u] + 2);
                        }
                        Some(_) => {
                            return Err(Error::consistency(format!(
                                "face opposite colour {c} glues a split tetrahedron to a whole one"
                            )))
                        }
                    }
                }
            } else {
                let (p1, p2) = (base[t], base[t] + 1);
                // Internal gluing along the face through the midpoint.
                gluings[p1][y.index()] = Some(p2);
                gluings[p2][y.index()] = Some(p1);
                // The original face opposite y now sits opposite the midpoint
                // (colour x) in the first piece — the relabel turned the
                // gluing colour from y into x, so the neighbour must be split
                // too (checked via the class constancy of the y-gluing's
                // neighbour below).
                gluings[p1][x.index()] = match self.gluings[t][y.index()] {
                    None => None,
                    Some(u) if split[u] => Some(base[u]),
                    Some(_) => {
                        return Err(Error::consistency(
                            "bisection relabel would glue faces of different colours",
                        ))
                    }
                };
                gluings[p2][x.index()] = external(x, pieces_per_split - 1);
                for c in Colour::ALL {
                    if c == x || c == y {
                        continue;
                    }
                    match self.gluings[t][c.index()] {
                        None => {}
                        Some(u) if split[u] => {
                            gluings[p1][c.index()] = Some(base[u]);
                            gluings[p2][c.index()] = Some(base[u] + 1);
                        }
                        Some(_) => {
                            return Err(Error::consistency(format!(
                                "face opposite colour {c} glues a split tetrahedron to a whole one"
                            )))
                        }
                    }
                }
            }
        }
        let out = Pseudocomplex {
            corners,
            gluings,
            sources,
        };
        out.validate()?;
        Ok(out)
    }

    /// Removes every tetrahedron with a flagged corner, turning gluings to
    /// removed tetrahedra into boundary faces.
    fn remove_flagged(&self) -> Pseudocomplex {
        let n = self.tetrahedron_count();
        let keep: Vec<bool> = (0..n)
            .map(|t| self.corners[t].iter().all(|c| !c.flagged))
            .collect();
        let mut new_id = vec![usize::MAX; n];
        let mut next = 0;
        for t in 0..n {
            if keep[t] {
                new_id[t] = next;
                next += 1;
            }
        }
        let mut corners = Vec::with_capacity(next);
        let mut gluings = Vec::with_capacity(next);
        let mut sources = Vec::with_capacity(next);
        for t in 0..n {
            if !keep[t] {
                continue;
            }
            corners.push(self.corners[t]);
            sources.push(self.sources[t]);
            let mut row = [None; 4];
            for c in Colour::ALL {
                row[c.index()] = self.gluings[t][c.index()].and_then(|u| {
                    if keep[u] {
                        Some(new_id[u])
                    } else {
                        None
                    }
                });
            }
            gluings.push(row);
        }
        Pseudocomplex {
            corners,
            gluings,
            sources,
        }
    }

    /// Reorders tetrahedra by the given permutation: entry `k` of `order`
    /// names the old tetrahedron that becomes the new tetrahedron `k`.
    fn reordered(&self, order: &[usize]) -> Pseudocomplex {
        let mut inverse = vec![usize::MAX; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let corners = order.iter().map(|&t| self.corners[t]).collect();
        let sources = order.iter().map(|&t| self.sources[t]).collect();
        let gluings = order
            .iter()
            .map(|&t| {
                let mut row = [None; 4];
                for c in Colour::ALL {
                    row[c.index()] = self.gluings[t][c.index()].map(|u| inverse[u]);
                }
                row
            })
            .collect();
        Pseudocomplex {
            corners,
            gluings,
            sources,
        }
    }
}

/// Euler characteristic of the complex spanned by a graph, computed from the
/// residue census: `Σ g_ĉ − Σ g_ij + (#edges + #boundary vertices) − #vertices`.
pub fn euler_characteristic(graph: &ColouredGraph) -> i64 {
    let census = graph.residue_census();
    let complements = census.complement_total() as i64;
    let pairs = census.pair_total() as i64;
    let faces = graph.edge_count() as i64 + graph.boundary_vertices().len() as i64;
    complements - pairs + faces - graph.vertex_count() as i64
}

/// A vertex of the spanned complex whose link is neither a sphere nor a disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularVertex {
    /// The colour of the vertex (its corners' colour slot).
    pub colour: Colour,
    /// Index of the corresponding `ĉ`-residue in residue order.
    pub residue: usize,
    /// The link surface.
    pub link: SurfaceType,
}

/// All singular vertices of the complex spanned by a graph.
pub fn singular_vertices(graph: &ColouredGraph) -> Vec<SingularVertex> {
    let mut out = Vec::new();
    for c in Colour::ALL {
        for (idx, r) in graph.complement_residues(c).iter().enumerate() {
            let s = graph
                .surface_of_residue(r)
                .expect("validated graph has surface residues");
            if !s.is_sphere() && !s.is_disk() {
                out.push(SingularVertex {
                    colour: c,
                    residue: idx,
                    link: s,
                });
            }
        }
    }
    out
}

/// Caps the boundary of a gem along colour `i`: boundary vertices joined by
/// an `{i,3}`-path receive a direct colour-3 edge.  Dually this collapses
/// each boundary component by folding it onto the colour-`i` direction.
///
/// The result is regular; classify it to learn whether the capping produced
/// a closed gem or a singular-regular graph.
pub fn cap_off(graph: &ColouredGraph, i: Colour) -> Result<ColouredGraph> {
    if i == Colour::BOUNDARY {
        return Err(Error::precondition(
            "capping colour must be one of 0, 1, 2",
        ));
    }
    if graph.is_regular() {
        return Err(Error::precondition(
            "graph is already regular; nothing to cap",
        ));
    }
    let n = graph.vertex_count();
    let mut matchings: [Vec<Option<usize>>; 4] = std::array::from_fn(|ci| {
        (0..n)
            .map(|v| graph.partner(v, Colour::ALL[ci]))
            .collect()
    });
    for (u, v) in graph.boundary_pairing(i)? {
        matchings[3][u] = Some(v);
        matchings[3][v] = Some(u);
    }
    let name = graph
        .name()
        .map(|s| format!("{s} capped along colour {i}"));
    ColouredGraph::from_matchings(matchings, name)
}

/// The result of desingularizing a singular-regular graph.
#[derive(Clone, Debug)]
pub struct Desingularization {
    /// The dual graph of the repaired complex: a gem with boundary.
    pub graph: ColouredGraph,
    /// For each vertex of `graph`, the source vertex of the input graph its
    /// tetrahedron descends from.
    pub sources: Vec<usize>,
    /// For each vertex of `graph`, where its tetrahedron sits in the
    /// subdivision of its source.
    pub kinds: Vec<PieceKind>,
    /// The repaired complex itself.
    pub complex: Pseudocomplex,
}

/// Repairs a singular-regular graph (singular colour 0) by subdividing the
/// complex around its singular vertices and removing their open stars.
///
/// Tetrahedra incident to a singular vertex split into six pieces; the five
/// surviving ones appear in the output ordered by source vertex and then by
/// piece kind ([`PieceKind::Rim`], [`PieceKind::Collar`], [`PieceKind::Basin`],
/// [`PieceKind::Belt`], [`PieceKind::FarCorner`]), so an input whose vertices
/// are all affected yields the pieces of source `x` at indices `5x..5x+5`.
///
/// Postconditions checked at runtime: the subdivision steps preserve the
/// Euler characteristic; the star removal changes it by `χ(link) − 1` per
/// singular vertex; the output is a gem whose boundary components match the
/// removed links; and the piece census is five per affected vertex plus one
/// per unaffected vertex.
pub fn desingularize(graph: &ColouredGraph) -> Result<Desingularization> {
    let class = graph.classify();
    match class.tag {
        GraphClassTag::SingularRegular(c) if c == Colour::new(0).unwrap() => {}
        GraphClassTag::SingularRegular(c) => {
            return Err(Error::precondition(format!(
                "desingularization expects singular colour 0, found colour {c}"
            )))
        }
        tag => {
            return Err(Error::precondition(format!(
                "desingularization expects a singular-regular graph, got: {tag}"
            )))
        }
    }
    // Identify the singular 0̂-residues and their link surfaces.
    let singular: Vec<(usize, SurfaceType)> = class
        .residue_surfaces
        .iter()
        .find(|(c, _)| *c == Colour::new(0).unwrap())
        .map(|(_, surfaces)| {
            surfaces
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_sphere())
                .map(|(i, s)| (i, *s))
                .collect()
        })
        .unwrap_or_default();
    if singular.is_empty() {
        return Err(Error::consistency(
            "singular-regular graph without singular residues",
        ));
    }
    let zero_hat = Colour::new(0).unwrap().complement();
    let residue_ids = graph.vertex_residue_ids(&zero_hat);
    let singular_residues: Vec<usize> = singular.iter().map(|(i, _)| *i).collect();

    let mut complex = Pseudocomplex::from_graph(graph);
    // Flag the corners at singular vertices.
    for t in 0..complex.tetrahedron_count() {
        if singular_residues.contains(&residue_ids[t]) {
            complex.corners[t][0].flagged = true;
        }
    }
    let affected = complex
        .corners
        .iter()
        .filter(|row| row[0].flagged)
        .count();
    let chi_before = complex.euler_characteristic()?;

    let c = |v: u8| Colour::new(v).unwrap();
    use Generation::{DoublePrime, Prime};
    let steps: [(Colour, Colour, Vec<(Colour, Generation)>, bool); 3] = [
        (c(0), c(2), vec![(c(2), Prime), (c(0), Prime)], false),
        (c(0), c(3), vec![(c(0), DoublePrime)], true),
        (c(3), c(1), vec![(c(1), Prime), (c(3), DoublePrime)], false),
    ];
    for (x, y, points, relabel) in steps {
        complex = complex.subdivide_flagged(x, y, &points, relabel)?;
        let chi = complex.euler_characteristic()?;
        if chi != chi_before {
            return Err(Error::consistency(format!(
                "subdivision changed the Euler characteristic: {chi_before} -> {chi}"
            )));
        }
    }

    let removed_stars: i64 = singular
        .iter()
        .map(|(_, link)| 1 - link.euler_characteristic())
        .sum();
    let repaired = complex.remove_flagged();
    repaired.validate()?;
    let chi_after = repaired.euler_characteristic()?;
    if chi_after != chi_before - removed_stars {
        return Err(Error::consistency(format!(
            "star removal produced χ = {chi_after}, expected {}",
            chi_before - removed_stars
        )));
    }

    // Canonical order: by source vertex, then by piece kind.
    let mut kinds = Vec::with_capacity(repaired.tetrahedron_count());
    for t in 0..repaired.tetrahedron_count() {
        let kind = PieceKind::from_generations(repaired.generations(t)).ok_or_else(|| {
            Error::consistency(format!(
                "tetrahedron {t} has unrecognised corner generations {:?}",
                repaired.generations(t)
            ))
        })?;
        kinds.push(kind);
    }
    let mut order: Vec<usize> = (0..repaired.tetrahedron_count()).collect();
    order.sort_by_key(|&t| (repaired.sources[t], kinds[t]));
    let repaired = repaired.reordered(&order);
    let kinds: Vec<PieceKind> = order.iter().map(|&t| kinds[t]).collect();

    let expected = 5 * affected + (graph.vertex_count() - affected);
    if repaired.tetrahedron_count() != expected {
        return Err(Error::consistency(format!(
            "expected {expected} surviving pieces, found {}",
            repaired.tetrahedron_count()
        )));
    }

    let mut out_graph = repaired.to_graph()?;
    if let Some(name) = graph.name() {
        out_graph = out_graph.with_name(format!("{name} desingularized"));
    }
    if out_graph.classify().tag != GraphClassTag::BoundaryGem {
        return Err(Error::consistency(
            "desingularized graph is not a gem with boundary",
        ));
    }
    // Boundary components must realise the removed links.
    let mut expected_links: Vec<SurfaceType> = singular.iter().map(|(_, s)| *s).collect();
    expected_links.sort();
    let mut found_links: Vec<SurfaceType> = out_graph
        .boundary_components()?
        .iter()
        .map(|b| b.surface)
        .collect();
    found_links.sort();
    if expected_links != found_links {
        return Err(Error::consistency(format!(
            "boundary components {found_links:?} do not match removed links {expected_links:?}"
        )));
    }

    let sources = repaired.sources.clone();
    Ok(Desingularization {
        graph: out_graph,
        sources,
        kinds,
        complex: repaired,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{
        torus_singularity_graph, two_vertex_ball as ball_gem, two_vertex_sphere as sphere_gem,
    };
    use crate::graph::GraphClassTag;

    #[test]
    fn complex_of_sphere_gem() {
        let k = Pseudocomplex::from_graph(&sphere_gem());
        assert_eq!(k.tetrahedron_count(), 2);
        k.validate().unwrap();
        assert_eq!(k.euler_characteristic().unwrap(), 0);
        assert_eq!(k.vertex_classes().unwrap().len(), 4);
        assert!(k.boundary_faces().is_empty());
        assert_eq!(euler_characteristic(&sphere_gem()), 0);
    }

    #[test]
    fn complex_of_ball_gem() {
        let g = ball_gem();
        let k = Pseudocomplex::from_graph(&g);
        k.validate().unwrap();
        assert_eq!(k.euler_characteristic().unwrap(), 1);
        assert_eq!(k.boundary_faces().len(), 2);
        assert_eq!(euler_characteristic(&g), 1);
        // Complex and census formulas agree.
        assert_eq!(
            k.euler_characteristic().unwrap(),
            euler_characteristic(&g)
        );
    }

    #[test]
    fn capping_the_ball_gives_the_sphere() {
        let g = ball_gem();
        for i in [0u8, 1, 2] {
            let capped = cap_off(&g, Colour::new(i).unwrap()).unwrap();
            assert_eq!(capped.classify().tag, GraphClassTag::ClosedGem);
            assert!(crate::graph::iso::colour_preserving_isomorphism(&capped, &sphere_gem())
                .is_some());
        }
        assert!(cap_off(&g, Colour::new(3).unwrap()).is_err());
        assert!(cap_off(&sphere_gem(), Colour::new(0).unwrap()).is_err());
    }

    #[test]
    fn torus_fixture_is_singular_regular() {
        let g = torus_singularity_graph();
        assert_eq!(
            g.classify().tag,
            GraphClassTag::SingularRegular(Colour::new(0).unwrap())
        );
        let singular = singular_vertices(&g);
        assert_eq!(singular.len(), 1);
        assert_eq!(singular[0].colour, Colour::new(0).unwrap());
        assert!(singular[0].link.is_torus());
        assert_eq!(euler_characteristic(&g), 1);
        assert_eq!(
            Pseudocomplex::from_graph(&g).euler_characteristic().unwrap(),
            1
        );
    }

    #[test]
    fn desingularization_of_torus_fixture() {
        let g = torus_singularity_graph();
        let d = desingularize(&g).unwrap();
        // All six source vertices are affected: five pieces each.
        assert_eq!(d.graph.vertex_count(), 30);
        assert_eq!(d.graph.classify().tag, GraphClassTag::BoundaryGem);
        // Pieces arrive in canonical (source, kind) order.
        for x in 0..6 {
            assert_eq!(d.sources[5 * x], x);
            assert_eq!(
                &d.kinds[5 * x..5 * x + 5],
                &[
                    PieceKind::Rim,
                    PieceKind::Collar,
                    PieceKind::Basin,
                    PieceKind::Belt,
                    PieceKind::FarCorner,
                ]
            );
        }
        // The boundary is the removed torus link; the complex now has χ = 0,
        // matching a compact manifold with torus boundary.
        let boundary = d.graph.boundary_components().unwrap();
        assert_eq!(boundary.len(), 1);
        assert!(boundary[0].surface.is_torus());
        assert_eq!(d.complex.euler_characteristic().unwrap(), 0);
        assert_eq!(euler_characteristic(&d.graph), 0);
        // Exactly the rim pieces carry boundary vertices.
        let rims: Vec<usize> = (0..30).filter(|&v| d.kinds[v] == PieceKind::Rim).collect();
        assert_eq!(d.graph.boundary_vertices(), rims);
    }

    #[test]
    fn desingularization_rejects_wrong_classes() {
        assert!(desingularize(&sphere_gem()).is_err());
        assert!(desingularize(&ball_gem()).is_err());
    }

    #[test]
    fn piece_kinds_from_generations() {
        use Generation::{DoublePrime as D, Original as O, Prime as P, Singular as S};
        assert_eq!(
            PieceKind::from_generations([O, O, O, O]),
            Some(PieceKind::Whole)
        );
        assert_eq!(
            PieceKind::from_generations([D, P, P, S]),
            Some(PieceKind::Apex)
        );
        assert_eq!(PieceKind::from_generations([P, P, P, P]), None);
    }
}
