//! 4-coloured graphs: the combinatorial data model for gems.
//!
//! A graph here is a vertex set `0..n` together with one partial matching per
//! colour in `Δ₃ = {0,1,2,3}`.  Matchings for colours 0, 1, 2 are total;
//! colour 3 may leave vertices unmatched — those are the *boundary vertices*
//! and correspond dually to tetrahedra with an unglued face.  Representing
//! edges as per-colour matchings makes the "at most one edge of each colour
//! per vertex" rule unrepresentable rather than merely checked, while still
//! allowing up to four parallel edges between the same pair of vertices.
//!
//! The module provides residues (connected components of colour-restricted
//! subgraphs), the surface recognition used to classify graphs into closed
//! gems, gems with boundary and singular-regular graphs, contractedness,
//! bipartiteness (= orientability of the encoded manifold), boundary
//! structure, and the extended graph used by regular embeddings.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::surface::SurfaceType;

pub mod iso;

/// An edge colour in `Δ₃ = {0,1,2,3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Colour(u8);

impl Colour {
    /// All four colours in ascending order.
    pub const ALL: [Colour; 4] = [Colour(0), Colour(1), Colour(2), Colour(3)];

    /// The boundary colour: the only one whose matching may be partial.
    pub const BOUNDARY: Colour = Colour(3);

    /// Builds a colour, rejecting values outside `{0,1,2,3}`.
    pub fn new(value: u8) -> Result<Colour> {
        if value <= 3 {
            Ok(Colour(value))
        } else {
            Err(Error::invalid(format!("colour {value} outside 0..=3")))
        }
    }

    /// The raw colour value.
    pub fn value(self) -> u8 {
        self.0
    }

    /// The colour as an array index.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The three colours distinct from `self`, ascending.
    pub fn complement(self) -> [Colour; 3] {
        let mut out = [Colour(0); 3];
        let mut k = 0;
        for c in Colour::ALL {
            if c != self {
                out[k] = c;
                k += 1;
            }
        }
        out
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A connected component of the graph restricted to a subset of colours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    /// The colour subset, ascending.
    pub colours: Vec<Colour>,
    /// Member vertices.  For two-colour residues the vertices appear in
    /// traversal order (cycles start at their least vertex and leave it along
    /// the smaller colour; paths start at their least endpoint); otherwise
    /// they are ascending.
    pub vertices: Vec<usize>,
    /// For two-colour residues: whether the component closes into a cycle.
    /// Residues over one or three colours always report `false`.
    pub is_cycle: bool,
}

impl Residue {
    /// Number of member vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// True when the residue has no vertices (never happens for residues of
    /// a real graph; present for completeness).
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Counts of all bicoloured and complementary residues of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueCensus {
    pairs: [[usize; 4]; 4],
    complements: [usize; 4],
}

impl ResidueCensus {
    /// `g_{i,j}`: the number of `{i,j}`-residues (cycles and paths alike).
    pub fn pair(&self, i: Colour, j: Colour) -> usize {
        self.pairs[i.index()][j.index()]
    }

    /// `g_ĉ`: the number of residues over the three colours distinct from `c`.
    pub fn complement(&self, c: Colour) -> usize {
        self.complements[c.index()]
    }

    /// The pair counts as the conventional 6-tuple
    /// `(g₀₁, g₀₂, g₀₃, g₁₂, g₁₃, g₂₃)`.
    pub fn six_tuple(&self) -> [usize; 6] {
        [
            self.pairs[0][1],
            self.pairs[0][2],
            self.pairs[0][3],
            self.pairs[1][2],
            self.pairs[1][3],
            self.pairs[2][3],
        ]
    }

    /// The complement counts as `(g_0̂, g_1̂, g_2̂, g_3̂)`.
    pub fn complement_tuple(&self) -> [usize; 4] {
        self.complements
    }

    /// Sum of all six pair counts.
    pub fn pair_total(&self) -> usize {
        self.six_tuple().iter().sum()
    }

    /// Sum of all four complement counts.
    pub fn complement_total(&self) -> usize {
        self.complements.iter().sum()
    }
}

/// Classification of a 4-coloured graph by the surfaces of its `ĉ`-residues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphClassTag {
    /// Regular, and every `ĉ`-residue is a 2-sphere: the graph encodes a
    /// closed 3-manifold.
    ClosedGem,
    /// Has boundary vertices, and every `ĉ`-residue is a sphere or a disk:
    /// the graph encodes a compact 3-manifold with boundary.
    BoundaryGem,
    /// Regular, and exactly the residues complementary to one colour fail to
    /// be spheres: the graph encodes a singular 3-manifold whose singular
    /// points all carry that colour.
    SingularRegular(Colour),
    /// None of the above.
    Invalid,
}

impl fmt::Display for GraphClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphClassTag::ClosedGem => write!(f, "closed gem"),
            GraphClassTag::BoundaryGem => write!(f, "gem with boundary"),
            GraphClassTag::SingularRegular(c) => write!(f, "singular-regular (colour {c})"),
            GraphClassTag::Invalid => write!(f, "invalid"),
        }
    }
}

/// Full classification report: the tag plus every residue surface that was
/// inspected to produce it, and the residues that disqualify the graph from
/// being a gem (non-sphere for regular graphs, neither sphere nor disk for
/// graphs with boundary).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClass {
    /// The classification outcome.
    pub tag: GraphClassTag,
    /// For each colour `c`, the surfaces of the `ĉ`-residues in residue order.
    pub residue_surfaces: Vec<(Colour, Vec<SurfaceType>)>,
    /// Offending residues as `(colour, residue index, surface)`.
    pub offending: Vec<(Colour, usize, SurfaceType)>,
}

impl GraphClass {
    /// True when the graph is a gem (closed or with boundary).
    pub fn is_gem(&self) -> bool {
        matches!(self.tag, GraphClassTag::ClosedGem | GraphClassTag::BoundaryGem)
    }
}

/// One boundary component of the encoded manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryComponent {
    /// The boundary vertices of the graph lying on this component, ascending.
    pub vertices: Vec<usize>,
    /// The closed surface type of the component.
    pub surface: SurfaceType,
}

/// A 4-coloured graph with total matchings for colours 0, 1, 2 and a
/// possibly partial matching for colour 3.  Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredGraph {
    matchings: [Vec<Option<usize>>; 4],
    name: Option<String>,
}

impl ColouredGraph {
    /// Builds a graph from an edge list `(u, v, colour)`.
    ///
    /// Validates vertex bounds, absence of self-loops, one edge per
    /// `(vertex, colour)` slot, totality of colours 0–2, and connectivity.
    pub fn new(vertex_count: usize, edges: &[(usize, usize, u8)]) -> Result<ColouredGraph> {
        if vertex_count == 0 {
            return Err(Error::invalid("graph must have at least one vertex"));
        }
        let mut matchings: [Vec<Option<usize>>; 4] =
            std::array::from_fn(|_| vec![None; vertex_count]);
        for (pos, &(u, v, c)) in edges.iter().enumerate() {
            let colour = Colour::new(c)
                .map_err(|_| Error::invalid(format!("edge #{pos} ({u},{v},{c}): colour {c} outside 0..=3")))?;
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::invalid(format!(
                    "edge #{pos} ({u},{v},{c}): vertex out of range 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!(
                    "edge #{pos} ({u},{v},{c}): self-loops are not allowed"
                )));
            }
            let m = &mut matchings[colour.index()];
            for &w in [u, v].iter() {
                if m[w].is_some() {
                    return Err(Error::invalid(format!(
                        "edge #{pos} ({u},{v},{c}): vertex {w} already has a colour-{c} edge"
                    )));
                }
            }
            m[u] = Some(v);
            m[v] = Some(u);
        }
        Self::from_matchings(matchings, None)
    }

    /// Builds a graph directly from per-colour matchings.
    pub fn from_matchings(
        matchings: [Vec<Option<usize>>; 4],
        name: Option<String>,
    ) -> Result<ColouredGraph> {
        let n = matchings[0].len();
        if n == 0 {
            return Err(Error::invalid("graph must have at least one vertex"));
        }
        for (c, m) in matchings.iter().enumerate() {
            if m.len() != n {
                return Err(Error::invalid(format!(
                    "colour-{c} matching covers {} vertices, expected {n}",
                    m.len()
                )));
            }
            for (v, &p) in m.iter().enumerate() {
                match p {
                    None => {
                        if c < 3 {
                            return Err(Error::invalid(format!(
                                "vertex {v} is missing its colour-{c} edge (only colour 3 may be partial)"
                            )));
                        }
                    }
                    Some(w) => {
                        if w >= n {
                            return Err(Error::invalid(format!(
                                "vertex {v}: colour-{c} partner {w} out of range"
                            )));
                        }
                        if w == v {
                            return Err(Error::invalid(format!(
                                "vertex {v}: self-loop in colour {c}"
                            )));
                        }
                        if m[w] != Some(v) {
                            return Err(Error::invalid(format!(
                                "colour-{c} matching is not an involution at vertices {v}, {w}"
                            )));
                        }
                    }
                }
            }
        }
        let graph = ColouredGraph { matchings, name };
        if !graph.is_connected() {
            return Err(Error::invalid("graph is not connected"));
        }
        Ok(graph)
    }

    /// Attaches a human-readable name (used in exports and reports).
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// The optional name.
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.matchings[0].len()
    }

    /// The colour-`c` partner of `v`, if any.
    pub fn partner(&self, v: usize, c: Colour) -> Option<usize> {
        self.matchings[c.index()][v]
    }

    /// All edges as `(u, v, colour)` with `u < v`, sorted by colour then `u`.
    pub fn edges(&self) -> Vec<(usize, usize, Colour)> {
        let mut out = Vec::new();
        for c in Colour::ALL {
            for u in 0..self.vertex_count() {
                if let Some(v) = self.partner(u, c) {
                    if u < v {
                        out.push((u, v, c));
                    }
                }
            }
        }
        out
    }

    /// Total number of edges.
    pub fn edge_count(&self) -> usize {
        self.matchings
            .iter()
            .map(|m| m.iter().filter(|p| p.is_some()).count() / 2)
            .sum()
    }

    /// Vertices lacking their colour-3 edge, ascending.
    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.partner(v, Colour::BOUNDARY).is_none())
            .collect()
    }

    /// True when every vertex has all four colours (no boundary vertices).
    pub fn is_regular(&self) -> bool {
        self.matchings[3].iter().all(|p| p.is_some())
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for c in Colour::ALL {
                if let Some(w) = self.partner(v, c) {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
        }
        count == n
    }

    /// Maps every vertex to the index of its residue over `colours`, where
    /// indices follow the deterministic order of [`ColouredGraph::residues`]
    /// (components sorted by least member vertex).
    pub fn vertex_residue_ids(&self, colours: &[Colour]) -> Vec<usize> {
        let n = self.vertex_count();
        let mut id = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if id[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            id[start] = next;
            while let Some(v) = stack.pop() {
                for &c in colours {
                    if let Some(w) = self.partner(v, c) {
                        if id[w] == usize::MAX {
                            id[w] = next;
                            stack.push(w);
                        }
                    }
                }
            }
            next += 1;
        }
        id
    }

    /// Connected components of the graph restricted to `colours`.
    ///
    /// Components are ordered by least member vertex; two-colour residues
    /// carry their vertices in traversal order and report whether they close
    /// into a cycle.
    pub fn residues(&self, colours: &[Colour]) -> Vec<Residue> {
        let mut cols: Vec<Colour> = colours.to_vec();
        cols.sort();
        cols.dedup();
        assert!(
            !cols.is_empty() && cols.len() <= 3,
            "residues over {} colours are not defined",
            cols.len()
        );
        let ids = self.vertex_residue_ids(&cols);
        let count = ids.iter().copied().max().map_or(0, |m| m + 1);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (v, &i) in ids.iter().enumerate() {
            members[i].push(v);
        }
        members
            .into_iter()
            .map(|verts| {
                if cols.len() == 2 {
                    self.two_colour_residue(cols[0], cols[1], verts)
                } else {
                    Residue {
                        colours: cols.clone(),
                        vertices: verts,
                        is_cycle: false,
                    }
                }
            })
            .collect()
    }

    /// Orders a two-colour component and detects whether it is a cycle.
    fn two_colour_residue(&self, a: Colour, b: Colour, mut verts: Vec<usize>) -> Residue {
        verts.sort_unstable();
        if verts.len() == 1 {
            // A vertex with neither colour present (possible only if both are
            // missing, i.e. never for valid graphs since a, b can't both be 3).
            return Residue {
                colours: vec![a, b],
                vertices: verts,
                is_cycle: false,
            };
        }
        // Endpoints are vertices missing one of the two colours.
        let endpoints: Vec<usize> = verts
            .iter()
            .copied()
            .filter(|&v| self.partner(v, a).is_none() || self.partner(v, b).is_none())
            .collect();
        let is_cycle = endpoints.is_empty();
        let start = if is_cycle { verts[0] } else { endpoints[0] };
        // Walk the component, alternating colours; from the start vertex take
        // the smaller available colour first.
        let mut order = vec![start];
        let mut cur = start;
        let mut colour = if self.partner(start, a).is_some() { a } else { b };
        loop {
            let next = match self.partner(cur, colour) {
                Some(w) => w,
                None => break,
            };
            if next == start && order.len() > 1 {
                break;
            }
            // Guard against re-walking a 2-cycle forever.
            if order.len() > verts.len() {
                break;
            }
            order.push(next);
            cur = next;
            colour = if colour == a { b } else { a };
        }
        debug_assert_eq!(order.len(), verts.len(), "two-colour walk must cover the component");
        Residue {
            colours: vec![a, b],
            vertices: order,
            is_cycle,
        }
    }

    /// Residues over the three colours distinct from `c`.
    pub fn complement_residues(&self, c: Colour) -> Vec<Residue> {
        self.residues(&c.complement())
    }

    /// Counts of all bicoloured and complementary residues.
    pub fn residue_census(&self) -> ResidueCensus {
        let mut pairs = [[0usize; 4]; 4];
        for i in 0..4 {
            for j in (i + 1)..4 {
                let n = self
                    .residues(&[Colour::ALL[i], Colour::ALL[j]])
                    .len();
                pairs[i][j] = n;
                pairs[j][i] = n;
            }
        }
        let mut complements = [0usize; 4];
        for c in Colour::ALL {
            complements[c.index()] = self.complement_residues(c).len();
        }
        ResidueCensus { pairs, complements }
    }

    /// True iff the graph is bipartite, i.e. the encoded manifold is
    /// orientable.
    pub fn is_bipartite(&self) -> bool {
        let n = self.vertex_count();
        let mut side = vec![u8::MAX; n];
        side[0] = 0;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for c in Colour::ALL {
                if let Some(w) = self.partner(v, c) {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        stack.push(w);
                    } else if side[w] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Recognises the surface carried by a three-colour residue.
    ///
    /// The residue spans a 2-dimensional pseudocomplex with one triangle per
    /// vertex; its Euler characteristic is
    /// `Σ g_pair − |vertices|/2 − m/2` where the sum runs over the three
    /// colour pairs inside the residue and `m` counts member vertices missing
    /// one of the residue's colours (only colour 3 can be missing).  Boundary
    /// circles are traced through the two families of paths ending at those
    /// vertices, and orientability is bipartiteness of the residue.
    pub fn surface_of_residue(&self, residue: &Residue) -> Result<SurfaceType> {
        if residue.colours.len() != 3 {
            return Err(Error::precondition(format!(
                "surface recognition needs a three-colour residue, got {} colours",
                residue.colours.len()
            )));
        }
        let cols = [residue.colours[0], residue.colours[1], residue.colours[2]];
        let verts = &residue.vertices;
        let n = verts.len() as i64;
        let in_residue = |v: usize| verts.binary_search(&v).is_ok();
        // Pair counts restricted to the residue.
        let mut pair_total: i64 = 0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                pair_total += self.restricted_components(verts, cols[i], cols[j]) as i64;
            }
        }
        // Vertices missing a residue colour (necessarily colour 3).
        let missing: Vec<usize> = verts
            .iter()
            .copied()
            .filter(|&v| cols.iter().any(|&c| self.partner(v, c).is_none()))
            .collect();
        let m = missing.len() as i64;
        if m % 2 != 0 {
            return Err(Error::consistency(
                "odd number of path endpoints in a residue",
            ));
        }
        let chi = pair_total - n / 2 - m / 2;
        // Boundary circles: connected components of the boundary vertices
        // under the two path pairings (follow {i,3}-paths for the two
        // non-boundary colours of the residue).
        let boundary_circles = if missing.is_empty() {
            0
        } else {
            let others: Vec<Colour> = cols
                .iter()
                .copied()
                .filter(|&c| c != Colour::BOUNDARY)
                .collect();
            if others.len() != 2 {
                return Err(Error::consistency(
                    "boundary endpoints in a residue without colour 3",
                ));
            }
            let mut uf = UnionFind::new(missing.len());
            let pos = |v: usize| missing.binary_search(&v).expect("endpoint is a member");
            for &i in &others {
                for &u in &missing {
                    let end = self.path_end(u, i, Colour::BOUNDARY, &in_residue)?;
                    uf.union(pos(u), pos(end));
                }
            }
            uf.component_count()
        };
        let orientable = self.restricted_bipartite(verts, &cols);
        SurfaceType::from_euler(chi, boundary_circles as u32, orientable)
    }

    /// Number of `{a,b}`-components of the subgraph induced on `verts`
    /// (assumed closed under both matchings and sorted ascending).
    fn restricted_components(&self, verts: &[usize], a: Colour, b: Colour) -> usize {
        let mut uf = UnionFind::new(verts.len());
        let pos = |v: usize| verts.binary_search(&v).expect("closed under matchings");
        for (i, &v) in verts.iter().enumerate() {
            for &c in [a, b].iter() {
                if let Some(w) = self.partner(v, c) {
                    uf.union(i, pos(w));
                }
            }
        }
        uf.component_count()
    }

    /// Bipartiteness of the subgraph induced on `verts` restricted to `cols`.
    fn restricted_bipartite(&self, verts: &[usize], cols: &[Colour]) -> bool {
        let mut side = vec![u8::MAX; verts.len()];
        let pos = |v: usize| verts.binary_search(&v).expect("closed under matchings");
        for start in 0..verts.len() {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for &c in cols {
                    if let Some(w) = self.partner(verts[i], c) {
                        let j = pos(w);
                        if side[j] == u8::MAX {
                            side[j] = 1 - side[i];
                            stack.push(j);
                        } else if side[j] == side[i] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Follows the alternating `{walk, via}`-path from endpoint `u` (which
    /// must lack its `via` edge) to the opposite endpoint.
    fn path_end(
        &self,
        u: usize,
        walk: Colour,
        via: Colour,
        in_scope: &dyn Fn(usize) -> bool,
    ) -> Result<usize> {
        let mut cur = u;
        let mut colour = walk;
        loop {
            let next = match self.partner(cur, colour) {
                Some(w) => w,
                None => return Ok(cur),
            };
            if !in_scope(next) {
                return Err(Error::consistency(
                    "alternating path escaped its residue",
                ));
            }
            if next == u {
                return Err(Error::consistency(
                    "alternating path returned to its start without ending",
                ));
            }
            cur = next;
            colour = if colour == walk { via } else { walk };
        }
    }

    /// Classifies the graph by the surfaces of its `ĉ`-residues.
    ///
    /// # Panics
    ///
    /// Panics if a residue of a construction-validated graph fails surface
    /// recognition, which would indicate a bug rather than bad input.
    pub fn classify(&self) -> GraphClass {
        let regular = self.is_regular();
        let mut residue_surfaces = Vec::with_capacity(4);
        let mut offending = Vec::new();
        let mut bad_colours: Vec<Colour> = Vec::new();
        for c in Colour::ALL {
            let residues = self.complement_residues(c);
            let mut surfaces = Vec::with_capacity(residues.len());
            for (idx, r) in residues.iter().enumerate() {
                let s = self
                    .surface_of_residue(r)
                    .expect("validated graph has surface residues");
                let ok = if regular {
                    s.is_sphere()
                } else {
                    s.is_sphere() || s.is_disk()
                };
                if !ok {
                    offending.push((c, idx, s));
                    if !bad_colours.contains(&c) {
                        bad_colours.push(c);
                    }
                }
                surfaces.push(s);
            }
            residue_surfaces.push((c, surfaces));
        }
        let tag = if regular {
            match bad_colours.len() {
                0 => GraphClassTag::ClosedGem,
                1 => GraphClassTag::SingularRegular(bad_colours[0]),
                _ => GraphClassTag::Invalid,
            }
        } else if bad_colours.is_empty() {
            GraphClassTag::BoundaryGem
        } else {
            GraphClassTag::Invalid
        };
        GraphClass {
            tag,
            residue_surfaces,
            offending,
        }
    }

    /// Contractedness test for gems.
    ///
    /// For closed gems and gems whose boundary is connected, contracted means
    /// `g_ĉ = 1` for every colour.  For `h ≥ 2` boundary components it means
    /// `g_3̂ = 1` and `g_ĉ = h` for the other three colours.
    pub fn is_contracted(&self) -> Result<bool> {
        let class = self.classify();
        if !class.is_gem() {
            return Err(Error::precondition(format!(
                "contractedness is defined for gems only, graph is {}",
                class.tag
            )));
        }
        let census = self.residue_census();
        let h = self.boundary_components()?.len();
        Ok(if h >= 2 {
            census.complement(Colour(3)) == 1
                && [Colour(0), Colour(1), Colour(2)]
                    .iter()
                    .all(|&c| census.complement(c) == h)
        } else {
            Colour::ALL.iter().all(|&c| census.complement(c) == 1)
        })
    }

    /// Pairs of boundary vertices joined by `{i,3}`-coloured paths.
    ///
    /// Every boundary vertex is the endpoint of exactly one such path, so the
    /// result is a perfect pairing of the boundary vertices; returned sorted
    /// by the smaller vertex of each pair.
    pub fn boundary_pairing(&self, i: Colour) -> Result<Vec<(usize, usize)>> {
        if i == Colour::BOUNDARY {
            return Err(Error::precondition(
                "path colour must differ from the boundary colour 3",
            ));
        }
        let boundary = self.boundary_vertices();
        if boundary.is_empty() {
            return Err(Error::precondition("graph has no boundary vertices"));
        }
        let everywhere = |_v: usize| true;
        let mut pairs = Vec::with_capacity(boundary.len() / 2);
        let mut seen = vec![false; self.vertex_count()];
        for &u in &boundary {
            if seen[u] {
                continue;
            }
            let end = self.path_end(u, i, Colour::BOUNDARY, &everywhere)?;
            if end == u || seen[end] {
                return Err(Error::consistency(format!(
                    "{{{i},3}}-path pairing degenerate at vertex {u}"
                )));
            }
            seen[u] = true;
            seen[end] = true;
            pairs.push((u.min(end), u.max(end)));
        }
        pairs.sort_unstable();
        Ok(pairs)
    }

    /// Boundary components of the encoded manifold with their surfaces.
    ///
    /// The boundary surface is triangulated with one triangle per boundary
    /// vertex; two triangles are adjacent along colour `i ∈ {0,1,2}` when an
    /// `{i,3}`-path joins the corresponding vertices.  Returns the empty list
    /// for regular graphs.
    pub fn boundary_components(&self) -> Result<Vec<BoundaryComponent>> {
        let boundary = self.boundary_vertices();
        if boundary.is_empty() {
            return Ok(Vec::new());
        }
        let pos = |v: usize| boundary.binary_search(&v).expect("boundary vertex");
        // The three pairings of the boundary graph.
        let mut pairing: [Vec<usize>; 3] = std::array::from_fn(|_| vec![0; boundary.len()]);
        for (ci, c) in [Colour(0), Colour(1), Colour(2)].into_iter().enumerate() {
            for (u, v) in self.boundary_pairing(c)? {
                pairing[ci][pos(u)] = pos(v);
                pairing[ci][pos(v)] = pos(u);
            }
        }
        // Components.
        let mut uf = UnionFind::new(boundary.len());
        for p in &pairing {
            for (i, &j) in p.iter().enumerate() {
                uf.union(i, j);
            }
        }
        let roots: Vec<usize> = (0..boundary.len()).map(|i| uf.find(i)).collect();
        let mut component_ids = roots.clone();
        component_ids.sort_unstable();
        component_ids.dedup();
        let comp_index = |root: usize| component_ids.binary_search(&root).expect("root");
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); component_ids.len()];
        for (i, &r) in roots.iter().enumerate() {
            members[comp_index(r)].push(i);
        }
        let mut out = Vec::with_capacity(members.len());
        for comp in members {
            let n = comp.len() as i64;
            // Pair counts of the 3-coloured boundary graph within the component.
            let mut pair_total = 0i64;
            for a in 0..3 {
                for b in (a + 1)..3 {
                    let mut cuf = UnionFind::new(comp.len());
                    let cpos = |i: usize| comp.binary_search(&i).expect("member");
                    for (k, &i) in comp.iter().enumerate() {
                        cuf.union(k, cpos(pairing[a][i]));
                        cuf.union(k, cpos(pairing[b][i]));
                    }
                    pair_total += cuf.component_count() as i64;
                }
            }
            let chi = pair_total - n / 2;
            // Orientability: bipartiteness of the boundary graph component.
            let orientable = {
                let cpos = |i: usize| comp.binary_search(&i).expect("member");
                let mut side = vec![u8::MAX; comp.len()];
                let mut ok = true;
                'outer: for start in 0..comp.len() {
                    if side[start] != u8::MAX {
                        continue;
                    }
                    side[start] = 0;
                    let mut stack = vec![start];
                    while let Some(k) = stack.pop() {
                        for p in &pairing {
                            let j = cpos(p[comp[k]]);
                            if side[j] == u8::MAX {
                                side[j] = 1 - side[k];
                                stack.push(j);
                            } else if side[j] == side[k] {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
                ok
            };
            let surface = SurfaceType::from_euler(chi, 0, orientable)?;
            out.push(BoundaryComponent {
                vertices: comp.iter().map(|&i| boundary[i]).collect(),
                surface,
            });
        }
        Ok(out)
    }

    /// The extended graph: one fresh vertex per boundary vertex, joined to it
    /// by a colour-3 edge.  The `k`-th boundary vertex (ascending) receives
    /// the fresh vertex `n + k`.  Fresh vertices have degree 1.
    ///
    /// Note the result deliberately violates the totality of colours 0–2 at
    /// the fresh vertices, so it is returned as raw matchings wrapped in
    /// [`ExtendedGraph`] rather than as a [`ColouredGraph`].
    pub fn extended_graph(&self) -> Result<ExtendedGraph> {
        let boundary = self.boundary_vertices();
        if boundary.is_empty() {
            return Err(Error::precondition(
                "extended graph requires at least one boundary vertex",
            ));
        }
        let n = self.vertex_count();
        let mut three: Vec<Option<usize>> = self.matchings[3].clone();
        three.extend(std::iter::repeat(None).take(boundary.len()));
        for (k, &v) in boundary.iter().enumerate() {
            three[v] = Some(n + k);
            three[n + k] = Some(v);
        }
        Ok(ExtendedGraph {
            base_vertices: n,
            star_vertices: boundary.clone(),
            three_matching: three,
        })
    }
}

/// The extended graph `Γ*`: the base graph plus one degree-1 vertex per
/// boundary vertex, attached by a colour-3 edge.  The fresh vertices are
/// indexed `n..n+b` in ascending order of their boundary partners.
#[derive(Clone, Debug)]
pub struct ExtendedGraph {
    /// Number of vertices of the base graph.
    pub base_vertices: usize,
    /// For each fresh vertex `n + k`, its boundary partner
    /// `star_vertices[k]` in the base graph.
    pub star_vertices: Vec<usize>,
    /// The completed colour-3 matching over `base_vertices + b` vertices.
    pub three_matching: Vec<Option<usize>>,
}

impl ExtendedGraph {
    /// Total vertex count including fresh vertices.
    pub fn vertex_count(&self) -> usize {
        self.base_vertices + self.star_vertices.len()
    }

    /// The fresh vertex attached to boundary vertex `v`, if `v` is one.
    pub fn star_of(&self, v: usize) -> Option<usize> {
        self.star_vertices
            .binary_search(&v)
            .ok()
            .map(|k| self.base_vertices + k)
    }
}

/// A minimal union-find used throughout the crate for component counting.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Keep the smaller root as representative for determinism.
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    pub fn component_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{two_vertex_ball, two_vertex_sphere};

    #[test]
    fn sphere_gem_basics() {
        let g = two_vertex_sphere();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 4);
        assert!(g.is_regular());
        assert!(g.is_bipartite());
        assert_eq!(g.boundary_vertices(), Vec::<usize>::new());
        let census = g.residue_census();
        assert_eq!(census.six_tuple(), [1; 6]);
        assert_eq!(census.complement_tuple(), [1; 4]);
        assert_eq!(g.classify().tag, GraphClassTag::ClosedGem);
        assert!(g.is_contracted().unwrap());
    }

    #[test]
    fn sphere_gem_residues() {
        let g = two_vertex_sphere();
        let r = g.residues(&[Colour(0), Colour(1)]);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].vertices, vec![0, 1]);
        assert!(r[0].is_cycle);
        let hat = g.complement_residues(Colour(3));
        assert_eq!(hat.len(), 1);
        let s = g.surface_of_residue(&hat[0]).unwrap();
        assert!(s.is_sphere());
    }

    #[test]
    fn ball_gem_boundary() {
        let g = two_vertex_ball();
        assert!(!g.is_regular());
        assert_eq!(g.boundary_vertices(), vec![0, 1]);
        assert_eq!(g.classify().tag, GraphClassTag::BoundaryGem);
        // All complement residues are spheres or disks.
        let class = g.classify();
        for (c, surfaces) in &class.residue_surfaces {
            for s in surfaces {
                if *c == Colour(3) {
                    assert!(s.is_sphere());
                } else {
                    assert!(s.is_disk());
                }
            }
        }
        // One spherical boundary component.
        let comps = g.boundary_components().unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].surface.is_sphere());
        assert_eq!(comps[0].vertices, vec![0, 1]);
        assert!(g.is_contracted().unwrap());
    }

    #[test]
    fn ball_gem_extension() {
        let g = two_vertex_ball();
        let ext = g.extended_graph().unwrap();
        assert_eq!(ext.vertex_count(), 4);
        assert_eq!(ext.star_of(0), Some(2));
        assert_eq!(ext.star_of(1), Some(3));
        assert_eq!(ext.three_matching[2], Some(0));
        // Every boundary vertex gained a 3-edge.
        assert!(ext.three_matching[..2].iter().all(|p| p.is_some()));
        // Regular graphs have no extension.
        assert!(two_vertex_sphere().extended_graph().is_err());
    }

    #[test]
    fn boundary_pairing_of_ball() {
        let g = two_vertex_ball();
        for c in [Colour(0), Colour(1), Colour(2)] {
            assert_eq!(g.boundary_pairing(c).unwrap(), vec![(0, 1)]);
        }
        assert!(g.boundary_pairing(Colour(3)).is_err());
        assert!(two_vertex_sphere().boundary_pairing(Colour(0)).is_err());
    }

    #[test]
    fn construction_rejects_bad_input() {
        // Self-loop.
        assert!(ColouredGraph::new(2, &[(0, 0, 0)]).is_err());
        // Duplicate slot.
        assert!(ColouredGraph::new(3, &[(0, 1, 0), (0, 2, 0)]).is_err());
        // Missing a total colour.
        assert!(ColouredGraph::new(2, &[(0, 1, 0), (0, 1, 1)]).is_err());
        // Out-of-range vertex.
        assert!(ColouredGraph::new(2, &[(0, 5, 0)]).is_err());
        // Disconnected: two sphere gems side by side.
        let result = ColouredGraph::new(
            4,
            &[
                (0, 1, 0),
                (0, 1, 1),
                (0, 1, 2),
                (0, 1, 3),
                (2, 3, 0),
                (2, 3, 1),
                (2, 3, 2),
                (2, 3, 3),
            ],
        );
        assert!(result.is_err());
    }

    #[test]
    fn non_bipartite_graph_detected() {
        // Four vertices with an odd mixed-colour cycle 0 -(0)- 1 -(1)- 2 -(2)- 0.
        // (Bicoloured cycles are always even by construction, so odd cycles
        // necessarily mix at least three colours.)
        let g = ColouredGraph::new(
            4,
            &[
                (0, 1, 0),
                (2, 3, 0),
                (1, 2, 1),
                (0, 3, 1),
                (0, 2, 2),
                (1, 3, 2),
                (0, 3, 3),
                (1, 2, 3),
            ],
        )
        .unwrap();
        assert!(!g.is_bipartite());
    }

    #[test]
    fn joined_spheres_are_not_contracted() {
        // Two sphere gems joined by swapping their colour-0 edges: a valid
        // closed gem of S³ with g_0̂ = 2 (hence not contracted).
        let g = ColouredGraph::new(
            4,
            &[
                (0, 2, 0),
                (1, 3, 0),
                (0, 1, 1),
                (2, 3, 1),
                (0, 1, 2),
                (2, 3, 2),
                (0, 1, 3),
                (2, 3, 3),
            ],
        )
        .unwrap();
        assert_eq!(g.classify().tag, GraphClassTag::ClosedGem);
        let census = g.residue_census();
        assert_eq!(census.complement(Colour(0)), 2);
        assert!(!g.is_contracted().unwrap());
    }

    #[test]
    fn residue_partition_is_a_partition() {
        let g = two_vertex_sphere();
        for i in 0..4u8 {
            for j in (i + 1)..4 {
                let residues = g.residues(&[Colour(i), Colour(j)]);
                let mut seen = vec![false; g.vertex_count()];
                for r in &residues {
                    for &v in &r.vertices {
                        assert!(!seen[v]);
                        seen[v] = true;
                    }
                }
                assert!(seen.iter().all(|&s| s));
            }
        }
    }
}
