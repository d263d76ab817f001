//! Regular embeddings of coloured graphs into surfaces.
//!
//! A cyclic order `ε` of the four colours induces a rotation system: at every
//! vertex the four edge ends appear in the order `ε₀, ε₁, ε₂, ε₃`.  The faces
//! of the resulting embedding are exactly the bicoloured residues of the four
//! *consecutive* colour pairs of `ε`, so the surface can be read off the
//! residue census without tracing darts.
//!
//! For a graph with boundary the embedding lives in a bordered surface: the
//! extended graph is embedded with the fresh star vertices on the boundary
//! circles, and every `{ε₀,3}`- or `{ε₂,3}`-path of the graph closes into a
//! region through one boundary arc (here `ε` is rotated so that `ε₃ = 3`).
//! The Euler bookkeeping collapses to counting internal faces only, and the
//! boundary circles are the orbits of the two path pairings on boundary
//! vertices.  Capping each boundary circle with a disk yields the closed
//! surface on which Heegaard diagrams are drawn.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, UnionFind};
use crate::surface::SurfaceType;

/// A cyclic order of the four colours, kept in canonical form: the
/// lexicographically least of its eight rotations and reversals.
///
/// There are exactly three distinct classes: `(0,1,2,3)`, `(0,1,3,2)` and
/// `(0,2,1,3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicOrder {
    seq: [Colour; 4],
}

impl CyclicOrder {
    /// Builds a cyclic order from any permutation of the four colours.
    pub fn new(seq: [Colour; 4]) -> Result<CyclicOrder> {
        let mut check = [false; 4];
        for c in seq {
            if check[c.index()] {
                return Err(Error::invalid(format!(
                    "cyclic order repeats colour {c}"
                )));
            }
            check[c.index()] = true;
        }
        let mut best = seq;
        for form in Self::symmetric_forms(seq) {
            if form < best {
                best = form;
            }
        }
        Ok(CyclicOrder { seq: best })
    }

    /// Parses a cyclic order from raw colour values.
    pub fn from_values(values: [u8; 4]) -> Result<CyclicOrder> {
        let mut seq = [Colour::new(0)?; 4];
        for (i, v) in values.into_iter().enumerate() {
            seq[i] = Colour::new(v)?;
        }
        CyclicOrder::new(seq)
    }

    fn symmetric_forms(seq: [Colour; 4]) -> impl Iterator<Item = [Colour; 4]> {
        (0..8).map(move |k| {
            let rot = k % 4;
            let mut form: [Colour; 4] = std::array::from_fn(|i| seq[(i + rot) % 4]);
            if k >= 4 {
                form.reverse();
            }
            form
        })
    }

    /// The three distinct cyclic orders.
    pub fn all() -> [CyclicOrder; 3] {
        let c = |v: u8| Colour::new(v).unwrap();
        [
            CyclicOrder::new([c(0), c(1), c(2), c(3)]).unwrap(),
            CyclicOrder::new([c(0), c(1), c(3), c(2)]).unwrap(),
            CyclicOrder::new([c(0), c(2), c(1), c(3)]).unwrap(),
        ]
    }

    /// The canonical representative sequence.
    pub fn as_array(&self) -> [Colour; 4] {
        self.seq
    }

    /// The representative of this class rotated so that colour 3 comes last,
    /// choosing the lexicographically least such form.
    pub fn boundary_last(&self) -> [Colour; 4] {
        let mut best: Option<[Colour; 4]> = None;
        for form in Self::symmetric_forms(self.seq) {
            if form[3] == Colour::BOUNDARY && best.map_or(true, |b| form < b) {
                best = Some(form);
            }
        }
        best.expect("every cyclic order contains colour 3")
    }

    /// The four consecutive colour pairs of the canonical representative.
    pub fn consecutive_pairs(&self) -> [(Colour, Colour); 4] {
        std::array::from_fn(|i| (self.seq[i], self.seq[(i + 1) % 4]))
    }
}

impl fmt::Display for CyclicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} {} {} {})",
            self.seq[0], self.seq[1], self.seq[2], self.seq[3]
        )
    }
}

/// The surface data of a regular embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    /// The cyclic order inducing the embedding.
    pub order: CyclicOrder,
    /// The (possibly bordered) embedding surface.
    pub surface: SurfaceType,
    /// The surface after capping every boundary circle with a disk; equals
    /// `surface` for regular graphs.
    pub capped_surface: SurfaceType,
    /// Graph vertices.
    pub vertices: usize,
    /// Graph edges (excluding boundary arcs).
    pub edges: usize,
    /// Faces that are bicoloured cycles.
    pub internal_faces: usize,
    /// Regions closed through one boundary arc each (zero for regular graphs).
    pub boundary_regions: usize,
}

/// Embeds a graph regularly according to a cyclic colour order.
///
/// Defined for every coloured graph; the classification of the graph plays
/// no role in the embedding itself.
pub fn embed(graph: &ColouredGraph, order: &CyclicOrder) -> Result<Embedding> {
    let n = graph.vertex_count();
    let e = graph.edge_count();
    let orientable = graph.is_bipartite();
    if graph.is_regular() {
        let faces: usize = order
            .consecutive_pairs()
            .iter()
            .map(|&(a, b)| graph.residues(&[a, b]).len())
            .sum();
        let chi = n as i64 - e as i64 + faces as i64;
        let surface = SurfaceType::from_euler(chi, 0, orientable)?;
        return Ok(Embedding {
            order: *order,
            surface,
            capped_surface: surface,
            vertices: n,
            edges: e,
            internal_faces: faces,
            boundary_regions: 0,
        });
    }
    let eps = order.boundary_last();
    // Internal faces: all cycles among the four consecutive-pair residue
    // families (pairs containing colour 3 contribute only their cycles;
    // their paths close into boundary regions instead).
    let mut internal = 0usize;
    let mut regions = 0usize;
    for i in 0..4 {
        let pair = [eps[i], eps[(i + 1) % 4]];
        for r in graph.residues(&pair) {
            if r.is_cycle {
                internal += 1;
            } else {
                regions += 1;
            }
        }
    }
    let chi = n as i64 - e as i64 + internal as i64;
    // Boundary circles: orbits of the boundary vertices under the pairings
    // along `{ε₀,3}`- and `{ε₂,3}`-paths.
    let boundary = graph.boundary_vertices();
    let pos = |v: usize| boundary.binary_search(&v).expect("boundary vertex");
    let mut uf = UnionFind::new(boundary.len());
    for walk in [eps[0], eps[2]] {
        for (u, v) in graph.boundary_pairing(walk)? {
            uf.union(pos(u), pos(v));
        }
    }
    let circles = uf.component_count();
    let surface = SurfaceType::from_euler(chi, circles as u32, orientable)?;
    let capped_surface = SurfaceType::from_euler(chi + circles as i64, 0, orientable)?;
    Ok(Embedding {
        order: *order,
        surface,
        capped_surface,
        vertices: n,
        edges: e,
        internal_faces: internal,
        boundary_regions: regions,
    })
}

/// The regular genus of a gem's embedding computed three ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusFormulas {
    /// Regular genus from the Euler characteristic of the capped embedding
    /// surface: the handle count when orientable, half the cross-cap count
    /// when non-orientable.
    pub by_euler: u32,
    /// `g_{ε₀ε₂} − g_ε̂₁ − g_3̂ + 1`: the residue-count formula built on the
    /// opposite colour pair avoiding colour 3.
    pub variant_a: i64,
    /// `g_{ε₁3} − g_ε̂₀ − g_ε̂₂ + 1 − (v*/2 + ∂ − d_ε̂₀ − d_ε̂₂)/2`: the
    /// residue-count formula built on the opposite colour pair through
    /// colour 3, with its boundary correction. Here `v*` is the number of
    /// boundary vertices, `∂` the number of boundary circles of the
    /// embedding surface, and `d_ĉ` the number of disk `ĉ`-residues (the
    /// ones containing a boundary vertex). On closed graphs every
    /// correction term vanishes and the raw count remains.
    ///
    /// The correction falls out of summing Euler characteristics over the
    /// residues: `ĉ`-residues of a gem with boundary are spheres (χ = 2) or
    /// disks (χ = 1), and the raw count implicitly assumes they are all
    /// spheres. The twin formula `variant_a` needs no correction because its
    /// two deficits cancel: the disk count `d_ε̂₁` equals `∂` exactly (each
    /// disk `ε̂₁`-residue carries exactly one boundary circle of the
    /// embedding surface).
    pub variant_b: i64,
}

/// Computes the regular genus of a gem's embedding by the Euler
/// characteristic and by both residue-count formulas.
///
/// Restricted to gems (closed or with boundary): on singular-regular and
/// invalid graphs the residue formulas are meaningless and the call is
/// refused with a precondition error.
pub fn genus_formulas(graph: &ColouredGraph, order: &CyclicOrder) -> Result<GenusFormulas> {
    let class = graph.classify();
    if !class.is_gem() {
        return Err(Error::precondition(format!(
            "genus formulas apply to gems only, graph is {}",
            class.tag
        )));
    }
    let embedding = embed(graph, order)?;
    let capped = embedding.capped_surface;
    let by_euler = if capped.orientable {
        capped.genus
    } else {
        // Regular genus of a non-orientable embedding is half the cross-cap
        // count; an odd count cannot arise from a valid gem.
        if capped.genus % 2 != 0 {
            return Err(Error::consistency(format!(
                "non-orientable embedding surface of a gem has odd cross-cap count {}",
                capped.genus
            )));
        }
        capped.genus / 2
    };
    let eps = order.boundary_last();
    let census = graph.residue_census();
    let variant_a = census.pair(eps[0], eps[2]) as i64 - census.complement(eps[1]) as i64
        - census.complement(eps[3]) as i64
        + 1;
    // Disk residues are exactly the complement residues containing a
    // boundary vertex: a vertex missing its 3-edge puts a boundary circle on
    // the residue surface, and a gem's residues are spheres or disks.
    let boundary = graph.boundary_vertices();
    let disk_count = |c: Colour| -> i64 {
        graph
            .complement_residues(c)
            .iter()
            .filter(|r| r.vertices.iter().any(|v| boundary.binary_search(v).is_ok()))
            .count() as i64
    };
    let raw_b = census.pair(eps[1], eps[3]) as i64
        - census.complement(eps[0]) as i64
        - census.complement(eps[2]) as i64
        + 1;
    let excess = boundary.len() as i64 / 2 + embedding.surface.boundary_components as i64
        - disk_count(eps[0])
        - disk_count(eps[2]);
    if excess % 2 != 0 {
        return Err(Error::consistency(format!(
            "boundary correction of the genus formula is odd ({excess}) on a gem"
        )));
    }
    let variant_b = raw_b - excess / 2;
    Ok(GenusFormulas {
        by_euler,
        variant_a,
        variant_b,
    })
}
