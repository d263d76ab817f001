//! Cut-dual graphs of curve systems and enumeration of reduction choices.
//!
//! Cutting the diagram surface along one curve system decomposes it into
//! pieces.  The *cut-dual graph* of the system has one node per piece and one
//! edge per curve, joining the pieces on the curve's two sides (a loop when
//! both sides meet the same piece).  A system is *proper* when every piece is
//! a sphere with holes and *reduced* when there is a single piece or no piece
//! closes up to a sphere.
//!
//! A *reduction* removes the curves of an admissible forest of each cut-dual
//! graph: a spanning forest whose components are trees containing exactly one
//! node of `V⁺` (the non-sphere pieces) each, or a spanning tree when `V⁺` is
//! empty.  Removing those curves merges the pieces along the forest and
//! leaves each system reduced.  The enumeration below is deterministic
//! (include-first depth-first search over dual edges in ascending order,
//! V choices outer, W choices inner) and stops at a configurable limit with a
//! truncation flag.

use crate::error::{Error, Result};
use crate::heegaard::map::PieceInfo;
use crate::heegaard::{EdgeKind, HeegaardDiagram, System};
use crate::surface::SurfaceType;

/// One reduction choice: the curves removed from each system, together with
/// the dual-forest edges witnessing admissibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionChoice {
    /// Removed V curves as diagram curve ids, ascending.
    pub removed_v: Vec<usize>,
    /// Removed W curves as diagram curve ids, ascending.
    pub removed_w: Vec<usize>,
    /// The forest edges realizing each removal, as piece pairs of the
    /// respective cut-dual graph, parallel to `removed_v` and `removed_w`.
    pub witness_forests: [Vec<(usize, usize)>; 2],
}

/// The cut-dual graph of one curve system.
#[derive(Clone, Debug)]
pub struct CutDualGraph {
    pub system: System,
    /// The pieces of the surface cut along the system, in deterministic
    /// piece order.
    pub pieces: Vec<PieceInfo>,
    /// One edge per curve of the system: `(curve id, (piece, piece))` with
    /// the piece pair sorted ascending.
    pub curve_edges: Vec<(usize, (usize, usize))>,
    /// Indices of the pieces that do not close up to spheres (`V⁺`).
    pub plus_nodes: Vec<usize>,
}

impl CutDualGraph {
    /// The closed-up surface of a piece; `None` when the ambient surface is
    /// non-orientable (piece orientability is then not tracked).
    pub fn node_surface(&self, piece: usize, ambient_orientable: bool) -> Option<SurfaceType> {
        if !ambient_orientable {
            return None;
        }
        SurfaceType::from_euler(self.pieces[piece].closed_chi(), 0, true).ok()
    }

    /// Number of admissible-forest edges every choice removes:
    /// `pieces − max(1, |V⁺|)`.
    pub fn forest_edge_count(&self) -> usize {
        self.pieces.len() - self.plus_nodes.len().max(1)
    }
}

/// Properness and reducedness of one curve system, with its cut-dual graph.
#[derive(Clone, Debug)]
pub struct SystemAnalysis {
    pub system: System,
    pub dual: CutDualGraph,
    /// Every piece closes up to a sphere.
    pub proper: bool,
    /// A single piece, or no piece closes up to a sphere.
    pub reduced: bool,
}

/// Cuts the diagram surface along one curve system and reports the cut-dual
/// graph together with the properness and reducedness of the system.
///
/// Refuses diagrams with off-map free circles of the requested system, since
/// such circles cut the surface in an unrecorded way.
pub fn system_analysis(diagram: &HeegaardDiagram, system: System) -> Result<SystemAnalysis> {
    if diagram.free_circles.contains(&system) {
        return Err(Error::precondition(format!(
            "the {system} system contains a crossing-free circle with no map placement; \
             its cut decomposition is undetermined"
        )));
    }
    let dual = cut_dual(diagram, system)?;
    let n = dual.pieces.len();
    let proper = dual.plus_nodes.is_empty();
    let reduced = n == 1 || dual.plus_nodes.len() == n;
    Ok(SystemAnalysis {
        system,
        dual,
        proper,
        reduced,
    })
}

fn cut_dual(diagram: &HeegaardDiagram, system: System) -> Result<CutDualGraph> {
    let map = &diagram.map;
    let barrier: Vec<bool> = map
        .edges()
        .iter()
        .map(|e| match e.kind {
            EdgeKind::CurveArc { curve } => diagram.curves[curve].system == system,
            EdgeKind::Seam => false,
        })
        .collect();
    let analysis = map.analyze(&barrier);

    // The cut preserves the Euler characteristic, and on orientable surfaces
    // every curve contributes two boundary circles.  Both identities check
    // the piece bookkeeping against independent map data.
    let curve_ids = diagram.system_curves(system);
    let chi_sum: i64 = analysis.pieces.iter().map(|p| p.chi).sum();
    if chi_sum != map.euler_characteristic() {
        return Err(Error::consistency(format!(
            "pieces of the {system} cut have total Euler characteristic {chi_sum}, \
             the surface has {}",
            map.euler_characteristic()
        )));
    }
    if map.surface().orientable {
        let sides: usize = analysis.pieces.iter().map(|p| p.boundary_circles).sum();
        if sides != 2 * curve_ids.len() {
            return Err(Error::consistency(format!(
                "the {system} cut produced {sides} boundary circles for {} two-sided \
                 curves",
                curve_ids.len()
            )));
        }
    }

    let mut curve_edges = Vec::with_capacity(curve_ids.len());
    for &c in &curve_ids {
        let mut pair: Option<(usize, usize)> = None;
        for &arc in &diagram.curves[c].arcs {
            let [left, right] = map.edge_faces(arc);
            let (pa, pb) = (
                analysis.piece_of_face[left],
                analysis.piece_of_face[right],
            );
            let here = (pa.min(pb), pa.max(pb));
            match pair {
                None => pair = Some(here),
                Some(seen) if seen == here => {}
                Some(seen) => {
                    return Err(Error::consistency(format!(
                        "curve {c} sees pieces {seen:?} at one arc and {here:?} at \
                         another; curves of one system must be disjoint"
                    )))
                }
            }
        }
        curve_edges.push((c, pair.expect("validated curves have arcs")));
    }

    let plus_nodes: Vec<usize> = (0..analysis.pieces.len())
        .filter(|&p| analysis.pieces[p].closed_chi() != 2)
        .collect();

    // Orientable genus bookkeeping: piece genera plus the cycle rank of the
    // dual graph recover the surface genus.
    if map.surface().orientable {
        let mut uf = UnionFind::new(analysis.pieces.len());
        for &(_, (a, b)) in &curve_edges {
            uf.union(a, b);
        }
        if uf.component_count() != 1 {
            return Err(Error::consistency(format!(
                "the {system} cut-dual graph is disconnected on a connected surface"
            )));
        }
        let cycle_rank = curve_edges.len() + 1 - analysis.pieces.len();
        let genus_sum: i64 = analysis
            .pieces
            .iter()
            .map(|p| (2 - p.closed_chi()) / 2)
            .sum::<i64>()
            + cycle_rank as i64;
        if genus_sum != map.surface().genus as i64 {
            return Err(Error::consistency(format!(
                "piece genera plus dual cycle rank give {genus_sum}, the surface has \
                 genus {}",
                map.surface().genus
            )));
        }
    }

    Ok(CutDualGraph {
        system,
        pieces: analysis.pieces,
        curve_edges,
        plus_nodes,
    })
}

// Small union-find for dual-graph connectivity; separate from the map's to
// keep this module self-contained.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
    fn component_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Enumerates the admissible forests of one cut-dual graph, as ascending
/// lists of indices into `curve_edges`, in include-first depth-first order.
/// Collects at most `cap` forests; the flag reports whether more exist.
pub(crate) fn admissible_forests(dual: &CutDualGraph, cap: usize) -> (Vec<Vec<usize>>, bool) {
    let n = dual.pieces.len();
    let target = dual.forest_edge_count();
    let mut plus = vec![false; n];
    for &p in &dual.plus_nodes {
        plus[p] = true;
    }
    let has_plus = !dual.plus_nodes.is_empty();

    struct Search<'a> {
        edges: &'a [(usize, (usize, usize))],
        target: usize,
        has_plus: bool,
        parent: Vec<usize>,
        rank: Vec<u8>,
        plus: Vec<bool>,
        current: Vec<usize>,
        out: Vec<Vec<usize>>,
        cap: usize,
        truncated: bool,
    }
    impl Search<'_> {
        fn find(&self, mut i: usize) -> usize {
            while self.parent[i] != i {
                i = self.parent[i];
            }
            i
        }
        fn dfs(&mut self, i: usize) {
            if self.out.len() > self.cap {
                self.truncated = true;
                return;
            }
            let selected = self.current.len();
            if selected + (self.edges.len() - i) < self.target {
                return;
            }
            if i == self.edges.len() {
                if selected == self.target {
                    self.out.push(self.current.clone());
                }
                return;
            }
            let (a, b) = self.edges[i].1;
            let (ra, rb) = (self.find(a), self.find(b));
            let blocked = ra == rb || (self.has_plus && self.plus[ra] && self.plus[rb]);
            if !blocked {
                // Union without path compression so the link is undoable.
                let (child, root) = if self.rank[ra] < self.rank[rb] {
                    (ra, rb)
                } else {
                    (rb, ra)
                };
                let bumped = self.rank[ra] == self.rank[rb];
                self.parent[child] = root;
                if bumped {
                    self.rank[root] += 1;
                }
                let plus_was = self.plus[root];
                self.plus[root] = self.plus[root] || self.plus[child];

                self.current.push(i);
                self.dfs(i + 1);
                self.current.pop();

                self.plus[root] = plus_was;
                if bumped {
                    self.rank[root] -= 1;
                }
                self.parent[child] = child;
            }
            self.dfs(i + 1);
        }
    }

    let mut search = Search {
        edges: &dual.curve_edges,
        target,
        has_plus,
        parent: (0..n).collect(),
        rank: vec![0; n],
        plus,
        current: Vec::new(),
        out: Vec::new(),
        cap,
        truncated: false,
    };
    search.dfs(0);
    let mut out = search.out;
    let truncated = search.truncated || out.len() > cap;
    out.truncate(cap);
    (out, truncated)
}

/// Turns a forest (edge indices into the dual) into a reduction half:
/// removed curve ids and witness piece pairs.
fn forest_to_removal(dual: &CutDualGraph, forest: &[usize]) -> (Vec<usize>, Vec<(usize, usize)>) {
    let removed = forest.iter().map(|&i| dual.curve_edges[i].0).collect();
    let witness = forest.iter().map(|&i| dual.curve_edges[i].1).collect();
    (removed, witness)
}

/// Checks the forest edge count against the classical formula
/// `|E(T)| = |𝒞| − g − max{0, h−1} + Σ ∂g_j` on orientable surfaces (in
/// doubled arithmetic so only Euler characteristics are needed), and against
/// the piece count otherwise.
fn check_forest_count(diagram: &HeegaardDiagram, dual: &CutDualGraph, forest_len: usize) -> Result<()> {
    let by_pieces = dual.forest_edge_count();
    if forest_len != by_pieces {
        return Err(Error::consistency(format!(
            "enumerated a forest with {forest_len} edges where the piece structure \
             ({} pieces, {} plus nodes) demands {by_pieces}",
            dual.pieces.len(),
            dual.plus_nodes.len()
        )));
    }
    if diagram.surface().orientable {
        let curves = dual.curve_edges.len() as i64;
        let h = dual.plus_nodes.len() as i64;
        let genus_terms: i64 = dual
            .plus_nodes
            .iter()
            .map(|&p| 2 - dual.pieces[p].closed_chi())
            .sum();
        let doubled = 2 * curves - 2 * diagram.surface().genus as i64 - 2 * (h - 1).max(0)
            + genus_terms;
        if 2 * forest_len as i64 != doubled {
            return Err(Error::consistency(format!(
                "forest of the {} system has {forest_len} edges; the genus formula \
                 demands {doubled} when doubled",
                dual.system
            )));
        }
    }
    Ok(())
}

/// Enumerates reduction choices: the product of the admissible forests of the
/// V and W cut-dual graphs, V outer and W inner, stopping after `limit`
/// choices.  Returns the choices and whether the enumeration was truncated.
pub fn enumerate_reductions(
    diagram: &HeegaardDiagram,
    limit: usize,
) -> Result<(Vec<ReductionChoice>, bool)> {
    let mut out = Vec::new();
    let mut truncated = false;
    for_each_reduction(diagram, limit, &mut truncated, |choice| {
        out.push(choice);
        Ok(())
    })?;
    Ok((out, truncated))
}

/// Streaming core of `enumerate_reductions`: calls `sink` for every choice,
/// in deterministic order, stopping after `limit` emissions.  Each emission
/// is preceded by the forest-count consistency check.
pub(crate) fn for_each_reduction<F>(
    diagram: &HeegaardDiagram,
    limit: usize,
    truncated: &mut bool,
    mut sink: F,
) -> Result<(Vec<SystemAnalysis>, usize)>
where
    F: FnMut(ReductionChoice) -> Result<()>,
{
    let v = system_analysis(diagram, System::V)?;
    let w = system_analysis(diagram, System::W)?;
    let (v_forests, v_trunc) = admissible_forests(&v.dual, limit.max(1));
    let (w_forests, w_trunc) = admissible_forests(&w.dual, limit.max(1));
    *truncated = v_trunc || w_trunc;

    let mut emitted = 0usize;
    'outer: for vf in &v_forests {
        check_forest_count(diagram, &v.dual, vf.len())?;
        let (removed_v, witness_v) = forest_to_removal(&v.dual, vf);
        for wf in &w_forests {
            if emitted == limit {
                *truncated = true;
                break 'outer;
            }
            check_forest_count(diagram, &w.dual, wf.len())?;
            let (removed_w, witness_w) = forest_to_removal(&w.dual, wf);
            sink(ReductionChoice {
                removed_v: removed_v.clone(),
                removed_w,
                witness_forests: [witness_v.clone(), witness_w],
            })?;
            emitted += 1;
        }
    }
    Ok((vec![v, w], emitted))
}
