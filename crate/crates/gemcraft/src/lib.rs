//! Computational 3-manifold topology via edge-coloured graphs.
//!
//! A *gem* (graph-encoded manifold) is a finite 4-regular graph whose edges
//! are coloured with `{0,1,2,3}` so that every vertex meets each colour at most
//! once.  Dually, every vertex stands for a tetrahedron and every `i`-coloured
//! edge glues the faces opposite the `i`-labelled corners of its endpoints;
//! the resulting pseudocomplex triangulates a compact 3-manifold (possibly
//! with boundary, when colour 3 is allowed to be missing) or, more generally,
//! a singular 3-manifold when some vertex links are closed surfaces of
//! positive genus.
//!
//! This crate implements the combinatorial pipeline from such graphs to upper
//! bounds for Matveev's complexity of the encoded manifold:
//!
//! * [`graph`] — the coloured-graph data model: residues, surface recognition,
//!   classification (closed gem / gem with boundary / singular-regular),
//!   bipartiteness, contractedness, extended graphs, and isomorphism testing;
//! * [`complex`] — the dual pseudocomplex, boundary surfaces, singular
//!   vertices, the capping construction, and desingularization by coloured
//!   subdivisions;
//! * [`embedding`] — regular cellular embeddings into surfaces indexed by
//!   cyclic colour permutations, with the Euler-characteristic genus and the
//!   closed-form genus expressions as cross-checks;
//! * [`heegaard`] — generalized Heegaard diagrams as combinatorial maps,
//!   cut-dual graphs, reduction enumeration, Heegaard–Matveev complexity of
//!   diagrams, extraction of diagrams from gems and singular-regular graphs,
//!   gem-Matveev complexity, and the curve-doubling construction;
//! * [`seifert`] — the parametric family Λ((p,h),(q,k)) of graphs encoding
//!   Seifert fibred spaces over the disk with two exceptional fibres (torus
//!   knot complements in particular), their standard genus-2 diagrams, and the
//!   closed-form complexity bound;
//! * [`io`] — file formats (graph JSON, compact text, diagram JSON), DOT/SVG
//!   export, and replayable machine-readable reports.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything can be shared freely across threads; the complexity searches
//! fan out over [`rayon`] and combine results with a deterministic tie-break,
//! making parallel and serial runs agree bit for bit.

pub mod complex;
pub mod embedding;
pub mod error;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod graph;
pub mod heegaard;
pub mod io;
pub mod seifert;
pub mod surface;

pub use error::{Error, Result};
pub use graph::{Colour, ColouredGraph, GraphClass, GraphClassTag, Residue};
pub use surface::SurfaceType;

/// Crate version string embedded into reports for reproducibility.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
