//! Shared hand-verified test graphs.

use crate::graph::ColouredGraph;

/// The order-2 gem of the 3-sphere: two vertices joined by all four colours.
pub(crate) fn two_vertex_sphere() -> ColouredGraph {
    ColouredGraph::new(2, &[(0, 1, 0), (0, 1, 1), (0, 1, 2), (0, 1, 3)]).unwrap()
}

/// The order-2 gem of the 3-ball: colour 3 removed from the sphere gem.
pub(crate) fn two_vertex_ball() -> ColouredGraph {
    ColouredGraph::new(2, &[(0, 1, 0), (0, 1, 1), (0, 1, 2)]).unwrap()
}

/// A 6-vertex singular-regular graph: colours 1, 2, 3 form a properly
/// edge-coloured K₃,₃ (whose residue is a torus), colour 0 is chosen so the
/// other three complement residues are spheres.  The spanned complex is a
/// cone over the torus glued to a ball neighbourhood — the smallest singular
/// fixture used across the crate.
pub(crate) fn torus_singularity_graph() -> ColouredGraph {
    ColouredGraph::new(
        6,
        &[
            (0, 4, 0),
            (1, 3, 0),
            (2, 5, 0),
            (0, 3, 1),
            (1, 4, 1),
            (2, 5, 1),
            (0, 4, 2),
            (1, 5, 2),
            (2, 3, 2),
            (0, 5, 3),
            (1, 3, 3),
            (2, 4, 3),
        ],
    )
    .unwrap()
}
