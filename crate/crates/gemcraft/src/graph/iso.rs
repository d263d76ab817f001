//! Isomorphism of coloured graphs.
//!
//! Because every colour class is a matching and graphs are connected, a
//! colour-preserving isomorphism is completely determined by the image of a
//! single vertex: partners propagate.  The search therefore tries each
//! candidate image of vertex 0 in ascending order and propagates, which
//! yields the lexicographically least vertex mapping when one exists.  A
//! per-vertex invariant (boundary flag and the length/shape of each
//! bicoloured residue through the vertex) prunes candidates cheaply.

use super::{Colour, ColouredGraph};

/// A relabelling of the four colours; `perm[c]` is the colour that `c` maps to.
pub type ColourPermutation = [Colour; 4];

/// Per-vertex invariant preserved by colour-preserving isomorphisms.
fn vertex_signatures(g: &ColouredGraph) -> Vec<[(usize, bool); 7]> {
    let n = g.vertex_count();
    let mut sigs = vec![[(0usize, false); 7]; n];
    let mut slot = 0;
    for i in 0..4u8 {
        for j in (i + 1)..4 {
            let pair = [Colour::new(i).unwrap(), Colour::new(j).unwrap()];
            let residues = g.residues(&pair);
            let ids = g.vertex_residue_ids(&pair);
            for v in 0..n {
                let r = &residues[ids[v]];
                sigs[v][slot] = (r.len(), r.is_cycle);
            }
            slot += 1;
        }
    }
    for v in 0..n {
        sigs[v][6] = (usize::from(g.partner(v, Colour::BOUNDARY).is_some()), false);
    }
    sigs
}

/// Attempts to extend `0 ↦ image` to a full colour-preserving isomorphism by
/// propagating partners; `recolour[c]` is the colour in `b` matched against
/// colour `c` in `a`.
fn propagate(
    a: &ColouredGraph,
    b: &ColouredGraph,
    image: usize,
    recolour: &ColourPermutation,
) -> Option<Vec<usize>> {
    let n = a.vertex_count();
    let mut map = vec![usize::MAX; n];
    let mut rmap = vec![usize::MAX; n];
    map[0] = image;
    rmap[image] = 0;
    let mut queue = vec![0usize];
    while let Some(u) = queue.pop() {
        let x = map[u];
        for c in Colour::ALL {
            let pu = a.partner(u, c);
            let px = b.partner(x, recolour[c.index()]);
            match (pu, px) {
                (None, None) => {}
                (Some(p), Some(q)) => {
                    if map[p] == usize::MAX && rmap[q] == usize::MAX {
                        map[p] = q;
                        rmap[q] = p;
                        queue.push(p);
                    } else if map[p] != q {
                        return None;
                    }
                }
                _ => return None,
            }
        }
    }
    // Connectivity of `a` guarantees completeness.
    debug_assert!(map.iter().all(|&x| x != usize::MAX));
    Some(map)
}

/// Colour-preserving isomorphism from `a` to `b`, if one exists.
///
/// Returns the lexicographically least vertex mapping `map[v] = image of v`.
pub fn colour_preserving_isomorphism(a: &ColouredGraph, b: &ColouredGraph) -> Option<Vec<usize>> {
    isomorphism_with_recolouring(a, b, &identity())
}

fn identity() -> ColourPermutation {
    Colour::ALL
}

fn isomorphism_with_recolouring(
    a: &ColouredGraph,
    b: &ColouredGraph,
    recolour: &ColourPermutation,
) -> Option<Vec<usize>> {
    if a.vertex_count() != b.vertex_count() {
        return None;
    }
    let sig_a = vertex_signatures(a);
    let sig_b = vertex_signatures(b);
    // Signature of vertex 0 in `a`, with pair slots reindexed by the
    // recolouring so they compare against `b`'s slots.
    let target = recoloured_signature(&sig_a[0], recolour);
    for image in 0..b.vertex_count() {
        if sig_b[image] != target {
            continue;
        }
        if let Some(map) = propagate(a, b, image, recolour) {
            return Some(map);
        }
    }
    None
}

/// Reindexes the six pair slots of a signature under a colour relabelling.
fn recoloured_signature(
    sig: &[(usize, bool); 7],
    recolour: &ColourPermutation,
) -> [(usize, bool); 7] {
    let slot_of = |i: u8, j: u8| -> usize {
        // Slots enumerate pairs (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
        let (i, j) = (i.min(j), i.max(j));
        match (i, j) {
            (0, 1) => 0,
            (0, 2) => 1,
            (0, 3) => 2,
            (1, 2) => 3,
            (1, 3) => 4,
            (2, 3) => 5,
            _ => unreachable!(),
        }
    };
    let mut out = [(0usize, false); 7];
    for i in 0..4u8 {
        for j in (i + 1)..4 {
            let from = slot_of(i, j);
            let to = slot_of(
                recolour[i as usize].value(),
                recolour[j as usize].value(),
            );
            out[to] = sig[from];
        }
    }
    out[6] = sig[6];
    out
}

/// Isomorphism allowing a relabelling of the colours.
///
/// Returns the first match in lexicographic order of the colour permutation,
/// together with the lex-least vertex mapping for that permutation.  When
/// either graph has boundary vertices the permutation must fix colour 3.
pub fn colour_permuting_isomorphism(
    a: &ColouredGraph,
    b: &ColouredGraph,
) -> Option<(ColourPermutation, Vec<usize>)> {
    let fix_boundary = !a.is_regular() || !b.is_regular();
    if a.is_regular() != b.is_regular() {
        return None;
    }
    let mut values = [0u8, 1, 2, 3];
    let perms = permutations(&mut values);
    for p in perms {
        if fix_boundary && p[3] != 3 {
            continue;
        }
        let recolour: ColourPermutation = [
            Colour::new(p[0]).unwrap(),
            Colour::new(p[1]).unwrap(),
            Colour::new(p[2]).unwrap(),
            Colour::new(p[3]).unwrap(),
        ];
        if let Some(map) = isomorphism_with_recolouring(a, b, &recolour) {
            return Some((recolour, map));
        }
    }
    None
}

/// All permutations of four values in lexicographic order.
fn permutations(values: &mut [u8; 4]) -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(24);
    values.sort_unstable();
    loop {
        out.push(*values);
        // Next lexicographic permutation.
        let mut i = 3;
        while i > 0 && values[i - 1] >= values[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = 3;
        while values[j] <= values[i - 1] {
            j -= 1;
        }
        values.swap(i - 1, j);
        values[i..].reverse();
    }
    out
}
