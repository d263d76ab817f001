//! The parametric graph family Λ((p,h),(q,k)) encoding Seifert fibred spaces
//! over the disk with two exceptional fibres, together with their standard
//! genus-2 Heegaard diagrams, the torus-knot specialization, and a
//! closed-form upper bound for Matveev's complexity.
//!
//! The family is generated by doubling the standard diagram along its planar
//! presentation.  Since the doubling convention fixes colours that the
//! adjacency rules leave open, every generated graph is verified against the
//! rules that are forced — the colour-3 adjacencies, the full residue census
//! and the classification — and construction fails loudly on any mismatch.

use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, GraphClassTag};
use crate::heegaard::{
    chm_of_choices, diagram_from_singular, double_diagram, enumerate_reductions, ComplexityReport,
    Curve, EdgeKind, HalfPlane, HeegaardDiagram, NodeKind, PlanarPresentation, ReductionChoice,
    RouteStep, SurfaceMap, System,
};
use crate::surface::SurfaceType;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Parameters of the family: two coprime pairs `(p, h)` and `(q, k)` with
/// `p, q ≥ 2`, `1 ≤ h ≤ p` and `1 ≤ k ≤ q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LambdaParams {
    pub p: usize,
    pub h: usize,
    pub q: usize,
    pub k: usize,
}

impl LambdaParams {
    /// Validates the coprimality and range conditions.  Both `p ≥ 2` and
    /// `q ≥ 2` are required: with a single crossing on a handle the standard
    /// diagram degenerates and the fibre invariant `h⁻¹ mod p` is undefined.
    pub fn new(p: usize, h: usize, q: usize, k: usize) -> Result<LambdaParams> {
        for (n, r, name) in [(p, h, "(p,h)"), (q, k, "(q,k)")] {
            if n < 2 {
                return Err(Error::invalid(format!(
                    "pair {name} = ({n},{r}): the first entry must be at least 2"
                )));
            }
            if r < 1 || r > n {
                return Err(Error::invalid(format!(
                    "pair {name} = ({n},{r}): the second entry must lie in 1..={n}"
                )));
            }
            if gcd(n, r) != 1 {
                return Err(Error::invalid(format!(
                    "pair {name} = ({n},{r}) is not coprime (gcd {})",
                    gcd(n, r)
                )));
            }
        }
        Ok(LambdaParams { p, h, q, k })
    }
}

impl fmt::Display for LambdaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({},{}),({},{}))", self.p, self.h, self.q, self.k)
    }
}

/// Normalized Seifert invariants over the disk: two exceptional fibres
/// `(p, α)` and `(q, β)` with `αh ≡ 1 (mod p)` and `βk ≡ 1 (mod q)` when
/// derived from [`LambdaParams`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertParams {
    pub p: usize,
    pub alpha: usize,
    pub q: usize,
    pub beta: usize,
}

impl SeifertParams {
    /// Validates fibre coprimality; the base surface is always the disk.
    pub fn new(p: usize, alpha: usize, q: usize, beta: usize) -> Result<SeifertParams> {
        for (n, a, name) in [(p, alpha, "(p,α)"), (q, beta, "(q,β)")] {
            if n < 2 || a < 1 {
                return Err(Error::invalid(format!(
                    "fibre {name} = ({n},{a}): need order at least 2 and a positive \
                     second invariant"
                )));
            }
            if gcd(n, a) != 1 {
                return Err(Error::invalid(format!(
                    "fibre {name} = ({n},{a}) is not coprime (gcd {})",
                    gcd(n, a)
                )));
            }
        }
        Ok(SeifertParams { p, alpha, q, beta })
    }
}

impl fmt::Display for SeifertParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(D²; ({},{}),({},{}))",
            self.p, self.alpha, self.q, self.beta
        )
    }
}

/// Value of the closed-form complexity bound together with its correction
/// terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundFormulaResult {
    /// `max{p−4+δ_α, 0} + max{q−4+δ_β, 0}`.
    pub value: usize,
    /// 1 when `α ≡ ±1 (mod p)`, else 0.
    pub delta_alpha: u8,
    /// 1 when `β ≡ ±1 (mod q)`, else 0.
    pub delta_beta: u8,
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m ≥ 2` for coprime `a`, in `1..m`, by the extended
/// Euclidean algorithm.
fn mod_inverse(a: usize, m: usize) -> usize {
    debug_assert!(m >= 2 && gcd(a, m) == 1);
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as usize
}

/// The Seifert invariants of the manifold encoded by `Λ(params)`:
/// `α = h⁻¹ mod p` and `β = k⁻¹ mod q`.
pub fn seifert_of(params: &LambdaParams) -> SeifertParams {
    SeifertParams {
        p: params.p,
        alpha: mod_inverse(params.h % params.p, params.p),
        q: params.q,
        beta: mod_inverse(params.k % params.q, params.q),
    }
}

/// The closed-form upper bound `max{p−4+δ_α, 0} + max{q−4+δ_β, 0}` for the
/// Matveev complexity of `(D²; (p,α),(q,β))`.
pub fn complexity_bound(s: &SeifertParams) -> BoundFormulaResult {
    let delta = |n: usize, a: usize| -> u8 {
        let a = a % n;
        u8::from(a == 1 % n || (a + 1) % n == 0)
    };
    let delta_alpha = delta(s.p, s.alpha);
    let delta_beta = delta(s.q, s.beta);
    let term = |n: usize, d: u8| (n as i64 - 4 + i64::from(d)).max(0) as usize;
    BoundFormulaResult {
        value: term(s.p, delta_alpha) + term(s.q, delta_beta),
        delta_alpha,
        delta_beta,
    }
}

/// The crossing visit order of the single W curve: starting at `A_h`, within
/// the first circle `A_i → A_{i+h}`, handing over at `A_p → B_k`, within the
/// second circle `B_j → B_{j+k}`, and returning at `B_q → A_h`.  Crossings
/// are numbered `0..p` for `A_1..A_p` and `p..p+q` for `B_1..B_q`.
fn w_crossing_order(params: &LambdaParams) -> Vec<usize> {
    let LambdaParams { p, h, q, k } = *params;
    let mut order = Vec::with_capacity(p + q);
    let mut i = h; // subscript in 1..=p
    loop {
        order.push(i - 1);
        if i == p {
            break;
        }
        i = (i + h - 1) % p + 1;
    }
    let mut j = k;
    loop {
        order.push(p + j - 1);
        if j == q {
            break;
        }
        j = (j + k - 1) % q + 1;
    }
    order
}

/// The standard genus-2 Heegaard diagram of type `((p,h),(q,k))`: two V
/// circles carrying the crossings `A_1..A_p` and `B_1..B_q` in cyclic order,
/// one W curve visiting them via the connection pattern of
/// [`w_crossing_order`], and the planar presentation that the doubling
/// construction consumes.
pub fn standard_diagram(params: &LambdaParams) -> Result<HeegaardDiagram> {
    let LambdaParams { p, q, .. } = *params;
    let n = p + q;
    let w_order = w_crossing_order(params);
    if w_order.len() != n || w_order.iter().collect::<BTreeSet<_>>().len() != n {
        return Err(Error::consistency(format!(
            "the W connection pattern of {params} visits {} of {n} crossings; the \
             coprimality invariant is broken",
            w_order.iter().collect::<BTreeSet<_>>().len()
        )));
    }
    // Positions of each crossing along the W curve.
    let mut w_pos = vec![0usize; n];
    for (t, &c) in w_order.iter().enumerate() {
        w_pos[c] = t;
    }

    // Map skeleton.  Edge ids: V arcs of circle A are 0..p (arc i joins
    // crossing i to i+1 cyclically), V arcs of circle B are p..p+q (arc p+j
    // joins crossing p+j to its cyclic successor), W arcs are p+q..2(p+q) in
    // W traversal order.  The outgoing V arc of a crossing shares its id.
    let v_arc_in = |c: usize| {
        if c < p {
            (c + p - 1) % p
        } else {
            p + (c - p + q - 1) % q
        }
    };
    let mut nodes = Vec::with_capacity(n);
    for c in 0..n {
        let v_curve = if c < p { 0 } else { 1 };
        let t = w_pos[c];
        let w_in = n + (t + n - 1) % n;
        let w_out = n + t;
        // Counterclockwise rotation: outgoing V arc, incoming W arc,
        // incoming V arc, outgoing W arc.
        let rotation = vec![(c, 0u8), (w_in, 1u8), (v_arc_in(c), 1u8), (w_out, 0u8)];
        nodes.push((NodeKind::Crossing { v_curve, w_curve: 2 }, rotation));
    }
    let mut edges = Vec::with_capacity(2 * n);
    for curve in 0..3usize {
        let count = [p, q, n][curve];
        for _ in 0..count {
            edges.push((EdgeKind::CurveArc { curve }, false));
        }
    }
    let map = SurfaceMap::assemble(nodes, edges)?;

    let expected = SurfaceType {
        orientable: true,
        genus: 2,
        boundary_components: 0,
    };
    if map.surface() != expected || map.face_count() != n - 2 {
        return Err(Error::consistency(format!(
            "the standard diagram of type {params} assembled into {} with {} faces \
             instead of a genus-2 surface with {} faces",
            map.surface(),
            map.face_count(),
            n - 2
        )));
    }

    let curves = vec![
        Curve {
            system: System::V,
            nodes: (0..p).collect(),
            arcs: (0..p).collect(),
            label: "V circle A".into(),
        },
        Curve {
            system: System::V,
            nodes: (p..n).collect(),
            arcs: (p..n).collect(),
            label: "V circle B".into(),
        },
        Curve {
            system: System::W,
            nodes: w_order.clone(),
            arcs: (n..2 * n).collect(),
            label: "W curve".into(),
        },
    ];

    // Planar presentation: the route alternates handle passages (in W order)
    // with axis crossings; the axis line meets the curve once after every
    // handle passage, ordered by crossing subscript.
    let route = w_order
        .iter()
        .flat_map(|&c| {
            let (v_curve, slot) = if c < p { (0, c) } else { (1, c - p) };
            [RouteStep::Handle { v_curve, slot }, RouteStep::Axis]
        })
        .collect::<Vec<_>>();
    let axis = (0..n).map(|c| (0usize, 2 * w_pos[c] + 1)).collect();
    let planar = PlanarPresentation {
        handle_slots: vec![p, q],
        routes: vec![route],
        axis,
        start_plane: vec![HalfPlane::Upper],
    };

    let diagram = HeegaardDiagram {
        map,
        curves,
        free_circles: Vec::new(),
        planar: Some(planar),
        label: format!("standard diagram of type {params}"),
    };
    diagram.validate()?;
    diagram
        .planar
        .as_ref()
        .expect("just constructed")
        .validate(&diagram)?;
    Ok(diagram)
}

/// Canonical vertex numbering of `Λ((p,h),(q,k))` on `4(p+q)` vertices:
/// `A_i = i−1`, `A′_i = p+i−1`, `C_i = 2p+i−1`, `C′_i = 3p+i−1`,
/// `B_j = 4p+j−1`, `B′_j = 4p+q+j−1`, `D_j = 4p+2q+j−1`, `D′_j = 4p+3q+j−1`.
struct LambdaNames {
    p: usize,
    q: usize,
}

impl LambdaNames {
    fn a(&self, i: usize) -> usize {
        i - 1
    }
    fn a_prime(&self, i: usize) -> usize {
        self.p + i - 1
    }
    fn c(&self, i: usize) -> usize {
        2 * self.p + i - 1
    }
    fn c_prime(&self, i: usize) -> usize {
        3 * self.p + i - 1
    }
    fn b(&self, j: usize) -> usize {
        4 * self.p + j - 1
    }
    fn b_prime(&self, j: usize) -> usize {
        4 * self.p + self.q + j - 1
    }
    fn d(&self, j: usize) -> usize {
        4 * self.p + 2 * self.q + j - 1
    }
    fn d_prime(&self, j: usize) -> usize {
        4 * self.p + 3 * self.q + j - 1
    }
}

/// The colour-3 adjacency rules of `Λ((p,h),(q,k))` in canonical numbering:
/// `(A′_i, A_{i+h})` and `(C′_i, C_{i+h})` for `i < p`, the hand-over edges
/// `(A′_p, B_k)` and `(C′_p, D_k)`, and symmetrically on the second handle
/// with `(B′_q, A_h)` and `(D′_q, C_h)`.  Subscripts reduce mod `p` (resp.
/// `q`) into `{1..p}` (resp. `{1..q}`).
fn lambda_colour3_rule(params: &LambdaParams) -> BTreeSet<(usize, usize)> {
    let LambdaParams { p, h, q, k } = *params;
    let names = LambdaNames { p, q };
    let addp = |i: usize, d: usize| (i + d - 1) % p + 1;
    let addq = |j: usize, d: usize| (j + d - 1) % q + 1;
    let mut set = BTreeSet::new();
    let mut insert = |u: usize, v: usize| {
        set.insert((u.min(v), u.max(v)));
    };
    for i in 1..p {
        insert(names.a_prime(i), names.a(addp(i, h)));
        insert(names.c_prime(i), names.c(addp(i, h)));
    }
    for j in 1..q {
        insert(names.b_prime(j), names.b(addq(j, k)));
        insert(names.d_prime(j), names.d(addq(j, k)));
    }
    insert(names.a_prime(p), names.b(k));
    insert(names.c_prime(p), names.d(k));
    insert(names.b_prime(q), names.a(h));
    insert(names.d_prime(q), names.c(h));
    set
}

/// The full derived edge table of `Λ((p,h),(q,k))` in canonical numbering.
/// Colour 3 follows [`lambda_colour3_rule`]; colour 1 joins each vertex to
/// its primed partner, colour 0 each vertex to its doubling twin, and colour
/// 2 closes the two handle cycles and the axis cycle.  An independent oracle
/// for the doubling construction, used by the tests only.
#[cfg(test)]
fn lambda_edge_table(params: &LambdaParams) -> Vec<(usize, usize, u8)> {
    let LambdaParams { p, q, .. } = *params;
    let names = LambdaNames { p, q };
    let mut edges = Vec::with_capacity(8 * (p + q));
    for i in 1..=p {
        edges.push((names.a(i), names.a_prime(i), 1));
        edges.push((names.c(i), names.c_prime(i), 1));
        edges.push((names.a(i), names.c(i), 0));
        edges.push((names.a_prime(i), names.c_prime(i), 0));
        edges.push((names.c(i), names.a(i % p + 1), 2));
    }
    for j in 1..=q {
        edges.push((names.b(j), names.b_prime(j), 1));
        edges.push((names.d(j), names.d_prime(j), 1));
        edges.push((names.b(j), names.d(j), 0));
        edges.push((names.b_prime(j), names.d_prime(j), 0));
        edges.push((names.d(j), names.b(j % q + 1), 2));
    }
    for i in 1..p {
        edges.push((names.c_prime(i), names.a_prime(i + 1), 2));
    }
    edges.push((names.c_prime(p), names.b_prime(1), 2));
    for j in 1..q {
        edges.push((names.d_prime(j), names.b_prime(j + 1), 2));
    }
    edges.push((names.d_prime(q), names.a_prime(1), 2));
    for (u, v) in lambda_colour3_rule(params) {
        edges.push((u, v, 3));
    }
    edges
}

/// The expected residue census of `Λ((p,h),(q,k))`:
/// `(g₀₁, g₀₂, g₀₃, g₁₂, g₁₃, g₂₃) = (p+q, 3, p+q, p+q−1, 2, p+q−1)`.
fn lambda_census(params: &LambdaParams) -> [usize; 6] {
    let n = params.p + params.q;
    [n, 3, n, n - 1, 2, n - 1]
}

/// Generates `Λ((p,h),(q,k))` by doubling the standard diagram along its
/// planar presentation and renaming the vertices canonically, then verifies
/// the colour-3 adjacency rules, the residue census, and the classification
/// as a singular-regular graph with a single toroidal singularity.  Any
/// mismatch aborts the construction.
pub fn lambda_graph(params: &LambdaParams) -> Result<ColouredGraph> {
    let LambdaParams { p, q, .. } = *params;
    let diagram = standard_diagram(params)?;
    let doubled = double_diagram(&diagram)?;

    // Rename: route step 2t is the handle passage of the t-th crossing along
    // the W curve and step 2t+1 its axis crossing; doubling numbered step s
    // as original 2s / twin 2s+1.
    let names = LambdaNames { p, q };
    let w_order = w_crossing_order(params);
    let total = 4 * (p + q);
    let mut rename = vec![usize::MAX; total];
    for (t, &c) in w_order.iter().enumerate() {
        // Route steps 2t (handle) and 2t+1 (axis) became doubled vertices
        // 2s and 2s+1 for step s, hence the block of four ids below.
        let (orig_handle, twin_handle, orig_axis, twin_axis) =
            (4 * t, 4 * t + 1, 4 * t + 2, 4 * t + 3);
        let (handle_name, handle_twin, axis_name, axis_twin) = if c < p {
            let i = c + 1;
            (names.a(i), names.c(i), names.a_prime(i), names.c_prime(i))
        } else {
            let j = c - p + 1;
            (names.b(j), names.d(j), names.b_prime(j), names.d_prime(j))
        };
        rename[orig_handle] = handle_name;
        rename[twin_handle] = handle_twin;
        rename[orig_axis] = axis_name;
        rename[twin_axis] = axis_twin;
    }
    if rename.iter().any(|&v| v == usize::MAX) {
        return Err(Error::consistency(format!(
            "renaming Λ{params} left vertices unnamed; the doubling did not produce \
             four vertices per crossing"
        )));
    }
    let relabelled: Vec<(usize, usize, u8)> = doubled
        .edges()
        .into_iter()
        .map(|(u, v, colour)| (rename[u], rename[v], colour.value()))
        .collect();
    let graph = ColouredGraph::new(total, &relabelled)?.with_name(format!("lambda{params}"));

    // Loud verification against everything the adjacency rules force.
    let colour3: BTreeSet<(usize, usize)> = graph
        .edges()
        .into_iter()
        .filter(|&(_, _, c)| c == Colour::BOUNDARY)
        .map(|(u, v, _)| (u, v))
        .collect();
    let expected3 = lambda_colour3_rule(params);
    if colour3 != expected3 {
        return Err(Error::consistency(format!(
            "Λ{params}: doubled colour-3 edges disagree with the adjacency rules \
             (unexpected: {:?}, missing: {:?})",
            colour3.difference(&expected3).collect::<Vec<_>>(),
            expected3.difference(&colour3).collect::<Vec<_>>(),
        )));
    }
    let census = graph.residue_census().six_tuple();
    if census != lambda_census(params) {
        return Err(Error::consistency(format!(
            "Λ{params}: residue census {census:?} differs from the required {:?}",
            lambda_census(params)
        )));
    }
    let class = graph.classify();
    if class.tag != GraphClassTag::SingularRegular(Colour::new(0)?) {
        return Err(Error::consistency(format!(
            "Λ{params} classifies as {} instead of singular-regular with singular \
             colour 0",
            class.tag
        )));
    }
    for (colour, surfaces) in &class.residue_surfaces {
        for surface in surfaces {
            let expected = if colour.value() == 0 {
                SurfaceType::TORUS
            } else {
                SurfaceType::SPHERE
            };
            if *surface != expected {
                return Err(Error::consistency(format!(
                    "Λ{params}: a residue complementary to colour {colour} is a \
                     {surface}, expected {expected}"
                )));
            }
        }
    }
    Ok(graph)
}

/// The Heegaard diagram of `Λ(params)` extracted with splitting colour 1:
/// V curves are the `{0,2}`-cycles (two handle cycles and the axis cycle)
/// and W curves the two `{1,3}`-cycles.
pub fn lambda_diagram(params: &LambdaParams) -> Result<HeegaardDiagram> {
    let graph = lambda_graph(params)?;
    diagram_from_singular(&graph, Colour::new(1)?)
}

/// Parameters of the Λ graph representing the complement of the torus knot
/// `t(p,q)`: `Λ((p,q),(q,p′))` with `p′ ≡ p (mod q)`, `1 ≤ p′ ≤ q−1`.
pub fn torus_knot_params(p: usize, q: usize) -> Result<LambdaParams> {
    if q < 2 || p <= q {
        return Err(Error::invalid(format!(
            "torus knot t({p},{q}) needs p > q ≥ 2"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(Error::invalid(format!(
            "torus knot t({p},{q}) needs coprime parameters (gcd {})",
            gcd(p, q)
        )));
    }
    LambdaParams::new(p, q, q, p % q)
}

/// The Λ graph representing the complement of the torus knot `t(p,q)` in the
/// 3-sphere.
pub fn torus_knot_graph(p: usize, q: usize) -> Result<ColouredGraph> {
    lambda_graph(&torus_knot_params(p, q)?)
}

/// The distinguished reduction of the colour-1 diagram of `Λ(params)`:
/// remove the length-`2(p+q)` `{0,2}`-cycle (the axis cycle) from the V
/// system and the better of the two `{1,3}`-cycles from the W system.  Both
/// choices are located among the enumerated admissible reductions, so the
/// result carries genuine forest witnesses.
pub fn canonical_reduction(params: &LambdaParams) -> Result<ComplexityReport> {
    let diagram = lambda_diagram(params)?;
    let axis_len = 2 * (params.p + params.q);
    let candidates: Vec<usize> = diagram
        .system_curves(System::V)
        .into_iter()
        .filter(|&c| diagram.curves[c].nodes.len() == axis_len)
        .collect();
    if candidates.len() != 1 {
        return Err(Error::consistency(format!(
            "Λ{params}: expected exactly one {{0,2}}-cycle of length {axis_len}, \
             found {}",
            candidates.len()
        )));
    }
    let axis = candidates[0];
    let (choices, truncated) = enumerate_reductions(&diagram, 100_000)?;
    if truncated {
        return Err(Error::consistency(format!(
            "Λ{params}: reduction enumeration truncated on a five-curve diagram"
        )));
    }
    let mut canonical: Vec<ReductionChoice> = Vec::new();
    for choice in choices {
        if choice.removed_v == [axis]
            && choice.removed_w.len() == 1
            && !canonical.iter().any(|c| c.removed_w == choice.removed_w)
        {
            canonical.push(choice);
        }
    }
    if canonical.len() != 2 {
        return Err(Error::consistency(format!(
            "Λ{params}: expected the axis removal to pair with both {{1,3}}-cycles, \
             found {} admissible pairings",
            canonical.len()
        )));
    }
    chm_of_choices(&diagram, &canonical, Some(1))
}

/// All valid parameter tuples with `p + q ≤ max_sum`, in lexicographic
/// `(p, h, q, k)` order.
pub fn lambda_params_sweep(max_sum: usize) -> Vec<LambdaParams> {
    let mut params = Vec::new();
    for p in 2..=max_sum.saturating_sub(2) {
        for h in 1..=p {
            if gcd(p, h) != 1 {
                continue;
            }
            for q in 2..=max_sum - p {
                for k in 1..=q {
                    if gcd(q, k) == 1 {
                        params.push(LambdaParams { p, h, q, k });
                    }
                }
            }
        }
    }
    params
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::iso::colour_preserving_isomorphism;
    use crate::heegaard::{
        chm_diagram, condition_star, gm_complexity, is_connected_diagram, regions,
        survivor_regions, SearchOptions, SearchStatus,
    };

    #[test]
    fn params_are_validated() {
        assert!(LambdaParams::new(3, 2, 2, 1).is_ok());
        assert!(LambdaParams::new(4, 2, 3, 1).is_err(), "gcd(4,2) = 2");
        assert!(LambdaParams::new(4, 3, 2, 2).is_err(), "gcd(2,2) = 2");
        assert!(LambdaParams::new(1, 1, 2, 1).is_err(), "p must be ≥ 2");
        assert!(LambdaParams::new(3, 4, 2, 1).is_err(), "h must be ≤ p");
        assert!(LambdaParams::new(3, 0, 2, 1).is_err(), "h must be ≥ 1");
    }

    #[test]
    fn w_order_visits_every_crossing_once() {
        let params = LambdaParams::new(5, 3, 3, 2).unwrap();
        assert_eq!(w_crossing_order(&params), vec![2, 0, 3, 1, 4, 6, 5, 7]);
        // A₃ A₁ A₄ A₂ A₅ | B₂ B₁ B₃: multiples of 3 mod 5, then of 2 mod 3.
    }

    #[test]
    fn standard_diagram_is_a_genus_two_diagram() {
        let params = LambdaParams::new(3, 2, 2, 1).unwrap();
        let d = standard_diagram(&params).unwrap();
        assert_eq!(d.crossing_count(), 5);
        assert_eq!(d.curves.len(), 3);
        assert_eq!(d.system_curves(System::V).len(), 2);
        assert_eq!(
            d.surface(),
            SurfaceType {
                orientable: true,
                genus: 2,
                boundary_components: 0
            }
        );
        assert_eq!(d.map.face_count(), 3);
        assert!(condition_star(&d));
        assert!(is_connected_diagram(&d));
    }

    #[test]
    fn standard_diagram_chm_matches_the_known_values() {
        let trefoil = standard_diagram(&LambdaParams::new(3, 2, 2, 1).unwrap()).unwrap();
        let report = chm_diagram(&trefoil, &SearchOptions::default()).unwrap();
        assert_eq!(report.value, 0, "5 − 5 = 0");
        assert_eq!(report.n_singular, 5);
        assert_eq!(report.best_region_size, 5);
        assert_eq!(report.status, SearchStatus::Complete);

        let t53 = standard_diagram(&LambdaParams::new(5, 3, 3, 2).unwrap()).unwrap();
        let report = chm_diagram(&t53, &SearchOptions::default()).unwrap();
        assert_eq!(report.value, 1, "8 − 7 = 1");
        assert_eq!(report.n_singular, 8);
        assert_eq!(report.best_region_size, 7);
    }

    #[test]
    fn maximal_region_of_t53_misses_exactly_a2() {
        let params = LambdaParams::new(5, 3, 3, 2).unwrap();
        let d = standard_diagram(&params).unwrap();
        let report = chm_diagram(&d, &SearchOptions::default()).unwrap();
        assert!(report.witness.removed_v.is_empty());
        assert!(report.witness.removed_w.is_empty());
        let best = regions(&d)
            .unwrap()
            .into_iter()
            .find(|r| r.piece == report.witness.region)
            .unwrap();
        // Crossing node 1 is A₂; every other crossing lies on the region.
        assert_eq!(best.crossings, vec![0, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn lambda_graph_matches_the_trefoil_data() {
        let params = LambdaParams::new(3, 2, 2, 1).unwrap();
        let g = lambda_graph(&params).unwrap();
        assert_eq!(g.vertex_count(), 20);
        assert_eq!(g.residue_census().six_tuple(), [5, 3, 5, 4, 2, 4]);
        assert!(g.is_bipartite());
        assert_eq!(g.name(), Some("lambda((3,2),(2,1))"));
    }

    #[test]
    fn doubling_agrees_with_the_derived_edge_table() {
        for (p, h, q, k) in [(3, 2, 2, 1), (2, 1, 2, 1), (5, 3, 3, 2), (4, 1, 3, 1)] {
            let params = LambdaParams::new(p, h, q, k).unwrap();
            let g = lambda_graph(&params).unwrap();
            let got: BTreeSet<(usize, usize, u8)> = g
                .edges()
                .into_iter()
                .map(|(u, v, c)| (u, v, c.value()))
                .collect();
            let expected: BTreeSet<(usize, usize, u8)> = lambda_edge_table(&params)
                .into_iter()
                .map(|(u, v, c)| (u.min(v), u.max(v), c))
                .collect();
            assert_eq!(got, expected, "Λ(({p},{h}),({q},{k}))");
        }
    }

    #[test]
    fn seifert_invariants_are_modular_inverses() {
        let s = seifert_of(&LambdaParams::new(3, 2, 2, 1).unwrap());
        assert_eq!((s.alpha, s.beta), (2, 1));
        let s = seifert_of(&LambdaParams::new(5, 2, 2, 1).unwrap());
        assert_eq!((s.alpha, s.beta), (3, 1));
        let s = seifert_of(&LambdaParams::new(5, 1, 4, 1).unwrap());
        assert_eq!((s.alpha, s.beta), (1, 1), "1 is self-inverse");
        let s = seifert_of(&LambdaParams::new(5, 3, 3, 2).unwrap());
        assert_eq!((s.alpha, s.beta), (2, 2));
    }

    #[test]
    fn bound_formula_reproduces_the_known_values() {
        let bound = |p, q| complexity_bound(&seifert_of(&torus_knot_params(p, q).unwrap()));
        assert_eq!(bound(4, 3).value, 1);
        assert_eq!((bound(4, 3).delta_alpha, bound(4, 3).delta_beta), (1, 1));
        assert_eq!(bound(5, 2).value, 1);
        assert_eq!(bound(5, 3).value, 1);
        let klein = complexity_bound(&SeifertParams::new(2, 1, 2, 1).unwrap());
        assert_eq!(klein.value, 0);
        let s33 = complexity_bound(&SeifertParams::new(3, 1, 3, 1).unwrap());
        assert_eq!(s33.value, 0);
    }

    #[test]
    fn bound_formula_torus_knot_families() {
        // t(p, p−1) → 2p−7 for p ≥ 4; t(p,2) and t(p,3) → p−4 for p ≥ 5.
        for p in 4..=9 {
            assert_eq!(
                complexity_bound(&seifert_of(&torus_knot_params(p, p - 1).unwrap())).value,
                2 * p - 7
            );
        }
        for p in [5, 7, 9, 11] {
            assert_eq!(
                complexity_bound(&seifert_of(&torus_knot_params(p, 2).unwrap())).value,
                p - 4
            );
        }
        for p in [5, 7, 8, 10] {
            assert_eq!(
                complexity_bound(&seifert_of(&torus_knot_params(p, 3).unwrap())).value,
                p - 4
            );
        }
        // Generic coprime p > q > 3 with p ≢ ±1 (mod q) lands on p+q−8.
        for (p, q) in [(7, 5), (9, 7), (11, 7), (12, 5)] {
            assert_eq!(
                complexity_bound(&seifert_of(&torus_knot_params(p, q).unwrap())).value,
                p + q - 8,
                "t({p},{q})"
            );
        }
        // When p ≡ ±1 (mod q) the second correction term stays: t(9,4) is
        // 9 ≡ 1 (mod 4), so the bound is p+q−7.
        assert_eq!(
            complexity_bound(&seifert_of(&torus_knot_params(9, 4).unwrap())).value,
            6
        );
    }

    #[test]
    fn torus_knot_parameters_are_the_specialization() {
        assert_eq!(
            torus_knot_params(3, 2).unwrap(),
            LambdaParams::new(3, 2, 2, 1).unwrap()
        );
        assert_eq!(
            torus_knot_params(5, 3).unwrap(),
            LambdaParams::new(5, 3, 3, 2).unwrap()
        );
        assert!(torus_knot_params(4, 2).is_err(), "not coprime");
        assert!(torus_knot_params(2, 3).is_err(), "needs p > q");
        let knot = torus_knot_graph(3, 2).unwrap();
        let lambda = lambda_graph(&LambdaParams::new(3, 2, 2, 1).unwrap()).unwrap();
        assert_eq!(knot.edges(), lambda.edges());
    }

    #[test]
    fn trefoil_gm_complexity_is_zero() {
        let g = torus_knot_graph(3, 2).unwrap();
        let report = gm_complexity(&g, None, &SearchOptions::default()).unwrap();
        assert_eq!(report.value, 0);
        assert_eq!(report.n_singular, 5);
        assert_eq!(report.best_region_size, 5);
        assert_eq!(report.status, SearchStatus::Complete);
        assert_eq!(report.witness.alpha, Some(1));
    }

    #[test]
    fn canonical_reduction_of_the_trefoil() {
        let params = LambdaParams::new(3, 2, 2, 1).unwrap();
        let report = canonical_reduction(&params).unwrap();
        assert_eq!(report.value, 0);
        assert_eq!(report.n_singular, 5);
        assert_eq!(report.best_region_size, 5);
        // The axis cycle is the middle V curve by least-vertex order.
        assert_eq!(report.witness.removed_v, vec![1]);
        assert_eq!(report.witness.removed_w.len(), 1);
    }

    #[test]
    fn canonical_region_contains_the_distinguished_crossings() {
        for (p, h, q, k) in [(3, 2, 2, 1), (5, 3, 3, 2), (4, 1, 3, 2)] {
            let params = LambdaParams::new(p, h, q, k).unwrap();
            let diagram = lambda_diagram(&params).unwrap();
            let report = canonical_reduction(&params).unwrap();
            let names = LambdaNames { p, q };
            // The surviving W copy determines which crossing family stays
            // singular: removing the twin keeps A/B, removing the original
            // keeps C/D.
            let removed_w = report.witness.removed_w[0];
            let keeps_original = diagram.curves[removed_w].nodes.contains(&names.c(1));
            let expect: BTreeSet<usize> = if keeps_original {
                [
                    names.a(1),
                    names.a(p),
                    names.a(h),
                    names.a(h % p + 1),
                    names.b(1),
                    names.b(q),
                    names.b(k),
                    names.b(k % q + 1),
                ]
                .into()
            } else {
                [
                    names.c(1),
                    names.c(p),
                    names.c(h),
                    names.c(h % p + 1),
                    names.d(1),
                    names.d(q),
                    names.d(k),
                    names.d(k % q + 1),
                ]
                .into()
            };
            let regions = survivor_regions(
                &diagram,
                &report.witness.removed_v,
                &report.witness.removed_w,
            )
            .unwrap();
            let best = regions
                .into_iter()
                .find(|r| r.piece == report.witness.region)
                .unwrap();
            let crossings: BTreeSet<usize> = best.crossings.iter().copied().collect();
            assert!(
                expect.is_subset(&crossings),
                "Λ(({p},{h}),({q},{k})): maximal region {crossings:?} misses part \
                 of {expect:?}"
            );
        }
    }

    #[test]
    fn canonical_reduction_achieves_the_formula_on_small_parameters() {
        for params in lambda_params_sweep(7) {
            let formula = complexity_bound(&seifert_of(&params)).value;
            let report = canonical_reduction(&params).unwrap();
            assert_eq!(report.value, formula, "Λ{params}");
            assert_eq!(report.n_singular, params.p + params.q, "Λ{params}");
        }
    }

    #[test]
    fn handle_swap_symmetry() {
        let a = lambda_graph(&LambdaParams::new(3, 2, 2, 1).unwrap()).unwrap();
        let b = lambda_graph(&LambdaParams::new(2, 1, 3, 2).unwrap()).unwrap();
        assert!(colour_preserving_isomorphism(&a, &b).is_some());
    }

    #[test]
    fn sweep_enumerates_exactly_the_valid_tuples() {
        let sweep = lambda_params_sweep(6);
        let tuples: Vec<(usize, usize, usize, usize)> =
            sweep.iter().map(|l| (l.p, l.h, l.q, l.k)).collect();
        assert_eq!(
            tuples,
            vec![
                (2, 1, 2, 1),
                (2, 1, 3, 1),
                (2, 1, 3, 2),
                (2, 1, 4, 1),
                (2, 1, 4, 3),
                (3, 1, 2, 1),
                (3, 1, 3, 1),
                (3, 1, 3, 2),
                (3, 2, 2, 1),
                (3, 2, 3, 1),
                (3, 2, 3, 2),
                (4, 1, 2, 1),
                (4, 3, 2, 1),
            ]
        );
        for params in lambda_params_sweep(12) {
            assert!(LambdaParams::new(params.p, params.h, params.q, params.k).is_ok());
        }
    }
}
