//! Property suites over structured corpora and randomized colourings.
//!
//! Where a value can be recomputed by a genuinely different algorithm, the
//! tests do so (disjoint-set face counting against the embedding walker, the
//! classical forest-size formula against the enumerated witnesses, brute
//! force against the signature-guided isomorphism search) rather than
//! repeating the library's own computation.

use gemcraft::complex::desingularize;
use gemcraft::embedding::{embed, genus_formulas, CyclicOrder};
use gemcraft::graph::iso::{colour_permuting_isomorphism, colour_preserving_isomorphism};
use gemcraft::heegaard::{
    diagram_from_closed, diagram_from_gem, diagram_from_singular, enumerate_reductions,
    gm_complexity, system_analysis, HeegaardDiagram, SearchMode, SearchOptions, System,
};
use gemcraft::seifert::{
    lambda_diagram, lambda_graph, lambda_params_sweep, standard_diagram, LambdaParams,
};
use gemcraft::{Colour, ColouredGraph, Error};
use itertools::Itertools;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn colour(c: u8) -> Colour {
    Colour::new(c).unwrap()
}

fn sphere_gem() -> ColouredGraph {
    ColouredGraph::new(2, &[(0, 1, 0), (0, 1, 1), (0, 1, 2), (0, 1, 3)]).unwrap()
}

fn ball_gem() -> ColouredGraph {
    ColouredGraph::new(2, &[(0, 1, 0), (0, 1, 1), (0, 1, 2)]).unwrap()
}

fn torus_singularity_graph() -> ColouredGraph {
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

fn torus_boundary_asset() -> ColouredGraph {
    gemcraft::io::graph_from_json(include_str!("data/torus_boundary.gem.json")).unwrap()
}

/// Deterministic corpus: the fixtures, the frozen asset, the Λ family up to
/// p+q = 7, their desingularizations up to p+q = 6, and two doubles.
fn corpus() -> Vec<ColouredGraph> {
    let mut graphs = vec![
        sphere_gem(),
        ball_gem(),
        torus_singularity_graph(),
        torus_boundary_asset(),
    ];
    for params in lambda_params_sweep(7) {
        graphs.push(lambda_graph(&params).unwrap());
    }
    for params in lambda_params_sweep(6) {
        let lambda = lambda_graph(&params).unwrap();
        graphs.push(desingularize(&lambda).unwrap().graph);
    }
    for (p, h, q, k) in [(3, 2, 2, 1), (4, 3, 3, 2)] {
        let diagram = standard_diagram(&LambdaParams::new(p, h, q, k).unwrap()).unwrap();
        graphs.push(gemcraft::heegaard::double_diagram(&diagram).unwrap());
    }
    graphs
}

/// A plain disjoint-set union, used to recount faces independently of the
/// residue walker.
struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Face census of the embedding induced by `order`, recounted with a
/// disjoint-set union over vertices: for every consecutive colour pair the
/// components of the subgraph on those two colours are the candidate faces,
/// and a component is an internal face exactly when all of its vertices
/// carry both colours (otherwise it is a path closing through the boundary).
fn dsu_face_census(graph: &ColouredGraph, order: &CyclicOrder) -> (usize, usize) {
    let n = graph.vertex_count();
    let eps = order.boundary_last();
    let (mut internal, mut regions) = (0usize, 0usize);
    for i in 0..4 {
        let pair = [eps[i], eps[(i + 1) % 4]];
        let mut dsu = Dsu::new(n);
        let mut degree = vec![0u8; n];
        for &(u, v, c) in graph.edges().iter() {
            if pair.contains(&c) {
                dsu.union(u, v);
                degree[u] += 1;
                degree[v] += 1;
            }
        }
        let mut component_is_cycle: std::collections::BTreeMap<usize, bool> =
            std::collections::BTreeMap::new();
        for v in 0..n {
            let root = dsu.find(v);
            let entry = component_is_cycle.entry(root).or_insert(true);
            *entry &= degree[v] == 2;
        }
        for (_, is_cycle) in component_is_cycle {
            if is_cycle {
                internal += 1;
            } else {
                regions += 1;
            }
        }
    }
    (internal, regions)
}

/// Suite (a): on every corpus graph and every cyclic order, the embedding
/// satisfies V − E + F = χ with the faces recounted independently, the
/// boundary regions equal the boundary vertices, and capping adds exactly
/// one to χ per boundary circle.
#[test]
fn euler_identity_holds_on_every_corpus_embedding() {
    for graph in corpus() {
        let n = graph.vertex_count();
        let e = graph.edge_count();
        for order in CyclicOrder::all() {
            let emb = embed(&graph, &order).unwrap();
            let (internal, regions) = dsu_face_census(&graph, &order);
            assert_eq!(emb.vertices, n);
            assert_eq!(emb.edges, e);
            assert_eq!(emb.internal_faces, internal, "order {order}");
            assert_eq!(emb.boundary_regions, regions, "order {order}");
            assert_eq!(regions, graph.boundary_vertices().len(), "order {order}");
            let chi = n as i64 - e as i64 + internal as i64;
            assert_eq!(emb.surface.euler_characteristic(), chi, "order {order}");
            assert_eq!(
                emb.capped_surface.euler_characteristic(),
                chi + emb.surface.boundary_components as i64,
                "order {order}"
            );
            assert_eq!(emb.capped_surface.boundary_components, 0);
            assert_eq!(emb.surface.orientable, graph.is_bipartite());
        }
    }
}

/// Suite (b): both residue-count genus expressions agree with the
/// χ-derived genus on every gem of the corpus for all three orders, and the
/// computation is refused with a precondition error on singular-regular
/// graphs.
#[test]
fn genus_formula_variants_agree_on_gems_and_refuse_singular_graphs() {
    let mut gems = vec![sphere_gem(), ball_gem(), torus_boundary_asset()];
    for params in lambda_params_sweep(8) {
        let lambda = lambda_graph(&params).unwrap();
        gems.push(desingularize(&lambda).unwrap().graph);
    }
    for gem in &gems {
        for order in CyclicOrder::all() {
            let formulas = genus_formulas(gem, &order).unwrap();
            assert_eq!(
                formulas.variant_a, formulas.by_euler as i64,
                "{:?} order {order}",
                gem.name()
            );
            assert_eq!(
                formulas.variant_b, formulas.by_euler as i64,
                "{:?} order {order}",
                gem.name()
            );
        }
    }

    let mut singular = vec![torus_singularity_graph()];
    for params in lambda_params_sweep(6) {
        singular.push(lambda_graph(&params).unwrap());
    }
    for graph in &singular {
        for order in CyclicOrder::all() {
            let err = genus_formulas(graph, &order).unwrap_err();
            assert!(
                matches!(err, Error::Precondition(_)),
                "expected a precondition refusal, got {err}"
            );
        }
    }
}

/// The classical forest-size count `|𝒞| − g − max{0, h−1} + Σ ∂g_j`,
/// recomputed from the cut decomposition of one curve system.
fn forest_size_formula(diagram: &HeegaardDiagram, system: System) -> usize {
    assert!(diagram.surface().orientable);
    let analysis = system_analysis(diagram, system).unwrap();
    let curves = diagram.system_curves(system).len() as i64;
    let g = diagram.surface().genus as i64;
    let h = analysis.dual.plus_nodes.len() as i64;
    let boundary_genus: i64 = analysis
        .dual
        .plus_nodes
        .iter()
        .map(|&p| {
            let chi = analysis.dual.pieces[p].closed_chi();
            assert_eq!(chi % 2, 0, "orientable piece with odd capped χ");
            (2 - chi) / 2
        })
        .sum();
    let value = curves - g - (h - 1).max(0) + boundary_genus;
    assert!(value >= 0, "formula went negative: {value}");
    value as usize
}

/// Suite (c): every enumerated reduction removes exactly as many curves per
/// system as the forest-size formula demands, with one witness forest edge
/// per removal.
#[test]
fn forest_size_formula_holds_for_every_enumerated_reduction() {
    let mut diagrams: Vec<HeegaardDiagram> = Vec::new();
    for params in lambda_params_sweep(8) {
        diagrams.push(standard_diagram(&params).unwrap());
        diagrams.push(lambda_diagram(&params).unwrap());
    }
    let asset = torus_boundary_asset();
    for a in 0..3 {
        diagrams.push(diagram_from_gem(&asset, colour(a)).unwrap());
    }
    let fixture = torus_singularity_graph();
    for a in 1..4 {
        diagrams.push(diagram_from_singular(&fixture, colour(a)).unwrap());
    }
    for a in 1..4 {
        diagrams.push(diagram_from_closed(&sphere_gem(), colour(a)).unwrap());
    }

    let mut total = 0usize;
    for diagram in &diagrams {
        let expected_v = forest_size_formula(diagram, System::V);
        let expected_w = forest_size_formula(diagram, System::W);
        let (choices, truncated) = enumerate_reductions(diagram, 1_000_000).unwrap();
        assert!(!truncated, "{:?} hit the enumeration cap", diagram.label);
        assert!(!choices.is_empty(), "{:?} admits no reduction", diagram.label);
        for choice in &choices {
            assert_eq!(choice.witness_forests[0].len(), expected_v);
            assert_eq!(choice.witness_forests[1].len(), expected_w);
            assert_eq!(choice.removed_v.len(), expected_v);
            assert_eq!(choice.removed_w.len(), expected_w);
        }
        total += choices.len();
    }
    assert!(total >= 500, "corpus produced only {total} reductions");
}

/// Suite (e): isomorphism round-trips and census-filter soundness over 1000
/// randomized colourings (500 independent graphs, each paired with a random
/// relabelling of itself).
#[test]
fn isomorphism_round_trips_and_census_filters_soundly_on_random_colourings() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b97f4a7c15);
    let mut graphs: Vec<ColouredGraph> = Vec::new();
    let mut relabelled: Vec<ColouredGraph> = Vec::new();

    while graphs.len() < 500 {
        let n = 2 * [2usize, 3, 4][graphs.len() % 3];
        // Four random perfect matchings; connectivity by rejection.
        let mut edges: Vec<(usize, usize, u8)> = Vec::with_capacity(2 * n);
        for c in 0..4u8 {
            let mut vertices: Vec<usize> = (0..n).collect();
            vertices.shuffle(&mut rng);
            for pair in vertices.chunks(2) {
                edges.push((pair[0], pair[1], c));
            }
        }
        let Ok(graph) = ColouredGraph::new(n, &edges) else {
            continue;
        };

        let mut map: Vec<usize> = (0..n).collect();
        map.shuffle(&mut rng);
        let renamed: Vec<(usize, usize, u8)> =
            edges.iter().map(|&(u, v, c)| (map[u], map[v], c)).collect();
        let twin = ColouredGraph::new(n, &renamed).unwrap();

        // Round trip: the search must find an isomorphism, and the witness
        // must actually map edges to edges.
        let witness = colour_preserving_isomorphism(&graph, &twin)
            .expect("relabelled graph not recognized as isomorphic");
        let target: std::collections::BTreeSet<(usize, usize, u8)> = twin
            .edges()
            .iter()
            .map(|&(u, v, c)| (u.min(v), u.max(v), c.value()))
            .collect();
        for &(u, v, c) in graph.edges().iter() {
            let (a, b) = (witness[u], witness[v]);
            assert!(
                target.contains(&(a.min(b), a.max(b), c.value())),
                "witness map does not preserve edge ({u},{v},{c})"
            );
        }
        // Isomorphic graphs have equal censuses: the filter never wrongly
        // rejects.
        assert_eq!(
            graph.residue_census().six_tuple(),
            twin.residue_census().six_tuple()
        );
        graphs.push(graph);
        relabelled.push(twin);
    }

    // Census-filter soundness in the other direction: whenever censuses
    // differ, no isomorphism exists.  The search is signature-guided, so its
    // verdict is independent of the census; on the smallest graphs a brute
    // force over all vertex bijections confirms it.
    let mut unequal_census_pairs = 0usize;
    let mut brute_forced = 0usize;
    for i in 0..graphs.len() {
        let a = &graphs[i];
        // Offset by the size-class period so the pair shares a vertex count.
        let b = &relabelled[(i + 3) % graphs.len()];
        if a.vertex_count() != b.vertex_count()
            || a.residue_census().six_tuple() == b.residue_census().six_tuple()
        {
            continue;
        }
        unequal_census_pairs += 1;
        assert!(
            colour_preserving_isomorphism(a, b).is_none(),
            "graphs {i} with different censuses reported isomorphic"
        );
        if a.vertex_count() <= 6 && brute_forced < 40 {
            brute_forced += 1;
            let edges_b: std::collections::BTreeSet<(usize, usize, u8)> = b
                .edges()
                .iter()
                .map(|&(u, v, c)| (u.min(v), u.max(v), c.value()))
                .collect();
            let n = a.vertex_count();
            for perm in (0..n).permutations(n) {
                let ok = a.edges().iter().all(|&(u, v, c)| {
                    let (x, y) = (perm[u], perm[v]);
                    edges_b.contains(&(x.min(y), x.max(y), c.value()))
                });
                assert!(!ok, "brute force found an isomorphism the census denies");
            }
        }
    }
    assert!(
        unequal_census_pairs >= 100,
        "only {unequal_census_pairs} unequal-census pairs; the soundness check lacks data"
    );
    assert!(brute_forced >= 20, "only {brute_forced} brute-force confirmations");
}

/// Census invariance complements suite (e): recolouring-insensitive parts of
/// the census survive a colour permutation found by the permuting search.
#[test]
fn colour_permuting_isomorphism_finds_the_swapped_handles() {
    // Λ((p,h),(q,k)) and Λ((q,k),(p,h)) differ by swapping the two handles,
    // which the colour-permuting search must absorb.
    for (p, h, q, k) in [(3, 2, 2, 1), (4, 1, 3, 2), (5, 3, 2, 1)] {
        let a = lambda_graph(&LambdaParams::new(p, h, q, k).unwrap()).unwrap();
        let b = lambda_graph(&LambdaParams::new(q, k, p, h).unwrap()).unwrap();
        let (recolouring, map) =
            colour_permuting_isomorphism(&a, &b).expect("handle swap not recognized");
        assert_eq!(map.len(), a.vertex_count());
        // The witness recolouring must be a genuine permutation of {0,1,2,3}.
        let mut seen = [false; 4];
        for c in recolouring {
            seen[c.index()] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Suite (d): a heuristic search value never undercuts the exhaustive
    /// minimum, whatever the seed and budget.
    #[test]
    fn heuristic_never_undercuts_exhaustive(
        idx in 0usize..13,
        seed in any::<u64>(),
        budget in 32usize..256,
    ) {
        let params = lambda_params_sweep(6)[idx];
        let graph = lambda_graph(&params).unwrap();
        let exhaustive = gm_complexity(&graph, None, &SearchOptions::default()).unwrap();
        prop_assert_eq!(exhaustive.search_mode, SearchMode::Exhaustive);
        let heuristic_opts = SearchOptions {
            mode: Some(SearchMode::Heuristic),
            heuristic_budget: budget,
            seed,
            ..SearchOptions::default()
        };
        match gm_complexity(&graph, None, &heuristic_opts) {
            Ok(heuristic) => {
                prop_assert_eq!(heuristic.search_mode, SearchMode::Heuristic);
                prop_assert!(heuristic.value >= exhaustive.value,
                    "heuristic {} undercut exhaustive {} on {:?} (seed {})",
                    heuristic.value, exhaustive.value, params, seed);
            }
            // A tiny budget may fail to sample any admissible forest; that
            // is a refusal, not an undercut.
            Err(Error::Consistency(_)) => {}
            Err(other) => return Err(TestCaseError::fail(format!("unexpected error: {other}"))),
        }
    }

    /// The residue census is invariant under relabelling, for arbitrary
    /// vertex permutations of arbitrary sweep graphs.
    #[test]
    fn census_is_relabelling_invariant(idx in 0usize..13, seed in any::<u64>()) {
        let params = lambda_params_sweep(6)[idx];
        let graph = lambda_graph(&params).unwrap();
        let n = graph.vertex_count();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut map: Vec<usize> = (0..n).collect();
        map.shuffle(&mut rng);
        let renamed: Vec<(usize, usize, u8)> = graph
            .edges()
            .iter()
            .map(|&(u, v, c)| (map[u], map[v], c.value()))
            .collect();
        let twin = ColouredGraph::new(n, &renamed).unwrap();
        prop_assert_eq!(
            graph.residue_census().six_tuple(),
            twin.residue_census().six_tuple()
        );
        for c in Colour::ALL {
            prop_assert_eq!(
                graph.residue_census().complement(c),
                twin.residue_census().complement(c)
            );
        }
    }
}
