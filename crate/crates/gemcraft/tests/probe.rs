//! Temporary sizing probe (not part of the suite): counts admissible forests
//! of each cut-dual graph via the matrix-forest theorem to size the
//! exhaustive search space on desingularized graphs.

use gemcraft::complex::desingularize;
use gemcraft::heegaard::{diagram_from_gem, system_analysis, System};
use gemcraft::seifert::{lambda_graph, LambdaParams};
use gemcraft::Colour;

/// Number of spanning forests, each tree containing exactly one root, i.e.
/// det of the Laplacian minor with root rows/columns removed.
fn rooted_forest_count(n: usize, edges: &[(usize, usize)], roots: &[usize]) -> f64 {
    let mut lap = vec![vec![0f64; n]; n];
    for &(a, b) in edges {
        if a == b {
            continue;
        }
        lap[a][a] += 1.0;
        lap[b][b] += 1.0;
        lap[a][b] -= 1.0;
        lap[b][a] -= 1.0;
    }
    let keep: Vec<usize> = (0..n).filter(|v| !roots.contains(v)).collect();
    let m = keep.len();
    let mut a = vec![vec![0f64; m]; m];
    for (i, &r) in keep.iter().enumerate() {
        for (j, &c) in keep.iter().enumerate() {
            a[i][j] = lap[r][c];
        }
    }
    // Gaussian elimination determinant.
    let mut det = 1f64;
    for col in 0..m {
        let mut pivot = col;
        for row in col + 1..m {
            if a[row][col].abs() > a[pivot][col].abs() {
                pivot = row;
            }
        }
        if a[pivot][col].abs() < 1e-12 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..m {
            let f = a[row][col] / a[col][col];
            for k in col..m {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    det
}

#[test]
fn probe_forest_counts() {
    for (p, h, q, k) in [(3, 2, 2, 1), (4, 1, 2, 1), (3, 2, 3, 2), (4, 3, 4, 3)] {
        let lambda = lambda_graph(&LambdaParams::new(p, h, q, k).unwrap()).unwrap();
        let gem = desingularize(&lambda).unwrap().graph;
        println!("lambda(({p},{h}),({q},{k})): gem n = {}", gem.vertex_count());
        let mut total = 0f64;
        for alpha in 0..3u8 {
            let diagram = diagram_from_gem(&gem, Colour::new(alpha).unwrap()).unwrap();
            let mut product = 1f64;
            for system in [System::V, System::W] {
                let analysis = system_analysis(&diagram, system).unwrap();
                let n = analysis.dual.pieces.len();
                let edges: Vec<(usize, usize)> = analysis
                    .dual
                    .curve_edges
                    .iter()
                    .map(|&(_, pair)| pair)
                    .collect();
                let roots: Vec<usize> = if analysis.dual.plus_nodes.is_empty() {
                    vec![0]
                } else {
                    analysis.dual.plus_nodes.clone()
                };
                let count = rooted_forest_count(n, &edges, &roots);
                println!(
                    "  alpha {alpha} {system:?}: pieces {n}, curves {}, plus {}, forests ~ {count:.3e}",
                    edges.len(),
                    roots.len(),
                );
                product *= count;
            }
            println!("  alpha {alpha}: choice product ~ {product:.3e}");
            total += product;
        }
        println!("  TOTAL choices ~ {total:.3e}");
    }
}
