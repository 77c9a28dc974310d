#![allow(dead_code)]

use quadrigid::graph::{complete, complete_bipartite, cone, cycle, join, path, JoinStructure};
use quadrigid::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Erdős–Rényi graph `G(n, prob)`.
pub fn random_graph(n: usize, prob: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(prob) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

/// `G + H` with random sides and shuffled labels.
pub fn random_join(a: usize, b: usize, prob: f64, rng: &mut impl Rng) -> Graph {
    let (g, _) = join(&random_graph(a, prob, rng), &random_graph(b, prob, rng));
    shuffle_labels(&g, rng)
}

pub fn shuffle_labels(g: &Graph, rng: &mut impl Rng) -> Graph {
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

/// Exhaustive search for a balanced bipartition `S, T` (sizes at least
/// `min_side`) with every cross pair an edge.
pub fn brute_force_join_exists(g: &Graph, min_side: usize) -> bool {
    let n = g.vertex_count();
    assert!(n <= 16, "brute force is exponential");
    // vertex 0 in S is enough by symmetry
    (0u32..1 << n).filter(|mask| mask & 1 == 1).any(|mask| {
        let size = mask.count_ones() as usize;
        if size < min_side || n - size < min_side {
            return false;
        }
        (0..n).filter(|&u| mask >> u & 1 == 1).all(|u| {
            (0..n).filter(|&v| mask >> v & 1 == 0).all(|v| g.has_edge(u, v))
        })
    })
}

/// Exhaustive check that no fewer than `k` vertices separate `g`, with the
/// complete-graph convention.
pub fn brute_force_connectivity_at_least(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    if n <= k {
        return false;
    }
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize >= k {
            continue;
        }
        let keep: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
        let sub = g.induced_subgraph(&keep);
        if quadrigid::graph::connected_components(&sub).len() > 1 {
            return false;
        }
    }
    true
}

/// Fixed graphs with the dimension they are usually studied in.
pub fn corpus() -> Vec<(Graph, usize)> {
    let mut out = vec![
        (complete(3), 2),
        (complete(4), 2),
        (complete(5), 2),
        (complete(5), 3),
        (complete(6), 3),
        (complete_bipartite(3, 3), 2),
        (complete_bipartite(3, 4), 2),
        (complete_bipartite(4, 4), 2),
        (complete_bipartite(4, 6), 3),
        (complete_bipartite(5, 5), 3),
        (complete_bipartite(5, 6), 3),
        (cycle(6), 2),
        (path(4), 1),
        (cone(&cycle(6)), 3),
        (cone(&cycle(5)), 2),
        (cone(&complete_bipartite(3, 3)), 3),
    ];
    // triangular prism
    let prism = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
    out.push((prism, 2));
    out
}

/// Three ten-vertex joins with a triangle in the left class and one more
/// extraneous edge placed in different positions.
pub fn class_move_triple() -> [(Graph, JoinStructure); 3] {
    let tri = [(0, 1), (0, 2), (1, 2)];
    let build = |left: std::ops::Range<usize>, right: std::ops::Range<usize>, extra: (usize, usize)| {
        let mut ex: Vec<(usize, usize)> = tri.to_vec();
        ex.push(extra);
        let js = JoinStructure::from_parts(left.collect(), right.collect(), ex).unwrap();
        (js.to_graph(), js)
    };
    [build(0..5, 5..10, (5, 6)), build(0..5, 5..10, (3, 4)), build(0..4, 4..10, (4, 5))]
}
