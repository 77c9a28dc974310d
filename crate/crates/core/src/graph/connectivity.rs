//! Components and vertex connectivity.
//!
//! Vertex connectivity uses Menger's theorem: the number of internally
//! vertex-disjoint `s`-`t` paths equals a unit-capacity max flow on the graph
//! with every vertex split into an in/out pair.

use std::collections::VecDeque;

use super::Graph;

/// Vertex sets of the connected components, each sorted, ordered by their
/// smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![root];
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() <= 1
}

struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() }
    }

    fn arc(&mut self, u: usize, v: usize, c: u32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// Augments along shortest paths until `limit` units flow or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut parent_arc = vec![usize::MAX; self.head.len()];
        while flow < limit {
            parent_arc.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.head[u] {
                    let v = self.to[a];
                    if self.cap[a] > 0 && v != s && parent_arc[v] == usize::MAX {
                        parent_arc[v] = a;
                        if v == t {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut v = t;
            while v != s {
                let a = parent_arc[v];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Maximum number of internally vertex-disjoint paths between the
/// non-adjacent vertices `s` and `t`, capped at `limit`.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    assert!(s != t && !g.has_edge(s, t), "local connectivity needs distinct non-adjacent vertices");
    let n = g.vertex_count();
    let big = n as u32 + 1;
    // vertex v splits into 2v (in) and 2v + 1 (out)
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        net.arc(2 * v, 2 * v + 1, c);
    }
    for (i, j) in g.edges() {
        net.arc(2 * i + 1, 2 * j, big);
        net.arc(2 * j + 1, 2 * i, big);
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// True iff `g` has more than `k` vertices and no vertex separator of size
/// below `k`. `K_n` counts as `(n-1)`-connected.
pub fn vertex_connectivity_at_least(g: &Graph, k: usize) -> bool {
    assert!(k >= 1, "connectivity threshold must be positive");
    let n = g.vertex_count();
    if n <= k {
        return false;
    }
    if g.is_complete() {
        return true;
    }
    // A separator S with |S| < k misses one of any k vertices; that vertex is
    // then cut from some non-neighbour by S.
    for s in 0..k {
        for t in 0..n {
            if t == s || g.has_edge(s, t) {
                continue;
            }
            if local_connectivity(g, s, t, k) < k {
                return false;
            }
        }
    }
    true
}
