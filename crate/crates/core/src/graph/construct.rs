use std::ops::Range;

use super::{Graph, GraphError, JoinStructure};

pub fn empty_graph(n: usize) -> Graph {
    Graph::new(n).with_name(format!("E{n}"))
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(i, j).expect("indices in range");
        }
    }
    g.with_name(format!("K{n}"))
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        .expect("path edges are simple")
        .with_name(format!("P{n}"))
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a simple cycle needs three vertices");
    let mut g = path(n);
    g.add_edge(n - 1, 0).expect("indices in range");
    g.with_name(format!("C{n}"))
}

/// `K_{a,b}` with the `a` class first.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    join(&empty_graph(a), &empty_graph(b)).0.with_name(format!("K{a},{b}"))
}

/// `G ∪ H`; vertices of `h` follow those of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let offset = g.vertex_count();
    let mut out = Graph::new(offset + h.vertex_count());
    for (i, j) in g.edges() {
        out.add_edge(i, j).expect("in range");
    }
    for (i, j) in h.edges() {
        out.add_edge(i + offset, j + offset).expect("in range");
    }
    out
}

/// `G + H` together with its join structure: `left` holds the vertices of `g`,
/// `right` those of `h`, and every edge of `g` or `h` is extraneous.
pub fn join(g: &Graph, h: &Graph) -> (Graph, JoinStructure) {
    let mut out = disjoint_union(g, h);
    let offset = g.vertex_count();
    for i in 0..offset {
        for j in 0..h.vertex_count() {
            out.add_edge(i, j + offset).expect("in range");
        }
    }
    let left: Vec<usize> = (0..offset).collect();
    let right: Vec<usize> = (offset..out.vertex_count()).collect();
    let structure = JoinStructure::new(&out, left, right).expect("a join has all cross edges");
    (out, structure)
}

/// `G + K_1`; the cone vertex is appended as the last index.
pub fn cone(g: &Graph) -> Graph {
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    partial_cone(g, &all).expect("all vertices are in range")
}

/// Appends a vertex adjacent to exactly `subset`.
pub fn partial_cone(g: &Graph, subset: &[usize]) -> Result<Graph, GraphError> {
    let mut out = g.clone();
    out.set_name(None);
    let c = out.add_vertex();
    for &v in subset {
        if v >= g.vertex_count() {
            return Err(GraphError::OutOfRange(v, c, g.vertex_count()));
        }
        if !out.add_edge(v, c)? {
            return Err(GraphError::RepeatedVertex(v));
        }
    }
    Ok(out)
}

/// The 4-chain `C_{x1,x2,x3,x4}` with its four independent layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourChain {
    pub graph: Graph,
    pub layers: [Range<usize>; 4],
}

impl FourChain {
    pub fn sizes(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|k| self.layers[k].len())
    }

    /// Vertices of the first and last layer, in that order.
    pub fn end_vertices(&self) -> Vec<usize> {
        self.layers[0].clone().chain(self.layers[3].clone()).collect()
    }
}

/// Four independent sets joined consecutively; layer `k` occupies a contiguous
/// index range following layer `k-1`.
pub fn four_chain(x: [usize; 4]) -> FourChain {
    let mut starts = [0usize; 5];
    for k in 0..4 {
        starts[k + 1] = starts[k] + x[k];
    }
    let layers = [0, 1, 2, 3].map(|k| starts[k]..starts[k + 1]);
    let mut g = Graph::new(starts[4]);
    for k in 0..3 {
        for u in layers[k].clone() {
            for v in layers[k + 1].clone() {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    let g = g.with_name(format!("C{},{},{},{}", x[0], x[1], x[2], x[3]));
    FourChain { graph: g, layers }
}

/// Vertex amalgamation `(G; us) * (H; vs)`. Vertices of `g` keep their indices;
/// `vs[k]` is identified with `us[k]`; the remaining vertices of `h` follow in
/// order. Parallel edges created by the identification collapse.
pub fn amalgamate(g: &Graph, us: &[usize], h: &Graph, vs: &[usize]) -> Result<Graph, GraphError> {
    if us.len() != vs.len() {
        return Err(GraphError::LengthMismatch(us.len(), vs.len()));
    }
    check_distinct(us, g.vertex_count())?;
    check_distinct(vs, h.vertex_count())?;
    let mut map = vec![usize::MAX; h.vertex_count()];
    for (&u, &v) in us.iter().zip(vs) {
        map[v] = u;
    }
    let mut next = g.vertex_count();
    for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let mut out = Graph::new(next);
    for (i, j) in g.edges() {
        out.add_edge(i, j)?;
    }
    for (i, j) in h.edges() {
        out.add_edge(map[i], map[j])?;
    }
    Ok(out)
}

fn check_distinct(list: &[usize], n: usize) -> Result<(), GraphError> {
    let mut seen = vec![false; n];
    for &v in list {
        if v >= n {
            return Err(GraphError::OutOfRange(v, v, n));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(GraphError::RepeatedVertex(v));
        }
    }
    Ok(())
}

/// `C ⋈ G` gluing the chain's end layers onto host vertices `0..x1+x4`.
pub fn attach_chain(chain: &FourChain, host: &Graph) -> Result<Graph, GraphError> {
    let need = chain.layers[0].len() + chain.layers[3].len();
    if host.vertex_count() < need {
        return Err(GraphError::HostTooSmall { have: host.vertex_count(), need });
    }
    let targets: Vec<usize> = (0..need).collect();
    attach_chain_at(chain, host, &targets)
}

/// `C ⋈ G` with an explicit list of host vertices for the end layers. Chain
/// vertices keep their indices; unused host vertices are appended.
pub fn attach_chain_at(chain: &FourChain, host: &Graph, host_vertices: &[usize]) -> Result<Graph, GraphError> {
    let ends = chain.end_vertices();
    if host.vertex_count() < ends.len() {
        return Err(GraphError::HostTooSmall { have: host.vertex_count(), need: ends.len() });
    }
    let mut g = amalgamate(&chain.graph, &ends, host, host_vertices)?;
    g.set_name(Some(format!(
        "{}*{}",
        chain.graph.name().unwrap_or("C"),
        host.name().unwrap_or("G")
    )));
    Ok(g)
}
