//! Simple undirected graphs on indexed vertices.
//!
//! Edges are kept as a sorted set of `(i, j)` pairs with `i < j`, alongside a
//! bitset adjacency row per vertex. The sorted edge order is the row order of
//! every rigidity matrix and the coordinate order of every stress vector.

mod connectivity;
mod construct;
mod join;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

pub use connectivity::{connected_components, is_connected, local_connectivity, vertex_connectivity_at_least};
pub use construct::{
    amalgamate, attach_chain, attach_chain_at, complete, complete_bipartite, cone, disjoint_union,
    empty_graph, four_chain, join, partial_cone, path, cycle, FourChain,
};
pub use join::{recognize_balanced_join, recognize_join, JoinError, JoinStructure};

pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    OutOfRange(usize, usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex lists have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("vertex list contains {0} more than once")]
    RepeatedVertex(usize),
    #[error("host graph has {have} vertices but the chain ends need {need}")]
    HostTooSmall { have: usize, need: usize },
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// A simple undirected graph. Equality compares the vertex count and edge set
/// only; the name is a label.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<Edge>,
    adjacency: Vec<FixedBitSet>,
    name: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

fn normalize(i: usize, j: usize) -> Edge {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
            adjacency: vec![FixedBitSet::with_capacity(n); n],
            name: None,
        }
    }

    /// Builds a graph, rejecting loops, out-of-range endpoints and duplicates.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Graph::new(n);
        for (i, j) in edges {
            if !g.add_edge(i, j)? {
                let (a, b) = normalize(i, j);
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(g)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: Option<String>) {
        self.name = name;
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Adds `ij`; returns `false` if it was already present.
    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<bool, GraphError> {
        if i == j {
            return Err(GraphError::SelfLoop(i));
        }
        if i >= self.n || j >= self.n {
            return Err(GraphError::OutOfRange(i, j, self.n));
        }
        let e = normalize(i, j);
        if !self.edges.insert(e) {
            return Ok(false);
        }
        self.adjacency[i].insert(j);
        self.adjacency[j].insert(i);
        Ok(true)
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> bool {
        if i >= self.n || j >= self.n {
            return false;
        }
        let removed = self.edges.remove(&normalize(i, j));
        if removed {
            self.adjacency[i].set(j, false);
            self.adjacency[j].set(i, false);
        }
        removed
    }

    /// Appends a new isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        let v = self.n;
        self.n += 1;
        for row in &mut self.adjacency {
            row.grow(self.n);
        }
        self.adjacency.push(FixedBitSet::with_capacity(self.n));
        v
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adjacency[i].contains(j)
    }

    /// Edges in sorted (lexicographic) order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].ones()
    }

    pub fn adjacency_row(&self, v: usize) -> &FixedBitSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones(..)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Edge complement on the same vertex set.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) {
                    g.add_edge(i, j).expect("indices in range");
                }
            }
        }
        g
    }

    /// Subgraph induced on `keep`, relabelled `0..keep.len()` in the given order.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let mut g = Graph::new(keep.len());
        for (i, j) in self.edges() {
            if index[i] != usize::MAX && index[j] != usize::MAX {
                g.add_edge(index[i], index[j]).expect("distinct kept vertices");
            }
        }
        g
    }

    /// Renames vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut g = Graph::from_edges(self.n, self.edges().map(|(i, j)| (perm[i], perm[j])))
            .expect("a permutation preserves simplicity");
        g.name = self.name.clone();
        g
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            name: self.name.clone(),
            n: self.n,
            edges: self.edges().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("graph serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Graph, GraphError> {
        let raw: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        Graph::try_from(raw)
    }

    /// Graphviz rendering; `highlight` edges are drawn bold and blue.
    pub fn to_dot(&self, highlight: &[Edge]) -> String {
        let highlight: BTreeSet<Edge> = highlight.iter().map(|&(i, j)| normalize(i, j)).collect();
        let mut out = String::new();
        let name = self.name.as_deref().unwrap_or("G");
        let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "'"));
        let _ = writeln!(out, "  node [shape=circle];");
        for v in 0..self.n {
            let _ = writeln!(out, "  {v};");
        }
        for (i, j) in self.edges() {
            if highlight.contains(&(i, j)) {
                let _ = writeln!(out, "  {i} -- {j} [color=blue, penwidth=2];");
            } else {
                let _ = writeln!(out, "  {i} -- {j};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Wire form: `{"name": str?, "n": int, "edges": [[i, j], ...]}`, 0-based,
/// `i < j`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(raw: GraphJson) -> Result<Self, Self::Error> {
        let mut g = Graph::from_edges(raw.n, raw.edges.iter().map(|&[i, j]| (i, j)))?;
        g.name = raw.name;
        Ok(g)
    }
}
