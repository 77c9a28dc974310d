//! Join structures and their recognition.
//!
//! A graph is a join `G + H` exactly when its complement is disconnected: the
//! two sides are unions of complement components. Finding a *balanced* split
//! (both sides of size at least `d + 1`) is a subset-sum over component sizes.

use serde::{Deserialize, Serialize};

use super::{connected_components, Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JoinError {
    #[error("vertex {0} appears in both classes or twice in one class")]
    Overlap(usize),
    #[error("classes cover {covered} of {n} vertices")]
    NotPartition { covered: usize, n: usize },
    #[error("vertex {0} is out of range")]
    OutOfRange(usize),
    #[error("cross pair ({0}, {1}) is not an edge")]
    MissingCrossEdge(usize, usize),
    #[error("recorded extraneous edges do not match the graph")]
    ExtraneousMismatch,
    #[error("vertex {0} has an extraneous edge")]
    HasExtraneousEdge(usize),
}

/// A bipartition `(left, right)` of the vertices such that every cross pair is
/// an edge. The edges inside either class are the extraneous edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinStructure {
    left: Vec<usize>,
    right: Vec<usize>,
    #[serde(with = "edge_pairs")]
    extraneous: Vec<Edge>,
}

mod edge_pairs {
    use super::Edge;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(edges: &[Edge], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = edges.iter().map(|&(i, j)| [i, j]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Edge>, D::Error> {
        let pairs = Vec::<[usize; 2]>::deserialize(d)?;
        Ok(pairs.into_iter().map(|[i, j]| if i < j { (i, j) } else { (j, i) }).collect())
    }
}

impl JoinStructure {
    /// Validates the bipartition against `g` and collects its extraneous edges.
    pub fn new(g: &Graph, mut left: Vec<usize>, mut right: Vec<usize>) -> Result<Self, JoinError> {
        left.sort_unstable();
        right.sort_unstable();
        let n = g.vertex_count();
        let mut side = vec![None; n];
        for (s, class) in [(0u8, &left), (1u8, &right)] {
            for &v in class.iter() {
                if v >= n {
                    return Err(JoinError::OutOfRange(v));
                }
                if side[v].replace(s).is_some() {
                    return Err(JoinError::Overlap(v));
                }
            }
        }
        if left.len() + right.len() != n {
            return Err(JoinError::NotPartition { covered: left.len() + right.len(), n });
        }
        for &u in &left {
            for &v in &right {
                if !g.has_edge(u, v) {
                    return Err(JoinError::MissingCrossEdge(u.min(v), u.max(v)));
                }
            }
        }
        let extraneous = g.edges().filter(|&(i, j)| side[i] == side[j]).collect();
        Ok(JoinStructure { left, right, extraneous })
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// Edges inside either class, sorted.
    pub fn extraneous(&self) -> &[Edge] {
        &self.extraneous
    }

    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.left.len(), self.right.len())
    }

    /// Both classes have at least `d + 1` vertices.
    pub fn is_balanced(&self, d: usize) -> bool {
        self.left.len() > d && self.right.len() > d
    }

    pub fn in_left(&self, v: usize) -> bool {
        self.left.binary_search(&v).is_ok()
    }

    /// Checks that this structure describes `g` exactly.
    pub fn validate(&self, g: &Graph) -> Result<(), JoinError> {
        let fresh = JoinStructure::new(g, self.left.clone(), self.right.clone())?;
        if fresh.extraneous != self.extraneous {
            return Err(JoinError::ExtraneousMismatch);
        }
        Ok(())
    }

    /// Builds a structure directly from its classes and extraneous edges.
    pub fn from_parts(left: Vec<usize>, right: Vec<usize>, extraneous: Vec<Edge>) -> Result<Self, JoinError> {
        let n = left.len() + right.len();
        let mut g = Graph::new(n);
        for &(i, j) in &extraneous {
            if i >= n || j >= n || i == j {
                return Err(JoinError::OutOfRange(i.max(j)));
            }
            if !g.add_edge(i, j).map_err(|_| JoinError::OutOfRange(i.max(j)))? {
                return Err(JoinError::ExtraneousMismatch);
            }
        }
        for &u in &left {
            for &v in &right {
                if u < n && v < n && u != v {
                    let _ = g.add_edge(u, v);
                }
            }
        }
        let js = JoinStructure::new(&g, left, right)?;
        if js.extraneous.len() != extraneous.len() {
            // some recorded edge crossed the classes
            return Err(JoinError::ExtraneousMismatch);
        }
        Ok(js)
    }

    /// The joined graph this structure describes.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::from_edges(self.vertex_count(), self.extraneous.iter().copied())
            .expect("extraneous edges are simple");
        for &u in &self.left {
            for &v in &self.right {
                g.add_edge(u, v).expect("classes are disjoint");
            }
        }
        g
    }

    /// Moves `v`, which must have no extraneous edge, to the other class. The
    /// result describes a different graph with the same extraneous edges.
    pub fn move_vertex(&self, v: usize) -> Result<Self, JoinError> {
        if self.extraneous.iter().any(|&(i, j)| i == v || j == v) {
            return Err(JoinError::HasExtraneousEdge(v));
        }
        let (mut left, mut right) = (self.left.clone(), self.right.clone());
        if let Ok(pos) = left.binary_search(&v) {
            left.remove(pos);
            right.push(v);
        } else if let Ok(pos) = right.binary_search(&v) {
            right.remove(pos);
            left.push(v);
        } else {
            return Err(JoinError::OutOfRange(v));
        }
        JoinStructure::from_parts(left, right, self.extraneous.clone())
    }

    pub fn swapped(&self) -> Self {
        JoinStructure {
            left: self.right.clone(),
            right: self.left.clone(),
            extraneous: self.extraneous.clone(),
        }
    }
}

/// Any join decomposition of `g`, or `None` when the complement is connected.
pub fn recognize_join(g: &Graph) -> Option<JoinStructure> {
    split_complement_components(g, 1)
}

/// A balanced join decomposition for dimension `d`, or `None`.
///
/// Rejects graphs with fewer than `2d + 2` vertices, splits the complement into
/// components by DFS and runs a subset-sum over component sizes. The class
/// containing vertex 0 is reported as `left`.
pub fn recognize_balanced_join(g: &Graph, d: usize) -> Option<JoinStructure> {
    assert!(d >= 1, "dimension must be positive");
    if g.vertex_count() < 2 * d + 2 {
        return None;
    }
    split_complement_components(g, d + 1)
}

fn split_complement_components(g: &Graph, min_side: usize) -> Option<JoinStructure> {
    let n = g.vertex_count();
    if n < 2 * min_side {
        return None;
    }
    let components = connected_components(&g.complement());
    if components.len() < 2 {
        return None;
    }
    // reachable[s] holds one set of component indices whose sizes sum to s
    let mut reachable: Vec<Option<Vec<usize>>> = vec![None; n + 1];
    reachable[0] = Some(Vec::new());
    for (idx, comp) in components.iter().enumerate() {
        // iterate against a snapshot so a component is used at most once
        let snapshot = reachable.clone();
        for (sum, witness) in snapshot.iter().enumerate() {
            let Some(witness) = witness else { continue };
            let target = sum + comp.len();
            if reachable[target].is_none() {
                let mut w = witness.clone();
                w.push(idx);
                reachable[target] = Some(w);
            }
        }
    }
    let witness = (min_side..=n - min_side).find_map(|s| reachable[s].clone())?;
    let mut in_left = vec![false; components.len()];
    for idx in witness {
        in_left[idx] = true;
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (idx, comp) in components.iter().enumerate() {
        if in_left[idx] {
            left.extend_from_slice(comp);
        } else {
            right.extend_from_slice(comp);
        }
    }
    if !left.contains(&0) {
        std::mem::swap(&mut left, &mut right);
    }
    Some(JoinStructure::new(g, left, right).expect("complement components give a join"))
}
