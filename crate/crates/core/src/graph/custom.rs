use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{GraphError, GraphOracle, Label};

/// JSON form of an explicit finite graph: `{"vertices": N, "edges": [[i,j], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjacencySpec {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub root: usize,
}

/// Finite graph given by an explicit edge list. Neighbours are listed in
/// increasing vertex order.
#[derive(Debug, Clone)]
pub struct AdjacencyGraph {
    root: usize,
    adjacency: Vec<Vec<usize>>,
}

impl AdjacencyGraph {
    /// Validates the edge list: no loops, no repeated edges, indices in
    /// range, connected, at least two vertices.
    pub fn new(spec: &AdjacencySpec) -> Result<Self, GraphError> {
        let n = spec.vertices;
        if n < 2 {
            return Err(GraphError::InvalidGraph(
                "a graph needs at least two vertices".into(),
            ));
        }
        if spec.root >= n {
            return Err(GraphError::InvalidGraph(format!(
                "root {} out of range",
                spec.root
            )));
        }
        let mut sets = vec![BTreeSet::new(); n];
        for &[i, j] in &spec.edges {
            if i >= n || j >= n {
                return Err(GraphError::InvalidGraph(format!(
                    "edge [{i},{j}] out of range"
                )));
            }
            if i == j {
                return Err(GraphError::InvalidGraph(format!("loop at vertex {i}")));
            }
            if !sets[i].insert(j) || !sets[j].insert(i) {
                return Err(GraphError::InvalidGraph(format!(
                    "multiple edge between {i} and {j}"
                )));
            }
        }
        let adjacency: Vec<Vec<usize>> =
            sets.into_iter().map(|s| s.into_iter().collect()).collect();

        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([spec.root]);
        seen[spec.root] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(GraphError::InvalidGraph(format!(
                "graph is disconnected: vertex {v} unreachable from root"
            )));
        }
        Ok(Self {
            root: spec.root,
            adjacency,
        })
    }
}

impl GraphOracle for AdjacencyGraph {
    fn root(&self) -> Label {
        vec![self.root as i64]
    }

    fn neighbors(&self, v: &Label) -> Vec<Label> {
        usize::try_from(v[0])
            .ok()
            .and_then(|i| self.adjacency.get(i))
            .map(|ns| ns.iter().map(|&w| vec![w as i64]).collect())
            .unwrap_or_default()
    }

    fn is_finite_hint(&self) -> Option<bool> {
        Some(true)
    }

    fn name(&self) -> String {
        format!("custom({} vertices)", self.adjacency.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, edges: &[[usize; 2]]) -> AdjacencySpec {
        AdjacencySpec {
            vertices: n,
            edges: edges.to_vec(),
            root: 0,
        }
    }

    #[test]
    fn accepts_square() {
        let g = AdjacencyGraph::new(&spec(4, &[[0, 1], [1, 2], [2, 3], [3, 0]])).unwrap();
        assert_eq!(g.neighbors(&vec![0]), vec![vec![1], vec![3]]);
    }

    #[test]
    fn rejects_loops_multi_edges_and_disconnection() {
        assert!(AdjacencyGraph::new(&spec(2, &[[0, 0], [0, 1]])).is_err());
        assert!(AdjacencyGraph::new(&spec(2, &[[0, 1], [1, 0]])).is_err());
        assert!(AdjacencyGraph::new(&spec(3, &[[0, 1]])).is_err());
        assert!(AdjacencyGraph::new(&spec(2, &[[0, 5]])).is_err());
        assert!(AdjacencyGraph::new(&spec(1, &[])).is_err());
    }

    #[test]
    fn parses_json() {
        let s: AdjacencySpec =
            serde_json::from_str(r#"{"vertices":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(s.root, 0);
        assert!(AdjacencyGraph::new(&s).is_ok());
    }
}
