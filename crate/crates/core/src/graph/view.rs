use std::collections::HashMap;
use std::sync::Arc;

use super::{GraphError, GraphOracle, Label, VertexId};

/// Incremental breadth-first exploration of an oracle.
///
/// Layer `k` is "expanded" once the neighbour lists of all its vertices are
/// cached; expanding layer `k` discovers layer `k + 1`. `B_n` is known
/// exactly once layers `0..n` are expanded.
#[derive(Debug)]
pub struct GraphView {
    oracle: Arc<dyn GraphOracle>,
    labels: Vec<Label>,
    index: HashMap<Label, VertexId>,
    distance: Vec<usize>,
    adjacency: Vec<Vec<VertexId>>,
    /// `layer_ends[k] = |B_k|` for every discovered layer.
    layer_ends: Vec<usize>,
}

impl GraphView {
    pub fn new(oracle: Arc<dyn GraphOracle>) -> Self {
        let root = oracle.root();
        Self {
            labels: vec![root.clone()],
            index: HashMap::from([(root, VertexId::ROOT)]),
            distance: vec![0],
            adjacency: Vec::new(),
            layer_ends: vec![1],
            oracle,
        }
    }

    pub fn oracle(&self) -> &Arc<dyn GraphOracle> {
        &self.oracle
    }

    fn expand_next_layer(&mut self) -> Result<(), GraphError> {
        let k = self.layer_ends.len() - 1;
        let start = if k == 0 { 0 } else { self.layer_ends[k - 1] };
        let end = self.layer_ends[k];
        debug_assert_eq!(self.adjacency.len(), start);
        for v in start..end {
            let nbrs = self.oracle.neighbors(&self.labels[v]);
            if nbrs.is_empty() {
                return Err(GraphError::IsolatedVertex {
                    vertex: self.oracle.label_text(&self.labels[v]),
                });
            }
            let mut ids = Vec::with_capacity(nbrs.len());
            for w in nbrs {
                let id = match self.index.get(&w) {
                    Some(&id) => id,
                    None => {
                        let id = VertexId(self.labels.len());
                        self.index.insert(w.clone(), id);
                        self.labels.push(w);
                        self.distance.push(k + 1);
                        id
                    }
                };
                ids.push(id);
            }
            self.adjacency.push(ids);
        }
        self.layer_ends.push(self.labels.len());
        Ok(())
    }

    /// Makes `B_n` fully known.
    pub fn ensure_radius(&mut self, n: usize) -> Result<(), GraphError> {
        while self.layer_ends.len() <= n {
            self.expand_next_layer()?;
        }
        Ok(())
    }

    /// `|B_n|`.
    pub fn ball_size(&mut self, n: usize) -> Result<usize, GraphError> {
        self.ensure_radius(n)?;
        Ok(self.layer_ends[n])
    }

    /// Neighbours of `v` in oracle order. `v` must already be discovered.
    pub fn neighbors(&mut self, v: VertexId) -> Result<&[VertexId], GraphError> {
        let d = self.distance[v.0];
        self.ensure_radius(d + 1)?;
        Ok(&self.adjacency[v.0])
    }

    pub fn degree(&mut self, v: VertexId) -> Result<usize, GraphError> {
        Ok(self.neighbors(v)?.len())
    }

    pub fn distance(&self, v: VertexId) -> usize {
        self.distance[v.0]
    }

    pub fn label(&self, v: VertexId) -> &Label {
        &self.labels[v.0]
    }

    pub fn label_text(&self, v: VertexId) -> String {
        self.oracle.label_text(&self.labels[v.0])
    }

    /// The ball `B_n`, with saturation decided by probing radius `n + 1`.
    pub fn ball(&mut self, n: usize) -> Result<Ball, GraphError> {
        self.ensure_radius(n + 1)?;
        let len = self.layer_ends[n];
        let vertices = (0..len)
            .map(|i| BallVertex {
                id: VertexId(i),
                distance: self.distance[i],
                label: self.oracle.label_text(&self.labels[i]),
            })
            .collect();
        Ok(Ball {
            radius: n,
            vertices,
            layer_ends: self.layer_ends[..=n].to_vec(),
            boundary_saturated: self.layer_ends[n + 1] == len,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallVertex {
    pub id: VertexId,
    pub distance: usize,
    pub label: String,
}

/// The closed ball `B_n` around the root, in (distance, id) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    radius: usize,
    vertices: Vec<BallVertex>,
    layer_ends: Vec<usize>,
    boundary_saturated: bool,
}

impl Ball {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[BallVertex] {
        &self.vertices
    }

    /// True iff `B_{n+1} = B_n`, i.e. the graph is finite with vertex set `B_n`.
    pub fn boundary_saturated(&self) -> bool {
        self.boundary_saturated
    }

    /// `|B_k|` for `k ≤ radius`.
    pub fn prefix_len(&self, k: usize) -> Option<usize> {
        self.layer_ends.get(k).copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.0 < self.vertices.len()
    }

    /// The sub-ball `B_k`, `k ≤ radius`.
    pub fn shrink(&self, k: usize) -> Option<Ball> {
        let len = self.prefix_len(k)?;
        let saturated = if k < self.radius {
            self.layer_ends[k + 1] == len
        } else {
            self.boundary_saturated
        };
        Some(Ball {
            radius: k,
            vertices: self.vertices[..len].to_vec(),
            layer_ends: self.layer_ends[..=k].to_vec(),
            boundary_saturated: saturated,
        })
    }
}

/// One-shot enumeration of `B_n` for an oracle.
pub fn enumerate_ball(oracle: Arc<dyn GraphOracle>, n: usize) -> Result<Ball, GraphError> {
    GraphView::new(oracle).ball(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family_oracle, FamilySpec};

    fn view(spec: FamilySpec) -> GraphView {
        GraphView::new(family_oracle(&spec).unwrap())
    }

    #[test]
    fn integer_line_ball() {
        let mut g = view(FamilySpec::Line);
        let b = g.ball(2).unwrap();
        assert_eq!(b.len(), 5);
        let labels: Vec<&str> = b.vertices().iter().map(|v| v.label.as_str()).collect();
        assert_eq!(labels, ["0", "-1", "1", "-2", "2"]);
        assert!(!b.boundary_saturated());
    }

    #[test]
    fn grid_and_tree_sizes() {
        assert_eq!(
            view(FamilySpec::Grid { dims: 2 }).ball(2).unwrap().len(),
            13
        );
        assert_eq!(
            view(FamilySpec::Tree { degree: 3 }).ball(2).unwrap().len(),
            10
        );
    }

    #[test]
    fn cycle_saturates_at_half_length() {
        let mut c4 = view(FamilySpec::Cycle { length: 4 });
        assert!(!c4.ball(1).unwrap().boundary_saturated());
        assert!(c4.ball(2).unwrap().boundary_saturated());
        let mut c5 = view(FamilySpec::Cycle { length: 5 });
        assert!(!c5.ball(1).unwrap().boundary_saturated());
        assert!(c5.ball(2).unwrap().boundary_saturated());
        assert_eq!(c5.ball(7).unwrap().len(), 5);
    }

    #[test]
    fn shrink_matches_direct_enumeration() {
        let mut g = view(FamilySpec::Ladder { width: 3 });
        let big = g.ball(4).unwrap();
        for k in 0..=4 {
            assert_eq!(big.shrink(k).unwrap(), g.ball(k).unwrap());
        }
        assert!(big.shrink(5).is_none());
    }

    #[test]
    fn isolated_root_is_rejected() {
        #[derive(Debug)]
        struct Lonely;
        impl GraphOracle for Lonely {
            fn root(&self) -> Label {
                vec![0]
            }
            fn neighbors(&self, _: &Label) -> Vec<Label> {
                Vec::new()
            }
            fn name(&self) -> String {
                "lonely".into()
            }
        }
        assert!(matches!(
            enumerate_ball(Arc::new(Lonely), 0),
            Err(GraphError::IsolatedVertex { .. })
        ));
    }
}
