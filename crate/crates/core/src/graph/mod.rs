//! Lazily described, locally finite, connected simplicial graphs.
//!
//! An oracle only answers "who are the neighbours of this vertex?". A
//! [`GraphView`] explores it breadth-first from the root, assigns dense
//! [`VertexId`]s in discovery order and caches adjacency, so every ball
//! `B_n` is a prefix of `B_{n+1}`.

mod custom;
mod families;
mod validate;
mod view;

use std::fmt;

pub use custom::{AdjacencyGraph, AdjacencySpec};
pub use families::{family_oracle, FamilySpec};
pub use validate::{validate_oracle, ValidationReport, Violation, ViolationKind};
pub use view::{enumerate_ball, Ball, BallVertex, GraphView};

/// Oracle-side vertex name. Families encode coordinates or words as integers.
pub type Label = Vec<i64>;

/// Dense id assigned in BFS discovery order; id 0 is the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    pub const ROOT: VertexId = VertexId(0);

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Neighbour oracle of a connected, locally finite simplicial graph.
///
/// Implementations must be deterministic: the same vertex always yields the
/// same neighbour list in the same order.
pub trait GraphOracle: Send + Sync + fmt::Debug {
    fn root(&self) -> Label;

    fn neighbors(&self, v: &Label) -> Vec<Label>;

    /// `Some(true)` for graphs known to be finite, `Some(false)` for known
    /// infinite ones.
    fn is_finite_hint(&self) -> Option<bool> {
        None
    }

    /// Human-readable vertex name used as the key in JSON reports.
    fn label_text(&self, v: &Label) -> String {
        let parts: Vec<String> = v.iter().map(i64::to_string).collect();
        parts.join(",")
    }

    fn name(&self) -> String;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("oracle inconsistent at vertex {vertex}: {reason}")]
    OracleInconsistent { vertex: String, reason: String },
    #[error("vertex {vertex} has no neighbours")]
    IsolatedVertex { vertex: String },
    #[error("bad parameter for graph family {family}: {reason}")]
    BadFamilyParameter {
        family: &'static str,
        reason: String,
    },
    #[error("invalid graph description: {0}")]
    InvalidGraph(String),
}
