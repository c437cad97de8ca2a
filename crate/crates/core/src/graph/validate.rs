use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::{GraphError, GraphOracle, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Loop,
    DuplicateNeighbor,
    Asymmetry,
    Isolated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertex: String,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub probe_radius: usize,
    pub vertices_checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the simplicial-graph hypotheses on every vertex within
/// `probe_radius` of the root.
///
/// Each neighbour list is requested twice; a list that changes between the
/// two calls is reported as [`GraphError::OracleInconsistent`].
pub fn validate_oracle(
    oracle: &dyn GraphOracle,
    probe_radius: usize,
) -> Result<ValidationReport, GraphError> {
    let mut cache: HashMap<Label, Vec<Label>> = HashMap::new();
    let mut fetch = |v: &Label| -> Result<Vec<Label>, GraphError> {
        if let Some(ns) = cache.get(v) {
            return Ok(ns.clone());
        }
        let first = oracle.neighbors(v);
        let second = oracle.neighbors(v);
        if first != second {
            return Err(GraphError::OracleInconsistent {
                vertex: oracle.label_text(v),
                reason: format!(
                    "neighbour list changed between calls ({} vs {} entries)",
                    first.len(),
                    second.len()
                ),
            });
        }
        cache.insert(v.clone(), first.clone());
        Ok(first)
    };

    let mut violations = Vec::new();
    let root = oracle.root();
    let mut dist: HashMap<Label, usize> = HashMap::from([(root.clone(), 0)]);
    let mut queue = VecDeque::from([root]);
    let mut checked = 0;
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        checked += 1;
        let name = oracle.label_text(&v);
        let nbrs = fetch(&v)?;
        if nbrs.is_empty() {
            violations.push(Violation {
                vertex: name.clone(),
                kind: ViolationKind::Isolated,
                detail: "degree 0".into(),
            });
        }
        let mut seen = HashSet::new();
        for w in &nbrs {
            if *w == v {
                violations.push(Violation {
                    vertex: name.clone(),
                    kind: ViolationKind::Loop,
                    detail: format!("loop at vertex {name}"),
                });
                continue;
            }
            if !seen.insert(w) {
                violations.push(Violation {
                    vertex: name.clone(),
                    kind: ViolationKind::DuplicateNeighbor,
                    detail: format!("neighbour {} listed twice", oracle.label_text(w)),
                });
                continue;
            }
            if !fetch(w)?.contains(&v) {
                violations.push(Violation {
                    vertex: name.clone(),
                    kind: ViolationKind::Asymmetry,
                    detail: format!(
                        "{} is a neighbour of {name} but not conversely",
                        oracle.label_text(w)
                    ),
                });
            }
            if d < probe_radius && !dist.contains_key(w) {
                dist.insert(w.clone(), d + 1);
                queue.push_back(w.clone());
            }
        }
    }
    Ok(ValidationReport {
        probe_radius,
        vertices_checked: checked,
        violations,
    })
}
