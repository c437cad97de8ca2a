use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GraphError, GraphOracle, Label};

/// Built-in graph families.
///
/// Neighbour orders (these fix vertex ids):
/// - `Line`: `x-1, x+1`.
/// - `Grid`: for each axis in order, `-e_i` then `+e_i`.
/// - `Tree`: parent first (if any), then children `0..`.
/// - `Ladder`: `(x-1,j), (x+1,j), (x,j-1), (x,j+1)`, skipping rungs off the ends.
/// - `FreeGroup`: right multiplication by `a, a⁻¹, b, b⁻¹, …`.
/// - `Cycle`: `i-1, i+1` mod `k`.
/// - `Path`: `i-1, i+1` where present; the root is the endpoint 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    Line,
    Grid { dims: usize },
    Tree { degree: usize },
    Ladder { width: usize },
    FreeGroup { rank: usize },
    Cycle { length: usize },
    Path { length: usize },
}

impl FamilySpec {
    pub fn is_finite(&self) -> bool {
        matches!(self, FamilySpec::Cycle { .. } | FamilySpec::Path { .. })
    }

    fn check(&self) -> Result<(), GraphError> {
        let bad = |family, reason: &str| {
            Err(GraphError::BadFamilyParameter {
                family,
                reason: reason.to_owned(),
            })
        };
        match *self {
            FamilySpec::Grid { dims } if !(2..=3).contains(&dims) => {
                bad("grid", "dims must be 2 or 3")
            }
            FamilySpec::Tree { degree } if degree < 2 => bad("tree", "degree must be at least 2"),
            FamilySpec::Ladder { width } if width < 2 => bad("ladder", "width must be at least 2"),
            FamilySpec::FreeGroup { rank } if !(1..=26).contains(&rank) => {
                bad("free_group", "rank must be between 1 and 26")
            }
            FamilySpec::Cycle { length } if length < 3 => bad("cycle", "length must be at least 3"),
            FamilySpec::Path { length } if length < 2 => bad("path", "length must be at least 2"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Line => write!(f, "z"),
            FamilySpec::Grid { dims } => write!(f, "z{dims}"),
            FamilySpec::Tree { degree } => write!(f, "tree{degree}"),
            FamilySpec::Ladder { width } => write!(f, "ladder{width}"),
            FamilySpec::FreeGroup { rank } => write!(f, "free{rank}"),
            FamilySpec::Cycle { length } => write!(f, "c{length}"),
            FamilySpec::Path { length } => write!(f, "p{length}"),
        }
    }
}

/// Short names: `z`, `z2`, `z3`, `tree3`, `ladder2`, `free2`, `c4`, `p6`.
impl FromStr for FamilySpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (head, digits) = s.split_at(split);
        let num = || {
            digits.parse::<usize>().map_err(|_| {
                GraphError::InvalidGraph(format!("unknown graph family shorthand {s:?}"))
            })
        };
        let spec = match head {
            "z" | "line" if digits.is_empty() || digits == "1" => FamilySpec::Line,
            "z" | "grid" => FamilySpec::Grid { dims: num()? },
            "tree" | "t" => FamilySpec::Tree { degree: num()? },
            "ladder" => FamilySpec::Ladder { width: num()? },
            "free" | "f" => FamilySpec::FreeGroup { rank: num()? },
            "c" | "cycle" => FamilySpec::Cycle { length: num()? },
            "p" | "path" => FamilySpec::Path { length: num()? },
            _ => {
                return Err(GraphError::InvalidGraph(format!(
                    "unknown graph family shorthand {s:?}"
                )))
            }
        };
        spec.check()?;
        Ok(spec)
    }
}

/// Deterministic oracle for a family.
pub fn family_oracle(spec: &FamilySpec) -> Result<Arc<dyn GraphOracle>, GraphError> {
    spec.check()?;
    Ok(Arc::new(FamilyOracle { spec: spec.clone() }))
}

#[derive(Debug)]
struct FamilyOracle {
    spec: FamilySpec,
}

impl GraphOracle for FamilyOracle {
    fn root(&self) -> Label {
        match self.spec {
            FamilySpec::Line => vec![0],
            FamilySpec::Grid { dims } => vec![0; dims],
            FamilySpec::Tree { .. } | FamilySpec::FreeGroup { .. } => Vec::new(),
            FamilySpec::Ladder { .. } => vec![0, 0],
            FamilySpec::Cycle { .. } | FamilySpec::Path { .. } => vec![0],
        }
    }

    fn neighbors(&self, v: &Label) -> Vec<Label> {
        match self.spec {
            FamilySpec::Line | FamilySpec::Grid { .. } => {
                let mut out = Vec::with_capacity(2 * v.len());
                for axis in 0..v.len() {
                    for step in [-1, 1] {
                        let mut w = v.clone();
                        w[axis] += step;
                        out.push(w);
                    }
                }
                out
            }
            FamilySpec::Tree { degree } => {
                let mut out = Vec::with_capacity(degree);
                let children = if v.is_empty() { degree } else { degree - 1 };
                if !v.is_empty() {
                    out.push(v[..v.len() - 1].to_vec());
                }
                for c in 0..children as i64 {
                    let mut w = v.clone();
                    w.push(c);
                    out.push(w);
                }
                out
            }
            FamilySpec::Ladder { width } => {
                let (x, j) = (v[0], v[1]);
                let mut out = vec![vec![x - 1, j], vec![x + 1, j]];
                if j > 0 {
                    out.push(vec![x, j - 1]);
                }
                if j + 1 < width as i64 {
                    out.push(vec![x, j + 1]);
                }
                out
            }
            FamilySpec::FreeGroup { rank } => (1..=rank as i64)
                .flat_map(|g| [g, -g])
                .map(|letter| {
                    let mut w = v.clone();
                    if w.last() == Some(&-letter) {
                        w.pop();
                    } else {
                        w.push(letter);
                    }
                    w
                })
                .collect(),
            FamilySpec::Cycle { length } => {
                let k = length as i64;
                vec![vec![(v[0] - 1).rem_euclid(k)], vec![(v[0] + 1) % k]]
            }
            FamilySpec::Path { length } => {
                let mut out = Vec::with_capacity(2);
                if v[0] > 0 {
                    out.push(vec![v[0] - 1]);
                }
                if v[0] + 1 < length as i64 {
                    out.push(vec![v[0] + 1]);
                }
                out
            }
        }
    }

    fn is_finite_hint(&self) -> Option<bool> {
        Some(self.spec.is_finite())
    }

    fn label_text(&self, v: &Label) -> String {
        match self.spec {
            FamilySpec::Tree { .. } if v.is_empty() => "e".to_owned(),
            FamilySpec::Tree { .. } => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                parts.join(".")
            }
            FamilySpec::FreeGroup { .. } if v.is_empty() => "e".to_owned(),
            FamilySpec::FreeGroup { .. } => v
                .iter()
                .map(|&l| {
                    let c = (b'a' + (l.unsigned_abs() as u8 - 1)) as char;
                    if l < 0 {
                        c.to_ascii_uppercase()
                    } else {
                        c
                    }
                })
                .collect(),
            _ => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                parts.join(",")
            }
        }
    }

    fn name(&self) -> String {
        self.spec.to_string()
    }
}
