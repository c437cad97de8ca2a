//! JSON report schemas. Every number is an exact rational string.
//!
//! Solutions are keyed by vertex label (for the integer line, the integer
//! itself) and listed in ball order.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::graph::GraphView;
use crate::operator::BallFunction;
use crate::rational::{ExactRational, Rational};
use crate::solver::{
    Certificate, ChainState, ChainStatus, CoherentSolution, Construction, DistanceBounds,
    SolveReport,
};

pub type LabelledValues = IndexMap<String, ExactRational>;

pub fn labelled_values(f: &BallFunction) -> LabelledValues {
    f.ball()
        .vertices()
        .iter()
        .zip(f.values())
        .map(|(v, x)| (v.label.clone(), ExactRational(x.clone())))
        .collect()
}

/// Report of a ball solve, including the finite-graph singular outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveJson {
    pub graph: String,
    pub radius: usize,
    pub lambda: String,
    pub construction: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<LabelledValues>,
    pub residual_zero: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric_bound: Option<ExactRational>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub singular_expected_finite: bool,
}

impl SolveJson {
    pub fn from_report(graph: &str, lambda: &str, report: &SolveReport) -> Self {
        Self {
            graph: graph.to_owned(),
            radius: report.radius,
            lambda: lambda.to_owned(),
            construction: construction_tag(report.construction).to_owned(),
            status: "ok".into(),
            solution: Some(labelled_values(&report.solution)),
            residual_zero: report.residual_check,
            metric_bound: Some(ExactRational(report.metric_bound.clone())),
            singular_expected_finite: false,
        }
    }

    /// Singular truncated operator on a saturated (finite) ball.
    pub fn singular_finite(graph: &str, lambda: &str, radius: usize) -> Self {
        Self {
            graph: graph.to_owned(),
            radius,
            lambda: lambda.to_owned(),
            construction: "ball".into(),
            status: "singular".into(),
            solution: None,
            residual_zero: false,
            metric_bound: None,
            singular_expected_finite: true,
        }
    }

    /// Values in ball order, parsed back to rationals.
    pub fn solution_values(&self) -> Option<Vec<Rational>> {
        self.solution
            .as_ref()
            .map(|m| m.values().map(|v| v.0.clone()).collect())
    }
}

pub fn construction_tag(c: Construction) -> &'static str {
    match c {
        Construction::BallSolver => "ball",
        Construction::MittagLeffler => "ml",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub graph: String,
    pub radius: usize,
    pub lambda: String,
    pub strict_inclusion: bool,
    pub determinant: ExactRational,
    pub passes: bool,
}

impl CertificateJson {
    pub fn new(graph: &str, lambda: &str, c: &Certificate) -> Self {
        Self {
            graph: graph.to_owned(),
            radius: c.radius,
            lambda: lambda.to_owned(),
            strict_inclusion: c.strict_inclusion,
            determinant: ExactRational(c.determinant.clone()),
            passes: c.passes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageJson {
    pub m: usize,
    /// `null` for the empty set.
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub graph: String,
    pub level: usize,
    pub window: usize,
    pub lambda: String,
    /// `"stabilized"` or `"window_exceeded"`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m0: Option<usize>,
    pub images: Vec<ImageJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universal_element: Option<LabelledValues>,
}

impl ChainJson {
    pub fn new(
        graph: &str,
        lambda: &str,
        chain: &ChainState,
        universal: Option<&BallFunction>,
    ) -> Self {
        let (status, m0) = match chain.status {
            ChainStatus::Stabilized { m0 } => ("stabilized", Some(m0)),
            ChainStatus::WindowExceeded { .. } => ("window_exceeded", None),
        };
        Self {
            graph: graph.to_owned(),
            level: chain.level,
            window: chain.window,
            lambda: lambda.to_owned(),
            status: status.into(),
            m0,
            images: chain
                .images
                .iter()
                .map(|i| ImageJson {
                    m: i.m,
                    dim: i.dim(),
                })
                .collect(),
            universal_element: universal.map(labelled_values),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherentJson {
    #[serde(flatten)]
    pub report: SolveJson,
    /// `x_0, …, x_N`, each on `B_{n+1}`.
    pub family: Vec<LabelledValues>,
    pub coherent: bool,
    pub m0: Vec<Option<usize>>,
}

impl CoherentJson {
    pub fn new(graph: &str, lambda: &str, sol: &CoherentSolution) -> Self {
        let mut report = SolveJson::from_report(graph, lambda, &sol.report);
        report.status = "stabilized".into();
        Self {
            report,
            family: sol.family.iter().map(labelled_values).collect(),
            coherent: sol.is_coherent(),
            m0: sol
                .chains
                .iter()
                .map(|c| match c.status {
                    ChainStatus::Stabilized { m0 } => Some(m0),
                    ChainStatus::WindowExceeded { .. } => None,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricJson {
    pub graph: String,
    pub depth: usize,
    /// `[lower, upper]`.
    pub bounds: [ExactRational; 2],
    pub first_disagreement: Option<usize>,
}

impl MetricJson {
    pub fn new(graph: &str, depth: usize, d: &DistanceBounds) -> Self {
        Self {
            graph: graph.to_owned(),
            depth,
            bounds: [
                ExactRational(d.lower.clone()),
                ExactRational(d.upper.clone()),
            ],
            first_disagreement: d.first_disagreement,
        }
    }
}

/// Labels of `B_n` in ball order, for checking that a parsed report lines
/// up with a freshly enumerated ball.
pub fn ball_labels(view: &mut GraphView, n: usize) -> Result<Vec<String>, crate::GraphError> {
    Ok(view
        .ball(n)?
        .vertices()
        .iter()
        .map(|v| v.label.clone())
        .collect())
}
