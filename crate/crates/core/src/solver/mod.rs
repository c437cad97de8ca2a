//! Preimages of the Laplacian on balls.
//!
//! Two constructions live here:
//!
//! - [`solve_on_ball`]: for each radius `n`, the unique `f` supported in
//!   `B_n` whose image agrees with `g` on `B_n`. Uniqueness comes from the
//!   maximum principle as soon as `B_{n+1} ≠ B_n`; these finitely supported
//!   solutions approximate a global solution in the prodiscrete topology.
//! - the projective-limit route ([`run_chain`], [`universal_element`],
//!   [`coherent_solution`]): the affine solution sets `X_n ⊂ Q^{B_{n+1}}`
//!   form a projective sequence under restriction, their images stabilize,
//!   and universal elements can be lifted level by level into a coherent
//!   family that glues to one global solution.

mod ball;
mod chain;
mod metric;

use serde::Serialize;

use crate::graph::GraphError;
use crate::matrix::LinalgError;
use crate::operator::{BallFunction, OperatorError};
use crate::rational::Rational;

pub use ball::{max_principle_certificate, solve_on_ball, Certificate};
pub use chain::{
    affine_solution_set, coherent_solution, run_chain, universal_element, ChainImage, ChainState,
    ChainStatus, CoherentSolution, ProjectiveSystem,
};
pub use metric::{prodiscrete_distance, DistanceBounds};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    /// The truncated operator on `B_radius` is singular. Expected once the
    /// ball exhausts a finite graph; an oracle defect otherwise.
    #[error("truncated operator on B_{radius} is singular (ball saturated: {saturated})")]
    SingularSystem { radius: usize, saturated: bool },
    #[error("image chain at level {n} did not stabilize by m = {max_m}")]
    NotStabilized { n: usize, max_m: usize },
    #[error("image chain at level {n} broken at m = {m}: {reason}")]
    ChainViolation { n: usize, m: usize, reason: String },
    #[error("no element of X'_{} restricts to the chosen element of X'_{n}", n + 1)]
    LiftFailed { n: usize },
    #[error("solution set X_{n} is empty")]
    EmptySolutionSet { n: usize },
    #[error("invalid arguments: {0}")]
    BadArguments(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Construction {
    #[serde(rename = "ball")]
    BallSolver,
    #[serde(rename = "ml")]
    MittagLeffler,
}

/// Result of a solve with its exact residual verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub radius: usize,
    pub solution: BallFunction,
    /// `L(solution) = g` on `B_radius`, compared exactly.
    pub residual_check: bool,
    pub construction: Construction,
    /// Any global solution agreeing with `solution` on `B_radius` lies
    /// within this prodiscrete distance of it: `2^{-(radius+1)}`.
    pub metric_bound: Rational,
}
