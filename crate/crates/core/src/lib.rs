//! Exact preimages of the combinatorial Laplacian on infinite graphs.
//!
//! Given a lazily described connected, locally finite simplicial graph and a
//! right-hand side `g`, the crate solves `L f = g` on growing balls around a
//! root with exact rational arithmetic, where `L = Δ + λ·Id` and `λ ≥ 0`.
//!
//! Modules, bottom-up:
//! - [`graph`]: oracles, built-in families, BFS balls, hypothesis checks.
//! - [`rational`], [`matrix`], [`affine`]: exact scalars, fraction-free
//!   elimination and canonical affine subspaces.
//! - [`operator`]: the Laplacian and its finite truncations.
//! - [`solver`]: the ball solver, image chains and coherent solutions.
//! - [`report`], [`cli`]: JSON reports, fixtures and the command line.

pub mod affine;
pub mod cli;
pub mod graph;
pub mod matrix;
pub mod operator;
pub mod rational;
pub mod report;
pub mod solver;

pub use affine::{
    image_under_map, solve_exact, subspace_dim, subspace_equal, AffineSubspace, SolveResult,
};
pub use graph::{
    enumerate_ball, family_oracle, validate_oracle, Ball, FamilySpec, GraphError, GraphOracle,
    GraphView, VertexId,
};
pub use matrix::{LinalgError, RationalMatrix};
pub use operator::{
    apply_laplacian, rectangular_operator_matrix, restriction_matrix, truncated_operator_matrix,
    BallFunction, LambdaField, OperatorError, TargetFunction,
};
pub use rational::Rational;
pub use solver::{
    affine_solution_set, coherent_solution, max_principle_certificate, prodiscrete_distance,
    run_chain, solve_on_ball, universal_element, ChainState, ChainStatus, SolveReport, SolverError,
};
