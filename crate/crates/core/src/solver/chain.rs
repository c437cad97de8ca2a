use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Construction, SolveReport, SolverError};
use crate::affine::{image_under_map, solve_exact, subspace_equal, AffineSubspace};
use crate::graph::{Ball, GraphView};
use crate::matrix::RationalMatrix;
use crate::operator::{
    apply_laplacian, rectangular_operator_matrix, restriction_matrix, BallFunction, LambdaField,
    TargetFunction,
};
use crate::rational::{inv_pow2, Rational};

/// `X_n = { x ∈ Q^{B_{n+1}} : L^{(n)} x = g|B_n }`.
pub fn affine_solution_set(
    view: &mut GraphView,
    target: &TargetFunction,
    n: usize,
    lambda: &LambdaField,
) -> Result<AffineSubspace, SolverError> {
    let matrix = rectangular_operator_matrix(view, n, lambda)?;
    let rhs = target.on_ball(view, n)?;
    Ok(solve_exact(&matrix, &rhs)?.into_subspace())
}

/// One term `u_{nm}(X_m)` of an image chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainImage {
    pub m: usize,
    pub subspace: AffineSubspace,
}

impl ChainImage {
    pub fn dim(&self) -> Option<usize> {
        self.subspace.dim()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStatus {
    /// `window` consecutive images starting at `m0` are equal.
    Stabilized { m0: usize },
    /// No such run up to `max_m`.
    WindowExceeded { max_m: usize },
}

/// The images `u_{nm}(X_m)` for `m = n, n+1, …` up to stabilization or `max_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainState {
    pub level: usize,
    pub window: usize,
    pub images: Vec<ChainImage>,
    pub status: ChainStatus,
    /// `B_{n+1}`, the coordinates of every image.
    pub ball: Arc<Ball>,
}

impl ChainState {
    /// The stabilized image `X'_n`, if any.
    pub fn universal_set(&self) -> Option<&AffineSubspace> {
        match self.status {
            ChainStatus::Stabilized { m0 } => Some(&self.images[m0 - self.level].subspace),
            ChainStatus::WindowExceeded { .. } => None,
        }
    }
}

/// The projective sequence `(X_m, u_{nm})` for one target and potential,
/// with each `X_m` computed at most once.
#[derive(Debug)]
pub struct ProjectiveSystem<'a> {
    view: &'a mut GraphView,
    target: TargetFunction,
    lambda: LambdaField,
    levels: BTreeMap<usize, AffineSubspace>,
}

impl<'a> ProjectiveSystem<'a> {
    pub fn new(view: &'a mut GraphView, target: TargetFunction, lambda: LambdaField) -> Self {
        Self {
            view,
            target,
            lambda,
            levels: BTreeMap::new(),
        }
    }

    pub fn view(&mut self) -> &mut GraphView {
        self.view
    }

    /// `X_m`.
    pub fn level(&mut self, m: usize) -> Result<&AffineSubspace, SolverError> {
        if !self.levels.contains_key(&m) {
            let x = affine_solution_set(self.view, &self.target, m, &self.lambda)?;
            self.levels.insert(m, x);
        }
        Ok(&self.levels[&m])
    }

    /// `u_{nm}(X_m) ⊂ Q^{B_{n+1}}`.
    pub fn image(&mut self, n: usize, m: usize) -> Result<AffineSubspace, SolverError> {
        let r = restriction_matrix(self.view, n, m)?;
        let x = self.level(m)?;
        Ok(image_under_map(x, &r)?)
    }

    pub fn run_chain(
        &mut self,
        n: usize,
        max_m: usize,
        window: usize,
    ) -> Result<ChainState, SolverError> {
        if n > max_m {
            return Err(SolverError::BadArguments(format!(
                "chain level {n} exceeds max_m {max_m}"
            )));
        }
        if window == 0 {
            return Err(SolverError::BadArguments(
                "window must be at least 1".into(),
            ));
        }
        let ball = Arc::new(self.view.ball(n + 1)?);
        let mut images: Vec<ChainImage> = Vec::new();
        let mut run = 0;
        let mut status = ChainStatus::WindowExceeded { max_m };
        for m in n..=max_m {
            let subspace = self.image(n, m)?;
            if let Some(prev) = images.last() {
                let violation = |reason: String| SolverError::ChainViolation { n, m, reason };
                if !subspace.is_subset_of(&prev.subspace)? {
                    return Err(violation("image not contained in its predecessor".into()));
                }
                if subspace.dim() > prev.dim() {
                    return Err(violation("dimension increased".into()));
                }
                let equal = subspace_equal(&subspace, &prev.subspace)?;
                if subspace.dim() == prev.dim() && !equal {
                    return Err(violation(
                        "nested images of equal dimension are not equal".into(),
                    ));
                }
                run = if equal { run + 1 } else { 1 };
            } else {
                run = 1;
            }
            images.push(ChainImage { m, subspace });
            if run >= window {
                status = ChainStatus::Stabilized { m0: m + 1 - window };
                break;
            }
        }
        Ok(ChainState {
            level: n,
            window,
            images,
            status,
            ball,
        })
    }
}

/// Image chain of `X_m` in `Q^{B_{n+1}}`.
///
/// Stops at the first run of `window` equal consecutive images. The images
/// are checked to be nested with non-increasing dimension, and nested images
/// of equal dimension to be equal; any failure is a [`SolverError::ChainViolation`].
pub fn run_chain(
    view: &mut GraphView,
    target: &TargetFunction,
    n: usize,
    max_m: usize,
    window: usize,
    lambda: &LambdaField,
) -> Result<ChainState, SolverError> {
    ProjectiveSystem::new(view, target.clone(), lambda.clone()).run_chain(n, max_m, window)
}

/// Canonical point of the stabilized image, a universal element of `X_n`.
pub fn universal_element(chain: &ChainState) -> Result<BallFunction, SolverError> {
    let set = chain.universal_set().ok_or(SolverError::NotStabilized {
        n: chain.level,
        max_m: chain.images.last().map_or(chain.level, |i| i.m),
    })?;
    let point = set
        .particular()
        .ok_or(SolverError::EmptySolutionSet { n: chain.level })?;
    Ok(BallFunction::new(chain.ball.clone(), point.to_vec())?)
}

/// A coherent family `x_0, …, x_N` with `x_n ∈ X'_n ⊂ Q^{B_{n+1}}` and
/// `x_{n+1}|B_{n+1} = x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherentSolution {
    pub family: Vec<BallFunction>,
    pub chains: Vec<ChainState>,
    /// Residual check of `x_N` on `B_N`.
    pub report: SolveReport,
}

impl CoherentSolution {
    /// `x_n = x_{n+1}|B_{n+1}` at every level, compared exactly.
    pub fn is_coherent(&self) -> bool {
        self.family.windows(2).all(|w| {
            let (lo, hi) = (&w[0], &w[1]);
            hi.values()[..lo.values().len()] == *lo.values()
        })
    }
}

/// Lifts `x_n ∈ X'_n` to `x_{n+1} ∈ X'_{n+1}` with `x_{n+1}|B_{n+1} = x_n` by
/// solving for the coordinates of `X'_{n+1}` with the prefix pinned.
fn lift(
    upper: &AffineSubspace,
    lower_point: &[Rational],
    n: usize,
) -> Result<Vec<Rational>, SolverError> {
    let p = upper.particular().ok_or(SolverError::LiftFailed { n })?;
    let k = lower_point.len();
    let dim = upper.basis().len();
    let rows: Vec<Vec<Rational>> = (0..k)
        .map(|i| upper.basis().iter().map(|b| b[i].clone()).collect())
        .collect();
    let a = RationalMatrix::from_rows(rows, dim)?;
    let rhs: Vec<Rational> = lower_point.iter().zip(p).map(|(x, q)| x - q).collect();
    let coords = solve_exact(&a, &rhs)?.into_subspace();
    let t = coords.particular().ok_or(SolverError::LiftFailed { n })?;
    Ok(upper.point_at(t)?)
}

/// Builds `x_0, …, x_N` from stabilized chains and returns `x_N` on `B_{N+1}`
/// together with its exact residual on `B_N`.
pub fn coherent_solution(
    view: &mut GraphView,
    target: &TargetFunction,
    depth: usize,
    max_m: usize,
    window: usize,
    lambda: &LambdaField,
) -> Result<CoherentSolution, SolverError> {
    if depth > max_m {
        return Err(SolverError::BadArguments(format!(
            "N = {depth} exceeds max_m = {max_m}"
        )));
    }
    let mut system = ProjectiveSystem::new(view, target.clone(), lambda.clone());
    let mut chains = Vec::with_capacity(depth + 1);
    let mut family: Vec<BallFunction> = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        let chain = system.run_chain(n, max_m, window)?;
        let universal = chain
            .universal_set()
            .ok_or(SolverError::NotStabilized { n, max_m })?;
        let values = match family.last() {
            None => universal
                .particular()
                .ok_or(SolverError::EmptySolutionSet { n })?
                .to_vec(),
            Some(prev) => lift(universal, prev.values(), n - 1)?,
        };
        family.push(BallFunction::new(chain.ball.clone(), values)?);
        chains.push(chain);
    }

    let top = family.last().expect("depth + 1 levels").clone();
    let view = system.view();
    let applied = apply_laplacian(view, &top, depth, lambda)?;
    let rhs = target.on_ball(view, depth)?;
    let report = SolveReport {
        radius: depth,
        residual_check: applied.values() == rhs.as_slice(),
        solution: top,
        construction: Construction::MittagLeffler,
        metric_bound: inv_pow2(depth + 1),
    };
    Ok(CoherentSolution {
        family,
        chains,
        report,
    })
}
