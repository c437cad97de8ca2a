use std::sync::Arc;

use num_traits::Zero;

use super::{Construction, SolveReport, SolverError};
use crate::affine::{solve_exact, SolveResult};
use crate::graph::GraphView;
use crate::operator::{
    apply_laplacian, truncated_operator_matrix, BallFunction, LambdaField, TargetFunction,
};
use crate::rational::{inv_pow2, Rational};

/// Unique `f` supported in `B_n` with `L f = g` on `B_n`.
///
/// The residual is re-checked by applying the operator pointwise to `f`
/// extended by zero, not by multiplying with the matrix that was solved.
pub fn solve_on_ball(
    view: &mut GraphView,
    target: &TargetFunction,
    n: usize,
    lambda: &LambdaField,
) -> Result<SolveReport, SolverError> {
    let ball = view.ball(n)?;
    let saturated = ball.boundary_saturated();
    let ball = Arc::new(ball);
    let matrix = truncated_operator_matrix(view, n, lambda)?;
    let rhs = target.on_ball(view, n)?;
    let values = match solve_exact(&matrix, &rhs)? {
        SolveResult::Unique(x) => x,
        SolveResult::Affine(_) | SolveResult::Inconsistent { .. } => {
            return Err(SolverError::SingularSystem {
                radius: n,
                saturated,
            })
        }
    };
    let solution = BallFunction::new(ball, values)?;
    let outer = Arc::new(view.ball(n + 1)?);
    let applied = apply_laplacian(view, &solution.extend_by_zero(outer)?, n, lambda)?;
    Ok(SolveReport {
        radius: n,
        residual_check: applied.values() == rhs.as_slice(),
        solution,
        construction: Construction::BallSolver,
        metric_bound: inv_pow2(n + 1),
    })
}

/// Maximum-principle certificate for the truncated operator on `B_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub radius: usize,
    /// `B_{n+1} \ B_n` is nonempty.
    pub strict_inclusion: bool,
    pub determinant: Rational,
    /// Strict inclusion implies a nonzero determinant.
    pub passes: bool,
}

pub fn max_principle_certificate(
    view: &mut GraphView,
    n: usize,
    lambda: &LambdaField,
) -> Result<Certificate, SolverError> {
    let strict_inclusion = view.ball_size(n + 1)? > view.ball_size(n)?;
    let determinant = truncated_operator_matrix(view, n, lambda)?.determinant()?;
    Ok(Certificate {
        radius: n,
        strict_inclusion,
        passes: !strict_inclusion || !determinant.is_zero(),
        determinant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family_oracle, FamilySpec};
    use crate::rational::{int, ratio};

    fn view(spec: FamilySpec) -> GraphView {
        GraphView::new(family_oracle(&spec).unwrap())
    }

    #[test]
    fn line_delta_radius_one() {
        let mut g = view(FamilySpec::Line);
        let r = solve_on_ball(&mut g, &TargetFunction::Delta, 1, &LambdaField::Zero).unwrap();
        assert!(r.residual_check);
        assert_eq!(r.solution.values(), &[int(2), int(1), int(1)]);
        assert_eq!(r.metric_bound, ratio(1, 4));
    }

    #[test]
    fn unit_lambda_at_root() {
        let mut g = view(FamilySpec::Line);
        let lam = LambdaField::constant(int(1)).unwrap();
        let r = solve_on_ball(&mut g, &TargetFunction::Delta, 0, &lam).unwrap();
        assert_eq!(r.solution.values(), &[ratio(1, 2)]);
    }

    #[test]
    fn zero_target_gives_zero() {
        let mut g = view(FamilySpec::Tree { degree: 3 });
        for n in 0..4 {
            let r = solve_on_ball(&mut g, &TargetFunction::zero(), n, &LambdaField::Zero).unwrap();
            assert!(r.solution.is_zero());
        }
    }

    #[test]
    fn saturated_cycle_is_singular() {
        let mut g = view(FamilySpec::Cycle { length: 4 });
        let err = solve_on_ball(&mut g, &TargetFunction::Delta, 2, &LambdaField::Zero).unwrap_err();
        assert_eq!(
            err,
            SolverError::SingularSystem {
                radius: 2,
                saturated: true
            }
        );
        // below saturation the ball solve still works
        assert!(solve_on_ball(&mut g, &TargetFunction::Delta, 1, &LambdaField::Zero).is_ok());
    }

    #[test]
    fn certificates() {
        let mut z = view(FamilySpec::Line);
        let c = max_principle_certificate(&mut z, 2, &LambdaField::Zero).unwrap();
        assert!(c.strict_inclusion && !c.determinant.is_zero() && c.passes);

        let mut c4 = view(FamilySpec::Cycle { length: 4 });
        let c = max_principle_certificate(&mut c4, 2, &LambdaField::Zero).unwrap();
        assert!(!c.strict_inclusion && c.determinant.is_zero() && c.passes);

        let mut t = view(FamilySpec::Tree { degree: 3 });
        let c = max_principle_certificate(&mut t, 1, &LambdaField::Zero).unwrap();
        assert!(c.strict_inclusion && !c.determinant.is_zero());
    }
}
