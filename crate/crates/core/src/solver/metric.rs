use num_traits::Zero;

use super::SolverError;
use crate::operator::{BallFunction, OperatorError};
use crate::rational::{inv_pow2, Rational};

/// Exact enclosure of the prodiscrete distance `Σ_n 2^{-(n+1)} δ_n(f, h)`,
/// with `δ_n = 1` iff `f` and `h` differ somewhere on `B_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceBounds {
    /// Partial sum over `n ≤ depth`.
    pub lower: Rational,
    /// `lower + 2^{-(depth+1)}`, the largest possible tail.
    pub upper: Rational,
    /// Smallest `n ≤ depth` with `δ_n = 1`, if any.
    pub first_disagreement: Option<usize>,
}

pub fn prodiscrete_distance(
    f: &BallFunction,
    h: &BallFunction,
    depth: usize,
) -> Result<DistanceBounds, SolverError> {
    for g in [f, h] {
        if g.radius() < depth {
            return Err(OperatorError::InsufficientDomain {
                needed: depth,
                got: g.radius(),
            }
            .into());
        }
    }
    let mut first = None;
    for n in 0..=depth {
        let len = f.ball().prefix_len(n).expect("radius checked");
        if h.ball().prefix_len(n) != Some(len) {
            return Err(SolverError::BadArguments(
                "functions live on balls of different graphs".into(),
            ));
        }
        if f.values()[..len] != h.values()[..len] {
            first = Some(n);
            break;
        }
    }
    // δ_n is monotone in n: once the balls disagree they keep disagreeing.
    let lower = match first {
        None => Rational::zero(),
        Some(k) => inv_pow2(k) - inv_pow2(depth + 1),
    };
    let upper = &lower + inv_pow2(depth + 1);
    Ok(DistanceBounds {
        lower,
        upper,
        first_disagreement: first,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graph::{family_oracle, FamilySpec, GraphView};
    use crate::rational::{int, ratio};

    fn line_functions(depth: usize) -> (Arc<crate::graph::Ball>, GraphView) {
        let mut g = GraphView::new(family_oracle(&FamilySpec::Line).unwrap());
        (Arc::new(g.ball(depth).unwrap()), g)
    }

    #[test]
    fn equal_functions() {
        let (b, _) = line_functions(4);
        let f = BallFunction::constant(b.clone(), int(3));
        let d = prodiscrete_distance(&f, &f, 4).unwrap();
        assert_eq!(d.lower, int(0));
        assert_eq!(d.upper, ratio(1, 32));
    }

    #[test]
    fn differ_at_root() {
        let (b, _) = line_functions(3);
        let f = BallFunction::zeros(b.clone());
        let mut vals = vec![int(0); b.len()];
        vals[0] = int(1);
        let h = BallFunction::new(b, vals).unwrap();
        let d = prodiscrete_distance(&f, &h, 3).unwrap();
        assert_eq!(d.lower, ratio(15, 16));
        assert_eq!(d.upper, int(1));
    }

    #[test]
    fn differ_at_distance_two() {
        let (b, _) = line_functions(5);
        let f = BallFunction::zeros(b.clone());
        let mut vals = vec![int(0); b.len()];
        vals[4] = int(1); // label 2
        let h = BallFunction::new(b, vals).unwrap();
        let d = prodiscrete_distance(&f, &h, 5).unwrap();
        // Σ_{n=2..5} 2^{-(n+1)}
        assert_eq!(
            d.lower,
            ratio(1, 8) + ratio(1, 16) + ratio(1, 32) + ratio(1, 64)
        );
        assert_eq!(d.upper, ratio(1, 4));
        assert_eq!(d.first_disagreement, Some(2));
    }

    #[test]
    fn needs_enough_domain() {
        let (b, _) = line_functions(2);
        let f = BallFunction::zeros(b);
        assert!(prodiscrete_distance(&f, &f, 3).is_err());
    }
}
