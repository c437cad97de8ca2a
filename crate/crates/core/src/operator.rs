//! The combinatorial Laplacian, its `λ`-shifted variant and their truncations.
//!
//! `L f(v) = (1 + λ(v)) f(v) - (1/deg v) Σ_{w∼v} f(w)`; with `λ ≡ 0` this is
//! the plain Laplacian. Two finite pieces are assembled:
//!
//! - the rectangular restriction `Q^{B_{n+1}} → Q^{B_n}` ([`rectangular_operator_matrix`]),
//! - the square operator on functions supported in `B_n`, read back on `B_n`
//!   ([`truncated_operator_matrix`]).

use std::str::FromStr;
use std::sync::Arc;

use indexmap::IndexMap;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Ball, GraphError, GraphView, VertexId};
use crate::matrix::{LinalgError, RationalMatrix};
use crate::rational::{int, is_nonnegative, parse_rational, ratio, ExactRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OperatorError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("function is defined on B_{got} but B_{needed} is required")]
    InsufficientDomain { needed: usize, got: usize },
    #[error("λ must be nonnegative, got {value} at {vertex}")]
    NegativeLambda { vertex: String, value: String },
    #[error("restriction needs n <= m, got n = {n}, m = {m}")]
    BadRadii { n: usize, m: usize },
    #[error("cannot parse {what}: {reason}")]
    Parse { what: &'static str, reason: String },
    #[error("{0} values for a ball of {1} vertices")]
    LengthMismatch(usize, usize),
}

/// A rational function on the vertices of a ball, in the ball's order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallFunction {
    ball: Arc<Ball>,
    values: Vec<Rational>,
}

impl BallFunction {
    pub fn new(ball: Arc<Ball>, values: Vec<Rational>) -> Result<Self, OperatorError> {
        if values.len() != ball.len() {
            return Err(OperatorError::LengthMismatch(values.len(), ball.len()));
        }
        Ok(Self { ball, values })
    }

    pub fn zeros(ball: Arc<Ball>) -> Self {
        let values = vec![Rational::zero(); ball.len()];
        Self { ball, values }
    }

    pub fn constant(ball: Arc<Ball>, c: Rational) -> Self {
        let values = vec![c; ball.len()];
        Self { ball, values }
    }

    pub fn ball(&self) -> &Arc<Ball> {
        &self.ball
    }

    pub fn radius(&self) -> usize {
        self.ball.radius()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn value(&self, v: VertexId) -> Option<&Rational> {
        self.values.get(v.index())
    }

    /// Restriction to `B_k`: a prefix of the values.
    pub fn restrict(&self, k: usize) -> Result<BallFunction, OperatorError> {
        let ball = self
            .ball
            .shrink(k)
            .ok_or(OperatorError::InsufficientDomain {
                needed: k,
                got: self.radius(),
            })?;
        let len = ball.len();
        Ok(BallFunction {
            ball: Arc::new(ball),
            values: self.values[..len].to_vec(),
        })
    }

    /// Extension by zero to a larger ball of the same graph.
    pub fn extend_by_zero(&self, ball: Arc<Ball>) -> Result<BallFunction, OperatorError> {
        if ball.len() < self.values.len() {
            return Err(OperatorError::InsufficientDomain {
                needed: self.radius(),
                got: ball.radius(),
            });
        }
        let mut values = self.values.clone();
        values.resize(ball.len(), Rational::zero());
        Ok(BallFunction { ball, values })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

/// Nonnegative potential `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum LambdaField {
    #[default]
    Zero,
    Constant(Rational),
    /// `λ(v) = d(root, v)`.
    Distance,
    /// Values keyed by vertex label; unlisted vertices get 0.
    Sparse(IndexMap<String, Rational>),
}

impl LambdaField {
    pub fn constant(c: Rational) -> Result<Self, OperatorError> {
        if !is_nonnegative(&c) {
            return Err(OperatorError::NegativeLambda {
                vertex: "*".into(),
                value: crate::rational::format_rational(&c),
            });
        }
        Ok(if c.is_zero() {
            LambdaField::Zero
        } else {
            LambdaField::Constant(c)
        })
    }

    pub fn sparse(entries: IndexMap<String, Rational>) -> Result<Self, OperatorError> {
        if let Some((k, v)) = entries.iter().find(|(_, v)| !is_nonnegative(v)) {
            return Err(OperatorError::NegativeLambda {
                vertex: k.clone(),
                value: crate::rational::format_rational(v),
            });
        }
        Ok(LambdaField::Sparse(entries))
    }

    pub fn eval(&self, view: &GraphView, v: VertexId) -> Rational {
        match self {
            LambdaField::Zero => Rational::zero(),
            LambdaField::Constant(c) => c.clone(),
            LambdaField::Distance => int(view.distance(v) as i64),
            LambdaField::Sparse(map) => map
                .get(&view.label_text(v))
                .cloned()
                .unwrap_or_else(Rational::zero),
        }
    }

    /// Text form used on the command line: `0`, `distance`, a rational, or a
    /// JSON object `{"kind":"sparse","entries":{...}}`.
    pub fn describe(&self) -> String {
        match self {
            LambdaField::Zero => "0".into(),
            LambdaField::Constant(c) => crate::rational::format_rational(c),
            LambdaField::Distance => "distance".into(),
            LambdaField::Sparse(m) => {
                let entries: IndexMap<&String, ExactRational> = m
                    .iter()
                    .map(|(k, v)| (k, ExactRational(v.clone())))
                    .collect();
                serde_json::json!({"kind": "sparse", "entries": entries}).to_string()
            }
        }
    }
}

impl FromStr for LambdaField {
    type Err = OperatorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("distance") {
            return Ok(LambdaField::Distance);
        }
        if t.starts_with('{') {
            #[derive(Deserialize)]
            #[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
            enum Raw {
                Zero,
                Distance,
                Constant {
                    value: ExactRational,
                },
                Sparse {
                    entries: IndexMap<String, ExactRational>,
                },
            }
            let raw: Raw = serde_json::from_str(t).map_err(|e| OperatorError::Parse {
                what: "lambda field",
                reason: e.to_string(),
            })?;
            return match raw {
                Raw::Zero => Ok(LambdaField::Zero),
                Raw::Distance => Ok(LambdaField::Distance),
                Raw::Constant { value } => LambdaField::constant(value.0),
                Raw::Sparse { entries } => {
                    LambdaField::sparse(entries.into_iter().map(|(k, v)| (k, v.0)).collect())
                }
            };
        }
        let c = parse_rational(t).map_err(|e| OperatorError::Parse {
            what: "lambda field",
            reason: e.to_string(),
        })?;
        LambdaField::constant(c)
    }
}

/// Closed-form right-hand side `g`, evaluated lazily per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetFunction {
    /// 1 at the root, 0 elsewhere.
    Delta,
    /// `g(v) = coeffs[d(root, v)]`, 0 beyond the listed distances.
    Radial { coeffs: Vec<ExactRational> },
    /// Values keyed by vertex label; unlisted vertices get 0.
    Sparse {
        entries: IndexMap<String, ExactRational>,
    },
}

impl TargetFunction {
    pub fn zero() -> Self {
        TargetFunction::Sparse {
            entries: IndexMap::new(),
        }
    }

    pub fn radial(coeffs: Vec<Rational>) -> Self {
        TargetFunction::Radial {
            coeffs: coeffs.into_iter().map(ExactRational).collect(),
        }
    }

    /// `g(v) = 2^{-d(v)}` for `d(v) ≤ max_distance`.
    pub fn radial_halving(max_distance: usize) -> Self {
        Self::radial((0..=max_distance).map(crate::rational::inv_pow2).collect())
    }

    /// Seeded random sparse target on `B_radius`: each vertex gets a nonzero
    /// value with probability 1/2, numerators in `-9..=9` and denominators
    /// in `1..=6`.
    pub fn random_sparse(
        view: &mut GraphView,
        radius: usize,
        seed: u64,
    ) -> Result<Self, GraphError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let size = view.ball_size(radius)?;
        let mut entries = IndexMap::new();
        for i in 0..size {
            if rng.gen_bool(0.5) {
                let p = rng.gen_range(-9i64..=9);
                let q = rng.gen_range(1i64..=6);
                if p != 0 {
                    entries.insert(view.label_text(VertexId(i)), ExactRational(ratio(p, q)));
                }
            }
        }
        Ok(TargetFunction::Sparse { entries })
    }

    pub fn eval(&self, view: &GraphView, v: VertexId) -> Rational {
        match self {
            TargetFunction::Delta => {
                if v == VertexId::ROOT {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            TargetFunction::Radial { coeffs } => coeffs
                .get(view.distance(v))
                .map(|c| c.0.clone())
                .unwrap_or_else(Rational::zero),
            TargetFunction::Sparse { entries } => entries
                .get(&view.label_text(v))
                .map(|c| c.0.clone())
                .unwrap_or_else(Rational::zero),
        }
    }

    /// `g|B_n` in ball order.
    pub fn on_ball(&self, view: &mut GraphView, n: usize) -> Result<Vec<Rational>, GraphError> {
        let size = view.ball_size(n)?;
        Ok((0..size).map(|i| self.eval(view, VertexId(i))).collect())
    }
}

impl FromStr for TargetFunction {
    type Err = OperatorError;

    /// `delta`, `zero`, or the JSON form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "delta" => Ok(TargetFunction::Delta),
            "zero" | "0" => Ok(TargetFunction::zero()),
            t => serde_json::from_str(t).map_err(|e| OperatorError::Parse {
                what: "target function",
                reason: e.to_string(),
            }),
        }
    }
}

fn degree_weight(view: &mut GraphView, v: VertexId) -> Result<Rational, GraphError> {
    Ok(ratio(1, view.degree(v)? as i64))
}

/// `L f` on `B_n` for `f` known on (at least) `B_{n+1}`.
pub fn apply_laplacian(
    view: &mut GraphView,
    f: &BallFunction,
    n: usize,
    lambda: &LambdaField,
) -> Result<BallFunction, OperatorError> {
    if f.radius() < n + 1 {
        return Err(OperatorError::InsufficientDomain {
            needed: n + 1,
            got: f.radius(),
        });
    }
    let out_ball = Arc::new(f.ball().shrink(n).expect("n < radius"));
    let mut values = Vec::with_capacity(out_ball.len());
    for i in 0..out_ball.len() {
        let v = VertexId(i);
        let w = degree_weight(view, v)?;
        let diag = Rational::one() + lambda.eval(view, v);
        let sum = view
            .neighbors(v)?
            .iter()
            .fold(Rational::zero(), |acc, u| acc + &f.values[u.index()]);
        values.push(diag * &f.values[i] - w * sum);
    }
    Ok(BallFunction {
        ball: out_ball,
        values,
    })
}

/// Matrix of `u_n` on functions supported in `B_n`: diagonal `1 + λ(v)`,
/// `-1/deg(v)` for neighbours inside `B_n`. Neighbours outside contribute
/// nothing.
pub fn truncated_operator_matrix(
    view: &mut GraphView,
    n: usize,
    lambda: &LambdaField,
) -> Result<RationalMatrix, OperatorError> {
    let size = view.ball_size(n)?;
    let mut m = RationalMatrix::zeros(size, size);
    for i in 0..size {
        let v = VertexId(i);
        let w = degree_weight(view, v)?;
        m.set(i, i, Rational::one() + lambda.eval(view, v));
        for u in view.neighbors(v)?.to_vec() {
            if u.index() < size {
                let e = m.get(i, u.index()) - &w;
                m.set(i, u.index(), e);
            }
        }
    }
    Ok(m)
}

/// Matrix of the rectangular restriction `Q^{B_{n+1}} → Q^{B_n}`.
pub fn rectangular_operator_matrix(
    view: &mut GraphView,
    n: usize,
    lambda: &LambdaField,
) -> Result<RationalMatrix, OperatorError> {
    let rows = view.ball_size(n)?;
    let cols = view.ball_size(n + 1)?;
    let mut m = RationalMatrix::zeros(rows, cols);
    for i in 0..rows {
        let v = VertexId(i);
        let w = degree_weight(view, v)?;
        m.set(i, i, Rational::one() + lambda.eval(view, v));
        for u in view.neighbors(v)?.to_vec() {
            let e = m.get(i, u.index()) - &w;
            m.set(i, u.index(), e);
        }
    }
    Ok(m)
}

/// 0/1 selector of the `B_{n+1}` prefix inside `Q^{B_{m+1}}`.
pub fn restriction_matrix(
    view: &mut GraphView,
    n: usize,
    m: usize,
) -> Result<RationalMatrix, OperatorError> {
    if n > m {
        return Err(OperatorError::BadRadii { n, m });
    }
    let rows = view.ball_size(n + 1)?;
    let cols = view.ball_size(m + 1)?;
    let mut r = RationalMatrix::zeros(rows, cols);
    for i in 0..rows {
        r.set(i, i, Rational::one());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family_oracle, FamilySpec};

    fn view(spec: FamilySpec) -> GraphView {
        GraphView::new(family_oracle(&spec).unwrap())
    }

    fn ball(view: &mut GraphView, n: usize) -> Arc<Ball> {
        Arc::new(view.ball(n).unwrap())
    }

    #[test]
    fn constants_are_harmonic() {
        let mut g = view(FamilySpec::Grid { dims: 2 });
        let f = BallFunction::constant(ball(&mut g, 3), ratio(7, 3));
        let out = apply_laplacian(&mut g, &f, 2, &LambdaField::Zero).unwrap();
        assert!(out.is_zero());
        assert_eq!(out.radius(), 2);
    }

    #[test]
    fn shifted_operator_on_constants() {
        let mut g = view(FamilySpec::Tree { degree: 3 });
        let f = BallFunction::constant(ball(&mut g, 2), int(5));
        let lam = LambdaField::constant(int(1)).unwrap();
        let out = apply_laplacian(&mut g, &f, 1, &lam).unwrap();
        assert!(out.values().iter().all(|v| *v == int(5)));
    }

    #[test]
    fn line_bump() {
        // B_1 order is (0, -1, 1); f = 2 at 0 and 1 at ±1.
        let mut g = view(FamilySpec::Line);
        let f = BallFunction::new(ball(&mut g, 1), vec![int(2), int(1), int(1)]).unwrap();
        let out = apply_laplacian(&mut g, &f, 0, &LambdaField::Zero).unwrap();
        assert_eq!(out.values(), &[int(1)]);
    }

    #[test]
    fn insufficient_domain() {
        let mut g = view(FamilySpec::Line);
        let f = BallFunction::zeros(ball(&mut g, 1));
        assert!(matches!(
            apply_laplacian(&mut g, &f, 1, &LambdaField::Zero),
            Err(OperatorError::InsufficientDomain { needed: 2, got: 1 })
        ));
    }

    #[test]
    fn truncated_matrix_on_line() {
        let mut g = view(FamilySpec::Line);
        let m0 = truncated_operator_matrix(&mut g, 0, &LambdaField::Zero).unwrap();
        assert_eq!(m0, RationalMatrix::identity(1));
        // order (0, -1, 1)
        let m1 = truncated_operator_matrix(&mut g, 1, &LambdaField::Zero).unwrap();
        let h = ratio(-1, 2);
        let z = int(0);
        let one = int(1);
        let expected = RationalMatrix::from_rows(
            vec![
                vec![one.clone(), h.clone(), h.clone()],
                vec![h.clone(), one.clone(), z.clone()],
                vec![h, z, one],
            ],
            3,
        )
        .unwrap();
        assert_eq!(m1, expected);
    }

    #[test]
    fn unit_lambda_puts_two_on_diagonal() {
        let mut g = view(FamilySpec::Ladder { width: 2 });
        let lam = LambdaField::constant(int(1)).unwrap();
        let m = truncated_operator_matrix(&mut g, 2, &lam).unwrap();
        for i in 0..m.rows() {
            assert_eq!(m.get(i, i), &int(2));
        }
    }

    #[test]
    fn restriction_matrices() {
        let mut g = view(FamilySpec::Line);
        assert_eq!(
            restriction_matrix(&mut g, 2, 2).unwrap(),
            RationalMatrix::identity(7)
        );
        let r = restriction_matrix(&mut g, 0, 1).unwrap();
        assert_eq!((r.rows(), r.cols()), (3, 5));
        assert!(matches!(
            restriction_matrix(&mut g, 2, 1),
            Err(OperatorError::BadRadii { n: 2, m: 1 })
        ));
        let composed = restriction_matrix(&mut g, 0, 1)
            .unwrap()
            .mul(&restriction_matrix(&mut g, 1, 3).unwrap())
            .unwrap();
        assert_eq!(composed, restriction_matrix(&mut g, 0, 3).unwrap());
    }

    #[test]
    fn lambda_parsing_and_validation() {
        assert_eq!("0".parse::<LambdaField>().unwrap(), LambdaField::Zero);
        assert_eq!(
            "distance".parse::<LambdaField>().unwrap(),
            LambdaField::Distance
        );
        assert_eq!(
            "3/2".parse::<LambdaField>().unwrap(),
            LambdaField::Constant(ratio(3, 2))
        );
        assert!("-1".parse::<LambdaField>().is_err());
        let sparse: LambdaField = r#"{"kind":"sparse","entries":{"0":"1/2"}}"#.parse().unwrap();
        let mut g = view(FamilySpec::Line);
        g.ensure_radius(1).unwrap();
        assert_eq!(sparse.eval(&g, VertexId(0)), ratio(1, 2));
        assert_eq!(sparse.eval(&g, VertexId(1)), int(0));
        assert!(r#"{"kind":"sparse","entries":{"0":"-1/2"}}"#.parse::<LambdaField>().is_err());
    }

    #[test]
    fn target_parsing() {
        assert_eq!(
            "delta".parse::<TargetFunction>().unwrap(),
            TargetFunction::Delta
        );
        let t: TargetFunction = r#"{"kind":"radial","coeffs":["1","-1/2"]}"#.parse().unwrap();
        let mut g = view(FamilySpec::Line);
        assert_eq!(
            t.on_ball(&mut g, 2).unwrap(),
            vec![int(1), ratio(-1, 2), ratio(-1, 2), int(0), int(0)]
        );
        let s: TargetFunction = r#"{"kind":"sparse","entries":{"-1":"3/2"}}"#.parse().unwrap();
        assert_eq!(
            s.on_ball(&mut g, 1).unwrap(),
            vec![int(0), ratio(3, 2), int(0)]
        );
        assert!("{\"kind\":\"gaussian\"}".parse::<TargetFunction>().is_err());
    }

    #[test]
    fn random_targets_are_seeded() {
        let mut g = view(FamilySpec::Grid { dims: 2 });
        let a = TargetFunction::random_sparse(&mut g, 3, 7).unwrap();
        let b = TargetFunction::random_sparse(&mut g, 3, 7).unwrap();
        let c = TargetFunction::random_sparse(&mut g, 3, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
