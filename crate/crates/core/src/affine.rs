//! Affine subspaces of `Q^d` in a canonical form, and exact linear solves.
//!
//! Canonical form: the direction basis is in *trailing* reduced echelon
//! form. Each basis vector's last nonzero coordinate (its pivot) equals 1,
//! every other basis vector vanishes there, and vectors are sorted by pivot.
//! The particular point vanishes on every pivot coordinate. Both pieces are
//! determined by the point set alone, so set equality is field equality.
//!
//! For a solution set `{x : Ax = b}` the trailing pivots of `ker A` are
//! exactly the free columns of the ordinary reduced echelon form of `A`, so
//! the canonical particular point is the usual "free variables set to zero"
//! solution.

use num_traits::{One, Zero};

use crate::matrix::{check_dim, is_zero_vec, rref, LinalgError, RationalMatrix};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineSubspace {
    ambient_dim: usize,
    particular: Vec<Rational>,
    basis: Vec<Vec<Rational>>,
    empty: bool,
}

/// Outcome of [`solve_exact`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Unique(Vec<Rational>),
    /// Solution set of positive dimension.
    Affine(AffineSubspace),
    Inconsistent {
        ambient_dim: usize,
    },
}

impl SolveResult {
    pub fn into_subspace(self) -> AffineSubspace {
        match self {
            SolveResult::Unique(p) => AffineSubspace::point(p),
            SolveResult::Affine(s) => s,
            SolveResult::Inconsistent { ambient_dim } => AffineSubspace::empty(ambient_dim),
        }
    }

    fn from_subspace(s: AffineSubspace) -> Self {
        if s.empty {
            SolveResult::Inconsistent {
                ambient_dim: s.ambient_dim,
            }
        } else if s.basis.is_empty() {
            SolveResult::Unique(s.particular)
        } else {
            SolveResult::Affine(s)
        }
    }
}

/// Trailing pivot of a canonical basis vector.
fn last_nonzero(v: &[Rational]) -> Option<usize> {
    v.iter().rposition(|x| !x.is_zero())
}

/// Trailing reduced echelon basis of `span(vectors)`, built by inserting one
/// vector at a time. Inputs that are already canonical cost one sparse pass.
fn canonical_basis(vectors: Vec<Vec<Rational>>, dim: usize) -> Vec<Vec<Rational>> {
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    for v in vectors {
        let mut v = reduce_keyed(v, &basis);
        let Some(q) = last_nonzero(&v) else {
            continue;
        };
        if !v[q].is_one() {
            let inv = Rational::one() / &v[q];
            for x in v.iter_mut().filter(|x| !x.is_zero()) {
                *x *= &inv;
            }
        }
        // v vanishes on every existing pivot, so clearing q keeps those intact.
        for (_, b) in basis.iter_mut() {
            if b[q].is_zero() {
                continue;
            }
            let c = b[q].clone();
            for j in 0..=q {
                if !v[j].is_zero() {
                    b[j] -= &c * &v[j];
                }
            }
        }
        basis.push((q, v));
    }
    debug_assert!(basis.iter().all(|(_, b)| b.len() == dim));
    basis.sort_by_key(|(p, _)| *p);
    basis.into_iter().map(|(_, b)| b).collect()
}

fn reduce_keyed(mut v: Vec<Rational>, basis: &[(usize, Vec<Rational>)]) -> Vec<Rational> {
    for (p, b) in basis {
        if v[*p].is_zero() {
            continue;
        }
        let c = v[*p].clone();
        for j in 0..=*p {
            if !b[j].is_zero() {
                v[j] -= &c * &b[j];
            }
        }
    }
    v
}

/// Subtracts basis components so that `v` vanishes on every pivot.
fn reduce(mut v: Vec<Rational>, basis: &[Vec<Rational>]) -> Vec<Rational> {
    for b in basis {
        let p = last_nonzero(b).expect("canonical basis vectors are nonzero");
        if v[p].is_zero() {
            continue;
        }
        let c = v[p].clone();
        for (x, y) in v.iter_mut().zip(b) {
            if !y.is_zero() {
                *x -= &c * y;
            }
        }
    }
    v
}

impl AffineSubspace {
    /// Canonicalises `particular + span(directions)`.
    pub fn new(
        particular: Vec<Rational>,
        directions: Vec<Vec<Rational>>,
    ) -> Result<Self, LinalgError> {
        let dim = particular.len();
        for d in &directions {
            check_dim("AffineSubspace::new", dim, d.len())?;
        }
        let basis = canonical_basis(directions, dim);
        let particular = reduce(particular, &basis);
        Ok(Self {
            ambient_dim: dim,
            particular,
            basis,
            empty: false,
        })
    }

    pub fn point(p: Vec<Rational>) -> Self {
        Self {
            ambient_dim: p.len(),
            particular: p,
            basis: Vec::new(),
            empty: false,
        }
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            particular: Vec::new(),
            basis: Vec::new(),
            empty: true,
        }
    }

    /// The whole space `Q^d`.
    pub fn whole(d: usize) -> Self {
        let basis = (0..d)
            .map(|i| {
                let mut v = vec![Rational::zero(); d];
                v[i] = Rational::one();
                v
            })
            .collect();
        Self {
            ambient_dim: d,
            particular: vec![Rational::zero(); d],
            basis,
            empty: false,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Canonical particular point; `None` for the empty set.
    pub fn particular(&self) -> Option<&[Rational]> {
        (!self.empty).then_some(self.particular.as_slice())
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// Dimension, or `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        (!self.empty).then_some(self.basis.len())
    }

    /// Coordinates carrying a pivot of the direction basis.
    pub fn pivot_coordinates(&self) -> Vec<usize> {
        self.basis.iter().filter_map(|b| last_nonzero(b)).collect()
    }

    /// True when the subspace passes through the origin.
    pub fn is_linear(&self) -> bool {
        !self.empty && is_zero_vec(&self.particular)
    }

    pub fn direction_contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient_dim && is_zero_vec(&reduce(v.to_vec(), &self.basis))
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        if self.empty || x.len() != self.ambient_dim {
            return false;
        }
        let diff: Vec<Rational> = x.iter().zip(&self.particular).map(|(a, b)| a - b).collect();
        self.direction_contains(&diff)
    }

    /// Set inclusion `self ⊆ other`, checked generator by generator.
    pub fn is_subset_of(&self, other: &AffineSubspace) -> Result<bool, LinalgError> {
        check_dim("is_subset_of", self.ambient_dim, other.ambient_dim)?;
        if self.empty {
            return Ok(true);
        }
        Ok(other.contains(&self.particular)
            && self.basis.iter().all(|b| other.direction_contains(b)))
    }

    /// Point `particular + Σ coeffs[i]·basis[i]`.
    pub fn point_at(&self, coeffs: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        check_dim("point_at", self.basis.len(), coeffs.len())?;
        let mut x = self.particular.clone();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *xi += c * bi;
                }
            }
        }
        Ok(x)
    }
}

/// Full solution set of `A x = b`.
pub fn solve_exact(a: &RationalMatrix, b: &[Rational]) -> Result<SolveResult, LinalgError> {
    check_dim("solve_exact", a.rows(), b.len())?;
    let n = a.cols();
    let augmented: Vec<Vec<Rational>> = (0..a.rows())
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let reduced = rref(augmented, n + 1);
    if reduced.pivots.last() == Some(&n) {
        return Ok(SolveResult::Inconsistent { ambient_dim: n });
    }
    let mut particular = vec![Rational::zero(); n];
    let mut is_pivot = vec![false; n];
    for (row, &pc) in reduced.rows.iter().zip(&reduced.pivots) {
        particular[pc] = row[n].clone();
        is_pivot[pc] = true;
    }
    // Kernel vectors e_f - Σ rref[r][f] e_{pivot r} are already in trailing
    // canonical form: pivot f, and zero on every other free column.
    let basis: Vec<Vec<Rational>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &pc) in reduced.rows.iter().zip(&reduced.pivots) {
                if !row[f].is_zero() {
                    v[pc] = -row[f].clone();
                }
            }
            v
        })
        .collect();
    Ok(SolveResult::from_subspace(AffineSubspace {
        ambient_dim: n,
        particular,
        basis,
        empty: false,
    }))
}

/// `{ M x : x ∈ S }` in canonical form.
pub fn image_under_map(
    s: &AffineSubspace,
    m: &RationalMatrix,
) -> Result<AffineSubspace, LinalgError> {
    check_dim("image_under_map", s.ambient_dim, m.cols())?;
    if s.empty {
        return Ok(AffineSubspace::empty(m.rows()));
    }
    let particular = m.mul_vec(&s.particular)?;
    let directions = s
        .basis
        .iter()
        .map(|b| m.mul_vec(b))
        .collect::<Result<Vec<_>, _>>()?;
    AffineSubspace::new(particular, directions)
}

/// Set equality, decided on canonical forms.
pub fn subspace_equal(a: &AffineSubspace, b: &AffineSubspace) -> Result<bool, LinalgError> {
    check_dim("subspace_equal", a.ambient_dim, b.ambient_dim)?;
    Ok(a == b)
}

pub fn subspace_dim(s: &AffineSubspace) -> Option<usize> {
    s.dim()
}
