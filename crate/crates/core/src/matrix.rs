//! Dense rational matrices and fraction-free elimination.
//!
//! Elimination works on integer rows: every rational row is first scaled by
//! the lcm of its denominators, then reduced with Bareiss' one-step
//! fraction-free scheme, so every division performed is exact and
//! intermediate entries stay bounded by minors of the input.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::{denominator_lcm, format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{context} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        context: &'static str,
        rows: usize,
        cols: usize,
    },
}

pub(crate) fn check_dim(
    context: &'static str,
    expected: usize,
    found: usize,
) -> Result<(), LinalgError> {
    if expected == found {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}

/// Row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinalgError> {
        check_dim("RationalMatrix::new", rows * cols, entries.len())?;
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from equal-length rows. An empty row list gives a 0x`cols` matrix.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            check_dim("RationalMatrix::from_rows", cols, row.len())?;
            entries.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        check_dim("RationalMatrix::mul_vec", self.cols, x.len())?;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        check_dim("RationalMatrix::mul", self.cols, other.rows)?;
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] = &out.entries[idx] + a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Exact determinant via fraction-free elimination.
    pub fn determinant(&self) -> Result<Rational, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                context: "determinant",
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        // P A P^T has the same determinant; the ordering keeps rows sparse.
        let order = self.min_degree_order();
        let permuted = order
            .iter()
            .map(|&i| order.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        let (int_rows, scales) = integerize_rows(permuted);
        let ech = bareiss_echelon(int_rows, self.cols);
        if ech.pivots.len() < self.rows {
            return Ok(Rational::zero());
        }
        // The last pivot of a full-rank square Bareiss reduction is the determinant.
        let mut det = ech.rows[self.rows - 1][self.cols - 1].clone();
        if ech.swaps % 2 == 1 {
            det = -det;
        }
        let scale: BigInt = scales.iter().product();
        Ok(Rational::new(det, scale))
    }

    /// Greedy minimum-degree elimination order of the symmetrised pattern.
    fn min_degree_order(&self) -> Vec<usize> {
        let n = self.rows;
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for i in 0..n {
            for j in 0..n {
                if i != j && !self.get(i, j).is_zero() {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        let mut done = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !done[v])
                .min_by_key(|&v| (adj[v].len(), v))
                .expect("vertices remain");
            let nbrs = std::mem::take(&mut adj[v]);
            for &a in &nbrs {
                adj[a].remove(&v);
                adj[a].extend(nbrs.iter().copied().filter(|&b| b != a));
            }
            done[v] = true;
            order.push(v);
        }
        order
    }

    pub fn rank(&self) -> usize {
        let (int_rows, _) = integerize_rows(self.row_vecs());
        bareiss_echelon(int_rows, self.cols).pivots.len()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Scales each row by the lcm of its denominators. Returns the integer rows
/// and the scale applied to each.
pub(crate) fn integerize_rows(rows: Vec<Vec<Rational>>) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut scales = Vec::with_capacity(rows.len());
    let int_rows = rows
        .into_iter()
        .map(|row| {
            let l = denominator_lcm(&row);
            let out = row
                .into_iter()
                .map(|v| {
                    let (n, d) = v.into();
                    n * (&l / d)
                })
                .collect();
            scales.push(l);
            out
        })
        .collect();
    (int_rows, scales)
}

/// Row echelon form produced by Bareiss elimination.
pub(crate) struct Echelon {
    /// Reduced rows; rows `pivots.len()..` are zero.
    pub rows: Vec<Vec<BigInt>>,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
    pub swaps: usize,
}

pub(crate) fn bareiss_echelon(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let m = rows.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            swaps += 1;
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = if row[j].is_zero() {
                    BigInt::zero()
                } else {
                    &pivot * &row[j]
                };
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                if !v.is_zero() {
                    debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows,
        pivots,
        swaps,
    }
}

fn content_reduce(row: &mut [BigInt]) {
    let g = row
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            if !v.is_zero() {
                *v /= &g;
            }
        }
    }
}

/// Reduced row echelon form over the rationals.
pub(crate) struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form of the given rows (zero rows dropped).
pub(crate) fn rref(rows: Vec<Vec<Rational>>, cols: usize) -> Rref {
    let (int_rows, _) = integerize_rows(rows);
    let ech = bareiss_echelon(int_rows, cols);
    let rank = ech.pivots.len();
    let mut int_rows: Vec<Vec<BigInt>> = ech.rows.into_iter().take(rank).collect();
    for row in int_rows.iter_mut() {
        content_reduce(row);
    }
    // Integer back elimination, bottom-up, keeping rows primitive.
    for r in (0..rank).rev() {
        let pc = ech.pivots[r];
        let (above, rest) = int_rows.split_at_mut(r);
        let prow = &rest[0];
        let p = &prow[pc];
        for row in above.iter_mut() {
            let factor = std::mem::take(&mut row[pc]);
            if factor.is_zero() {
                continue;
            }
            for j in pc + 1..cols {
                let mut v = if row[j].is_zero() {
                    BigInt::zero()
                } else {
                    p * &row[j]
                };
                if !prow[j].is_zero() {
                    v -= &factor * &prow[j];
                }
                row[j] = v;
            }
            for x in row[..pc].iter_mut().filter(|x| !x.is_zero()) {
                *x *= p;
            }
            content_reduce(row);
        }
    }
    let rows = int_rows
        .into_iter()
        .zip(&ech.pivots)
        .map(|(row, &pc)| {
            let p = row[pc].clone();
            row.into_iter()
                .map(|v| {
                    if v.is_zero() {
                        Rational::zero()
                    } else {
                        Rational::new(v, p.clone())
                    }
                })
                .collect()
        })
        .collect();
    Rref {
        rows,
        pivots: ech.pivots,
    }
}

pub(crate) fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(m(&[&[2, 1], &[1, 3]]).determinant().unwrap(), int(5));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), int(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant().unwrap(), int(0));
        assert_eq!(RationalMatrix::zeros(0, 0).determinant().unwrap(), int(1));
        let half = RationalMatrix::from_rows(
            vec![vec![ratio(1, 2), int(0)], vec![int(0), ratio(2, 3)]],
            2,
        )
        .unwrap();
        assert_eq!(half.determinant().unwrap(), ratio(1, 3));
        assert!(m(&[&[1, 2, 3]]).determinant().is_err());
    }

    #[test]
    fn determinant_matches_cofactor_expansion_3x3() {
        let a = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(a.determinant().unwrap(), int(4));
        let b = m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(b.determinant().unwrap(), int(-1));
    }

    #[test]
    fn rank_and_rref() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(a.rank(), 1);
        let r = rref(a.row_vecs(), 2);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rows, vec![vec![int(1), int(1)]]);

        let b = m(&[&[0, 2, 4, 2], &[1, 1, 1, 1], &[1, 3, 5, 3]]);
        let r = rref(b.row_vecs(), 4);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rows[0], vec![int(1), int(0), int(-1), int(0)]);
        assert_eq!(r.rows[1], vec![int(0), int(1), int(2), int(1)]);
    }

    #[test]
    fn mul_and_dimension_errors() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let i = RationalMatrix::identity(2);
        assert_eq!(a.mul(&i).unwrap(), a);
        assert_eq!(a.mul_vec(&[int(1), int(1)]).unwrap(), vec![int(3), int(7)]);
        assert!(a.mul_vec(&[int(1)]).is_err());
        assert!(a.mul(&RationalMatrix::identity(3)).is_err());
        assert!(RationalMatrix::new(2, 2, vec![int(1)]).is_err());
        assert_eq!(a.transpose().get(0, 1), &int(3));
    }
}
