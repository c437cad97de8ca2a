//! Test-only oracles, written independently of the library's elimination
//! and enumeration code paths.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use laplace_core::graph::{GraphOracle, Label};
use laplace_core::Rational;
use num_traits::{One, Zero};

/// Textbook Gauss-Jordan over rationals (no fraction-free tricks).
/// Returns the reduced rows and pivot columns.
pub fn naive_rref(mut rows: Vec<Vec<Rational>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn naive_rank(rows: Vec<Vec<Rational>>, cols: usize) -> usize {
    naive_rref(rows, cols).1.len()
}

/// Unique solution of a square system, or `None` if singular.
pub fn naive_solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (rows, pivots) = naive_rref(aug, n + 1);
    if pivots.len() != n || pivots.last() == Some(&n) {
        return None;
    }
    Some(rows.iter().map(|r| r[n].clone()).collect())
}

/// Determinant by Laplace expansion along the first row (small matrices only).
pub fn cofactor_det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    if n == 0 {
        return Rational::one();
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut det = Rational::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &a[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Plain BFS distance map over oracle labels up to `radius`.
pub fn bfs_distances(oracle: &dyn GraphOracle, radius: usize) -> HashMap<Label, usize> {
    let root = oracle.root();
    let mut dist = HashMap::from([(root.clone(), 0usize)]);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if d == radius {
            continue;
        }
        for w in oracle.neighbors(&v) {
            if !dist.contains_key(&w) {
                dist.insert(w.clone(), d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn bfs_ball_size(oracle: &dyn GraphOracle, radius: usize) -> usize {
    bfs_distances(oracle, radius).len()
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Operator rows for `rows` against columns `cols`, assembled straight from
/// oracle neighbour lists: `1 + λ` on the diagonal, `-1/deg` per neighbour
/// present among the columns.
pub fn naive_operator(
    oracle: &dyn GraphOracle,
    rows: &[Label],
    cols: &[Label],
    lambda: impl Fn(&Label) -> Rational,
) -> Vec<Vec<Rational>> {
    let col_of: HashMap<&Label, usize> = cols.iter().enumerate().map(|(i, l)| (l, i)).collect();
    rows.iter()
        .map(|v| {
            let mut row = vec![Rational::zero(); cols.len()];
            let nbrs = oracle.neighbors(v);
            let w = ratio(1, nbrs.len() as i64);
            if let Some(&i) = col_of.get(v) {
                row[i] += Rational::one() + lambda(v);
            }
            for u in &nbrs {
                if let Some(&j) = col_of.get(u) {
                    row[j] -= &w;
                }
            }
            row
        })
        .collect()
}

/// Labels of `B_n` sorted by (distance, label), a library-independent order.
pub fn sorted_ball(oracle: &dyn GraphOracle, n: usize) -> Vec<Label> {
    let dist = bfs_distances(oracle, n);
    let mut labels: Vec<Label> = dist.keys().cloned().collect();
    labels.sort_by(|a, b| (dist[a], a).cmp(&(dist[b], b)));
    labels
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn to_modp(x: &Rational) -> u64 {
    use num_bigint::BigInt;
    let p = BigInt::from(P);
    let reduce = |v: &BigInt| -> u64 { ((v % &p + &p) % &p).try_into().unwrap() };
    let (n, d) = (reduce(x.numer()), reduce(x.denom()));
    assert_ne!(d, 0, "denominator divisible by the modulus");
    mulmod(n, powmod(d, P - 2))
}

/// Rank modulo the prime 2^61 - 1. It never exceeds the rational rank, so
/// a full-row-rank result certifies the rational rank exactly.
pub fn modp_rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(to_modp).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = powmod(m[rank][c], P - 2);
        let pivot = m[rank].clone();
        for row in m[rank + 1..].iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = mulmod(row[c], inv);
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                if *y != 0 {
                    *x = (*x + P - mulmod(f, *y)) % P;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
