//! Fraction-free elimination over Q[t] and generic ranks over Q(t).

use super::matrix::Matrix;
use super::poly::{Poly, RatFunc};
use crate::scalar::{fmt_q, Rational};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Matrix with polynomial entries in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyMatrix {
    pub nvars: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Poly>>,
}

/// Result of a Bareiss run: rank and the `(row, col)` pivots in elimination order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BareissTrail {
    pub rank: usize,
    pub pivots: Vec<(usize, usize)>,
}

impl PolyMatrix {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix { nvars, rows, cols, entries: vec![vec![Poly::zero(nvars); cols]; rows] }
    }

    pub fn from_rational(m: &Matrix<Rational>, nvars: usize) -> Self {
        let mut p = Self::zeros(nvars, m.rows(), m.cols());
        for (i, j, v) in m.nonzeros() {
            p.entries[i][j] = Poly::constant(nvars, v);
        }
        p
    }

    pub fn specialize(&self, point: &[Rational]) -> Matrix<Rational> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.entries[i][j].is_zero() {
                    m[(i, j)] = self.entries[i][j].eval(point);
                }
            }
        }
        m
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
    }
}

/// Rank over the fraction field by Bareiss elimination.
///
/// The pivot is the first structurally nonzero entry in row-major order among
/// the rows not yet used and the columns not yet used.
pub fn bareiss(m: &PolyMatrix) -> BareissTrail {
    let mut a = m.entries.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut used_col = vec![false; cols];
    let mut order: Vec<usize> = (0..rows).collect();
    let mut prev = Poly::one(m.nvars);
    let mut pivots = Vec::new();
    let mut r = 0;
    while r < rows {
        let mut found = None;
        'scan: for i in r..rows {
            for j in 0..cols {
                if !used_col[j] && !a[i][j].is_zero() {
                    found = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((pi, pc)) = found else { break };
        a.swap(r, pi);
        order.swap(r, pi);
        used_col[pc] = true;
        pivots.push((order[r], pc));
        let piv = a[r][pc].clone();
        for i in (r + 1)..rows {
            let f = a[i][pc].clone();
            for j in 0..cols {
                if used_col[j] && j != pc {
                    continue;
                }
                let v = piv.mul(&a[i][j]).sub(&f.mul(&a[r][j]));
                a[i][j] = v.div_exact(&prev).expect("Bareiss division must be exact");
            }
        }
        prev = piv;
        r += 1;
    }
    BareissTrail { rank: pivots.len(), pivots }
}

/// Rank of a matrix over Q(t). Rows are cleared of denominators first; scaling
/// a row by a nonzero polynomial does not change the rank.
pub fn rank_ratfunc(m: &[Vec<RatFunc>], nvars: usize) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut pm = PolyMatrix::zeros(nvars, m.len(), cols);
    for (i, row) in m.iter().enumerate() {
        let mut dens: Vec<&Poly> = Vec::new();
        for x in row {
            if !x.is_zero() && !dens.contains(&&x.den) {
                dens.push(&x.den);
            }
        }
        let l = dens.iter().fold(Poly::one(nvars), |acc, d| acc.mul(d));
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                let scale = l.div_exact(&x.den).expect("denominator divides the row product");
                pm.entries[i][j] = x.num.mul(&scale);
            }
        }
    }
    bareiss(&pm).rank
}

/// How a generic rank was certified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum RankMethod {
    /// The rank is attained at a rational point, and no matrix of this shape has larger rank.
    Specialization { point: Vec<String> },
    /// Full fraction-free elimination over the polynomial ring.
    Bareiss { pivots: Vec<(usize, usize)> },
    /// Fewer columns (or rows) than needed; nothing to eliminate.
    Shape,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenericRank {
    pub rank: usize,
    pub method: RankMethod,
    /// Ranks observed at the seeded specializations.
    pub samples: Vec<usize>,
}

/// Seeded small rational points for specialization.
pub fn sample_points(nvars: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..nvars)
                .map(|_| {
                    let n: i64 = rng.gen_range(-97..=97);
                    let d: i64 = rng.gen_range(1..=13);
                    let n = if n == 0 { 101 } else { n };
                    Rational::new(BigInt::from(n), BigInt::from(d))
                })
                .collect()
        })
        .collect()
}

/// Exact rank over Q(t) with a fast path.
///
/// Rank at any specialization is a lower bound for the generic rank, so when
/// a seeded point reaches `min(rows, cols)` the value is exact. Otherwise the
/// Bareiss rank is computed.
pub fn generic_rank(m: &PolyMatrix, seed: u64) -> GenericRank {
    let cap = m.rows.min(m.cols);
    if cap == 0 {
        return GenericRank { rank: 0, method: RankMethod::Shape, samples: vec![] };
    }
    let pts = sample_points(m.nvars, 5, seed);
    let mut samples = Vec::new();
    for p in &pts {
        let r = m.specialize(p).rank();
        samples.push(r);
        if r == cap {
            return GenericRank {
                rank: r,
                method: RankMethod::Specialization { point: p.iter().map(fmt_q).collect() },
                samples,
            };
        }
    }
    let t = bareiss(m);
    GenericRank { rank: t.rank, method: RankMethod::Bareiss { pivots: t.pivots }, samples }
}

/// Rank of a family of rational matrices `f(point)` whose entries are polynomial
/// in the parameters, where only evaluation is cheap. Returns the exact rank if
/// a sample attains `cap`; otherwise `None` and the sampled ranks.
pub fn sampled_full_rank(
    nvars: usize,
    cap: usize,
    seed: u64,
    f: impl Fn(&[Rational]) -> Matrix<Rational>,
) -> (Option<Vec<Rational>>, Vec<usize>) {
    let mut samples = Vec::new();
    for p in sample_points(nvars, 5, seed) {
        let r = f(&p).rank();
        samples.push(r);
        if r >= cap {
            return (Some(p), samples);
        }
    }
    (None, samples)
}

pub fn is_zero_matrix(m: &PolyMatrix) -> bool {
    m.entries.iter().all(|r| r.iter().all(|p| p.is_zero()))
}

/// Convenience for tests: constant rational entries.
pub fn const_poly_matrix(rows: &[&[i64]], nvars: usize) -> PolyMatrix {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    let mut p = PolyMatrix::zeros(nvars, r, c);
    for i in 0..r {
        for j in 0..c {
            if rows[i][j] != 0 {
                p.entries[i][j] = Poly::constant(nvars, Rational::from_integer(BigInt::from(rows[i][j])));
            }
        }
    }
    p
}
