//! Matrix realizations of gl, sl, osp, p and q.

use super::{from_matrices, LieSuperalgebra, Weight};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{q, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gl,
    Sl,
    Osp,
    P,
    Q,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Gl => "gl",
            Family::Sl => "sl",
            Family::Osp => "osp",
            Family::P => "p",
            Family::Q => "q",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Family::Gl),
            "sl" => Ok(Family::Sl),
            "osp" => Ok(Family::Osp),
            "p" => Ok(Family::P),
            "q" => Ok(Family::Q),
            other => Err(Error::Invalid(format!("unknown family {other:?}"))),
        }
    }
}

fn size_err(family: &str, constraint: &str) -> Error {
    Error::Size { family: family.into(), constraint: constraint.into() }
}

fn unit(n: usize, i: usize, j: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = Rational::one();
    m
}

fn elabel(i: usize, j: usize, big: usize) -> String {
    if big > 9 {
        format!("E{},{}", i + 1, j + 1)
    } else {
        format!("E{}{}", i + 1, j + 1)
    }
}

fn gl_frame(m: usize, n: usize) -> Vec<String> {
    (1..=m).map(|i| format!("e{i}")).chain((1..=n).map(|i| format!("d{i}"))).collect()
}

/// Off-diagonal elementary matrices of gl(m|n): even ones first, then odd.
fn off_diagonal(m: usize, n: usize) -> Vec<(String, Matrix<Rational>)> {
    let big = m + n;
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for i in 0..big {
        for j in 0..big {
            if i == j {
                continue;
            }
            let e = (elabel(i, j, big), unit(big, i, j));
            if (i < m) == (j < m) {
                even.push(e);
            } else {
                odd.push(e);
            }
        }
    }
    even.extend(odd);
    even
}

/// Super transpose: `[[A, B], [C, D]] -> [[A^t, C^t], [-B^t, D^t]]`.
pub fn supertranspose(x: &Matrix<Rational>, m: usize) -> Matrix<Rational> {
    let big = x.rows();
    let mut t = Matrix::zeros(big, big);
    for (i, j, v) in x.nonzeros() {
        let v = if i < m && j >= m { -v } else { v };
        t[(j, i)] = v;
    }
    t
}

/// Gram matrix of the even supersymmetric form defining osp(m|n).
pub fn osp_form(m: usize, n: usize) -> Matrix<Rational> {
    let big = m + n;
    let h = n / 2;
    let mut j = Matrix::zeros(big, big);
    for i in 0..m {
        j[(i, m - 1 - i)] = Rational::one();
    }
    for i in 0..h {
        j[(m + i, m + h + i)] = Rational::one();
        j[(m + h + i, m + i)] = -Rational::one();
    }
    j
}

/// The involution of gl(m|n) whose fixed points are osp(m|n).
pub fn osp_theta(m: usize, n: usize) -> impl Fn(&Matrix<Rational>) -> Matrix<Rational> {
    let j = osp_form(m, n);
    let ji = j.inverse().expect("form is nondegenerate");
    move |x| ji.mul(&supertranspose(x, m)).mul(&j).scale(&q(-1))
}

/// The involution of gl(n|n) whose fixed points are p(n).
pub fn p_theta(n: usize) -> impl Fn(&Matrix<Rational>) -> Matrix<Rational> {
    move |x| {
        let mut t = Matrix::zeros(2 * n, 2 * n);
        for (i, j, v) in x.nonzeros() {
            let (bi, bj) = (i / n, j / n);
            let (a, b) = (i % n, j % n);
            let (r, c, s) = match (bi, bj) {
                (0, 0) => (n + b, n + a, -v),
                (1, 1) => (b, a, -v),
                (0, 1) => (b, n + a, v),
                _ => (n + b, a, -v),
            };
            t[(r, c)] = s;
        }
        t
    }
}

/// Conjugation by the odd involution `[[0, I], [I, 0]]`; its fixed points are q(n).
pub fn q_theta(n: usize) -> impl Fn(&Matrix<Rational>) -> Matrix<Rational> {
    move |x| {
        let mut t = Matrix::zeros(2 * n, 2 * n);
        for (i, j, v) in x.nonzeros() {
            t[((i + n) % (2 * n), (j + n) % (2 * n))] = v;
        }
        t
    }
}

/// Basis of the fixed points of an involution of gl(m|n), built from `(E + theta E)`
/// over elementary matrices: diagonal first, then even, then odd. Each vector is
/// scaled so its first nonzero entry is 1. Returns the basis and the number of
/// diagonal (toral) vectors.
fn fixed_point_basis(
    m: usize,
    n: usize,
    theta: &dyn Fn(&Matrix<Rational>) -> Matrix<Rational>,
) -> (Vec<Matrix<Rational>>, usize) {
    let big = m + n;
    let mut order = Vec::new();
    for i in 0..big {
        order.push((i, i));
    }
    for odd in [false, true] {
        for i in 0..big {
            for j in 0..big {
                if i != j && ((i < m) != (j < m)) == odd {
                    order.push((i, j));
                }
            }
        }
    }
    let mut span = Subspace::new(big * big);
    let mut out = Vec::new();
    let mut diag = 0;
    for (k, (i, j)) in order.into_iter().enumerate() {
        let e = unit(big, i, j);
        let v = e.add(&theta(&e));
        let nz = v.nonzeros();
        let Some((_, _, lead)) = nz.first() else { continue };
        let v = v.scale(&(Rational::one() / lead));
        let flat: Vec<Rational> = (0..big * big).map(|p| v[(p / big, p % big)].clone()).collect();
        if span.insert(&flat) {
            out.push(v);
            if k < big {
                diag += 1;
            }
        }
    }
    (out, diag)
}

pub fn fmt_weight(w: &[i64], labels: &[String]) -> String {
    let mut s = String::new();
    for (c, l) in w.iter().zip(labels) {
        if *c == 0 {
            continue;
        }
        let sign = if *c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
        let mag = c.unsigned_abs();
        if mag == 1 {
            s.push_str(&format!("{sign}{l}"));
        } else {
            s.push_str(&format!("{sign}{mag}{l}"));
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

/// Builds an algebra from fixed points of `theta`, labelling roots by weight.
fn fixed_point_algebra(
    name: String,
    m: usize,
    n: usize,
    theta: &dyn Fn(&Matrix<Rational>) -> Matrix<Rational>,
    frame_labels: Vec<String>,
) -> Result<LieSuperalgebra> {
    let (mats, diag) = fixed_point_basis(m, n, theta);
    let prov: Vec<(String, Matrix<Rational>)> =
        mats.iter().enumerate().map(|(k, x)| (format!("b{k}"), x.clone())).collect();
    let g = from_matrices(name.clone(), m, n, prov, diag, frame_labels.clone(), false)?;
    let mut labels = Vec::with_capacity(g.dim());
    let mut seen = std::collections::BTreeMap::<String, usize>::new();
    let mut h_even = 0;
    let mut h_odd = 0;
    for k in 0..g.dim() {
        let w: &Weight = &g.weights[k];
        let base = if w.iter().all(|&c| c == 0) {
            if g.parity(k).is_odd() {
                h_odd += 1;
                format!("k{h_odd}")
            } else {
                h_even += 1;
                format!("h{h_even}")
            }
        } else {
            let p = if g.parity(k).is_odd() { "y" } else { "x" };
            format!("{p}[{}]", fmt_weight(w, &frame_labels))
        };
        let c = seen.entry(base.clone()).or_insert(0);
        *c += 1;
        labels.push(if *c == 1 { base } else { format!("{base}'{c}") });
    }
    let mut g = g;
    g.space.labels = labels;
    Ok(g)
}

/// The standard matrix realization of a classical family.
///
/// `gl(m|n)`, `sl(m|n)` and `osp(m|n)` are realized in `(m|n)` dimensions; for `osp`
/// the odd dimension `n` must be even. `p(n)` and `q(n)` live in `(n|n)`; their `m`
/// must be `0` or equal to `n`.
pub fn construct(family: Family, m: usize, n: usize) -> Result<LieSuperalgebra> {
    match family {
        Family::Gl => {
            if m + n == 0 {
                return Err(size_err("gl", "gl needs m + n >= 1"));
            }
            let big = m + n;
            let mut basis: Vec<_> = (0..big).map(|i| (elabel(i, i, big), unit(big, i, i))).collect();
            basis.extend(off_diagonal(m, n));
            from_matrices(format!("gl({m}|{n})"), m, n, basis, big, gl_frame(m, n), true)
        }
        Family::Sl => {
            if m + n < 2 {
                return Err(size_err("sl", "sl needs m + n >= 2"));
            }
            let big = m + n;
            let mut basis = Vec::new();
            for k in 0..big - 1 {
                let s = if k + 1 == m { Rational::one() } else { -Rational::one() };
                let h = unit(big, k, k).add(&unit(big, k + 1, k + 1).scale(&s));
                basis.push((format!("H{}", k + 1), h));
            }
            basis.extend(off_diagonal(m, n));
            from_matrices(format!("sl({m}|{n})"), m, n, basis, big - 1, gl_frame(m, n), true)
        }
        Family::Osp => {
            if !n.is_multiple_of(2) {
                return Err(size_err("osp", "osp needs even symplectic rank (odd dimension n even)"));
            }
            if m + n < 2 {
                return Err(size_err("osp", "osp needs m + n >= 2"));
            }
            let frame: Vec<String> =
                (1..=m / 2).map(|i| format!("e{i}")).chain((1..=n / 2).map(|i| format!("d{i}"))).collect();
            let theta = osp_theta(m, n);
            fixed_point_algebra(format!("osp({m}|{n})"), m, n, &theta, frame)
        }
        Family::P | Family::Q => {
            let name = if family == Family::P { "p" } else { "q" };
            if n == 0 {
                return Err(size_err(name, &format!("{name} needs n >= 1")));
            }
            if m != 0 && m != n {
                return Err(size_err(name, &format!("{name}(n) takes a single size n")));
            }
            let frame: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
            if family == Family::P {
                fixed_point_algebra(format!("p({n})"), n, n, &p_theta(n), frame)
            } else {
                fixed_point_algebra(format!("q({n})"), n, n, &q_theta(n), frame)
            }
        }
    }
}

impl LieSuperalgebra {
    /// Realization matrix of basis vector `i`, or the zero matrix.
    pub fn matrix(&self, i: usize) -> Option<&Matrix<Rational>> {
        self.realization.as_ref().map(|r| &r.matrices[i])
    }

    /// Coordinates of a matrix in the realization, if it lies in the span.
    pub fn coords_of_matrix(&self, x: &Matrix<Rational>) -> Option<Vec<Rational>> {
        let r = self.realization.as_ref()?;
        let big = r.even_dim + r.odd_dim;
        let d = self.dim();
        let cols: Vec<Vec<Rational>> = r
            .matrices
            .iter()
            .map(|mm| (0..big * big).map(|p| mm[(p / big, p % big)].clone()).collect())
            .collect();
        let a = Matrix::from_cols(big * big, &cols);
        let b: Vec<Rational> = (0..big * big).map(|p| x[(p / big, p % big)].clone()).collect();
        let sol = a.solve(&b)?;
        debug_assert_eq!(sol.len(), d);
        Some(sol)
    }

    /// Matrix of `sum c_i x_i` in the realization.
    pub fn matrix_of(&self, c: &[Rational]) -> Option<Matrix<Rational>> {
        let r = self.realization.as_ref()?;
        let big = r.even_dim + r.odd_dim;
        let mut acc = Matrix::zeros(big, big);
        for (k, ck) in c.iter().enumerate() {
            if !ck.is_zero() {
                acc = acc.add(&r.matrices[k].scale(ck));
            }
        }
        Some(acc)
    }
}
