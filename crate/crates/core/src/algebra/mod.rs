//! Lie superalgebras given by structure constants in a homogeneous weight basis.

mod cartan;
mod families;
mod json;

pub use cartan::{cartan_data, root_datum, CartanData, Positivity, RootDatum};
pub use families::{construct, fmt_weight, osp_form, osp_theta, p_theta, q_theta, supertranspose, Family};
pub use json::{from_json, to_json, AlgebraDoc};

use crate::error::{Error, Result};
use crate::linalg::{koszul, Matrix, Parity, Subspace, SuperVectorSpace};
use crate::scalar::{as_small_int, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Weight of a basis vector: integer coordinates against a fixed frame.
pub type Weight = Vec<i64>;

/// Sparse bracket of two basis vectors: `(k, c)` pairs, sorted by `k`.
pub type SparseVec = Vec<(usize, Rational)>;

/// Matrices of the basis elements in a defining representation of dimension `(m|n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Realization {
    pub even_dim: usize,
    pub odd_dim: usize,
    pub matrices: Vec<Matrix<Rational>>,
}

impl Realization {
    pub fn parity_of_index(&self, i: usize) -> Parity {
        if i < self.even_dim {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieSuperalgebra {
    pub name: String,
    pub space: SuperVectorSpace,
    bracket: Vec<SparseVec>,
    /// Basis indices spanning h0, the Cartan subalgebra of the even part.
    pub cartan: Vec<usize>,
    /// Eigenvalues of ad(h0 basis) on each basis vector.
    pub weights: Vec<Weight>,
    /// Names of the frame coordinates (`e1`, `d1`, ...).
    pub frame_labels: Vec<String>,
    /// Weight of each basis vector in frame (epsilon/delta) coordinates.
    pub frame_weights: Vec<Weight>,
    pub realization: Option<Realization>,
}

pub type Algebra = Arc<LieSuperalgebra>;

impl LieSuperalgebra {
    /// Assembles an algebra from a dense bracket table and checks the basis is a weight basis.
    pub fn from_table(
        name: String,
        space: SuperVectorSpace,
        bracket: Vec<SparseVec>,
        cartan: Vec<usize>,
        frame_labels: Vec<String>,
        frame_weights: Option<Vec<Weight>>,
        realization: Option<Realization>,
    ) -> Result<Self> {
        let d = space.dim();
        assert_eq!(bracket.len(), d * d);
        let mut g = LieSuperalgebra {
            name,
            space,
            bracket,
            cartan,
            weights: Vec::new(),
            frame_labels,
            frame_weights: Vec::new(),
            realization,
        };
        g.weights = g.compute_weights()?;
        g.frame_weights = frame_weights.unwrap_or_else(|| g.weights.clone());
        Ok(g)
    }

    fn compute_weights(&self) -> Result<Vec<Weight>> {
        let mut out = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            let mut w = Vec::with_capacity(self.cartan.len());
            for &h in &self.cartan {
                let br = self.bracket_basis(h, k);
                let ev = match br {
                    [] => Rational::zero(),
                    [(j, c)] if *j == k => c.clone(),
                    _ => {
                        return Err(Error::Construction(format!(
                            "{}: basis vector {} is not an h0 weight vector",
                            self.name, self.space.labels[k]
                        )))
                    }
                };
                w.push(as_small_int(&ev).ok_or_else(|| {
                    Error::Construction(format!("{}: non-integral weight on {}", self.name, self.space.labels[k]))
                })?);
            }
            out.push(w);
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn sdim(&self) -> (usize, usize) {
        self.space.sdim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.space.parities[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.space.labels[i]
    }

    pub fn even_indices(&self) -> Vec<usize> {
        self.space.indices(Parity::Even)
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        self.space.indices(Parity::Odd)
    }

    pub fn is_purely_even(&self) -> bool {
        self.space.odd_dim() == 0
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.bracket[i * self.dim() + j]
    }

    /// Nonzero structure constants `(i, j, k, c)` with `[x_i, x_j] = sum c x_k`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Rational)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.bracket_basis(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    /// Matrix of ad(x_i): column j holds `[x_i, x_j]`.
    pub fn ad(&self, i: usize) -> Matrix<Rational> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            for (k, c) in self.bracket_basis(i, j) {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    pub fn ad_vec(&self, x: &[Rational]) -> Matrix<Rational> {
        let d = self.dim();
        let mut m: Matrix<Rational> = Matrix::zeros(d, d);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..d {
                for (k, c) in self.bracket_basis(i, j) {
                    let v = m[(*k, j)].clone() + a * c;
                    m[(*k, j)] = v;
                }
            }
        }
        m
    }

    /// First basis pair violating super antisymmetry, if any.
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in i..d {
                let s = Rational::from_integer(koszul(self.parity(i), self.parity(j)).into());
                let a = self.bracket(&self.basis_vector(i), &self.basis_vector(j));
                let b = self.bracket(&self.basis_vector(j), &self.basis_vector(i));
                if a.iter().zip(&b).any(|(x, y)| x + &s * y != Rational::zero()) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First basis pair whose bracket has the wrong parity.
    pub fn parity_violation(&self) -> Option<(usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let p = self.parity(i).add(self.parity(j));
                if self.bracket_basis(i, j).iter().any(|(k, _)| self.parity(*k) != p) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First basis triple violating `[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]`.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        let sparse_apply = |left: usize, v: &[(usize, Rational)], right_side: bool| -> Vec<Rational> {
            let mut out = vec![Rational::zero(); d];
            for (k, c) in v {
                let br = if right_side { self.bracket_basis(*k, left) } else { self.bracket_basis(left, *k) };
                for (l, e) in br {
                    out[*l] += c * e;
                }
            }
            out
        };
        for x in 0..d {
            for y in 0..d {
                let xy = self.bracket_basis(x, y);
                let s = koszul(self.parity(x), self.parity(y));
                for z in 0..d {
                    let lhs = sparse_apply(x, self.bracket_basis(y, z), false);
                    let t1 = sparse_apply(z, xy, true);
                    let t2 = sparse_apply(y, self.bracket_basis(x, z), false);
                    let ok = (0..d).all(|k| {
                        let r = if s > 0 { &t1[k] + &t2[k] } else { &t1[k] - &t2[k] };
                        lhs[k] == r
                    });
                    if !ok {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Span of the given basis indices, as coordinate vectors.
    pub fn coordinate_span(&self, idx: &[usize]) -> Subspace<Rational> {
        Subspace::spanned_by(self.dim(), &idx.iter().map(|&i| self.basis_vector(i)).collect::<Vec<_>>())
    }

    /// Span of all brackets between two spanning sets.
    pub fn bracket_span(&self, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Subspace<Rational> {
        let mut s = Subspace::new(self.dim());
        for x in a {
            for y in b {
                let v = self.bracket(x, y);
                if v.iter().any(|c| !c.is_zero()) {
                    s.insert(&v);
                }
            }
        }
        s
    }

    /// First pair of spanning vectors of `sub` whose bracket leaves `sub`.
    pub fn closure_violation(&self, sub: &[Vec<Rational>]) -> Option<(usize, usize, Vec<Rational>)> {
        let s = Subspace::spanned_by(self.dim(), sub);
        for (i, x) in sub.iter().enumerate() {
            for (j, y) in sub.iter().enumerate().skip(i) {
                let v = self.bracket(x, y);
                if !s.contains(&v) {
                    return Some((i, j, v));
                }
            }
        }
        None
    }

    /// The even part as a purely even algebra, with the index map into `self`.
    pub fn even_part(&self) -> (LieSuperalgebra, Vec<usize>) {
        let idx = self.even_indices();
        let pos = |k: usize| idx.iter().position(|&x| x == k);
        let d0 = idx.len();
        let mut br = vec![Vec::new(); d0 * d0];
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                br[a * d0 + b] =
                    self.bracket_basis(i, j).iter().map(|(k, c)| (pos(*k).expect("even bracket"), c.clone())).collect();
            }
        }
        let space = SuperVectorSpace::new(
            idx.iter().map(|&i| self.space.labels[i].clone()).collect(),
            vec![Parity::Even; d0],
        );
        let cartan = self.cartan.iter().map(|&h| pos(h).unwrap()).collect();
        let fw = idx.iter().map(|&i| self.frame_weights[i].clone()).collect();
        let realization = self.realization.as_ref().map(|r| Realization {
            even_dim: r.even_dim,
            odd_dim: r.odd_dim,
            matrices: idx.iter().map(|&i| r.matrices[i].clone()).collect(),
        });
        let g0 = LieSuperalgebra::from_table(
            format!("{}_0", self.name),
            space,
            br,
            cartan,
            self.frame_labels.clone(),
            Some(fw),
            realization,
        )
        .expect("even part of a weight basis is a weight basis");
        (g0, idx)
    }
}

/// The associated graded algebra: same basis, odd-odd brackets set to zero.
pub fn associated_graded(g: &LieSuperalgebra) -> LieSuperalgebra {
    let d = g.dim();
    let mut br = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            if g.parity(i).is_odd() && g.parity(j).is_odd() {
                br.push(Vec::new());
            } else {
                br.push(g.bracket_basis(i, j).to_vec());
            }
        }
    }
    LieSuperalgebra::from_table(
        format!("gr({})", g.name),
        g.space.clone(),
        br,
        g.cartan.clone(),
        g.frame_labels.clone(),
        Some(g.frame_weights.clone()),
        None,
    )
    .expect("gr keeps the weight basis")
}

/// Index maps of the summands inside a direct sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumEmbedding {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

/// `g1 + g2` with block-diagonal brackets; even basis vectors of both come first.
pub fn direct_sum(g1: &LieSuperalgebra, g2: &LieSuperalgebra) -> (LieSuperalgebra, SumEmbedding) {
    let (e1, o1) = (g1.even_indices(), g1.odd_indices());
    let (e2, o2) = (g2.even_indices(), g2.odd_indices());
    let mut first = vec![0; g1.dim()];
    let mut second = vec![0; g2.dim()];
    let mut pos = 0;
    for &i in &e1 {
        first[i] = pos;
        pos += 1;
    }
    for &i in &e2 {
        second[i] = pos;
        pos += 1;
    }
    for &i in &o1 {
        first[i] = pos;
        pos += 1;
    }
    for &i in &o2 {
        second[i] = pos;
        pos += 1;
    }
    let d = pos;
    let mut labels = vec![String::new(); d];
    let mut parities = vec![Parity::Even; d];
    let f1 = g1.frame_labels.len();
    let f2 = g2.frame_labels.len();
    let mut fw = vec![vec![0; f1 + f2]; d];
    for i in 0..g1.dim() {
        labels[first[i]] = format!("{}#1", g1.label(i));
        parities[first[i]] = g1.parity(i);
        fw[first[i]][..f1].copy_from_slice(&g1.frame_weights[i]);
    }
    for i in 0..g2.dim() {
        labels[second[i]] = format!("{}#2", g2.label(i));
        parities[second[i]] = g2.parity(i);
        fw[second[i]][f1..].copy_from_slice(&g2.frame_weights[i]);
    }
    let mut br = vec![Vec::new(); d * d];
    for (g, map) in [(g1, &first), (g2, &second)] {
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let mut v: SparseVec = g.bracket_basis(i, j).iter().map(|(k, c)| (map[*k], c.clone())).collect();
                v.sort_by_key(|x| x.0);
                br[map[i] * d + map[j]] = v;
            }
        }
    }
    let mut cartan: Vec<usize> = g1.cartan.iter().map(|&h| first[h]).collect();
    cartan.extend(g2.cartan.iter().map(|&h| second[h]));
    let mut frame_labels: Vec<String> = g1.frame_labels.iter().map(|l| format!("{l}#1")).collect();
    frame_labels.extend(g2.frame_labels.iter().map(|l| format!("{l}#2")));
    let g = LieSuperalgebra::from_table(
        format!("{}+{}", g1.name, g2.name),
        SuperVectorSpace::new(labels, parities),
        br,
        cartan,
        frame_labels,
        Some(fw),
        None,
    )
    .expect("direct sum of weight bases");
    (g, SumEmbedding { first, second })
}

/// Checks that the linear map `f` (columns = images of basis vectors of `src`)
/// intertwines brackets: `f[x,y] = [fx, fy]`. Returns the first failing pair.
pub fn homomorphism_violation(
    src: &LieSuperalgebra,
    dst: &LieSuperalgebra,
    f: &Matrix<Rational>,
) -> Option<(usize, usize)> {
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let lhs = f.mul_vec(&src.bracket(&src.basis_vector(i), &src.basis_vector(j)));
            let rhs = dst.bracket(&f.col(i), &f.col(j));
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

/// Builds an algebra whose basis is given as matrices in gl(m|n). Even matrices must
/// be listed before odd ones and the first `cartan_count` must span h0.
pub fn from_matrices(
    name: String,
    m: usize,
    n: usize,
    basis: Vec<(String, Matrix<Rational>)>,
    cartan_count: usize,
    frame_labels: Vec<String>,
    diagonal_frame: bool,
) -> Result<LieSuperalgebra> {
    let big = m + n;
    let d = basis.len();
    let par = |x: &Matrix<Rational>| -> Option<Parity> {
        let mut even = false;
        let mut odd = false;
        for (i, j, _) in x.nonzeros() {
            if (i < m) == (j < m) {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (true, true) => None,
            (_, true) => Some(Parity::Odd),
            _ => Some(Parity::Even),
        }
    };
    let mut parities = Vec::with_capacity(d);
    for (l, x) in &basis {
        parities.push(par(x).ok_or_else(|| Error::Construction(format!("{name}: {l} is not homogeneous")))?);
    }
    if parities.windows(2).any(|w| w[0] == Parity::Odd && w[1] == Parity::Even) {
        return Err(Error::Construction(format!("{name}: even basis vectors must precede odd ones")));
    }
    // Coordinates: row-reduce [A^T | I]; coords(X) = E^T vec(X)[pivots].
    let mut at = Matrix::zeros(d, big * big + d);
    for (r, (_, x)) in basis.iter().enumerate() {
        for (i, j, v) in x.nonzeros() {
            at[(r, i * big + j)] = v;
        }
        at[(r, big * big + r)] = Rational::one();
    }
    let ech = at.echelon();
    let piv: Vec<usize> = ech.pivots.iter().copied().filter(|&p| p < big * big).collect();
    if piv.len() != d {
        return Err(Error::Construction(format!("{name}: basis matrices are linearly dependent")));
    }
    let e: Vec<Vec<Rational>> =
        (0..d).map(|r| (0..d).map(|c| ech.reduced[(r, big * big + c)].clone()).collect()).collect();
    let coords = |x: &Matrix<Rational>| -> Option<SparseVec> {
        let mut c = vec![Rational::zero(); d];
        for (r, &p) in piv.iter().enumerate() {
            let v = &x[(p / big, p % big)];
            if !v.is_zero() {
                for k in 0..d {
                    if !e[r][k].is_zero() {
                        c[k] += v * &e[r][k];
                    }
                }
            }
        }
        let mut recon = Matrix::zeros(big, big);
        for (k, ck) in c.iter().enumerate() {
            if !ck.is_zero() {
                recon = recon.add(&basis[k].1.scale(ck));
            }
        }
        (recon == *x).then(|| c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
    };
    let mut br = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (&basis[i].1, &basis[j].1);
            let xy = x.mul(y);
            let yx = y.mul(x);
            let s = if parities[i].is_odd() && parities[j].is_odd() { xy.add(&yx) } else { xy.sub(&yx) };
            br.push(coords(&s).ok_or_else(|| {
                Error::Construction(format!("{name}: [{}, {}] leaves the span", basis[i].0, basis[j].0))
            })?);
        }
    }
    let frame_weights = if diagonal_frame {
        let mut fw = Vec::with_capacity(d);
        for (l, x) in &basis {
            let mut w = vec![0i64; big];
            if let Some((i, j, _)) = x.nonzeros().into_iter().find(|(i, j, _)| i != j) {
                w[i] += 1;
                w[j] -= 1;
            } else if !x.nonzeros().iter().all(|(i, j, _)| i == j) {
                return Err(Error::Construction(format!("{name}: {l} is not a torus weight vector")));
            }
            fw.push(w);
        }
        Some(fw)
    } else {
        None
    };
    let labels: Vec<String> = basis.iter().map(|(l, _)| l.clone()).collect();
    let matrices = basis.into_iter().map(|(_, x)| x).collect();
    LieSuperalgebra::from_table(
        name,
        SuperVectorSpace::new(labels, parities),
        br,
        (0..cartan_count).collect(),
        frame_labels,
        frame_weights,
        Some(Realization { even_dim: m, odd_dim: n, matrices }),
    )
}
