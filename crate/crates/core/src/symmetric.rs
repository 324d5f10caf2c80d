//! Involutions, supersymmetric pairs and the Iwasawa decomposition test.

use crate::algebra::{
    construct, direct_sum, homomorphism_violation, root_datum, Family, LieSuperalgebra, Positivity, SparseVec,
};
use crate::error::{Error, Result};
use crate::hyperborel::{extensions_containing, verify_hyperborel, Hyperborel};
use crate::linalg::{rational_spectrum, Matrix, Parity, Subspace, SuperVectorSpace};
use crate::orbit::{homogeneous_sphericity_test, HomogeneousReport, HomogeneousSpace};
use crate::scalar::{fmt_q, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// The implemented involutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvolutionKind {
    /// `delta`: +1 on g0, -1 on g1.
    Grading,
    /// gl(m|n) with fixed points gl(r|s) x gl(m-r|n-s).
    GlBlock { r: usize, s: usize },
    /// gl(m|n), n even, with fixed points osp(m|n).
    GlOsp,
    /// gl(n|n) with fixed points p(n).
    GlP,
    /// gl(n|n) with fixed points q(n).
    GlQ,
    /// osp(m|2n) with fixed points osp(r|2s) x osp(m-r|2n-2s).
    OspBlock { r: usize, s: usize },
    /// osp(2m|2n) with fixed points gl(m|n).
    OspGl,
    /// p(n) with fixed points p(r) x p(n-r).
    PBlock { r: usize },
    /// p(n) with fixed points gl(r|n-r).
    PGl { r: usize },
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvolutionKind::Grading => write!(f, "grading"),
            InvolutionKind::GlBlock { r, s } => write!(f, "gl-block(r={r},s={s})"),
            InvolutionKind::GlOsp => write!(f, "gl-osp"),
            InvolutionKind::GlP => write!(f, "gl-p"),
            InvolutionKind::GlQ => write!(f, "gl-q"),
            InvolutionKind::OspBlock { r, s } => write!(f, "osp-block(r={r},s={s})"),
            InvolutionKind::OspGl => write!(f, "osp-gl"),
            InvolutionKind::PBlock { r } => write!(f, "p-block(r={r})"),
            InvolutionKind::PGl { r } => write!(f, "p-gl(r={r})"),
        }
    }
}

/// An involutive automorphism, as a matrix on the basis of `algebra`.
#[derive(Clone, Debug)]
pub struct Involution {
    pub algebra: LieSuperalgebra,
    pub name: String,
    pub matrix: Matrix<Rational>,
}

impl Involution {
    /// Checks `theta^2 = 1`, parity preservation and the automorphism property.
    pub fn new(algebra: LieSuperalgebra, name: String, matrix: Matrix<Rational>) -> Result<Self> {
        let d = algebra.dim();
        if matrix.mul(&matrix) != Matrix::identity(d) {
            return Err(Error::Construction(format!("{name}: theta does not square to the identity")));
        }
        for (r, c, _) in matrix.nonzeros() {
            if algebra.parity(r) != algebra.parity(c) {
                return Err(Error::Construction(format!("{name}: theta does not preserve parity")));
            }
        }
        if let Some((i, j)) = homomorphism_violation(&algebra, &algebra, &matrix) {
            return Err(Error::Construction(format!(
                "{name}: theta is not an automorphism on [{}, {}]",
                algebra.label(i),
                algebra.label(j)
            )));
        }
        Ok(Involution { algebra, name, matrix })
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(x)
    }
}

fn sign_vec(plus: usize, minus: usize) -> Vec<i64> {
    let mut v = vec![1; plus];
    v.extend(vec![-1; minus]);
    v
}

/// Conjugation by a matrix `dm` with `dm^2 = 1` (up to the given inverse).
fn conj(dm: Matrix<Rational>) -> impl Fn(&Matrix<Rational>) -> Matrix<Rational> {
    move |x| dm.mul(x).mul(&dm)
}

fn diag(signs: &[i64]) -> Matrix<Rational> {
    let mut m = Matrix::zeros(signs.len(), signs.len());
    for (i, &s) in signs.iter().enumerate() {
        m[(i, i)] = Rational::from_integer(s.into());
    }
    m
}

fn size_err(family: &str, constraint: &str) -> Error {
    Error::Size { family: family.into(), constraint: constraint.into() }
}

/// Isometric involution of the orthogonal form (antidiagonal on `m` coordinates)
/// with `r` eigenvalues +1. As many hyperbolic pairs as possible are swapped,
/// so that p contains diagonal elements; the rest get a common sign.
fn orthogonal_involution(m: usize, r: usize) -> Matrix<Rational> {
    let swaps = r.min(m - r);
    let rest = if r >= m - r { Rational::one() } else { -Rational::one() };
    let mut d = Matrix::zeros(m, m);
    for i in 0..m.div_ceil(2) {
        let j = m - 1 - i;
        if i < swaps {
            d[(i, j)] = Rational::one();
            d[(j, i)] = Rational::one();
        } else {
            d[(i, i)] = rest.clone();
            d[(j, j)] = rest.clone();
        }
    }
    d
}

/// Symplectic involution on `2h` coordinates (pairs `j, j + h`) whose +1
/// eigenspace has rank `2s`; pairs are swapped two at a time where possible.
fn symplectic_involution(h: usize, s: usize) -> Matrix<Rational> {
    let swaps = s.min(h - s);
    let rest = if s >= h - s { Rational::one() } else { -Rational::one() };
    let mut d = Matrix::zeros(2 * h, 2 * h);
    for j in 0..h {
        if j < 2 * swaps {
            let k = if j < swaps { j + swaps } else { j - swaps };
            d[(j, k)] = Rational::one();
            d[(j + h, k + h)] = Rational::one();
        } else {
            d[(j, j)] = rest.clone();
            d[(j + h, j + h)] = rest.clone();
        }
    }
    d
}

fn block_diag(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let (p, q) = (a.rows(), b.rows());
    let mut m = Matrix::zeros(p + q, p + q);
    for (i, j, v) in a.nonzeros() {
        m[(i, j)] = v;
    }
    for (i, j, v) in b.nonzeros() {
        m[(p + i, p + j)] = v;
    }
    m
}

/// Builds `(g, theta)` for a row of the table of symmetric pairs. `m, n` are
/// the parameters of g as in [`construct`].
pub fn standard_involution(family: Family, m: usize, n: usize, kind: &InvolutionKind) -> Result<Involution> {
    let g = construct(family, m, n)?;
    let name = format!("({}, {})", g.name, kind);
    if *kind == InvolutionKind::Grading {
        let signs: Vec<i64> = (0..g.dim()).map(|i| if g.parity(i).is_odd() { -1 } else { 1 }).collect();
        return Involution::new(g, name, diag(&signs));
    }
    let r = g.realization.as_ref().ok_or_else(|| Error::Invalid(format!("{} has no realization", g.name)))?;
    let (em, om) = (r.even_dim, r.odd_dim);
    let theta: Box<dyn Fn(&Matrix<Rational>) -> Matrix<Rational>> = match (family, kind) {
        (Family::Gl, InvolutionKind::GlBlock { r, s }) => {
            if *r > em || *s > om {
                return Err(size_err("gl block pair", "needs r <= m and s <= n"));
            }
            let mut signs = sign_vec(*r, em - r);
            signs.extend(sign_vec(*s, om - s));
            Box::new(conj(diag(&signs)))
        }
        (Family::Gl, InvolutionKind::GlOsp) => {
            if om % 2 == 1 || em + om < 2 {
                return Err(size_err("gl-osp pair", "needs even odd dimension and m + n >= 2"));
            }
            Box::new(crate::algebra::osp_theta(em, om))
        }
        (Family::Gl, InvolutionKind::GlP) => {
            if em != om || em == 0 {
                return Err(size_err("gl-p pair", "needs gl(n|n) with n >= 1"));
            }
            Box::new(crate::algebra::p_theta(em))
        }
        (Family::Gl, InvolutionKind::GlQ) => {
            if em != om || em == 0 {
                return Err(size_err("gl-q pair", "needs gl(n|n) with n >= 1"));
            }
            Box::new(crate::algebra::q_theta(em))
        }
        (Family::Osp, InvolutionKind::OspBlock { r, s }) => {
            if *r > em || 2 * s > om {
                return Err(size_err("osp block pair", "needs r <= m and 2s <= 2n"));
            }
            Box::new(conj(block_diag(&orthogonal_involution(em, *r), &symplectic_involution(om / 2, *s))))
        }
        (Family::Osp, InvolutionKind::OspGl) => {
            if em % 2 == 1 {
                return Err(size_err("osp-gl pair", "needs osp(2m|2n)"));
            }
            let mut signs = sign_vec(em / 2, em / 2);
            signs.extend(sign_vec(om / 2, om / 2));
            Box::new(conj(diag(&signs)))
        }
        (Family::P, InvolutionKind::PBlock { r }) => {
            if *r > em {
                return Err(size_err("p block pair", "needs r <= n"));
            }
            let mut signs = sign_vec(*r, em - r);
            signs.extend(sign_vec(*r, em - r));
            Box::new(conj(diag(&signs)))
        }
        (Family::P, InvolutionKind::PGl { r }) => {
            if *r > em {
                return Err(size_err("p-gl pair", "needs r <= n"));
            }
            let mut signs = sign_vec(*r, em - r);
            signs.extend(sign_vec(*r, em - r).into_iter().map(|x| -x));
            Box::new(conj(diag(&signs)))
        }
        _ => return Err(Error::Invalid(format!("involution {kind} does not apply to {}", g.name))),
    };
    let d = g.dim();
    let mut mat = Matrix::zeros(d, d);
    for i in 0..d {
        let img = theta(g.matrix(i).expect("realized"));
        let c = g
            .coords_of_matrix(&img)
            .ok_or_else(|| Error::Construction(format!("{name}: theta moves {} out of the algebra", g.label(i))))?;
        for (k, v) in c.into_iter().enumerate() {
            mat[(k, i)] = v;
        }
    }
    Involution::new(g, name, mat)
}

/// The swap of the two summands of `g + g`.
pub fn swap_involution(g: &LieSuperalgebra) -> Result<Involution> {
    let (s, emb) = direct_sum(g, g);
    let mut sw = Matrix::zeros(s.dim(), s.dim());
    for i in 0..g.dim() {
        sw[(emb.first[i], emb.second[i])] = Rational::one();
        sw[(emb.second[i], emb.first[i])] = Rational::one();
    }
    Involution::new(s, format!("({}+{}, diagonal)", g.name, g.name), sw)
}

/// Restricted root with its even and odd multiplicities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestrictedRoot {
    pub weight: Vec<String>,
    pub multiplicity: (usize, usize),
    pub positive: bool,
}

#[derive(Clone, Debug)]
pub struct SymmetricPair {
    pub theta: Involution,
    pub k: Vec<Vec<Rational>>,
    pub p: Vec<Vec<Rational>>,
    /// Maximal toral subalgebra of p0.
    pub a: Vec<Vec<Rational>>,
    /// Joint eigenspaces of ad(a) on g, keyed by the eigenvalues on the basis of a.
    pub spaces: BTreeMap<Vec<Rational>, Vec<Vec<Rational>>>,
    pub a_maximal_verified: bool,
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn vparity(g: &LieSuperalgebra, v: &[Rational]) -> Parity {
    if v.iter().enumerate().any(|(i, c)| !c.is_zero() && g.parity(i).is_odd()) {
        Parity::Odd
    } else {
        Parity::Even
    }
}

impl SymmetricPair {
    pub fn new(theta: Involution) -> Result<Self> {
        let g = &theta.algebra;
        let d = g.dim();
        let half = Rational::new(1.into(), 2.into());
        let mut ks = Subspace::new(d);
        let mut ps = Subspace::new(d);
        let mut k = Vec::new();
        let mut p = Vec::new();
        for i in 0..d {
            let e = g.basis_vector(i);
            let t = theta.apply(&e);
            let plus: Vec<Rational> = e.iter().zip(&t).map(|(a, b)| (a + b) * &half).collect();
            let minus: Vec<Rational> = e.iter().zip(&t).map(|(a, b)| (a - b) * &half).collect();
            if !is_zero_vec(&plus) && ks.insert(&plus) {
                k.push(plus);
            }
            if !is_zero_vec(&minus) && ps.insert(&minus) {
                p.push(minus);
            }
        }
        let (a, verified) = maximal_toral(g, &p)?;
        let spaces = joint_eigenspaces(g, &a)?;
        Ok(SymmetricPair { theta, k, p, a, spaces, a_maximal_verified: verified })
    }

    pub fn algebra(&self) -> &LieSuperalgebra {
        &self.theta.algebra
    }

    pub fn k_sdim(&self) -> (usize, usize) {
        sdim_of(self.algebra(), &self.k)
    }

    pub fn p_sdim(&self) -> (usize, usize) {
        sdim_of(self.algebra(), &self.p)
    }

    /// First failure of `[k,k] in k`, `[k,p] in p`, `[p,p] in k`.
    pub fn grading_violation(&self) -> Option<String> {
        let g = self.algebra();
        let ks = Subspace::spanned_by(g.dim(), &self.k);
        let ps = Subspace::spanned_by(g.dim(), &self.p);
        for (x_name, xs, y_name, ys, target, t_name) in [
            ("k", &self.k, "k", &self.k, &ks, "k"),
            ("k", &self.k, "p", &self.p, &ps, "p"),
            ("p", &self.p, "p", &self.p, &ks, "k"),
        ] {
            for x in xs.iter() {
                for y in ys.iter() {
                    if !target.contains(&g.bracket(x, y)) {
                        return Some(format!("[{x_name}, {y_name}] leaves {t_name}"));
                    }
                }
            }
        }
        None
    }

    pub fn restricted_roots(&self) -> Vec<RestrictedRoot> {
        let g = self.algebra();
        self.spaces
            .iter()
            .filter(|(w, _)| !is_zero_vec(w))
            .map(|(w, vs)| RestrictedRoot {
                weight: w.iter().map(fmt_q).collect(),
                multiplicity: sdim_of(g, vs),
                positive: lex_positive(w),
            })
            .collect()
    }

    /// `C(a)`: the zero weight space.
    pub fn centralizer(&self) -> Vec<Vec<Rational>> {
        let r = self.a.len();
        self.spaces.get(&vec![Rational::zero(); r]).cloned().unwrap_or_default()
    }
}

fn sdim_of(g: &LieSuperalgebra, vs: &[Vec<Rational>]) -> (usize, usize) {
    let odd = vs.iter().filter(|v| vparity(g, v).is_odd()).count();
    (vs.len() - odd, odd)
}

fn lex_positive(w: &[Rational]) -> bool {
    w.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive())
}

fn commute(g: &LieSuperalgebra, x: &[Rational], y: &[Rational]) -> bool {
    is_zero_vec(&g.bracket(x, y))
}

fn rationally_semisimple(g: &LieSuperalgebra, x: &[Rational]) -> bool {
    rational_spectrum(&g.ad_vec(x)).is_some()
}

/// Greedy extension of `start` inside `pool` by elements that commute with the
/// current span (and with `fixed`) and are ad-semisimple with rational spectrum.
fn greedy_toral(
    g: &LieSuperalgebra,
    fixed: &[Vec<Rational>],
    start: Vec<Vec<Rational>>,
    pool: &[Vec<Rational>],
) -> Vec<Vec<Rational>> {
    let mut a = start;
    let mut span = Subspace::spanned_by(g.dim(), &a);
    let mut cands: Vec<Vec<Rational>> = pool.to_vec();
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            cands.push(pool[i].iter().zip(&pool[j]).map(|(x, y)| x + y).collect());
            cands.push(pool[i].iter().zip(&pool[j]).map(|(x, y)| x - y).collect());
        }
    }
    for c in cands {
        if span.contains(&c) {
            continue;
        }
        if !a.iter().chain(fixed).all(|y| commute(g, &c, y)) {
            continue;
        }
        if rationally_semisimple(g, &c) {
            span.insert(&c);
            a.push(c);
        }
    }
    a
}

/// Elements of `space` commuting with every element of `with`.
fn commutant(g: &LieSuperalgebra, space: &[Vec<Rational>], with: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if space.is_empty() {
        return vec![];
    }
    if with.is_empty() {
        return space.to_vec();
    }
    let d = g.dim();
    // Columns: [y_j, a_i] for each basis element y_j of space, stacked over a.
    let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::zero(); space.len()]; d * with.len()];
    for (j, y) in space.iter().enumerate() {
        for (i, a) in with.iter().enumerate() {
            for (r, v) in g.bracket(y, a).into_iter().enumerate() {
                rows[i * d + r][j] = v;
            }
        }
    }
    Matrix::from_rows(rows)
        .kernel_basis()
        .into_iter()
        .map(|c| {
            let mut v = vec![Rational::zero(); d];
            for (j, cj) in c.iter().enumerate() {
                if !cj.is_zero() {
                    for (t, x) in space[j].iter().enumerate() {
                        v[t] += cj * x;
                    }
                }
            }
            v
        })
        .collect()
}

/// A maximal toral subalgebra of `p0`: greedy over p0 basis vectors and their
/// pairwise sums and differences, repeated inside the commutant until the
/// commutant of `a` in p0 is `a` itself. Returns `a` and whether that final
/// check succeeded.
pub fn maximal_toral(g: &LieSuperalgebra, p: &[Vec<Rational>]) -> Result<(Vec<Vec<Rational>>, bool)> {
    let p0: Vec<Vec<Rational>> = p.iter().filter(|v| !vparity(g, v).is_odd()).cloned().collect();
    toral_in(g, &p0, &[])
}

fn toral_in(g: &LieSuperalgebra, space: &[Vec<Rational>], fixed: &[Vec<Rational>]) -> Result<(Vec<Vec<Rational>>, bool)> {
    let mut a = greedy_toral(g, fixed, vec![], space);
    for _ in 0..8 {
        let mut with = a.clone();
        with.extend(fixed.iter().cloned());
        let comm = commutant(g, space, &with);
        if comm.len() == a.len() {
            return Ok((a, true));
        }
        let before = a.len();
        a = greedy_toral(g, fixed, a, &comm);
        if a.len() == before {
            return Ok((a, false));
        }
    }
    Ok((a, false))
}

/// Simultaneous eigenspaces of the commuting operators `ad(a_i)` on g.
fn joint_eigenspaces(
    g: &LieSuperalgebra,
    a: &[Vec<Rational>],
) -> Result<BTreeMap<Vec<Rational>, Vec<Vec<Rational>>>> {
    let d = g.dim();
    let mut parts: Vec<(Vec<Rational>, Vec<Vec<Rational>>)> =
        vec![(vec![], (0..d).map(|i| g.basis_vector(i)).collect())];
    for x in a {
        let ad = g.ad_vec(x);
        let spec = rational_spectrum(&ad)
            .ok_or_else(|| Error::Invalid("toral element without rational spectrum".into()))?;
        let mut next = Vec::new();
        for (w, basis) in parts {
            for lam in &spec {
                let mut shifted = ad.clone();
                for i in 0..d {
                    shifted[(i, i)] = &shifted[(i, i)] - lam;
                }
                // Kernel of (ad - lam) restricted to span(basis), split by parity.
                let imgs: Vec<Vec<Rational>> = basis.iter().map(|b| shifted.mul_vec(b)).collect();
                let ker = Matrix::from_cols(d, &imgs).kernel_basis();
                let mut vs = Vec::new();
                for c in ker {
                    let mut v = vec![Rational::zero(); d];
                    for (j, cj) in c.iter().enumerate() {
                        if !cj.is_zero() {
                            for (t, y) in basis[j].iter().enumerate() {
                                v[t] += cj * y;
                            }
                        }
                    }
                    vs.push(v);
                }
                if !vs.is_empty() {
                    let mut w2 = w.clone();
                    w2.push(lam.clone());
                    next.push((w2, split_parity(g, vs)));
                }
            }
        }
        parts = next;
    }
    let total: usize = parts.iter().map(|(_, v)| v.len()).sum();
    if total != d {
        return Err(Error::Invalid("ad(a) is not simultaneously diagonalizable".into()));
    }
    Ok(parts.into_iter().collect())
}

/// Rebases a subspace onto parity-homogeneous vectors.
fn split_parity(g: &LieSuperalgebra, vs: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for odd in [false, true] {
        let proj: Vec<Vec<Rational>> = vs
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .map(|(i, c)| if g.parity(i).is_odd() == odd { c.clone() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        let mut s = Subspace::new(g.dim());
        for v in proj {
            if !is_zero_vec(&v) && s.insert(&v) {
                out.push(v);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IwasawaStatus {
    HasIwasawa,
    NoIwasawa,
}

impl fmt::Display for IwasawaStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IwasawaStatus::HasIwasawa => "HAS_IWASAWA",
            IwasawaStatus::NoIwasawa => "NO_IWASAWA",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IwasawaResult {
    pub pair: String,
    pub status: IwasawaStatus,
    pub k_sdim: (usize, usize),
    pub p_sdim: (usize, usize),
    pub a_dim: usize,
    pub centralizer_sdim: (usize, usize),
    /// `C(a) ∩ p`.
    pub cap_sdim: (usize, usize),
    /// A vector of `C(a) ∩ p` outside `a`.
    pub witness: Option<String>,
    pub witness_parity: Option<Parity>,
    /// `n` for the lexicographic positive system, when the decomposition exists.
    pub n_sdim: Option<(usize, usize)>,
    pub restricted_roots: Vec<RestrictedRoot>,
}

pub fn iwasawa_test(pair: &SymmetricPair) -> Result<IwasawaResult> {
    let g = pair.algebra();
    let d = g.dim();
    let cent = pair.centralizer();
    let cs = Subspace::spanned_by(d, &cent);
    let ps = Subspace::spanned_by(d, &pair.p);
    let cap = split_parity(g, cs.intersection(&ps).basis().to_vec());
    let aspace = Subspace::spanned_by(d, &pair.a);
    let witness = cap.iter().find(|v| !aspace.contains(v)).cloned();
    let status = if witness.is_none() { IwasawaStatus::HasIwasawa } else { IwasawaStatus::NoIwasawa };
    let n_sdim = if status == IwasawaStatus::HasIwasawa {
        let n: Vec<Vec<Rational>> =
            pair.spaces.iter().filter(|(w, _)| lex_positive(w)).flat_map(|(_, v)| v.iter().cloned()).collect();
        let nsd = sdim_of(g, &n);
        let ksd = pair.k_sdim();
        let asd = pair.a.len();
        if ksd.0 + asd + nsd.0 != g.sdim().0 || ksd.1 + nsd.1 != g.sdim().1 {
            return Err(Error::Construction(format!("{}: k + a + n has the wrong dimension", pair.theta.name)));
        }
        let mut all = pair.k.clone();
        all.extend(pair.a.iter().cloned());
        all.extend(n.iter().cloned());
        if Subspace::spanned_by(d, &all).dim() != d {
            return Err(Error::Construction(format!("{}: k + a + n is not direct", pair.theta.name)));
        }
        Some(nsd)
    } else {
        None
    };
    Ok(IwasawaResult {
        pair: pair.theta.name.clone(),
        status,
        k_sdim: pair.k_sdim(),
        p_sdim: pair.p_sdim(),
        a_dim: pair.a.len(),
        centralizer_sdim: sdim_of(g, &cent),
        cap_sdim: sdim_of(g, &cap),
        witness_parity: witness.as_ref().map(|w| vparity(g, w)),
        witness: witness.map(|w| crate::orbit::fmt_vec(g, &w)),
        n_sdim,
        restricted_roots: pair.restricted_roots(),
    })
}

/// A hyperborel `b` with `b + k = g`, expressed in an eigenbasis of a Cartan
/// subalgebra `h0 ⊇ a`.
#[derive(Clone, Debug)]
pub struct IwasawaHyperborel {
    /// g rewritten in the eigenbasis; its Cartan is `a` followed by a Cartan of `C_k0(a)`.
    pub algebra: LieSuperalgebra,
    /// Columns: new basis vectors in the original coordinates.
    pub basis_change: Matrix<Rational>,
    pub hyperborel: Hyperborel,
    /// k in the new coordinates.
    pub k: Vec<Vec<Rational>>,
    pub b_plus_k_dim: usize,
    pub attempts: usize,
}

/// Rewrites g in the basis `cols` (h0 basis first, then root vectors, even
/// before odd). The h0 vectors are rescaled so that all weights are integers.
fn rebase(
    g: &LieSuperalgebra,
    h0: &[Vec<Rational>],
    roots: &[(Vec<Rational>, Vec<Vec<Rational>>)],
) -> Result<(LieSuperalgebra, Matrix<Rational>)> {
    let d = g.dim();
    let r = h0.len();
    // Scale each h0 vector by the lcm of the denominators of its eigenvalues.
    let mut scales = vec![BigInt::one(); r];
    for (w, _) in roots {
        for (i, c) in w.iter().enumerate() {
            scales[i] = scales[i].lcm(c.denom());
        }
    }
    let mut cols: Vec<Vec<Rational>> = h0
        .iter()
        .zip(&scales)
        .map(|(v, s)| v.iter().map(|c| c * Rational::from_integer(s.clone())).collect())
        .collect();
    let mut labels: Vec<String> = (1..=r).map(|i| format!("h{i}")).collect();
    let mut parities = vec![Parity::Even; r];
    let mut frame_weights = vec![vec![0i64; r]; r];
    let mut entries: Vec<(Vec<i64>, Vec<Rational>, Parity)> = Vec::new();
    for (w, vs) in roots {
        let iw: Vec<i64> = w
            .iter()
            .zip(&scales)
            .map(|(c, s)| {
                let v = c * Rational::from_integer(s.clone());
                crate::scalar::as_small_int(&v).expect("scaled weights are small integers")
            })
            .collect();
        for v in vs {
            entries.push((iw.clone(), v.clone(), vparity(g, v)));
        }
    }
    entries.sort_by_key(|e| e.2.is_odd());
    let mut counter: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for (w, v, par) in entries {
        let c = counter.entry(w.clone()).or_insert(0);
        *c += 1;
        let base = format!("{}[{}]", if par.is_odd() { "y" } else { "x" }, w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        labels.push(if *c == 1 { base } else { format!("{base}'{c}") });
        parities.push(par);
        frame_weights.push(w);
        cols.push(v);
    }
    if cols.len() != d {
        return Err(Error::Construction("eigenbasis has the wrong size".into()));
    }
    let pm = Matrix::from_cols(d, &cols);
    let inv = pm.inverse().ok_or_else(|| Error::Construction("eigenbasis is singular".into()))?;
    let mut br: Vec<SparseVec> = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let v = inv.mul_vec(&g.bracket(&cols[i], &cols[j]));
            br.push(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
        }
    }
    let frame_labels = (1..=r).map(|i| format!("a{i}")).collect();
    let ng = LieSuperalgebra::from_table(
        format!("{}'", g.name),
        SuperVectorSpace::new(labels, parities),
        br,
        (0..r).collect(),
        frame_labels,
        Some(frame_weights),
        None,
    )?;
    Ok((ng, pm))
}

/// Lexicographic positivity as an integer functional, for weights bounded by `bound`.
fn lex_functional(r: usize, bound: i64) -> Vec<i64> {
    let base = 2 * bound + 1;
    (0..r).map(|k| base.pow((r - 1 - k) as u32)).collect()
}

/// For a pair with an Iwasawa decomposition: extends `a` to a Cartan `h0` by a
/// Cartan of `C_k0(a)`, orders roots lexicographically (a first), and returns
/// a hyperborel containing the positive odd root vectors with `b + k = g`.
pub fn iwasawa_to_hyperborel(pair: &SymmetricPair) -> Result<IwasawaHyperborel> {
    let g = pair.algebra();
    let d = g.dim();
    let k0: Vec<Vec<Rational>> = pair.k.iter().filter(|v| !vparity(g, v).is_odd()).cloned().collect();
    let m0 = commutant(g, &k0, &pair.a);
    let (t, _) = toral_in(g, &m0, &pair.a)?;
    let mut h0 = pair.a.clone();
    h0.extend(t);
    let g0_basis: Vec<Vec<Rational>> = g.even_indices().into_iter().map(|i| g.basis_vector(i)).collect();
    if commutant(g, &g0_basis, &h0).len() != h0.len() {
        return Err(Error::Construction(format!("{}: a + t is not a Cartan subalgebra of g0", pair.theta.name)));
    }
    let spaces = joint_eigenspaces(g, &h0)?;
    let zero = vec![Rational::zero(); h0.len()];
    let hspace = spaces.get(&zero).cloned().unwrap_or_default();
    let hs = sdim_of(g, &hspace);
    if hs.0 != h0.len() {
        return Err(Error::Construction("zero weight space is not h0".into()));
    }
    // Odd part of the zero weight space (absent for Cartan-even g) goes with the roots.
    let mut roots: Vec<(Vec<Rational>, Vec<Vec<Rational>>)> =
        spaces.iter().filter(|(w, _)| **w != zero).map(|(w, v)| (w.clone(), v.clone())).collect();
    let h1: Vec<Vec<Rational>> = hspace.iter().filter(|v| vparity(g, v).is_odd()).cloned().collect();
    if !h1.is_empty() {
        roots.push((zero.clone(), h1));
    }
    let (ng, pm) = rebase(g, &h0, &roots)?;
    let inv = pm.inverse().expect("basis change is invertible");
    let bound = ng.weights.iter().flatten().map(|x| x.abs()).max().unwrap_or(0);
    let positivity = Positivity { functional: lex_functional(h0.len(), bound) };
    let rd = root_datum(&ng, positivity);
    let pos_odd: Vec<usize> = ng.odd_indices().into_iter().filter(|&i| rd.is_positive(&ng, i)).collect();
    let knew: Vec<Vec<Rational>> = pair.k.iter().map(|v| inv.mul_vec(v)).collect();
    let ks = Subspace::spanned_by(d, &knew);
    let candidates = extensions_containing(&ng, &rd, &pos_odd);
    let attempts = candidates.len();
    for b in candidates {
        let mut s = ks.clone();
        for i in b.indices() {
            s.insert(&ng.basis_vector(i));
        }
        if s.dim() == d {
            debug_assert!(verify_hyperborel(&ng, &b).ok);
            return Ok(IwasawaHyperborel {
                algebra: ng,
                basis_change: pm,
                hyperborel: b,
                k: knew,
                b_plus_k_dim: d,
                attempts,
            });
        }
    }
    Err(Error::Retries(attempts))
}

/// `homogeneous_sphericity_test` on G/K over the default hyperborels of g.
pub fn pair_sphericity(pair: &SymmetricPair, seed: u64) -> Result<HomogeneousReport> {
    let g = pair.algebra();
    let x = HomogeneousSpace::new(g, pair.k.clone())?;
    Ok(homogeneous_sphericity_test(&x, &crate::orbit::default_hyperborels(g), seed))
}

/// One instance of a row of the symmetric pair table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCase {
    pub row: String,
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub kind: Option<InvolutionKind>,
    /// Diagonal pair `(g + g, g)` when set.
    pub diagonal: bool,
}

impl PairCase {
    pub fn sizes(&self) -> String {
        let mut s = format!("{}({}|{})", self.family, self.m, self.n);
        match &self.kind {
            Some(InvolutionKind::GlBlock { r, s: t }) | Some(InvolutionKind::OspBlock { r, s: t }) => {
                s.push_str(&format!(" r={r} s={t}"))
            }
            Some(InvolutionKind::PBlock { r }) | Some(InvolutionKind::PGl { r }) => s.push_str(&format!(" r={r}")),
            _ => {}
        }
        s
    }

    pub fn involution(&self) -> Result<Involution> {
        if self.diagonal {
            return swap_involution(&construct(self.family, self.m, self.n)?);
        }
        standard_involution(self.family, self.m, self.n, self.kind.as_ref().expect("kind"))
    }
}
