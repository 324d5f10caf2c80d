//! Finite-dimensional representations with exact action matrices.

use crate::algebra::{LieSuperalgebra, SumEmbedding, Weight};
use crate::error::{Error, Result};
use crate::hyperborel::Hyperborel;
use crate::linalg::{koszul, Matrix, Parity, SuperVectorSpace};
use crate::scalar::{as_small_int, fmt_q, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Representation {
    pub algebra: String,
    pub name: String,
    pub space: SuperVectorSpace,
    /// One matrix per basis element of the algebra.
    pub action: Vec<Matrix<Rational>>,
}

fn sign(s: i64) -> Rational {
    Rational::from_integer(s.into())
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn sdim(&self) -> (usize, usize) {
        self.space.sdim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.space.parities[i]
    }

    /// Matrix of `sum c_k x_k`.
    pub fn act(&self, c: &[Rational]) -> Matrix<Rational> {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (k, ck) in c.iter().enumerate() {
            if !ck.is_zero() {
                m = m.add(&self.action[k].scale(ck));
            }
        }
        m
    }

    /// First basis pair with `rho[x,y] != rho(x)rho(y) - (-1)^{|x||y|} rho(y)rho(x)`.
    pub fn module_violation(&self, g: &LieSuperalgebra) -> Option<(usize, usize)> {
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let lhs = self.act(&g.bracket(&g.basis_vector(i), &g.basis_vector(j)));
                let s = sign(koszul(g.parity(i), g.parity(j)));
                let rhs = self.action[i].mul(&self.action[j]).sub(&self.action[j].mul(&self.action[i]).scale(&s));
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First basis element whose matrix does not have the parity of that element.
    pub fn parity_violation(&self, g: &LieSuperalgebra) -> Option<usize> {
        (0..g.dim()).find(|&k| {
            self.action[k]
                .nonzeros()
                .iter()
                .any(|(r, c, _)| self.parity(*r) != self.parity(*c).add(g.parity(k)))
        })
    }

    /// h0-weights of the basis vectors, if h0 acts diagonally with integer eigenvalues.
    pub fn weights(&self, g: &LieSuperalgebra) -> Result<Vec<Weight>> {
        let mut out = vec![Vec::with_capacity(g.cartan.len()); self.dim()];
        for &h in &g.cartan {
            let m = &self.action[h];
            if m.nonzeros().iter().any(|(r, c, _)| r != c) {
                return Err(Error::Invalid(format!("{}: h0 does not act diagonally", self.name)));
            }
            for (i, w) in out.iter_mut().enumerate() {
                let v = &m[(i, i)];
                w.push(as_small_int(v).ok_or_else(|| Error::NonIntegral(fmt_q(v)))?);
            }
        }
        Ok(out)
    }

    pub fn to_doc(&self) -> RepDoc {
        RepDoc {
            algebra: self.algebra.clone(),
            name: self.name.clone(),
            labels: self.space.labels.clone(),
            parities: self.space.parities.clone(),
            action: self
                .action
                .iter()
                .map(|m| m.nonzeros().into_iter().map(|(i, j, v)| (i, j, fmt_q(&v))).collect())
                .collect(),
        }
    }
}

/// JSON form: sparse action matrices, entries as `(row, col, "p/q")`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepDoc {
    pub algebra: String,
    pub name: String,
    pub labels: Vec<String>,
    pub parities: Vec<Parity>,
    pub action: Vec<Vec<(usize, usize, String)>>,
}

pub fn standard_rep(g: &LieSuperalgebra) -> Result<Representation> {
    let r = g
        .realization
        .as_ref()
        .ok_or_else(|| Error::Invalid(format!("{} has no defining realization", g.name)))?;
    let big = r.even_dim + r.odd_dim;
    let labels = (1..=big).map(|i| format!("v{i}")).collect();
    let parities = (0..big).map(|i| r.parity_of_index(i)).collect();
    Ok(Representation {
        algebra: g.name.clone(),
        name: format!("V({})", g.name),
        space: SuperVectorSpace::new(labels, parities),
        action: r.matrices.clone(),
    })
}

pub fn trivial_rep(g: &LieSuperalgebra) -> Representation {
    Representation {
        algebra: g.name.clone(),
        name: "C".into(),
        space: SuperVectorSpace::new(vec!["1".into()], vec![Parity::Even]),
        action: vec![Matrix::zeros(1, 1); g.dim()],
    }
}

/// The zero representation; as a variety, a single point.
pub fn zero_rep(g: &LieSuperalgebra) -> Representation {
    Representation {
        algebra: g.name.clone(),
        name: "0".into(),
        space: SuperVectorSpace::new(vec![], vec![]),
        action: vec![Matrix::zeros(0, 0); g.dim()],
    }
}

/// `g + gl(1)` with the extra summand acting on V by the identity.
pub fn with_scalars(g: &LieSuperalgebra, v: &Representation) -> (LieSuperalgebra, Representation) {
    let gl1 = crate::algebra::construct(crate::algebra::Family::Gl, 1, 0).expect("gl(1) exists");
    let (s, emb) = crate::algebra::direct_sum(g, &gl1);
    let mut r = pullback(&s, &emb.first, v);
    r.action[emb.second[0]] = Matrix::identity(v.dim());
    r.name = format!("{}+scalars", v.name);
    (s, r)
}

pub fn adjoint_rep(g: &LieSuperalgebra) -> Representation {
    Representation {
        algebra: g.name.clone(),
        name: format!("ad({})", g.name),
        space: g.space.clone(),
        action: (0..g.dim()).map(|i| g.ad(i)).collect(),
    }
}

/// Parity shift: same matrices, flipped parities.
pub fn pi_shift(v: &Representation) -> Representation {
    Representation {
        algebra: v.algebra.clone(),
        name: format!("Pi{}", v.name),
        space: SuperVectorSpace::new(v.space.labels.clone(), v.space.parities.iter().map(|p| p.flip()).collect()),
        action: v.action.clone(),
    }
}

/// Dual: `rho*(x)_{ij} = -(-1)^{|x||j|} rho(x)_{ji}` in the dual basis.
pub fn dual(g: &LieSuperalgebra, v: &Representation) -> Representation {
    let action = (0..g.dim())
        .map(|k| {
            let mut m = Matrix::zeros(v.dim(), v.dim());
            for (r, c, x) in v.action[k].nonzeros() {
                // entry (i, j) = (c, r)
                let s = -koszul(g.parity(k), v.parity(r));
                m[(c, r)] = x * sign(s);
            }
            m
        })
        .collect();
    Representation {
        algebra: v.algebra.clone(),
        name: format!("{}*", v.name),
        space: SuperVectorSpace::new(
            v.space.labels.iter().map(|l| format!("{l}*")).collect(),
            v.space.parities.clone(),
        ),
        action,
    }
}

/// `x(v w) = (xv) w + (-1)^{|x||v|} v (xw)`, basis `(i, j)` at `i * dim W + j`.
pub fn tensor(g: &LieSuperalgebra, v: &Representation, w: &Representation) -> Representation {
    let (dv, dw) = (v.dim(), w.dim());
    let mut labels = Vec::with_capacity(dv * dw);
    let mut parities = Vec::with_capacity(dv * dw);
    for i in 0..dv {
        for j in 0..dw {
            labels.push(format!("{}*{}", v.space.labels[i], w.space.labels[j]));
            parities.push(v.parity(i).add(w.parity(j)));
        }
    }
    let action = (0..g.dim())
        .map(|k| {
            let mut m: Matrix<Rational> = Matrix::zeros(dv * dw, dv * dw);
            for (r, c, x) in v.action[k].nonzeros() {
                for j in 0..dw {
                    m[(r * dw + j, c * dw + j)] = m[(r * dw + j, c * dw + j)].clone() + &x;
                }
            }
            for (r, c, x) in w.action[k].nonzeros() {
                for i in 0..dv {
                    let s = sign(koszul(g.parity(k), v.parity(i)));
                    m[(i * dw + r, i * dw + c)] = m[(i * dw + r, i * dw + c)].clone() + &x * s;
                }
            }
            m
        })
        .collect();
    Representation {
        algebra: g.name.clone(),
        name: format!("{}(x){}", v.name, w.name),
        space: SuperVectorSpace::new(labels, parities),
        action,
    }
}

/// Basis of `S^2 V`: products `e_i e_j`, `i <= j`, skipping squares of odd vectors.
pub fn sym2_basis(v: &Representation) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..v.dim() {
        for j in i..v.dim() {
            if i == j && v.parity(i).is_odd() {
                continue;
            }
            out.push((i, j));
        }
    }
    out
}

pub fn sym2(g: &LieSuperalgebra, v: &Representation) -> Representation {
    let basis = sym2_basis(v);
    let index: BTreeMap<(usize, usize), usize> = basis.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    // e_a e_b in the basis: supercommutative reordering.
    let locate = |a: usize, b: usize| -> Option<(usize, Rational)> {
        if a == b && v.parity(a).is_odd() {
            return None;
        }
        if a <= b {
            Some((index[&(a, b)], Rational::one()))
        } else {
            Some((index[&(b, a)], sign(koszul(v.parity(a), v.parity(b)))))
        }
    };
    let d = basis.len();
    let action = (0..g.dim())
        .map(|k| {
            let mut m: Matrix<Rational> = Matrix::zeros(d, d);
            for (col, &(i, j)) in basis.iter().enumerate() {
                let xi = v.action[k].col(i);
                for (a, c) in xi.iter().enumerate() {
                    if let (false, Some((row, s))) = (c.is_zero(), locate(a, j)) {
                        m[(row, col)] = m[(row, col)].clone() + c * s;
                    }
                }
                let xj = v.action[k].col(j);
                let s0 = sign(koszul(g.parity(k), v.parity(i)));
                for (b, c) in xj.iter().enumerate() {
                    if let (false, Some((row, s))) = (c.is_zero(), locate(i, b)) {
                        m[(row, col)] = m[(row, col)].clone() + c * s * &s0;
                    }
                }
            }
            m
        })
        .collect();
    Representation {
        algebra: g.name.clone(),
        name: format!("S2{}", v.name),
        space: SuperVectorSpace::new(
            basis.iter().map(|&(i, j)| format!("{}{}", v.space.labels[i], v.space.labels[j])).collect(),
            basis.iter().map(|&(i, j)| v.parity(i).add(v.parity(j))).collect(),
        ),
        action,
    }
}

/// Pulls a representation of one summand back to the direct sum.
pub fn pullback(sum: &LieSuperalgebra, map: &[usize], v: &Representation) -> Representation {
    let mut action = vec![Matrix::zeros(v.dim(), v.dim()); sum.dim()];
    for (i, &k) in map.iter().enumerate() {
        action[k] = v.action[i].clone();
    }
    Representation { algebra: sum.name.clone(), name: v.name.clone(), space: v.space.clone(), action }
}

/// `V ⊠ W` as a representation of `g1 + g2`.
pub fn external_tensor(
    sum: &LieSuperalgebra,
    emb: &SumEmbedding,
    v: &Representation,
    w: &Representation,
) -> Representation {
    let mut r = tensor(sum, &pullback(sum, &emb.first, v), &pullback(sum, &emb.second, w));
    r.name = format!("{}[x]{}", v.name, w.name);
    r
}

/// Restriction to g0 acting on the even part of V.
pub fn even_restriction(g: &LieSuperalgebra, v: &Representation) -> (LieSuperalgebra, Representation) {
    let (g0, idx) = g.even_part();
    let ev = v.space.indices(Parity::Even);
    let action = idx.iter().map(|&k| v.action[k].select_rows(&ev).select_cols(&ev)).collect();
    let rep = Representation {
        algebra: g0.name.clone(),
        name: format!("{}_0", v.name),
        space: SuperVectorSpace::new(ev.iter().map(|&i| v.space.labels[i].clone()).collect(), vec![Parity::Even; ev.len()]),
        action,
    };
    (g0, rep)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HighestWeightSpace {
    pub weight: Weight,
    pub parity: Parity,
    pub vectors: Vec<Vec<Rational>>,
}

/// Vectors of V that are b-eigenvectors: h0-homogeneous and killed by n and b1.
pub fn highest_weight_spaces(
    g: &LieSuperalgebra,
    v: &Representation,
    b: &Hyperborel,
) -> Result<Vec<HighestWeightSpace>> {
    let weights = v.weights(g)?;
    let mut killers: Vec<Matrix<Rational>> = b.n.iter().map(|c| v.act(c)).collect();
    killers.extend(b.b1.iter().map(|&i| v.action[i].clone()));
    let mut groups: BTreeMap<(Weight, Parity), Vec<usize>> = BTreeMap::new();
    for i in 0..v.dim() {
        groups.entry((weights[i].clone(), v.parity(i))).or_default().push(i);
    }
    let mut out = Vec::new();
    for ((w, p), idx) in groups {
        let mut stacked = Matrix::zeros(0, idx.len());
        for k in &killers {
            stacked = stacked.vstack(&k.select_cols(&idx));
        }
        let ker = stacked.kernel_basis();
        if ker.is_empty() {
            continue;
        }
        let vectors = ker
            .into_iter()
            .map(|kv| {
                let mut full = vec![Rational::zero(); v.dim()];
                for (a, &i) in idx.iter().enumerate() {
                    full[i] = kv[a].clone();
                }
                full
            })
            .collect();
        out.push(HighestWeightSpace { weight: w, parity: p, vectors });
    }
    Ok(out)
}
