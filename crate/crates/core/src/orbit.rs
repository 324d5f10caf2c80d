//! Open-orbit tests: generic ranks of orbit maps over Q(t).

use crate::algebra::{root_datum, LieSuperalgebra, Positivity};
use crate::error::{Error, Result};
use crate::functions::{Evidence, FunctionModel, SphericityVerdict, Status};
use crate::hyperborel::{extend_to_hyperborels, Hyperborel};
use crate::linalg::{generic_rank, sample_points, GenericRank, Matrix, Poly, PolyMatrix, RankMethod};
use crate::rep::Representation;
use crate::scalar::Rational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Generic even and odd ranks of the evaluation map `b -> T_x X`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitRankCertificate {
    pub generic_rank: (usize, usize),
    pub ambient: (usize, usize),
    pub full: bool,
    pub even: GenericRank,
    pub odd: GenericRank,
    /// Symbolic evaluation matrices (rows: coordinates of V, columns: basis of b).
    pub witness_even: Vec<Vec<String>>,
    pub witness_odd: Vec<Vec<String>>,
    /// Dimension of the stabilizer of a generic even point in b.
    pub stabilizer: (usize, usize),
}

/// Evaluation matrices at `x = sum t_i e_i` over the even basis vectors of V.
pub fn evaluation_matrices(v: &Representation, b: &Hyperborel) -> (PolyMatrix, PolyMatrix) {
    let ev: Vec<usize> = (0..v.dim()).filter(|&i| !v.parity(i).is_odd()).collect();
    let od: Vec<usize> = (0..v.dim()).filter(|&i| v.parity(i).is_odd()).collect();
    let nv = ev.len();
    let build = |rows: &[usize], cols: &[usize]| {
        let mut m = PolyMatrix::zeros(nv, rows.len(), cols.len());
        for (c, &k) in cols.iter().enumerate() {
            for (r, &i) in rows.iter().enumerate() {
                let mut p = Poly::zero(nv);
                for (t, &j) in ev.iter().enumerate() {
                    let x = &v.action[k][(i, j)];
                    if !x.is_zero() {
                        p = p.add(&Poly::var(nv, t).scale(x));
                    }
                }
                m.entries[r][c] = p;
            }
        }
        m
    };
    (build(&ev, &b.b0), build(&od, &b.b1))
}

pub fn linear_open_orbit_test(v: &Representation, b: &Hyperborel, seed: u64) -> OrbitRankCertificate {
    let (me, mo) = evaluation_matrices(v, b);
    let even = generic_rank(&me, seed);
    let odd = generic_rank(&mo, seed);
    let ambient = v.sdim();
    let generic = (even.rank, odd.rank);
    OrbitRankCertificate {
        generic_rank: generic,
        ambient,
        full: generic == ambient,
        stabilizer: (b.b0.len() - even.rank, b.b1.len() - odd.rank),
        witness_even: me.to_strings(),
        witness_odd: mo.to_strings(),
        even,
        odd,
    }
}

/// Ranks at seeded rational specializations of the generic point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecializationReport {
    pub generic: (usize, usize),
    pub samples: Vec<(usize, usize)>,
    pub never_exceeds: bool,
    pub attained: bool,
}

pub fn specialization_check(v: &Representation, b: &Hyperborel, seed: u64, count: usize) -> SpecializationReport {
    let cert = linear_open_orbit_test(v, b, seed);
    let (me, mo) = evaluation_matrices(v, b);
    let pts = sample_points(me.nvars, count, seed ^ 0x9e37_79b9);
    let samples: Vec<(usize, usize)> =
        pts.iter().map(|p| (me.specialize(p).rank(), mo.specialize(p).rank())).collect();
    let g = cert.generic_rank;
    SpecializationReport {
        generic: g,
        never_exceeds: samples.iter().all(|s| s.0 <= g.0 && s.1 <= g.1),
        attained: samples.contains(&g),
        samples,
    }
}

/// All hyperborels over the Borel of the default positive system.
pub fn default_hyperborels(g: &LieSuperalgebra) -> Vec<Hyperborel> {
    extend_to_hyperborels(g, &root_datum(g, Positivity::default_for(g)))
}

/// Rank test for every hyperborel; SPHERICAL if one has full rank.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearReport {
    pub status: Status,
    pub certificates: Vec<(Vec<String>, OrbitRankCertificate)>,
    /// Index of the first hyperborel with an open orbit.
    pub open: Option<usize>,
}

pub fn linear_sphericity(g: &LieSuperalgebra, v: &Representation, bs: &[Hyperborel], seed: u64) -> LinearReport {
    let certificates: Vec<(Vec<String>, OrbitRankCertificate)> = bs
        .par_iter()
        .map(|b| (b.b1.iter().map(|&i| g.label(i).to_string()).collect(), linear_open_orbit_test(v, b, seed)))
        .collect();
    let open = certificates.iter().position(|(_, c)| c.full);
    LinearReport {
        status: if open.is_some() { Status::Spherical } else { Status::NotSpherical },
        certificates,
        open,
    }
}

/// Outcome of running both sphericity tests on one hyperborel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Consistency {
    pub rank: OrbitRankCertificate,
    pub functions: SphericityVerdict,
    pub combined: SphericityVerdict,
}

/// Runs the rank test and the degree-bounded function test and merges them.
/// A full-rank certificate together with negative function evidence is an error.
pub fn cross_validate(
    g: &LieSuperalgebra,
    v: &Representation,
    b: &Hyperborel,
    d: usize,
    seed: u64,
) -> Result<Consistency> {
    let rank = linear_open_orbit_test(v, b, seed);
    let functions = FunctionModel::new(g, v, b, d)?.verdict(d)?;
    if rank.full && functions.status == Status::NotSpherical {
        let bundle = serde_json::json!({
            "algebra": g.name,
            "rep": v.to_doc(),
            "hyperborel": b.to_doc(g),
            "degree": d,
            "seed": seed,
            "rank": rank,
            "functions": functions,
        });
        return Err(Error::Conflict(bundle.to_string()));
    }
    let combined = if functions.status == Status::NotSpherical {
        functions.clone()
    } else {
        SphericityVerdict {
            status: if rank.full { Status::Spherical } else { Status::NotSpherical },
            degree: d,
            evidence: Evidence::Rank(rank.clone()),
        }
    };
    Ok(Consistency { rank, functions, combined })
}

/// G/K, given by a basis of k in coordinates of g.
#[derive(Clone, Debug)]
pub struct HomogeneousSpace {
    pub g: LieSuperalgebra,
    pub k: Vec<Vec<Rational>>,
    /// `Some(true)` when the trace form of the defining realization is
    /// nondegenerate on k0, which makes k0 reductive; `None` when undecided.
    pub k0_reductive: Option<bool>,
}

impl HomogeneousSpace {
    pub fn new(g: &LieSuperalgebra, k: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some((i, j, _)) = g.closure_violation(&k) {
            return Err(Error::NotSubalgebra { left: fmt_vec(g, &k[i]), right: fmt_vec(g, &k[j]) });
        }
        let k0: Vec<Vec<Rational>> = k.iter().filter(|x| parity_of(g, x) == Some(false)).cloned().collect();
        let k0_reductive = g.realization.as_ref().and_then(|_| {
            let mats: Vec<Matrix<Rational>> = k0.iter().map(|x| g.matrix_of(x).expect("realized")).collect();
            let n = mats.len();
            let mut form = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let p = mats[i].mul(&mats[j]);
                    let mut tr = Rational::zero();
                    for a in 0..p.rows() {
                        tr += &p[(a, a)];
                    }
                    form[(i, j)] = tr;
                }
            }
            (form.rank() == n).then_some(true)
        });
        Ok(HomogeneousSpace { g: g.clone(), k, k0_reductive })
    }
}

fn parity_of(g: &LieSuperalgebra, x: &[Rational]) -> Option<bool> {
    let mut even = false;
    let mut odd = false;
    for (i, c) in x.iter().enumerate() {
        if !c.is_zero() {
            if g.parity(i).is_odd() {
                odd = true;
            } else {
                even = true;
            }
        }
    }
    match (even, odd) {
        (true, true) => None,
        (_, o) => Some(o),
    }
}

pub fn fmt_vec(g: &LieSuperalgebra, x: &[Rational]) -> String {
    let mut parts = Vec::new();
    for (i, c) in x.iter().enumerate() {
        if !c.is_zero() {
            parts.push(if c.is_one() { g.label(i).to_string() } else { format!("{}*{}", crate::scalar::fmt_q(c), g.label(i)) });
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Result of the `b + Ad(n) k = g` test for one hyperborel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomogeneousCertificate {
    pub odd_basis: Vec<String>,
    pub generic_rank: (usize, usize),
    pub ambient: (usize, usize),
    pub status: Status,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomogeneousReport {
    pub status: Status,
    pub k_sdim: (usize, usize),
    pub per_hyperborel: Vec<HomogeneousCertificate>,
}

/// Largest symbolic problem attempted by exact elimination.
const MAX_SYMBOLIC_VARS: usize = 12;

/// `exp(t n) v` for nilpotent `n`.
fn exp_apply(n: &Matrix<Rational>, t: &Rational, v: Vec<Rational>) -> Vec<Rational> {
    if t.is_zero() {
        return v;
    }
    let mut out = v.clone();
    let mut term = v;
    for j in 1..=n.rows() {
        let s = t.clone() / Rational::from_integer((j as i64).into());
        term = n.mul_vec(&term).into_iter().map(|c| c * &s).collect();
        if term.iter().all(|c| c.is_zero()) {
            break;
        }
        for (o, c) in out.iter_mut().zip(&term) {
            *o += c;
        }
    }
    out
}

fn poly_mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let mut out = PolyMatrix::zeros(a.nvars, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            if a.entries[i][k].is_zero() {
                continue;
            }
            for j in 0..b.cols {
                if !b.entries[k][j].is_zero() {
                    out.entries[i][j] = out.entries[i][j].add(&a.entries[i][k].mul(&b.entries[k][j]));
                }
            }
        }
    }
    out
}

fn exp_symbolic(n: &Matrix<Rational>, var: usize, nvars: usize) -> PolyMatrix {
    let d = n.rows();
    let mut out = PolyMatrix::from_rational(&Matrix::identity(d), nvars);
    let mut power = Matrix::<Rational>::identity(d);
    let mut fact = Rational::one();
    for j in 1..=d {
        power = power.mul(n);
        if power.is_zero() {
            break;
        }
        fact *= Rational::from_integer((j as i64).into());
        let mut e = vec![0u32; nvars];
        e[var] = j as u32;
        let tj = Poly::monomial(e, Rational::one() / &fact);
        for (r, c, x) in power.nonzeros() {
            out.entries[r][c] = out.entries[r][c].add(&tj.scale(&x));
        }
    }
    out
}

/// Exact test of `b + Ad(u) k = g` for generic `u` in the unipotent group of the
/// negative even roots (relative to the common even Borel of `bs`). Since
/// `B0 N0^-` is dense in G0 this is the generic dimension over all of G0.
pub fn homogeneous_sphericity_test(x: &HomogeneousSpace, bs: &[Hyperborel], seed: u64) -> HomogeneousReport {
    let g = &x.g;
    let k0: Vec<Vec<Rational>> = x.k.iter().filter(|v| parity_of(g, v) == Some(false)).cloned().collect();
    let k1: Vec<Vec<Rational>> = x.k.iter().filter(|v| parity_of(g, v) == Some(true)).cloned().collect();
    let ev = g.even_indices();
    let od = g.odd_indices();
    // All hyperborels in `bs` normally share b0; the transported k is computed once per b0.
    let mut transported: BTreeMap<Vec<usize>, Vec<(Vec<Rational>, Vec<Vec<Rational>>)>> = BTreeMap::new();
    for b in bs {
        if transported.contains_key(&b.b0) {
            continue;
        }
        let neg: Vec<usize> =
            ev.iter().copied().filter(|i| !b.b0.contains(i) && g.weights[*i].iter().any(|&c| c != 0)).collect();
        let ads: Vec<Matrix<Rational>> = neg.iter().map(|&i| g.ad(i)).collect();
        let mut pts = sample_points(neg.len(), 5, seed);
        pts.push(vec![Rational::zero(); neg.len()]);
        let images = pts
            .into_par_iter()
            .map(|p| {
                let img = x.k.iter().map(|v| ads.iter().zip(&p).rev().fold(v.clone(), |w, (a, t)| exp_apply(a, t, w))).collect();
                (p, img)
            })
            .collect();
        transported.insert(b.b0.clone(), images);
    }
    let per_hyperborel = bs
        .par_iter()
        .map(|b| {
            let neg: Vec<usize> =
                ev.iter().copied().filter(|i| !b.b0.contains(i) && g.weights[*i].iter().any(|&c| c != 0)).collect();
            let ads: Vec<Matrix<Rational>> = neg.iter().map(|&i| g.ad(i)).collect();
            let nvars = neg.len();
            let columns = |kimg: &[Vec<Rational>]| -> (Matrix<Rational>, Matrix<Rational>) {
                let mut ce: Vec<Vec<Rational>> = b.b0.iter().map(|&i| g.basis_vector(i)).collect();
                let mut co: Vec<Vec<Rational>> = b.b1.iter().map(|&i| g.basis_vector(i)).collect();
                for (v, w) in x.k.iter().zip(kimg) {
                    match parity_of(g, v) {
                        Some(true) => co.push(w.clone()),
                        _ => ce.push(w.clone()),
                    }
                }
                let proj = |cols: Vec<Vec<Rational>>, idx: &[usize]| {
                    let rows: Vec<Vec<Rational>> = cols.iter().map(|c| idx.iter().map(|&i| c[i].clone()).collect()).collect();
                    if rows.is_empty() {
                        Matrix::zeros(0, idx.len())
                    } else {
                        Matrix::from_rows(rows)
                    }
                };
                (proj(ce, &ev), proj(co, &od))
            };
            let ambient = (ev.len(), od.len());
            let shape = (b.b0.len() + k0.len(), b.b1.len() + k1.len());
            let odd_basis = b.b1.iter().map(|&i| g.label(i).to_string()).collect();
            if shape.0 < ambient.0 || shape.1 < ambient.1 {
                return HomogeneousCertificate {
                    odd_basis,
                    generic_rank: (shape.0.min(ambient.0), shape.1.min(ambient.1)),
                    ambient,
                    status: Status::NotSpherical,
                    method: "shape".into(),
                };
            }
            let mut best = (0, 0);
            for (p, kimg) in &transported[&b.b0] {
                let (me, mo) = columns(kimg);
                let r = (me.rank(), mo.rank());
                best = (best.0.max(r.0), best.1.max(r.1));
                if r == ambient {
                    return HomogeneousCertificate {
                        odd_basis,
                        generic_rank: r,
                        ambient,
                        status: Status::Spherical,
                        method: format!("specialization {}", p.iter().map(crate::scalar::fmt_q).collect::<Vec<_>>().join(",")),
                    };
                }
            }
            if nvars > MAX_SYMBOLIC_VARS {
                return HomogeneousCertificate {
                    odd_basis,
                    generic_rank: best,
                    ambient,
                    status: Status::InconclusiveAtDegree,
                    method: "sampled lower bound".into(),
                };
            }
            // Exact generic rank by fraction-free elimination.
            let mut m = PolyMatrix::from_rational(&Matrix::identity(g.dim()), nvars);
            for (a, n) in ads.iter().enumerate() {
                m = poly_mat_mul(&m, &exp_symbolic(n, a, nvars));
            }
            let symbolic = |base: &[usize], ks: &[Vec<Rational>], idx: &[usize]| {
                let mut pm = PolyMatrix::zeros(nvars, base.len() + ks.len(), idx.len());
                for (r, &i) in base.iter().enumerate() {
                    if let Some(c) = idx.iter().position(|&j| j == i) {
                        pm.entries[r][c] = Poly::one(nvars);
                    }
                }
                for (r, kv) in ks.iter().enumerate() {
                    for (c, &j) in idx.iter().enumerate() {
                        let mut p = Poly::zero(nvars);
                        for (l, x) in kv.iter().enumerate() {
                            if !x.is_zero() && !m.entries[j][l].is_zero() {
                                p = p.add(&m.entries[j][l].scale(x));
                            }
                        }
                        pm.entries[base.len() + r][c] = p;
                    }
                }
                pm
            };
            let re = generic_rank(&symbolic(&b.b0, &k0, &ev), seed);
            let ro = generic_rank(&symbolic(&b.b1, &k1, &od), seed);
            let r = (re.rank, ro.rank);
            let method = match (&re.method, &ro.method) {
                (RankMethod::Bareiss { .. }, _) | (_, RankMethod::Bareiss { .. }) => "bareiss",
                _ => "specialization",
            };
            HomogeneousCertificate {
                odd_basis,
                generic_rank: r,
                ambient,
                status: if r == ambient { Status::Spherical } else { Status::NotSpherical },
                method: method.into(),
            }
        })
        .collect::<Vec<_>>();
    let status = if per_hyperborel.iter().any(|c| c.status == Status::Spherical) {
        Status::Spherical
    } else if per_hyperborel.iter().all(|c| c.status == Status::NotSpherical) {
        Status::NotSpherical
    } else {
        Status::InconclusiveAtDegree
    };
    let k_sdim = (k0.len(), k1.len());
    HomogeneousReport { status, k_sdim, per_hyperborel }
}
