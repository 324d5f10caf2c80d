//! The coordinate superalgebra of GL(1|1) under left and right translation.
//!
//! Coordinates `Z = [[a, beta], [gamma, d]]`; the ring is `C[a^±1, d^±1] ⊗ Λ[beta, gamma]`.

use crate::algebra::{construct, direct_sum, Family, LieSuperalgebra, SumEmbedding};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Parity, SuperVectorSpace};
use crate::rep::{dual, external_tensor, Representation};
use crate::scalar::{fmt_q, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// `a^a d^d beta^beta gamma^gamma`, odd part ordered beta before gamma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GlMono {
    pub a: i64,
    pub d: i64,
    pub beta: bool,
    pub gamma: bool,
}

impl GlMono {
    pub fn new(a: i64, d: i64, beta: bool, gamma: bool) -> Self {
        GlMono { a, d, beta, gamma }
    }

    pub fn parity(&self) -> Parity {
        if self.beta != self.gamma {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Eigenvalues of left E11, left E22, right E11, right E22.
    pub fn weight(&self) -> [i64; 4] {
        let (e, f) = (self.beta as i64, self.gamma as i64);
        [-(self.a + e), -(self.d + f), self.a + f, self.d + e]
    }

    /// Eigenvalue of the left center `E11 + E22`; zero on the principal block.
    pub fn central_character(&self) -> i64 {
        let w = self.weight();
        w[0] + w[1]
    }
}

impl fmt::Display for GlMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("a", self.a), ("d", self.d)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if self.beta {
            parts.push("b".into());
        }
        if self.gamma {
            parts.push("c".into());
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// An element of C[GL(1|1)].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlFn {
    pub terms: BTreeMap<GlMono, Rational>,
}

impl GlFn {
    pub fn zero() -> Self {
        GlFn::default()
    }

    pub fn monomial(m: GlMono) -> Self {
        GlFn::term(m, Rational::one())
    }

    pub fn term(m: GlMono, c: Rational) -> Self {
        let mut f = GlFn::zero();
        f.add_term(m, c);
        f
    }

    pub fn a() -> Self {
        GlFn::monomial(GlMono::new(1, 0, false, false))
    }

    pub fn d() -> Self {
        GlFn::monomial(GlMono::new(0, 1, false, false))
    }

    pub fn beta() -> Self {
        GlFn::monomial(GlMono::new(0, 0, true, false))
    }

    pub fn gamma() -> Self {
        GlFn::monomial(GlMono::new(0, 0, false, true))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: GlMono, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &GlFn) -> GlFn {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn scale(&self, s: &Rational) -> GlFn {
        if s.is_zero() {
            return GlFn::zero();
        }
        GlFn { terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    pub fn mul(&self, o: &GlFn) -> GlFn {
        let mut r = GlFn::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if (m1.beta && m2.beta) || (m1.gamma && m2.gamma) {
                    continue;
                }
                // gamma of the left factor passes beta of the right one.
                let sign = if m1.gamma && m2.beta { -Rational::one() } else { Rational::one() };
                let m = GlMono::new(m1.a + m2.a, m1.d + m2.d, m1.beta || m2.beta, m1.gamma || m2.gamma);
                r.add_term(m, c1 * c2 * sign);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> GlFn {
        (0..k).fold(GlFn::monomial(GlMono::new(0, 0, false, false)), |acc, _| acc.mul(self))
    }

    /// Value at the identity matrix.
    pub fn at_identity(&self) -> Rational {
        self.terms.iter().filter(|(m, _)| !m.beta && !m.gamma).map(|(_, c)| c.clone()).sum()
    }
}

impl fmt::Display for GlFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| if c.is_one() { m.to_string() } else { format!("{}*{}", fmt_q(c), m) })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `Ber^k = a^k d^-k (1 - k a^-1 d^-1 beta gamma)`.
pub fn berezinian_power(k: i64) -> GlFn {
    let mut f = GlFn::monomial(GlMono::new(k, -k, false, false));
    f.add_term(GlMono::new(k - 1, -k - 1, true, true), Rational::from_integer((-k).into()));
    f
}

/// A derivation given by its values on `a, beta, gamma, d`.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub parity: Parity,
    /// Images of `a, beta, gamma, d` (the entries of Z in row order).
    pub images: [GlFn; 4],
}

impl Derivation {
    pub fn apply_monomial(&self, m: &GlMono) -> GlFn {
        let [da, db, dc, dd] = &self.images;
        let body = GlMono::new(m.a, m.d, false, false);
        let odd = GlFn::monomial(GlMono::new(0, 0, m.beta, m.gamma));
        // D(a^i d^j) = i a^(i-1) d^j D(a) + j a^i d^(j-1) D(d)
        let mut dbody = GlFn::zero();
        if m.a != 0 {
            dbody = dbody.add(&GlFn::term(GlMono::new(m.a - 1, m.d, false, false), Rational::from_integer(m.a.into())).mul(da));
        }
        if m.d != 0 {
            dbody = dbody.add(&GlFn::term(GlMono::new(m.a, m.d - 1, false, false), Rational::from_integer(m.d.into())).mul(dd));
        }
        let dodd = match (m.beta, m.gamma) {
            (false, false) => GlFn::zero(),
            (true, false) => db.clone(),
            (false, true) => dc.clone(),
            (true, true) => {
                let s = if self.parity.is_odd() { -Rational::one() } else { Rational::one() };
                db.mul(&GlFn::gamma()).add(&GlFn::beta().mul(dc).scale(&s))
            }
        };
        dbody.mul(&odd).add(&GlFn::monomial(body).mul(&dodd))
    }

    pub fn apply(&self, f: &GlFn) -> GlFn {
        let mut r = GlFn::zero();
        for (m, c) in &f.terms {
            r = r.add(&self.apply_monomial(m).scale(c));
        }
        r
    }
}

fn coordinate(i: usize, j: usize) -> GlFn {
    match (i, j) {
        (0, 0) => GlFn::a(),
        (0, 1) => GlFn::beta(),
        (1, 0) => GlFn::gamma(),
        _ => GlFn::d(),
    }
}

fn matrix_parity(x: &Matrix<Rational>) -> Parity {
    if x.nonzeros().iter().any(|(i, j, _)| i != j) {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// `beta -> -beta`, a ring automorphism.
pub fn flip_beta(f: &GlFn) -> GlFn {
    GlFn { terms: f.terms.iter().map(|(m, c)| (*m, if m.beta { -c.clone() } else { c.clone() })).collect() }
}

/// Conjugates by `flip_beta`, so that `Ber = a d^-1 - beta gamma d^-2` is invariant.
fn conjugate_by_flip(mut d: Derivation) -> Derivation {
    d.images = d.images.map(|f| flip_beta(&f));
    d.images[1] = d.images[1].scale(&-Rational::one());
    d
}

/// Right translation `R_X(Z) = Z X`.
pub fn right_derivation(x: &Matrix<Rational>) -> Derivation {
    let parity = matrix_parity(x);
    let images = [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(i, j)| {
        let mut f = GlFn::zero();
        for k in 0..2 {
            f = f.add(&coordinate(i, k).scale(&x[(k, j)]));
        }
        f
    });
    conjugate_by_flip(Derivation { parity, images })
}

/// Left translation `L_X(Z_ij) = -sum_k (-1)^(|X|(|k|+|j|)) X_ik Z_kj`; the sign makes
/// odd left and right operators supercommute.
pub fn left_derivation(x: &Matrix<Rational>) -> Derivation {
    let parity = matrix_parity(x);
    let images = [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(i, j)| {
        let mut f = GlFn::zero();
        for k in 0..2 {
            let c = &x[(i, k)];
            let flip = parity.is_odd() && (k + j) % 2 == 1;
            let s = if flip { c.clone() } else { -c.clone() };
            f = f.add(&coordinate(k, j).scale(&s));
        }
        f
    });
    conjugate_by_flip(Derivation { parity, images })
}

/// gl(1|1) + gl(1|1) acting on C[GL(1|1)], left copy first.
#[derive(Clone, Debug)]
pub struct GroupCoordinateRing {
    pub g: LieSuperalgebra,
    pub sum: LieSuperalgebra,
    pub emb: SumEmbedding,
    /// Derivation of each basis element of `sum`.
    pub ops: Vec<Derivation>,
    pub band: i64,
}

/// Labels of the odd operators in the picture of the principal block.
pub const ARROW_LABELS: [&str; 4] = ["u", "v", "ubar", "vbar"];

impl GroupCoordinateRing {
    pub fn new(band: i64) -> Result<Self> {
        if band < 0 {
            return Err(Error::Invalid("band must be nonnegative".into()));
        }
        let g = construct(Family::Gl, 1, 1)?;
        let (sum, emb) = direct_sum(&g, &g);
        let mut ops = vec![None; sum.dim()];
        for i in 0..g.dim() {
            let x = g.matrix(i).expect("gl(1|1) is realized").clone();
            ops[emb.first[i]] = Some(left_derivation(&x));
            ops[emb.second[i]] = Some(right_derivation(&x));
        }
        Ok(GroupCoordinateRing { g, sum, emb, ops: ops.into_iter().map(|o| o.expect("all slots")).collect(), band })
    }

    pub fn act(&self, k: usize, f: &GlFn) -> GlFn {
        self.ops[k].apply(f)
    }

    fn find(&self, label: &str) -> usize {
        (0..self.g.dim()).find(|&i| self.g.label(i) == label).expect("gl(1|1) basis label")
    }

    /// Operator indices (in `sum`) of u, v, ubar, vbar: left E21, left E12,
    /// right E21, right E12.
    pub fn arrow_ops(&self) -> [usize; 4] {
        let (e12, e21) = (self.find("E12"), self.find("E21"));
        [self.emb.first[e21], self.emb.first[e12], self.emb.second[e21], self.emb.second[e12]]
    }

    pub fn odd_ops(&self) -> Vec<usize> {
        self.sum.odd_indices()
    }

    /// Monomials with Laurent exponents in `[-band, band]`.
    pub fn band_monomials(&self) -> Vec<GlMono> {
        let n = self.band;
        let mut out = Vec::new();
        for a in -n..=n {
            for d in -n..=n {
                for (b, c) in [(false, false), (true, false), (false, true), (true, true)] {
                    out.push(GlMono::new(a, d, b, c));
                }
            }
        }
        out
    }

    /// First violation of the module relations or of left/right supercommutation,
    /// tested on the band monomials.
    pub fn relation_violation(&self) -> Option<String> {
        let mons = self.band_monomials();
        let s = &self.sum;
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let br = s.bracket(&s.basis_vector(i), &s.basis_vector(j));
                let sign = if s.parity(i).is_odd() && s.parity(j).is_odd() { Rational::one() } else { -Rational::one() };
                for m in &mons {
                    let f = GlFn::monomial(*m);
                    let lhs = self.act(i, &self.act(j, &f)).add(&self.act(j, &self.act(i, &f)).scale(&sign));
                    let mut rhs = GlFn::zero();
                    for (k, c) in br.iter().enumerate() {
                        if !c.is_zero() {
                            rhs = rhs.add(&self.act(k, &f).scale(c));
                        }
                    }
                    if lhs != rhs {
                        return Some(format!("[{}, {}] on {}", s.label(i), s.label(j), m));
                    }
                }
            }
        }
        None
    }

    /// First failure of the super-Leibniz rule on products of band monomials.
    pub fn leibniz_violation(&self, pairs: &[(GlMono, GlMono)]) -> Option<String> {
        for (k, op) in self.ops.iter().enumerate() {
            for (m1, m2) in pairs {
                let (f, g) = (GlFn::monomial(*m1), GlFn::monomial(*m2));
                let sign = if op.parity.is_odd() && m1.parity().is_odd() { -Rational::one() } else { Rational::one() };
                let lhs = op.apply(&f.mul(&g));
                let rhs = op.apply(&f).mul(&g).add(&f.mul(&op.apply(&g)).scale(&sign));
                if lhs != rhs {
                    return Some(format!("{} on {} * {}", self.sum.label(k), m1, m2));
                }
            }
        }
        None
    }
}

/// Coordinates of functions over the union of their monomials.
struct MonoIndex {
    index: BTreeMap<GlMono, usize>,
}

impl MonoIndex {
    fn new<'a>(fs: impl IntoIterator<Item = &'a GlFn>) -> Self {
        let set: BTreeSet<GlMono> = fs.into_iter().flat_map(|f| f.terms.keys().copied()).collect();
        MonoIndex { index: set.into_iter().enumerate().map(|(i, m)| (m, i)).collect() }
    }

    fn len(&self) -> usize {
        self.index.len()
    }

    fn coords(&self, f: &GlFn) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.len()];
        for (m, c) in &f.terms {
            v[self.index[m]] = c.clone();
        }
        v
    }
}

/// Dimension of the span of `fs`.
pub fn span_dim(fs: &[GlFn]) -> usize {
    if fs.is_empty() {
        return 0;
    }
    let idx = MonoIndex::new(fs);
    Matrix::from_cols(idx.len(), &fs.iter().map(|f| idx.coords(f)).collect::<Vec<_>>()).rank()
}

/// Whether `a` and `b` span the same subspace.
pub fn same_span(a: &[GlFn], b: &[GlFn]) -> bool {
    let da = span_dim(a);
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    da == span_dim(b) && span_dim(&all) == da
}

/// Irreducible gl(1|1)-module of highest weight `(l1, l2)`: 2-dimensional when
/// `l1 + l2 != 0`, else the 1-dimensional `Ber^l1`.
pub fn irreducible(g: &LieSuperalgebra, l1: Rational, l2: Rational) -> Representation {
    let c = &l1 + &l2;
    let find = |l: &str| (0..g.dim()).find(|&i| g.label(i) == l).expect("gl(1|1) basis");
    let (e11, e22, e12, e21) = (find("E11"), find("E22"), find("E12"), find("E21"));
    let n = if c.is_zero() { 1 } else { 2 };
    let mut action = vec![Matrix::zeros(n, n); g.dim()];
    action[e11][(0, 0)] = l1.clone();
    action[e22][(0, 0)] = l2.clone();
    if n == 2 {
        action[e11][(1, 1)] = &l1 - Rational::one();
        action[e22][(1, 1)] = &l2 + Rational::one();
        action[e21][(1, 0)] = Rational::one();
        action[e12][(0, 1)] = c;
    }
    let (labels, parities) = if n == 1 {
        (vec!["v".to_string()], vec![Parity::Even])
    } else {
        (vec!["v".to_string(), "E21v".to_string()], vec![Parity::Even, Parity::Odd])
    };
    Representation {
        algebra: g.name.clone(),
        name: format!("L({},{})", fmt_q(&l1), fmt_q(&l2)),
        space: SuperVectorSpace::new(labels, parities),
        action,
    }
}

/// `epsilon_V : V ⊠ V* -> C[G]`, left copy acting on V.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixCoefficientMap {
    pub rep: String,
    /// Source basis labels `v_i ⊗ v_j*`.
    pub labels: Vec<String>,
    pub images: Vec<GlFn>,
    pub image_dim: usize,
    pub image_sdim: (usize, usize),
    /// Sign convention used at the identity: `delta_ij` or `(-1)^|v_i| delta_ij`.
    pub pairing: String,
    /// No other equivariant map has the same values at the identity.
    pub unique: bool,
    pub equivariance_ok: bool,
}

impl MatrixCoefficientMap {
    pub fn injective(&self) -> bool {
        self.image_dim == self.images.len()
    }

    /// A basis of the image.
    pub fn image_basis(&self) -> Vec<GlFn> {
        let mut out: Vec<GlFn> = Vec::new();
        for f in &self.images {
            let mut t = out.clone();
            t.push(f.clone());
            if span_dim(&t) > out.len() {
                out.push(f.clone());
            }
        }
        out
    }
}

/// Candidate monomials of the given left and right weights.
fn monomials_of_weight(w: [i64; 4]) -> Vec<GlMono> {
    let mut out = Vec::new();
    for (b, c) in [(false, false), (true, false), (false, true), (true, true)] {
        let m = GlMono::new(-w[0] - b as i64, -w[1] - c as i64, b, c);
        if m.weight() == w {
            out.push(m);
        }
    }
    out
}

/// Solves for the equivariant map with the canonical values at the identity.
pub fn matrix_coefficients(ring: &GroupCoordinateRing, v: &Representation) -> Result<MatrixCoefficientMap> {
    let g = &ring.g;
    let wv = v.weights(g)?;
    let vd = dual(g, v);
    let wd = vd.weights(g)?;
    let w = external_tensor(&ring.sum, &ring.emb, v, &vd);
    let n = v.dim();
    let pairs = n * n;
    // Unknowns: one coefficient per candidate monomial of each source basis vector.
    let mut cand: Vec<Vec<GlMono>> = Vec::with_capacity(pairs);
    let mut offset = Vec::with_capacity(pairs);
    let mut nunk = 0;
    for i in 0..n {
        for j in 0..n {
            let c = monomials_of_weight([wv[i][0], wv[i][1], wd[j][0], wd[j][1]]);
            offset.push(nunk);
            nunk += c.len();
            cand.push(c);
        }
    }
    let basis_fn = |p: usize, t: usize| GlFn::monomial(cand[p][t]);
    // Equations: D_k E(x_p) - sum_q W_k[q,p] E(x_q) = 0, coefficient by coefficient.
    let mut rows: BTreeMap<(usize, usize, GlMono), Vec<(usize, Rational)>> = BTreeMap::new();
    for k in 0..ring.sum.dim() {
        for p in 0..pairs {
            for t in 0..cand[p].len() {
                let img = ring.act(k, &basis_fn(p, t));
                for (m, c) in &img.terms {
                    rows.entry((k, p, *m)).or_default().push((offset[p] + t, c.clone()));
                }
            }
            for (q, pp, x) in w.action[k].nonzeros() {
                if pp != p {
                    continue;
                }
                for t in 0..cand[q].len() {
                    rows.entry((k, p, cand[q][t])).or_default().push((offset[q] + t, -x.clone()));
                }
            }
        }
    }
    let mut eqs: Vec<Vec<Rational>> = rows
        .into_values()
        .map(|entries| {
            let mut r = vec![Rational::zero(); nunk];
            for (u, c) in entries {
                r[u] += c;
            }
            r
        })
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .collect();
    let homogeneous = eqs.len();
    // Values at the identity.
    for p in 0..pairs {
        let mut r = vec![Rational::zero(); nunk];
        for (t, m) in cand[p].iter().enumerate() {
            if !m.beta && !m.gamma {
                r[offset[p] + t] = Rational::one();
            }
        }
        eqs.push(r);
    }
    let a = if eqs.is_empty() { Matrix::zeros(0, nunk) } else { Matrix::from_rows(eqs) };
    let unique = nunk == 0 || a.kernel_basis().is_empty();
    for (name, signed) in [("delta_ij", false), ("(-1)^|v_i| delta_ij", true)] {
        let mut rhs = vec![Rational::zero(); homogeneous];
        for i in 0..n {
            for j in 0..n {
                let val = if i != j {
                    Rational::zero()
                } else if signed && v.parity(i).is_odd() {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                rhs.push(val);
            }
        }
        let Some(sol) = (if nunk == 0 { None } else { a.solve(&rhs) }) else { continue };
        let images: Vec<GlFn> = (0..pairs)
            .map(|p| {
                let mut f = GlFn::zero();
                for (t, m) in cand[p].iter().enumerate() {
                    f.add_term(*m, sol[offset[p] + t].clone());
                }
                f
            })
            .collect();
        let equivariance_ok = equivariance_residual_zero(ring, &w, &images);
        let labels = (0..pairs).map(|p| format!("{}⊗{}", v.space.labels[p / n], vd.space.labels[p % n])).collect();
        let mut map = MatrixCoefficientMap {
            rep: v.name.clone(),
            labels,
            images,
            image_dim: 0,
            image_sdim: (0, 0),
            pairing: name.into(),
            unique,
            equivariance_ok,
        };
        let basis = map.image_basis();
        map.image_dim = basis.len();
        let odd = basis.iter().filter(|f| f.terms.keys().next().is_some_and(|m| m.parity().is_odd())).count();
        map.image_sdim = (basis.len() - odd, odd);
        return Ok(map);
    }
    Err(Error::Construction(format!("{}: no equivariant map with the canonical pairing", v.name)))
}

fn equivariance_residual_zero(ring: &GroupCoordinateRing, w: &Representation, images: &[GlFn]) -> bool {
    (0..ring.sum.dim()).all(|k| {
        (0..images.len()).all(|p| {
            let mut rhs = GlFn::zero();
            for (q, pp, x) in w.action[k].nonzeros() {
                if pp == p {
                    rhs = rhs.add(&images[q].scale(&x));
                }
            }
            ring.act(k, &images[p]) == rhs
        })
    })
}

/// Node of the picture of the principal block: row and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeRow {
    Top,
    MidA,
    MidB,
    Bottom,
}

impl NodeRow {
    pub fn name(&self) -> &'static str {
        match self {
            NodeRow::Top => "top",
            NodeRow::MidA => "mid_a",
            NodeRow::MidB => "mid_b",
            NodeRow::Bottom => "bottom",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "top" => Some(NodeRow::Top),
            "mid_a" => Some(NodeRow::MidA),
            "mid_b" => Some(NodeRow::MidB),
            "bottom" => Some(NodeRow::Bottom),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Node {
    pub row: NodeRow,
    pub k: i64,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.row.name(), self.k)
    }
}

impl Node {
    /// Normalized weight vectors: top `a^(k-1) d^(-k-1) beta gamma`, mid_a
    /// `a^(k-1) d^-k beta`, mid_b `a^(k-1) d^-k gamma`, bottom `Ber^k`.
    pub fn vector(&self) -> GlFn {
        let k = self.k;
        match self.row {
            NodeRow::Top => GlFn::monomial(GlMono::new(k - 1, -k - 1, true, true)),
            NodeRow::MidA => GlFn::monomial(GlMono::new(k - 1, -k, true, false)),
            NodeRow::MidB => GlFn::monomial(GlMono::new(k - 1, -k, false, true)),
            NodeRow::Bottom => berezinian_power(k),
        }
    }

    /// Left and right block indices `(i + beta, i + gamma)` of the node's monomials.
    pub fn indices(&self) -> (i64, i64) {
        let k = self.k;
        match self.row {
            NodeRow::Top | NodeRow::Bottom => (k, k),
            NodeRow::MidA => (k, k - 1),
            NodeRow::MidB => (k - 1, k),
        }
    }
}

/// The nodes whose block indices lie in `[-n, n]`.
pub fn principal_nodes(n: i64) -> Vec<Node> {
    let mut out = Vec::new();
    for k in -n..=n {
        out.push(Node { row: NodeRow::Top, k });
        out.push(Node { row: NodeRow::Bottom, k });
    }
    for k in -n + 1..=n {
        out.push(Node { row: NodeRow::MidA, k });
        out.push(Node { row: NodeRow::MidB, k });
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub from: Node,
    pub to: Node,
    pub label: String,
    /// `op(from) = coefficient * to`.
    pub coefficient: String,
}

/// Expected arrows, read from the picture: one line per arrow pattern with the
/// index offset from source to target.
pub const DIAGRAM_CSV: &str = include_str!("../data/gl11_diagram.csv");

#[derive(Clone, Debug, Deserialize)]
struct DiagramRow {
    source: String,
    label: String,
    target: String,
    offset: i64,
}

/// The expected arrow set `(from, label, to)` with both ends among `principal_nodes(n)`.
pub fn diagram_arrows(n: i64) -> Result<BTreeSet<(Node, String, Node)>> {
    let rows: Vec<DiagramRow> = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(DIAGRAM_CSV.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Invalid(format!("diagram data: {e}")))?;
    let nodes: BTreeSet<Node> = principal_nodes(n).into_iter().collect();
    let mut out = BTreeSet::new();
    for r in rows {
        let (Some(sr), Some(tr)) = (NodeRow::parse(&r.source), NodeRow::parse(&r.target)) else {
            return Err(Error::Invalid(format!("diagram data: unknown row in {} -> {}", r.source, r.target)));
        };
        for s in nodes.iter().filter(|x| x.row == sr) {
            let t = Node { row: tr, k: s.k + r.offset };
            if nodes.contains(&t) {
                out.insert((*s, r.label.clone(), t));
            }
        }
    }
    Ok(out)
}

/// Computed arrows among `principal_nodes(n)`. An operator image that is not a
/// multiple of a single node is reported with target row `None` in `stray`.
pub fn computed_arrows(ring: &GroupCoordinateRing, n: i64) -> (Vec<Arrow>, Vec<String>) {
    let nodes = principal_nodes(n);
    let ops = ring.arrow_ops();
    let mut arrows = Vec::new();
    let mut stray = Vec::new();
    for s in &nodes {
        let sv = s.vector();
        for (label, &k) in ARROW_LABELS.iter().zip(&ops) {
            let img = ring.act(k, &sv);
            if img.is_zero() {
                continue;
            }
            let hit = nodes.iter().find_map(|t| {
                let tv = t.vector();
                let (m, c) = tv.terms.iter().next_back()?;
                let coef = img.terms.get(m)? / c;
                (tv.scale(&coef) == img).then_some((*t, coef))
            });
            match hit {
                Some((t, coef)) => arrows.push(Arrow { from: *s, to: t, label: label.to_string(), coefficient: fmt_q(&coef) }),
                None => {
                    // Images leaving the node range are not arrows of the band.
                    let inside = img.terms.keys().all(|m| {
                        let (l, r) = (m.a + m.beta as i64, m.a + m.gamma as i64);
                        l.abs() <= n && r.abs() <= n
                    });
                    if inside {
                        stray.push(format!("{label}({s}) = {img}"));
                    }
                }
            }
        }
    }
    arrows.sort();
    (arrows, stray)
}

/// Vectors of `span(basis)` all of whose images under `ops` lie in `span(target)`.
fn preimage(ring: &GroupCoordinateRing, basis: &[GlFn], ops: &[usize], target: &[GlFn]) -> Vec<GlFn> {
    if basis.is_empty() {
        return vec![];
    }
    let images: Vec<Vec<GlFn>> = ops.iter().map(|&k| basis.iter().map(|b| ring.act(k, b)).collect()).collect();
    let idx = MonoIndex::new(images.iter().flatten().chain(target.iter()));
    let nb = basis.len();
    let nt = target.len();
    // Unknowns: c (nb) then y_op (nt each). Rows: op(sum c b) - sum y t = 0.
    let ncols = nb + ops.len() * nt;
    let mut rows = Vec::new();
    for (o, imgs) in images.iter().enumerate() {
        let cols: Vec<Vec<Rational>> = imgs.iter().map(|f| idx.coords(f)).collect();
        let tcols: Vec<Vec<Rational>> = target.iter().map(|f| idx.coords(f)).collect();
        for r in 0..idx.len() {
            let mut row = vec![Rational::zero(); ncols];
            for (j, c) in cols.iter().enumerate() {
                row[j] = c[r].clone();
            }
            for (j, c) in tcols.iter().enumerate() {
                row[nb + o * nt + j] = -c[r].clone();
            }
            rows.push(row);
        }
    }
    let sols = if rows.is_empty() {
        (0..nb).map(|i| (0..ncols).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
    } else {
        Matrix::from_rows(rows).kernel_basis()
    };
    let mut out: Vec<GlFn> = Vec::new();
    for s in sols {
        let mut f = GlFn::zero();
        for (j, c) in s.iter().take(nb).enumerate() {
            if !c.is_zero() {
                f = f.add(&basis[j].scale(c));
            }
        }
        if f.is_zero() {
            continue;
        }
        let mut t = out.clone();
        t.push(f.clone());
        if span_dim(&t) > out.len() {
            out.push(f);
        }
    }
    out
}

fn sdim_fns(fs: &[GlFn]) -> (usize, usize) {
    // Basis vectors here are parity-homogeneous by construction.
    let odd = fs.iter().filter(|f| f.terms.keys().next().is_some_and(|m| m.parity().is_odd())).count();
    (fs.len() - odd, odd)
}

/// Splits a subspace basis into even and odd parts (projections).
fn parity_split(fs: &[GlFn]) -> Vec<GlFn> {
    let mut out: Vec<GlFn> = Vec::new();
    for odd in [false, true] {
        for f in fs {
            let p = GlFn {
                terms: f.terms.iter().filter(|(m, _)| m.parity().is_odd() == odd).map(|(m, c)| (*m, c.clone())).collect(),
            };
            if p.is_zero() {
                continue;
            }
            let mut t = out.clone();
            t.push(p.clone());
            if span_dim(&t) > out.len() {
                out.push(p);
            }
        }
    }
    out
}

/// Socle filtration of the principal-block summand, computed inside
/// `principal_nodes(n + layers - k)` for the k-th layer so that no operator
/// image leaves the range where the previous layer is known.
pub fn socle_filtration(ring: &GroupCoordinateRing, n: i64, layers: usize) -> Vec<Vec<GlFn>> {
    let odd = ring.odd_ops();
    let mut prev: Vec<GlFn> = vec![];
    let mut out = Vec::new();
    for k in 1..=layers {
        let m = n + (layers - k) as i64;
        let basis: Vec<GlFn> = principal_nodes(m).iter().map(|x| x.vector()).collect();
        let cur = parity_split(&preimage(ring, &basis, &odd, &prev));
        out.push(cur.clone());
        prev = cur;
    }
    // Restrict each layer to the final range.
    let inner: Vec<GlFn> = principal_nodes(n).iter().map(|x| x.vector()).collect();
    out.into_iter().map(|l| intersect(&l, &inner)).collect()
}

fn intersect(a: &[GlFn], b: &[GlFn]) -> Vec<GlFn> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let idx = MonoIndex::new(a.iter().chain(b.iter()));
    let mut cols: Vec<Vec<Rational>> = a.iter().map(|f| idx.coords(f)).collect();
    cols.extend(b.iter().map(|f| idx.coords(f).into_iter().map(|c| -c).collect::<Vec<_>>()));
    let ker = Matrix::from_cols(idx.len(), &cols).kernel_basis();
    let fs: Vec<GlFn> = ker
        .into_iter()
        .map(|s| {
            let mut f = GlFn::zero();
            for (j, c) in s.iter().take(a.len()).enumerate() {
                if !c.is_zero() {
                    f = f.add(&a[j].scale(c));
                }
            }
            f
        })
        .filter(|f| !f.is_zero())
        .collect();
    parity_split(&fs)
}

/// One left-translation piece: the vectors of a fixed right index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeftPiece {
    pub right_index: i64,
    pub sdim: (usize, usize),
    pub left_weights: usize,
    pub socle_dim: usize,
    pub closed: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SocleReport {
    pub band: i64,
    pub block_sdim: (usize, usize),
    /// `sdim(soc^k / soc^(k-1))` for k = 1, 2, 3.
    pub layers: Vec<(usize, usize)>,
    pub loewy_length: usize,
    /// Socle equals the span of `Ber^k`, `|k| <= band`.
    pub socle_is_berezinian_span: bool,
    /// Socle equals the sum of the images of `epsilon_L` over the irreducibles of the block.
    pub socle_is_epsilon_sum: bool,
    pub epsilon_images_independent: bool,
    pub arrows: Vec<Arrow>,
    pub stray_images: Vec<String>,
    pub arrows_match_diagram: bool,
    pub missing_arrows: Vec<String>,
    pub extra_arrows: Vec<String>,
    /// Every bottom vector is the end of a path whose last arrow is left-odd and of one whose last arrow is right-odd.
    pub bottom_reached_both_sides: bool,
    /// Typical blocks near the band split off as sums of `epsilon_L` images.
    pub semisimple_blocks_split: bool,
    pub left_pieces: Vec<LeftPiece>,
    pub normalization: Vec<String>,
}

impl SocleReport {
    pub fn ok(&self) -> bool {
        self.layers.len() == 3
            && self.loewy_length == 3
            && self.socle_is_berezinian_span
            && self.socle_is_epsilon_sum
            && self.epsilon_images_independent
            && self.arrows_match_diagram
            && self.stray_images.is_empty()
            && self.bottom_reached_both_sides
            && self.semisimple_blocks_split
            && self.left_pieces.iter().all(|p| p.closed && p.sdim == (2, 2) && p.socle_dim == 1 && p.left_weights == 3)
    }
}

pub fn normalization_notes() -> Vec<String> {
    vec![
        "u = left E21, v = left E12, ubar = right E21, vbar = right E12".into(),
        "left translation L_X(Z_ij) = -sum_k (-1)^(|X|(|k|+|j|)) X_ik Z_kj, right translation R_X(Z) = Z X".into(),
        "top_k = a^(k-1) d^(-k-1) beta gamma".into(),
        "mid_a_k = a^(k-1) d^(-k) beta, mid_b_k = a^(k-1) d^(-k) gamma".into(),
        "bottom_k = Ber^k = a^k d^-k - k a^(k-1) d^(-k-1) beta gamma".into(),
    ]
}

pub fn verify_socle_and_block(band: i64) -> Result<SocleReport> {
    let ring = GroupCoordinateRing::new(band)?;
    let g = &ring.g;
    let layers_fns = socle_filtration(&ring, band, 3);
    let block: Vec<GlFn> = principal_nodes(band).iter().map(|x| x.vector()).collect();
    let block_sdim = sdim_fns(&block);
    let mut layers = Vec::new();
    let mut prev = (0, 0);
    for l in &layers_fns {
        let s = sdim_fns(l);
        layers.push((s.0 - prev.0, s.1 - prev.1));
        prev = s;
    }
    let loewy_length = layers_fns.iter().position(|l| l.len() == block.len()).map_or(0, |i| i + 1);
    let soc = &layers_fns[0];
    let ber: Vec<GlFn> = (-band..=band).map(berezinian_power).collect();
    let socle_is_berezinian_span = same_span(soc, &ber);
    let mut eps = Vec::new();
    let mut per_irrep = Vec::new();
    for k in -band..=band {
        let l = irreducible(g, Rational::from_integer(k.into()), Rational::from_integer((-k).into()));
        let map = matrix_coefficients(&ring, &l)?;
        per_irrep.push(map.image_dim);
        eps.extend(map.image_basis());
    }
    let socle_is_epsilon_sum = same_span(soc, &eps);
    let epsilon_images_independent = span_dim(&eps) == per_irrep.iter().sum::<usize>();

    let (arrows, stray_images) = computed_arrows(&ring, band);
    let expected = diagram_arrows(band)?;
    let got: BTreeSet<(Node, String, Node)> = arrows.iter().map(|a| (a.from, a.label.clone(), a.to)).collect();
    let fmt3 = |(a, l, b): &(Node, String, Node)| format!("{a} -{l}-> {b}");
    let missing_arrows: Vec<String> = expected.difference(&got).map(fmt3).collect();
    let extra_arrows: Vec<String> = got.difference(&expected).map(fmt3).collect();
    let coefficients_unit = arrows.iter().all(|a| a.coefficient == "1" || a.coefficient == "-1");
    let arrows_match_diagram = missing_arrows.is_empty() && extra_arrows.is_empty() && coefficients_unit;

    let bottom_reached_both_sides = (-band + 1..band).all(|k| {
        let b = Node { row: NodeRow::Bottom, k };
        let last: Vec<&Arrow> = arrows.iter().filter(|a| a.to == b).collect();
        let from_top = |a: &Arrow| arrows.iter().any(|t| t.from.row == NodeRow::Top && t.to == a.from);
        let left = last.iter().filter(|a| from_top(a)).any(|a| a.label == "u" || a.label == "v");
        let right = last.iter().filter(|a| from_top(a)).any(|a| a.label == "ubar" || a.label == "vbar");
        left && right
    });

    let semisimple_blocks_split = typical_blocks_split(&ring, band)?;
    let left_pieces = left_pieces(&ring, band);
    Ok(SocleReport {
        band,
        block_sdim,
        layers,
        loewy_length,
        socle_is_berezinian_span,
        socle_is_epsilon_sum,
        epsilon_images_independent,
        arrows,
        stray_images,
        arrows_match_diagram,
        missing_arrows,
        extra_arrows,
        bottom_reached_both_sides,
        semisimple_blocks_split,
        left_pieces,
        normalization: normalization_notes(),
    })
}

/// For central characters `s` with `0 < |s| <= 2`, every monomial of character
/// `s` with Laurent exponents in `[-band, band]` lies in the sum of the images
/// of `epsilon_L` over typical `L(l1, s - l1)`, and each image is a simple (2|2) piece.
fn typical_blocks_split(ring: &GroupCoordinateRing, band: i64) -> Result<bool> {
    let g = &ring.g;
    for s in [-2i64, -1, 1, 2] {
        let mut images = Vec::new();
        for l1 in -band - 3..=band + 3 {
            let l = irreducible(g, Rational::from_integer(l1.into()), Rational::from_integer((s - l1).into()));
            let map = matrix_coefficients(ring, &l)?;
            if !map.injective() || map.image_sdim != (2, 2) || !map.equivariance_ok {
                return Ok(false);
            }
            // Simple: the joint kernel of the odd operators on the image is 0.
            let basis = map.image_basis();
            if !preimage(ring, &basis, &ring.odd_ops(), &[]).is_empty() {
                return Ok(false);
            }
            images.extend(basis);
        }
        if span_dim(&images) != images.len() {
            return Ok(false);
        }
        let mons: Vec<GlFn> = ring
            .band_monomials()
            .into_iter()
            .filter(|m| m.central_character() == s)
            .map(GlFn::monomial)
            .collect();
        let mut all = images.clone();
        all.extend(mons);
        if span_dim(&all) != images.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn left_pieces(ring: &GroupCoordinateRing, band: i64) -> Vec<LeftPiece> {
    let left_odd: Vec<usize> = ring.g.odd_indices().into_iter().map(|i| ring.emb.first[i]).collect();
    let nodes = principal_nodes(band);
    (-band + 1..band)
        .map(|r| {
            let piece: Vec<GlFn> = nodes.iter().filter(|x| x.indices().1 == r).map(|x| x.vector()).collect();
            let closed = preimage(ring, &piece, &left_odd, &piece).len() == piece.len();
            let socle_dim = preimage(ring, &piece, &left_odd, &[]).len();
            let left_weights: BTreeSet<i64> = nodes.iter().filter(|x| x.indices().1 == r).map(|x| x.indices().0).collect();
            LeftPiece { right_index: r, sdim: sdim_fns(&piece), left_weights: left_weights.len(), socle_dim, closed }
        })
        .collect()
}

/// Graphviz rendering of the computed arrows: left arrows dashed, rows ranked.
pub fn to_dot(report: &SocleReport) -> String {
    let mut s = String::from("digraph principal_block {\n  rankdir=TB;\n  node [shape=point];\n");
    for n in &report.normalization {
        s.push_str(&format!("  // {n}\n"));
    }
    let nodes = principal_nodes(report.band);
    for row in [NodeRow::Top, NodeRow::MidA, NodeRow::MidB, NodeRow::Bottom] {
        let ids: Vec<String> = nodes.iter().filter(|x| x.row == row).map(|x| format!("\"{x}\"")).collect();
        s.push_str(&format!("  {{ rank=same; {} }}\n", ids.join("; ")));
    }
    for a in &report.arrows {
        let style = if a.label == "u" || a.label == "v" { "dashed" } else { "solid" };
        let label = if a.coefficient == "1" { a.label.clone() } else { format!("{} ({})", a.label, a.coefficient) };
        s.push_str(&format!("  \"{}\" -> \"{}\" [label=\"{}\", style={}];\n", a.from, a.to, label, style));
    }
    s.push_str("}\n");
    s
}
