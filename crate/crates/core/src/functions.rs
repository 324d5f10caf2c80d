//! The super-polynomial algebra C[V] = S(V*) with its derivation action,
//! B-highest weight functions, weight monoids and the degree-bounded
//! sphericity test.

use crate::algebra::{fmt_weight, LieSuperalgebra, Weight};
use crate::error::{Error, Result};
use crate::hyperborel::{derived_even, Hyperborel};
use crate::linalg::{Matrix, Parity};
use crate::rep::{dual, even_restriction, Representation};
use crate::scalar::{fmt_q, Rational};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub const DEFAULT_DEGREE: usize = 8;

/// `x^e * xi_S`: exponents of the even generators and the set of odd generators
/// (bit `k` = k-th odd generator), odd factors in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub even: Vec<u32>,
    pub odd: u64,
}

impl Monomial {
    pub fn one(n_even: usize) -> Self {
        Monomial { even: vec![0; n_even], odd: 0 }
    }

    pub fn degree(&self) -> usize {
        self.even.iter().map(|&e| e as usize).sum::<usize>() + self.odd.count_ones() as usize
    }

    pub fn parity(&self) -> Parity {
        if self.odd.count_ones() % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_body(&self) -> bool {
        self.odd == 0
    }

    fn odd_list(&self) -> Vec<usize> {
        (0..64).filter(|k| self.odd >> k & 1 == 1).collect()
    }
}

/// Graded lexicographic: lower degree first, then larger even exponents, then odd subsets.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| o.even.cmp(&self.even))
            .then_with(|| self.odd_list().cmp(&o.odd_list()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sorts a list of odd generator positions; `None` if one repeats.
fn normalize_odd(list: &[usize]) -> Option<(u64, i64)> {
    let mut inv = 0usize;
    for i in 0..list.len() {
        for j in i + 1..list.len() {
            match list[i].cmp(&list[j]) {
                Ordering::Equal => return None,
                Ordering::Greater => inv += 1,
                Ordering::Less => {}
            }
        }
    }
    let mask = list.iter().fold(0u64, |m, &k| m | 1 << k);
    Some((mask, if inv.is_multiple_of(2) { 1 } else { -1 }))
}

/// An element of C[V]: sparse coefficients on monomials.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuperPoly {
    pub terms: BTreeMap<Monomial, Rational>,
}

impl SuperPoly {
    pub fn zero() -> Self {
        SuperPoly::default()
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = SuperPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &SuperPoly) -> SuperPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, s: &Rational) -> SuperPoly {
        if s.is_zero() {
            return SuperPoly::zero();
        }
        SuperPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    /// Product in the supercommutative algebra.
    pub fn mul(&self, o: &SuperPoly) -> SuperPoly {
        let mut r = SuperPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut list = m1.odd_list();
                list.extend(m2.odd_list());
                let Some((odd, s)) = normalize_odd(&list) else { continue };
                let even = m1.even.iter().zip(&m2.even).map(|(a, b)| a + b).collect();
                r.add_term(Monomial { even, odd }, c1 * c2 * Rational::from_integer(s.into()));
            }
        }
        r
    }

    /// Image under setting every odd generator to zero.
    pub fn body(&self) -> SuperPoly {
        SuperPoly { terms: self.terms.iter().filter(|(m, _)| m.is_body()).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// C[V] is a polynomial ring tensor an exterior algebra; an element is
    /// nilpotent exactly when its body vanishes.
    pub fn is_nilpotent(&self) -> bool {
        self.body().is_zero()
    }

    /// Scales so the first coefficient in monomial order is 1.
    pub fn normalized(&self) -> SuperPoly {
        match self.terms.values().next() {
            None => SuperPoly::zero(),
            Some(c) => self.scale(&(Rational::one() / c)),
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }

    pub fn fmt_with(&self, even: &[String], odd: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            for (i, &e) in m.even.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(even[i].clone()),
                    _ => factors.push(format!("{}^{}", even[i], e)),
                }
            }
            for i in m.odd_list() {
                factors.push(odd[i].clone());
            }
            let mono = factors.join("*");
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&mono),
                (false, true) => out.push_str(&fmt_q(&abs)),
                (false, false) => out.push_str(&format!("{}*{}", fmt_q(&abs), mono)),
            }
        }
        out
    }
}

/// C[V] truncated at degree `d_max`, with the g-action by derivations.
#[derive(Clone, Debug)]
pub struct SuperPolynomialAlgebra {
    pub algebra: String,
    /// Generator labels, even generators first in `even_labels`, odd in `odd_labels`.
    pub even_labels: Vec<String>,
    pub odd_labels: Vec<String>,
    pub even_weights: Vec<Weight>,
    pub odd_weights: Vec<Weight>,
    /// Length of a weight: the dimension of the Cartan subalgebra.
    pub rank: usize,
    pub d_max: usize,
    g_parities: Vec<Parity>,
    /// Per basis element of g, per generator (even ones first): its image as
    /// `(generator, coefficient)` pairs.
    images: Vec<Vec<Vec<(Slot, Rational)>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Even(usize),
    Odd(usize),
}

impl SuperPolynomialAlgebra {
    pub fn n_even(&self) -> usize {
        self.even_labels.len()
    }

    pub fn n_odd(&self) -> usize {
        self.odd_labels.len()
    }

    pub fn weight(&self, m: &Monomial) -> Weight {
        let mut w = vec![0i64; self.rank];
        for (i, &e) in m.even.iter().enumerate() {
            for (a, b) in w.iter_mut().zip(&self.even_weights[i]) {
                *a += e as i64 * b;
            }
        }
        for k in m.odd_list() {
            for (a, b) in w.iter_mut().zip(&self.odd_weights[k]) {
                *a += b;
            }
        }
        w
    }

    /// Weight of a homogeneous element (of its leading monomial).
    pub fn weight_of(&self, f: &SuperPoly) -> Option<Weight> {
        f.leading().map(|(m, _)| self.weight(m))
    }

    pub fn generator(&self, parity: Parity, k: usize) -> SuperPoly {
        let mut m = Monomial::one(self.n_even());
        match parity {
            Parity::Even => m.even[k] = 1,
            Parity::Odd => m.odd = 1 << k,
        }
        SuperPoly::monomial(m, Rational::one())
    }

    pub fn fmt(&self, f: &SuperPoly) -> String {
        f.fmt_with(&self.even_labels, &self.odd_labels)
    }

    /// All monomials of degree exactly `d`, in monomial order.
    pub fn monomials(&self, d: usize) -> Vec<Monomial> {
        let ne = self.n_even();
        let no = self.n_odd();
        let mut out = Vec::new();
        for k in 0..=d.min(no) {
            let masks = subsets(no, k);
            let mut evs = Vec::new();
            compositions(d - k, ne, &mut vec![0; ne], 0, &mut evs);
            for e in &evs {
                for &mask in &masks {
                    out.push(Monomial { even: e.clone(), odd: mask });
                }
            }
        }
        out.sort();
        out
    }

    /// Derivation of basis element `k` of g applied to a monomial.
    pub fn act_basis_on(&self, k: usize, m: &Monomial) -> SuperPoly {
        let mut out = SuperPoly::zero();
        let uodd = self.g_parities[k].is_odd();
        let odds = m.odd_list();
        // u(E) * Xi, E the even factor.
        for (a, &e) in m.even.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut base = m.even.clone();
            base[a] -= 1;
            for (slot, c) in &self.images[k][a] {
                let coef = c * Rational::from_integer((e as i64).into());
                match *slot {
                    Slot::Even(b) => {
                        let mut ev = base.clone();
                        ev[b] += 1;
                        out.add_term(Monomial { even: ev, odd: m.odd }, coef);
                    }
                    Slot::Odd(b) => {
                        let mut list = vec![b];
                        list.extend(&odds);
                        if let Some((odd, s)) = normalize_odd(&list) {
                            out.add_term(Monomial { even: base.clone(), odd }, coef * Rational::from_integer(s.into()));
                        }
                    }
                }
            }
        }
        // E * u(Xi): passing u over the first t odd factors costs (-1)^{|u| t}.
        for (t, &o) in odds.iter().enumerate() {
            let pass = if uodd && t % 2 == 1 { -1 } else { 1 };
            for (slot, c) in &self.images[k][self.n_even() + o] {
                match *slot {
                    Slot::Even(b) => {
                        let mut ev = m.even.clone();
                        ev[b] += 1;
                        let rest = m.odd & !(1 << o);
                        out.add_term(Monomial { even: ev, odd: rest }, c * Rational::from_integer(pass.into()));
                    }
                    Slot::Odd(b) => {
                        let mut list = odds.clone();
                        list[t] = b;
                        if let Some((odd, s)) = normalize_odd(&list) {
                            out.add_term(
                                Monomial { even: m.even.clone(), odd },
                                c * Rational::from_integer((s * pass).into()),
                            );
                        }
                    }
                }
            }
        }
        out
    }

    /// `u . f` for `u = sum c_k x_k`.
    pub fn act(&self, u: &[Rational], f: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (k, ck) in u.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (m, c) in &f.terms {
                out = out.add(&self.act_basis_on(k, m).scale(&(ck * c)));
            }
        }
        out
    }

    pub fn act_basis(&self, k: usize, f: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (m, c) in &f.terms {
            out = out.add(&self.act_basis_on(k, m).scale(c));
        }
        out
    }

    /// Matrix of basis element `k` on the degree-`d` monomials (columns = inputs).
    pub fn action_matrix(&self, k: usize, d: usize) -> Result<Matrix<Rational>> {
        self.check_degree(d)?;
        let mons = self.monomials(d);
        let index: BTreeMap<&Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = Matrix::zeros(mons.len(), mons.len());
        for (j, m) in mons.iter().enumerate() {
            for (r, c) in self.act_basis_on(k, m).terms {
                mat[(index[&r], j)] = c;
            }
        }
        Ok(mat)
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.d_max {
            Err(Error::DegreeBound { requested: d, bound: self.d_max })
        } else {
            Ok(())
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..n {
            go(i + 1, n, k - 1, cur | 1 << i, out);
        }
    }
    go(0, n, k, 0, &mut out);
    out
}

fn compositions(d: usize, n: usize, cur: &mut Vec<u32>, pos: usize, out: &mut Vec<Vec<u32>>) {
    if pos == n {
        if d == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if pos + 1 == n {
        cur[pos] = d as u32;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for e in (0..=d).rev() {
        cur[pos] = e as u32;
        compositions(d - e, n, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

/// C[V] with g acting by the derivations dual to the action on V.
pub fn derivation_action(g: &LieSuperalgebra, v: &Representation, d_max: usize) -> Result<SuperPolynomialAlgebra> {
    let vd = dual(g, v);
    let weights = vd.weights(g)?;
    let mut slot = Vec::with_capacity(v.dim());
    let (mut ne, mut no) = (0, 0);
    let mut even_labels = Vec::new();
    let mut odd_labels = Vec::new();
    let mut even_weights = Vec::new();
    let mut odd_weights = Vec::new();
    for i in 0..v.dim() {
        let label = format!("x{}", i + 1);
        if v.parity(i).is_odd() {
            slot.push(Slot::Odd(no));
            no += 1;
            odd_labels.push(format!("z{}", i + 1));
            odd_weights.push(weights[i].clone());
        } else {
            slot.push(Slot::Even(ne));
            ne += 1;
            even_labels.push(label);
            even_weights.push(weights[i].clone());
        }
    }
    if no > 64 {
        return Err(Error::Invalid(format!("{} odd generators exceed the supported 64", no)));
    }
    // Images ordered by slot: even generators, then odd ones.
    let order: Vec<usize> = {
        let mut o: Vec<usize> = (0..v.dim()).filter(|&i| !v.parity(i).is_odd()).collect();
        o.extend((0..v.dim()).filter(|&i| v.parity(i).is_odd()));
        o
    };
    let images = (0..g.dim())
        .map(|k| {
            order
                .iter()
                .map(|&a| {
                    let mut col = Vec::new();
                    for (r, c, x) in vd.action[k].nonzeros() {
                        if c == a {
                            col.push((slot[r], x));
                        }
                    }
                    col
                })
                .collect()
        })
        .collect();
    Ok(SuperPolynomialAlgebra {
        algebra: g.name.clone(),
        even_labels,
        odd_labels,
        even_weights,
        odd_weights,
        rank: g.cartan.len(),
        d_max,
        g_parities: (0..g.dim()).map(|k| g.parity(k)).collect(),
        images,
    })
}

/// Elements of g whose joint kernel defines B-highest weight functions: the
/// unipotent radical and the odd part of b.
pub fn killers(g: &LieSuperalgebra, b: &Hyperborel) -> Vec<Vec<Rational>> {
    let mut out = b.n.clone();
    out.extend(b.b1.iter().map(|&i| g.basis_vector(i)));
    out
}

/// B-eigenfunctions of one degree, weight and parity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HighestWeightBlock {
    pub degree: usize,
    pub weight: Weight,
    pub parity: Parity,
    /// Reduced-echelon basis, each normalized by its leading monomial.
    pub basis: Vec<SuperPoly>,
    /// Basis of the nilpotent part (body zero) of the span.
    pub nilpotent: Vec<SuperPoly>,
}

impl HighestWeightBlock {
    pub fn multiplicity(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the span modulo its nilpotent part.
    pub fn body_rank(&self) -> usize {
        self.basis.len() - self.nilpotent.len()
    }

    /// A basis element with nonzero body, if any.
    pub fn certificate(&self) -> Option<&SuperPoly> {
        self.basis.iter().find(|f| !f.is_nilpotent())
    }
}

fn rref_rows(rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return rows;
    }
    let ech = Matrix::from_rows(rows).echelon();
    ech.reduced.to_rows().into_iter().take(ech.pivots.len()).collect()
}

/// Joint kernel of `killers` on degree-`d` functions, split by weight and parity.
pub fn highest_weight_blocks(
    alg: &SuperPolynomialAlgebra,
    killers: &[Vec<Rational>],
    d: usize,
) -> Result<Vec<HighestWeightBlock>> {
    alg.check_degree(d)?;
    let mut groups: BTreeMap<(Weight, Parity), Vec<Monomial>> = BTreeMap::new();
    for m in alg.monomials(d) {
        groups.entry((alg.weight(&m), m.parity())).or_default().push(m);
    }
    let mut out = Vec::new();
    for ((weight, parity), cols) in groups {
        let mut keys: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
        let mut entries = Vec::new();
        for (j, m) in cols.iter().enumerate() {
            let single = SuperPoly::monomial(m.clone(), Rational::one());
            for (kk, u) in killers.iter().enumerate() {
                for (r, c) in alg.act(u, &single).terms {
                    let n = keys.len();
                    let row = *keys.entry((kk, r)).or_insert(n);
                    entries.push((row, j, c));
                }
            }
        }
        let mut mat = Matrix::zeros(keys.len(), cols.len());
        for (r, j, c) in entries {
            mat[(r, j)] = c;
        }
        let ker = rref_rows(mat.kernel_basis());
        if ker.is_empty() {
            continue;
        }
        let to_poly = |v: &[Rational]| {
            let mut p = SuperPoly::zero();
            for (j, c) in v.iter().enumerate() {
                p.add_term(cols[j].clone(), c.clone());
            }
            p
        };
        let body_cols: Vec<usize> = (0..cols.len()).filter(|&j| cols[j].is_body()).collect();
        // Combinations of kernel vectors with zero body.
        let kb = Matrix::from_rows(ker.clone());
        let nil_coeffs = if body_cols.is_empty() {
            Matrix::<Rational>::identity(ker.len()).to_rows()
        } else {
            kb.select_cols(&body_cols).transpose().kernel_basis()
        };
        let nil_vecs: Vec<Vec<Rational>> = nil_coeffs
            .iter()
            .map(|c| {
                let mut v = vec![Rational::zero(); cols.len()];
                for (i, ci) in c.iter().enumerate() {
                    if !ci.is_zero() {
                        for (j, x) in ker[i].iter().enumerate() {
                            v[j] += ci * x;
                        }
                    }
                }
                v
            })
            .collect();
        let nilpotent = rref_rows(nil_vecs).iter().map(|v| to_poly(v)).collect();
        out.push(HighestWeightBlock {
            degree: d,
            weight,
            parity,
            basis: ker.iter().map(|v| to_poly(v)).collect(),
            nilpotent,
        });
    }
    Ok(out)
}

/// Highest weight functions of all degrees `<= d`, computed per degree in parallel.
pub fn highest_weight_functions(
    alg: &SuperPolynomialAlgebra,
    killers: &[Vec<Rational>],
    d: usize,
) -> Result<Vec<HighestWeightBlock>> {
    alg.check_degree(d)?;
    let per: Vec<Result<Vec<HighestWeightBlock>>> =
        (0..=d).into_par_iter().map(|k| highest_weight_blocks(alg, killers, k)).collect();
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}

pub fn nilpotency_check(f: &SuperPoly) -> bool {
    f.is_nilpotent()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonoidEntry {
    pub weight: Weight,
    pub degree: usize,
    /// Total dimension of highest weight functions of this weight.
    pub multiplicity: usize,
    pub certificate: SuperPoly,
    pub certificate_text: String,
}

/// Weights of non-nilpotent B-highest weight functions up to a degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightMonoid {
    pub degree: usize,
    pub entries: Vec<MonoidEntry>,
    /// Weights carried only by nilpotent highest weight functions.
    pub nilpotent_only: Vec<Weight>,
}

impl WeightMonoid {
    pub fn weights(&self) -> BTreeSet<Weight> {
        self.entries.iter().map(|e| e.weight.clone()).collect()
    }

    pub fn contains(&self, w: &[i64]) -> bool {
        self.entries.iter().any(|e| e.weight == w)
    }
}

fn monoid_from_blocks(alg: &SuperPolynomialAlgebra, blocks: &[HighestWeightBlock], d: usize) -> WeightMonoid {
    let mut by_weight: BTreeMap<Weight, Vec<&HighestWeightBlock>> = BTreeMap::new();
    for b in blocks {
        by_weight.entry(b.weight.clone()).or_default().push(b);
    }
    let mut entries = Vec::new();
    let mut nilpotent_only = Vec::new();
    for (w, bs) in by_weight {
        let multiplicity = bs.iter().map(|b| b.multiplicity()).sum();
        match bs.iter().find_map(|b| b.certificate().map(|c| (b.degree, c))) {
            Some((degree, c)) => entries.push(MonoidEntry {
                weight: w,
                degree,
                multiplicity,
                certificate: c.clone(),
                certificate_text: alg.fmt(c),
            }),
            None => nilpotent_only.push(w),
        }
    }
    WeightMonoid { degree: d, entries, nilpotent_only }
}

pub fn weight_monoid(alg: &SuperPolynomialAlgebra, killers: &[Vec<Rational>], d: usize) -> Result<WeightMonoid> {
    let blocks = highest_weight_functions(alg, killers, d)?;
    Ok(monoid_from_blocks(alg, &blocks, d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Spherical,
    NotSpherical,
    InconclusiveAtDegree,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Spherical => "SPHERICAL",
            Status::NotSpherical => "NOT_SPHERICAL",
            Status::InconclusiveAtDegree => "INCONCLUSIVE_AT_DEGREE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    None,
    /// A B-highest weight function with zero body.
    NilpotentFunction { degree: usize, weight: Weight, function: SuperPoly, text: String },
    /// Two independent highest weight functions of one weight.
    Multiplicity { weight: Weight, functions: Vec<SuperPoly>, texts: Vec<String> },
    /// Generic rank of the evaluation map.
    Rank(crate::orbit::OrbitRankCertificate),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericityVerdict {
    pub status: Status,
    pub degree: usize,
    pub evidence: Evidence,
}

/// Degree-bounded search for negative evidence: a nilpotent highest weight
/// function, or a weight of multiplicity at least two.
pub fn affine_sphericity_test(
    alg: &SuperPolynomialAlgebra,
    killers: &[Vec<Rational>],
    d: usize,
) -> Result<SphericityVerdict> {
    let blocks = highest_weight_functions(alg, killers, d)?;
    Ok(verdict_from_blocks(alg, &blocks, d))
}

fn verdict_from_blocks(alg: &SuperPolynomialAlgebra, blocks: &[HighestWeightBlock], d: usize) -> SphericityVerdict {
    if let Some(b) = blocks.iter().find(|b| !b.nilpotent.is_empty()) {
        let f = b.nilpotent[0].clone();
        return SphericityVerdict {
            status: Status::NotSpherical,
            degree: d,
            evidence: Evidence::NilpotentFunction {
                degree: b.degree,
                weight: b.weight.clone(),
                text: alg.fmt(&f),
                function: f,
            },
        };
    }
    let mut by_weight: BTreeMap<&Weight, Vec<&SuperPoly>> = BTreeMap::new();
    for b in blocks {
        by_weight.entry(&b.weight).or_default().extend(b.basis.iter());
    }
    if let Some((w, fs)) = by_weight.into_iter().find(|(_, fs)| fs.len() >= 2) {
        let functions: Vec<SuperPoly> = fs.into_iter().take(2).cloned().collect();
        return SphericityVerdict {
            status: Status::NotSpherical,
            degree: d,
            evidence: Evidence::Multiplicity {
                weight: w.clone(),
                texts: functions.iter().map(|f| alg.fmt(f)).collect(),
                functions,
            },
        };
    }
    SphericityVerdict { status: Status::InconclusiveAtDegree, degree: d, evidence: Evidence::None }
}

/// Re-derives a negative verdict from its evidence alone.
pub fn recheck_evidence(alg: &SuperPolynomialAlgebra, killers: &[Vec<Rational>], v: &SphericityVerdict) -> bool {
    let is_hw = |f: &SuperPoly, w: &Weight| {
        !f.is_zero()
            && f.terms.keys().all(|m| &alg.weight(m) == w)
            && killers.iter().all(|u| alg.act(u, f).is_zero())
    };
    match &v.evidence {
        Evidence::NilpotentFunction { weight, function, .. } => {
            v.status == Status::NotSpherical && is_hw(function, weight) && function.is_nilpotent()
        }
        Evidence::Multiplicity { weight, functions, .. } => {
            if v.status != Status::NotSpherical || functions.len() < 2 || !functions.iter().all(|f| is_hw(f, weight)) {
                return false;
            }
            // Linear independence over the union of their monomials.
            let mons: BTreeSet<&Monomial> = functions.iter().flat_map(|f| f.terms.keys()).collect();
            let rows: Vec<Vec<Rational>> = functions
                .iter()
                .map(|f| mons.iter().map(|m| f.terms.get(*m).cloned().unwrap_or_else(Rational::zero)).collect())
                .collect();
            Matrix::from_rows(rows).rank() == functions.len()
        }
        _ => false,
    }
}

/// Per-weight count of highest weight functions with nonzero body.
pub fn socle_multiplicity_report(
    alg: &SuperPolynomialAlgebra,
    killers: &[Vec<Rational>],
    d: usize,
) -> Result<BTreeMap<Weight, usize>> {
    let mut out = BTreeMap::new();
    for b in highest_weight_functions(alg, killers, d)? {
        if b.body_rank() > 0 {
            *out.entry(b.weight).or_insert(0) += b.body_rank();
        }
    }
    Ok(out)
}

/// Everything needed to run the function-side tests for `V` and a hyperborel.
#[derive(Clone, Debug)]
pub struct FunctionModel {
    pub alg: SuperPolynomialAlgebra,
    pub killers: Vec<Vec<Rational>>,
}

impl FunctionModel {
    pub fn new(g: &LieSuperalgebra, v: &Representation, b: &Hyperborel, d_max: usize) -> Result<Self> {
        Ok(FunctionModel { alg: derivation_action(g, v, d_max)?, killers: killers(g, b) })
    }

    /// The even model: C[V_0] under g0 with the Borel b0.
    pub fn even(g: &LieSuperalgebra, v: &Representation, b: &Hyperborel, d_max: usize) -> Result<Self> {
        let (g0, v0) = even_restriction(g, v);
        let idx = g.even_indices();
        let b0: Vec<usize> = b.b0.iter().map(|i| idx.iter().position(|x| x == i).expect("b0 is even")).collect();
        let killers = derived_even(&g0, &b0).basis().to_vec();
        Ok(FunctionModel { alg: derivation_action(&g0, &v0, d_max)?, killers })
    }

    pub fn blocks(&self, d: usize) -> Result<Vec<HighestWeightBlock>> {
        highest_weight_functions(&self.alg, &self.killers, d)
    }

    pub fn monoid(&self, d: usize) -> Result<WeightMonoid> {
        weight_monoid(&self.alg, &self.killers, d)
    }

    pub fn verdict(&self, d: usize) -> Result<SphericityVerdict> {
        affine_sphericity_test(&self.alg, &self.killers, d)
    }

    pub fn monoid_and_verdict(&self, d: usize) -> Result<(WeightMonoid, SphericityVerdict)> {
        let blocks = self.blocks(d)?;
        Ok((monoid_from_blocks(&self.alg, &blocks, d), verdict_from_blocks(&self.alg, &blocks, d)))
    }
}

/// Coordinates of `w` in terms of `basis` weights, if integral and unique.
pub fn lattice_coords(w: &[i64], basis: &[Weight]) -> Option<Vec<i64>> {
    if basis.is_empty() {
        return w.iter().all(|&c| c == 0).then(Vec::new);
    }
    let r = w.len();
    let cols: Vec<Vec<Rational>> =
        basis.iter().map(|b| b.iter().map(|&c| Rational::from_integer(c.into())).collect()).collect();
    let a = Matrix::from_cols(r, &cols);
    if a.rank() < basis.len() {
        return None;
    }
    let rhs: Vec<Rational> = w.iter().map(|&c| Rational::from_integer(c.into())).collect();
    let x = a.solve(&rhs)?;
    x.iter().map(|c| if c.is_integer() { crate::scalar::as_small_int(c) } else { None }).collect()
}

/// Weight strings for a monoid, in the frame of g when the weights are h0-weights.
pub fn weight_label(g: &LieSuperalgebra, w: &[i64]) -> String {
    let labels: Vec<String> = g.cartan.iter().map(|&h| g.label(h).to_string()).collect();
    fmt_weight(w, &labels)
}
