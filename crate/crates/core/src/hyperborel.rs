//! Hyperborel subalgebras: a Borel b0 of g0 extended by odd weight vectors with
//! `[b1, b1]` inside `[b0, b0]`, maximal with this property.

use crate::algebra::{fmt_weight, LieSuperalgebra, Positivity, RootDatum, Weight};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Rational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperborel {
    pub algebra: String,
    pub positivity: Positivity,
    /// Even basis indices: h0 and the positive even root vectors.
    pub b0: Vec<usize>,
    /// Odd basis indices.
    pub b1: Vec<usize>,
    /// Basis of the unipotent radical, as coordinate vectors in g.
    pub n: Vec<Vec<Rational>>,
    pub torus: Vec<usize>,
}

impl Hyperborel {
    pub fn indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.b0.iter().chain(&self.b1).copied().collect();
        v.sort_unstable();
        v
    }

    pub fn sdim(&self) -> (usize, usize) {
        (self.b0.len(), self.b1.len())
    }

    pub fn dim(&self) -> usize {
        self.b0.len() + self.b1.len()
    }

    /// Weight labels of the odd part, in basis order.
    pub fn odd_weights(&self, g: &LieSuperalgebra) -> Vec<String> {
        self.b1.iter().map(|&i| fmt_weight(&g.frame_weights[i], &g.frame_labels)).collect()
    }

    pub fn to_doc(&self, g: &LieSuperalgebra) -> HyperborelDoc {
        HyperborelDoc {
            algebra: self.algebra.clone(),
            positivity: self.positivity.functional.clone(),
            even_roots: self
                .b0
                .iter()
                .filter(|i| !g.cartan.contains(i))
                .map(|&i| fmt_weight(&g.frame_weights[i], &g.frame_labels))
                .collect(),
            odd: self.odd_weights(g),
            odd_basis: self.b1.iter().map(|&i| g.label(i).to_string()).collect(),
            sdim: self.sdim(),
            n_dim: self.n.len(),
        }
    }
}

/// Serialized hyperborel: root labels of the even and odd parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperborelDoc {
    pub algebra: String,
    pub positivity: Vec<i64>,
    pub even_roots: Vec<String>,
    pub odd: Vec<String>,
    pub odd_basis: Vec<String>,
    pub sdim: (usize, usize),
    pub n_dim: usize,
}

fn nonzero(v: &[Rational]) -> bool {
    v.iter().any(|c| !c.is_zero())
}

/// `[b0, b0]` for a set of even basis indices.
pub fn derived_even(g: &LieSuperalgebra, b0: &[usize]) -> Subspace<Rational> {
    let vs: Vec<Vec<Rational>> = b0.iter().map(|&i| g.basis_vector(i)).collect();
    g.bracket_span(&vs, &vs)
}

/// Compatibility of odd candidates: `[x_i, x_j]` lies in `[b0, b0]`.
struct Compat {
    cand: Vec<usize>,
    adj: Vec<Vec<bool>>,
}

impl Compat {
    fn new(g: &LieSuperalgebra, b0: &[usize]) -> Compat {
        let d = derived_even(g, b0);
        let cand = g.odd_indices();
        let k = cand.len();
        let mut adj = vec![vec![false; k]; k];
        for a in 0..k {
            for b in a..k {
                let v = g.bracket(&g.basis_vector(cand[a]), &g.basis_vector(cand[b]));
                let ok = !nonzero(&v) || d.contains(&v);
                adj[a][b] = ok;
                adj[b][a] = ok;
            }
        }
        Compat { cand, adj }
    }

}

/// Largest subset of `set` (candidate positions) stable under `ad b0`.
fn b0_core(g: &LieSuperalgebra, b0: &[usize], c: &Compat, set: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut s = set.clone();
    loop {
        let members: BTreeSet<usize> = s.iter().map(|&p| c.cand[p]).collect();
        let drop: Vec<usize> = s
            .iter()
            .copied()
            .filter(|&p| {
                b0.iter().any(|&e| g.bracket_basis(e, c.cand[p]).iter().any(|(k, _)| !members.contains(k)))
            })
            .collect();
        if drop.is_empty() {
            return s;
        }
        for p in drop {
            s.remove(&p);
        }
    }
}

fn is_b0_closed(g: &LieSuperalgebra, b0: &[usize], odd: &[usize]) -> Option<(usize, usize)> {
    for &e in b0 {
        for &s in odd {
            if g.bracket_basis(e, s).iter().any(|(k, _)| !odd.contains(k)) {
                return Some((e, s));
            }
        }
    }
    None
}

fn bron_kerbosch(adj: &[Vec<bool>], r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    let pivot = p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count()).unwrap();
    let mut p = p;
    let mut x = x;
    let branch: Vec<usize> = p.iter().copied().filter(|&v| v == pivot || !adj[pivot][v]).collect();
    for v in branch {
        r.push(v);
        let np = p.iter().copied().filter(|&w| w != v && adj[v][w]).collect();
        let nx = x.iter().copied().filter(|&w| w != v && adj[v][w]).collect();
        bron_kerbosch(adj, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

fn maximal_only(sets: Vec<BTreeSet<usize>>) -> Vec<BTreeSet<usize>> {
    let mut uniq: Vec<BTreeSet<usize>> = Vec::new();
    for s in sets {
        if !uniq.contains(&s) {
            uniq.push(s);
        }
    }
    uniq.iter().filter(|s| !uniq.iter().any(|t| t != *s && s.is_subset(t))).cloned().collect()
}

/// Odd index sets of all hyperborels extending the even Borel `b0`.
pub fn maximal_odd_sets(g: &LieSuperalgebra, b0: &[usize]) -> Vec<Vec<usize>> {
    let c = Compat::new(g, b0);
    // Vertices that are incompatible with themselves can never be used.
    let usable: Vec<usize> = (0..c.cand.len()).filter(|&a| c.adj[a][a]).collect();
    let mut cliques = Vec::new();
    bron_kerbosch(&c.adj, &mut Vec::new(), usable, Vec::new(), &mut cliques);
    let cores: Vec<BTreeSet<usize>> =
        cliques.into_iter().map(|cl| b0_core(g, b0, &c, &cl.into_iter().collect())).collect();
    let mut out: Vec<Vec<usize>> =
        maximal_only(cores).into_iter().map(|s| s.into_iter().map(|p| c.cand[p]).collect()).collect();
    for v in &mut out {
        v.sort_unstable();
    }
    out.sort();
    out
}

/// Unipotent radical: `[b, b]` plus the odd part of b outside h.
pub fn unipotent_radical(g: &LieSuperalgebra, b0: &[usize], b1: &[usize]) -> Vec<Vec<Rational>> {
    let vs: Vec<Vec<Rational>> = b0.iter().chain(b1).map(|&i| g.basis_vector(i)).collect();
    let mut n = g.bracket_span(&vs, &vs);
    for &i in b1 {
        if g.weights[i].iter().any(|&c| c != 0) {
            n.insert(&g.basis_vector(i));
        }
    }
    n.basis().to_vec()
}

fn assemble(g: &LieSuperalgebra, positivity: &Positivity, b0: &[usize], b1: Vec<usize>) -> Hyperborel {
    let n = unipotent_radical(g, b0, &b1);
    Hyperborel {
        algebra: g.name.clone(),
        positivity: positivity.clone(),
        b0: b0.to_vec(),
        b1,
        n,
        torus: g.cartan.clone(),
    }
}

/// All hyperborels whose even part is the Borel of `rd`, sorted by odd index set.
///
/// The Weyl-stabilizer of a Borel of g0 is trivial, so no further deduplication occurs.
pub fn extend_to_hyperborels(g: &LieSuperalgebra, rd: &RootDatum) -> Vec<Hyperborel> {
    let b0 = rd.even_borel(g);
    maximal_odd_sets(g, &b0).into_iter().map(|b1| assemble(g, &rd.positivity, &b0, b1)).collect()
}

/// Hyperborels extending `rd`'s Borel whose odd part contains `start`.
pub fn extensions_containing(g: &LieSuperalgebra, rd: &RootDatum, start: &[usize]) -> Vec<Hyperborel> {
    extend_to_hyperborels(g, rd).into_iter().filter(|b| start.iter().all(|s| b.b1.contains(s))).collect()
}

/// The hyperborel whose odd part is exactly the positive odd root vectors, if it is one.
pub fn distinguished(g: &LieSuperalgebra, rd: &RootDatum) -> Option<Hyperborel> {
    let pos: Vec<usize> = g.odd_indices().into_iter().filter(|&i| rd.is_positive(g, i)).collect();
    extend_to_hyperborels(g, rd).into_iter().find(|b| b.b1 == pos)
}

/// Builds a hyperborel record from explicit index sets without checking it.
pub fn from_parts(g: &LieSuperalgebra, positivity: &Positivity, b0: Vec<usize>, b1: Vec<usize>) -> Hyperborel {
    assemble(g, positivity, &b0, b1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// b0 is not h0 plus a closed half of the even roots.
    EvenNotBorel { detail: String },
    /// `[x, y]` for odd `x, y` in b leaves `[b0, b0]`.
    Bracket { left: String, right: String },
    /// `[e, s]` leaves b.
    NotSubalgebra { even: String, odd: String },
    /// These odd vectors can be added keeping the other axioms.
    NotMaximal { addable: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperborelReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// `n` is an ideal of `b`.
    pub n_ideal: bool,
    pub n_nilpotent: bool,
    pub quotient_abelian: bool,
    /// `b = h0 + n` as vector spaces.
    pub semidirect: bool,
}

fn even_borel_problem(g: &LieSuperalgebra, b0: &[usize]) -> Option<String> {
    for &h in &g.cartan {
        if !b0.contains(&h) {
            return Some(format!("missing Cartan element {}", g.label(h)));
        }
    }
    if let Some(&i) = b0.iter().find(|i| g.parity(**i).is_odd()) {
        return Some(format!("odd element {} in b0", g.label(i)));
    }
    let vs: Vec<Vec<Rational>> = b0.iter().map(|&i| g.basis_vector(i)).collect();
    if let Some((i, j, _)) = g.closure_violation(&vs) {
        return Some(format!("[{}, {}] leaves b0", g.label(b0[i]), g.label(b0[j])));
    }
    for i in g.even_indices() {
        let w: &Weight = &g.weights[i];
        if w.iter().all(|&c| c == 0) {
            continue;
        }
        let neg: Weight = w.iter().map(|c| -c).collect();
        let has_pos = b0.iter().any(|&k| &g.weights[k] == w);
        let has_neg = b0.iter().any(|&k| g.weights[k] == neg);
        if has_pos == has_neg {
            return Some(format!("root {} and its negative are both {}", fmt_weight(&g.frame_weights[i], &g.frame_labels), if has_pos { "in" } else { "absent" }));
        }
    }
    None
}

fn is_nilpotent(g: &LieSuperalgebra, n: &[Vec<Rational>]) -> bool {
    // Lower central series; each term sits inside the previous one.
    let mut cur = n.to_vec();
    while !cur.is_empty() {
        let next = g.bracket_span(n, &cur);
        if next.dim() == cur.len() {
            return false;
        }
        cur = next.basis().to_vec();
    }
    true
}

/// Checks the hyperborel axioms and the structure of `n`.
pub fn verify_hyperborel(g: &LieSuperalgebra, b: &Hyperborel) -> HyperborelReport {
    let mut violations = Vec::new();
    if let Some(detail) = even_borel_problem(g, &b.b0) {
        violations.push(Violation::EvenNotBorel { detail });
    }
    let d = derived_even(g, &b.b0);
    'outer: for (a, &x) in b.b1.iter().enumerate() {
        for &y in &b.b1[a..] {
            let v = g.bracket(&g.basis_vector(x), &g.basis_vector(y));
            if nonzero(&v) && !d.contains(&v) {
                violations.push(Violation::Bracket { left: g.label(x).into(), right: g.label(y).into() });
                break 'outer;
            }
        }
    }
    if let Some((e, s)) = is_b0_closed(g, &b.b0, &b.b1) {
        violations.push(Violation::NotSubalgebra { even: g.label(e).into(), odd: g.label(s).into() });
    }
    if violations.is_empty() {
        let sets = maximal_odd_sets(g, &b.b0);
        let mine: BTreeSet<usize> = b.b1.iter().copied().collect();
        if !sets.iter().any(|s| s.iter().copied().collect::<BTreeSet<_>>() == mine) {
            if let Some(sup) = sets.iter().find(|s| mine.iter().all(|x| s.contains(x))) {
                let addable = sup.iter().filter(|x| !mine.contains(x)).map(|&x| g.label(x).to_string()).collect();
                violations.push(Violation::NotMaximal { addable });
            }
        }
    }
    let bvec: Vec<Vec<Rational>> = b.indices().iter().map(|&i| g.basis_vector(i)).collect();
    let nspace = Subspace::spanned_by(g.dim(), &b.n);
    let n_ideal = bvec.iter().all(|x| b.n.iter().all(|y| nspace.contains(&g.bracket(x, y))));
    let bb = g.bracket_span(&bvec, &bvec);
    let quotient_abelian = bb.basis().iter().all(|v| nspace.contains(v));
    let mut hn = nspace.clone();
    for &h in &b.torus {
        hn.insert(&g.basis_vector(h));
    }
    let semidirect = hn.dim() == b.dim() && hn.dim() == nspace.dim() + b.torus.len();
    HyperborelReport {
        ok: violations.is_empty(),
        violations,
        n_ideal,
        n_nilpotent: is_nilpotent(g, &b.n),
        quotient_abelian,
        semidirect,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterLattice {
    /// Lattice basis in coordinates dual to the h0 basis.
    pub basis: Vec<Vec<Rational>>,
    pub rank: usize,
    pub h0_dim: usize,
    /// `dim([b, b] ∩ h0)`.
    pub derived_torus_dim: usize,
}

/// Weights of h0 vanishing on `[b, b] ∩ h0`.
pub fn character_lattice(g: &LieSuperalgebra, b: &Hyperborel) -> CharacterLattice {
    let bvec: Vec<Vec<Rational>> = b.indices().iter().map(|&i| g.basis_vector(i)).collect();
    let bb = g.bracket_span(&bvec, &bvec);
    let h0 = g.coordinate_span(&b.torus);
    let meet = bb.intersection(&h0);
    let r = b.torus.len();
    let rows: Vec<Vec<Rational>> =
        meet.basis().iter().map(|v| b.torus.iter().map(|&h| v[h].clone()).collect()).collect();
    let basis = if rows.is_empty() {
        Matrix::<Rational>::identity(r).to_rows()
    } else {
        Matrix::from_rows(rows).kernel_basis()
    };
    CharacterLattice { rank: basis.len(), basis, h0_dim: r, derived_torus_dim: meet.dim() }
}
