#![allow(dead_code)]

use superspherical::algebra::LieSuperalgebra;
use superspherical::linalg::Subspace;
use superspherical::Rational;

/// Exhaustive hyperborel search over all subsets of odd basis vectors.
pub fn brute_force_odd_sets(g: &LieSuperalgebra, b0: &[usize]) -> Vec<Vec<usize>> {
    let odd = g.odd_indices();
    let k = odd.len();
    assert!(k <= 20);
    let e: Vec<Vec<Rational>> = b0.iter().map(|&i| g.basis_vector(i)).collect();
    let mut derived = Subspace::new(g.dim());
    for x in &e {
        for y in &e {
            derived.insert(&g.bracket(x, y));
        }
    }
    let mut admissible: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << k) {
        let set: Vec<usize> = (0..k).filter(|&a| mask >> a & 1 == 1).map(|a| odd[a]).collect();
        let vs: Vec<Vec<Rational>> = set.iter().map(|&i| g.basis_vector(i)).collect();
        let span = Subspace::spanned_by(g.dim(), &vs);
        let brackets_ok = vs.iter().all(|x| vs.iter().all(|y| derived.contains(&g.bracket(x, y))));
        let closed = e.iter().all(|x| vs.iter().all(|y| span.contains(&g.bracket(x, y))));
        if brackets_ok && closed {
            admissible.push(set);
        }
    }
    let mut out: Vec<Vec<usize>> = admissible
        .iter()
        .filter(|s| !admissible.iter().any(|t| t.len() > s.len() && s.iter().all(|x| t.contains(x))))
        .cloned()
        .collect();
    out.sort();
    out
}

use superspherical::algebra::{construct, root_datum, Family, Positivity};
use superspherical::functions::{lattice_coords, FunctionModel, WeightMonoid};
use superspherical::hyperborel::{distinguished, Hyperborel};
use superspherical::rep::{standard_rep, sym2, Representation};

/// GL(1|2) on S^2 C^{1|2} with the distinguished hyperborel for the default
/// positivity (`upper`) or its negative.
pub fn gl12_s2(upper: bool) -> (LieSuperalgebra, Representation, Hyperborel) {
    let g = construct(Family::Gl, 1, 2).unwrap();
    let v = sym2(&g, &standard_rep(&g).unwrap());
    let pos = Positivity::default_for(&g);
    let pos = if upper { pos } else { pos.negated() };
    let b = distinguished(&g, &root_datum(&g, pos)).unwrap();
    (g, v, b)
}

/// Monoid weights in coordinates of the even generators `(x, y)`.
pub fn monoid_coords(fm: &FunctionModel, m: &WeightMonoid) -> std::collections::BTreeSet<(i64, i64)> {
    m.entries
        .iter()
        .map(|e| {
            let c = lattice_coords(&e.weight, &fm.alg.even_weights).expect("weight in the even lattice");
            (c[0], c[1])
        })
        .collect()
}

/// The two monoid figures: `{(0,0)} ∪ {j >= 1}` for B+, `{(0,0)} ∪ {i >= 1}` for B-.
pub fn expected_figure(upper: bool, d: i64) -> std::collections::BTreeSet<(i64, i64)> {
    let mut out = std::collections::BTreeSet::new();
    for i in 0..=d {
        for j in 0..=d - i {
            let keep = (i, j) == (0, 0) || if upper { j >= 1 } else { i >= 1 };
            if keep {
                out.insert((i, j));
            }
        }
    }
    out
}
