use super::{LieSuperalgebra, Weight};
use crate::linalg::Matrix;
use crate::scalar::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartanData {
    pub h0: Vec<usize>,
    /// Basis of the centralizer of h0 in g.
    pub h: Vec<Vec<Rational>>,
    pub h_sdim: (usize, usize),
    pub is_cartan_even: bool,
    pub lattice_labels: Vec<String>,
    /// Standard basis of the frame lattice.
    pub lattice_basis: Vec<Weight>,
}

/// Cartan subalgebra h: the kernel of the stacked `ad(h0_i)`.
pub fn cartan_data(g: &LieSuperalgebra) -> CartanData {
    let d = g.dim();
    let mut stacked = Matrix::zeros(0, d);
    for &i in &g.cartan {
        stacked = stacked.vstack(&g.ad(i));
    }
    let h = stacked.kernel_basis();
    let odd = g.odd_indices();
    let h_odd_dim = crate::linalg::span_rank(
        &h.iter().map(|v| odd.iter().map(|&k| v[k].clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        odd.len(),
    );
    let h_even_dim = h.len() - h_odd_dim;
    let f = g.frame_labels.len();
    CartanData {
        h0: g.cartan.clone(),
        h,
        h_sdim: (h_even_dim, h_odd_dim),
        is_cartan_even: h_odd_dim == 0,
        lattice_labels: g.frame_labels.clone(),
        lattice_basis: (0..f).map(|i| (0..f).map(|j| i64::from(i == j)).collect()).collect(),
    }
}

/// A linear functional on frame weights deciding positivity of roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Positivity {
    pub functional: Vec<i64>,
}

impl Positivity {
    /// Epsilon coordinates weighted far above delta coordinates, decreasing along each block.
    pub fn default_for(g: &LieSuperalgebra) -> Positivity {
        let f = g.frame_labels.len() as i64;
        let functional = g
            .frame_labels
            .iter()
            .enumerate()
            .map(|(c, l)| if l.starts_with('d') { f - c as i64 } else { 2 * f - c as i64 })
            .collect();
        Positivity { functional }
    }

    pub fn value(&self, w: &[i64]) -> i64 {
        self.functional.iter().zip(w).map(|(a, b)| a * b).sum()
    }

    pub fn negated(&self) -> Positivity {
        Positivity { functional: self.functional.iter().map(|x| -x).collect() }
    }

    /// Value on basis vector `i` of `g` (via its frame weight).
    pub fn on_basis(&self, g: &LieSuperalgebra, i: usize) -> i64 {
        self.value(&g.frame_weights[i])
    }

    /// Nonzero on every root vector.
    pub fn is_generic(&self, g: &LieSuperalgebra) -> bool {
        (0..g.dim()).all(|i| g.weights[i].iter().all(|&c| c == 0) || self.on_basis(g, i) != 0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootDatum {
    /// Nonzero h0-weights and the basis vectors spanning each weight space.
    pub roots: BTreeMap<Weight, Vec<usize>>,
    /// Basis vectors of weight zero (spanning h).
    pub zero_weight: Vec<usize>,
    pub positivity: Positivity,
}

impl RootDatum {
    pub fn is_positive(&self, g: &LieSuperalgebra, i: usize) -> bool {
        !self.zero_weight.contains(&i) && self.positivity.on_basis(g, i) > 0
    }

    pub fn positive_even(&self, g: &LieSuperalgebra) -> Vec<usize> {
        g.even_indices().into_iter().filter(|&i| self.is_positive(g, i)).collect()
    }

    pub fn negative_even(&self, g: &LieSuperalgebra) -> Vec<usize> {
        g.even_indices()
            .into_iter()
            .filter(|&i| !self.zero_weight.contains(&i) && self.positivity.on_basis(g, i) < 0)
            .collect()
    }

    /// h0 together with the positive even root vectors.
    pub fn even_borel(&self, g: &LieSuperalgebra) -> Vec<usize> {
        let mut b: Vec<usize> = g.cartan.clone();
        for i in self.positive_even(g) {
            if !b.contains(&i) {
                b.push(i);
            }
        }
        b.sort_unstable();
        b
    }
}

pub fn root_datum(g: &LieSuperalgebra, positivity: Positivity) -> RootDatum {
    let mut roots: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    let mut zero_weight = Vec::new();
    for i in 0..g.dim() {
        if g.weights[i].iter().all(|&c| c == 0) {
            zero_weight.push(i);
        } else {
            roots.entry(g.weights[i].clone()).or_default().push(i);
        }
    }
    RootDatum { roots, zero_weight, positivity }
}
