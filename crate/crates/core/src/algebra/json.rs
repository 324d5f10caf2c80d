use super::{LieSuperalgebra, Realization, Weight};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Parity, SuperVectorSpace};
use crate::scalar::Rational;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizationDoc {
    pub even_dim: usize,
    pub odd_dim: usize,
    /// Per basis vector: nonzero entries `(row, col, num, den)`.
    pub matrices: Vec<Vec<(usize, usize, String, String)>>,
}

/// On-disk form of a [`LieSuperalgebra`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub name: String,
    pub even_dim: usize,
    pub odd_dim: usize,
    pub basis: Vec<BasisEntry>,
    pub cartan: Vec<usize>,
    pub frame_labels: Vec<String>,
    pub frame_weights: Vec<Weight>,
    /// `(i, j, k, num, den)` with `[x_i, x_j] = sum num/den x_k`.
    pub structure_constants: Vec<(usize, usize, usize, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<RealizationDoc>,
}

fn parse_frac(n: &str, d: &str) -> Result<Rational> {
    let n: BigInt = n.parse().map_err(|_| Error::Invalid(format!("bad numerator {n:?}")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Invalid(format!("bad denominator {d:?}")))?;
    if d == BigInt::from(0) {
        return Err(Error::Invalid("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}

impl AlgebraDoc {
    pub fn from_algebra(g: &LieSuperalgebra) -> Self {
        AlgebraDoc {
            name: g.name.clone(),
            even_dim: g.space.even_dim(),
            odd_dim: g.space.odd_dim(),
            basis: (0..g.dim()).map(|i| BasisEntry { label: g.label(i).to_string(), parity: g.parity(i) }).collect(),
            cartan: g.cartan.clone(),
            frame_labels: g.frame_labels.clone(),
            frame_weights: g.frame_weights.clone(),
            structure_constants: g
                .structure_constants()
                .into_iter()
                .map(|(i, j, k, c)| (i, j, k, c.numer().to_string(), c.denom().to_string()))
                .collect(),
            realization: g.realization.as_ref().map(|r| RealizationDoc {
                even_dim: r.even_dim,
                odd_dim: r.odd_dim,
                matrices: r
                    .matrices
                    .iter()
                    .map(|m| {
                        m.nonzeros()
                            .into_iter()
                            .map(|(i, j, v)| (i, j, v.numer().to_string(), v.denom().to_string()))
                            .collect()
                    })
                    .collect(),
            }),
        }
    }

    pub fn into_algebra(self) -> Result<LieSuperalgebra> {
        let d = self.basis.len();
        let space = SuperVectorSpace::new(
            self.basis.iter().map(|b| b.label.clone()).collect(),
            self.basis.iter().map(|b| b.parity).collect(),
        );
        if space.sdim() != (self.even_dim, self.odd_dim) {
            return Err(Error::Invalid("declared dimensions disagree with basis parities".into()));
        }
        let mut br = vec![Vec::new(); d * d];
        for (i, j, k, n, den) in &self.structure_constants {
            if *i >= d || *j >= d || *k >= d {
                return Err(Error::Invalid(format!("index out of range in ({i},{j},{k})")));
            }
            br[i * d + j].push((*k, parse_frac(n, den)?));
        }
        for v in &mut br {
            v.sort_by_key(|x| x.0);
        }
        let realization = match self.realization {
            None => None,
            Some(r) => {
                let big = r.even_dim + r.odd_dim;
                let mut mats = Vec::with_capacity(r.matrices.len());
                for entries in r.matrices {
                    let mut m = Matrix::zeros(big, big);
                    for (i, j, n, den) in entries {
                        m[(i, j)] = parse_frac(&n, &den)?;
                    }
                    mats.push(m);
                }
                Some(Realization { even_dim: r.even_dim, odd_dim: r.odd_dim, matrices: mats })
            }
        };
        LieSuperalgebra::from_table(
            self.name,
            space,
            br,
            self.cartan,
            self.frame_labels,
            Some(self.frame_weights),
            realization,
        )
    }
}

pub fn to_json(g: &LieSuperalgebra) -> String {
    serde_json::to_string_pretty(&AlgebraDoc::from_algebra(g)).expect("algebra documents serialize")
}

pub fn from_json(s: &str) -> Result<LieSuperalgebra> {
    let doc: AlgebraDoc = serde_json::from_str(s)?;
    doc.into_algebra()
}
