use serde::{Deserialize, Serialize};
use std::fmt;

/// Z/2 grading of a homogeneous basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn add(self, o: Parity) -> Parity {
        if self == o {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }
}

/// Koszul sign (-1)^(|a||b|).
pub fn koszul(a: Parity, b: Parity) -> i64 {
    if a.is_odd() && b.is_odd() {
        -1
    } else {
        1
    }
}

/// A super vector space with a labelled homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperVectorSpace {
    pub labels: Vec<String>,
    pub parities: Vec<Parity>,
}

impl SuperVectorSpace {
    pub fn new(labels: Vec<String>, parities: Vec<Parity>) -> Self {
        assert_eq!(labels.len(), parities.len(), "one parity per label");
        SuperVectorSpace { labels, parities }
    }

    pub fn even_dim(&self) -> usize {
        self.parities.iter().filter(|p| !p.is_odd()).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.parities.iter().filter(|p| p.is_odd()).count()
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn sdim(&self) -> (usize, usize) {
        (self.even_dim(), self.odd_dim())
    }

    pub fn indices(&self, p: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parities[i] == p).collect()
    }

    pub fn check(&self) -> bool {
        self.labels.len() == self.parities.len()
    }
}

impl fmt::Display for SuperVectorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even_dim(), self.odd_dim())
    }
}
