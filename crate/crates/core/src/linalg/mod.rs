//! Exact linear algebra over Q and Q(t).

mod bareiss;
mod eigen;
mod matrix;
mod poly;
mod superspace;

pub use bareiss::{
    bareiss, const_poly_matrix, generic_rank, is_zero_matrix, rank_ratfunc, sample_points, sampled_full_rank,
    BareissTrail, GenericRank, PolyMatrix, RankMethod,
};
pub use eigen::{minimal_polynomial, rational_roots, rational_spectrum};
pub use matrix::{span_rank, Echelon, Matrix, Subspace};
pub use poly::{Exponents, Poly, RatFunc};
pub use superspace::{koszul, Parity, SuperVectorSpace};

use crate::scalar::Rational;

/// Rank of a rational-function matrix over its fraction field.
pub fn rank(m: &[Vec<RatFunc>], nvars: usize) -> usize {
    rank_ratfunc(m, nvars)
}

/// Right-kernel basis of a rational matrix.
pub fn kernel_basis(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    m.kernel_basis()
}
