use proptest::prelude::*;
use superspherical::linalg::{
    bareiss, generic_rank, kernel_basis, rank, rational_spectrum, sample_points, Matrix, Parity, Poly, PolyMatrix,
    RatFunc, SuperVectorSpace,
};
use superspherical::scalar::{fmt_q, parse_q, q, qf};
use superspherical::Rational;

fn t(nvars: usize, i: usize) -> Poly {
    Poly::var(nvars, i)
}

fn c(nvars: usize, v: i64) -> Poly {
    Poly::constant(nvars, q(v))
}

#[test]
fn rationals_stay_reduced() {
    let x = qf(6, -4);
    assert_eq!(fmt_q(&x), "-3/2");
    assert_eq!(*x.denom(), 2.into());
    assert_eq!(parse_q("10/4"), Some(qf(5, 2)));
    assert_eq!(parse_q("1/0"), None);
}

#[test]
fn super_vector_space_counts() {
    let v = SuperVectorSpace::new(
        vec!["x".into(), "y".into(), "xi".into()],
        vec![Parity::Even, Parity::Even, Parity::Odd],
    );
    assert_eq!(v.sdim(), (2, 1));
    assert!(v.check());
}

#[test]
fn identity_has_full_rank() {
    let m = vec![
        vec![RatFunc::from_poly(c(1, 1)), RatFunc::from_poly(c(1, 0))],
        vec![RatFunc::from_poly(c(1, 0)), RatFunc::from_poly(c(1, 1))],
    ];
    assert_eq!(rank(&m, 1), 2);
}

#[test]
fn proportional_rows_have_rank_one() {
    // [[t, 1], [t^2, t]]
    let tt = t(1, 0);
    let m = vec![
        vec![RatFunc::from_poly(tt.clone()), RatFunc::from_poly(c(1, 1))],
        vec![RatFunc::from_poly(tt.mul(&tt)), RatFunc::from_poly(tt.clone())],
    ];
    assert_eq!(rank(&m, 1), 1);
}

#[test]
fn rational_function_entries() {
    // [[1/t, 1], [1, t]] has rank 1; [[1/t, 1], [1, 1/t]] has rank 2.
    let tt = t(1, 0);
    let inv = RatFunc::new(c(1, 1), tt.clone());
    let one = RatFunc::from_poly(c(1, 1));
    let m1 = vec![vec![inv.clone(), one.clone()], vec![one.clone(), RatFunc::from_poly(tt)]];
    let m2 = vec![vec![inv.clone(), one.clone()], vec![one, inv]];
    assert_eq!(rank(&m1, 1), 1);
    assert_eq!(rank(&m2, 1), 2);
}

#[test]
fn empty_matrix_rank_zero() {
    assert_eq!(rank(&[], 2), 0);
    assert_eq!(Matrix::<Rational>::zeros(0, 3).rank(), 0);
}

#[test]
fn kernel_examples() {
    assert_eq!(kernel_basis(&Matrix::zeros(2, 2)).len(), 2);
    assert!(kernel_basis(&Matrix::identity(3)).is_empty());
}

#[test]
fn bareiss_pivots_are_row_major_first_nonzero() {
    let n = 2;
    let mut m = PolyMatrix::zeros(n, 3, 3);
    m.entries[0][1] = t(n, 0);
    m.entries[1][0] = t(n, 1);
    m.entries[2][2] = t(n, 0).add(&t(n, 1));
    let trail = bareiss(&m);
    assert_eq!(trail.rank, 3);
    assert_eq!(trail.pivots[0], (0, 1));
}

#[test]
fn rational_spectrum_examples() {
    assert_eq!(rational_spectrum(&Matrix::from_i64(&[&[2, 0], &[0, -1]])), Some(vec![q(-1), q(2)]));
    // Nilpotent Jordan block: not diagonalizable.
    assert_eq!(rational_spectrum(&Matrix::from_i64(&[&[0, 1], &[0, 0]])), None);
    // Rotation by 90 degrees: eigenvalues +-i.
    assert_eq!(rational_spectrum(&Matrix::from_i64(&[&[0, -1], &[1, 0]])), None);
}

/// Oracle for generic rank: maximum of specialized ranks over many points.
fn sampled_max_rank(m: &PolyMatrix, count: usize) -> usize {
    sample_points(m.nvars, count, 77).iter().map(|p| m.specialize(p).rank()).max().unwrap_or(0)
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
}

fn to_matrix(rows: &[Vec<i64>]) -> Matrix<Rational> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
}

fn poly_matrix_strategy() -> impl Strategy<Value = PolyMatrix> {
    // Entries a + b t0 + c t1 t0 with small integer coefficients; rows often dependent.
    (1usize..4, 1usize..4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec((-2i64..3, -2i64..3, -1i64..2), c), r))
        .prop_map(|rows| {
            let n = 2;
            let mut m = PolyMatrix::zeros(n, rows.len(), rows[0].len());
            for (i, row) in rows.iter().enumerate() {
                for (j, &(a, b, e)) in row.iter().enumerate() {
                    let p = c(n, a).add(&t(n, 0).scale(&q(b))).add(&t(n, 0).mul(&t(n, 1)).scale(&q(e)));
                    m.entries[i][j] = p;
                }
            }
            // Duplicate the first row scaled by t1 to force dependence.
            let extra: Vec<Poly> = m.entries[0].iter().map(|p| p.mul(&t(n, 1))).collect();
            m.entries.push(extra);
            m.rows += 1;
            m
        })
}

proptest! {
    #[test]
    fn rank_plus_nullity(rows in small_matrix()) {
        let m = to_matrix(&rows);
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn rank_invariant_under_permutation_and_scaling(rows in small_matrix(), s in 1i64..5, rot in 0usize..4) {
        let m = to_matrix(&rows);
        let r = m.rank();
        let mut rows2 = rows.clone();
        let n = rows2.len();
        rows2.rotate_left(rot % n);
        for x in rows2[0].iter_mut() {
            *x *= -s;
        }
        let mut m2 = to_matrix(&rows2);
        m2 = m2.select_cols(&(0..m2.cols()).rev().collect::<Vec<_>>());
        prop_assert_eq!(m2.rank(), r);
    }

    #[test]
    fn generic_rank_matches_sampled_oracle(m in poly_matrix_strategy()) {
        let g = generic_rank(&m, 3);
        prop_assert_eq!(g.rank, bareiss(&m).rank);
        prop_assert_eq!(g.rank, sampled_max_rank(&m, 12));
        for p in sample_points(m.nvars, 5, 11) {
            prop_assert!(m.specialize(&p).rank() <= g.rank);
        }
    }
}
