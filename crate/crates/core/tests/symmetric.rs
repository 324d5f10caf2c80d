use proptest::prelude::*;
use std::sync::OnceLock;
use superspherical::algebra::{construct, direct_sum, homomorphism_violation, Family, LieSuperalgebra};
use superspherical::functions::Status;
use superspherical::hyperborel::verify_hyperborel;
use superspherical::linalg::{Matrix, Parity, Subspace};
use superspherical::orbit::{homogeneous_sphericity_test, HomogeneousSpace, DEFAULT_SEED};
use superspherical::symmetric::{
    iwasawa_test, iwasawa_to_hyperborel, maximal_toral, pair_sphericity, standard_involution, swap_involution,
    InvolutionKind, IwasawaStatus, SymmetricPair,
};
use superspherical::table::{evaluate_pair_row, symmetric_pair_rows};
use superspherical::Rational;

fn pair(f: Family, m: usize, n: usize, kind: InvolutionKind) -> SymmetricPair {
    SymmetricPair::new(standard_involution(f, m, n, &kind).unwrap()).unwrap()
}

fn diagonal(f: Family, m: usize, n: usize) -> SymmetricPair {
    SymmetricPair::new(swap_involution(&construct(f, m, n).unwrap()).unwrap()).unwrap()
}

/// dim(C_g(a) ∩ p), computed from the stacked ad(a) matrices.
fn cap_dim(g: &LieSuperalgebra, a: &[Vec<Rational>], p: &[Vec<Rational>]) -> usize {
    let d = g.dim();
    let mut rows = Vec::new();
    for x in a {
        let cols: Vec<Vec<Rational>> = (0..d).map(|j| g.bracket(x, &g.basis_vector(j))).collect();
        let m = Matrix::from_cols(d, &cols);
        rows.extend((0..d).map(|i| m.row(i).to_vec()));
    }
    let cent = if rows.is_empty() {
        Subspace::spanned_by(d, &(0..d).map(|i| g.basis_vector(i)).collect::<Vec<_>>())
    } else {
        Subspace::spanned_by(d, &Matrix::from_rows(rows).kernel_basis())
    };
    cent.intersection(&Subspace::spanned_by(d, p)).dim()
}

fn parity_counts(g: &LieSuperalgebra, vs: &[Vec<Rational>]) -> (usize, usize) {
    let odd = vs
        .iter()
        .filter(|v| v.iter().enumerate().any(|(i, c)| *c != Rational::from_integer(0.into()) && g.parity(i) == Parity::Odd))
        .count();
    (vs.len() - odd, odd)
}

#[test]
fn involutions_square_to_one_and_are_automorphisms() {
    for row in symmetric_pair_rows().unwrap().into_iter().filter(|r| r.size <= 2) {
        let Some(case) = row.case().unwrap() else { continue };
        let th = case.involution().unwrap();
        let d = th.algebra.dim();
        assert_eq!(th.matrix.mul(&th.matrix), Matrix::identity(d), "{}", th.name);
        assert_eq!(homomorphism_violation(&th.algebra, &th.algebra, &th.matrix), None, "{}", th.name);
        let p = SymmetricPair::new(th).unwrap();
        assert_eq!(p.grading_violation(), None);
        let (k, q) = (p.k_sdim(), p.p_sdim());
        let g = p.algebra().sdim();
        assert_eq!((k.0 + q.0, k.1 + q.1), g);
    }
}

#[test]
fn swap_on_gl11_squared() {
    let p = diagonal(Family::Gl, 1, 1);
    assert_eq!(p.k_sdim(), (2, 2));
    assert_eq!(p.p_sdim(), (2, 2));
}

#[test]
fn grading_on_gl12_fixes_the_even_part() {
    let p = pair(Family::Gl, 1, 2, InvolutionKind::Grading);
    assert_eq!(p.k_sdim(), (5, 0));
    assert_eq!(p.p_sdim(), (0, 4));
    // p0 = 0, so a = 0 and C(a) ∩ p = p1.
    assert!(p.a.is_empty());
    let r = iwasawa_test(&p).unwrap();
    assert_eq!(r.status, IwasawaStatus::NoIwasawa);
    assert_eq!(r.witness_parity, Some(Parity::Odd));
}

#[test]
fn gl22_q_fixed_points() {
    let p = pair(Family::Gl, 2, 2, InvolutionKind::GlQ);
    assert_eq!(p.k_sdim(), (4, 4));
    assert_eq!(iwasawa_test(&p).unwrap().status, IwasawaStatus::HasIwasawa);
}

#[test]
fn gl22_p_has_odd_witness() {
    let p = pair(Family::Gl, 2, 2, InvolutionKind::GlP);
    let r = iwasawa_test(&p).unwrap();
    assert_eq!(r.status, IwasawaStatus::NoIwasawa);
    assert_eq!(r.witness_parity, Some(Parity::Odd));
    assert!(r.witness.is_some());
    assert!(cap_dim(p.algebra(), &p.a, &p.p) > p.a.len());
}

#[test]
fn diagonal_pairs_have_a_of_rank_g0() {
    for (f, m, n) in [(Family::Gl, 1, 1), (Family::Gl, 1, 2), (Family::Osp, 1, 2), (Family::Gl, 2, 0)] {
        let g = construct(f, m, n).unwrap();
        let p = diagonal(f, m, n);
        assert_eq!(p.a.len(), g.cartan.len(), "{}", g.name);
        assert!(p.a_maximal_verified);
    }
}

#[test]
fn gl11_grading_has_zero_a() {
    let p = pair(Family::Gl, 1, 1, InvolutionKind::Grading);
    assert_eq!(p.p_sdim(), (0, 2));
    assert!(p.a.is_empty());
    assert_eq!(iwasawa_test(&p).unwrap().status, IwasawaStatus::NoIwasawa);
}

#[test]
fn gl2_block_has_rank_one() {
    let p = pair(Family::Gl, 2, 0, InvolutionKind::GlBlock { r: 1, s: 0 });
    assert_eq!(p.a.len(), 1);
    let r = iwasawa_test(&p).unwrap();
    assert_eq!(r.status, IwasawaStatus::HasIwasawa);
    assert_eq!(r.n_sdim, Some((1, 0)));
}

#[test]
fn q2_diagonal_has_no_iwasawa() {
    let p = diagonal(Family::Q, 2, 2);
    assert_eq!(iwasawa_test(&p).unwrap().status, IwasawaStatus::NoIwasawa);
}

#[test]
fn invalid_involution_parameters_are_rejected() {
    assert!(standard_involution(Family::Gl, 2, 1, &InvolutionKind::GlBlock { r: 3, s: 0 }).is_err());
    assert!(standard_involution(Family::Gl, 2, 1, &InvolutionKind::GlQ).is_err());
}

#[test]
fn iwasawa_decomposition_dimensions_add_up() {
    for row in symmetric_pair_rows().unwrap().into_iter().filter(|r| r.size <= 2) {
        let Some(case) = row.case().unwrap() else { continue };
        let p = SymmetricPair::new(case.involution().unwrap()).unwrap();
        let r = iwasawa_test(&p).unwrap();
        let g = p.algebra().sdim();
        // The independent centralizer computation agrees on the verdict.
        let has = cap_dim(p.algebra(), &p.a, &p.p) == p.a.len();
        assert_eq!(has, r.status == IwasawaStatus::HasIwasawa, "{}", p.theta.name);
        if let Some(n) = r.n_sdim {
            assert_eq!(r.k_sdim.0 + r.a_dim + n.0, g.0);
            assert_eq!(r.k_sdim.1 + n.1, g.1);
        }
        let roots: (usize, usize) =
            r.restricted_roots.iter().fold((0, 0), |s, x| (s.0 + x.multiplicity.0, s.1 + x.multiplicity.1));
        assert_eq!((roots.0 + r.centralizer_sdim.0, roots.1 + r.centralizer_sdim.1), g);
    }
}

#[test]
fn iwasawa_pairs_give_hyperborels_transversal_to_k() {
    let cases = [
        diagonal(Family::Gl, 1, 2),
        pair(Family::Gl, 2, 2, InvolutionKind::GlQ),
        pair(Family::Gl, 2, 2, InvolutionKind::GlOsp),
        pair(Family::Gl, 1, 2, InvolutionKind::GlBlock { r: 0, s: 1 }),
    ];
    for p in cases {
        assert_eq!(iwasawa_test(&p).unwrap().status, IwasawaStatus::HasIwasawa, "{}", p.theta.name);
        let h = iwasawa_to_hyperborel(&p).unwrap();
        let d = h.algebra.dim();
        assert_eq!(h.b_plus_k_dim, d);
        assert!(verify_hyperborel(&h.algebra, &h.hyperborel).ok, "{}", p.theta.name);
        let mut all = h.k.clone();
        all.extend(h.hyperborel.indices().into_iter().map(|i| h.algebra.basis_vector(i)));
        assert_eq!(Subspace::spanned_by(d, &all).dim(), d);
        // b + k = g means the b-orbit of the base point is open.
        let x = HomogeneousSpace::new(&h.algebra, h.k.clone()).unwrap();
        let rep = homogeneous_sphericity_test(&x, std::slice::from_ref(&h.hyperborel), DEFAULT_SEED);
        assert_eq!(rep.status, Status::Spherical, "{}", p.theta.name);
        assert_eq!(pair_sphericity(&p, DEFAULT_SEED).unwrap().status, Status::Spherical);
    }
}

#[test]
fn direct_sum_swap_matches_diagonal_copy() {
    let g = construct(Family::Gl, 1, 1).unwrap();
    let (s, emb) = direct_sum(&g, &g);
    let p = diagonal(Family::Gl, 1, 1);
    for i in 0..g.dim() {
        let mut v = vec![Rational::from_integer(0.into()); s.dim()];
        v[emb.first[i]] = Rational::from_integer(1.into());
        v[emb.second[i]] = Rational::from_integer(1.into());
        assert!(Subspace::spanned_by(s.dim(), &p.k).contains(&v));
    }
}

#[test]
fn small_pair_rows_match() {
    for row in symmetric_pair_rows().unwrap().into_iter().filter(|r| r.size <= 1) {
        let out = evaluate_pair_row(&row, DEFAULT_SEED).unwrap();
        assert_ne!(out.status(), "MISMATCH", "{} {}", out.row, out.sizes);
    }
}

fn scan_cases() -> &'static Vec<SymmetricPair> {
    static CASES: OnceLock<Vec<SymmetricPair>> = OnceLock::new();
    CASES.get_or_init(|| {
        vec![
            diagonal(Family::Gl, 1, 1),
            pair(Family::Gl, 2, 2, InvolutionKind::GlP),
            pair(Family::Gl, 2, 2, InvolutionKind::GlQ),
            pair(Family::Gl, 2, 1, InvolutionKind::GlBlock { r: 1, s: 0 }),
            pair(Family::Osp, 2, 2, InvolutionKind::OspBlock { r: 1, s: 0 }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdict_is_independent_of_scan_order(idx in 0usize..5, perm in Just(()).prop_perturb(|_, mut rng| rng.next_u64())) {
        let p = &scan_cases()[idx];
        let g = p.algebra();
        let mut order: Vec<usize> = (0..p.p.len()).collect();
        let mut s = perm;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let shuffled: Vec<Vec<Rational>> = order.iter().map(|&i| p.p[i].clone()).collect();
        let (a, _) = maximal_toral(g, &shuffled).unwrap();
        prop_assert_eq!(a.len(), p.a.len());
        let before = cap_dim(g, &p.a, &p.p) == p.a.len();
        let after = cap_dim(g, &a, &p.p) == a.len();
        prop_assert_eq!(before, after);
        prop_assert_eq!(parity_counts(g, &a), (a.len(), 0));
    }
}
