mod common;

use common::{expected_figure, gl12_s2, monoid_coords};
use proptest::prelude::*;
use std::collections::BTreeSet;
use superspherical::algebra::{construct, Family, LieSuperalgebra};
use superspherical::functions::{
    derivation_action, highest_weight_functions, lattice_coords, nilpotency_check, recheck_evidence,
    socle_multiplicity_report, Evidence, FunctionModel, Monomial, Status, SuperPoly,
};
use superspherical::hyperborel::{derived_even, Hyperborel};
use superspherical::linalg::{koszul, Matrix, Parity, SuperVectorSpace};
use superspherical::orbit::default_hyperborels;
use superspherical::rep::{standard_rep, zero_rep, Representation};
use superspherical::scalar::q;
use superspherical::Rational;

fn mono(even: &[u32], odd: u64) -> Monomial {
    Monomial { even: even.to_vec(), odd }
}

fn poly(terms: &[(Monomial, i64)]) -> SuperPoly {
    let mut p = SuperPoly::zero();
    for (m, c) in terms {
        p.add_term(m.clone(), q(*c));
    }
    p
}

fn whole_algebra(g: &LieSuperalgebra) -> Hyperborel {
    default_hyperborels(g).remove(0)
}

#[test]
fn cartan_acts_diagonally_with_additive_weights() {
    let (g, v, _) = gl12_s2(true);
    let alg = derivation_action(&g, &v, 4).unwrap();
    for d in 0..=4 {
        let mons = alg.monomials(d);
        for &h in &g.cartan {
            let m = alg.action_matrix(h, d).unwrap();
            for (r, c, _) in m.nonzeros() {
                assert_eq!(r, c, "h acts diagonally");
            }
            let pos = g.cartan.iter().position(|&x| x == h).unwrap();
            for (i, mon) in mons.iter().enumerate() {
                assert_eq!(m[(i, i)], q(alg.weight(mon)[pos]));
            }
        }
    }
    // Weight of a monomial is the sum of its generators' weights.
    let m = mono(&[2, 1], 0b11);
    let expect: Vec<i64> = (0..g.cartan.len())
        .map(|c| 2 * alg.even_weights[0][c] + alg.even_weights[1][c] + alg.odd_weights[0][c] + alg.odd_weights[1][c])
        .collect();
    assert_eq!(alg.weight(&m), expect);
}

#[test]
fn xi_eta_is_an_even_highest_weight_vector() {
    let (g, v, b) = gl12_s2(true);
    let alg = derivation_action(&g, &v, 2).unwrap();
    let xi_eta = alg.generator(Parity::Odd, 0).mul(&alg.generator(Parity::Odd, 1));
    let (g0, _) = g.even_part();
    let idx = g.even_indices();
    let b0: Vec<usize> = b.b0.iter().map(|i| idx.iter().position(|x| x == i).unwrap()).collect();
    for k in derived_even(&g0, &b0).basis() {
        let mut u = vec![q(0); g.dim()];
        for (a, c) in k.iter().enumerate() {
            u[idx[a]] = c.clone();
        }
        assert!(alg.act(&u, &xi_eta).is_zero());
    }
    let w: Vec<i64> = alg.odd_weights[0].iter().zip(&alg.odd_weights[1]).map(|(a, b)| a + b).collect();
    assert_eq!(alg.weight_of(&xi_eta), Some(w));
}

fn check_commutators(g: &LieSuperalgebra, v: &Representation, d: usize) {
    let alg = derivation_action(g, v, d).unwrap();
    for deg in 0..=d {
        let mats: Vec<Matrix<Rational>> = (0..g.dim()).map(|k| alg.action_matrix(k, deg).unwrap()).collect();
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let s = q(koszul(g.parity(i), g.parity(j)));
                let lhs = mats[i].mul(&mats[j]).sub(&mats[j].mul(&mats[i]).scale(&s));
                let br = g.bracket(&g.basis_vector(i), &g.basis_vector(j));
                let mut rhs = Matrix::zeros(lhs.rows(), lhs.cols());
                for (k, c) in br.iter().enumerate() {
                    rhs = rhs.add(&mats[k].scale(c));
                }
                assert_eq!(lhs, rhs, "{} [{}, {}] degree {deg}", g.name, g.label(i), g.label(j));
            }
        }
    }
}

#[test]
fn bracket_acts_as_supercommutator() {
    let (g, v, _) = gl12_s2(true);
    check_commutators(&g, &v, 3);
    let h = construct(Family::Osp, 1, 2).unwrap();
    check_commutators(&h, &standard_rep(&h).unwrap(), 3);
}

#[test]
fn gl02_has_nilpotent_highest_weight_function() {
    let g = construct(Family::Gl, 0, 2).unwrap();
    let v = standard_rep(&g).unwrap();
    let b = whole_algebra(&g);
    let fm = FunctionModel::new(&g, &v, &b, 4).unwrap();
    let blocks = fm.blocks(2).unwrap();
    let deg2: Vec<_> = blocks.iter().filter(|b| b.degree == 2).collect();
    assert_eq!(deg2.len(), 1);
    let f = &deg2[0].basis[0];
    assert_eq!(*f, poly(&[(mono(&[], 0b11), 1)]));
    assert!(nilpotency_check(f));
    let verdict = fm.verdict(4).unwrap();
    assert_eq!(verdict.status, Status::NotSpherical);
    let Evidence::NilpotentFunction { degree, .. } = &verdict.evidence else { panic!("{:?}", verdict.evidence) };
    // The lowest-degree witness is the odd coordinate killed by b, which is already nilpotent.
    assert_eq!(*degree, 1);
    assert!(recheck_evidence(&fm.alg, &fm.killers, &verdict));
    // The nilpotent weight is excluded from the socle count.
    let socle = socle_multiplicity_report(&fm.alg, &fm.killers, 4).unwrap();
    assert!(!socle.contains_key(&deg2[0].weight));
    assert_eq!(socle.len(), 1, "only constants survive");
}

#[test]
fn torus_on_a_line() {
    let g = construct(Family::Gl, 1, 0).unwrap();
    let v = standard_rep(&g).unwrap();
    let fm = FunctionModel::new(&g, &v, &whole_algebra(&g), 6).unwrap();
    let m = fm.monoid(6).unwrap();
    let coords: Vec<i64> = m.entries.iter().map(|e| lattice_coords(&e.weight, &fm.alg.even_weights).unwrap()[0]).collect();
    let mut sorted = coords.clone();
    sorted.sort();
    assert_eq!(sorted, (0..=6).collect::<Vec<_>>());
    assert!(m.entries.iter().all(|e| e.multiplicity == 1));
}

#[test]
fn torus_on_the_plane_gives_the_full_quadrant() {
    let g1 = construct(Family::Gl, 1, 0).unwrap();
    let (t, _) = superspherical::algebra::direct_sum(&g1, &g1);
    let mut a0 = Matrix::zeros(2, 2);
    a0[(0, 0)] = q(1);
    let mut a1 = Matrix::zeros(2, 2);
    a1[(1, 1)] = q(1);
    let v = Representation {
        algebra: t.name.clone(),
        name: "C2".into(),
        space: SuperVectorSpace::new(vec!["e1".into(), "e2".into()], vec![Parity::Even, Parity::Even]),
        action: vec![a0, a1],
    };
    assert_eq!(v.module_violation(&t), None);
    let fm = FunctionModel::new(&t, &v, &whole_algebra(&t), 5).unwrap();
    let m = fm.monoid(5).unwrap();
    assert_eq!(monoid_coords(&fm, &m), expected_quadrant(5));
}

fn expected_quadrant(d: i64) -> BTreeSet<(i64, i64)> {
    (0..=d).flat_map(|i| (0..=d - i).map(move |j| (i, j))).collect()
}

#[test]
fn nilpotency_examples() {
    // Generators: even x, y; odd xi, eta.
    assert!(nilpotency_check(&poly(&[(mono(&[0, 0], 0b11), 1)])));
    assert!(!nilpotency_check(&poly(&[(mono(&[1, 0], 0), 1), (mono(&[0, 0], 0b11), 1)])));
    assert!(!nilpotency_check(&poly(&[(mono(&[1, 1], 0), 1), (mono(&[0, 0], 0b11), 1)])));
}

#[test]
fn gl12_certificates_have_the_predicted_shape() {
    // f_ij = x^i y^j + c_ij x^(i-1) y^(j-1) xi eta with |c_ij| = i for B+.
    let (g, v, b) = gl12_s2(true);
    let fm = FunctionModel::new(&g, &v, &b, 6).unwrap();
    let m = fm.monoid(6).unwrap();
    for e in &m.entries {
        let c = lattice_coords(&e.weight, &fm.alg.even_weights).unwrap();
        let (i, j) = (c[0] as u32, c[1] as u32);
        let mut expect = poly(&[(mono(&[i, j], 0), 1)]);
        if i >= 1 && j >= 1 {
            expect.add_term(mono(&[i - 1, j - 1], 0b11), q(-(i as i64)));
        }
        assert_eq!(e.certificate, expect, "({i},{j})");
        assert_eq!(e.multiplicity, 1);
    }
}

#[test]
fn gl12_monoid_figures_at_degree_6() {
    for upper in [true, false] {
        let (g, v, b) = gl12_s2(upper);
        let fm = FunctionModel::new(&g, &v, &b, 6).unwrap();
        let (m, verdict) = fm.monoid_and_verdict(6).unwrap();
        assert_eq!(monoid_coords(&fm, &m), expected_figure(upper, 6));
        assert!(m.nilpotent_only.is_empty());
        assert_eq!(verdict.status, Status::InconclusiveAtDegree);
        let socle = socle_multiplicity_report(&fm.alg, &fm.killers, 6).unwrap();
        assert!(socle.values().all(|&k| k == 1));
    }
}

#[test]
fn restriction_to_the_even_part_is_injective_on_weights() {
    for upper in [true, false] {
        let (g, v, b) = gl12_s2(upper);
        let fm = FunctionModel::new(&g, &v, &b, 6).unwrap();
        let even = FunctionModel::even(&g, &v, &b, 6).unwrap();
        let sup = fm.monoid(6).unwrap().weights();
        let sub = even.monoid(6).unwrap().weights();
        assert!(sup.is_subset(&sub), "{:?} not in {:?}", sup, sub);
    }
}

#[test]
fn monoid_generates_the_even_lattice() {
    // Both figures generate Z^2, as does the even monoid N^2.
    for upper in [true, false] {
        let (g, v, b) = gl12_s2(upper);
        let fm = FunctionModel::new(&g, &v, &b, 4).unwrap();
        let pts = monoid_coords(&fm, &fm.monoid(4).unwrap());
        let rows: Vec<Vec<Rational>> = pts.iter().map(|&(i, j)| vec![q(i), q(j)]).collect();
        let m = Matrix::from_rows(rows);
        assert_eq!(m.rank(), 2);
        // (1,1) and one of (1,0)/(0,1) are present, so the group is all of Z^2.
        assert!(pts.contains(&(1, 1)));
        assert!(pts.contains(&(0, 1)) || pts.contains(&(1, 0)));
    }
}

#[test]
fn translated_orthant_is_contained_at_degree_10() {
    let (g, v, b) = gl12_s2(true);
    let fm = FunctionModel::new(&g, &v, &b, 10).unwrap();
    let pts = monoid_coords(&fm, &fm.monoid(10).unwrap());
    // Generators: the even generator weights (1,0), (0,1).
    let p = (0..=3)
        .find(|&p| expected_quadrant(10).iter().filter(|(i, j)| *i >= p && *j >= p).all(|x| pts.contains(x)))
        .expect("some translate of the orthant lies in the monoid");
    assert_eq!(p, 1);
}

#[test]
fn degree_bound_is_an_error() {
    let (g, v, b) = gl12_s2(true);
    let fm = FunctionModel::new(&g, &v, &b, 3).unwrap();
    assert!(fm.blocks(4).is_err());
    assert!(highest_weight_functions(&fm.alg, &fm.killers, 5).is_err());
}

#[test]
fn zero_representation_is_spherical_with_constant_functions() {
    let g = construct(Family::Gl, 1, 2).unwrap();
    let v = zero_rep(&g);
    let fm = FunctionModel::new(&g, &v, &whole_algebra(&g), 3).unwrap();
    let (m, verdict) = fm.monoid_and_verdict(3).unwrap();
    assert_eq!(m.entries.len(), 1);
    assert_eq!(verdict.status, Status::InconclusiveAtDegree);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn leibniz_rule_on_random_pairs(
        e1 in prop::collection::vec(0u32..3, 2), o1 in 0u64..4,
        e2 in prop::collection::vec(0u32..3, 2), o2 in 0u64..4,
        k in 0usize..9,
    ) {
        let (g, v, _) = gl12_s2(true);
        let alg = derivation_action(&g, &v, 8).unwrap();
        let f = SuperPoly::monomial(mono(&e1, o1), q(1));
        let h = SuperPoly::monomial(mono(&e2, o2), q(2));
        let fp = mono(&e1, o1).parity();
        let s = q(koszul(g.parity(k), fp));
        let lhs = alg.act_basis(k, &f.mul(&h));
        let rhs = alg.act_basis(k, &f).mul(&h).add(&f.mul(&alg.act_basis(k, &h)).scale(&s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn monoid_is_closed_within_the_ball(a in 0usize..30, c in 0usize..30) {
        let (g, v, b) = gl12_s2(a % 2 == 0);
        let fm = FunctionModel::new(&g, &v, &b, 6).unwrap();
        let m = fm.monoid(6).unwrap();
        let n = m.entries.len();
        let (x, y) = (&m.entries[a % n], &m.entries[c % n]);
        if x.degree + y.degree <= 6 {
            let w: Vec<i64> = x.weight.iter().zip(&y.weight).map(|(p, q)| p + q).collect();
            prop_assert!(m.contains(&w));
            // The product of certificates is a certificate.
            let prod = x.certificate.mul(&y.certificate);
            prop_assert!(!prod.is_nilpotent());
            prop_assert!(fm.killers.iter().all(|u| fm.alg.act(u, &prod).is_zero()));
        }
    }
}

#[test]
fn even_model_of_a_purely_odd_space_keeps_the_weight_length() {
    let g = construct(Family::Gl, 0, 2).unwrap();
    let v = standard_rep(&g).unwrap();
    for b in default_hyperborels(&g) {
        let even = FunctionModel::even(&g, &v, &b, 3).unwrap().monoid(3).unwrap().weights();
        let full = FunctionModel::new(&g, &v, &b, 3).unwrap().monoid(3).unwrap().weights();
        assert_eq!(even, BTreeSet::from([vec![0, 0]]));
        assert!(full.is_subset(&even));
    }
}
