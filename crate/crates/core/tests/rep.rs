use superspherical::algebra::{construct, direct_sum, root_datum, Family, Positivity};
use superspherical::hyperborel::distinguished;
use superspherical::linalg::{Matrix, Parity};
use superspherical::rep::{
    adjoint_rep, dual, external_tensor, highest_weight_spaces, pi_shift, standard_rep, sym2, tensor, trivial_rep,
};
use superspherical::scalar::q;

fn families() -> Vec<(Family, usize, usize)> {
    vec![
        (Family::Gl, 1, 1),
        (Family::Gl, 1, 2),
        (Family::Gl, 2, 2),
        (Family::Gl, 0, 2),
        (Family::Sl, 2, 1),
        (Family::Osp, 1, 2),
        (Family::Osp, 3, 2),
        (Family::P, 0, 2),
        (Family::Q, 0, 2),
    ]
}

#[test]
fn module_axioms_hold_for_all_constructions() {
    for (f, m, n) in families() {
        let g = construct(f, m, n).unwrap();
        let v = standard_rep(&g).unwrap();
        let reps = vec![
            v.clone(),
            pi_shift(&v),
            dual(&g, &v),
            sym2(&g, &v),
            sym2(&g, &pi_shift(&v)),
            tensor(&g, &v, &dual(&g, &v)),
            adjoint_rep(&g),
            trivial_rep(&g),
        ];
        for r in reps {
            assert_eq!(r.module_violation(&g), None, "{} on {}", g.name, r.name);
            assert_eq!(r.parity_violation(&g), None, "{} on {}", g.name, r.name);
        }
    }
}

#[test]
fn sym2_dimensions() {
    for (m, n) in [(1, 2), (2, 1), (2, 2), (3, 1), (0, 3)] {
        let g = construct(Family::Gl, m, n).unwrap();
        let s = sym2(&g, &standard_rep(&g).unwrap());
        assert_eq!(s.sdim(), (n * (n.max(1) - 1) / 2 + m * (m + 1) / 2, m * n));
    }
    let g = construct(Family::Gl, 1, 2).unwrap();
    assert_eq!(sym2(&g, &standard_rep(&g).unwrap()).sdim(), (2, 2));
}

#[test]
fn double_dual_is_canonically_v() {
    // V** -> V is v -> (-1)^{|v|} v; conjugating by that sign matrix recovers V.
    for (f, m, n) in families() {
        let g = construct(f, m, n).unwrap();
        let v = standard_rep(&g).unwrap();
        let vv = dual(&g, &dual(&g, &v));
        let d = v.dim();
        let mut s = Matrix::zeros(d, d);
        for i in 0..d {
            s[(i, i)] = if v.parity(i) == Parity::Odd { q(-1) } else { q(1) };
        }
        for k in 0..g.dim() {
            assert_eq!(s.mul(&vv.action[k]).mul(&s), v.action[k]);
        }
    }
}

#[test]
fn external_tensor_gl11() {
    let g = construct(Family::Gl, 1, 1).unwrap();
    let (s, emb) = direct_sum(&g, &g);
    let v = standard_rep(&g).unwrap();
    let r = external_tensor(&s, &emb, &v, &dual(&g, &v));
    assert_eq!(r.sdim(), (2, 2));
    assert_eq!(r.module_violation(&s), None);
}

#[test]
fn standard_gl12_highest_weight() {
    let g = construct(Family::Gl, 1, 2).unwrap();
    let rd = root_datum(&g, Positivity::default_for(&g));
    let b = distinguished(&g, &rd).unwrap();
    let hw = highest_weight_spaces(&g, &standard_rep(&g).unwrap(), &b).unwrap();
    assert_eq!(hw.len(), 1);
    assert_eq!(hw[0].weight, vec![1, 0, 0]);
    assert_eq!(hw[0].vectors, vec![vec![q(1), q(0), q(0)]]);
}

#[test]
fn adjoint_gl11_highest_weight_vectors() {
    // By hand: b = <E11, E22, E12>, n = <E12>. In weight 0, [E12, aE11 + bE22] = (b - a)E12,
    // so only the identity survives; E12 survives; [E12, E21] = E11 + E22 is nonzero.
    let g = construct(Family::Gl, 1, 1).unwrap();
    let rd = root_datum(&g, Positivity::default_for(&g));
    let b = distinguished(&g, &rd).unwrap();
    let hw = highest_weight_spaces(&g, &adjoint_rep(&g), &b).unwrap();
    let total: usize = hw.iter().map(|h| h.vectors.len()).sum();
    assert_eq!(total, 2);
    let zero = hw.iter().find(|h| h.weight == vec![0, 0]).unwrap();
    assert_eq!(zero.vectors, vec![vec![q(1), q(1), q(0), q(0)]]);
}

#[test]
fn trivial_has_weight_zero() {
    let g = construct(Family::Osp, 1, 2).unwrap();
    let rd = root_datum(&g, Positivity::default_for(&g));
    let b = &superspherical::hyperborel::extend_to_hyperborels(&g, &rd)[0];
    let hw = highest_weight_spaces(&g, &trivial_rep(&g), b).unwrap();
    assert_eq!(hw.len(), 1);
    assert_eq!(hw[0].vectors.len(), 1);
    assert!(hw[0].weight.iter().all(|&c| c == 0));
}

#[test]
fn every_rep_has_a_highest_weight_vector_and_pi_keeps_weights() {
    for (f, m, n) in families() {
        let g = construct(f, m, n).unwrap();
        let rd = root_datum(&g, Positivity::default_for(&g));
        for b in superspherical::hyperborel::extend_to_hyperborels(&g, &rd) {
            let v = standard_rep(&g).unwrap();
            for r in [v.clone(), dual(&g, &v), sym2(&g, &v), adjoint_rep(&g)] {
                let hw = highest_weight_spaces(&g, &r, &b).unwrap();
                assert!(!hw.is_empty(), "{} {}", g.name, r.name);
                let hp = highest_weight_spaces(&g, &pi_shift(&r), &b).unwrap();
                let w1: Vec<_> = hw.iter().map(|h| h.weight.clone()).collect();
                let w2: Vec<_> = hp.iter().map(|h| h.weight.clone()).collect();
                assert_eq!(w1, w2);
            }
        }
    }
}
