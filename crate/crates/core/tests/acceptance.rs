//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see them.

mod common;

use common::{brute_force_odd_sets, expected_figure, gl12_s2, monoid_coords};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};
use superspherical::algebra::{cartan_data, construct, root_datum, Family, LieSuperalgebra, Positivity};
use superspherical::functions::{recheck_evidence, Evidence, FunctionModel, Status};
use superspherical::gl11::verify_socle_and_block;
use superspherical::hyperborel::{extend_to_hyperborels, verify_hyperborel};
use superspherical::orbit::{cross_validate, default_hyperborels, homogeneous_sphericity_test, HomogeneousSpace, DEFAULT_SEED};
use superspherical::rep::{pi_shift, standard_rep, sym2, with_scalars, Representation};
use superspherical::symmetric::{iwasawa_test, swap_involution, IwasawaStatus, SymmetricPair};
use superspherical::table::{spherical_rep_table, symmetric_pair_table};
use superspherical::Rational;

const MONOID_DEGREE: usize = 6;
const MONOID_LIMIT: Duration = Duration::from_secs(10);
const REP_TABLE_MAX_SIZE: usize = 5;
const REP_TABLE_LIMIT: Duration = Duration::from_secs(120);
const PAIR_TABLE_MAX_SIZE: usize = 3;
const PAIR_TABLE_LIMIT: Duration = Duration::from_secs(120);
const GL11_BAND: i64 = 2;
const ORTHANT_DEGREE: usize = 10;
const CROSS_DEGREE: usize = 3;

struct Line {
    id: usize,
    pass: bool,
    detail: String,
}

fn report(lines: &mut Vec<Line>, id: usize, pass: bool, detail: String) {
    println!("criterion {id}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    lines.push(Line { id, pass, detail });
}

fn criterion_1() -> (bool, String) {
    let t = Instant::now();
    let mut ok = true;
    let mut sizes = Vec::new();
    for upper in [true, false] {
        let (g, v, b) = gl12_s2(upper);
        let fm = FunctionModel::new(&g, &v, &b, MONOID_DEGREE).unwrap();
        let m = fm.monoid(MONOID_DEGREE).unwrap();
        let got = monoid_coords(&fm, &m);
        ok &= got == expected_figure(upper, MONOID_DEGREE as i64);
        sizes.push(got.len());
    }
    let el = t.elapsed();
    ok &= el < MONOID_LIMIT;
    (ok, format!("B+ {} points, B- {} points, {:.2?} (limit {:?})", sizes[0], sizes[1], el, MONOID_LIMIT))
}

fn criterion_2() -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [2, 3] {
        let g = construct(Family::Gl, 0, n).unwrap();
        let v = standard_rep(&g).unwrap();
        let ws = v.weights(&g).unwrap();
        let distinct: BTreeSet<_> = ws.iter().collect();
        ok &= distinct.len() == ws.len();
        for b in default_hyperborels(&g) {
            let fm = FunctionModel::new(&g, &v, &b, 3).unwrap();
            let verdict = fm.verdict(3).unwrap();
            let nilpotent = matches!(verdict.evidence, Evidence::NilpotentFunction { .. });
            ok &= verdict.status == Status::NotSpherical && nilpotent && recheck_evidence(&fm.alg, &fm.killers, &verdict);
            if let Evidence::NilpotentFunction { text, .. } = &verdict.evidence {
                notes.push(format!("gl(0|{n}): {text}"));
            }
        }
    }
    let o = construct(Family::Osp, 1, 2).unwrap();
    let k: Vec<Vec<Rational>> = o.cartan.iter().map(|&h| o.basis_vector(h)).collect();
    let x = HomogeneousSpace::new(&o, k).unwrap();
    let r = homogeneous_sphericity_test(&x, &default_hyperborels(&o), DEFAULT_SEED);
    let odd_deficient = r.per_hyperborel.iter().all(|c| c.ambient.1 == 2 && c.generic_rank.1 < 2);
    ok &= r.status == Status::NotSpherical && odd_deficient;
    notes.push(format!("osp(1|2)/T: {}", r.status));
    (ok, notes.join("; "))
}

fn criterion_3() -> (bool, String) {
    let t = Instant::now();
    let out = spherical_rep_table(REP_TABLE_MAX_SIZE, DEFAULT_SEED).unwrap();
    let el = t.elapsed();
    let bad: Vec<String> = out
        .iter()
        .filter(|o| !(o.matches && o.verdict == Status::Spherical && o.sdim == o.expected_sdim))
        .map(|o| format!("{} {}", o.row, o.algebra))
        .collect();
    let ok = bad.is_empty() && !out.is_empty() && el < REP_TABLE_LIMIT;
    (ok, format!("{} rows, {} mismatches {:?}, {:.2?} (limit {:?})", out.len(), bad.len(), bad, el, REP_TABLE_LIMIT))
}

fn criterion_4() -> (bool, String) {
    let t = Instant::now();
    let out = symmetric_pair_table(PAIR_TABLE_MAX_SIZE, DEFAULT_SEED).unwrap();
    let el = t.elapsed();
    let mut checked = 0;
    let mut unimplemented = 0;
    let mut bad = Vec::new();
    for o in &out {
        match o.iwasawa {
            None => unimplemented += 1,
            Some(s) => {
                checked += 1;
                if (s == IwasawaStatus::HasIwasawa) != o.expected_iwasawa {
                    bad.push(format!("{} {}", o.row, o.sizes));
                }
            }
        }
    }
    let ok = bad.is_empty() && checked > 0 && el < PAIR_TABLE_LIMIT;
    (
        ok,
        format!(
            "{checked} instances, {} mismatches {:?}, {unimplemented} UNIMPLEMENTED, {:.2?} (limit {:?})",
            bad.len(),
            bad,
            el,
            PAIR_TABLE_LIMIT
        ),
    )
}

fn criterion_5() -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for (f, m, n) in [(Family::Gl, 1, 2), (Family::Gl, 2, 2), (Family::Osp, 1, 2), (Family::Q, 2, 2)] {
        let g = construct(f, m, n).unwrap();
        let even = cartan_data(&g).is_cartan_even;
        let p = SymmetricPair::new(swap_involution(&g).unwrap()).unwrap();
        let has = iwasawa_test(&p).unwrap().status == IwasawaStatus::HasIwasawa;
        ok &= has == even;
        notes.push(format!("{}: cartan-even {even}, iwasawa {has}", g.name));
    }
    (ok, notes.join("; "))
}

fn criterion_6() -> (bool, String) {
    let r = verify_socle_and_block(GL11_BAND).unwrap();
    let ok = r.ok();
    (
        ok,
        format!(
            "band {GL11_BAND}: layers {:?}, {} arrows, missing {}, extra {}",
            r.layers,
            r.arrows.len(),
            r.missing_arrows.len(),
            r.extra_arrows.len()
        ),
    )
}

fn all_algebras() -> Vec<LieSuperalgebra> {
    let mut out = Vec::new();
    for m in 0..=3 {
        for n in 0..=3 {
            if (1..=4).contains(&(m + n)) {
                out.push(construct(Family::Gl, m, n).unwrap());
            }
            if (2..=4).contains(&(m + n)) && m != n {
                out.push(construct(Family::Sl, m, n).unwrap());
            }
        }
    }
    for (m, n) in [(1, 2), (2, 2), (3, 2), (1, 4), (0, 2), (2, 0)] {
        out.push(construct(Family::Osp, m, n).unwrap());
    }
    for n in 1..=3 {
        out.push(construct(Family::P, 0, n).unwrap());
        out.push(construct(Family::Q, 0, n).unwrap());
    }
    out
}

fn cross_suite() -> Vec<(LieSuperalgebra, Representation)> {
    let mut out = Vec::new();
    for (m, n) in [(1, 1), (1, 2), (2, 1), (0, 2), (2, 2)] {
        let g = construct(Family::Gl, m, n).unwrap();
        let v = standard_rep(&g).unwrap();
        out.push((g.clone(), pi_shift(&v)));
        out.push((g.clone(), sym2(&g, &v)));
        out.push((g, v));
    }
    let o = construct(Family::Osp, 1, 2).unwrap();
    let v = standard_rep(&o).unwrap();
    out.push(with_scalars(&o, &v));
    out.push((o, v));
    let p = construct(Family::P, 2, 2).unwrap();
    out.push((p.clone(), pi_shift(&standard_rep(&p).unwrap())));
    out
}

fn criterion_7() -> (bool, String) {
    let mut notes = Vec::new();

    let algebras = all_algebras();
    let jacobi_fail: Vec<&str> =
        algebras.iter().filter(|g| g.jacobi_violation().is_some()).map(|g| g.name.as_str()).collect();
    notes.push(format!("jacobi {}/{}", algebras.len() - jacobi_fail.len(), algebras.len()));

    let mut hb_total = 0;
    let mut hb_fail = 0;
    for m in 0..=4 {
        for n in 0..=4 {
            if m + n == 0 || m + n > 4 {
                continue;
            }
            let g = construct(Family::Gl, m, n).unwrap();
            for pos in [Positivity::default_for(&g), Positivity::default_for(&g).negated()] {
                let rd = root_datum(&g, pos);
                let hs = extend_to_hyperborels(&g, &rd);
                let sets: Vec<Vec<usize>> = hs.iter().map(|b| b.b1.clone()).collect();
                if sets != brute_force_odd_sets(&g, &rd.even_borel(&g)) {
                    hb_fail += 1;
                }
                for b in &hs {
                    hb_total += 1;
                    if !verify_hyperborel(&g, b).ok {
                        hb_fail += 1;
                    }
                }
            }
        }
    }
    notes.push(format!("hyperborels {hb_total}, failures {hb_fail}"));

    let mut runs = 0;
    let mut conflicts = 0;
    for (g, v) in cross_suite() {
        for b in default_hyperborels(&g) {
            runs += 1;
            if cross_validate(&g, &v, &b, CROSS_DEGREE, DEFAULT_SEED).is_err() {
                conflicts += 1;
            }
        }
    }
    notes.push(format!("cross-validation {runs} runs, {conflicts} conflicts"));

    let (g, v, b) = gl12_s2(true);
    let fm = FunctionModel::new(&g, &v, &b, ORTHANT_DEGREE).unwrap();
    let pts = monoid_coords(&fm, &fm.monoid(ORTHANT_DEGREE).unwrap());
    let d = ORTHANT_DEGREE as i64;
    // Some translate (p, p) + N^2 with p well inside the ball lies in the monoid.
    let orthant = (0..=d / 3).any(|p| (p..=d).all(|i| (p..=d - i).all(|j| pts.contains(&(i, j)))));
    notes.push(format!("orthant at d={ORTHANT_DEGREE}: {orthant}"));

    let mut restriction_ok = true;
    for upper in [true, false] {
        let (g, v, b) = gl12_s2(upper);
        for deg in [MONOID_DEGREE, ORTHANT_DEGREE] {
            let sup = FunctionModel::new(&g, &v, &b, deg).unwrap().monoid(deg).unwrap().weights();
            let sub = FunctionModel::even(&g, &v, &b, deg).unwrap().monoid(deg).unwrap().weights();
            restriction_ok &= sup.is_subset(&sub);
        }
    }
    for n in [2, 3] {
        let g = construct(Family::Gl, 0, n).unwrap();
        let v = standard_rep(&g).unwrap();
        for b in default_hyperborels(&g) {
            let sup = FunctionModel::new(&g, &v, &b, 3).unwrap().monoid(3).unwrap().weights();
            let sub = FunctionModel::even(&g, &v, &b, 3).unwrap().monoid(3).unwrap().weights();
            restriction_ok &= sup.is_subset(&sub);
        }
    }
    notes.push(format!("even restriction {restriction_ok}"));

    let ok = jacobi_fail.is_empty() && hb_fail == 0 && conflicts == 0 && orthant && restriction_ok;
    (ok, notes.join("; "))
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();
    let checks: [(usize, fn() -> (bool, String)); 7] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
    ];
    for (id, f) in checks {
        let (pass, detail) = f();
        report(&mut lines, id, pass, detail);
    }
    let failed: Vec<String> = lines.iter().filter(|l| !l.pass).map(|l| format!("{}: {}", l.id, l.detail)).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
