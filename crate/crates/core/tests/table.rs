use superspherical::orbit::DEFAULT_SEED;
use superspherical::table::{
    evaluate_pair_row, evaluate_rep_row, spherical_rep_rows, symmetric_pair_rows, symmetric_pair_table,
};

/// Superdimension of the representation named in a row, from the usual formulas.
fn formula_sdim(rep: &str, m: usize, n: usize) -> (usize, usize) {
    let c2 = |k: usize| k * k.saturating_sub(1) / 2;
    let (e, o) = match rep.trim_start_matches("pi-") {
        "standard" => (m, n),
        "sym2" => (c2(m + 1) + c2(n), m * n),
        r => panic!("unknown rep {r}"),
    };
    if rep.starts_with("pi-") {
        (o, e)
    } else {
        (e, o)
    }
}

#[test]
fn rep_rows_have_consistent_superdimensions() {
    for row in spherical_rep_rows().unwrap() {
        // p(n) and q(n) act on C^{n|n}.
        let (m, n) = if row.family == "p" { (row.n, row.n) } else { (row.m, row.n) };
        assert_eq!(formula_sdim(&row.rep, m, n), (row.dim_even, row.dim_odd), "{} {}|{}", row.row, row.m, row.n);
        assert!(row.size >= 1);
    }
}

#[test]
fn rep_rows_report_computed_superdimension() {
    for row in spherical_rep_rows().unwrap().into_iter().filter(|r| r.size <= 3) {
        let out = evaluate_rep_row(&row, DEFAULT_SEED).unwrap();
        assert_eq!(out.sdim, out.expected_sdim, "{}", row.row);
        if out.expected_spherical {
            assert!(out.open_hyperborel.is_some(), "{}", row.row);
        }
    }
}

#[test]
fn pair_rows_parse() {
    let rows = symmetric_pair_rows().unwrap();
    assert!(rows.iter().all(|r| r.spherical == "yes" || r.spherical == "no"));
    assert!(rows.iter().all(|r| r.iwasawa == "yes" || r.iwasawa == "no"));
    for r in &rows {
        let case = r.case().unwrap();
        assert_eq!(case.is_none(), r.kind == "exceptional");
    }
}

#[test]
fn exceptional_rows_are_unimplemented() {
    for row in symmetric_pair_rows().unwrap().into_iter().filter(|r| r.kind == "exceptional") {
        let out = evaluate_pair_row(&row, DEFAULT_SEED).unwrap();
        assert_eq!(out.status(), "UNIMPLEMENTED");
        assert_eq!(out.iwasawa, None);
    }
}

#[test]
fn table_output_keeps_row_order() {
    let rows: Vec<_> = symmetric_pair_rows().unwrap().into_iter().filter(|r| r.size <= 1).collect();
    let out = symmetric_pair_table(1, DEFAULT_SEED).unwrap();
    assert_eq!(out.len(), rows.len());
    for (r, o) in rows.iter().zip(&out) {
        assert_eq!(r.row, o.row);
        assert_ne!(o.status(), "MISMATCH", "{} {}", o.row, o.sizes);
    }
}

#[test]
fn iwasawa_implies_spherical_in_the_data() {
    // Every row with an Iwasawa decomposition is also spherical.
    for r in symmetric_pair_rows().unwrap() {
        if r.iwasawa == "yes" {
            assert_eq!(r.spherical, "yes", "{} {}|{}", r.row, r.m, r.n);
        }
    }
}
