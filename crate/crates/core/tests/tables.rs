use superstructure::algebra::Series;
use superstructure::catalog::{msc, msv_h, msv_vect, WittShape};
use superstructure::liestruct::GradedSubalgebra;
use superstructure::tables::{emit_row, match_row, stored_rows, table1, table_json, table_rows, table_text};

const TABLE2: &str = "\
name | basis of s_-1 | basis of s_0        | basis of s_1
msV  | d1            | x1.d1, x2.d1, x2.d2 | x1.x2.d1, x1.x2.d2
msc  | d1, d2        | x1.d1, x2.d1, x2.d2 | x1.x2.d1
";

const TABLE3: &str = "\
name | basis of s_-1  | basis of s_0               | basis of s_1
msV  | x1             | x1.e1, x1.x2, x1.e2, x2.e2 | x1.e1.e2, x1.x2.e1, x1.x2.e2, x2.e1.e2
msc  | x1, x2, e1, e2 | x1.e1, x1.x2, x1.e2, x2.e2 | x1.x2.e2
ms~V | x1, x2, e2     | x1.e1, x1.x2, x1.e2, x2.e2 | x1.e1.e2, x1.x2.e1, x1.x2.e2
";

#[test]
fn golden_tables() {
    assert_eq!(table_text(2).unwrap(), TABLE2);
    assert_eq!(table_text(3).unwrap(), TABLE3);
    assert!(table_text(6).is_err());
}

#[test]
fn every_row_validates() {
    let rows = stored_rows();
    assert_eq!(rows.len(), 12);
    for r in rows {
        let s = r.validate().unwrap_or_else(|e| panic!("table {} {}: {e}", r.table, r.name));
        assert_eq!(s.dims_trimmed(), r.dims().to_vec());
    }
}

#[test]
fn catalog_reproduces_the_rows() {
    let t2 = table_rows(2);
    let g = t2[0].ambient().unwrap();
    assert_eq!(msv_vect(&g, 1).unwrap(), t2[0].build_in(&g).unwrap());
    assert_eq!(msc(&g).unwrap(), t2[1].build_in(&g).unwrap());
    assert_eq!(emit_row("msc", &msc(&g).unwrap()), TABLE2.lines().take(1).chain(TABLE2.lines().skip(2)).map(|l| format!("{l}\n")).collect::<String>());

    let t3 = table_rows(3);
    let h = t3[0].ambient().unwrap();
    let shape = |s: &str| s.parse::<WittShape>().unwrap();
    assert_eq!(msv_h(&h, &shape("k=1,l=0,m=1")).unwrap(), t3[0].build_in(&h).unwrap());
    assert_eq!(msc(&h).unwrap(), t3[1].build_in(&h).unwrap());
    assert_eq!(msv_h(&h, &shape("k=1,l=1,m=0")).unwrap(), t3[2].build_in(&h).unwrap());
}

#[test]
fn table5_pairs_are_strict_solvable_containments() {
    let rows = table_rows(5);
    assert_eq!(rows.len(), 6);
    for pair in rows.chunks(2) {
        let g = pair[0].ambient().unwrap();
        let a = pair[0].build_in(&g).unwrap();
        let b = pair[1].build_in(&g).unwrap();
        assert!(b.contains_sub(&a) && b.dim() > a.dim());
        assert!(b.is_solvable());
    }
}

#[test]
fn rows_match_themselves() {
    for r in stored_rows() {
        let s = r.build().unwrap();
        let m = match_row(&s).unwrap();
        assert_eq!(m.build_in(s.lie()).unwrap(), s);
    }
}

#[test]
fn json_round_trip() {
    for r in stored_rows() {
        let s = r.build().unwrap();
        let back = GradedSubalgebra::from_json(s.lie(), &s.to_json()).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json(), s.to_json());
    }
    let j = table_json(4).unwrap();
    assert_eq!(j["rows"][0]["rename"][0][1], "x2");
}

#[test]
fn table1_rows() {
    let r = table1(Series::Vect, 3).unwrap();
    assert_eq!((r.g0_dim, r.s0.len()), (9, 6));
    let r = table1(Series::H, 5).unwrap();
    assert_eq!((r.g0_dim, r.s0.len()), (10, 6));
}
