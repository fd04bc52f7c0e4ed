//! The non-degenerate shapes whose msV is not maximal, re-checked through
//! generating functions and the Poisson bracket rather than the bracket
//! tables.

use superstructure::algebra::Element;
use superstructure::catalog::{msv_h, shape_ambient, WittShape};
use superstructure::grassmann::{HSplit, Monomial, SuperPoly};
use superstructure::linalg::Subspace;
use superstructure::scalar::{Field, Rational};
use superstructure::vectorfields::poisson;
use superstructure::verify::{check_maximal, Status, SweepConfig};
use superstructure::algebra::Series;
use superstructure::liestruct::GradedSubalgebra;

type Q = Rational;

const COUNTEREXAMPLES: &[&str] = &[
    "k=0,l=0,m=2,za=1,zb=0",
    "k=0,l=1,m=1,za=0,zb=1",
    "k=0,l=1,m=1,za=1,zb=0",
    "k=0,l=1,m=1,za=1,zb=1",
    "k=0,l=1,m=2,za=0,zb=0",
    "k=0,l=2,m=1,za=0,zb=0",
];

fn functions(s: &GradedSubalgebra<Q>) -> Vec<SuperPoly<Q>> {
    s.basis()
        .into_iter()
        .map(|(d, v)| match s.desc().element(d, &v) {
            Element::Function(f) => f,
            Element::Field(_) => panic!("expected a generating function"),
        })
        .collect()
}

/// Coefficient vector over all monomials, constants dropped (they are
/// zero in h).
fn coords(f: &SuperPoly<Q>, n: usize) -> Vec<Q> {
    (0..1u16 << n)
        .map(|b| if b == 0 { Q::zero() } else { f.coeff(Monomial::from_bits(b)) })
        .collect()
}

fn span(fs: &[SuperPoly<Q>], n: usize) -> Subspace<Q> {
    let rows: Vec<Vec<Q>> = fs.iter().map(|f| coords(f, n)).collect();
    Subspace::spanned_by(1 << n, rows.iter())
}

fn brackets(split: &HSplit, a: &[SuperPoly<Q>], b: &[SuperPoly<Q>]) -> Vec<SuperPoly<Q>> {
    let mut out = Vec::new();
    for f in a {
        for g in b {
            out.push(poisson(split, f, g).unwrap());
        }
    }
    out
}

/// Basis polynomials of a subspace of coefficient vectors.
fn polys(sp: &Subspace<Q>, n: usize) -> Vec<SuperPoly<Q>> {
    sp.rows()
        .iter()
        .map(|r| {
            let mut f = SuperPoly::zero(n);
            for (b, c) in r.iter().enumerate() {
                if !c.is_zero() {
                    f.add_term(Monomial::from_bits(b as u16), c.clone());
                }
            }
            f
        })
        .collect()
}

#[test]
fn non_degenerate_counterexamples_hold_independently() {
    for src in COUNTEREXAMPLES {
        let shape: WittShape = src.parse().unwrap();
        let g = shape_ambient(Series::H, &shape).unwrap();
        let split = g.desc().split().unwrap();
        let n = split.n();
        let s = msv_h(&g, &shape).unwrap();
        let v = check_maximal(&s, None, &SweepConfig::default()).unwrap();
        assert_eq!(v.status, Status::NotMaximal, "{src}");
        let w = &v.witnesses[0];
        let t = GradedSubalgebra::from_json(&g, &w.over_algebra).unwrap();

        let tf = functions(&t);
        let ts = span(&tf, n);
        for f in brackets(&split, &tf, &tf) {
            assert!(ts.contains(&coords(&f, n)), "{src}: over-algebra not closed");
        }
        for f in functions(&s) {
            assert!(ts.contains(&coords(&f, n)), "{src}: msV not inside");
        }
        assert!(t.dim() > s.dim());

        let mut cur = tf;
        let mut steps = 0;
        while !cur.is_empty() {
            let next = span(&brackets(&split, &cur, &cur), n);
            assert!(next.dim() < span(&cur, n).dim(), "{src}: derived series stalls");
            cur = polys(&next, n);
            steps += 1;
        }
        assert!(steps > 1, "{src}");
    }
}

#[test]
fn remaining_non_degenerate_shape_is_maximal() {
    let shape: WittShape = "k=0,l=0,m=2,za=1,zb=1".parse().unwrap();
    let g = shape_ambient(Series::H, &shape).unwrap();
    let s = msv_h(&g, &shape).unwrap();
    let v = check_maximal(&s, None, &SweepConfig::default()).unwrap();
    assert_eq!(v.status, Status::Maximal);
}
