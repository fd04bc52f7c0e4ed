use superstructure::algebra::{build_algebra, Series};
use superstructure::catalog::{
    borel0, ms0, msc, msc_explicit, msc_h_count, msc_vect_dim, msv_h, msv_vect, msv_vect_explicit, partials_span,
    shape_ambient, shape_v, singular_overalgebra, tilde_readings, WittShape,
};
use superstructure::linalg::Subspace;
use superstructure::liestruct::{GradedSubalgebra, Lie};
use superstructure::prolong::{cartan_prolong, stabilizer, v_star};
use superstructure::scalar::{Fp, Rational};
use superstructure::Error;

type Q = Rational;

fn lie(s: Series, n: usize) -> std::sync::Arc<Lie<Q>> {
    Lie::from_desc(build_algebra(s, n).unwrap())
}

#[test]
fn ms0_dimensions() {
    let cases = [
        (Series::Vect, 3, vec![6, 9, 3]),
        (Series::Svect, 3, vec![5, 6]),
        (Series::H, 5, vec![6, 10, 5, 1]),
        (Series::Vect, 4, vec![10, 24, 16, 4]),
        (Series::H, 6, vec![9, 20, 15, 6, 1]),
    ];
    for (s, n, dims) in cases {
        let m = ms0(&lie(s, n)).unwrap();
        assert_eq!(m.dims_trimmed(), dims, "{}", s.display(n));
        assert!(m.is_closed() && m.is_solvable());
        assert!(m.component(-1).is_zero());
    }
}

#[test]
fn msc_is_the_prolongation_of_borel0() {
    for (s, n) in [(Series::Vect, 3), (Series::Vect, 4), (Series::Svect, 3), (Series::H, 5), (Series::H, 6)] {
        let g = lie(s, n);
        let m = msc(&g).unwrap();
        let p = cartan_prolong(&g, &Subspace::full(g.dim(-1)), &borel0(&g).unwrap()).unwrap();
        assert_eq!(m, p, "{}", s.display(n));
        assert_eq!(m, msc_explicit(&g).unwrap());
        assert!(m.is_solvable());
    }
    assert_eq!(msc(&lie(Series::Vect, 3)).unwrap().dim(), 14);
}

#[test]
fn msc_dimension_formulas() {
    for k in 2..=4 {
        assert_eq!(msc(&lie(Series::Vect, k)).unwrap().dim(), msc_vect_dim(k));
        let even = msc_h_count(2 * k).unwrap();
        assert_eq!(even.actual, 3 * (1 << k) - 3);
        assert_eq!(even.literal, even.actual);
        let odd = msc_h_count(2 * k + 1).unwrap();
        assert_eq!(odd.actual, 4 * (1 << k) - 3);
        assert_eq!(odd.literal + 1, odd.actual);
        assert_eq!(odd.corrected, odd.actual);
    }
    assert_eq!(msc_h_count(5).unwrap().actual, msc(&lie(Series::H, 5)).unwrap().dim());
    assert_eq!(msc_h_count(6).unwrap().actual, msc(&lie(Series::H, 6)).unwrap().dim());
}

#[test]
fn msc_is_refused_for_the_deformation() {
    assert!(matches!(msc(&lie(Series::TildeSvect, 4)), Err(Error::Unsupported(_))));
}

#[test]
fn msv_vect_three_descriptions_agree() {
    for (s, n) in [(Series::Vect, 3), (Series::Svect, 3), (Series::Svect, 4), (Series::TildeSvect, 4)] {
        let g = lie(s, n);
        for k in 1..n {
            let m = msv_vect(&g, k).unwrap();
            let p = cartan_prolong(&g, &partials_span(&g, k).unwrap(), &borel0(&g).unwrap()).unwrap();
            assert_eq!(m, p, "{} k={k}", s.display(n));
            if s != Series::TildeSvect {
                assert_eq!(m, msv_vect_explicit(&g, k).unwrap());
            }
            assert!(m.is_solvable());
            assert!(v_star(&g, m.component(-1)).unwrap().contains_sub(&m));
        }
        assert!(msv_vect(&g, 0).is_err());
        assert!(msv_vect(&g, n).is_err());
    }
}

#[test]
fn tilde_readings_distinguish_the_literal_formula() {
    for k in 1..=3 {
        let r = tilde_readings(4, k).unwrap();
        assert!(r.svect_reading_ok, "k={k}");
        assert!(!r.vect_reading_inside, "k={k}");
        assert_eq!(r.vect_reading_obstruction.as_deref(), Some("x1.d1"), "k={k}");
    }
}

#[test]
fn witt_shapes() {
    let shapes5 = WittShape::enumerate(5);
    let shapes6 = WittShape::enumerate(6);
    assert!(shapes5.iter().all(|s| s.validate(5).is_ok()));
    assert!(shapes6.iter().all(|s| s.validate(6).is_ok()));
    assert!(shapes5.iter().any(|s| s.is_singular()));
    let s: WittShape = "k=1,l=1,m=0,za=0,zb=1".parse().unwrap();
    assert!(s.is_singular());
    assert_eq!(s.to_string().parse::<WittShape>().unwrap(), s);
    assert!("k=1,q=2".parse::<WittShape>().is_err());
    assert!("k=1,zb=2".parse::<WittShape>().is_err());
}

#[test]
fn msv_h_sits_in_v_star_with_maximal_degree_zero() {
    for n in [5, 6] {
        for shape in WittShape::enumerate(n) {
            let g = shape_ambient(Series::H, &shape).unwrap();
            let s = msv_h(&g, &shape).unwrap();
            let v = shape_v(&g, &shape).unwrap();
            assert_eq!(s.component(-1), &v, "{shape}");
            assert!(s.is_closed() && s.is_solvable(), "{shape}");
            assert!(v_star(&g, &v).unwrap().contains_sub(&s), "{shape}");
            assert!(s.component(0).is_subspace_of(&stabilizer(&g, &v)), "{shape}");
        }
    }
}

#[test]
fn singular_shapes_have_solvable_over_algebras() {
    for n in [5, 6] {
        for shape in WittShape::enumerate(n).into_iter().filter(|s| s.is_singular()) {
            let g = shape_ambient(Series::H, &shape).unwrap();
            let s = msv_h(&g, &shape).unwrap();
            let (label, t) = singular_overalgebra(&g, &shape, &s).unwrap();
            assert!(t.contains_sub(&s) && t.dim() > s.dim(), "{shape}");
            assert!(t.is_closed() && t.is_solvable(), "{shape}");
            if shape.k == 1 {
                assert!(label.starts_with("ms~V"), "{label}");
            }
        }
    }
}

#[test]
fn catalog_outputs_reduce_modulo_primes() {
    let g = lie(Series::H, 5);
    let s = msc(&g).unwrap();
    let g5: std::sync::Arc<Lie<Fp<5>>> = Lie::new(g.desc_arc());
    let t: GradedSubalgebra<Fp<5>> = s.map_to(&g5).unwrap();
    assert_eq!(t.dims(), s.dims());
    assert_eq!(t.derived_dims(), s.derived_dims());
    assert_eq!(msc(&g5).unwrap().dims(), s.dims());
}

#[test]
fn po_is_not_a_catalog_ambient() {
    assert!(ms0(&lie(Series::Po, 4)).is_err());
}
