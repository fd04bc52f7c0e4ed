use superstructure::algebra::{build_algebra, Series};
use superstructure::catalog::{ms0, msc, msv_vect};
use superstructure::liestruct::{GradedSubalgebra, Lie};
use superstructure::scalar::Rational;
use superstructure::suites::{mutilate, witness_case_ids, witness_suite};
use superstructure::verify::{check_maximal, generation_check, recheck_witness, Status, SweepConfig};

type Q = Rational;

fn lie(s: Series, n: usize) -> std::sync::Arc<Lie<Q>> {
    Lie::from_desc(build_algebra(s, n).unwrap())
}

#[test]
fn small_cases_are_not_maximal() {
    let g = lie(Series::Vect, 2);
    let v = check_maximal(&ms0(&g).unwrap(), None, &SweepConfig::default()).unwrap();
    assert_eq!(v.status, Status::NotMaximal);
    assert_eq!(v.witnesses[0].extension, "d1");
    assert!(recheck_witness(&ms0(&g).unwrap(), &v.witnesses[0]).unwrap());

    let h = lie(Series::HPrime, 4);
    let s = ms0(&h).unwrap();
    let v = check_maximal(&s, None, &SweepConfig::default()).unwrap();
    assert_eq!(v.status, Status::NotMaximal);
    assert!(recheck_witness(&s, &v.witnesses[0]).unwrap());
}

#[test]
fn maximal_cases_in_dimension_three() {
    for (s, n) in [(Series::Vect, 3), (Series::Svect, 3)] {
        let g = lie(s, n);
        for sub in [ms0(&g).unwrap(), msc(&g).unwrap(), msv_vect(&g, 1).unwrap()] {
            let v = check_maximal(&sub, None, &SweepConfig::default().with_full_sweep()).unwrap();
            assert_eq!(v.status, Status::Maximal, "{} {:?}", s.display(n), sub.dims_trimmed());
            assert!(v.witnesses.is_empty());
        }
    }
}

#[test]
fn mutilated_outputs_are_caught() {
    let g = lie(Series::Vect, 3);
    let s = msc(&g).unwrap();
    let (_, m) = mutilate(&s).unwrap();
    let v = check_maximal(&m, None, &SweepConfig::default()).unwrap();
    assert_eq!(v.status, Status::NotMaximal);
    let w = &v.witnesses[0];
    assert!(recheck_witness(&m, w).unwrap());
}

#[test]
fn forged_witnesses_are_rejected() {
    let g = lie(Series::Vect, 2);
    let s = ms0(&g).unwrap();
    let mut w = check_maximal(&s, None, &SweepConfig::default()).unwrap().witnesses.remove(0);
    w.over_algebra = GradedSubalgebra::full(&g).to_json();
    assert!(!recheck_witness(&s, &w).unwrap());
    w.over_algebra = s.to_json();
    assert!(!recheck_witness(&s, &w).unwrap());
}

#[test]
fn container_restricts_candidates() {
    let g = lie(Series::Vect, 3);
    let s = msc(&g).unwrap();
    let v = check_maximal(&s, Some(&s), &SweepConfig::default()).unwrap();
    assert_eq!(v.status, Status::Maximal);
    assert_eq!(v.candidates_checked, 0);
}

#[test]
fn sweep_config_rejects_unsupported_primes() {
    let g = lie(Series::Vect, 3);
    let cfg = SweepConfig {
        primes: vec![17],
        ..SweepConfig::default()
    };
    assert!(check_maximal(&ms0(&g).unwrap(), None, &cfg).is_err());
}

#[test]
fn generation_by_the_negative_part() {
    assert!(generation_check(&lie(Series::TildeSvect, 4)));
    assert!(!generation_check(&lie(Series::Vect, 3)));
    assert!(!generation_check(&lie(Series::Svect, 4)));
}

#[test]
fn witness_cases_prop1_and_prop3_pass() {
    for id in witness_case_ids().iter().filter(|id| !id.starts_with("prop4")) {
        let r = witness_suite(id).unwrap();
        assert!(r.ok(), "{id}\n{}", r.to_text());
    }
}

#[test]
fn fast_suites_pass() {
    for name in ["prop5", "containment", "controls", "fingerprints"] {
        let r = superstructure::suites::run_suite(name).unwrap();
        assert!(r.ok(), "{}", r.to_text());
    }
    assert!(superstructure::suites::run_suite("nonsense").is_err());
}
