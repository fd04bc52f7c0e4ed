use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use superstructure::suites::run_suite;
use superstructure::tables::table_rows;
use superstructure::verify::Report;

/// Shapes whose msV is not maximal: adjoining one degree -1 element of the
/// isotropic line fixed by a Borel of St(V) leaves the closure solvable.
const COUNTEREXAMPLES: [(&str, &str); 6] = [
    ("h(0|5)", "k=0,l=0,m=2,za=1,zb=0"),
    ("h(0|5)", "k=0,l=1,m=1,za=0,zb=1"),
    ("h(0|5)", "k=0,l=1,m=1,za=1,zb=0"),
    ("h(0|6)", "k=0,l=1,m=1,za=1,zb=1"),
    ("h(0|6)", "k=0,l=1,m=2,za=0,zb=0"),
    ("h(0|6)", "k=0,l=2,m=1,za=0,zb=0"),
];

/// Shapes where the written case (i) element u is not in msV.
const WRITTEN_U_OUTSIDE: [(&str, &str); 2] = [("h(0|5)", "k=0,l=0,m=2,za=1,zb=0"), ("h(0|6)", "k=0,l=0,m=2,za=1,zb=1")];

struct Outcome {
    pass: bool,
    detail: String,
}

fn bin(args: &[&str]) -> String {
    let o = Command::new(env!("CARGO_BIN_EXE_superstructure")).args(args).output().expect("spawn");
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn table_reproduction() -> Outcome {
    let t2 = bin(&["tables", "2"]);
    let t3 = bin(&["tables", "3"]);
    let cases: [(&str, &[&str], &str, [usize; 3]); 5] = [
        ("T2 msV", &["subalg", "msV", "--series", "vect", "--n", "2", "--k", "1", "--emit-table"], &t2, [1, 3, 2]),
        ("T2 msc", &["subalg", "msc", "--series", "vect", "--n", "2", "--emit-table"], &t2, [2, 3, 1]),
        ("T3 msV", &["subalg", "msV", "--series", "hprime", "--n", "4", "--shape", "k=1,l=0,m=1", "--emit-table"], &t3, [1, 4, 4]),
        ("T3 msc", &["subalg", "msc", "--series", "hprime", "--n", "4", "--emit-table"], &t3, [4, 4, 1]),
        ("T3 ms~V", &["subalg", "msV", "--series", "hprime", "--n", "4", "--shape", "k=1,l=1,m=0", "--emit-table"], &t3, [3, 4, 3]),
    ];
    let mut bad = Vec::new();
    for (label, args, table, dims) in cases {
        let out = bin(args);
        let lines: Vec<&str> = out.lines().collect();
        let stored: Vec<&str> = table.lines().collect();
        let row_ok = lines.len() == 2 && lines[0] == stored[1] && stored.contains(&lines[1]);
        let counts: Vec<usize> = lines
            .get(1)
            .map(|l| l.split('|').skip(1).map(|c| c.split(',').filter(|m| !m.trim().is_empty()).count()).collect())
            .unwrap_or_default();
        if !row_ok || counts != dims {
            bad.push(format!("{label}: {out:?}"));
        }
    }
    let mut pairs = 0;
    for pair in table_rows(5).chunks(2) {
        let ok = pair[0].ambient().ok().and_then(|g| {
            let a = pair[0].build_in(&g).ok()?;
            let b = pair[1].build_in(&g).ok()?;
            Some(b.contains_sub(&a) && b.dim() > a.dim() && b.is_closed() && b.is_solvable())
        });
        if ok == Some(true) {
            pairs += 1;
        } else {
            bad.push(format!("T5 pair {} not a strict solvable containment", pairs + 1));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("5 rows monomial-for-monomial, {pairs} strict containments")
        } else {
            bad.join("; ")
        },
    }
}

fn from_report(r: Report) -> Outcome {
    let failed: Vec<String> = r.checks.iter().filter(|c| !c.ok).map(|c| c.name.clone()).collect();
    Outcome {
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks", r.checks.len())
        } else {
            format!("{} of {} checks failed: {}", failed.len(), r.checks.len(), failed.join("; "))
        },
    }
}

fn suite(name: &str) -> Outcome {
    match run_suite(name) {
        Ok(r) => from_report(r),
        Err(e) => Outcome {
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn shape_key(name: &str) -> Option<(String, String)> {
    let mut tokens = name.split_whitespace();
    let alg = tokens.clone().find(|t| t.starts_with("h(0|"))?.trim_end_matches(',').to_string();
    let shape = tokens.find(|t| t.starts_with("k="))?.trim_end_matches([':', ',']).to_string();
    Some((alg, shape))
}

/// Runs the Witt shape grid and returns the outcome plus whether the failure
/// set is exactly the documented one.
fn witt_grid() -> (Outcome, bool) {
    let r = match run_suite("prop4") {
        Ok(r) => r,
        Err(e) => {
            return (
                Outcome {
                    pass: false,
                    detail: e.to_string(),
                },
                false,
            )
        }
    };
    let failed: Vec<_> = r.checks.iter().filter(|c| !c.ok).collect();
    let keyed = |pred: &dyn Fn(&str) -> bool| -> BTreeSet<(String, String)> {
        failed.iter().filter(|c| pred(&c.name)).filter_map(|c| shape_key(&c.name)).collect()
    };
    let not_maximal = keyed(&|n| n.ends_with("msV is maximal"));
    let u_outside = keyed(&|n| n.contains("case (i)"));
    let all = keyed(&|_| true);
    let own = |xs: &[(&str, &str)]| -> BTreeSet<(String, String)> { xs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect() };
    let expected_all: BTreeSet<_> = own(&COUNTEREXAMPLES).union(&own(&WRITTEN_U_OUTSIDE)).cloned().collect();
    let unkeyed = failed.iter().filter(|c| shape_key(&c.name).is_none()).count();
    let documented = not_maximal == own(&COUNTEREXAMPLES) && u_outside == own(&WRITTEN_U_OUTSIDE) && all == expected_all && unkeyed == 0;
    let list = |s: &BTreeSet<(String, String)>| s.iter().map(|(a, b)| format!("{a} {b}")).collect::<Vec<_>>().join("; ");
    let detail = if failed.is_empty() {
        format!("{} checks", r.checks.len())
    } else {
        format!(
            "{} of {} checks failed; msV not maximal for [{}]; written u not in msV for [{}]",
            failed.len(),
            r.checks.len(),
            list(&not_maximal),
            list(&u_outside)
        )
    };
    (
        Outcome {
            pass: failed.is_empty(),
            detail,
        },
        documented,
    )
}

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !filter.is_empty() && !filter.iter().any(|f| "acceptance".contains(f.as_str())) {
        return ExitCode::SUCCESS;
    }
    let criteria: [(&str, u64, &str); 8] = [
        ("table reproduction", 1, "exact"),
        ("ms0 grid", 600, "exact eigen stage, F_5/F_7 sweeps to quotient dim 8"),
        ("msc grid", 300, "exact"),
        ("msV grid for vect, svect, ~svect", 600, "exact eigen stage, F_5 sweeps"),
        ("msV grid for Witt shapes in h(0|5), h(0|6)", 1800, "exact eigen stage, F_5 sweeps"),
        ("property suites", 600, "zero failures"),
        ("negative controls", 60, "certificates rechecked"),
        ("fingerprints", 600, "exact"),
    ];
    let mut unexpected = 0;
    for (i, (label, limit, tol)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (out, expected_pass) = match i {
            0 => (table_reproduction(), true),
            1 => (suite("prop1"), true),
            2 => (suite("prop2"), true),
            3 => (suite("prop3"), true),
            4 => {
                let (o, documented) = witt_grid();
                if !documented {
                    unexpected += 1;
                }
                (o, false)
            }
            5 => (suite("properties"), true),
            6 => (suite("controls"), true),
            _ => (suite("fingerprints"), true),
        };
        let el = t.elapsed();
        let in_time = el <= Duration::from_secs(*limit);
        let pass = out.pass && in_time;
        println!(
            "{} criterion {}: {label} ({tol}; {:.2}s, limit {limit}s): {}",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            el.as_secs_f64(),
            out.detail
        );
        if pass != expected_pass || !in_time {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        println!("acceptance: outcomes as documented");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected outcomes");
        ExitCode::FAILURE
    }
}
