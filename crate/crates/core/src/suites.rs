//! Verification suites: explicit proof witnesses, containments of the
//! non-maximal cases, per-proposition grids and algebraic property checks.
//!
//! Every suite returns a [`Report`]; nothing here panics on a failed check.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{build_algebra, AlgebraDesc, Element, Series};
use crate::catalog::{
    borel0, ms0, msc, msc_h_count, msc_vect_dim, msv_h, msv_vect, partials_span, product, shape_ambient, shape_v,
    singular_overalgebra, Role, WittShape,
};
use crate::grassmann::{HSplit, Monomial, SuperPoly};
use crate::linalg::Subspace;
use crate::liestruct::{GradedSubalgebra, Homog, Lie};
use crate::parse::parse_element;
use crate::prolong::{cartan_prolong, conditional_kernel, stabilizer};
use crate::scalar::{Field, Fp, Rational};
use crate::tables::{stored_rows, table5_pairs, table_rows, StoredRow};
use crate::vectorfields::{bracket, divergence, hamiltonian, poisson, VectorField};
use crate::verify::{check_maximal, fingerprint, generation_check, recheck_witness, Report, Status, SweepConfig, Verdict};
use crate::{Error, Result};

type Q = Rational;

/// Names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "prop1",
    "prop2",
    "prop3",
    "prop4",
    "prop5",
    "properties",
    "containment",
    "controls",
    "fingerprints",
];

pub fn run_suite(name: &str) -> Result<Report> {
    match name {
        "prop1" => Ok(prop1_suite()),
        "prop2" => Ok(prop2_suite()),
        "prop3" => Ok(prop3_suite()),
        "prop4" => Ok(prop4_suite()),
        "prop5" => Ok(prop5_suite()),
        "properties" => Ok(properties_suite()),
        "containment" => Ok(containment_suite()),
        "controls" => Ok(negative_controls()),
        "fingerprints" => Ok(fingerprint_suite()),
        other => Err(Error::UnknownCase(format!("suite `{other}` (expected one of {})", SUITES.join(", ")))),
    }
}

fn lie(series: Series, n: usize) -> Result<Arc<Lie<Q>>> {
    Ok(Lie::from_desc(build_algebra(series, n)?))
}

fn elem(lie: &Arc<Lie<Q>>, src: &str) -> Result<Homog<Q>> {
    lie.coords_of(&parse_element(src, lie.desc())?)
}

fn neg(v: &[Q]) -> Vec<Q> {
    v.iter().map(|c| c.neg()).collect()
}

/// +1 or −1 if `a` = ±`b`, 0 otherwise.
fn sign_match(a: &Homog<Q>, b: &Homog<Q>) -> i32 {
    if a.0 != b.0 {
        0
    } else if a.1 == b.1 {
        1
    } else if a.1 == neg(&b.1) {
        -1
    } else {
        0
    }
}

fn closure_index(s: &GradedSubalgebra<Q>, g: &Homog<Q>) -> Option<usize> {
    s.extend(&[g.clone()]).non_solvability_index()
}

fn verdict_detail(v: &Verdict) -> String {
    v.summary()
}

/// Every witness case of the acceptance grids.
pub fn witness_case_ids() -> Vec<String> {
    let mut out: Vec<String> = [("vect", 3), ("vect", 4), ("svect", 3), ("h", 5), ("h", 6)]
        .iter()
        .map(|(s, n)| format!("prop1/{s}/{n}"))
        .collect();
    for (s, n, ks) in prop3_grid() {
        for k in ks {
            out.push(format!("prop3/{}/{n}/{k}", s.label()));
        }
    }
    for n in [5, 6] {
        for shape in WittShape::enumerate(n) {
            out.push(format!("prop4/{n}/{shape}"));
        }
    }
    out
}

/// Run the witness checks of one case such as `prop1/vect/3`,
/// `prop3/svect/3/1` or `prop4/6/k=2,l=0,m=0,za=1,zb=1`.
pub fn witness_suite(case_id: &str) -> Result<Report> {
    let parts: Vec<&str> = case_id.split('/').collect();
    let unknown = || Error::UnknownCase(case_id.to_string());
    match parts.as_slice() {
        ["prop1", s, n] => {
            let series: Series = s.parse().map_err(|_| unknown())?;
            let n: usize = n.parse().map_err(|_| unknown())?;
            prop1_witness(series, n)
        }
        ["prop3", s, n, k] => {
            let series: Series = s.parse().map_err(|_| unknown())?;
            let n: usize = n.parse().map_err(|_| unknown())?;
            let k: usize = k.parse().map_err(|_| unknown())?;
            prop3_witness(series, n, k)
        }
        ["prop4", n, shape] => {
            let n: usize = n.parse().map_err(|_| unknown())?;
            let shape: WittShape = shape.parse()?;
            shape.validate(n)?;
            prop4_witness(Series::H, &shape)
        }
        _ => Err(unknown()),
    }
}

/// The test elements of g_1 used to force t_{−1} = 0 above ms0.
fn prop1_test_elements(series: Series, n: usize) -> Result<Vec<String>> {
    match series {
        Series::Vect | Series::Svect if n >= 3 => {
            let mut v = vec!["x1.x2.d3".to_string()];
            v.extend((3..=n).map(|i| format!("x1.x{i}.d2")));
            Ok(v)
        }
        Series::H if n % 2 == 0 && n >= 6 => {
            let k = n / 2;
            let mut v = Vec::new();
            for b in 1..=k {
                for c in b + 1..=k {
                    for a in 1..=k {
                        v.push(format!("x{a}.e{b}.e{c}"));
                    }
                    for a in c + 1..=k {
                        v.push(format!("e{b}.e{c}.e{a}"));
                    }
                }
            }
            Ok(v)
        }
        Series::H if n % 2 == 1 && n >= 5 => {
            let k = n / 2;
            let mut v = Vec::new();
            for b in 1..=k {
                for c in b + 1..=k {
                    for a in 1..=k {
                        v.push(format!("x{a}.e{b}.e{c}"));
                    }
                    v.push(format!("z1.e{b}.e{c}"));
                }
            }
            Ok(v)
        }
        _ => Err(Error::UnknownCase(format!("prop1 witnesses for {}", series.display(n)))),
    }
}

fn prop1_witness(series: Series, n: usize) -> Result<Report> {
    let g = lie(series, n)?;
    let s = ms0(&g)?;
    let names = prop1_test_elements(series, n)?;
    let mut rep = Report::new(format!("prop1 witnesses, {}", series.display(n)));
    let mut vs = Vec::new();
    for src in &names {
        let (d, v) = elem(&g, src)?;
        if d != 1 {
            return Err(Error::Internal(format!("{src} is not in degree 1")));
        }
        vs.push(v);
    }
    rep.push("test elements lie in g_1", true, format!("{} elements: {}", names.len(), names.join(", ")));
    let ker = conditional_kernel(&g, -1, None, 1, &vs, Some(s.component(0)));
    rep.push(
        "[x, v_i] in s_0 for all i forces x = 0",
        ker.is_zero(),
        format!("kernel dimension {}", ker.dim()),
    );
    let s0 = s.component(0);
    let mut missing = Vec::new();
    let mut detail = Vec::new();
    for j in 0..g.dim(-1) {
        let x = g.unit(-1, j);
        let hit = vs.iter().zip(&names).find_map(|(v, name)| {
            g.bracket(-1, &x, 1, v)
                .filter(|(_, b)| !s0.contains(b))
                .map(|(_, b)| format!("[{}, {}] = {}", g.render(-1, &x), name, g.render(0, &b)))
        });
        match hit {
            Some(h) => detail.push(h),
            None => missing.push(g.render(-1, &x)),
        }
    }
    rep.push(
        "every basis vector of g_-1 leaves s_0 against some v_i",
        missing.is_empty(),
        if missing.is_empty() { detail.join("; ") } else { format!("no witness for {}", missing.join(", ")) },
    );
    if series == Series::Vect && n == 3 {
        let (_, d2) = elem(&g, "d2")?;
        let v = elem(&g, "x1.x2.d3")?;
        let b = g.bracket(-1, &d2, 1, &v.1).unwrap_or((0, vec![Q::zero(); g.dim(0)]));
        let expected = elem(&g, "x1.d3")?;
        let sign = sign_match(&b, &expected);
        rep.push(
            "[d2, x1.x2.d3] = ±x1.d3, outside borel0",
            sign != 0 && !s0.contains(&b.1),
            format!("[d2, x1.x2.d3] = {}", g.render(0, &b.1)),
        );
    }
    let mut indices = Vec::new();
    let mut ok = true;
    for j in 0..g.dim(-1) {
        match closure_index(&s, &(-1, g.unit(-1, j))) {
            Some(i) => indices.push(i.to_string()),
            None => {
                ok = false;
                indices.push("solvable".into());
            }
        }
    }
    rep.push(
        "closure of s with each basis vector of g_-1 is non-solvable",
        ok,
        format!("non-solvability indices {}", indices.join(",")),
    );
    Ok(rep)
}

fn prop3_grid() -> Vec<(Series, usize, Vec<usize>)> {
    vec![
        (Series::Vect, 3, vec![1, 2]),
        (Series::Svect, 3, vec![1, 2]),
        (Series::Svect, 4, vec![1, 2, 3]),
        (Series::TildeSvect, 4, vec![1, 2, 3]),
    ]
}

fn prop3_witness(series: Series, n: usize, k: usize) -> Result<Report> {
    let g = lie(series, n)?;
    let s = msv_vect(&g, k)?;
    let mut rep = Report::new(format!("prop3 witnesses, {}, k = {k}", series.display(n)));
    let special = series != Series::Vect && k == 1;
    let src = if special {
        "x1.x2.d2 - x1.x3.d3".to_string()
    } else {
        format!("x1.x{}.d2", k + 1)
    };
    let v = elem(&g, &src)?;
    rep.push(format!("{src} lies in s"), s.contains(v.0, &v.1), String::new());
    for l in k + 1..n {
        let t = msv_vect(&g, l)?;
        rep.push(
            format!("{src} is not in msV for V = <d1..d{l}>"),
            !t.contains(v.0, &v.1),
            String::new(),
        );
    }
    if series != Series::TildeSvect {
        let c = msc(&g)?;
        rep.push(format!("{src} is not in msc"), !c.contains(v.0, &v.1), String::new());
    }
    let ext = elem(&g, &format!("d{}", k + 1))?;
    let idx = closure_index(&s, &ext);
    rep.push(
        format!("closure of s with d{} is non-solvable", k + 1),
        idx.is_some(),
        idx.map_or("solvable".into(), |i| format!("index {i}")),
    );
    Ok(rep)
}

/// Which proof case a non-singular shape falls under, with the forced
/// extension, the test element u ∈ s_1 (as a product of variables in the
/// written order), the written value of [ext, u] and its written sign.
pub struct Prop4Case {
    pub case: &'static str,
    pub extension: Vec<usize>,
    pub u: Vec<usize>,
    pub expected: Vec<usize>,
    pub written_sign: i32,
}

pub fn prop4_case(shape: &WittShape) -> Option<Prop4Case> {
    let v = |r: Role| shape.var(r);
    let k = shape.k;
    if shape.is_singular() {
        return None;
    }
    let c = |case, ext: Vec<Option<usize>>, u: Vec<Option<usize>>, e: Vec<Option<usize>>, sign| {
        Some(Prop4Case {
            case,
            extension: ext.into_iter().collect::<Option<_>>()?,
            u: u.into_iter().collect::<Option<_>>()?,
            expected: e.into_iter().collect::<Option<_>>()?,
            written_sign: sign,
        })
    };
    let xb1 = v(Role::Xb(1));
    if shape.m > 0 {
        if k >= 1 {
            c("i", vec![xb1], vec![xb1, v(Role::Eb(1)), v(Role::Eta(1))], vec![xb1, v(Role::Eta(1))], -1)
        } else if shape.l >= 1 {
            c("i", vec![xb1], vec![xb1, v(Role::Eb(1)), v(Role::Ea(1))], vec![xb1, v(Role::Ea(1))], -1)
        } else {
            c(
                "i",
                vec![xb1],
                vec![v(Role::Eb(1)), v(Role::Eb(2)), v(Role::Za)],
                vec![v(Role::Eb(2)), v(Role::Za)],
                -1,
            )
        }
    } else if shape.zb {
        let zb = v(Role::Zb);
        c("ii", vec![zb], vec![v(Role::Xi(2)), v(Role::Eta(1)), zb], vec![v(Role::Xi(2)), v(Role::Eta(1))], 1)
    } else {
        let ek = v(Role::Eta(k));
        let xk = v(Role::Xi(k));
        if shape.l >= 1 {
            c("iii", vec![ek], vec![xk, ek, v(Role::Ea(1))], vec![ek, v(Role::Ea(1))], 1)
        } else if shape.za {
            c("iii", vec![ek], vec![xk, ek, v(Role::Za)], vec![ek, v(Role::Za)], 1)
        } else {
            c("iii", vec![ek], vec![xk, v(Role::Xi(2)), v(Role::Eta(1))], vec![v(Role::Xi(2)), v(Role::Eta(1))], 1)
        }
    }
}

fn render_product(lie: &Lie<Q>, vars: &[usize]) -> String {
    let names = lie.desc().names();
    vars.iter().map(|&v| names.name(v)).collect::<Vec<_>>().join(".")
}

fn prop4_witness(series: Series, shape: &WittShape) -> Result<Report> {
    let g = shape_ambient(series, shape)?;
    let s = msv_h(&g, shape)?;
    let mut rep = Report::new(format!("prop4 witnesses, {}, {shape}", g.desc().name()));
    let Some(case) = prop4_case(shape) else {
        let (label, over) = singular_overalgebra(&g, shape, &s)?;
        rep.push(
            "singular: strictly inside a solvable over-algebra",
            over.is_closed() && over.is_solvable() && over.contains_sub(&s) && over.dim() > s.dim(),
            format!("{label}, dims {:?} in {:?}", s.dims_trimmed(), over.dims_trimmed()),
        );
        return Ok(rep);
    };
    let ext = product(&g, &case.extension)?;
    let u = product(&g, &case.u)?;
    let expected = product(&g, &case.expected)?;
    let (ext_s, u_s, exp_s) = (
        render_product(&g, &case.extension),
        render_product(&g, &case.u),
        render_product(&g, &case.expected),
    );
    rep.push(format!("case ({}): u = {u_s} lies in s", case.case), s.contains(u.0, &u.1), String::new());
    rep.push(
        format!("extension {ext_s} is not in V"),
        !s.contains(ext.0, &ext.1),
        String::new(),
    );
    let b = g
        .bracket(ext.0, &ext.1, u.0, &u.1)
        .unwrap_or((0, vec![Q::zero(); g.dim(0)]));
    let sign = sign_match(&b, &expected);
    let relative = if sign == case.written_sign { "as written" } else { "opposite to the written sign" };
    rep.push(
        format!("[{ext_s}, {u_s}] = ±{exp_s}"),
        sign != 0,
        format!("[{ext_s}, {u_s}] = {} ({relative})", g.render(b.0, &b.1)),
    );
    rep.push(
        format!("[{ext_s}, u] is not in s_0"),
        b.0 == 0 && !s.component(0).contains(&b.1),
        String::new(),
    );
    let idx = closure_index(&s, &ext);
    rep.push(
        format!("closure of s with {ext_s} is non-solvable"),
        idx.is_some(),
        idx.map_or("solvable".into(), |i| format!("index {i}")),
    );
    let s0 = s.restrict_to(&[0]);
    let c0 = s0.extend(&[b.clone()]);
    rep.push(
        "degree-0 closure of s_0 with [ext, u] is non-solvable",
        !c0.is_solvable(),
        format!("dim {} -> {}", s0.dim(), c0.dim()),
    );
    Ok(rep)
}

/// Strict containments of the non-maximal small and singular cases.
pub fn containment_suite() -> Report {
    let mut rep = Report::new("containment");
    let strict = |a: &GradedSubalgebra<Q>, b: &GradedSubalgebra<Q>| {
        b.contains_sub(a) && b.dim() > a.dim() && b.is_closed() && b.is_solvable()
    };
    // vect(0|2)
    let r = (|| -> Result<(bool, String)> {
        let rows = table_rows(2);
        let g = rows[0].ambient()?;
        let s = ms0(&g)?;
        let t = rows[0].build_in(&g)?;
        let codim = t.component(-1).dim() - s.component(-1).dim();
        Ok((
            strict(&s, &t) && codim == 1,
            format!("ms0 {:?} in msV {:?}, codim {codim} in degree -1", s.dims_trimmed(), t.dims_trimmed()),
        ))
    })();
    rep.push_result("vect(0|2): ms0 < msV", r, |x| x.clone());
    let r = (|| -> Result<(bool, String)> {
        let rows = table_rows(3);
        let g = rows[0].ambient()?;
        let s = ms0(&g)?;
        let t = rows[0].build_in(&g)?;
        Ok((strict(&s, &t), format!("ms0 {:?} in msV {:?}", s.dims_trimmed(), t.dims_trimmed())))
    })();
    rep.push_result("h'(0|4): ms0 < msV", r, |x| x.clone());
    for (i, (a, b)) in table5_pairs().into_iter().enumerate() {
        let r = (|| -> Result<(bool, String)> {
            let g = a.ambient()?;
            let s = a.build_in(&g)?;
            let t = b.build_in(&g)?;
            Ok((strict(&s, &t), format!("{:?} in {:?}", s.dims_trimmed(), t.dims_trimmed())))
        })();
        rep.push_result(format!("h'(0|4) pair {}: msV < ms~V", i + 1), r, |x| x.clone());
    }
    for n in [5, 6] {
        for shape in WittShape::enumerate(n).into_iter().filter(|s| s.is_singular()) {
            let r = (|| -> Result<(bool, String)> {
                let g = shape_ambient(Series::H, &shape)?;
                let s = msv_h(&g, &shape)?;
                let (label, t) = singular_overalgebra(&g, &shape, &s)?;
                Ok((
                    strict(&s, &t),
                    format!("msV {:?} in {label} {:?}", s.dims_trimmed(), t.dims_trimmed()),
                ))
            })();
            rep.push_result(format!("h(0|{n}) {shape}"), r, |x| x.clone());
        }
    }
    rep
}

fn maximal_check(rep: &mut Report, name: String, r: Result<Verdict>, want: Status) {
    rep.push_result(name, r, |v| {
        let mut ok = v.status == want;
        if want == Status::NotMaximal {
            ok &= v.witnesses.iter().all(|w| w.over_algebra_dims.iter().map(|x| x.1).sum::<usize>() > 0);
        }
        (ok, verdict_detail(v))
    });
}

fn cfg_full() -> SweepConfig {
    SweepConfig::default().with_full_sweep()
}

pub fn prop1_suite() -> Report {
    let mut rep = Report::new("prop1");
    for (series, n) in [
        (Series::Vect, 3),
        (Series::Svect, 3),
        (Series::Vect, 4),
        (Series::H, 5),
        (Series::H, 6),
    ] {
        let r = lie(series, n).and_then(|g| ms0(&g)).and_then(|s| check_maximal(&s, None, &cfg_full()));
        maximal_check(&mut rep, format!("ms0 {} is maximal", series.display(n)), r, Status::Maximal);
        match witness_suite(&format!("prop1/{}/{n}", series.label())) {
            Ok(w) => rep.extend(w),
            Err(e) => rep.push(format!("witnesses {}", series.display(n)), false, e.to_string()),
        }
    }
    rep
}

pub fn prop2_suite() -> Report {
    let mut rep = Report::new("prop2");
    let r = (|| -> Result<(bool, String)> {
        let g = lie(Series::Vect, 3)?;
        let s = msc(&g)?;
        let p = cartan_prolong(&g, &Subspace::full(g.dim(-1)), &borel0(&g)?)?;
        Ok((p == s && s.dim() == 14 && s.dim() == msc_vect_dim(3), format!("dims {:?}, total {}", s.dims_trimmed(), s.dim())))
    })();
    rep.push_result("msc vect(0|3) = (g_-1, borel0)_*, dim 14", r, |x| x.clone());
    let cfg = SweepConfig {
        primes: vec![5],
        check_cap: 8,
        ..cfg_full()
    };
    for (series, n) in [(Series::Vect, 3), (Series::Svect, 3), (Series::H, 5), (Series::H, 6)] {
        let r = lie(series, n).and_then(|g| msc(&g)).and_then(|s| {
            if !s.is_solvable() {
                return Err(Error::Internal("msc is not solvable".into()));
            }
            check_maximal(&s, None, &cfg)
        });
        maximal_check(&mut rep, format!("msc {} is solvable and maximal", series.display(n)), r, Status::Maximal);
    }
    for k in 2..=4 {
        for n in [2 * k, 2 * k + 1] {
            let r = msc_h_count(n);
            rep.push_result(format!("msc h(0|{n}) dimension formula"), r, |c| {
                if n % 2 == 0 {
                    let formula = 3 * (1usize << k) - 3;
                    (c.actual == formula && c.literal == formula, format!("dim {} = 3*2^{k} - 3", c.actual))
                } else {
                    let formula = 4 * (1usize << k) - 3;
                    (
                        c.actual == formula && c.corrected == c.actual,
                        format!(
                            "dim {} = 4*2^{k} - 3; the literal count {} misses the central constant",
                            c.actual, c.literal
                        ),
                    )
                }
            });
        }
    }
    for k in 2..=4 {
        let g = lie(Series::Vect, k);
        rep.push_result(format!("msc vect(0|{k}) dimension 2^{} - 2", k + 1), g.and_then(|g| msc(&g)), |s| {
            (s.dim() == msc_vect_dim(k), format!("dim {}", s.dim()))
        });
    }
    let r = lie(Series::TildeSvect, 4);
    rep.push_result("~svect(0|4) is generated by g_-1", r.clone(), |g| (generation_check(g), String::new()));
    rep.push_result("msc is refused for ~svect(0|4)", r, |g| match msc(g) {
        Err(Error::Unsupported(m)) => (true, m),
        Err(e) => (false, e.to_string()),
        Ok(_) => (false, "msc was built".into()),
    });
    rep
}

pub fn prop3_suite() -> Report {
    let mut rep = Report::new("prop3");
    let cfg = SweepConfig {
        primes: vec![5],
        ..cfg_full()
    };
    for (series, n, ks) in prop3_grid() {
        for k in ks {
            let name = format!("{} k={k}", series.display(n));
            let r = (|| -> Result<(GradedSubalgebra<Q>, Verdict)> {
                let g = lie(series, n)?;
                // msv_vect already cross-checks the prolongation against the
                // three-summand span
                let s = msv_vect(&g, k)?;
                let p = cartan_prolong(&g, &partials_span(&g, k)?, &borel0(&g)?)?;
                if p != s {
                    return Err(Error::Internal("prolongation differs".into()));
                }
                let v = check_maximal(&s, None, &cfg)?;
                Ok((s, v))
            })();
            rep.push_result(format!("{name}: span = prolongation, solvable, maximal"), r, |(s, v)| {
                (
                    s.is_solvable() && v.status == Status::Maximal,
                    format!("dims {:?}; {}", s.dims_trimmed(), verdict_detail(v)),
                )
            });
            match witness_suite(&format!("prop3/{}/{n}/{k}", series.label())) {
                Ok(w) => rep.extend(w),
                Err(e) => rep.push(format!("{name}: witnesses"), false, e.to_string()),
            }
        }
    }
    rep
}

pub fn prop4_suite() -> Report {
    let mut rep = Report::new("prop4");
    for n in [5, 6] {
        for shape in WittShape::enumerate(n) {
            let name = format!("h(0|{n}) {shape}");
            if shape.is_singular() {
                let r = (|| -> Result<Verdict> {
                    let g = shape_ambient(Series::H, &shape)?;
                    check_maximal(&msv_h(&g, &shape)?, None, &SweepConfig::default())
                })();
                maximal_check(&mut rep, format!("{name} (singular) is not maximal"), r, Status::NotMaximal);
            } else {
                let r = (|| -> Result<(GradedSubalgebra<Q>, Verdict, Verdict)> {
                    let g = shape_ambient(Series::H, &shape)?;
                    let s = msv_h(&g, &shape)?;
                    let v = shape_v(&g, &shape)?;
                    let mut st = GradedSubalgebra::zero(&g);
                    st.set_component(0, stabilizer(&g, &v));
                    let s0 = s.restrict_to(&[0]);
                    let v0 = check_maximal(&s0, Some(&st), &cfg_full())?;
                    let vf = check_maximal(&s, None, &SweepConfig::default())?;
                    Ok((s, v0, vf))
                })();
                rep.push_result(format!("{name}: closed, solvable, in V_*"), r.as_ref().map(|x| x.0.clone()).map_err(|e| e.clone()), |s| {
                    (s.is_closed() && s.is_solvable(), format!("dims {:?}", s.dims_trimmed()))
                });
                rep.push_result(
                    format!("{name}: s_0 maximal solvable in St(V)"),
                    r.as_ref().map(|x| x.1.clone()).map_err(|e| e.clone()),
                    |v| (v.status == Status::Maximal, verdict_detail(v)),
                );
                rep.push_result(
                    format!("{name}: msV is maximal"),
                    r.as_ref().map(|x| x.2.clone()).map_err(|e| e.clone()),
                    |v| (v.status == Status::Maximal, verdict_detail(v)),
                );
            }
            match witness_suite(&format!("prop4/{n}/{shape}")) {
                Ok(w) => rep.extend(w),
                Err(e) => rep.push(format!("{name}: witnesses"), false, e.to_string()),
            }
        }
    }
    rep
}

/// The catalog construction that each maximal stored row should equal.
fn row_catalog(row: &StoredRow, g: &Arc<Lie<Q>>) -> Result<Option<GradedSubalgebra<Q>>> {
    let shape_in = |vars: &[usize]| -> Result<Option<GradedSubalgebra<Q>>> {
        let split = g.desc().split().unwrap();
        let shape = if split.l > 1 {
            // ζ = z1 in V, ζ^b = z2 outside
            let s = WittShape::new(0, 0, 1, true, true);
            if vars != s.v_vars().as_slice() {
                return Ok(None);
            }
            s
        } else {
            WittShape::from_vars(split, vars)?
        };
        if shape.split() != split {
            return Ok(None);
        }
        Ok(Some(msv_h(g, &shape)?))
    };
    if row.table == 5 && row.name != "msV" {
        return Ok(None);
    }
    match (row.series, row.name) {
        (Series::Vect, "msV") => Ok(Some(msv_vect(g, 1)?)),
        (_, "msc") => Ok(Some(msc(g)?)),
        (Series::HPrime, _) => {
            let s = row.build_in(g)?;
            let vars: Vec<usize> = s
                .basis_of(-1)
                .iter()
                .map(|v| v.iter().position(|c| !c.is_zero()).unwrap() + 1)
                .collect();
            shape_in(&vars)
        }
        _ => Ok(None),
    }
}

pub fn prop5_suite() -> Report {
    let mut rep = Report::new("prop5");
    for row in stored_rows() {
        let name = format!("table {} {}", row.table, row.name);
        let r = row.validate();
        rep.push_result(format!("{name}: closed, solvable, equals its prolongation"), r, |s| {
            (true, format!("dims {:?}", s.dims_trimmed()))
        });
        let r = (|| -> Result<(bool, String)> {
            let g = row.ambient()?;
            let s = row.build_in(&g)?;
            match row_catalog(&row, &g)? {
                Some(c) => Ok((c == s, format!("catalog dims {:?}", c.dims_trimmed()))),
                None => Ok((true, "no catalog counterpart".into())),
            }
        })();
        rep.push_result(format!("{name}: equals the catalog construction"), r, |x| x.clone());
    }
    let expected_dims: [(u8, &str, [usize; 3]); 5] = [
        (2, "msV", [1, 3, 2]),
        (2, "msc", [2, 3, 1]),
        (3, "msV", [1, 4, 4]),
        (3, "msc", [4, 4, 1]),
        (3, "ms~V", [3, 4, 3]),
    ];
    for (t, name, dims) in expected_dims {
        let row = table_rows(t).into_iter().find(|r| r.name == name);
        let r = row.ok_or_else(|| Error::UnknownCase(format!("table {t} {name}"))).and_then(|r| r.build());
        rep.push_result(format!("table {t} {name}: maximal, dims {dims:?}"), r.and_then(|s| {
            let v = check_maximal(&s, None, &cfg_full())?;
            Ok((s, v))
        }), |(s, v)| {
            (
                s.dims_trimmed() == dims.to_vec() && v.status == Status::Maximal,
                format!("dims {:?}; {}", s.dims_trimmed(), verdict_detail(v)),
            )
        });
    }
    for (i, (a, _)) in table5_pairs().into_iter().enumerate() {
        let r = a.build().and_then(|s| check_maximal(&s, None, &SweepConfig::default()));
        maximal_check(&mut rep, format!("table 5 pair {}: msV is not maximal", i + 1), r, Status::NotMaximal);
    }
    rep.extend(containment_suite());
    rep.extend(fingerprint_suite());
    rep
}

/// The verifier must reject non-maximal inputs.
pub fn negative_controls() -> Report {
    let mut rep = Report::new("controls");
    for (series, n) in [(Series::Vect, 2), (Series::HPrime, 4)] {
        let r = (|| -> Result<(Verdict, bool)> {
            let g = lie(series, n)?;
            let s = ms0(&g)?;
            let v = check_maximal(&s, None, &SweepConfig::default())?;
            let ok = v.witnesses.first().map(|w| recheck_witness(&s, w)).transpose()?.unwrap_or(false);
            Ok((v, ok))
        })();
        rep.push_result(format!("ms0 {} is not maximal", series.display(n)), r, |(v, ok)| {
            (v.status == Status::NotMaximal && *ok, verdict_detail(v))
        });
    }
    for (series, n, which) in [(Series::Vect, 3, "msc"), (Series::H, 5, "msc"), (Series::Svect, 4, "msV k=2")] {
        let r = (|| -> Result<(String, Verdict, bool)> {
            let g = lie(series, n)?;
            let s = if which == "msc" { msc(&g)? } else { msv_vect(&g, 2)? };
            let (removed, m) = mutilate(&s).ok_or_else(|| Error::Internal("no closed mutilation".into()))?;
            let v = check_maximal(&m, None, &SweepConfig::default())?;
            let ok = v.witnesses.first().map(|w| recheck_witness(&m, w)).transpose()?.unwrap_or(false);
            Ok((removed, v, ok))
        })();
        rep.push_result(format!("{which} {} minus one basis vector is not maximal", series.display(n)), r, |(removed, v, ok)| {
            (v.status == Status::NotMaximal && *ok, format!("removed {removed}; {}", verdict_detail(v)))
        });
    }
    rep
}

/// Drop one basis vector, highest degree first, keeping the result closed.
pub fn mutilate(s: &GradedSubalgebra<Q>) -> Option<(String, GradedSubalgebra<Q>)> {
    let mut degrees: Vec<i32> = s.dims().into_iter().filter(|d| d.1 > 0).map(|d| d.0).collect();
    degrees.reverse();
    for d in degrees {
        let basis = s.basis_of(d);
        for skip in (0..basis.len()).rev() {
            let mut t = s.clone();
            let keep: Vec<&Vec<Q>> = basis.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, v)| v).collect();
            t.set_component(d, Subspace::spanned_by(s.lie().dim(d), keep));
            if t.is_closed() {
                return Some((s.lie().render(d, &basis[skip]), t));
            }
        }
    }
    None
}

pub fn fingerprint_suite() -> Report {
    let mut rep = Report::new("fingerprints");
    let r = (|| -> Result<[GradedSubalgebra<Q>; 5]> {
        let t2 = table_rows(2);
        let g2 = t2[0].ambient()?;
        let t3 = table_rows(3);
        let g3 = t3[0].ambient()?;
        Ok([
            t2[0].build_in(&g2)?,
            t2[1].build_in(&g2)?,
            t3[0].build_in(&g3)?,
            t3[1].build_in(&g3)?,
            t3[2].build_in(&g3)?,
        ])
    })();
    match r {
        Err(e) => rep.push("tables build", false, e.to_string()),
        Ok([v2, c2, v3, c3, t3]) => {
            let f = |s: &GradedSubalgebra<Q>| fingerprint(s);
            let (fv2, fc2, fv3, fc3, ft3) = (f(&v2), f(&c2), f(&v3), f(&c3), f(&t3));
            rep.push(
                "vect(0|2): msV and msc have equal ungraded fingerprints",
                fv2.ungraded == fc2.ungraded,
                format!("{:?}", fv2.ungraded),
            );
            rep.push("vect(0|2): graded fingerprints differ", fv2.graded != fc2.graded, format!("{:?} vs {:?}", fv2.graded, fc2.graded));
            rep.push(
                "h'(0|4): msV and msc have equal ungraded fingerprints",
                fv3.ungraded == fc3.ungraded,
                format!("{:?}", fv3.ungraded),
            );
            rep.push("h'(0|4): graded fingerprints differ", fv3.graded != fc3.graded, format!("{:?} vs {:?}", fv3.graded, fc3.graded));
            let total = |x: &crate::verify::Fingerprint| x.ungraded.superdim.0 + x.ungraded.superdim.1;
            rep.push(
                "h'(0|4): ms~V differs from msV and msc",
                ft3.ungraded != fv3.ungraded && ft3.ungraded != fc3.ungraded && total(&ft3) == 10 && total(&fv3) == 9,
                format!("total dims {} vs {}", total(&ft3), total(&fv3)),
            );
            let z = fingerprint(&GradedSubalgebra::zero(v2.lie()));
            rep.push(
                "zero subalgebra has an empty profile",
                z.graded.is_empty() && z.ungraded.derived.is_empty() && z.ungraded.superdim == (0, 0),
                String::new(),
            );
        }
    }
    rep
}

/// Every subalgebra the catalog produces on the acceptance grids, plus the
/// stored table rows.
pub fn catalog_outputs() -> Result<Vec<(String, GradedSubalgebra<Q>)>> {
    let mut out = Vec::new();
    for (series, n) in [
        (Series::Vect, 2),
        (Series::Vect, 3),
        (Series::Vect, 4),
        (Series::Svect, 3),
        (Series::Svect, 4),
        (Series::H, 4),
        (Series::H, 5),
        (Series::H, 6),
        (Series::HPrime, 4),
    ] {
        let g = lie(series, n)?;
        out.push((format!("ms0 {}", series.display(n)), ms0(&g)?));
        out.push((format!("msc {}", series.display(n)), msc(&g)?));
    }
    for (series, n, ks) in prop3_grid() {
        let g = lie(series, n)?;
        for k in ks {
            out.push((format!("msV {} k={k}", series.display(n)), msv_vect(&g, k)?));
        }
    }
    for n in [5, 6] {
        for shape in WittShape::enumerate(n) {
            let g = shape_ambient(Series::H, &shape)?;
            out.push((format!("msV h(0|{n}) {shape}"), msv_h(&g, &shape)?));
        }
    }
    for row in stored_rows() {
        out.push((format!("table {} {}", row.table, row.name), row.build()?));
    }
    Ok(out)
}

/// Every algebra with n ≤ `max_n` (and ~svect(0|4)).
fn built_algebras(max_n: usize) -> Vec<AlgebraDesc> {
    let mut out = Vec::new();
    for series in [Series::Vect, Series::Svect, Series::TildeSvect, Series::Po, Series::H, Series::HPrime] {
        for n in 2..=max_n {
            if let Ok(d) = build_algebra(series, n) {
                out.push(d);
            }
        }
    }
    out
}

/// Super antisymmetry and the super Jacobi identity on all basis pairs and
/// triples. Returns (triples checked, failures).
pub fn jacobi_check(desc: &AlgebraDesc) -> (usize, usize) {
    let dim = desc.dim();
    let loc: Vec<(i32, usize)> = (0..dim).map(|a| desc.locate(a)).collect();
    let parity: Vec<u8> = loc.iter().map(|l| desc.parity(l.0)).collect();
    let sign = |a: usize, b: usize| if parity[a] & parity[b] == 1 { -1i64 } else { 1 };
    // [e_a, e_b] with global target indices
    let table: Vec<Vec<(usize, i64)>> = (0..dim * dim)
        .map(|ab| {
            let (a, b) = (ab / dim, ab % dim);
            match desc.sum_degree(loc[a].0, loc[b].0) {
                Some(t) => {
                    let off = desc.offset(t);
                    desc.bracket_basis(a, b).iter().map(|&(k, c)| (off + k as usize, c)).collect()
                }
                None => Vec::new(),
            }
        })
        .collect();
    let br = |a: usize, b: usize| &table[a * dim + b];
    let mut failures = 0;
    let mut acc = vec![0i64; dim];
    let mut touched = Vec::new();
    let flush = |acc: &mut Vec<i64>, touched: &mut Vec<usize>| {
        let bad = touched.iter().any(|&m| acc[m] != 0);
        for &m in touched.iter() {
            acc[m] = 0;
        }
        touched.clear();
        bad
    };
    for a in 0..dim {
        for b in 0..dim {
            let s = sign(a, b);
            for &(k, c) in br(a, b) {
                acc[k] += c;
                touched.push(k);
            }
            for &(k, c) in br(b, a) {
                acc[k] += s * c;
                touched.push(k);
            }
            if flush(&mut acc, &mut touched) {
                failures += 1;
            }
        }
    }
    for a in 0..dim {
        for b in 0..dim {
            let s = sign(a, b);
            for c in 0..dim {
                // [a,[b,c]] − [[a,b],c] − (−1)^{ab}[b,[a,c]]
                for &(k, x) in br(b, c) {
                    for &(m, y) in br(a, k) {
                        acc[m] += x * y;
                        touched.push(m);
                    }
                }
                for &(k, x) in br(a, b) {
                    for &(m, y) in br(k, c) {
                        acc[m] -= x * y;
                        touched.push(m);
                    }
                }
                for &(k, x) in br(a, c) {
                    for &(m, y) in br(b, k) {
                        acc[m] -= s * x * y;
                        touched.push(m);
                    }
                }
                if flush(&mut acc, &mut touched) {
                    failures += 1;
                }
            }
        }
    }
    (dim * dim * dim, failures)
}

/// H_{f,g} = [H_f, H_g] on all pairs of monomials. Returns (pairs, failures).
pub fn hamiltonian_morphism_check(split: HSplit) -> Result<(usize, usize)> {
    let n = split.n();
    let monos: Vec<SuperPoly<Q>> = (0..1u32 << n)
        .map(|b| SuperPoly::monomial(n, Monomial::from_bits(b as u16), Q::one()))
        .collect();
    let hs: Vec<VectorField<Q>> = monos.iter().map(|f| hamiltonian(&split, f)).collect::<Result<_>>()?;
    let mut failures = 0;
    for (i, f) in monos.iter().enumerate() {
        for (j, g) in monos.iter().enumerate() {
            let lhs = hamiltonian(&split, &poisson(&split, f, g)?)?;
            let rhs = bracket(&hs[i], &hs[j])?;
            if lhs != rhs {
                failures += 1;
            }
        }
    }
    Ok((monos.len() * monos.len(), failures))
}

fn random_field(desc: &AlgebraDesc, rng: &mut StdRng) -> VectorField<Q> {
    let n = desc.n();
    let mut f = VectorField::zero(n);
    let terms = rng.gen_range(1..=4);
    for _ in 0..terms {
        let degrees = desc.degrees();
        let d = degrees[rng.gen_range(0..degrees.len())];
        let dim = desc.component_dim(d);
        if dim == 0 {
            continue;
        }
        let i = rng.gen_range(0..dim);
        let c = Q::from_i64(rng.gen_range(-3..=3));
        if let Element::Field(v) = desc.basis_element(d, i) {
            f = f.add(&v.scale(&c)).expect("same n");
        }
    }
    f
}

/// div [X, Y] = 0 for random divergence-free X, Y. Returns failures.
pub fn divergence_closure_sample(pairs: usize, seed: u64) -> Result<usize> {
    let mut rng = StdRng::seed_from_u64(seed);
    let descs: Vec<AlgebraDesc> = (3..=5).map(|n| build_algebra(Series::Svect, n)).collect::<Result<_>>()?;
    let mut failures = 0;
    for _ in 0..pairs {
        let desc = &descs[rng.gen_range(0..descs.len())];
        let x = random_field(desc, &mut rng);
        let y = random_field(desc, &mut rng);
        if !divergence(&x).is_zero() || !divergence(&y).is_zero() {
            return Err(Error::Internal("svect basis element with nonzero divergence".into()));
        }
        if !divergence(&bracket(&x, &y)?).is_zero() {
            failures += 1;
        }
    }
    Ok(failures)
}

fn modular_dims<const P: u32>(s: &GradedSubalgebra<Q>) -> (Vec<(i32, usize)>, Vec<usize>) {
    let lie: Arc<Lie<Fp<P>>> = Lie::new(s.lie().desc_arc());
    match s.map_to(&lie) {
        Ok(t) => (t.dims(), t.derived_dims()),
        Err(_) => (Vec::new(), Vec::new()),
    }
}

/// Derived-series dimensions over ℚ and over F_p agree.
pub fn modular_agreement(s: &GradedSubalgebra<Q>, p: u32) -> Result<bool> {
    let (dims, derived) = match p {
        5 => modular_dims::<5>(s),
        7 => modular_dims::<7>(s),
        11 => modular_dims::<11>(s),
        13 => modular_dims::<13>(s),
        3 => modular_dims::<3>(s),
        _ => return Err(Error::Field(format!("p = {p}"))),
    };
    Ok(dims == s.dims() && derived == s.derived_dims())
}

/// closure(s ∪ {v}) = closure(s ∪ {v + w}) for basis v ∉ s_d and w ∈ s_d.
pub fn coset_independence(s: &GradedSubalgebra<Q>) -> (usize, usize) {
    let g = s.lie();
    let mut checked = 0;
    let mut failures = 0;
    for d in g.degrees() {
        let sd = s.component(d);
        for i in 0..g.dim(d) {
            let v = g.unit(d, i);
            if sd.contains(&v) {
                continue;
            }
            let base = s.extend(&[(d, v.clone())]);
            for w in sd.rows() {
                let vw: Vec<Q> = v.iter().zip(w).map(|(a, b)| a.add(b)).collect();
                checked += 1;
                if s.extend(&[(d, vw)]) != base {
                    failures += 1;
                }
            }
        }
    }
    (checked, failures)
}

pub fn properties_suite() -> Report {
    let mut rep = Report::new("properties");
    for desc in built_algebras(5) {
        let name = desc.name();
        let (n, f) = jacobi_check(&desc);
        rep.push(format!("{name}: antisymmetry and Jacobi"), f == 0, format!("{n} triples, {f} failures"));
    }
    for n in 2..=6 {
        let mut splits = vec![HSplit::standard(n)];
        if n >= 3 && n % 2 == 0 {
            splits.push(HSplit::new(n / 2 - 1, 2));
        }
        for split in splits {
            let r = hamiltonian_morphism_check(split);
            rep.push_result(format!("H morphism, n = {n}, split {}+{}", split.k, split.l), r, |(p, f)| {
                (*f == 0, format!("{p} pairs, {f} failures"))
            });
        }
    }
    let r = divergence_closure_sample(1000, 0x5eed);
    rep.push_result("divergence closure on 1000 random svect pairs", r, |f| (*f == 0, format!("{f} failures")));
    match catalog_outputs() {
        Err(e) => rep.push("catalog outputs", false, e.to_string()),
        Ok(outs) => {
            let mut lemma_bad = Vec::new();
            let mut modular_bad = Vec::new();
            let mut json_bad = Vec::new();
            for (name, s) in &outs {
                let s0 = s.restrict_to(&[0]);
                if s.is_solvable() != s0.is_solvable() {
                    lemma_bad.push(name.clone());
                }
                for p in [5, 7, 11] {
                    if !modular_agreement(s, p).unwrap_or(false) {
                        modular_bad.push(format!("{name} mod {p}"));
                    }
                }
                let back = GradedSubalgebra::from_json(s.lie(), &s.to_json());
                if back.as_ref() != Ok(s) {
                    json_bad.push(name.clone());
                }
            }
            rep.push(
                "s solvable iff s_0 solvable on every catalog output",
                lemma_bad.is_empty(),
                format!("{} outputs; mismatches: {}", outs.len(), lemma_bad.join(", ")),
            );
            rep.push(
                "derived-series dimensions agree over Q and F_5, F_7, F_11",
                modular_bad.is_empty(),
                format!("{} outputs; mismatches: {}", outs.len(), modular_bad.join(", ")),
            );
            rep.push(
                "JSON round trip of every catalog output",
                json_bad.is_empty(),
                format!("{} outputs; failures: {}", outs.len(), json_bad.join(", ")),
            );
        }
    }
    for (series, n) in [(Series::Vect, 3), (Series::Svect, 3)] {
        let r = lie(series, n).and_then(|g| ms0(&g)).map(|s| coset_independence(&s));
        rep.push_result(format!("coset independence, ms0 {}", series.display(n)), r, |(c, f)| {
            (*f == 0, format!("{c} pairs, {f} failures"))
        });
    }
    rep
}

/// Superdimension helper re-exported for the CLI's diagnostics.
pub fn small_case_diagnostic(s: &GradedSubalgebra<Q>) -> Option<String> {
    let desc = s.desc();
    let g = s.lie();
    for row in stored_rows() {
        if !row.fits(g) || row.table == 4 {
            continue;
        }
        let Ok(t) = row.build_in(g) else { continue };
        if t.contains_sub(s) && t.dim() > s.dim() && t.is_solvable() {
            return Some(format!(
                "not maximal: contained in the solvable {} of table {} ({:?} inside {:?}) in {}",
                row.name,
                row.table,
                s.dims_trimmed(),
                t.dims_trimmed(),
                desc.name()
            ));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_hamiltonian;

    #[test]
    fn case_ids_parse() {
        for id in witness_case_ids() {
            assert!(witness_suite(&id).is_ok(), "{id}");
        }
        assert!(matches!(witness_suite("prop9/x"), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn prop4_cases_cover_nonsingular_shapes() {
        for n in [5, 6] {
            for s in WittShape::enumerate(n) {
                assert_eq!(prop4_case(&s).is_some(), !s.is_singular(), "{s}");
            }
        }
    }

    #[test]
    fn jacobi_small() {
        let d = build_algebra(Series::H, 4).unwrap();
        assert_eq!(jacobi_check(&d).1, 0);
    }

    #[test]
    fn mutilation_is_closed_and_smaller() {
        let g = lie(Series::Vect, 3).unwrap();
        let s = msc(&g).unwrap();
        let (_, m) = mutilate(&s).unwrap();
        assert_eq!(m.dim() + 1, s.dim());
        assert!(m.is_closed());
    }

    #[test]
    fn hamiltonian_split_variant() {
        let _ = build_hamiltonian(Series::H, HSplit::new(1, 2)).unwrap();
    }
}
