//! Maximality certificates for graded solvable subalgebras, plus the
//! generation check and invariant fingerprints.
//!
//! If t ⊋ s is graded and solvable then some degree d has t_d ≠ s_d, and
//! t_d/s_d is a module over the solvable algebra s_0, so it contains a joint
//! eigenvector v (over the algebraic closure) with closure(s ∪ {v}) ⊆ t.
//! Only the class of v modulo s_d matters. [`check_maximal`] therefore
//! examines, degree by degree, the joint eigenvectors of s_0 on the
//! quotient exactly over ℚ when their eigenvalues are integers, and falls
//! back to sweeping all projective points of the quotient over F_p.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::linalg::{nullspace, Subspace};
use crate::liestruct::{GradedSubalgebra, Homog, Lie};
use crate::scalar::{reduce_vector, Field, Fp, Rational};
use crate::{Error, Result};

type Q = Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub primes: Vec<u32>,
    /// Largest quotient dimension that is enumerated exhaustively.
    pub cap: usize,
    /// Also sweep the whole quotient when exact candidates are available.
    pub full_sweep: bool,
    /// Largest quotient dimension for that cross-check sweep.
    pub check_cap: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            primes: vec![5, 7],
            cap: 8,
            full_sweep: false,
            check_cap: 6,
        }
    }
}

impl SweepConfig {
    pub fn with_full_sweep(mut self) -> Self {
        self.full_sweep = true;
        self
    }

    fn validate(&self) -> Result<()> {
        for &p in &self.primes {
            if !crate::scalar::SUPPORTED_PRIMES.contains(&p) {
                return Err(Error::Field(format!("no sweep support for p = {p}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Maximal,
    NotMaximal,
    EvidenceOnly,
}

/// What was done in one degree.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub degree: i32,
    pub quotient_dim: usize,
    /// `trivial`, `exact`, `exact-eigen`, `exact-eigen+sweep`, `sweep` or
    /// `witness-only`, with `+sweep-check` when a full sweep was added.
    pub method: String,
    /// Dimensions of the joint eigenspaces of s_0 on the quotient, when
    /// they could be determined exactly.
    pub eigenspaces: Option<Vec<usize>>,
    pub exact_candidates: usize,
    pub sweep_points: usize,
    /// Sweep candidates solvable mod p whose lifts are not solvable over ℚ.
    pub modular_artifacts: usize,
    /// Per prime: s_0-invariant lines found by a full sweep, and how many
    /// of them lie in the reduction of the exact joint eigenspaces.
    pub invariant_lines: Vec<InvariantLines>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantLines {
    pub prime: u32,
    pub found: usize,
    pub explained: usize,
}

/// Non-solvability of the closures of the candidates in one check.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub degree: i32,
    pub field: String,
    /// Set for exact candidates; sweeps are summarised.
    pub candidate: Option<String>,
    pub points: usize,
    /// Largest index of a stable nonzero derived term among the closures.
    pub non_solvability_index: usize,
}

/// A solvable over-algebra.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub degree: i32,
    pub extension: String,
    pub over_algebra_dims: Vec<(i32, usize)>,
    pub over_algebra: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub method_by_degree: Vec<DegreeReport>,
    pub candidates_checked: usize,
    pub witnesses: Vec<Witness>,
    pub certificates: Vec<Certificate>,
}

impl Verdict {
    pub fn is_maximal(&self) -> bool {
        self.status == Status::Maximal
    }

    pub fn summary(&self) -> String {
        let methods: Vec<String> = self
            .method_by_degree
            .iter()
            .filter(|r| r.quotient_dim > 0)
            .map(|r| format!("{}:{}(q={})", r.degree, r.method, r.quotient_dim))
            .collect();
        let status = match self.status {
            Status::Maximal => "maximal",
            Status::NotMaximal => "not_maximal",
            Status::EvidenceOnly => "evidence_only",
        };
        let mut out = format!("{status}; {} candidates; {}", self.candidates_checked, methods.join(" "));
        if let Some(w) = self.witnesses.first() {
            out.push_str(&format!("; extension {} in degree {}", w.extension, w.degree));
        }
        out
    }
}

fn solvable_check(s: &GradedSubalgebra<Q>) -> Result<()> {
    if !s.is_closed() {
        return Err(Error::NotClosed("check_maximal needs a subalgebra".into()));
    }
    if !s.is_solvable() {
        return Err(Error::Unsupported("check_maximal needs a solvable subalgebra".into()));
    }
    Ok(())
}

/// Projective points of F^w: first nonzero coordinate equal to one.
fn projective_points<F: Field>(w: usize) -> Vec<Vec<F>> {
    let p = F::characteristic() as usize;
    let mut out = Vec::new();
    for lead in 0..w {
        let free = w - lead - 1;
        let count = p.pow(free as u32);
        for mut idx in 0..count {
            let mut v = vec![F::zero(); w];
            v[lead] = F::one();
            for j in (lead + 1..w).rev() {
                v[j] = F::from_i64((idx % p) as i64);
                idx /= p;
            }
            out.push(v);
        }
    }
    out
}

/// Number of projective points of F_p^w.
pub fn point_count(p: u32, w: usize) -> usize {
    let p = p as usize;
    (p.pow(w as u32) - 1) / (p - 1)
}

/// Symmetric representative in (−p/2, p/2].
fn symmetric_lift<F: Field>(c: &F) -> Q {
    let p = F::characteristic() as i64;
    let v = c.lift().to_i64().unwrap();
    Q::from_i64(if v > p / 2 { v - p } else { v })
}

fn combine<F: Field>(coeffs: &[F], rows: &[Vec<F>], width: usize) -> Vec<F> {
    let mut v = vec![F::zero(); width];
    for (c, r) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(r) {
            x.add_mul_assign(c, y);
        }
    }
    v
}

/// Joint eigenspaces of s_0 on g_d/s_d, in quotient coordinates, with their
/// integer weights (one per s_0 basis vector). `None` if some eigenvalue is
/// not an integer.
fn joint_eigenspaces(
    lie: &Lie<Q>,
    s: &GradedSubalgebra<Q>,
    d: i32,
    reps: &Subspace<Q>,
) -> Option<Vec<(Subspace<Q>, Vec<i64>)>> {
    let sd = s.component(d);
    let q = reps.dim();
    let s0 = s.basis_of(0);
    let op = |y: &[Q], x: &[Q]| -> Vec<Q> {
        match lie.bracket(0, y, d, x) {
            Some((_, b)) => reps.coordinates(&sd.reduce(&b)).expect("s_0 preserves the container"),
            None => vec![Q::zero(); q],
        }
    };
    let in_ambient = |a: &[Q]| combine(a, reps.rows(), lie.dim(d));
    // joint eigenvectors are killed by [s_0, s_0]
    let mut derived = Subspace::new(lie.dim(0));
    for (i, a) in s0.iter().enumerate() {
        for b in &s0[i + 1..] {
            if let Some((_, c)) = lie.bracket(0, a, 0, b) {
                derived.insert(&c);
            }
        }
    }
    let kernel = {
        let images: Vec<Vec<Q>> = (0..q)
            .map(|i| {
                let e = reps.rows()[i].clone();
                derived.rows().iter().flat_map(|z| op(z, &e)).collect()
            })
            .collect();
        nullspace(&images, derived.dim() * q)
    };
    let mut spaces: Vec<(Subspace<Q>, Vec<i64>)> = vec![(kernel, Vec::new())];
    for y in &s0 {
        let mut next = Vec::new();
        for (w, weights) in spaces {
            let dim = w.dim();
            if dim == 0 {
                continue;
            }
            // matrix of ad y on w in the basis w.rows()
            let cols: Vec<Vec<Q>> = w
                .rows()
                .iter()
                .map(|a| w.coordinates(&op(y, &in_ambient(a))).expect("w is invariant"))
                .collect();
            let bound = (0..dim)
                .map(|i| cols.iter().fold(Q::zero(), |acc, c| acc.add(&c[i].abs())))
                .max_by(|a, b| a.to_big().cmp(&b.to_big()))
                .unwrap_or_else(Q::zero);
            let bound = bound.to_big().ceil().to_integer().to_string().parse::<i64>().ok()?;
            let mut generalized = 0;
            for lambda in -bound..=bound {
                let l = Q::from_i64(lambda);
                let shifted: Vec<Vec<Q>> = cols
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        let mut c = c.clone();
                        c[j] = c[j].sub(&l);
                        c
                    })
                    .collect();
                let eig = nullspace(&shifted, dim);
                if eig.is_zero() {
                    continue;
                }
                // (M − λ)^dim e_j, column by column
                let apply = |v: &[Q]| -> Vec<Q> {
                    let mut out = vec![Q::zero(); dim];
                    for (c, col) in v.iter().zip(&shifted) {
                        for (o, x) in out.iter_mut().zip(col) {
                            o.add_mul_assign(c, x);
                        }
                    }
                    out
                };
                let powered: Vec<Vec<Q>> = (0..dim)
                    .map(|j| {
                        let mut v = crate::linalg::unit(dim, j);
                        for _ in 0..dim {
                            v = apply(&v);
                        }
                        v
                    })
                    .collect();
                generalized += nullspace(&powered, dim).dim();
                let mut sub = Subspace::new(q);
                for r in eig.rows() {
                    sub.insert(&combine(r, w.rows(), q));
                }
                let mut wts = weights.clone();
                wts.push(lambda);
                next.push((sub, wts));
            }
            if generalized != dim {
                return None;
            }
        }
        spaces = next;
    }
    Some(spaces)
}

/// Outcome of closing s with one candidate over ℚ.
enum Closure {
    Solvable(GradedSubalgebra<Q>),
    NonSolvable(usize),
}

fn close_exact(s: &GradedSubalgebra<Q>, d: i32, v: &[Q]) -> Closure {
    let c = s.extend(&[(d, v.to_vec())]);
    match c.non_solvability_index() {
        Some(i) => Closure::NonSolvable(i),
        None => Closure::Solvable(c),
    }
}

struct SweepResult {
    points: usize,
    max_index: usize,
    artifacts: usize,
    /// ℚ-solvable lifts, in enumeration order.
    counterexamples: Vec<Vec<Q>>,
    invariant: Option<InvariantLines>,
}

/// Sweep the projective points of span(rows) modulo s_d over F_P.
///
/// `eigen` carries the exact joint eigenspaces (ambient coordinates and
/// weights) for the invariant-line consistency check.
fn sweep<const P: u32>(
    s: &GradedSubalgebra<Q>,
    d: i32,
    rows: &[Vec<Q>],
    eigen: Option<&[(Vec<Vec<Q>>, Vec<i64>)]>,
) -> Result<SweepResult> {
    let lie: Arc<Lie<Fp<P>>> = Lie::new(s.lie().desc_arc());
    let mut sp = GradedSubalgebra::zero(&lie);
    for (e, v) in s.basis() {
        sp.insert(e, &reduce_vector::<Fp<P>>(&v));
    }
    if sp.dims() != s.dims() {
        return Err(Error::Field(format!("s loses rank modulo {P}")));
    }
    let spd = sp.component(d);
    let width = lie.dim(d);
    let basis: Vec<Vec<Fp<P>>> = rows.iter().map(|r| reduce_vector(r)).collect();
    let mut check = spd.clone();
    for b in &basis {
        check.insert(b);
    }
    if check.dim() != spd.dim() + basis.len() {
        return Err(Error::Field(format!("the quotient loses rank modulo {P}")));
    }
    let points = projective_points::<Fp<P>>(basis.len());
    let s0p = sp.basis_of(0);
    let results: Vec<(Option<usize>, Option<Vec<Fp<P>>>, Option<Vec<Fp<P>>>)> = points
        .par_iter()
        .map(|a| {
            let v = combine(a, &basis, width);
            let red = spd.reduce(&v);
            if crate::linalg::is_zero_vec(&red) {
                return (None, None, None);
            }
            let c = sp.extend(&[(d, red.clone())]);
            let idx = c.non_solvability_index();
            let solvable = idx.is_none().then(|| red.clone());
            let invariant = eigen.is_some() && {
                let mut line = spd.clone();
                line.insert(&red);
                s0p.iter().all(|y| match lie.bracket(0, y, d, &red) {
                    Some((_, b)) => line.contains(&b),
                    None => true,
                })
            };
            (idx, solvable, invariant.then_some(red))
        })
        .collect();
    let mut out = SweepResult {
        points: points.len(),
        max_index: 0,
        artifacts: 0,
        counterexamples: Vec::new(),
        invariant: None,
    };
    for (idx, solvable, _) in &results {
        if let Some(i) = idx {
            out.max_index = out.max_index.max(*i);
        }
        if let Some(v) = solvable {
            let lift: Vec<Q> = v.iter().map(symmetric_lift).collect();
            match close_exact(s, d, &lift) {
                Closure::Solvable(_) => out.counterexamples.push(lift),
                Closure::NonSolvable(_) => out.artifacts += 1,
            }
        }
    }
    if let Some(eigen) = eigen {
        let lines: Vec<&Vec<Fp<P>>> = results.iter().filter_map(|r| r.2.as_ref()).collect();
        let weight_mod = |l: i64| Fp::<P>::from_i64(l);
        let mut explained = 0;
        for v in &lines {
            // weights of v mod p
            let pivot = {
                let r = spd.reduce(v);
                r.iter().position(|c| !c.is_zero()).unwrap()
            };
            let reduced_v = spd.reduce(v);
            let weights: Vec<Fp<P>> = s0p
                .iter()
                .map(|y| match lie.bracket(0, y, d, v) {
                    Some((_, b)) => {
                        let r = spd.reduce(&b);
                        r[pivot].div(&reduced_v[pivot])
                    }
                    None => Fp::<P>::zero(),
                })
                .collect();
            let mut target = spd.clone();
            for (rows, wts) in eigen {
                if wts.iter().map(|&l| weight_mod(l)).eq(weights.iter().cloned()) {
                    for r in rows {
                        target.insert(&reduce_vector::<Fp<P>>(r));
                    }
                }
            }
            if target.contains(v) {
                explained += 1;
            }
        }
        out.invariant = Some(InvariantLines {
            prime: P,
            found: lines.len(),
            explained,
        });
    }
    Ok(out)
}

fn sweep_at(
    p: u32,
    s: &GradedSubalgebra<Q>,
    d: i32,
    rows: &[Vec<Q>],
    eigen: Option<&[(Vec<Vec<Q>>, Vec<i64>)]>,
) -> Result<SweepResult> {
    match p {
        3 => sweep::<3>(s, d, rows, eigen),
        5 => sweep::<5>(s, d, rows, eigen),
        7 => sweep::<7>(s, d, rows, eigen),
        11 => sweep::<11>(s, d, rows, eigen),
        13 => sweep::<13>(s, d, rows, eigen),
        _ => Err(Error::Field(format!("no sweep support for p = {p}"))),
    }
}

/// Decide whether the solvable subalgebra `s` is maximal among solvable
/// graded subalgebras of `container` (the whole ambient when `None`).
pub fn check_maximal(
    s: &GradedSubalgebra<Q>,
    container: Option<&GradedSubalgebra<Q>>,
    cfg: &SweepConfig,
) -> Result<Verdict> {
    cfg.validate()?;
    solvable_check(s)?;
    let lie = s.lie().clone();
    let full = GradedSubalgebra::full(&lie);
    let container = container.unwrap_or(&full);
    if !container.contains_sub(s) {
        return Err(Error::NotContained("s is not inside the container".into()));
    }
    if !container.is_closed() {
        return Err(Error::NotClosed("the container is not a subalgebra".into()));
    }
    let mut verdict = Verdict {
        status: Status::Maximal,
        method_by_degree: Vec::new(),
        candidates_checked: 0,
        witnesses: Vec::new(),
        certificates: Vec::new(),
    };
    let mut evidence_only = false;
    for d in lie.degrees() {
        let sd = s.component(d);
        let mut reps = Subspace::new(lie.dim(d));
        for c in container.component(d).rows() {
            reps.insert(&sd.reduce(c));
        }
        let q = reps.dim();
        let mut report = DegreeReport {
            degree: d,
            quotient_dim: q,
            method: "trivial".into(),
            eigenspaces: None,
            exact_candidates: 0,
            sweep_points: 0,
            modular_artifacts: 0,
            invariant_lines: Vec::new(),
        };
        if q == 0 {
            verdict.method_by_degree.push(report);
            continue;
        }
        let mut exact: Vec<Vec<Q>> = Vec::new();
        let mut inner: Vec<Vec<Vec<Q>>> = Vec::new();
        let mut eigen_ambient: Option<Vec<(Vec<Vec<Q>>, Vec<i64>)>> = None;
        let mut sweep_whole = false;
        if q == 1 {
            exact.push(reps.rows()[0].clone());
            report.method = "exact".into();
        } else {
            match joint_eigenspaces(&lie, s, d, &reps) {
                Some(spaces) => {
                    report.eigenspaces = Some(spaces.iter().map(|(w, _)| w.dim()).collect());
                    let mut amb = Vec::new();
                    for (w, wts) in &spaces {
                        let rows: Vec<Vec<Q>> =
                            w.rows().iter().map(|a| combine(a, reps.rows(), lie.dim(d))).collect();
                        if rows.len() == 1 {
                            exact.push(rows[0].clone());
                        } else {
                            inner.push(rows.clone());
                        }
                        amb.push((rows, wts.clone()));
                    }
                    eigen_ambient = Some(amb);
                    report.method = if inner.is_empty() { "exact-eigen" } else { "exact-eigen+sweep" }.into();
                    if inner.iter().any(|r| r.len() > cfg.cap) {
                        report.method = "witness-only".into();
                        evidence_only = true;
                        inner.retain(|r| r.len() <= cfg.cap);
                    }
                }
                None if q <= cfg.cap => {
                    sweep_whole = true;
                    report.method = "sweep".into();
                }
                None => {
                    report.method = "witness-only".into();
                    evidence_only = true;
                }
            }
        }
        // exact candidates
        let outcomes: Vec<Closure> = exact.par_iter().map(|v| close_exact(s, d, v)).collect();
        report.exact_candidates = exact.len();
        verdict.candidates_checked += exact.len();
        for (v, o) in exact.iter().zip(outcomes) {
            match o {
                Closure::NonSolvable(i) => verdict.certificates.push(Certificate {
                    degree: d,
                    field: "Q".into(),
                    candidate: Some(lie.render(d, v)),
                    points: 1,
                    non_solvability_index: i,
                }),
                Closure::Solvable(c) => {
                    if verdict.witnesses.is_empty() {
                        verdict.witnesses.push(witness(s, d, v, c)?);
                    }
                }
            }
        }
        // sweeps
        let mut sweeps: Vec<(Vec<Vec<Q>>, bool)> = inner.into_iter().map(|r| (r, false)).collect();
        if sweep_whole || (cfg.full_sweep && q <= cfg.check_cap.min(cfg.cap)) {
            sweeps.push((reps.rows().to_vec(), true));
            if !sweep_whole {
                report.method.push_str("+sweep-check");
            }
        }
        for (rows, whole) in &sweeps {
            for &p in &cfg.primes {
                let eig = if *whole { eigen_ambient.as_deref() } else { None };
                let r = sweep_at(p, s, d, rows, eig)?;
                report.sweep_points += r.points;
                report.modular_artifacts += r.artifacts;
                verdict.candidates_checked += r.points;
                if let Some(il) = r.invariant {
                    report.invariant_lines.push(il);
                }
                verdict.certificates.push(Certificate {
                    degree: d,
                    field: format!("F{p}"),
                    candidate: None,
                    points: r.points,
                    non_solvability_index: r.max_index,
                });
                if let Some(v) = r.counterexamples.first() {
                    if verdict.witnesses.is_empty() {
                        let c = s.extend(&[(d, v.clone())]);
                        verdict.witnesses.push(witness(s, d, v, c)?);
                    }
                }
            }
        }
        verdict.method_by_degree.push(report);
        if !verdict.witnesses.is_empty() {
            break;
        }
    }
    verdict.status = if !verdict.witnesses.is_empty() {
        Status::NotMaximal
    } else if evidence_only {
        Status::EvidenceOnly
    } else {
        Status::Maximal
    };
    Ok(verdict)
}

fn witness(s: &GradedSubalgebra<Q>, d: i32, v: &[Q], over: GradedSubalgebra<Q>) -> Result<Witness> {
    if !(over.is_closed() && over.is_solvable() && over.contains_sub(s) && over.dim() > s.dim()) {
        return Err(Error::Internal("over-algebra failed its re-check".into()));
    }
    Ok(Witness {
        degree: d,
        extension: s.lie().render(d, v),
        over_algebra_dims: over.dims(),
        over_algebra: over.to_json(),
    })
}

/// Re-check a not_maximal verdict's witness against `s`.
pub fn recheck_witness(s: &GradedSubalgebra<Q>, w: &Witness) -> Result<bool> {
    let over = GradedSubalgebra::from_json(s.lie(), &w.over_algebra)?;
    Ok(over.is_closed() && over.is_solvable() && over.contains_sub(s) && over.dim() > s.dim())
}

/// True iff g_{−1} generates the whole algebra.
pub fn generation_check<F: Field>(lie: &Arc<Lie<F>>) -> bool {
    let gens: Vec<Homog<F>> = (0..lie.dim(-1)).map(|i| (-1, lie.unit(-1, i))).collect();
    GradedSubalgebra::closure(lie, &gens) == GradedSubalgebra::full(lie)
}

/// Superdimension (even, odd).
pub type SuperDim = (usize, usize);

/// Isomorphism invariants of a graded subalgebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    /// Nonzero components: (degree, superdimension).
    pub graded: Vec<(i32, SuperDim)>,
    pub ungraded: UngradedFingerprint,
}

/// The part of the fingerprint that ignores the grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UngradedFingerprint {
    pub superdim: SuperDim,
    pub derived: Vec<SuperDim>,
    pub center: usize,
}

fn superdim<F: Field>(s: &GradedSubalgebra<F>) -> SuperDim {
    let desc = s.desc();
    s.dims().iter().fold((0, 0), |(e, o), &(d, k)| {
        if desc.parity(d) == 0 {
            (e + k, o)
        } else {
            (e, o + k)
        }
    })
}

pub fn fingerprint<F: Field>(s: &GradedSubalgebra<F>) -> Fingerprint {
    let graded = s
        .dims()
        .into_iter()
        .filter(|&(_, k)| k > 0)
        .map(|(d, _)| (d, superdim(&s.restrict_to(&[d]))))
        .collect();
    let derived = if s.is_zero() {
        Vec::new()
    } else {
        s.derived_series_unchecked()[1..].iter().map(superdim).collect()
    };
    Fingerprint {
        graded,
        ungraded: UngradedFingerprint {
            superdim: superdim(s),
            derived,
            center: s.center_dim(),
        },
    }
}

/// A named pass/fail check with a human-readable detail.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

/// An ordered list of checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            ok,
            detail: detail.into(),
        });
    }

    /// Record an error as a failed check.
    pub fn push_result<T>(&mut self, name: impl Into<String>, r: Result<T>, detail: impl FnOnce(&T) -> (bool, String)) {
        match r {
            Ok(v) => {
                let (ok, d) = detail(&v);
                self.push(name, ok, d);
            }
            Err(e) => self.push(name, false, format!("error: {e}")),
        }
    }

    pub fn extend(&mut self, other: Report) {
        for mut c in other.checks {
            if !other.title.is_empty() {
                c.name = format!("{}: {}", other.title, c.name);
            }
            self.checks.push(c);
        }
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.ok).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.title.is_empty() {
            out.push_str(&format!("== {}\n", self.title));
        }
        for c in &self.checks {
            out.push_str(&format!("[{}] {}: {}\n", if c.ok { "ok" } else { "FAIL" }, c.name, c.detail));
        }
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), self.failures()));
        out
    }
}

/// Count the stored candidates by status, for summaries.
pub fn tally(verdicts: &[Verdict]) -> BTreeMap<&'static str, usize> {
    let mut m = BTreeMap::new();
    for v in verdicts {
        let k = match v.status {
            Status::Maximal => "maximal",
            Status::NotMaximal => "not_maximal",
            Status::EvidenceOnly => "evidence_only",
        };
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Series};
    use crate::catalog::{ms0, msc};

    fn lie(series: Series, n: usize) -> Arc<Lie<Q>> {
        Lie::from_desc(build_algebra(series, n).unwrap())
    }

    #[test]
    fn points() {
        assert_eq!(projective_points::<Fp<5>>(3).len(), point_count(5, 3));
        assert_eq!(projective_points::<Fp<7>>(1).len(), 1);
    }

    #[test]
    fn vect2_controls() {
        let g = lie(Series::Vect, 2);
        let v = check_maximal(&msc(&g).unwrap(), None, &SweepConfig::default().with_full_sweep()).unwrap();
        assert_eq!(v.status, Status::Maximal, "{}", v.summary());
        let v = check_maximal(&ms0(&g).unwrap(), None, &SweepConfig::default()).unwrap();
        assert_eq!(v.status, Status::NotMaximal);
        assert_eq!(v.witnesses[0].extension, "d1");
        assert!(recheck_witness(&ms0(&g).unwrap(), &v.witnesses[0]).unwrap());
    }

    #[test]
    fn generation() {
        assert!(generation_check(&lie(Series::TildeSvect, 4)));
        // g_{-1} is commutative in the undeformed series
        assert!(!generation_check(&lie(Series::Vect, 3)));
        assert!(!generation_check(&lie(Series::Svect, 4)));
    }

    #[test]
    fn empty_fingerprint() {
        let g = lie(Series::Vect, 2);
        let f = fingerprint(&GradedSubalgebra::zero(&g));
        assert!(f.graded.is_empty());
        assert!(f.ungraded.derived.is_empty());
        assert_eq!(f.ungraded.superdim, (0, 0));
    }
}
