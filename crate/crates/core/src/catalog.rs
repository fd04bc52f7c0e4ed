//! The classified maximal graded solvable subalgebras: Borel parts of g_0,
//! ms0, msc, msV for the vect-type series and msV for h, indexed by Witt
//! shapes.
//!
//! Every construction that has two independent descriptions (a monomial
//! span and a Cartan prolongation) computes both and fails with
//! [`Error::Internal`] when they disagree.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{build_algebra, RawKey, Series};
use crate::grassmann::{HSplit, Monomial};
use crate::linalg::Subspace;
use crate::liestruct::{convert, GradedSubalgebra, Homog, Lie};
use crate::prolong::{cartan_prolong, v_star};
use crate::scalar::{Field, Rational};
use crate::{Error, Result};

fn is_vect_type(series: Series) -> bool {
    matches!(series, Series::Vect | Series::Svect | Series::TildeSvect)
}

fn is_h_type(series: Series) -> bool {
    matches!(series, Series::H | Series::HPrime)
}

fn lift_space<F: Field>(sub: &Subspace<Rational>) -> Result<Subspace<F>> {
    let mut out = Subspace::new(sub.width());
    for r in sub.rows() {
        out.insert(&convert(r)?);
    }
    Ok(out)
}

/// Elements of g_d supported on the raw keys accepted by `pred`.
fn key_span<F: Field>(lie: &Lie<F>, degree: i32, pred: impl Fn(&RawKey) -> bool) -> Result<Subspace<F>> {
    lift_space(&lie.desc().restricted_span(degree, pred))
}

/// Graded span of the raw keys accepted by `pred` in every degree.
fn graded_key_span<F: Field>(
    lie: &Arc<Lie<F>>,
    pred: impl Fn(&RawKey) -> bool + Copy,
) -> Result<GradedSubalgebra<F>> {
    let mut s = GradedSubalgebra::zero(lie);
    for d in lie.degrees() {
        s.set_component(d, key_span(lie, d, pred)?);
    }
    Ok(s)
}

fn standard_split(lie: &Lie<impl Field>) -> Result<HSplit> {
    let desc = lie.desc();
    match desc.split() {
        Some(s) if s == HSplit::standard(desc.n()) => Ok(s),
        Some(_) => Err(Error::Unsupported(format!(
            "{}: Borel data is defined for the standard coordinate split",
            desc.name()
        ))),
        None => unreachable!("Hamiltonian series always carry a split"),
    }
}

fn check_catalog_series(lie: &Lie<impl Field>) -> Result<()> {
    let s = lie.desc().series();
    if is_vect_type(s) || is_h_type(s) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{} is not covered by the catalog (use h or h')",
            lie.desc().name()
        )))
    }
}

/// Kinds of variable in the standard Hamiltonian split.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum HVar {
    Xi(usize),
    Eta(usize),
    Zeta,
}

fn h_var(split: &HSplit, v: usize) -> HVar {
    if v <= split.k {
        HVar::Xi(v)
    } else if v <= 2 * split.k {
        HVar::Eta(v - split.k)
    } else {
        HVar::Zeta
    }
}

/// Degree-0 Borel part, vect type: ξ_i∂_j with i ≥ j.
fn vect_borel_key(key: &RawKey) -> bool {
    let (m, j) = *key;
    m.degree() == 1 && m.indices().next().unwrap() >= j as usize
}

/// Degree-0 Borel part, h type: ξ_iξ_j, ξ_iη_j with i ≤ j, ξ_iζ.
fn h_borel_monomial(split: &HSplit, m: Monomial) -> bool {
    let v: Vec<HVar> = m.indices().map(|i| h_var(split, i)).collect();
    match v.as_slice() {
        [HVar::Xi(_), HVar::Xi(_)] | [HVar::Xi(_), HVar::Zeta] => true,
        [HVar::Xi(i), HVar::Eta(j)] => i <= j,
        _ => false,
    }
}

/// ξ_I∂_j with every index of I at least j.
fn vect_msc_key(key: &RawKey) -> bool {
    let (m, j) = *key;
    m.indices().all(|i| i >= j as usize)
}

/// Pure ξ (optionally times ζ), or ξ_Iη_j with every index of I at most j.
fn h_msc_monomial(split: &HSplit, m: Monomial) -> bool {
    let mut xs = Vec::new();
    let mut es = Vec::new();
    let mut z = false;
    for i in m.indices() {
        match h_var(split, i) {
            HVar::Xi(a) => xs.push(a),
            HVar::Eta(b) => es.push(b),
            HVar::Zeta => z = true,
        }
    }
    match es.as_slice() {
        [] => true,
        [j] => !z && xs.iter().all(|i| i <= j),
        _ => false,
    }
}

/// A maximal solvable subalgebra of g_0 in the catalog's triangular
/// convention: lower-triangular for vect/svect/~svect, upper-triangular for
/// h/h′.
pub fn borel0<F: Field>(lie: &Arc<Lie<F>>) -> Result<Subspace<F>> {
    check_catalog_series(lie)?;
    if is_vect_type(lie.desc().series()) {
        key_span(lie, 0, vect_borel_key)
    } else {
        let split = standard_split(lie)?;
        key_span(lie, 0, |&(m, _)| h_borel_monomial(&split, m))
    }
}

/// ms0: Borel part in degree 0 plus every positive component.
pub fn ms0<F: Field>(lie: &Arc<Lie<F>>) -> Result<GradedSubalgebra<F>> {
    let b0 = borel0(lie)?;
    let mut s = GradedSubalgebra::zero(lie);
    s.set_component(0, b0);
    for d in lie.degrees() {
        if d > 0 {
            s.set_component(d, Subspace::full(lie.dim(d)));
        }
    }
    if !s.is_closed() {
        return Err(Error::Internal(format!("ms0 of {} is not closed", lie.desc().name())));
    }
    Ok(s)
}

/// The monomial description of msc, without the prolongation cross-check.
pub fn msc_explicit<F: Field>(lie: &Arc<Lie<F>>) -> Result<GradedSubalgebra<F>> {
    check_catalog_series(lie)?;
    match lie.desc().series() {
        Series::TildeSvect => Err(msc_refused(lie)),
        Series::Vect | Series::Svect => graded_key_span(lie, vect_msc_key),
        _ => {
            let split = standard_split(lie)?;
            graded_key_span(lie, |&(m, _)| h_msc_monomial(&split, m))
        }
    }
}

fn msc_refused(lie: &Lie<impl Field>) -> Error {
    Error::Unsupported(format!(
        "{}: g_-1 generates the whole algebra, so no solvable subalgebra contains it",
        lie.desc().name()
    ))
}

/// msc = (g_{−1}, borel0)_*, checked against the monomial description.
pub fn msc<F: Field>(lie: &Arc<Lie<F>>) -> Result<GradedSubalgebra<F>> {
    if lie.desc().series() == Series::TildeSvect {
        return Err(msc_refused(lie));
    }
    let b0 = borel0(lie)?;
    let prolonged = cartan_prolong(lie, &Subspace::full(lie.dim(-1)), &b0)?;
    let explicit = msc_explicit(lie)?;
    if prolonged != explicit {
        return Err(Error::Internal(format!(
            "{}: msc prolongation {:?} differs from the monomial description {:?}",
            lie.desc().name(),
            prolonged.dims(),
            explicit.dims()
        )));
    }
    Ok(prolonged)
}

/// Dimension counts for the structure formulas of msc(h(0|n)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MscCount {
    pub n: usize,
    /// k with n = 2k or 2k+1.
    pub k: usize,
    /// dim msc(h(0|n)) as constructed.
    pub actual: usize,
    /// (2^k − 1) + (2^{k+1} − 2) for even n; for odd n the count of
    /// Λ̄(ξ)⊗hei(ζ) taken literally, 2(2^k − 1), plus 2^{k+1} − 2.
    pub literal: usize,
    /// For odd n, Λ(ξ)⊗hei(ζ) modulo the central constant: 2·2^k − 1,
    /// plus 2^{k+1} − 2. Equal to `literal` for even n.
    pub corrected: usize,
}

/// Dimension of msc(vect(0|k)).
pub fn msc_vect_dim(k: usize) -> usize {
    (1usize << (k + 1)) - 2
}

/// Compare dim msc(h(0|n)) with the counts predicted by its structure
/// formula.
pub fn msc_h_count(n: usize) -> Result<MscCount> {
    let lie = Lie::<Rational>::from_desc(build_algebra(Series::H, n)?);
    let actual = msc(&lie)?.dim();
    let k = n / 2;
    let lam_bar = (1usize << k) - 1;
    let (literal, corrected) = if n % 2 == 0 {
        (lam_bar + msc_vect_dim(k), lam_bar + msc_vect_dim(k))
    } else {
        (2 * lam_bar + msc_vect_dim(k), 2 * lam_bar + 1 + msc_vect_dim(k))
    };
    Ok(MscCount {
        n,
        k,
        actual,
        literal,
        corrected,
    })
}

/// The (**) description of (⟨∂_1..∂_k⟩, borel0)_* in vect(0|n): key (ξ_M, j)
/// with I = M ∩ {1..k}, J = M ∖ I.
fn msv_vect_key(k: usize, key: &RawKey) -> bool {
    let (m, j) = *key;
    let j = j as usize;
    let low: Vec<usize> = m.indices().filter(|&i| i <= k).collect();
    let high: Vec<usize> = m.indices().filter(|&i| i > k).collect();
    if j <= k {
        // msc of vect(ξ_1..ξ_k), or a positive power of ξ_{k+1..n} times vect(ξ_1..ξ_k)
        !high.is_empty() || low.iter().all(|&i| i >= j)
    } else {
        // Λ(ξ_1..ξ_k) ⊗ ms0 of vect(ξ_{k+1}..ξ_n)
        match high.as_slice() {
            [] => false,
            [a] => *a >= j,
            _ => true,
        }
    }
}

fn check_k(lie: &Lie<impl Field>, k: usize) -> Result<()> {
    let n = lie.desc().n();
    if k == 0 || k >= n {
        return Err(Error::Inadmissible(format!("need 1 ≤ k < {n}, got k = {k}")));
    }
    Ok(())
}

/// The three-summand monomial span for V = ⟨∂_1..∂_k⟩, intersected with the
/// ambient (divergence-free fields for svect and ~svect).
pub fn msv_vect_explicit<F: Field>(lie: &Arc<Lie<F>>, k: usize) -> Result<GradedSubalgebra<F>> {
    if !is_vect_type(lie.desc().series()) {
        return Err(Error::Unsupported(format!("msV by k is for vect-type series, not {}", lie.desc().name())));
    }
    check_k(lie, k)?;
    graded_key_span(lie, |key| msv_vect_key(k, key))
}

/// ⟨∂_1..∂_k⟩ in degree −1 (realised as (1+Ξ)∂_i in ~svect).
pub fn partials_span<F: Field>(lie: &Arc<Lie<F>>, k: usize) -> Result<Subspace<F>> {
    key_span(lie, -1, |&(_, j)| (j as usize) <= k)
}

/// msV for V = ⟨∂_1..∂_k⟩ in vect, svect or ~svect: the prolongation of
/// (V, borel0), checked against the monomial description.
pub fn msv_vect<F: Field>(lie: &Arc<Lie<F>>, k: usize) -> Result<GradedSubalgebra<F>> {
    let explicit = msv_vect_explicit(lie, k)?;
    let v = partials_span(lie, k)?;
    let prolonged = cartan_prolong(lie, &v, &borel0(lie)?)?;
    if prolonged != explicit {
        return Err(Error::Internal(format!(
            "{}, k = {k}: prolongation {:?} differs from the monomial description {:?}",
            lie.desc().name(),
            prolonged.dims(),
            explicit.dims()
        )));
    }
    Ok(prolonged)
}

/// Outcome of testing the two readings of the ~svect line of (**).
#[derive(Clone, Debug, Serialize)]
pub struct TildeReading {
    pub n: usize,
    pub k: usize,
    /// (s_{−1}, s_0)_* of svect(0|n), realised as (1+Ξ)D: a closed
    /// subalgebra equal to the ~svect prolongation.
    pub svect_reading_ok: bool,
    /// (s_{−1}, s_0)_* of vect(0|n) times (1+Ξ) lies inside ~svect.
    pub vect_reading_inside: bool,
    /// First element of the vect prolongation that is not divergence free.
    pub vect_reading_obstruction: Option<String>,
}

/// Test both readings of the ~svect line of (**) for V = ⟨∂_1..∂_k⟩.
pub fn tilde_readings(n: usize, k: usize) -> Result<TildeReading> {
    let tilde = Lie::<Rational>::from_desc(build_algebra(Series::TildeSvect, n)?);
    let vect = Lie::<Rational>::from_desc(build_algebra(Series::Vect, n)?);
    let svect_reading_ok = match msv_vect(&tilde, k) {
        Ok(s) => s.is_closed() && s.is_solvable(),
        Err(Error::Internal(_)) | Err(Error::NotClosed(_)) => false,
        Err(e) => return Err(e),
    };
    let vp = msv_vect(&vect, k)?;
    let mut obstruction = None;
    'outer: for (d, v) in vp.basis() {
        let e = vect.element(d, &v);
        if tilde.desc().decompose(&e).is_err() {
            obstruction = Some(vect.render(d, &v));
            break 'outer;
        }
    }
    Ok(TildeReading {
        n,
        k,
        svect_reading_ok,
        vect_reading_inside: obstruction.is_none(),
        vect_reading_obstruction: obstruction,
    })
}

/// Normal form of a subspace V ⊆ h(0|n)_{−1} relative to the invariant
/// form: k = dim V∩V^⊥, l and m hyperbolic pairs in the complements inside
/// V and V^⊥, and the optional odd-dimensional leftovers ζ^a ∈ V, ζ^b ∈ V^⊥.
///
/// Variables are laid out in the split (K = k+l+m, [za]+[zb]) as
/// ξ, ξ^a, ξ^b, η, η^a, η^b, ζ^a, ζ^b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WittShape {
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub za: bool,
    pub zb: bool,
}

/// Role of a variable relative to a Witt shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Xi(usize),
    Eta(usize),
    Xa(usize),
    Ea(usize),
    Za,
    Xb(usize),
    Eb(usize),
    Zb,
}

impl WittShape {
    pub fn new(k: usize, l: usize, m: usize, za: bool, zb: bool) -> Self {
        WittShape { k, l, m, za, zb }
    }

    pub fn n(&self) -> usize {
        2 * (self.k + self.l + self.m) + self.za as usize + self.zb as usize
    }

    pub fn dim_v(&self) -> usize {
        self.k + 2 * self.l + self.za as usize
    }

    pub fn dim_v_perp(&self) -> usize {
        self.k + 2 * self.m + self.zb as usize
    }

    pub fn split(&self) -> HSplit {
        HSplit::new(self.k + self.l + self.m, self.za as usize + self.zb as usize)
    }

    /// V ≠ 0, V ≠ g_{−1} and n matches.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::Shape(format!("{self} describes n = {}, not {n}", self.n())));
        }
        if self.dim_v() == 0 {
            return Err(Error::Shape(format!("{self}: V = 0")));
        }
        if self.dim_v_perp() == 0 {
            return Err(Error::Shape(format!("{self}: V is all of g_-1")));
        }
        Ok(())
    }

    /// All valid shapes for a given n, in lexicographic order.
    pub fn enumerate(n: usize) -> Vec<WittShape> {
        let mut out = Vec::new();
        for za in [false, true] {
            for zb in [false, true] {
                let z = za as usize + zb as usize;
                if n < z || (n - z) % 2 != 0 {
                    continue;
                }
                let big_k = (n - z) / 2;
                for k in 0..=big_k {
                    for l in 0..=big_k - k {
                        let s = WittShape::new(k, l, big_k - k - l, za, zb);
                        if s.validate(n).is_ok() {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// dim Ker B|_V ≤ 1 and Ker B|_V has codimension 1 in V^⊥.
    pub fn is_singular(&self) -> bool {
        self.k <= 1 && self.m == 0 && self.zb
    }

    fn big_k(&self) -> usize {
        self.k + self.l + self.m
    }

    /// Variable index of a role, if that variable exists.
    pub fn var(&self, r: Role) -> Option<usize> {
        let kk = self.big_k();
        let (k, l, m) = (self.k, self.l, self.m);
        let within = |i: usize, n: usize, base: usize| (1..=n).contains(&i).then_some(base + i);
        match r {
            Role::Xi(i) => within(i, k, 0),
            Role::Xa(i) => within(i, l, k),
            Role::Xb(i) => within(i, m, k + l),
            Role::Eta(i) => within(i, k, kk),
            Role::Ea(i) => within(i, l, kk + k),
            Role::Eb(i) => within(i, m, kk + k + l),
            Role::Za => self.za.then_some(2 * kk + 1),
            Role::Zb => self.zb.then_some(2 * kk + 1 + self.za as usize),
        }
    }

    pub fn role(&self, v: usize) -> Role {
        let kk = self.big_k();
        let (k, l) = (self.k, self.l);
        if v <= k {
            Role::Xi(v)
        } else if v <= k + l {
            Role::Xa(v - k)
        } else if v <= kk {
            Role::Xb(v - k - l)
        } else if v <= kk + k {
            Role::Eta(v - kk)
        } else if v <= kk + k + l {
            Role::Ea(v - kk - k)
        } else if v <= 2 * kk {
            Role::Eb(v - kk - k - l)
        } else if v == 2 * kk + 1 && self.za {
            Role::Za
        } else {
            Role::Zb
        }
    }

    /// Variables spanning V: ξ, ξ^a, η^a, ζ^a.
    pub fn v_vars(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (1..=self.k).filter_map(|i| self.var(Role::Xi(i))).collect();
        out.extend((1..=self.l).filter_map(|i| self.var(Role::Xa(i))));
        out.extend((1..=self.l).filter_map(|i| self.var(Role::Ea(i))));
        out.extend(self.var(Role::Za));
        out.sort();
        out
    }

    /// Shape of a subspace spanned by standard Witt basis vectors (variable
    /// indices) in a split with at most one ζ.
    pub fn from_vars(split: HSplit, vars: &[usize]) -> Result<WittShape> {
        if split.l > 1 {
            return Err(Error::Shape("only splits with at most one ζ are supported".into()));
        }
        let n = split.n();
        if let Some(&v) = vars.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
        let has = |v: usize| vars.contains(&v);
        let (mut k, mut l, mut m) = (0, 0, 0);
        for i in 1..=split.k {
            match (has(split.xi(i)), has(split.eta(i))) {
                (true, true) => l += 1,
                (false, false) => m += 1,
                _ => k += 1,
            }
        }
        let (za, zb) = match split.l {
            0 => (false, false),
            _ => (has(split.zeta(1)), !has(split.zeta(1))),
        };
        let shape = WittShape::new(k, l, m, za, zb);
        shape.validate(n)?;
        Ok(shape)
    }

    /// The msV span predicate on a generating-function monomial.
    pub fn msv_monomial(&self, mono: Monomial) -> bool {
        let (mut xi, mut eta, mut xa, mut ea, mut xb, mut eb) =
            (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let (mut za, mut zb) = (false, false);
        for v in mono.indices() {
            match self.role(v) {
                Role::Xi(i) => xi.push(i),
                Role::Eta(i) => eta.push(i),
                Role::Xa(i) => xa.push(i),
                Role::Ea(i) => ea.push(i),
                Role::Za => za = true,
                Role::Xb(i) => xb.push(i),
                Role::Eb(i) => eb.push(i),
                Role::Zb => zb = true,
            }
        }
        let dx = xi.len();
        let db = xb.len() + eb.len() + zb as usize;
        match (dx, db) {
            (_, 0) if dx >= 2 => true,
            (d, b) if d >= 1 && b >= 1 => true,
            (0, b) if b >= 3 => true,
            // β-factor in the Borel part of h(β)_0
            (0, 2) => match (xb.as_slice(), eb.as_slice(), zb) {
                ([_, _], [], false) | ([_], [], true) => true,
                ([i], [j], false) => i <= j,
                _ => false,
            },
            // msc of vect(η) ⊗ po(α)
            (1, 0) => eta.iter().all(|&i| i >= xi[0]),
            // msc of h(α)
            (0, 0) if eta.is_empty() => match ea.as_slice() {
                [] => !xa.is_empty() || za,
                [j] => !za && xa.iter().all(|i| i <= j),
                _ => false,
            },
            _ => false,
        }
    }

    pub fn parse_list(s: &str) -> Result<Vec<WittShape>> {
        s.split(';').map(|p| p.trim().parse()).collect()
    }
}

impl fmt::Display for WittShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={},l={},m={},za={},zb={}",
            self.k, self.l, self.m, self.za as u8, self.zb as u8
        )
    }
}

impl FromStr for WittShape {
    type Err = Error;

    /// `k=1,l=1,m=0,za=0,zb=1`; omitted fields default to 0.
    fn from_str(s: &str) -> Result<Self> {
        let mut shape = WittShape::new(0, 0, 0, false, false);
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::Shape(format!("expected key=value, got `{part}`")))?;
            let v: usize = val
                .trim()
                .parse()
                .map_err(|_| Error::Shape(format!("bad value in `{part}`")))?;
            match key.trim() {
                "k" => shape.k = v,
                "l" => shape.l = v,
                "m" => shape.m = v,
                "za" | "zb" if v > 1 => {
                    return Err(Error::Shape(format!("`{part}`: flags are 0 or 1")));
                }
                "za" => shape.za = v == 1,
                "zb" => shape.zb = v == 1,
                other => return Err(Error::Shape(format!("unknown field `{other}`"))),
            }
        }
        Ok(shape)
    }
}

/// h(0|n) (or h′) in the coordinate split of a shape.
pub fn shape_ambient(series: Series, shape: &WittShape) -> Result<Arc<Lie<Rational>>> {
    if !is_h_type(series) {
        return Err(Error::Unsupported(format!("Witt shapes apply to h and h', not {series}")));
    }
    let desc = crate::algebra::build_hamiltonian(series, shape.split())?;
    Ok(Lie::from_desc(desc))
}

fn check_shape_ambient(lie: &Lie<impl Field>, shape: &WittShape) -> Result<()> {
    let desc = lie.desc();
    if !is_h_type(desc.series()) || desc.split() != Some(shape.split()) {
        return Err(Error::Mismatch(format!(
            "{} is not h in the split of shape {shape}",
            desc.name()
        )));
    }
    shape.validate(desc.n())
}

/// V as a subspace of g_{−1}.
pub fn shape_v<F: Field>(lie: &Arc<Lie<F>>, shape: &WittShape) -> Result<Subspace<F>> {
    check_shape_ambient(lie, shape)?;
    let vars = shape.v_vars();
    key_span(lie, -1, |&(m, _)| vars.contains(&m.indices().next().unwrap()))
}

/// The homogeneous element of g given by a product of variables in the
/// order listed (signs follow the order).
pub fn product<F: Field>(lie: &Arc<Lie<F>>, vars: &[usize]) -> Result<Homog<F>> {
    let n = lie.desc().n();
    let mut f = crate::grassmann::SuperPoly::<Rational>::one(n);
    for &v in vars {
        if v == 0 || v > n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
        f = f.mul(&crate::grassmann::SuperPoly::var(n, v))?;
    }
    lie.coords_of(&crate::algebra::Element::Function(f))
}

/// msV for the h series, V in normal form given by `shape`.
///
/// Checked: closed, solvable, s_{−1} = V and s ⊆ V_*.
pub fn msv_h<F: Field>(lie: &Arc<Lie<F>>, shape: &WittShape) -> Result<GradedSubalgebra<F>> {
    check_shape_ambient(lie, shape)?;
    let s = graded_key_span(lie, |&(m, _)| shape.msv_monomial(m))?;
    let name = || format!("{}, {shape}", lie.desc().name());
    let v = shape_v(lie, shape)?;
    if s.component(-1) != &v {
        return Err(Error::Internal(format!("{}: msV has the wrong degree -1 part", name())));
    }
    if !s.is_closed() {
        return Err(Error::Internal(format!("{}: msV is not closed", name())));
    }
    if !s.is_solvable() {
        return Err(Error::Internal(format!("{}: msV is not solvable", name())));
    }
    if !v_star(lie, &v)?.contains_sub(&s) {
        return Err(Error::Internal(format!("{}: msV is not inside V_*", name())));
    }
    Ok(s)
}

/// A strictly larger solvable subalgebra for a singular shape: the closure
/// with ζ^b adjoined when k = 1 or a second ζ is present, else msc.
pub fn singular_overalgebra<F: Field>(
    lie: &Arc<Lie<F>>,
    shape: &WittShape,
    s: &GradedSubalgebra<F>,
) -> Result<(String, GradedSubalgebra<F>)> {
    if !shape.is_singular() {
        return Err(Error::Shape(format!("{shape} is not singular")));
    }
    if shape.k == 1 || shape.za {
        let zb = product(lie, &[shape.var(Role::Zb).unwrap()])?;
        let label = if shape.k == 1 { "ms~V, ~V = V + <zb>" } else { "msc-type, V + <zb> = g_-1" };
        Ok((label.to_string(), s.extend(&[zb])))
    } else {
        Ok(("msc".to_string(), msc(lie)?))
    }
}
