//! The ambient algebras with their standard gradings and integral
//! structure constants.
//!
//! Every element is stored internally in *raw* coordinates: a sparse map
//! from `(monomial, direction)` to a coefficient, where direction `0`
//! marks a generating function (po/h series) and `i ≥ 1` the field ∂_i.
//! Each homogeneous component carries an ordered basis of raw vectors and
//! the structure constants are expressed in those bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::grassmann::{HSplit, Monomial, SuperPoly, VarNames};
use crate::linalg::{nullspace, Subspace};
use crate::scalar::{Field, Rational};
use crate::vectorfields::{divergence, VectorField};
use crate::{Error, Result};

/// Largest ambient dimension for which a dense table is built.
pub const MAX_DIM: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Series {
    Vect,
    Svect,
    TildeSvect,
    Po,
    H,
    HPrime,
}

impl Series {
    pub fn label(&self) -> &'static str {
        match self {
            Series::Vect => "vect",
            Series::Svect => "svect",
            Series::TildeSvect => "tilde_svect",
            Series::Po => "po",
            Series::H => "h",
            Series::HPrime => "h_prime",
        }
    }

    pub fn is_hamiltonian(&self) -> bool {
        matches!(self, Series::Po | Series::H | Series::HPrime)
    }

    /// Display name such as `svect(0|4)` or `h′(0|4)`.
    pub fn display(&self, n: usize) -> String {
        let name = match self {
            Series::TildeSvect => "~svect",
            Series::HPrime => "h'",
            s => s.label(),
        };
        format!("{name}(0|{n})")
    }

    pub fn admissible(&self, n: usize) -> Result<()> {
        let ok = match self {
            Series::Vect => n > 1,
            Series::Svect => n > 2,
            Series::TildeSvect => n >= 4 && n % 2 == 0,
            Series::Po | Series::H | Series::HPrime => n >= 2,
        };
        if !ok || n > 16 {
            return Err(Error::Inadmissible(format!("{} is not admissible", self.display(n))));
        }
        Ok(())
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "vect" => Series::Vect,
            "svect" => Series::Svect,
            "tilde_svect" | "~svect" | "tsvect" => Series::TildeSvect,
            "po" => Series::Po,
            "h" => Series::H,
            "h_prime" | "h'" | "hprime" => Series::HPrime,
            _ => return Err(Error::Inadmissible(format!("unknown series `{s}`"))),
        })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub type RawKey = (Monomial, u8);
pub type Raw = BTreeMap<RawKey, Rational>;

/// An algebra element in its natural realisation: a vector field, or a
/// generating function for the po/h series. ~svect elements are given by
/// the underlying divergence-free field D and stand for (1+Ξ)D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Field(VectorField<Rational>),
    Function(SuperPoly<Rational>),
}

impl Element {
    pub fn to_raw(&self) -> Raw {
        let mut raw = Raw::new();
        match self {
            Element::Field(v) => {
                for (m, d, c) in v.terms() {
                    raw.insert((m, d as u8), c);
                }
            }
            Element::Function(f) => {
                for (m, c) in f.terms() {
                    raw.insert((*m, 0), c.clone());
                }
            }
        }
        raw
    }

    pub fn from_raw(n: usize, function: bool, raw: &Raw) -> Element {
        if function {
            let mut f = SuperPoly::zero(n);
            for ((m, _), c) in raw {
                f.add_term(*m, c.clone());
            }
            Element::Function(f)
        } else {
            let mut v = VectorField::zero(n);
            for ((m, d), c) in raw {
                v.add_term(*m, *d as usize, c.clone());
            }
            Element::Field(v)
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Field(v) => v.is_zero(),
            Element::Function(f) => f.is_zero(),
        }
    }

    pub fn render(&self, names: &VarNames) -> String {
        match self {
            Element::Field(v) => v.render(names),
            Element::Function(f) => f.render(names),
        }
    }
}

#[derive(Clone, Debug)]
struct Component {
    degree: i32,
    keys: Vec<RawKey>,
    key_index: HashMap<RawKey, usize>,
    /// `None` when the basis is the key list itself.
    basis: Option<Subspace<Rational>>,
}

impl Component {
    fn new(degree: i32, keys: Vec<RawKey>, basis: Option<Subspace<Rational>>) -> Self {
        let key_index = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        Component {
            degree,
            keys,
            key_index,
            basis,
        }
    }

    fn dim(&self) -> usize {
        match &self.basis {
            None => self.keys.len(),
            Some(b) => b.dim(),
        }
    }

    fn basis_raw(&self, i: usize) -> Raw {
        match &self.basis {
            None => Raw::from([(self.keys[i], Rational::one())]),
            Some(b) => b.rows()[i]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (self.keys[j], c.clone()))
                .collect(),
        }
    }

    /// Coordinates of a raw vector whose keys all lie in this component.
    fn coords(&self, raw: &Raw) -> Option<Vec<Rational>> {
        let mut dense = vec![Rational::zero(); self.keys.len()];
        for (k, c) in raw {
            dense[*self.key_index.get(k)?] = c.clone();
        }
        match &self.basis {
            None => Some(dense),
            Some(b) => b.coordinates(&dense),
        }
    }
}

/// A built ambient algebra: graded basis and integral structure constants.
#[derive(Clone, Debug)]
pub struct AlgebraDesc {
    series: Series,
    n: usize,
    split: Option<HSplit>,
    /// `Some(n)` for the ℤ/n-graded deformation.
    cyclic: Option<i32>,
    components: Vec<Component>,
    offsets: Vec<usize>,
    dim: usize,
    /// `table[a * dim + b]` lists `(local index in target component, coeff)`.
    table: Vec<Vec<(u32, i64)>>,
}

/// Build an ambient algebra with its standard grading.
pub fn build_algebra(series: Series, n: usize) -> Result<AlgebraDesc> {
    series.admissible(n)?;
    let split = series.is_hamiltonian().then(|| HSplit::standard(n));
    build_inner(series, n, split)
}

/// Build a po/h/h′ algebra in a non-standard coordinate split, e.g. with
/// two ζ variables.
pub fn build_hamiltonian(series: Series, split: HSplit) -> Result<AlgebraDesc> {
    if !series.is_hamiltonian() {
        return Err(Error::Inadmissible(format!(
            "{series} has no Hamiltonian coordinate split"
        )));
    }
    series.admissible(split.n())?;
    build_inner(series, split.n(), Some(split))
}

fn vect_keys(n: usize, degree: i32) -> Vec<RawKey> {
    let mut keys = Vec::new();
    for m in Monomial::of_degree(n, (degree + 1) as usize) {
        for d in 1..=n {
            keys.push((m, d as u8));
        }
    }
    keys
}

fn divergence_free_basis(n: usize, degree: i32, keys: &[RawKey]) -> Subspace<Rational> {
    let targets = Monomial::of_degree(n, degree.max(0) as usize);
    let index: HashMap<Monomial, usize> = targets.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let images: Vec<Vec<Rational>> = keys
        .iter()
        .map(|&(m, d)| {
            let v = VectorField::term(n, m, d as usize, Rational::one());
            let mut img = vec![Rational::zero(); targets.len()];
            for (t, c) in divergence(&v).terms() {
                img[index[t]] = c.clone();
            }
            img
        })
        .collect();
    nullspace(&images, targets.len())
}

fn build_inner(series: Series, n: usize, split: Option<HSplit>) -> Result<AlgebraDesc> {
    let mut components = Vec::new();
    match series {
        Series::Vect => {
            for d in -1..n as i32 {
                components.push(Component::new(d, vect_keys(n, d), None));
            }
        }
        Series::Svect | Series::TildeSvect => {
            let top = if series == Series::Svect { n as i32 - 1 } else { n as i32 - 2 };
            for d in -1..=top {
                let keys = vect_keys(n, d);
                let basis = divergence_free_basis(n, d, &keys);
                components.push(Component::new(d, keys, Some(basis)));
            }
        }
        Series::Po | Series::H | Series::HPrime => {
            let (lo, hi) = match series {
                Series::Po => (0, n),
                Series::H => (1, n),
                _ => (1, n - 1),
            };
            for deg in lo..=hi {
                let keys = Monomial::of_degree(n, deg).into_iter().map(|m| (m, 0)).collect();
                components.push(Component::new(deg as i32 - 2, keys, None));
            }
        }
    }
    let mut offsets = Vec::with_capacity(components.len());
    let mut dim = 0;
    for c in &components {
        offsets.push(dim);
        dim += c.dim();
    }
    if dim > MAX_DIM {
        return Err(Error::Inadmissible(format!(
            "{} has dimension {dim}, above the supported maximum {MAX_DIM}",
            series.display(n)
        )));
    }
    let mut alg = AlgebraDesc {
        series,
        n,
        split,
        cyclic: (series == Series::TildeSvect).then_some(n as i32),
        components,
        offsets,
        dim,
        table: Vec::new(),
    };
    alg.table = alg.compute_table()?;
    Ok(alg)
}

fn sign_i64(s: i8) -> i64 {
    s as i64
}

impl AlgebraDesc {
    pub fn series(&self) -> Series {
        self.series
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn split(&self) -> Option<HSplit> {
        self.split
    }

    pub fn name(&self) -> String {
        match self.split {
            Some(s) if s != HSplit::standard(self.n) => {
                format!("{} [k={}, l={}]", self.series.display(self.n), s.k, s.l)
            }
            _ => self.series.display(self.n),
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic.is_some()
    }

    pub fn names(&self) -> VarNames {
        match self.split {
            Some(s) => VarNames::Split(s),
            None => VarNames::Plain,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Degrees of the components, ascending (zero-dimensional ones included).
    pub fn degrees(&self) -> Vec<i32> {
        self.components.iter().map(|c| c.degree).collect()
    }

    pub fn min_degree(&self) -> i32 {
        self.components[0].degree
    }

    pub fn max_degree(&self) -> i32 {
        self.components.last().unwrap().degree
    }

    fn comp_index(&self, degree: i32) -> Option<usize> {
        let i = degree - self.min_degree();
        (i >= 0 && (i as usize) < self.components.len()).then_some(i as usize)
    }

    pub fn has_degree(&self, degree: i32) -> bool {
        self.comp_index(degree).is_some()
    }

    pub fn component_dim(&self, degree: i32) -> usize {
        self.comp_index(degree).map_or(0, |i| self.components[i].dim())
    }

    pub fn component_dims(&self) -> Vec<(i32, usize)> {
        self.components.iter().map(|c| (c.degree, c.dim())).collect()
    }

    pub fn offset(&self, degree: i32) -> usize {
        self.offsets[self.comp_index(degree).expect("degree out of range")]
    }

    /// Parity of the degree-d component: d mod 2.
    pub fn parity(&self, degree: i32) -> u8 {
        degree.rem_euclid(2) as u8
    }

    /// Degree of [g_a, g_b], or None if that component does not exist.
    pub fn sum_degree(&self, a: i32, b: i32) -> Option<i32> {
        let s = match self.cyclic {
            Some(n) => (a + b + 1).rem_euclid(n) - 1,
            None => a + b,
        };
        self.has_degree(s).then_some(s)
    }

    /// Global index → (degree, local index).
    pub fn locate(&self, global: usize) -> (i32, usize) {
        let i = self.offsets.partition_point(|&o| o <= global) - 1;
        (self.components[i].degree, global - self.offsets[i])
    }

    /// Structure constants of [e_a, e_b] in the target component's basis.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(u32, i64)] {
        &self.table[a * self.dim + b]
    }

    pub fn basis_raw(&self, degree: i32, i: usize) -> Raw {
        self.components[self.comp_index(degree).unwrap()].basis_raw(i)
    }

    pub fn basis_element(&self, degree: i32, i: usize) -> Element {
        Element::from_raw(self.n, self.series.is_hamiltonian(), &self.basis_raw(degree, i))
    }

    /// The element with the given coordinates in the degree-d basis.
    pub fn element<F: Field>(&self, degree: i32, coords: &[F]) -> Element {
        let mut raw = Raw::new();
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c.lift();
            for (k, v) in self.basis_raw(degree, i) {
                let e = raw.entry(k).or_insert_with(Rational::zero);
                *e = e.add(&c.mul(&v));
            }
        }
        raw.retain(|_, v| !v.is_zero());
        Element::from_raw(self.n, self.series.is_hamiltonian(), &raw)
    }

    pub fn render_coords<F: Field>(&self, degree: i32, coords: &[F]) -> String {
        if F::characteristic() == 0 {
            self.element(degree, coords).render(&self.names())
        } else {
            // residues are printed as their representatives 0..p
            let mut parts = Vec::new();
            for (i, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    let b = self.basis_element(degree, i).render(&self.names());
                    parts.push(if c.is_one() { b } else { format!("{c}*({b})") });
                }
            }
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        }
    }

    /// Basis (in component coordinates, RREF) of the elements of g_d whose
    /// raw support lies in the keys accepted by `pred`.
    pub fn restricted_span(&self, degree: i32, pred: impl Fn(&RawKey) -> bool) -> Subspace<Rational> {
        let Some(ci) = self.comp_index(degree) else {
            return Subspace::new(0);
        };
        let comp = &self.components[ci];
        let dim = comp.dim();
        match &comp.basis {
            None => {
                let mut s = Subspace::new(dim);
                for (i, k) in comp.keys.iter().enumerate() {
                    if pred(k) {
                        s.insert(&crate::linalg::unit(dim, i));
                    }
                }
                s
            }
            Some(b) => {
                let bad: Vec<usize> = (0..comp.keys.len()).filter(|&j| !pred(&comp.keys[j])).collect();
                let images: Vec<Vec<Rational>> = b
                    .rows()
                    .iter()
                    .map(|r| bad.iter().map(|&j| r[j].clone()).collect())
                    .collect();
                nullspace(&images, bad.len())
            }
        }
    }

    fn raw_degree(&self, key: &RawKey) -> i32 {
        if self.series.is_hamiltonian() {
            key.0.degree() as i32 - 2
        } else {
            key.0.degree() as i32 - 1
        }
    }

    /// Split an element into homogeneous components and take coordinates.
    pub fn decompose(&self, e: &Element) -> Result<Vec<(i32, Vec<Rational>)>> {
        let hamiltonian = matches!(e, Element::Function(_));
        if hamiltonian != self.series.is_hamiltonian() {
            return Err(Error::NotInAlgebra(format!(
                "{} (wrong kind of element)",
                self.name()
            )));
        }
        if let Element::Field(v) = e {
            if v.n() != self.n {
                return Err(Error::Mismatch(format!("field over Λ({}) in {}", v.n(), self.name())));
            }
        }
        if let Element::Function(f) = e {
            if f.n() != self.n {
                return Err(Error::Mismatch(format!("function over Λ({}) in {}", f.n(), self.name())));
            }
        }
        self.decompose_raw(&e.to_raw())
    }

    fn decompose_raw(&self, raw: &Raw) -> Result<Vec<(i32, Vec<Rational>)>> {
        let mut parts: BTreeMap<i32, Raw> = BTreeMap::new();
        for (k, c) in raw {
            if c.is_zero() {
                continue;
            }
            let d = self.raw_degree(k);
            if d == -2 && matches!(self.series, Series::H | Series::HPrime) {
                // constants are central in po and vanish in h
                continue;
            }
            parts.entry(d).or_default().insert(*k, c.clone());
        }
        let mut out = Vec::new();
        for (d, part) in parts {
            let coords = self
                .comp_index(d)
                .and_then(|i| self.components[i].coords(&part))
                .ok_or_else(|| Error::NotInAlgebra(self.name()))?;
            out.push((d, coords));
        }
        Ok(out)
    }

    /// Homogeneous coordinates of an element known to be homogeneous.
    pub fn homogeneous_coords(&self, e: &Element) -> Result<(i32, Vec<Rational>)> {
        let parts = self.decompose(e)?;
        match parts.len() {
            0 => Err(Error::Mismatch("zero element has no degree".into())),
            1 => Ok(parts.into_iter().next().unwrap()),
            _ => Err(Error::Mismatch("element is not homogeneous".into())),
        }
    }

    /// Bracket of two elements, evaluated in the realisation.
    pub fn bracket_elements(&self, a: &Element, b: &Element) -> Result<Element> {
        self.decompose(a)?;
        self.decompose(b)?;
        let raw = self.raw_bracket(&a.to_raw(), &b.to_raw());
        Ok(Element::from_raw(self.n, self.series.is_hamiltonian(), &raw))
    }

    /// (1+Ξ)D for the ~svect realisation; identity otherwise.
    pub fn realize(&self, e: &Element) -> Element {
        match (self.series, e) {
            (Series::TildeSvect, Element::Field(_)) => {
                Element::from_raw(self.n, false, &self.lift_tilde(&e.to_raw()))
            }
            _ => e.clone(),
        }
    }

    fn lift_tilde(&self, raw: &Raw) -> Raw {
        let top = Monomial::top(self.n);
        let mut out = raw.clone();
        for ((m, d), c) in raw {
            if m.bits() == 0 {
                let e = out.entry((top, *d)).or_insert_with(Rational::zero);
                *e = e.add(c);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// (1−Ξ)·X
    fn unlift_tilde(&self, raw: &Raw) -> Raw {
        let top = Monomial::top(self.n);
        let mut out = raw.clone();
        for ((m, d), c) in raw {
            if m.bits() == 0 {
                let e = out.entry((top, *d)).or_insert_with(Rational::zero);
                *e = e.sub(c);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    fn raw_bracket(&self, a: &Raw, b: &Raw) -> Raw {
        match self.series {
            Series::TildeSvect => {
                let c = field_bracket_raw(&self.lift_tilde(a), &self.lift_tilde(b));
                self.unlift_tilde(&c)
            }
            Series::Vect | Series::Svect => field_bracket_raw(a, b),
            _ => {
                let split = self.split.unwrap();
                let mut out = poisson_raw(&split, a, b);
                if self.series != Series::Po {
                    out.remove(&(Monomial::ONE, 0));
                }
                out
            }
        }
    }

    fn compute_table(&self) -> Result<Vec<Vec<(u32, i64)>>> {
        let basis: Vec<(i32, Raw)> = (0..self.dim)
            .map(|g| {
                let (d, i) = self.locate(g);
                (d, self.basis_raw(d, i))
            })
            .collect();
        let rows: Vec<Result<Vec<Vec<(u32, i64)>>>> = (0..self.dim)
            .into_par_iter()
            .map(|a| {
                let (da, ra) = &basis[a];
                let mut row = Vec::with_capacity(self.dim);
                for (db, rb) in &basis {
                    let res = self.raw_bracket(ra, rb);
                    let parts = self.decompose_raw(&res).map_err(|_| {
                        Error::Internal(format!("{}: bracket leaves the algebra", self.name()))
                    })?;
                    let target = self.sum_degree(*da, *db);
                    let mut entry = Vec::new();
                    for (d, coords) in parts {
                        if Some(d) != target {
                            return Err(Error::Internal(format!(
                                "{}: bracket of degrees {da}, {db} has a component in degree {d}",
                                self.name()
                            )));
                        }
                        for (i, c) in coords.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let v = c.to_i64().ok_or_else(|| {
                                Error::Internal(format!("{}: non-integral structure constant", self.name()))
                            })?;
                            entry.push((i as u32, v));
                        }
                    }
                    row.push(entry);
                }
                Ok(row)
            })
            .collect();
        let mut table = Vec::with_capacity(self.dim * self.dim);
        for r in rows {
            table.extend(r?);
        }
        Ok(table)
    }
}

fn add_raw(out: &mut Raw, key: RawKey, c: Rational) {
    let e = out.entry(key).or_insert_with(Rational::zero);
    *e = e.add(&c);
    if e.is_zero() {
        out.remove(&key);
    }
}

/// [m1 ∂_i, m2 ∂_j] = m1 ∂_i(m2) ∂_j − (−1)^{p1 p2} m2 ∂_j(m1) ∂_i.
fn field_bracket_monomials(a: RawKey, b: RawKey) -> [Option<(i64, RawKey)>; 2] {
    let (m1, i) = a;
    let (m2, j) = b;
    let p1 = 1 - m1.parity();
    let p2 = 1 - m2.parity();
    let first = m2.partial(i as usize).and_then(|(s, r)| {
        m1.mul(r)
            .map(|(t, prod)| (sign_i64(s) * sign_i64(t), (prod, j)))
    });
    let second = m1.partial(j as usize).and_then(|(s, r)| {
        m2.mul(r).map(|(t, prod)| {
            let sign = if p1 * p2 == 1 { 1 } else { -1 };
            (sign * sign_i64(s) * sign_i64(t), (prod, i))
        })
    });
    [first, second]
}

pub(crate) fn field_bracket_raw(a: &Raw, b: &Raw) -> Raw {
    let mut out = Raw::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let c = ca.mul(cb);
            for (s, k) in field_bracket_monomials(*ka, *kb).into_iter().flatten() {
                add_raw(&mut out, k, c.mul(&Rational::from_i64(s)));
            }
        }
    }
    out
}

/// {m1, m2} = (−1)^{p(m1)} Σ_v ∂_v(m1) ∂_{v*}(m2).
fn poisson_raw(split: &HSplit, a: &Raw, b: &Raw) -> Raw {
    let mut out = Raw::new();
    for ((m1, _), ca) in a {
        let outer: i64 = if m1.parity() == 1 { -1 } else { 1 };
        for v in m1.indices() {
            let (s1, r1) = m1.partial(v).unwrap();
            let w = split.partner(v);
            for ((m2, _), cb) in b {
                let Some((s2, r2)) = m2.partial(w) else { continue };
                let Some((s3, prod)) = r1.mul(r2) else { continue };
                let s = outer * sign_i64(s1) * sign_i64(s2) * sign_i64(s3);
                add_raw(&mut out, (prod, 0), ca.mul(cb).mul(&Rational::from_i64(s)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vectorfields::{bracket, poisson};

    fn dims(a: &AlgebraDesc) -> Vec<usize> {
        a.component_dims().into_iter().map(|(_, d)| d).collect()
    }

    #[test]
    fn dimensions() {
        let v = build_algebra(Series::Vect, 2).unwrap();
        assert_eq!(dims(&v), vec![2, 4, 2]);
        assert_eq!(v.dim(), 8);
        let s = build_algebra(Series::Svect, 3).unwrap();
        assert_eq!(dims(&s), vec![3, 8, 6, 0]);
        assert_eq!(s.dim(), 17);
        assert_eq!(build_algebra(Series::HPrime, 4).unwrap().dim(), 14);
        assert_eq!(build_algebra(Series::H, 5).unwrap().dim(), 31);
        assert_eq!(build_algebra(Series::Po, 3).unwrap().dim(), 8);
        let t = build_algebra(Series::TildeSvect, 4).unwrap();
        assert_eq!(t.degrees(), vec![-1, 0, 1, 2]);
    }

    #[test]
    fn inadmissible() {
        assert!(build_algebra(Series::Vect, 1).is_err());
        assert!(build_algebra(Series::Svect, 2).is_err());
        assert!(build_algebra(Series::TildeSvect, 5).is_err());
        assert!(build_algebra(Series::TildeSvect, 2).is_err());
    }

    #[test]
    fn monomial_bracket_agrees_with_field_bracket() {
        let n = 3;
        let keys: Vec<RawKey> = (-1..3).flat_map(|d| vect_keys(n, d)).collect();
        for &a in &keys {
            for &b in &keys {
                let ra = Raw::from([(a, Rational::one())]);
                let rb = Raw::from([(b, Rational::one())]);
                let fast = Element::from_raw(n, false, &field_bracket_raw(&ra, &rb));
                let va = VectorField::term(n, a.0, a.1 as usize, Rational::one());
                let vb = VectorField::term(n, b.0, b.1 as usize, Rational::one());
                assert_eq!(fast, Element::Field(bracket(&va, &vb).unwrap()));
            }
        }
    }

    #[test]
    fn monomial_poisson_agrees_with_poisson() {
        let split = HSplit::new(1, 2);
        for a in 0..16u16 {
            for b in 0..16u16 {
                let ma = Monomial::from_bits(a);
                let mb = Monomial::from_bits(b);
                let ra = Raw::from([((ma, 0), Rational::one())]);
                let rb = Raw::from([((mb, 0), Rational::one())]);
                let fast = Element::from_raw(4, true, &poisson_raw(&split, &ra, &rb));
                let f = SuperPoly::monomial(4, ma, Rational::one());
                let g = SuperPoly::monomial(4, mb, Rational::one());
                assert_eq!(fast, Element::Function(poisson(&split, &f, &g).unwrap()));
            }
        }
    }

    #[test]
    fn svect_basis_is_divergence_free() {
        let s = build_algebra(Series::Svect, 4).unwrap();
        for d in s.degrees() {
            for i in 0..s.component_dim(d) {
                let Element::Field(v) = s.basis_element(d, i) else { unreachable!() };
                assert!(divergence(&v).is_zero());
            }
        }
    }

    #[test]
    fn tilde_deformation_only_touches_negative_brackets() {
        let t = build_algebra(Series::TildeSvect, 4).unwrap();
        let s = build_algebra(Series::Svect, 4).unwrap();
        let mut deformed = 0;
        for a in 0..t.dim() {
            for b in 0..t.dim() {
                let (da, _) = t.locate(a);
                let (db, _) = t.locate(b);
                if da + db >= -1 && da + db <= 2 && !(da == -1 && db == -1) {
                    assert_eq!(t.bracket_basis(a, b), s.bracket_basis(a, b));
                } else if t.bracket_basis(a, b) != s.bracket_basis(a, b) {
                    deformed += 1;
                }
            }
        }
        assert!(deformed > 0);
    }

    #[test]
    fn locate_roundtrip() {
        let s = build_algebra(Series::Svect, 3).unwrap();
        for g in 0..s.dim() {
            let (d, i) = s.locate(g);
            assert_eq!(s.offset(d) + i, g);
        }
    }
}
