//! Graded subalgebras of a built ambient: spans, closure, derived series,
//! solvability, transitivity, ideals.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{AlgebraDesc, Element};
use crate::linalg::{is_zero_vec, nullspace, Subspace};
use crate::scalar::{Field, Rational};
use crate::{Error, Result};

/// A homogeneous element: degree and coordinates in the ambient basis.
pub type Homog<F> = (i32, Vec<F>);

/// An ambient algebra with structure constants specialised to a field.
#[derive(Debug)]
pub struct Lie<F> {
    desc: Arc<AlgebraDesc>,
    table: Vec<Vec<(u32, F)>>,
}

impl<F: Field> Lie<F> {
    pub fn new(desc: Arc<AlgebraDesc>) -> Arc<Self> {
        let n = desc.dim();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(
                    desc.bracket_basis(a, b)
                        .iter()
                        .map(|&(i, c)| (i, F::from_i64(c)))
                        .filter(|(_, c)| !c.is_zero())
                        .collect(),
                );
            }
        }
        Arc::new(Lie { desc, table })
    }

    pub fn from_desc(desc: AlgebraDesc) -> Arc<Self> {
        Self::new(Arc::new(desc))
    }

    pub fn desc(&self) -> &AlgebraDesc {
        &self.desc
    }

    pub fn desc_arc(&self) -> Arc<AlgebraDesc> {
        self.desc.clone()
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.desc.component_dim(degree)
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.desc.degrees()
    }

    /// [x, y] for homogeneous x ∈ g_da, y ∈ g_db; None when it vanishes
    /// for degree reasons.
    pub fn bracket(&self, da: i32, x: &[F], db: i32, y: &[F]) -> Option<Homog<F>> {
        let t = self.desc.sum_degree(da, db)?;
        let mut out = vec![F::zero(); self.dim(t)];
        if out.is_empty() {
            return None;
        }
        let (oa, ob) = (self.desc.offset(da), self.desc.offset(db));
        let n = self.desc.dim();
        let ys: Vec<(usize, &F)> = y.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let row = (oa + i) * n + ob;
            for &(j, yj) in &ys {
                let entry = &self.table[row + j];
                if entry.is_empty() {
                    continue;
                }
                let c = xi.mul(yj);
                for (k, s) in entry {
                    out[*k as usize].add_mul_assign(&c, s);
                }
            }
        }
        Some((t, out))
    }

    pub fn unit(&self, degree: i32, i: usize) -> Vec<F> {
        crate::linalg::unit(self.dim(degree), i)
    }

    /// Coordinates of a homogeneous element of the realisation.
    pub fn coords_of(&self, e: &Element) -> Result<Homog<F>> {
        let (d, c) = self.desc.homogeneous_coords(e)?;
        Ok((d, convert(&c)?))
    }

    pub fn render(&self, degree: i32, v: &[F]) -> String {
        self.desc.render_coords(degree, v)
    }

    /// Element of the realisation with given coordinates.
    pub fn element(&self, degree: i32, v: &[F]) -> Element {
        self.desc.element(degree, v)
    }
}

pub fn convert<F: Field>(v: &[Rational]) -> Result<Vec<F>> {
    v.iter()
        .map(|c| {
            F::from_rational(c).ok_or_else(|| {
                Error::Field(format!("coefficient {c} has no image in {}", F::name()))
            })
        })
        .collect()
}

/// A graded subspace (usually a subalgebra) of an ambient algebra.
#[derive(Clone, Debug)]
pub struct GradedSubalgebra<F> {
    lie: Arc<Lie<F>>,
    comps: BTreeMap<i32, Subspace<F>>,
}

impl<F: Field> PartialEq for GradedSubalgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.lie.desc, &other.lie.desc) && self.comps == other.comps
    }
}

impl<F: Field> GradedSubalgebra<F> {
    pub fn zero(lie: &Arc<Lie<F>>) -> Self {
        let comps = lie
            .degrees()
            .into_iter()
            .map(|d| (d, Subspace::new(lie.dim(d))))
            .collect();
        GradedSubalgebra {
            lie: lie.clone(),
            comps,
        }
    }

    pub fn full(lie: &Arc<Lie<F>>) -> Self {
        let comps = lie
            .degrees()
            .into_iter()
            .map(|d| (d, Subspace::full(lie.dim(d))))
            .collect();
        GradedSubalgebra {
            lie: lie.clone(),
            comps,
        }
    }

    /// Span of homogeneous vectors, without closing under the bracket.
    pub fn span(lie: &Arc<Lie<F>>, vectors: &[Homog<F>]) -> Self {
        let mut s = Self::zero(lie);
        for (d, v) in vectors {
            s.insert(*d, v);
        }
        s
    }

    pub fn lie(&self) -> &Arc<Lie<F>> {
        &self.lie
    }

    pub fn desc(&self) -> &AlgebraDesc {
        self.lie.desc()
    }

    pub fn component(&self, degree: i32) -> &Subspace<F> {
        &self.comps[&degree]
    }

    pub fn set_component(&mut self, degree: i32, space: Subspace<F>) {
        assert_eq!(space.width(), self.lie.dim(degree));
        self.comps.insert(degree, space);
    }

    pub fn insert(&mut self, degree: i32, v: &[F]) -> bool {
        self.comps.get_mut(&degree).expect("degree out of range").insert(v)
    }

    pub fn contains(&self, degree: i32, v: &[F]) -> bool {
        self.comps.get(&degree).is_some_and(|s| s.contains(v))
    }

    pub fn contains_sub(&self, other: &Self) -> bool {
        other
            .comps
            .iter()
            .all(|(d, s)| s.is_subspace_of(&self.comps[d]))
    }

    pub fn dims(&self) -> Vec<(i32, usize)> {
        self.comps.iter().map(|(d, s)| (*d, s.dim())).collect()
    }

    /// Dimensions from the lowest to the highest nonzero degree.
    pub fn dims_trimmed(&self) -> Vec<usize> {
        let dims = self.dims();
        let lo = dims.iter().position(|(_, k)| *k > 0);
        let hi = dims.iter().rposition(|(_, k)| *k > 0);
        match (lo, hi) {
            (Some(lo), Some(hi)) => dims[lo..=hi].iter().map(|(_, k)| *k).collect(),
            _ => Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.comps.values().map(|s| s.dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis: RREF rows, degree by degree.
    pub fn basis(&self) -> Vec<Homog<F>> {
        self.comps
            .iter()
            .flat_map(|(d, s)| s.rows().iter().map(move |r| (*d, r.clone())))
            .collect()
    }

    pub fn basis_of(&self, degree: i32) -> Vec<Vec<F>> {
        self.comps[&degree].rows().to_vec()
    }

    /// The part of degree `degree` only, as a graded subspace.
    pub fn restrict_to(&self, degrees: &[i32]) -> Self {
        let mut s = Self::zero(&self.lie);
        for d in degrees {
            if let Some(c) = self.comps.get(d) {
                s.comps.insert(*d, c.clone());
            }
        }
        s
    }

    pub fn sum(&self, other: &Self) -> Self {
        let comps = self
            .comps
            .iter()
            .map(|(d, s)| (*d, s.sum(&other.comps[d])))
            .collect();
        GradedSubalgebra {
            lie: self.lie.clone(),
            comps,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let comps = self
            .comps
            .iter()
            .map(|(d, s)| (*d, s.intersection(&other.comps[d])))
            .collect();
        GradedSubalgebra {
            lie: self.lie.clone(),
            comps,
        }
    }

    /// Smallest bracket-closed graded subspace containing the generators.
    pub fn closure(lie: &Arc<Lie<F>>, generators: &[Homog<F>]) -> Self {
        Self::zero(lie).extend(generators)
    }

    /// Closure of `self ∪ generators`; `self` must already be closed.
    pub fn extend(&self, generators: &[Homog<F>]) -> Self {
        let mut s = self.clone();
        let mut added: Vec<Homog<F>> = s.basis();
        let mut queue: Vec<Homog<F>> = Vec::new();
        for (d, v) in generators {
            let r = s.comps[d].reduce(v);
            if s.insert(*d, &r) {
                queue.push((*d, r));
            }
        }
        while let Some((d, v)) = queue.pop() {
            added.push((d, v.clone()));
            let k = added.len();
            for idx in 0..k {
                let (e, w) = &added[idx];
                if let Some((t, b)) = self.lie.bracket(d, &v, *e, w) {
                    if is_zero_vec(&b) {
                        continue;
                    }
                    let r = s.comps[&t].reduce(&b);
                    if s.insert(t, &r) {
                        queue.push((t, r));
                    }
                }
            }
        }
        s
    }

    /// True when [s, s] ⊆ s.
    pub fn is_closed(&self) -> bool {
        let basis = self.basis();
        for (i, (da, x)) in basis.iter().enumerate() {
            for (db, y) in &basis[i..] {
                if let Some((t, b)) = self.lie.bracket(*da, x, *db, y) {
                    if !self.comps[&t].contains(&b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Span of [a, b] for a ∈ self, b ∈ other.
    pub fn bracket_span(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.lie);
        let ob = other.basis();
        for (da, x) in self.basis() {
            for (db, y) in &ob {
                if let Some((t, b)) = self.lie.bracket(da, &x, *db, y) {
                    out.insert(t, &b);
                }
            }
        }
        out
    }

    /// [s, s]
    pub fn derived(&self) -> Self {
        let mut out = Self::zero(&self.lie);
        let basis = self.basis();
        for (i, (da, x)) in basis.iter().enumerate() {
            for (db, y) in &basis[i..] {
                if let Some((t, b)) = self.lie.bracket(*da, x, *db, y) {
                    out.insert(t, &b);
                }
            }
        }
        out
    }

    /// s, [s,s], … until the terms stop shrinking.
    pub fn derived_series(&self) -> Result<Vec<Self>> {
        if !self.is_closed() {
            return Err(Error::NotClosed("derived series of a non-subalgebra".into()));
        }
        Ok(self.derived_series_unchecked())
    }

    pub(crate) fn derived_series_unchecked(&self) -> Vec<Self> {
        let mut out = vec![self.clone()];
        loop {
            let last = out.last().unwrap();
            if last.is_zero() {
                break;
            }
            let next = last.derived();
            let stable = next.dim() == last.dim();
            out.push(next);
            if stable {
                break;
            }
        }
        out
    }

    pub fn derived_dims(&self) -> Vec<usize> {
        self.derived_series_unchecked().iter().map(|s| s.dim()).collect()
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series_unchecked().last().unwrap().is_zero()
    }

    /// Index of the first derived term that equals its successor while
    /// nonzero, i.e. a non-solvability certificate.
    pub fn non_solvability_index(&self) -> Option<usize> {
        let series = self.derived_series_unchecked();
        let last = series.last().unwrap();
        (!last.is_zero()).then(|| series.len() - 2)
    }

    /// For every k ≥ 0 no nonzero x ∈ s_k satisfies [x, s_−] = 0.
    pub fn is_transitive(&self) -> bool {
        let negative: Vec<Homog<F>> = self
            .basis()
            .into_iter()
            .filter(|(d, _)| *d < 0)
            .collect();
        for (&d, space) in self.comps.range(0..) {
            if space.is_zero() {
                continue;
            }
            // x ↦ ([x, v])_v over the basis of s_k
            let mut images = Vec::new();
            let mut width = 0;
            for x in space.rows() {
                let mut img = Vec::new();
                for (e, v) in &negative {
                    if let Some((_, b)) = self.lie.bracket(d, x, *e, v) {
                        img.extend(b);
                    } else {
                        img.extend(std::iter::repeat(F::zero()).take(
                            self.lie.desc().sum_degree(d, *e).map_or(0, |t| self.lie.dim(t)),
                        ));
                    }
                }
                width = img.len();
                images.push(img);
            }
            if nullspace(&images, width).dim() > 0 {
                return false;
            }
        }
        true
    }

    /// [h, a] ⊆ a, for a ⊆ h.
    pub fn is_ideal_in(&self, h: &Self) -> Result<bool> {
        if !h.contains_sub(self) {
            return Err(Error::NotContained("ideal candidate is not a subspace of h".into()));
        }
        let hb = h.basis();
        for (da, x) in self.basis() {
            for (db, y) in &hb {
                if let Some((t, b)) = self.lie.bracket(da, &x, *db, y) {
                    if !self.comps[&t].contains(&b) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Dimension of the center.
    pub fn center_dim(&self) -> usize {
        let basis = self.basis();
        if basis.is_empty() {
            return 0;
        }
        let desc = self.lie.desc();
        let n = desc.dim();
        let width = n * basis.len();
        let mut images = Vec::new();
        for (d, x) in &basis {
            let mut img = vec![F::zero(); width];
            for (j, (e, y)) in basis.iter().enumerate() {
                if let Some((t, b)) = self.lie.bracket(*d, x, *e, y) {
                    let off = j * n + desc.offset(t);
                    for (k, c) in b.into_iter().enumerate() {
                        img[off + k] = c;
                    }
                }
            }
            images.push(img);
        }
        // the kernel of the full map is the center regardless of grading
        nullspace(&images, width).dim()
    }

    /// Reduce an integer-coordinate subalgebra over ℚ into another field.
    pub fn map_to<G: Field>(&self, lie: &Arc<Lie<G>>) -> Result<GradedSubalgebra<G>> {
        let mut out = GradedSubalgebra::zero(lie);
        for (d, v) in self.basis() {
            let lifted: Vec<Rational> = v.iter().map(|c| c.lift()).collect();
            out.insert(d, &convert(&lifted)?);
        }
        Ok(out)
    }

    pub fn render_basis(&self) -> Vec<(i32, Vec<String>)> {
        self.comps
            .iter()
            .map(|(d, s)| (*d, s.rows().iter().map(|r| self.lie.render(*d, r)).collect()))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} over {}\n", self.desc().name(), F::name());
        for (d, elems) in self.render_basis() {
            if elems.is_empty() {
                continue;
            }
            out.push_str(&format!("  degree {d:>2} (dim {}): {}\n", elems.len(), elems.join(", ")));
        }
        out.push_str(&format!("  total dim {}\n", self.dim()));
        out
    }

    pub fn to_json(&self) -> Value {
        let desc = self.desc();
        let components: Vec<Value> = self
            .comps
            .iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(d, s)| {
                let basis: Vec<Value> = s
                    .rows()
                    .iter()
                    .map(|r| crate::parse::element_to_json(&desc.element(*d, r), &desc.names()))
                    .collect();
                json!({"degree": d, "basis": basis})
            })
            .collect();
        let mut v = json!({
            "series": desc.series().label(),
            "n": desc.n(),
            "field": F::name(),
            "components": components,
        });
        if let Some(s) = desc.split() {
            v["split"] = json!({"k": s.k, "l": s.l});
        }
        v
    }

    /// Inverse of [`GradedSubalgebra::to_json`]; the ambient must match.
    pub fn from_json(lie: &Arc<Lie<F>>, v: &Value) -> Result<Self> {
        let desc = lie.desc();
        let bad = |m: &str| Error::Parse { pos: 0, msg: m.to_string() };
        if v["series"].as_str() != Some(desc.series().label())
            || v["n"].as_u64() != Some(desc.n() as u64)
        {
            return Err(Error::Mismatch("subalgebra JSON for a different ambient".into()));
        }
        let mut s = Self::zero(lie);
        let comps = v["components"].as_array().ok_or_else(|| bad("missing components"))?;
        for c in comps {
            let d = c["degree"].as_i64().ok_or_else(|| bad("missing degree"))? as i32;
            for e in c["basis"].as_array().ok_or_else(|| bad("missing basis"))? {
                let elem = crate::parse::element_from_json(e, desc)?;
                let (deg, coords) = lie.coords_of(&elem)?;
                if deg != d {
                    return Err(bad("basis element in the wrong degree"));
                }
                s.insert(d, &coords);
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Series};
    use crate::scalar::Fp;

    type Q = Rational;

    fn vect(n: usize) -> Arc<Lie<Q>> {
        Lie::from_desc(build_algebra(Series::Vect, n).unwrap())
    }

    #[test]
    fn negative_part_generates_vect() {
        let g = vect(2);
        let gens = vec![(-1, g.unit(-1, 0)), (-1, g.unit(-1, 1))];
        let s = GradedSubalgebra::closure(&g, &gens);
        // ∂1, ∂2 alone span an abelian subalgebra
        assert_eq!(s.dim(), 2);
        let full = GradedSubalgebra::full(&g);
        assert!(!full.is_solvable());
        assert!(full.is_transitive());
        assert_eq!(full.derived().dim(), 8);
    }

    #[test]
    fn closure_of_nothing_is_zero() {
        let g = vect(3);
        assert!(GradedSubalgebra::closure(&g, &[]).is_zero());
    }

    #[test]
    fn abelian_line() {
        let g = vect(2);
        let s = GradedSubalgebra::closure(&g, &[(-1, g.unit(-1, 0))]);
        assert_eq!(s.derived_dims(), vec![1, 0]);
        assert!(s.is_solvable());
    }

    #[test]
    fn ideal_checks() {
        let g = vect(3);
        let full = GradedSubalgebra::full(&g);
        assert!(full.is_ideal_in(&full).unwrap());
        let line = GradedSubalgebra::closure(&g, &[(-1, g.unit(-1, 0))]);
        assert!(!line.is_ideal_in(&full).unwrap());
        assert!(full.is_ideal_in(&line).is_err());
    }

    #[test]
    fn reduction_mod_p_keeps_dims() {
        let g = vect(3);
        let full = GradedSubalgebra::full(&g);
        let g5 = Lie::<Fp<5>>::new(g.desc_arc());
        let f5 = full.map_to(&g5).unwrap();
        assert_eq!(f5.dim(), full.dim());
        assert_eq!(f5.derived().dim(), full.derived().dim());
    }
}
