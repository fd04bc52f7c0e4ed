//! Vector fields Σ f_i ∂_i on the (0|n)-dimensional superspace, and the
//! Poisson bracket / Hamiltonian fields of the generating-function picture.

use std::fmt;

use crate::grassmann::{append_term, HSplit, Monomial, SuperPoly, VarNames};
use crate::scalar::Field;
use crate::{Error, Result};

/// A superderivation Σ f_i ∂_i of Λ(n). `components[i-1]` is f_i.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorField<F> {
    n: usize,
    components: Vec<SuperPoly<F>>,
}

impl<F: Field> VectorField<F> {
    pub fn zero(n: usize) -> Self {
        VectorField {
            n,
            components: (0..n).map(|_| SuperPoly::zero(n)).collect(),
        }
    }

    /// `c · m ∂_dir`
    pub fn term(n: usize, m: Monomial, dir: usize, c: F) -> Self {
        let mut v = Self::zero(n);
        v.add_term(m, dir, c);
        v
    }

    /// ∂_i
    pub fn partial(n: usize, i: usize) -> Self {
        Self::term(n, Monomial::ONE, i, F::one())
    }

    pub fn from_components(components: Vec<SuperPoly<F>>) -> Result<Self> {
        let n = components.len();
        if components.iter().any(|c| c.n() != n) {
            return Err(Error::Mismatch("component polynomials over the wrong Λ(n)".into()));
        }
        Ok(VectorField { n, components })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn component(&self, i: usize) -> &SuperPoly<F> {
        &self.components[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn add_term(&mut self, m: Monomial, dir: usize, c: F) {
        assert!(dir >= 1 && dir <= self.n, "direction {dir} out of range");
        self.components[dir - 1].add_term(m, c);
    }

    /// Terms as `(monomial, direction, coefficient)` in canonical order.
    pub fn terms(&self) -> Vec<(Monomial, usize, F)> {
        let mut out: Vec<(Monomial, usize, F)> = self
            .components
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.terms().map(move |(m, c)| (*m, i + 1, c.clone())))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!(
                "vect(0|{}) vs vect(0|{})",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorField {
            n: self.n,
            components,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> Self {
        VectorField {
            n: self.n,
            components: self.components.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Left multiplication by a function: g·Σ f_i∂_i = Σ (g f_i)∂_i.
    pub fn left_mul(&self, g: &SuperPoly<F>) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|f| g.mul(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorField {
            n: self.n,
            components,
        })
    }

    /// Apply the field to a function: Σ f_i ∂_i(g).
    pub fn apply(&self, g: &SuperPoly<F>) -> Result<SuperPoly<F>> {
        let mut out = SuperPoly::zero(self.n);
        for (i, f) in self.components.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            out = out.add(&f.mul(&g.partial(i + 1)?)?)?;
        }
        Ok(out)
    }

    /// Part of parity `p`; a term m∂_i has parity p(m) + 1.
    pub fn parity_part(&self, p: u8) -> Self {
        VectorField {
            n: self.n,
            components: self.components.iter().map(|f| f.parity_part(1 - p)).collect(),
        }
    }

    pub fn parity(&self) -> Option<u8> {
        let mut ps = self
            .components
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| f.parity().map(|q| 1 - q));
        let p = ps.next()??;
        for q in ps {
            if q? != p {
                return None;
            }
        }
        Some(p)
    }

    /// Grading degree (Λ-degree of coefficients minus one) if homogeneous.
    pub fn degree(&self) -> Option<i32> {
        let mut ds = self
            .components
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| f.degree());
        let d = ds.next()??;
        for e in ds {
            if e? != d {
                return None;
            }
        }
        Some(d as i32 - 1)
    }

    pub fn homogeneous_part(&self, degree: i32) -> Self {
        if degree < -1 {
            return Self::zero(self.n);
        }
        VectorField {
            n: self.n,
            components: self
                .components
                .iter()
                .map(|f| f.homogeneous_part((degree + 1) as usize))
                .collect(),
        }
    }

    /// Degrees with a nonzero homogeneous part, ascending.
    pub fn degrees(&self) -> Vec<i32> {
        let mut ds: Vec<i32> = self
            .components
            .iter()
            .flat_map(|f| f.terms().map(|(m, _)| m.degree() as i32 - 1))
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> VectorField<G> {
        VectorField {
            n: self.n,
            components: self.components.iter().map(|c| c.map_field(f)).collect(),
        }
    }

    pub fn render(&self, names: &VarNames) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, dir, c)) in terms.iter().enumerate() {
            let body = if m.bits() == 0 {
                format!("d{dir}")
            } else {
                format!("{}.d{dir}", m.render(names))
            };
            append_term(&mut s, idx == 0, c, &body, false);
        }
        s
    }
}

impl<F: Field> fmt::Display for VectorField<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&VarNames::Plain))
    }
}

fn bracket_homogeneous<F: Field>(
    a: &VectorField<F>,
    pa: u8,
    b: &VectorField<F>,
    pb: u8,
) -> Result<VectorField<F>> {
    let sign = if pa * pb == 1 { F::one() } else { F::one().neg() };
    // Σ_j (A(B_j) - (-1)^{pa pb} B(A_j)) ∂_j
    let mut components = Vec::with_capacity(a.n);
    for j in 0..a.n {
        let ab = a.apply(&b.components[j])?;
        let ba = b.apply(&a.components[j])?;
        components.push(ab.add(&ba.scale(&sign))?);
    }
    Ok(VectorField { n: a.n, components })
}

/// Supercommutator [D1, D2] = D1∘D2 − (−1)^{p(D1)p(D2)} D2∘D1, extended
/// bilinearly to inhomogeneous arguments.
pub fn bracket<F: Field>(d1: &VectorField<F>, d2: &VectorField<F>) -> Result<VectorField<F>> {
    d1.check(d2)?;
    let mut out = VectorField::zero(d1.n);
    for pa in 0..2u8 {
        let a = d1.parity_part(pa);
        if a.is_zero() {
            continue;
        }
        for pb in 0..2u8 {
            let b = d2.parity_part(pb);
            if b.is_zero() {
                continue;
            }
            out = out.add(&bracket_homogeneous(&a, pa, &b, pb)?)?;
        }
    }
    Ok(out)
}

/// Div(Σ f_i ∂_i) = Σ (−1)^{p(f_i)} ∂_i(f_i), applied termwise.
pub fn divergence<F: Field>(d: &VectorField<F>) -> SuperPoly<F> {
    let mut out = SuperPoly::zero(d.n);
    for (i, f) in d.components.iter().enumerate() {
        for (m, c) in f.terms() {
            if let Some((s, r)) = m.partial(i + 1) {
                let odd = m.parity() == 1;
                let positive = (s > 0) != odd;
                out.add_term(r, if positive { c.clone() } else { c.neg() });
            }
        }
    }
    out
}

fn check_split<F: Field>(split: &HSplit, f: &SuperPoly<F>) -> Result<()> {
    if split.n() != f.n() {
        return Err(Error::Mismatch(format!(
            "generating function over Λ({}) with split of {} variables",
            f.n(),
            split.n()
        )));
    }
    Ok(())
}

/// Poisson bracket
/// {f, g} = (−1)^{p(f)} (Σ_i ∂f/∂ξ_i ∂g/∂η_i + ∂f/∂η_i ∂g/∂ξ_i + Σ_j ∂f/∂ζ_j ∂g/∂ζ_j).
pub fn poisson<F: Field>(split: &HSplit, f: &SuperPoly<F>, g: &SuperPoly<F>) -> Result<SuperPoly<F>> {
    check_split(split, f)?;
    check_split(split, g)?;
    let n = split.n();
    let dg: Vec<SuperPoly<F>> = (1..=n).map(|v| g.partial(v)).collect::<Result<_>>()?;
    let mut out = SuperPoly::zero(n);
    for (m, c) in f.terms() {
        let c = if m.parity() == 1 { c.neg() } else { c.clone() };
        for v in m.indices() {
            let (s, r) = m.partial(v).unwrap();
            let df = SuperPoly::monomial(n, r, if s > 0 { c.clone() } else { c.neg() });
            let w = split.partner(v);
            out = out.add(&df.mul(&dg[w - 1])?)?;
        }
    }
    Ok(out)
}

/// The Hamiltonian field H_f, characterised by H_f(g) = {f, g}.
pub fn hamiltonian<F: Field>(split: &HSplit, f: &SuperPoly<F>) -> Result<VectorField<F>> {
    check_split(split, f)?;
    let n = split.n();
    let mut out = VectorField::zero(n);
    for (m, c) in f.terms() {
        let c = if m.parity() == 1 { c.neg() } else { c.clone() };
        for v in m.indices() {
            let (s, r) = m.partial(v).unwrap();
            out.add_term(r, split.partner(v), if s > 0 { c.clone() } else { c.neg() });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    fn field(n: usize, terms: &[(&[usize], usize, i64)]) -> VectorField<Q> {
        let mut v = VectorField::zero(n);
        for (idx, dir, c) in terms {
            v.add_term(Monomial::from_indices(idx), *dir, q(*c));
        }
        v
    }

    #[test]
    fn bracket_examples() {
        let d1 = VectorField::<Q>::partial(2, 1);
        let x1d2 = field(2, &[(&[1], 2, 1)]);
        assert_eq!(bracket(&d1, &x1d2).unwrap(), VectorField::partial(2, 2));

        let x1d2 = field(2, &[(&[1], 2, 1)]);
        let x2d1 = field(2, &[(&[2], 1, 1)]);
        let expect = field(2, &[(&[1], 1, 1), (&[2], 2, -1)]);
        assert_eq!(bracket(&x1d2, &x2d1).unwrap(), expect);

        let e = field(2, &[(&[1], 1, 1)]);
        assert!(bracket(&e, &e).unwrap().is_zero());
    }

    #[test]
    fn odd_bracket_with_itself_need_not_vanish() {
        // [∂1 + ξ1ξ2∂2, same] = 2(∂1 + ξ1ξ2∂2)^2, nonzero in general
        let a = field(2, &[(&[], 1, 1), (&[1, 2], 2, 1)]);
        let sq = bracket(&a, &a).unwrap();
        assert_eq!(sq, field(2, &[(&[2], 2, 2)]));
    }

    #[test]
    fn divergence_examples() {
        assert_eq!(
            divergence(&field(2, &[(&[1], 1, 1)])),
            SuperPoly::one(2).scale(&q(-1))
        );
        assert!(divergence(&field(2, &[(&[1], 1, 1), (&[2], 2, -1)])).is_zero());
        assert_eq!(divergence(&field(2, &[(&[1, 2], 1, 1)])), SuperPoly::var(2, 2));
    }

    #[test]
    fn poisson_examples() {
        let s = HSplit::new(2, 0);
        let x1 = SuperPoly::<Q>::var(4, 1);
        let e1 = SuperPoly::<Q>::var(4, 3);
        assert_eq!(poisson(&s, &x1, &e1).unwrap(), SuperPoly::one(4).scale(&q(-1)));

        let s = HSplit::new(0, 1);
        let z1 = SuperPoly::<Q>::var(1, 1);
        assert_eq!(poisson(&s, &z1, &z1).unwrap(), SuperPoly::one(1).scale(&q(-1)));

        let s = HSplit::new(2, 1);
        let f = SuperPoly::<Q>::var(5, 2).mul(&SuperPoly::var(5, 5)).unwrap();
        assert!(poisson(&s, &SuperPoly::one(5), &f).unwrap().is_zero());
    }

    #[test]
    fn hamiltonian_examples() {
        let s = HSplit::new(1, 0);
        let x1 = SuperPoly::<Q>::var(2, 1);
        assert_eq!(
            hamiltonian(&s, &x1).unwrap(),
            VectorField::partial(2, 2).scale(&q(-1))
        );
        let x1e1 = x1.mul(&SuperPoly::var(2, 2)).unwrap();
        let expect = field(2, &[(&[2], 2, 1), (&[1], 1, -1)]);
        assert_eq!(hamiltonian(&s, &x1e1).unwrap(), expect);
        assert!(hamiltonian(&s, &SuperPoly::<Q>::one(2)).unwrap().is_zero());
    }

    #[test]
    fn hamiltonian_field_acts_by_poisson_bracket() {
        let s = HSplit::new(1, 1);
        let n = 3;
        for a in 0..8u16 {
            for b in 0..8u16 {
                let f = SuperPoly::<Q>::monomial(n, Monomial::from_bits(a), q(1));
                let g = SuperPoly::<Q>::monomial(n, Monomial::from_bits(b), q(1));
                let lhs = hamiltonian(&s, &f).unwrap().apply(&g).unwrap();
                assert_eq!(lhs, poisson(&s, &f, &g).unwrap());
            }
        }
    }

    #[test]
    fn degrees_and_parity() {
        let v = field(3, &[(&[1, 2], 3, 1)]);
        assert_eq!(v.degree(), Some(1));
        assert_eq!(v.parity(), Some(1));
        let w = field(3, &[(&[1], 3, 1), (&[], 2, 1)]);
        assert_eq!(w.degree(), None);
        assert_eq!(w.degrees(), vec![-1, 0]);
        assert_eq!(w.render(&VarNames::Plain), "d2 + x1.d3");
    }
}
