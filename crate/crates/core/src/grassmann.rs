//! The Grassmann algebra Λ(n) on odd generators ξ_1, …, ξ_n.
//!
//! Monomials are bitmasks (bit `i-1` set for ξ_i). Polynomials are sparse
//! maps from monomials to field elements, ordered graded-lexicographically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Field;
use crate::{Error, Result};

pub const MAX_VARS: usize = 16;

/// A product ξ_{i_1} ⋯ ξ_{i_r} with `i_1 < … < i_r`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(u16);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_bits(bits: u16) -> Self {
        Monomial(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// ξ_i, 1-based.
    pub fn var(i: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&i), "variable index {i} out of range");
        Monomial(1 << (i - 1))
    }

    /// Product of distinct variables; the caller's order is ignored.
    pub fn from_indices(indices: &[usize]) -> Self {
        indices.iter().fold(Monomial::ONE, |m, &i| {
            let v = Monomial::var(i);
            assert!(m.0 & v.0 == 0, "repeated index {i}");
            Monomial(m.0 | v.0)
        })
    }

    /// Top monomial ξ_1 ⋯ ξ_n.
    pub fn top(n: usize) -> Self {
        Monomial(((1u32 << n) - 1) as u16)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Λ-degree mod 2.
    pub fn parity(self) -> u8 {
        (self.0.count_ones() & 1) as u8
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    pub fn is_disjoint(self, other: Monomial) -> bool {
        self.0 & other.0 == 0
    }

    /// Restriction to the variables whose bits are set in `mask`.
    pub fn restrict(self, mask: u16) -> Monomial {
        Monomial(self.0 & mask)
    }

    /// Ascending variable indices.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i + 1)
            }
        })
    }

    /// Number of set indices strictly below `i`.
    fn count_below(self, i: usize) -> u32 {
        (self.0 & ((1u32 << (i - 1)) - 1) as u16).count_ones()
    }

    /// `self · other` as `(sign, product)`, or `None` when the sets intersect.
    ///
    /// The sign counts the transpositions needed to sort the concatenation.
    pub fn mul(self, other: Monomial) -> Option<(i8, Monomial)> {
        if !self.is_disjoint(other) {
            return None;
        }
        let inversions: u32 = self.indices().map(|i| other.count_below(i)).sum();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial(self.0 | other.0)))
    }

    /// ∂_i applied to the monomial.
    pub fn partial(self, i: usize) -> Option<(i8, Monomial)> {
        if !self.contains(i) {
            return None;
        }
        let sign = if self.count_below(i) % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial(self.0 & !(1 << (i - 1)))))
    }

    /// All monomials in n variables of the given degree, in canonical order.
    pub fn of_degree(n: usize, degree: usize) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = (0u32..(1u32 << n))
            .map(|b| Monomial(b as u16))
            .filter(|m| m.degree() == degree)
            .collect();
        out.sort();
        out
    }

    /// Render with a naming scheme, e.g. `x1.x2.e3`; the unit renders as `1`.
    pub fn render(self, names: &VarNames) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        self.indices()
            .map(|i| names.name(i))
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // Lexicographic on ascending index lists: whoever owns the lowest
        // differing index comes first.
        let low = diff & diff.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The coordinate split n = 2k + l for the Hamiltonian series:
/// ξ_1..ξ_k are variables 1..k, η_1..η_k are k+1..2k and ζ_1..ζ_l follow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct HSplit {
    pub k: usize,
    pub l: usize,
}

impl HSplit {
    pub fn new(k: usize, l: usize) -> Self {
        HSplit { k, l }
    }

    /// Standard split with l = n mod 2.
    pub fn standard(n: usize) -> Self {
        HSplit { k: n / 2, l: n % 2 }
    }

    pub fn n(&self) -> usize {
        2 * self.k + self.l
    }

    pub fn xi(&self, i: usize) -> usize {
        assert!((1..=self.k).contains(&i));
        i
    }

    pub fn eta(&self, i: usize) -> usize {
        assert!((1..=self.k).contains(&i));
        self.k + i
    }

    pub fn zeta(&self, j: usize) -> usize {
        assert!((1..=self.l).contains(&j));
        2 * self.k + j
    }

    /// Variable paired with `i` by the Poisson bracket.
    pub fn partner(&self, i: usize) -> usize {
        if i <= self.k {
            i + self.k
        } else if i <= 2 * self.k {
            i - self.k
        } else {
            i
        }
    }
}

/// How variable indices are printed and parsed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarNames {
    /// `x1 … xn`
    Plain,
    /// `x1 … xk, e1 … ek, z1 … zl`
    Split(HSplit),
}

impl VarNames {
    pub fn name(&self, i: usize) -> String {
        match self {
            VarNames::Plain => format!("x{i}"),
            VarNames::Split(s) => {
                if i <= s.k {
                    format!("x{i}")
                } else if i <= 2 * s.k {
                    format!("e{}", i - s.k)
                } else {
                    format!("z{}", i - 2 * s.k)
                }
            }
        }
    }

    /// Inverse of [`VarNames::name`].
    pub fn index(&self, prefix: char, i: usize, n: usize) -> Option<usize> {
        if i == 0 {
            return None;
        }
        let idx = match (self, prefix) {
            (VarNames::Plain, 'x') => i,
            (VarNames::Split(s), 'x') if i <= s.k => i,
            (VarNames::Split(s), 'e') if i <= s.k => s.k + i,
            (VarNames::Split(s), 'z') if i <= s.l => 2 * s.k + i,
            _ => return None,
        };
        (idx <= n).then_some(idx)
    }
}

/// An element of Λ(n): a sparse combination of monomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SuperPoly<F> {
    n: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> SuperPoly<F> {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_VARS, "at most {MAX_VARS} variables");
        SuperPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, Monomial::ONE, F::one())
    }

    pub fn var(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "variable index {i} out of range for n = {n}");
        Self::monomial(n, Monomial::var(i), F::one())
    }

    pub fn monomial(n: usize, m: Monomial, c: F) -> Self {
        let mut p = Self::zero(n);
        p.add_term(m, c);
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> F {
        self.terms.get(&m).cloned().unwrap_or_else(F::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.bits() as u32 >> self.n == 0);
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!(
                "Λ({}) vs Λ({})",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(*m, v.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((s, m)) = a.mul(*b) {
                    let c = ca.mul(cb);
                    out.add_term(m, if s > 0 { c } else { c.neg() });
                }
            }
        }
        Ok(out)
    }

    /// Left partial derivative ∂_i, an odd superderivation.
    pub fn partial(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if let Some((s, r)) = m.partial(i) {
                out.add_term(r, if s > 0 { c.clone() } else { c.neg() });
            }
        }
        Ok(out)
    }

    /// Λ-degree if homogeneous (the zero polynomial has no degree).
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Parity if every term has the same parity.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let p = it.next()?;
        it.all(|q| q == p).then_some(p)
    }

    pub fn homogeneous_part(&self, degree: usize) -> Self {
        SuperPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn parity_part(&self, parity: u8) -> Self {
        SuperPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.parity() == parity)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Maximum Λ-degree present.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> SuperPoly<G> {
        let mut out = SuperPoly::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn render(&self, names: &VarNames) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            append_term(&mut s, idx == 0, c, &m.render(names), m.bits() == 0);
        }
        s
    }
}

/// Append `c·body` to a sum being rendered, writing `+ -` signs nicely.
pub(crate) fn append_term<F: Field>(out: &mut String, first: bool, c: &F, body: &str, bare: bool) {
    let neg_one = F::one().neg();
    let (sign, mag): (&str, Option<String>) = if F::characteristic() == 0 {
        let r = c.lift();
        if r.signum() < 0 {
            ("-", Some(r.abs().to_string()))
        } else {
            ("+", Some(r.to_string()))
        }
    } else if *c == neg_one {
        ("-", Some("1".to_string()))
    } else {
        ("+", Some(c.to_string()))
    };
    let mag = mag.unwrap();
    if first {
        if sign == "-" {
            out.push('-');
        }
    } else {
        out.push_str(if sign == "-" { " - " } else { " + " });
    }
    if bare {
        out.push_str(&mag);
    } else if mag == "1" {
        out.push_str(body);
    } else {
        out.push_str(&mag);
        out.push('*');
        out.push_str(body);
    }
}

impl<F: Field> fmt::Display for SuperPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&VarNames::Plain))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    type Q = Rational;

    fn x(n: usize, i: usize) -> SuperPoly<Q> {
        SuperPoly::var(n, i)
    }

    #[test]
    fn mono_mul_examples() {
        let (x1, x2) = (Monomial::var(1), Monomial::var(2));
        assert_eq!(x1.mul(x2), Some((1, Monomial::from_indices(&[1, 2]))));
        assert_eq!(x2.mul(x1), Some((-1, Monomial::from_indices(&[1, 2]))));
        assert_eq!(x1.mul(x1), None);
    }

    #[test]
    fn poly_mul_examples() {
        let n = 3;
        let lhs = x(n, 1).add(&x(n, 2)).unwrap().mul(&x(n, 2)).unwrap();
        assert_eq!(lhs, x(n, 1).mul(&x(n, 2)).unwrap());
        let f = x(n, 1).add(&x(n, 3)).unwrap();
        assert_eq!(SuperPoly::one(n).mul(&f).unwrap(), f);
        let x12 = x(n, 1).mul(&x(n, 2)).unwrap();
        assert!(x12.mul(&x(n, 2)).unwrap().is_zero());
        assert!(x(2, 1).mul(&x(3, 1)).is_err());
    }

    #[test]
    fn partial_examples() {
        let x12 = x(2, 1).mul(&x(2, 2)).unwrap();
        assert_eq!(x12.partial(1).unwrap(), x(2, 2));
        assert_eq!(x12.partial(2).unwrap(), x(2, 1).scale(&Q::from_i64(-1)));
        assert!(x(2, 2).partial(1).unwrap().is_zero());
        assert!(x(2, 2).partial(3).is_err());
    }

    #[test]
    fn partial_sign_matches_leibniz() {
        // ∂2(ξ1·ξ2) = ∂2(ξ1)ξ2 + (-1)^{p(ξ1)} ξ1 ∂2(ξ2) = -ξ1
        let lhs = x(2, 1).mul(&x(2, 2)).unwrap().partial(2).unwrap();
        let rhs = x(2, 1)
            .partial(2)
            .unwrap()
            .mul(&x(2, 2))
            .unwrap()
            .sub(&x(2, 1).mul(&x(2, 2).partial(2).unwrap()).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    fn all_monomials(n: usize) -> Vec<Monomial> {
        (0..(1u32 << n)).map(|b| Monomial::from_bits(b as u16)).collect()
    }

    #[test]
    fn supercommutativity_exhaustive() {
        for n in 1..=6 {
            for a in all_monomials(n) {
                for b in all_monomials(n) {
                    let fa = SuperPoly::<Q>::monomial(n, a, Q::one());
                    let fb = SuperPoly::<Q>::monomial(n, b, Q::one());
                    let ab = fa.mul(&fb).unwrap();
                    let ba = fb.mul(&fa).unwrap();
                    let sign = if a.parity() * b.parity() == 1 { -1 } else { 1 };
                    assert_eq!(ab, ba.scale(&Q::from_i64(sign)));
                    if !ab.is_zero() {
                        assert_eq!(ab.degree(), Some(a.degree() + b.degree()));
                    }
                }
            }
        }
    }

    #[test]
    fn partials_anticommute_exhaustive() {
        for n in 1..=6 {
            for m in all_monomials(n) {
                let f = SuperPoly::<Q>::monomial(n, m, Q::one());
                for i in 1..=n {
                    assert!(f.partial(i).unwrap().partial(i).unwrap().is_zero());
                    for j in 1..=n {
                        if i == j {
                            continue;
                        }
                        let ij = f.partial(j).unwrap().partial(i).unwrap();
                        let ji = f.partial(i).unwrap().partial(j).unwrap();
                        assert_eq!(ij, ji.scale(&Q::from_i64(-1)));
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_order_is_graded_lex() {
        let ms = Monomial::of_degree(3, 2);
        let rendered: Vec<String> = ms.iter().map(|m| m.render(&VarNames::Plain)).collect();
        assert_eq!(rendered, vec!["x1.x2", "x1.x3", "x2.x3"]);
        assert!(Monomial::ONE < Monomial::var(3));
        assert!(Monomial::var(3) < Monomial::from_indices(&[1, 2]));
    }

    #[test]
    fn rendering() {
        let f = x(3, 1)
            .mul(&x(3, 2))
            .unwrap()
            .sub(&SuperPoly::one(3).scale(&Q::from_i64(2)))
            .unwrap();
        assert_eq!(f.render(&VarNames::Plain), "-2 + x1.x2");
        let names = VarNames::Split(HSplit::new(1, 1));
        assert_eq!(Monomial::from_indices(&[1, 2, 3]).render(&names), "x1.e1.z1");
        let g = SuperPoly::<Fp<5>>::var(2, 1).scale(&Fp::new(-1));
        assert_eq!(g.render(&VarNames::Plain), "-x1");
    }

    use proptest::prelude::*;

    fn arb_poly(n: usize) -> impl Strategy<Value = SuperPoly<Q>> {
        proptest::collection::vec((0u16..(1u16 << n), -3i64..=3), 0..6).prop_map(move |ts| {
            let mut p = SuperPoly::zero(n);
            for (b, c) in ts {
                p.add_term(Monomial::from_bits(b), Q::from_i64(c));
            }
            p
        })
    }

    fn leibniz_holds<F: Field>(f: &SuperPoly<F>, g: &SuperPoly<F>, i: usize) -> bool {
        // Expand f into parity parts so the sign (-1)^{p(f)} is well defined.
        let lhs = f.mul(g).unwrap().partial(i).unwrap();
        let mut rhs = f.partial(i).unwrap().mul(g).unwrap();
        for p in 0..2u8 {
            let fp = f.parity_part(p);
            let t = fp.mul(&g.partial(i).unwrap()).unwrap();
            rhs = if p == 0 { rhs.add(&t) } else { rhs.sub(&t) }.unwrap();
        }
        lhs == rhs
    }

    proptest! {
        #[test]
        fn leibniz_rule_rational(f in arb_poly(5), g in arb_poly(5), i in 1usize..=5) {
            prop_assert!(leibniz_holds(&f, &g, i));
        }

        #[test]
        fn leibniz_rule_mod_7(f in arb_poly(5), g in arb_poly(5), i in 1usize..=5) {
            let conv = |p: &SuperPoly<Q>| p.map_field(|c| Fp::<7>::from_rational(c).unwrap());
            prop_assert!(leibniz_holds(&conv(&f), &conv(&g), i));
        }

        #[test]
        fn multiplication_is_associative(f in arb_poly(4), g in arb_poly(4), h in arb_poly(4)) {
            let a = f.mul(&g).unwrap().mul(&h).unwrap();
            let b = f.mul(&g.mul(&h).unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
