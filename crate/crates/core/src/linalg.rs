//! Dense exact linear algebra: subspaces kept in reduced row echelon form.

use crate::scalar::Field;

/// A subspace of F^width, stored as RREF rows sorted by pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F> {
    width: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn new(width: usize) -> Self {
        Subspace {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::new(width);
        for i in 0..width {
            s.insert(&unit(width, i));
        }
        s
    }

    pub fn spanned_by<'a>(width: usize, vectors: impl IntoIterator<Item = &'a Vec<F>>) -> Self
    where
        F: 'a,
    {
        let mut s = Self::new(width);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after elimination against the pivot rows.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        self.reduce_in_place(&mut v);
        v
    }

    pub fn reduce_in_place(&self, v: &mut [F]) {
        debug_assert_eq!(v.len(), self.width);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].neg();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    x.add_mul_assign(&c, r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        for x in r.iter_mut().skip(p) {
            *x = x.mul(&inv);
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].neg();
            for (x, y) in row.iter_mut().zip(&r).skip(p) {
                if !y.is_zero() {
                    x.add_mul_assign(&c, y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Coordinates of `v` in the row basis, or None if `v` is outside.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let c: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (row, ci) in self.rows.iter().zip(&c) {
            if ci.is_zero() {
                continue;
            }
            let m = ci.neg();
            for (x, y) in rest.iter_mut().zip(row) {
                if !y.is_zero() {
                    x.add_mul_assign(&m, y);
                }
            }
        }
        rest.iter().all(|x| x.is_zero()).then_some(c)
    }

    pub fn combine(&self, coords: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.width];
        for (row, c) in self.rows.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(row) {
                if !y.is_zero() {
                    x.add_mul_assign(c, y);
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        // kernel of (a, b) ↦ a·rows(self) − b·rows(other)
        let images: Vec<Vec<F>> = self
            .rows
            .iter()
            .cloned()
            .chain(other.rows.iter().map(|r| r.iter().map(|x| x.neg()).collect()))
            .collect();
        let ker = nullspace(&images, self.width);
        let mut out = Self::new(self.width);
        for k in ker.rows() {
            out.insert(&self.combine(&k[..self.dim()]));
        }
        out
    }
}

pub fn unit<F: Field>(width: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); width];
    v[i] = F::one();
    v
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Kernel of the linear map sending e_j to `images[j]` (each of length
/// `target`), returned in RREF.
pub fn nullspace<F: Field>(images: &[Vec<F>], target: usize) -> Subspace<F> {
    let n = images.len();
    let mut aug = Subspace::new(target + n);
    for (j, img) in images.iter().enumerate() {
        debug_assert_eq!(img.len(), target);
        let mut row = img.clone();
        row.extend((0..n).map(|i| if i == j { F::one() } else { F::zero() }));
        aug.insert(&row);
    }
    let mut ker = Subspace::new(n);
    for (row, &p) in aug.rows.iter().zip(&aug.pivots) {
        if p >= target {
            ker.rows.push(row[target..].to_vec());
            ker.pivots.push(p - target);
        }
    }
    ker
}

/// Rank of a list of vectors.
pub fn rank<F: Field>(width: usize, vectors: &[Vec<F>]) -> usize {
    Subspace::spanned_by(width, vectors.iter()).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};
    use proptest::prelude::*;

    type Q = Rational;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q::from_i64(x)).collect()
    }

    #[test]
    fn rref_is_canonical() {
        let mut a = Subspace::new(3);
        a.insert(&v(&[1, 2, 3]));
        a.insert(&v(&[0, 1, 1]));
        let mut b = Subspace::new(3);
        b.insert(&v(&[1, 3, 4]));
        b.insert(&v(&[2, 4, 6]));
        b.insert(&v(&[1, 1, 2]));
        assert_eq!(a, b);
        assert_eq!(a.rows(), &[v(&[1, 0, 1]), v(&[0, 1, 1])]);
    }

    #[test]
    fn nullspace_small() {
        // e0 ↦ 1, e1 ↦ 1, e2 ↦ 0
        let ker = nullspace(&[v(&[1]), v(&[1]), v(&[0])], 1);
        assert_eq!(ker.rows(), &[v(&[1, -1, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn intersection_small() {
        let a = Subspace::spanned_by(3, [v(&[1, 0, 0]), v(&[0, 1, 0])].iter());
        let b = Subspace::spanned_by(3, [v(&[1, 1, 1]), v(&[0, 1, 0])].iter());
        let c = a.intersection(&b);
        assert_eq!(c.rows(), &[v(&[0, 1, 0])]);
    }

    proptest! {
        #[test]
        fn rank_nullity(m in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 1..6)) {
            let images: Vec<Vec<Q>> = m.iter().map(|r| v(r)).collect();
            let ker = nullspace(&images, 4);
            prop_assert_eq!(ker.dim() + rank(4, &images), images.len());
            for k in ker.rows() {
                let mut img = vec![Q::zero(); 4];
                for (c, col) in k.iter().zip(&images) {
                    for (x, y) in img.iter_mut().zip(col) {
                        x.add_mul_assign(c, y);
                    }
                }
                prop_assert!(is_zero_vec(&img));
            }
        }

        #[test]
        fn coordinates_roundtrip(m in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 1..5),
                                 c in prop::collection::vec(-5i64..6, 5)) {
            let s = Subspace::spanned_by(5, m.iter().map(|r| v(r)).collect::<Vec<_>>().iter());
            let coords: Vec<Q> = c[..s.dim()].iter().map(|&x| Q::from_i64(x)).collect();
            let w = s.combine(&coords);
            prop_assert_eq!(s.coordinates(&w), Some(coords));
        }

        #[test]
        fn rank_over_fp_bounded_by_rational(m in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 1..6)) {
            let fp: Vec<Vec<Fp<5>>> = m.iter().map(|r| r.iter().map(|&x| Fp::<5>::from_i64(x)).collect()).collect();
            let q: Vec<Vec<Q>> = m.iter().map(|r| v(r)).collect();
            prop_assert!(rank(4, &fp) <= rank(4, &q));
        }
    }
}
