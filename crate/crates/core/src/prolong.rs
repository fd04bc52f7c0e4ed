//! Stabilisers of subspaces of g_{−1} and Cartan prolongation inside an
//! ambient algebra.

use std::sync::Arc;

use crate::linalg::{nullspace, Subspace};
use crate::liestruct::{GradedSubalgebra, Lie};
use crate::scalar::Field;
use crate::{Error, Result};

/// Kernel of X ↦ ([X, v_i] mod `target`)_i over a basis of g_`degree`, where
/// the v_i span a subspace of g_`vdeg` and the brackets land in `target`'s
/// degree.
pub(crate) fn conditional_kernel<F: Field>(
    lie: &Lie<F>,
    degree: i32,
    domain: Option<&Subspace<F>>,
    vdeg: i32,
    vs: &[Vec<F>],
    target: Option<&Subspace<F>>,
) -> Subspace<F> {
    let width = lie.dim(degree);
    let basis: Vec<Vec<F>> = match domain {
        Some(d) => d.rows().to_vec(),
        None => (0..width).map(|i| lie.unit(degree, i)).collect(),
    };
    let mut images = Vec::with_capacity(basis.len());
    let mut tw = 0;
    for x in &basis {
        let mut img = Vec::new();
        for v in vs {
            match lie.bracket(degree, x, vdeg, v) {
                Some((_, b)) => {
                    let r = match target {
                        Some(t) => t.reduce(&b),
                        None => b,
                    };
                    img.extend(r);
                }
                None => {}
            }
        }
        tw = img.len();
        images.push(img);
    }
    let ker = nullspace(&images, tw);
    let mut out = Subspace::new(width);
    for k in ker.rows() {
        let mut v = vec![F::zero(); width];
        for (c, b) in k.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                x.add_mul_assign(c, y);
            }
        }
        out.insert(&v);
    }
    out
}

/// {X ∈ g_0 : [X, V] ⊆ V} for V ⊆ g_{−1}.
pub fn stabilizer<F: Field>(lie: &Lie<F>, v: &Subspace<F>) -> Subspace<F> {
    conditional_kernel(lie, 0, None, -1, v.rows(), Some(v))
}

/// (b_{−1}, b_0)_*: b_k = {D ∈ g_k : [D, b_{−1}] ⊆ b_{k−1}} for k ≥ 1.
///
/// The result is checked to be bracket-closed, including brackets that wrap
/// around in the ℤ/n-graded case.
pub fn cartan_prolong<F: Field>(
    lie: &Arc<Lie<F>>,
    b_minus: &Subspace<F>,
    b0: &Subspace<F>,
) -> Result<GradedSubalgebra<F>> {
    let out = cartan_prolong_unchecked(lie, b_minus, b0)?;
    if !out.is_closed() {
        return Err(Error::NotClosed(format!(
            "prolongation in {} is not a subalgebra",
            lie.desc().name()
        )));
    }
    Ok(out)
}

/// As [`cartan_prolong`] without the closure check.
pub fn cartan_prolong_unchecked<F: Field>(
    lie: &Arc<Lie<F>>,
    b_minus: &Subspace<F>,
    b0: &Subspace<F>,
) -> Result<GradedSubalgebra<F>> {
    if !b0.is_subspace_of(&stabilizer(lie, b_minus)) {
        return Err(Error::NotContained(
            "b_0 does not preserve b_{-1}".into(),
        ));
    }
    let mut s = GradedSubalgebra::zero(lie);
    s.set_component(-1, b_minus.clone());
    s.set_component(0, b0.clone());
    let top = lie.desc().max_degree();
    for k in 1..=top {
        let prev = s.component(k - 1).clone();
        let bk = conditional_kernel(lie, k, None, -1, b_minus.rows(), Some(&prev));
        s.set_component(k, bk);
    }
    Ok(s)
}

/// V_*: the prolongation of (V, St(V)).
pub fn v_star<F: Field>(lie: &Arc<Lie<F>>, v: &Subspace<F>) -> Result<GradedSubalgebra<F>> {
    if v.is_zero() {
        return Err(Error::Inadmissible("V_* needs V ≠ 0".into()));
    }
    let st = stabilizer(lie, v);
    cartan_prolong(lie, v, &st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Series};
    use crate::scalar::Rational;

    #[test]
    fn stabilizer_of_d1_in_vect3() {
        let g = Lie::<Rational>::from_desc(build_algebra(Series::Vect, 3).unwrap());
        let v = Subspace::spanned_by(3, [g.unit(-1, 0)].iter());
        assert_eq!(stabilizer(&g, &v).dim(), 7);
        let full = Subspace::full(3);
        assert_eq!(stabilizer(&g, &full).dim(), 9);
    }

    #[test]
    fn full_prolongation_is_everything() {
        let g = Lie::<Rational>::from_desc(build_algebra(Series::Vect, 3).unwrap());
        let s = v_star(&g, &Subspace::full(3)).unwrap();
        assert_eq!(s.dim(), g.desc().dim());
    }

    #[test]
    fn b0_must_preserve() {
        let g = Lie::<Rational>::from_desc(build_algebra(Series::Vect, 2).unwrap());
        let v = Subspace::spanned_by(2, [g.unit(-1, 0)].iter());
        let b0 = Subspace::full(4);
        assert!(cartan_prolong(&g, &v, &b0).is_err());
    }
}
