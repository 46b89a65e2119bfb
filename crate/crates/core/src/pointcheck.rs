//! Exact pointwise checks for statements involving `x̲^{-1}`, slice restrictions and
//! unit directions `J`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraTable, Element, Frame};
use crate::index_set::IndexSet;
use crate::operators::{cauchy_riemann, gamma_spherical, script_s_p, Multiplicities};
use crate::partition::Partition;
use crate::polynomial::{Monomial, Poly};
use crate::samples::Sampler;
use crate::scalar::{rational_sqrt, Rational};
use crate::spaces::{default_multiplicities, p_slice_components, SpacesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("point lies on the real axis")]
    RealAxis,
    #[error("direction is not a unit vector")]
    NonUnit,
    #[error("expected {expected} coordinates, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("block {0} has an irrational or vanishing norm at the point")]
    BadBlockNorm(IndexSet),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Spaces(#[from] SpacesError),
}

/// Rational point on the unit sphere of `R^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSpherePoint {
    coords: Vec<Rational>,
}

impl RationalSpherePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self, PointError> {
        let norm: Rational = coords.iter().map(|c| c * c).sum();
        if norm.is_one() {
            Ok(RationalSpherePoint { coords })
        } else {
            Err(PointError::NonUnit)
        }
    }

    /// Inverse stereographic projection of `t` in `R^{dim-1}`:
    /// `((1 - |t|^2)/(1 + |t|^2), 2t/(1 + |t|^2))`.
    pub fn from_stereographic(t: &[Rational]) -> Self {
        let s: Rational = t.iter().map(|c| c * c).sum();
        let denom = Rational::one() + &s;
        let mut coords = vec![(Rational::one() - &s) / &denom];
        coords.extend(
            t.iter()
                .map(|c| Rational::from_integer(2.into()) * c / &denom),
        );
        RationalSpherePoint { coords }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Seeded rational sphere point; in dimension one this is `±1`.
pub fn rational_sphere_point(dim: usize, sampler: &mut Sampler) -> RationalSpherePoint {
    assert!(dim >= 1, "sphere dimension must be positive");
    if dim == 1 {
        let sign = if sampler.below(2) == 0 { 1 } else { -1 };
        return RationalSpherePoint {
            coords: vec![Rational::from_integer(sign.into())],
        };
    }
    let t: Vec<Rational> = (0..dim - 1).map(|_| sampler.rational()).collect();
    RationalSpherePoint::from_stereographic(&t)
}

fn imaginary_at(frame: &Frame, a: IndexSet, point: &[Rational]) -> Element {
    let mut out = frame.algebra().zero();
    for i in a.iter() {
        out.add_scaled(frame.unit(i), &point[i]);
    }
    out
}

fn check_point(frame: &Frame, point: &[Rational]) -> Result<(), PointError> {
    if point.len() != frame.n() + 1 {
        return Err(PointError::WrongLength {
            expected: frame.n() + 1,
            found: point.len(),
        });
    }
    Ok(())
}

/// `∂̄f(p) - ϑ̄f(p) = -x̲^{-1} Γf(p)` with `ϑ̄f = ∂_0 f - x̲^{-1} E f`, evaluated exactly.
pub fn check_difference_at(f: &Poly, point: &[Rational]) -> Result<bool, PointError> {
    let frame = f.frame();
    check_point(frame, point)?;
    let full = IndexSet::full(frame.n());
    let xbar = imaginary_at(frame, full, point);
    if xbar.is_zero() {
        return Err(PointError::RealAxis);
    }
    let inv = frame.inverse(&xbar)?;
    let alg = frame.algebra();
    let dbar = cauchy_riemann(f).eval(point);
    let thetabar = &f.partial(0).eval(point) - &alg.mul(&inv, &f.euler(full).eval(point));
    let gamma = gamma_spherical(f).eval(point);
    Ok(&dbar - &thetabar == -alg.mul(&inv, &gamma))
}

/// `J = sum_{i in A} J_i v_i`.
pub fn direction_element(
    frame: &Frame,
    a: IndexSet,
    j: &RationalSpherePoint,
) -> Result<Element, PointError> {
    if j.dim() != a.len() {
        return Err(PointError::WrongLength {
            expected: a.len(),
            found: j.dim(),
        });
    }
    let mut out = frame.algebra().zero();
    for (i, c) in a.iter().zip(j.coords()) {
        out.add_scaled(frame.unit(i), c);
    }
    Ok(out)
}

/// Substitutes `x_i = J_i β` for `i ∈ A`. The result lives on the frame
/// `(v_j for j ∉ A in increasing order, J)`, with `β` as the last variable.
pub fn restrict_to_slice(
    f: &Poly,
    a: IndexSet,
    j: &RationalSpherePoint,
) -> Result<Poly, PointError> {
    let frame = f.frame();
    let n = frame.n();
    if a.is_empty() || !a.within(n) {
        return Err(PointError::Precondition(format!(
            "{a} is not a nonempty subset of [{n}]"
        )));
    }
    let j_elem = direction_element(frame, a, j)?;
    let others = IndexSet::full(n).difference(a).to_vec();
    let mut units: Vec<Element> = others.iter().map(|&i| frame.unit(i).clone()).collect();
    units.push(j_elem);
    let restricted = Frame::new(frame.algebra_arc().clone(), units);
    let a_idx = a.to_vec();
    let mut out = Poly::zero(&restricted);
    for (m, c) in f.terms() {
        let mut e = vec![m.exponent(0)];
        e.extend(others.iter().map(|&i| m.exponent(i)));
        e.push(a_idx.iter().map(|&i| m.exponent(i)).sum());
        let factor: Rational = a_idx
            .iter()
            .zip(j.coords())
            .map(|(&i, ji)| num_traits::pow::pow(ji.clone(), m.exponent(i) as usize))
            .product();
        out.add_term(Monomial::new(e), &c.scale(&factor));
    }
    Ok(out)
}

/// `∂̄_J = ∂_0 + sum_{j ∉ A} v_j ∂_j + J ∂_β` on a restricted polynomial.
pub fn dbar_j(restricted: &Poly) -> Poly {
    cauchy_riemann(restricted)
}

/// `[J, a]_K = J_{k_1}(J_{k_2}(... (J_{k_m} a)))`.
pub fn nested_product(alg: &AlgebraTable, js: &[&Element], a: &Element) -> Element {
    js.iter().rev().fold(a.clone(), |acc, j| alg.mul(j, &acc))
}

/// A point with `x_{A_i} = β_i ω_i` for rational unit vectors `ω_i`, so every block norm
/// is the rational `|β_i|`.
pub fn block_point(frame: &Frame, p: &Partition, sampler: &mut Sampler) -> Vec<Rational> {
    let mut point = vec![Rational::zero(); frame.n() + 1];
    point[0] = sampler.rational();
    for &b in p.blocks() {
        let beta = sampler.nonzero_rational();
        let omega = rational_sphere_point(b.len(), sampler);
        for (i, c) in b.iter().zip(omega.coords()) {
            point[i] = &beta * c;
        }
    }
    point
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionReport {
    pub reconstructed: bool,
    pub antisymmetric: bool,
    /// `F_K` at the point, keyed by `K ⊆ [l]`.
    pub components: BTreeMap<IndexSet, Element>,
}

impl ReconstructionReport {
    pub fn passed(&self) -> bool {
        self.reconstructed && self.antisymmetric
    }
}

fn stem_values(
    comps: &BTreeMap<IndexSet, Poly>,
    betas: &[Rational],
    point: &[Rational],
) -> BTreeMap<IndexSet, Element> {
    comps
        .iter()
        .map(|(k, g)| {
            let factor: Rational = k.iter().map(|i| -(betas[i - 1].recip())).product();
            (*k, g.eval(point).scale(&factor))
        })
        .collect()
}

/// Checks `f(p) = sum_K [J, F_K(x_0, β)]_K` with `β_i = |x̲_{A_i}| > 0`, `J_i = x̲_{A_i}/β_i`
/// and `F_K = prod_{i ∈ K} (-β_i)^{-1} S^l_K(f)`, plus `F_K(x_0, β̄^h) = (-1)^{|K ∩ {h}|} F_K(x_0, β)`
/// at the points obtained by negating one block.
pub fn reconstruct_p_slice_at(
    p: &Partition,
    f: &Poly,
    point: &[Rational],
) -> Result<ReconstructionReport, PointError> {
    let frame = f.frame();
    check_point(frame, point)?;
    let k: Multiplicities = default_multiplicities(p);
    if script_s_p(&k, p, f).iter().any(|s| !s.is_zero()) {
        return Err(PointError::Precondition(
            "f is not in the kernel of the spherical triples".into(),
        ));
    }
    let alg = frame.algebra();
    let blocks = p.blocks();
    let mut betas = Vec::new();
    let mut js = Vec::new();
    for &b in blocks {
        let q: Rational = b.iter().map(|i| &point[i] * &point[i]).sum();
        let beta = rational_sqrt(&q)
            .filter(|r| !r.is_zero())
            .ok_or(PointError::BadBlockNorm(b))?;
        js.push(imaginary_at(frame, b, point).scale(&beta.recip()));
        betas.push(beta);
    }
    let comps = p_slice_components(p, f)?;
    let values = stem_values(&comps, &betas, point);
    let mut total = alg.zero();
    for (kset, fk) in &values {
        let chosen: Vec<&Element> = kset.iter().map(|i| &js[i - 1]).collect();
        total = &total + &nested_product(alg, &chosen, fk);
    }
    let reconstructed = total == f.eval(point);
    let mut antisymmetric = true;
    for (h, &b) in blocks.iter().enumerate() {
        let mut reflected = point.to_vec();
        for i in b.iter() {
            reflected[i] = -reflected[i].clone();
        }
        let mut signed = betas.clone();
        signed[h] = -signed[h].clone();
        let values_h = stem_values(&comps, &signed, &reflected);
        for (kset, fk) in &values {
            let expected = if kset.contains(h + 1) {
                -fk.clone()
            } else {
                fk.clone()
            };
            if values_h[kset] != expected {
                antisymmetric = false;
            }
        }
    }
    Ok(ReconstructionReport {
        reconstructed,
        antisymmetric,
        components: values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_algebra, AlgebraSpec};
    use crate::polynomial::slice_power_poly;
    use crate::scalar::{int, rat};
    use crate::spaces::block_variable;

    #[test]
    fn sphere_points() {
        let p = RationalSpherePoint::from_stereographic(&[rat(1, 2)]);
        assert_eq!(p.coords(), &[rat(3, 5), rat(4, 5)]);
        let mut s = Sampler::new(3);
        for dim in 1..=5 {
            let q = rational_sphere_point(dim, &mut s);
            assert!(RationalSpherePoint::new(q.coords().to_vec()).is_ok());
        }
        assert_eq!(
            RationalSpherePoint::new(vec![int(1), int(1)]),
            Err(PointError::NonUnit)
        );
    }

    #[test]
    fn difference_examples() {
        let frame = make_algebra(AlgebraSpec::Quaternions).1;
        let a = frame.unit(2).clone();
        let x1a = Poly::term(&frame, Monomial::var(4, 1), a.clone());
        let v1 = [int(0), int(1), int(0), int(0)];
        assert!(check_difference_at(&x1a, &v1).unwrap());
        let g = slice_power_poly(&frame, 3).right_scale(&a);
        assert!(check_difference_at(&g, &[int(2), rat(1, 3), int(-1), int(5)]).unwrap());
        assert!(check_difference_at(&Poly::constant(&frame, a), &v1).unwrap());
        assert_eq!(
            check_difference_at(&g, &[int(1), int(0), int(0), int(0)]),
            Err(PointError::RealAxis)
        );
    }

    #[test]
    fn restriction_example() {
        let frame = make_algebra(AlgebraSpec::Quaternions).1;
        let a = IndexSet::from_indices(&[2, 3]);
        let f2 = block_variable(&frame, a);
        let j = RationalSpherePoint::new(vec![rat(3, 5), rat(4, 5)]).unwrap();
        let r = restrict_to_slice(&f2, a, &j).unwrap();
        assert_eq!(r.frame().n(), 2);
        assert_eq!(
            r.frame().unit(2),
            &direction_element(&frame, a, &j).unwrap()
        );
        assert!(dbar_j(&r).is_zero());
        let g = Poly::term(&frame, Monomial::var(4, 2), frame.unit(2).clone());
        assert!(!dbar_j(&restrict_to_slice(&g, a, &j).unwrap()).is_zero());
    }

    #[test]
    fn reconstruction_examples() {
        let frame = make_algebra(AlgebraSpec::Quaternions).1;
        let mut s = Sampler::new(11);
        let whole = Partition::whole(3);
        let g = slice_power_poly(&frame, 3).right_scale(frame.unit(1));
        let p: Partition = "{1|2,3}".parse().unwrap();
        let f1 = &Poly::term(&frame, Monomial::var(4, 0), frame.algebra().one())
            + &Poly::term(&frame, Monomial::var(4, 1), frame.unit(1).clone());
        let f2 = block_variable(&frame, IndexSet::from_indices(&[2, 3]));
        let sum = &f1 + &f2;
        for _ in 0..5 {
            let pt = block_point(&frame, &whole, &mut s);
            assert!(reconstruct_p_slice_at(&whole, &g, &pt).unwrap().passed());
            let pt = block_point(&frame, &p, &mut s);
            assert!(reconstruct_p_slice_at(&p, &sum, &pt).unwrap().passed());
        }
        let x1 = Poly::term(&frame, Monomial::var(4, 1), frame.unit(2).clone());
        let pt = block_point(&frame, &whole, &mut s);
        assert!(matches!(
            reconstruct_p_slice_at(&whole, &x1, &pt),
            Err(PointError::Precondition(_))
        ));
    }

    #[test]
    fn nested_product_permutation_sign() {
        // three anticommuting units from disjoint blocks of the octonions
        let frame = make_algebra(AlgebraSpec::Octonions).1;
        let alg = frame.algebra();
        let mut s = Sampler::new(5);
        let blocks = [
            IndexSet::from_indices(&[1, 2]),
            IndexSet::from_indices(&[3, 4, 5]),
            IndexSet::from_indices(&[6, 7]),
        ];
        for _ in 0..20 {
            let js: Vec<Element> = blocks
                .iter()
                .map(|&b| {
                    direction_element(&frame, b, &rational_sphere_point(b.len(), &mut s)).unwrap()
                })
                .collect();
            let a = s.element(&frame);
            let base = nested_product(alg, &[&js[0], &js[1], &js[2]], &a);
            let swapped = nested_product(alg, &[&js[1], &js[0], &js[2]], &a);
            let cycled = nested_product(alg, &[&js[1], &js[2], &js[0]], &a);
            assert_eq!(swapped, -base.clone());
            assert_eq!(cycled, base);
        }
    }
}
