//! Sparse polynomials in `x_0, ..., x_n` with algebra-valued coefficients
//! written to the right of real monomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Element, Frame};
use crate::index_set::IndexSet;
use crate::scalar::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live over different frames")]
    FrameMismatch,
    #[error("variable index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("polynomial is not divisible by x{0}")]
    NotDivisible(usize),
    #[error("the index set must be nonempty")]
    EmptySet,
}

/// Exponent vector `(e_0, ..., e_n)`, ordered by total degree and then with
/// higher powers of earlier variables first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] += 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Degree in the variables of `A` (indices `1..=n`).
    pub fn degree_in(&self, a: IndexSet) -> u32 {
        a.iter().map(|i| self.0[i]).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }

    /// Value at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::one();
        for (x, &e) in point.iter().zip(&self.0) {
            if e > 0 {
                acc *= num_traits::pow(x.clone(), e as usize);
            }
        }
        acc
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Real-coefficient polynomial in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl RealPoly {
    pub fn zero(nvars: usize) -> Self {
        RealPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = RealPoly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        RealPoly::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = RealPoly::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Rational::one());
        p
    }

    /// `q_A = sum_{i in A} x_i^2`.
    pub fn square_norm(nvars: usize, a: IndexSet) -> Self {
        let mut p = RealPoly::zero(nvars);
        for i in a.iter() {
            let mut m = Monomial::one(nvars);
            m.0[i] = 2;
            p.add_term(m, Rational::one());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        assert_eq!(
            m.nvars(),
            self.nvars,
            "monomial has wrong number of variables"
        );
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> RealPoly {
        let mut out = RealPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * r);
        }
        out
    }

    pub fn pow(&self, k: u32) -> RealPoly {
        (0..k).fold(RealPoly::one(self.nvars), |acc, _| &acc * self)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms.iter().map(|(m, c)| m.eval(point) * c).sum()
    }
}

impl Add for &RealPoly {
    type Output = RealPoly;
    fn add(self, rhs: &RealPoly) -> RealPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RealPoly {
    type Output = RealPoly;
    fn sub(self, rhs: &RealPoly) -> RealPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &RealPoly {
    type Output = RealPoly;
    fn mul(self, rhs: &RealPoly) -> RealPoly {
        let mut out = RealPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// `f = sum x^alpha a_alpha` over a frame.
#[derive(Clone, Debug)]
pub struct Poly {
    frame: Frame,
    terms: BTreeMap<Monomial, Element>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.frame == other.frame && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(frame: &Frame) -> Self {
        Poly {
            frame: frame.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(frame: &Frame, a: Element) -> Self {
        Poly::term(frame, Monomial::one(frame.n() + 1), a)
    }

    pub fn term(frame: &Frame, m: Monomial, a: Element) -> Self {
        let mut p = Poly::zero(frame);
        p.add_term(m, &a);
        p
    }

    /// `x_i` with coefficient 1.
    pub fn var(frame: &Frame, i: usize) -> Self {
        Poly::term(
            frame,
            Monomial::var(frame.n() + 1, i),
            frame.algebra().one(),
        )
    }

    /// `p * a` for a real polynomial `p`.
    pub fn from_real(frame: &Frame, p: &RealPoly, a: &Element) -> Self {
        assert_eq!(
            p.nvars(),
            frame.n() + 1,
            "real polynomial has wrong number of variables"
        );
        let mut out = Poly::zero(frame);
        for (m, c) in p.terms() {
            out.add_term(m.clone(), &a.scale(c));
        }
        out
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Number of variables `n + 1`.
    pub fn nvars(&self) -> usize {
        self.frame.n() + 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Element)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Element> {
        self.terms.get(m)
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, a: &Element) {
        if a.is_zero() {
            return;
        }
        assert_eq!(
            m.nvars(),
            self.nvars(),
            "monomial has wrong number of variables"
        );
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(a.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += a;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn map_terms(&self, f: impl Fn(&Monomial, &Element) -> Option<(Monomial, Element)>) -> Poly {
        let mut out = Poly::zero(&self.frame);
        for (m, a) in &self.terms {
            if let Some((m2, a2)) = f(m, a) {
                out.add_term(m2, &a2);
            }
        }
        out
    }

    pub fn same_frame(&self, other: &Poly) -> Result<(), PolyError> {
        if self.frame == other.frame {
            Ok(())
        } else {
            Err(PolyError::FrameMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_frame(other)?;
        let mut out = self.clone();
        for (m, a) in &other.terms {
            out.add_term(m.clone(), a);
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> Poly {
        self.map_terms(|m, a| Some((m.clone(), a.scale(r))))
    }

    /// `v f`: every coefficient multiplied on the left by `v`.
    pub fn left_scale(&self, v: &Element) -> Poly {
        let alg = self.frame.algebra();
        self.map_terms(|m, a| Some((m.clone(), alg.mul(v, a))))
    }

    /// `f v`: every coefficient multiplied on the right by `v`.
    pub fn right_scale(&self, v: &Element) -> Poly {
        let alg = self.frame.algebra();
        self.map_terms(|m, a| Some((m.clone(), alg.mul(a, v))))
    }

    /// `v_i f`.
    pub fn left_unit(&self, i: usize) -> Poly {
        self.check_imaginary_index(i);
        self.map_terms(|m, a| Some((m.clone(), self.frame.left_unit(i, a))))
    }

    /// `x_i f`.
    pub fn mul_var(&self, i: usize) -> Poly {
        self.check_index(i);
        self.map_terms(|m, a| {
            let mut m2 = m.clone();
            m2.0[i] += 1;
            Some((m2, a.clone()))
        })
    }

    /// `p f` for a real polynomial `p`.
    pub fn real_mul(&self, p: &RealPoly) -> Poly {
        assert_eq!(
            p.nvars(),
            self.nvars(),
            "real polynomial has wrong number of variables"
        );
        let mut out = Poly::zero(&self.frame);
        for (mp, c) in p.terms() {
            for (m, a) in &self.terms {
                out.add_term(mp.mul(m), &a.scale(c));
            }
        }
        out
    }

    fn check_index(&self, i: usize) {
        assert!(
            i < self.nvars(),
            "variable index {i} out of range for n = {}",
            self.frame.n()
        );
    }

    fn check_imaginary_index(&self, i: usize) {
        assert!(
            (1..self.nvars()).contains(&i),
            "imaginary index {i} out of range for n = {}",
            self.frame.n()
        );
    }

    fn check_set(&self, a: IndexSet) {
        assert!(
            a.within(self.frame.n()),
            "index set {a} not contained in [{}]",
            self.frame.n()
        );
    }

    /// `∂f/∂x_i`, `0 <= i <= n`.
    pub fn partial(&self, i: usize) -> Poly {
        self.check_index(i);
        self.map_terms(|m, a| {
            let e = m.0[i];
            (e > 0).then(|| (m.with_exponent(i, e - 1), a.scale(&int(e as i64))))
        })
    }

    /// `(r_i f)(x) = f(x_1, ..., -x_i, ..., x_n)`.
    pub fn reflect(&self, i: usize) -> Poly {
        self.check_imaginary_index(i);
        self.map_terms(|m, a| Some((m.clone(), if m.0[i] % 2 == 1 { -a } else { a.clone() })))
    }

    /// Composition of `r_i` over `i in A`.
    pub fn reflect_set(&self, a: IndexSet) -> Poly {
        self.check_set(a);
        self.map_terms(|m, c| {
            Some((
                m.clone(),
                if m.degree_in(a) % 2 == 1 {
                    -c
                } else {
                    c.clone()
                },
            ))
        })
    }

    /// `E_A f = sum_{i in A} x_i ∂_i f`.
    pub fn euler(&self, a: IndexSet) -> Poly {
        self.check_set(a);
        self.map_terms(|m, c| Some((m.clone(), c.scale(&int(m.degree_in(a) as i64)))))
    }

    /// Exact quotient `f / x_i`.
    pub fn divide_by_xi(&self, i: usize) -> Result<Poly, PolyError> {
        if i >= self.nvars() {
            return Err(PolyError::IndexOutOfRange {
                index: i,
                n: self.frame.n(),
            });
        }
        if self.terms.keys().any(|m| m.0[i] == 0) {
            return Err(PolyError::NotDivisible(i));
        }
        Ok(self.map_terms(|m, a| Some((m.with_exponent(i, m.0[i] - 1), a.clone()))))
    }

    /// `f(point)` for `point = (x_0, ..., x_n)`.
    pub fn eval(&self, point: &[Rational]) -> Element {
        assert_eq!(
            point.len(),
            self.nvars(),
            "point has wrong number of coordinates"
        );
        let mut out = self.frame.algebra().zero();
        for (m, a) in &self.terms {
            out.add_scaled(a, &m.eval(point));
        }
        out
    }

    /// `x̲_A f = sum_{i in A} x_i (v_i f)`.
    pub fn imaginary_mul(&self, a: IndexSet) -> Poly {
        self.check_set(a);
        let mut out = Poly::zero(&self.frame);
        for i in a.iter() {
            for (m, c) in &self.terms {
                let mut m2 = m.clone();
                m2.0[i] += 1;
                out.add_term(m2, &self.frame.left_unit(i, c));
            }
        }
        out
    }

    /// `½ (f + r_A f)`: the terms of even total degree in the variables of `A`.
    pub fn spherical_value(&self, a: IndexSet) -> Result<Poly, PolyError> {
        if a.is_empty() {
            return Err(PolyError::EmptySet);
        }
        self.check_set(a);
        Ok(self.map_terms(|m, c| (m.degree_in(a) % 2 == 0).then(|| (m.clone(), c.clone()))))
    }

    /// `½ (x̲_A f + r_A(x̲_A f))`.
    pub fn imag_weighted_value(&self, a: IndexSet) -> Result<Poly, PolyError> {
        self.imaginary_mul(a).spherical_value(a)
    }

    /// Homogeneous parts by increasing total degree (zero parts omitted).
    pub fn homogeneous_components(&self) -> Vec<Poly> {
        let mut parts: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, a) in &self.terms {
            parts
                .entry(m.degree())
                .or_insert_with(|| Poly::zero(&self.frame))
                .add_term(m.clone(), a);
        }
        parts.into_values().collect()
    }

    /// Moves the polynomial to another frame with the same number of variables,
    /// relabeling exponents by `e'_i = e_{sigma(i)}` for `i >= 1` (`sigma` 1-based).
    pub fn relabel(&self, frame: &Frame, sigma: &[usize]) -> Poly {
        assert_eq!(frame.n(), self.frame.n(), "frames differ in dimension");
        assert_eq!(sigma.len(), self.frame.n(), "permutation has wrong length");
        assert_eq!(
            frame.dim(),
            self.frame.dim(),
            "frames live in different algebras"
        );
        let mut out = Poly::zero(frame);
        for (m, a) in &self.terms {
            let mut e = vec![m.0[0]];
            e.extend(sigma.iter().map(|&s| m.0[s]));
            out.add_term(Monomial(e), a);
        }
        out
    }

    /// Same terms, viewed over another frame of the same shape.
    pub fn with_frame(&self, frame: &Frame) -> Poly {
        assert_eq!(frame.n(), self.frame.n(), "frames differ in dimension");
        assert_eq!(
            frame.dim(),
            self.frame.dim(),
            "frames live in different algebras"
        );
        Poly {
            frame: frame.clone(),
            terms: self.terms.clone(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs)
            .expect("polynomials over different frames")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.same_frame(rhs)
            .expect("polynomials over different frames");
        let mut out = self.clone();
        for (m, a) in &rhs.terms {
            out.add_term(m.clone(), &-a);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_terms(|m, a| Some((m.clone(), -a)))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Canonical text: `(r)*name*x0^2*x1` for single-coordinate coefficients,
/// `((r)*1 + (s)*i)*x1` otherwise; the zero polynomial prints as `0`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let alg = self.frame.algebra();
        for (pos, (m, a)) in self.terms.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            let support: Vec<_> = a.support().collect();
            if support.len() == 1 {
                let (i, c) = support[0];
                write!(f, "({c})*{}", alg.basis_names()[i])?;
            } else {
                write!(f, "({})", alg.format_element(a))?;
            }
            if m.degree() > 0 {
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

/// `x̲_A = sum_{i in A} x_i v_i`.
pub fn imaginary_poly(frame: &Frame, a: IndexSet) -> Poly {
    Poly::constant(frame, frame.algebra().one()).imaginary_mul(a)
}

/// Real polynomials `(p_k, s_k)` with `x^k = p_k + s_k x̲`, where `x = x_0 + x̲`.
pub fn slice_power_parts(n: usize, k: u32) -> (RealPoly, RealPoly) {
    slice_power_parts_in(n, IndexSet::full(n), k)
}

/// Same as [`slice_power_parts`] for `x_A = x_0 + x̲_A`, using `x_A^2 = 2 x_0 x_A - (x_0^2 + q_A)`.
pub fn slice_power_parts_in(n: usize, a: IndexSet, k: u32) -> (RealPoly, RealPoly) {
    let nvars = n + 1;
    let x0 = RealPoly::var(nvars, 0);
    let norm = &(&x0 * &x0) + &RealPoly::square_norm(nvars, a);
    let two_x0 = x0.scale(&int(2));
    let (mut p_prev, mut s_prev) = (RealPoly::zero(nvars), RealPoly::zero(nvars));
    let (mut p, mut s) = (RealPoly::one(nvars), RealPoly::zero(nvars));
    for step in 0..k {
        let (p_next, s_next) = if step == 0 {
            (x0.clone(), RealPoly::one(nvars))
        } else {
            (
                &(&two_x0 * &p) - &(&norm * &p_prev),
                &(&two_x0 * &s) - &(&norm * &s_prev),
            )
        };
        p_prev = std::mem::replace(&mut p, p_next);
        s_prev = std::mem::replace(&mut s, s_next);
    }
    (p, s)
}

/// `x^k` as a polynomial with coefficient 1.
pub fn slice_power_poly(frame: &Frame, k: u32) -> Poly {
    slice_power_poly_in(frame, IndexSet::full(frame.n()), k)
}

/// `(x_0 + x̲_A)^k`.
pub fn slice_power_poly_in(frame: &Frame, a: IndexSet, k: u32) -> Poly {
    let (p, s) = slice_power_parts_in(frame.n(), a, k);
    let one = frame.algebra().one();
    &Poly::from_real(frame, &p, &one) + &imaginary_poly(frame, a).real_mul(&s)
}

/// `x̲_A^l a` from the closed forms `x̲_A^{2m} = (-q_A)^m`, `x̲_A^{2m+1} = (-q_A)^m x̲_A`.
pub fn xbar_power_times(frame: &Frame, a_set: IndexSet, l: u32, a: &Element) -> Poly {
    let nvars = frame.n() + 1;
    let minus_q = RealPoly::square_norm(nvars, a_set).scale(&int(-1));
    let even = minus_q.pow(l / 2);
    let base = Poly::constant(frame, a.clone());
    let base = if l % 2 == 1 {
        base.imaginary_mul(a_set)
    } else {
        base
    };
    base.real_mul(&even)
}
