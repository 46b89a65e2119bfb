//! Finite-dimensional real *-algebras with exact structure constants, and
//! hypercomplex frames inside them.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown algebra `{0}` (expected C, H, Hr, O or Cl(0,n))")]
    UnknownSpec(String),
    #[error("Cl(0,n) needs n >= 1")]
    ZeroClifford,
    #[error("Cl(0,{0}) is too large (n <= 8 supported)")]
    CliffordTooLarge(usize),
    #[error("element of dimension {found} used with an algebra of dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("element is not in the span of the frame")]
    OutsideFrame,
    #[error("element has zero norm")]
    ZeroNorm,
}

/// The algebras that can be built by [`make_algebra`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraSpec {
    Complex,
    Quaternions,
    ReducedQuaternions,
    Octonions,
    Clifford(usize),
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Complex => write!(f, "C"),
            AlgebraSpec::Quaternions => write!(f, "H"),
            AlgebraSpec::ReducedQuaternions => write!(f, "Hr"),
            AlgebraSpec::Octonions => write!(f, "O"),
            AlgebraSpec::Clifford(n) => write!(f, "Cl(0,{n})"),
        }
    }
}

impl FromStr for AlgebraSpec {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
        let lower = compact.to_ascii_lowercase();
        match lower.as_str() {
            "c" | "complex" => return Ok(AlgebraSpec::Complex),
            "h" | "quaternions" => return Ok(AlgebraSpec::Quaternions),
            "hr" | "reduced_quaternions_frame" | "reduced_quaternions" => {
                return Ok(AlgebraSpec::ReducedQuaternions)
            }
            "o" | "octonions" => return Ok(AlgebraSpec::Octonions),
            _ => {}
        }
        let inner = lower
            .strip_prefix("cl(0,")
            .or_else(|| lower.strip_prefix("clifford("))
            .and_then(|r| r.strip_suffix(')'));
        match inner.map(str::parse::<usize>) {
            Some(Ok(0)) => Err(AlgebraError::ZeroClifford),
            Some(Ok(n)) if n > 8 => Err(AlgebraError::CliffordTooLarge(n)),
            Some(Ok(n)) => Ok(AlgebraSpec::Clifford(n)),
            _ => Err(AlgebraError::UnknownSpec(t.to_string())),
        }
    }
}

/// Exact rational coordinate vector over an algebra basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    coords: Vec<Rational>,
}

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element {
            coords: vec![Rational::zero(); dim],
        }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut e = Element::zero(dim);
        e.coords[index] = Rational::one();
        e
    }

    pub fn real(dim: usize, value: Rational) -> Self {
        let mut e = Element::zero(dim);
        e.coords[0] = value;
        e
    }

    pub fn from_coords(coords: Vec<Rational>) -> Self {
        assert!(!coords.is_empty(), "element needs at least one coordinate");
        Element { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// True when only the unit coordinate may be nonzero.
    pub fn is_real(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn real_part(&self) -> &Rational {
        &self.coords[0]
    }

    pub fn scale(&self, r: &Rational) -> Element {
        if r.is_zero() {
            return Element::zero(self.dim());
        }
        Element {
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Element, r: &Rational) {
        check_dims(self.dim(), other.dim());
        if r.is_zero() {
            return;
        }
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a += b * r;
            }
        }
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

fn check_dims(a: usize, b: usize) {
    assert_eq!(a, b, "elements from algebras of different dimension");
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        check_dims(self.dim(), rhs.dim());
        Element {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        check_dims(self.dim(), rhs.dim());
        Element {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        check_dims(self.dim(), rhs.dim());
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        check_dims(self.dim(), rhs.dim());
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

type SparseVec = Vec<(usize, Rational)>;

/// Structure constants, basis names and a diagonal conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTable {
    name: String,
    basis_names: Vec<String>,
    /// `product[i * dim + j]` is `e_i e_j` as a sparse vector.
    product: Vec<SparseVec>,
    conj_signs: Vec<i8>,
}

impl AlgebraTable {
    /// Builds a table from raw data. No axioms are checked here; see [`AlgebraTable::validate`].
    pub fn from_parts(
        name: impl Into<String>,
        basis_names: Vec<String>,
        product: Vec<Vec<SparseVec>>,
        conj_signs: Vec<i8>,
    ) -> Self {
        let dim = basis_names.len();
        assert_eq!(product.len(), dim, "product table has wrong row count");
        assert_eq!(conj_signs.len(), dim, "conjugation table has wrong length");
        let mut flat = Vec::with_capacity(dim * dim);
        for row in product {
            assert_eq!(row.len(), dim, "product table has wrong column count");
            for entry in row {
                let mut cleaned: SparseVec =
                    entry.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                cleaned.sort_by_key(|(k, _)| *k);
                flat.push(cleaned);
            }
        }
        AlgebraTable {
            name: name.into(),
            basis_names,
            product: flat,
            conj_signs,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|b| b == name)
    }

    pub fn conj_signs(&self) -> &[i8] {
        &self.conj_signs
    }

    /// `e_i e_j` as stored.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.product[i * self.dim() + j]
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.dim(), i)
    }

    pub fn one(&self) -> Element {
        Element::basis(self.dim(), 0)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.dim())
    }

    pub fn real(&self, r: Rational) -> Element {
        Element::real(self.dim(), r)
    }

    pub fn try_mul(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        for x in [a, b] {
            if x.dim() != self.dim() {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.dim(),
                    found: x.dim(),
                });
            }
        }
        Ok(self.mul(a, b))
    }

    /// Bilinear product. Panics on a dimension mismatch (use [`AlgebraTable::try_mul`] to check).
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let d = self.dim();
        check_dims(a.dim(), d);
        check_dims(b.dim(), d);
        let mut out = Element::zero(d);
        for (i, ai) in a.support() {
            for (j, bj) in b.support() {
                let ab = ai * bj;
                for (k, c) in &self.product[i * d + j] {
                    out.coords[*k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn conjugate(&self, a: &Element) -> Element {
        check_dims(a.dim(), self.dim());
        Element {
            coords: a
                .coords
                .iter()
                .zip(&self.conj_signs)
                .map(|(c, &s)| if s < 0 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// `t(a) = a + a^c`.
    pub fn trace(&self, a: &Element) -> Element {
        a + &self.conjugate(a)
    }

    /// `n(a) = a a^c`.
    pub fn norm_form(&self, a: &Element) -> Element {
        self.mul(a, &self.conjugate(a))
    }

    /// `[a, b, c] = (ab)c - a(bc)`.
    pub fn associator(&self, a: &Element, b: &Element, c: &Element) -> Element {
        &self.mul(&self.mul(a, b), c) - &self.mul(a, &self.mul(b, c))
    }

    fn basis_associator(&self, i: usize, j: usize, k: usize) -> Element {
        self.associator(&self.basis(i), &self.basis(j), &self.basis(k))
    }

    /// Checks the table axioms exhaustively on the basis; returns one message per violation.
    pub fn validate(&self) -> Vec<String> {
        let d = self.dim();
        let mut failures = Vec::new();
        for j in 0..d {
            let ej = self.basis(j);
            if self.mul(&self.one(), &ej) != ej || self.mul(&ej, &self.one()) != ej {
                failures.push(format!("unit law fails for {}", self.basis_names[j]));
            }
        }
        if self.conj_signs.first() != Some(&1) {
            failures.push("conjugation does not fix the unit".to_string());
        }
        if self.conj_signs.iter().any(|&s| s != 1 && s != -1) {
            failures.push("conjugation signs must be +1 or -1".to_string());
        }
        for i in 0..d {
            let ei = self.basis(i);
            if self.conjugate(&self.conjugate(&ei)) != ei {
                failures.push(format!(
                    "conjugation is not an involution on {}",
                    self.basis_names[i]
                ));
            }
            for j in 0..d {
                let ej = self.basis(j);
                let lhs = self.conjugate(&self.mul(&ei, &ej));
                let rhs = self.mul(&self.conjugate(&ej), &self.conjugate(&ei));
                if lhs != rhs {
                    failures.push(format!(
                        "(e_{i} e_{j})^c != e_{j}^c e_{i}^c for {} {}",
                        self.basis_names[i], self.basis_names[j]
                    ));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let a = self.basis_associator(i, j, k);
                    let swapped_left = self.basis_associator(j, i, k);
                    let swapped_right = self.basis_associator(i, k, j);
                    if !(&a + &swapped_left).is_zero() || !(&a + &swapped_right).is_zero() {
                        failures.push(format!(
                            "associator not alternating on ({}, {}, {})",
                            self.basis_names[i], self.basis_names[j], self.basis_names[k]
                        ));
                    }
                }
            }
        }
        failures
    }

    /// True when every basis triple associates.
    pub fn is_associative_on_basis(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| self.basis_associator(i, j, k).is_zero())))
    }

    /// True when every basis product is `±` a single basis element.
    pub fn is_signed_monomial(&self) -> bool {
        self.product
            .iter()
            .all(|p| p.len() == 1 && (p[0].1 == Rational::one() || p[0].1 == -Rational::one()))
    }

    /// Text form `(r)*name + ...`; the zero element prints as `0`.
    pub fn format_element(&self, a: &Element) -> String {
        let parts: Vec<String> = a
            .support()
            .map(|(i, c)| format!("({c})*{}", self.basis_names[i]))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// A copy of this table with one structure constant negated; used as a negative control.
    pub fn sabotaged(&self, i: usize, j: usize) -> AlgebraTable {
        let mut t = self.clone();
        let d = t.dim();
        for entry in &mut t.product[i * d + j] {
            entry.1 = -entry.1.clone();
        }
        t.name = format!("{}(sabotaged)", self.name);
        t
    }
}

fn complex_table() -> AlgebraTable {
    let one = int(1);
    let product = vec![
        vec![vec![(0, one.clone())], vec![(1, one.clone())]],
        vec![vec![(1, one.clone())], vec![(0, -one)]],
    ];
    AlgebraTable::from_parts("C", vec!["1".into(), "i".into()], product, vec![1, -1])
}

/// Quaternion basis product `e_a e_b = sign * e_c` for indices in `0..4`.
fn quaternion_basis_product(a: usize, b: usize) -> (i64, usize) {
    match (a, b) {
        (0, x) | (x, 0) => (1, x),
        (x, y) if x == y => (-1, 0),
        _ => {
            let c = 6 - a - b;
            // (1,2)->3, (2,3)->1, (3,1)->2 are positive
            if (a, b) == (1, 2) || (a, b) == (2, 3) || (a, b) == (3, 1) {
                (1, c)
            } else {
                (-1, c)
            }
        }
    }
}

fn quaternion_table() -> AlgebraTable {
    let product = (0..4)
        .map(|a| {
            (0..4)
                .map(|b| {
                    let (s, c) = quaternion_basis_product(a, b);
                    vec![(c, int(s))]
                })
                .collect()
        })
        .collect();
    AlgebraTable::from_parts(
        "H",
        ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect(),
        product,
        vec![1, -1, -1, -1],
    )
}

/// Doubles a *-algebra: `(q1,q1')(q2,q2') = (q1 q2 - conj(q2') q1', q2' q1 + q1' conj(q2))`.
fn cayley_dickson(base: &AlgebraTable, name: &str, basis_names: Vec<String>) -> AlgebraTable {
    let d = base.dim();
    let split = |e: &Element| -> (Element, Element) {
        (
            Element::from_coords(e.coords[..d].to_vec()),
            Element::from_coords(e.coords[d..].to_vec()),
        )
    };
    let mut product = Vec::with_capacity(2 * d);
    for a in 0..2 * d {
        let mut row = Vec::with_capacity(2 * d);
        for b in 0..2 * d {
            let (p1, p1p) = split(&Element::basis(2 * d, a));
            let (p2, p2p) = split(&Element::basis(2 * d, b));
            let first = &base.mul(&p1, &p2) - &base.mul(&base.conjugate(&p2p), &p1p);
            let second = &base.mul(&p2p, &p1) + &base.mul(&p1p, &base.conjugate(&p2));
            let entry: SparseVec = first
                .coords
                .into_iter()
                .chain(second.coords)
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            row.push(entry);
        }
        product.push(row);
    }
    let conj_signs = base
        .conj_signs
        .iter()
        .copied()
        .chain(std::iter::repeat_n(-1, d))
        .collect();
    AlgebraTable::from_parts(name, basis_names, product, conj_signs)
}

fn octonion_table() -> AlgebraTable {
    let names = std::iter::once("1".to_string())
        .chain((1..8).map(|h| format!("e{h}")))
        .collect();
    cayley_dickson(&quaternion_table(), "O", names)
}

/// Name of the blade with bitmask `mask` in `Cl(0,n)`.
fn blade_name(mask: usize, n: usize) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let idx: Vec<String> = (0..n)
        .filter(|b| mask & (1 << b) != 0)
        .map(|b| (b + 1).to_string())
        .collect();
    if n > 9 {
        format!("e{}", idx.join("_"))
    } else {
        format!("e{}", idx.concat())
    }
}

/// Sign of `e_A e_B` for blades given as bitmasks, with `e_i^2 = -1`.
fn blade_sign(a: usize, b: usize) -> i64 {
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let low = bb.trailing_zeros();
        swaps += (a >> (low + 1)).count_ones();
        bb &= bb - 1;
    }
    swaps += (a & b).count_ones();
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn clifford_table(n: usize) -> AlgebraTable {
    let mut masks: Vec<usize> = (0..1usize << n).collect();
    masks.sort_by_key(|&m| {
        let bits: Vec<u32> = (0..n as u32).filter(|b| m & (1 << b) != 0).collect();
        (m.count_ones(), bits)
    });
    let mut position = vec![0usize; 1 << n];
    for (pos, &m) in masks.iter().enumerate() {
        position[m] = pos;
    }
    let product = masks
        .iter()
        .map(|&a| {
            masks
                .iter()
                .map(|&b| vec![(position[a ^ b], int(blade_sign(a, b)))])
                .collect()
        })
        .collect();
    let conj_signs = masks
        .iter()
        .map(|&m| {
            let g = m.count_ones();
            if (g * (g + 1) / 2) % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .collect();
    let names = masks.iter().map(|&m| blade_name(m, n)).collect();
    AlgebraTable::from_parts(format!("Cl(0,{n})"), names, product, conj_signs)
}

/// Outcome of [`Frame::verify`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrameReport {
    pub failures: Vec<String>,
}

impl FrameReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A hypercomplex basis `(1, v_1, ..., v_n)` inside an algebra.
#[derive(Clone, Debug)]
pub struct Frame {
    algebra: Arc<AlgebraTable>,
    units: Arc<Vec<Element>>,
    /// `left[i][j]` is `v_{i+1} e_j`.
    left: Arc<Vec<Vec<SparseVec>>>,
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra)
            && (Arc::ptr_eq(&self.units, &other.units) || self.units == other.units)
    }
}

impl Eq for Frame {}

impl Frame {
    /// Frame whose units are arbitrary elements of `algebra`. No axioms are checked.
    pub fn new(algebra: Arc<AlgebraTable>, units: Vec<Element>) -> Self {
        let d = algebra.dim();
        for u in &units {
            check_dims(u.dim(), d);
        }
        let left = units
            .iter()
            .map(|u| {
                (0..d)
                    .map(|j| {
                        algebra
                            .mul(u, &algebra.basis(j))
                            .support()
                            .map(|(k, c)| (k, c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Frame {
            algebra,
            units: Arc::new(units),
            left: Arc::new(left),
        }
    }

    /// Frame whose units are basis elements with the given indices.
    pub fn from_basis(algebra: Arc<AlgebraTable>, indices: &[usize]) -> Self {
        let units = indices.iter().map(|&i| algebra.basis(i)).collect();
        Frame::new(algebra, units)
    }

    pub fn algebra(&self) -> &AlgebraTable {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<AlgebraTable> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Number of imaginary units `n`.
    pub fn n(&self) -> usize {
        self.units.len()
    }

    pub fn units(&self) -> &[Element] {
        &self.units
    }

    /// `v_i` for `1 <= i <= n`.
    pub fn unit(&self, i: usize) -> &Element {
        &self.units[i - 1]
    }

    /// `v_i a`, using a precomputed left-multiplication table.
    pub fn left_unit(&self, i: usize, a: &Element) -> Element {
        let cols = &self.left[i - 1];
        let mut out = Element::zero(self.dim());
        for (j, aj) in a.support() {
            for (k, c) in &cols[j] {
                out.coords[*k] += aj * c;
            }
        }
        out
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.algebra.mul(a, b)
    }

    /// `x_0 + sum x_i v_i` for `coords = (x_0, ..., x_n)`.
    pub fn span_element(&self, coords: &[Rational]) -> Element {
        assert_eq!(
            coords.len(),
            self.n() + 1,
            "point has wrong number of coordinates"
        );
        let mut out = self.algebra.real(coords[0].clone());
        for (u, c) in self.units.iter().zip(&coords[1..]) {
            out.add_scaled(u, c);
        }
        out
    }

    /// Coordinates of `x` in the frame, if `x` lies in its span.
    pub fn span_coords(&self, x: &Element) -> Option<Vec<Rational>> {
        check_dims(x.dim(), self.dim());
        // Orthonormal units: the coordinate along v_i is -(v_i x)_0 for the imaginary part.
        let mut coords = vec![x.real_part().clone()];
        for i in 1..=self.n() {
            let p = self.left_unit(i, x);
            coords.push(-p.real_part().clone());
        }
        (self.span_element(&coords) == *x).then_some(coords)
    }

    /// Checks `t(v_i) = 0`, `n(v_i) = 1`, anticommutation and strong anticommutation.
    pub fn verify(&self) -> FrameReport {
        let alg = &self.algebra;
        let mut failures = Vec::new();
        for (idx, v) in self.units.iter().enumerate() {
            let i = idx + 1;
            if !alg.trace(v).is_zero() {
                failures.push(format!("t(v_{i}) != 0"));
            }
            if alg.norm_form(v) != alg.one() {
                failures.push(format!("n(v_{i}) != 1"));
            }
        }
        for i in 1..=self.n() {
            for j in 1..=self.n() {
                if i == j {
                    continue;
                }
                let vi = self.unit(i);
                let vj = self.unit(j);
                if i < j && !(&alg.mul(vi, vj) + &alg.mul(vj, vi)).is_zero() {
                    failures.push(format!("v_{i} v_{j} != -v_{j} v_{i}"));
                }
                if i < j {
                    for a in 0..alg.dim() {
                        let ea = alg.basis(a);
                        let lhs = alg.mul(vi, &alg.mul(vj, &ea));
                        let rhs = alg.mul(vj, &alg.mul(vi, &ea));
                        if !(&lhs + &rhs).is_zero() {
                            failures.push(format!(
                                "v_{i}(v_{j} {}) != -v_{j}(v_{i} {})",
                                alg.basis_names()[a],
                                alg.basis_names()[a]
                            ));
                        }
                    }
                }
            }
        }
        FrameReport { failures }
    }

    /// Frame with units `v'_i = v_{sigma(i)}`; `sigma` maps `1..=n` to itself (1-based values).
    pub fn permuted(&self, sigma: &[usize]) -> Frame {
        assert_eq!(sigma.len(), self.n(), "permutation has wrong length");
        let units = sigma.iter().map(|&s| self.unit(s).clone()).collect();
        Frame::new(self.algebra.clone(), units)
    }

    /// `x^k` for `x` in the span, via `x^2 = t(x) x - n(x)`.
    pub fn power(&self, x: &Element, k: u32) -> Result<Element, AlgebraError> {
        self.span_coords(x).ok_or(AlgebraError::OutsideFrame)?;
        let alg = &self.algebra;
        let t = alg.trace(x);
        let nx = alg.norm_form(x);
        if !t.is_real() || !nx.is_real() {
            return Err(AlgebraError::OutsideFrame);
        }
        let t = t.real_part().clone();
        let nx = nx.real_part().clone();
        // x^m = a + b x
        let (mut a, mut b) = (Rational::one(), Rational::zero());
        for _ in 0..k {
            // x^{m+1} = a x + b x^2 = -b n + (a + b t) x
            let next_a = -(&b * &nx);
            let next_b = &a + &b * &t;
            a = next_a;
            b = next_b;
        }
        let mut out = alg.real(a);
        out.add_scaled(x, &b);
        Ok(out)
    }

    /// `x^{-1} = x^c / n(x)` for `x` in the span.
    pub fn inverse(&self, x: &Element) -> Result<Element, AlgebraError> {
        self.span_coords(x).ok_or(AlgebraError::OutsideFrame)?;
        let alg = &self.algebra;
        let nx = alg.norm_form(x);
        if !nx.is_real() {
            return Err(AlgebraError::OutsideFrame);
        }
        let nx = nx.real_part().clone();
        if nx.is_zero() || nx.is_negative() {
            return Err(AlgebraError::ZeroNorm);
        }
        Ok(alg.conjugate(x).scale(&nx.recip()))
    }
}

/// Builds the table and standard frame for a spec.
pub fn make_algebra(spec: AlgebraSpec) -> (Arc<AlgebraTable>, Frame) {
    let (table, units): (AlgebraTable, Vec<usize>) = match spec {
        AlgebraSpec::Complex => (complex_table(), vec![1]),
        AlgebraSpec::Quaternions => (quaternion_table(), vec![1, 2, 3]),
        AlgebraSpec::ReducedQuaternions => {
            let mut t = quaternion_table();
            t.name = "Hr".to_string();
            (t, vec![1, 2])
        }
        AlgebraSpec::Octonions => (octonion_table(), (1..8).collect()),
        AlgebraSpec::Clifford(n) => (clifford_table(n), (1..=n).collect()),
    };
    let table = Arc::new(table);
    let frame = Frame::from_basis(table.clone(), &units);
    (table, frame)
}

/// Parses a spec string and builds it.
pub fn make_algebra_str(spec: &str) -> Result<(Arc<AlgebraTable>, Frame), AlgebraError> {
    Ok(make_algebra(spec.parse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn h() -> (Arc<AlgebraTable>, Frame) {
        make_algebra(AlgebraSpec::Quaternions)
    }

    fn el(alg: &AlgebraTable, terms: &[(&str, i64)]) -> Element {
        let mut e = alg.zero();
        for (name, c) in terms {
            e.add_scaled(&alg.basis(alg.basis_index(name).unwrap()), &int(*c));
        }
        e
    }

    #[test]
    fn spec_strings() {
        assert_eq!(
            "Cl(0,3)".parse::<AlgebraSpec>(),
            Ok(AlgebraSpec::Clifford(3))
        );
        assert_eq!(
            "clifford(2)".parse::<AlgebraSpec>(),
            Ok(AlgebraSpec::Clifford(2))
        );
        assert_eq!(
            "Hr".parse::<AlgebraSpec>(),
            Ok(AlgebraSpec::ReducedQuaternions)
        );
        assert_eq!(
            "Cl(0,0)".parse::<AlgebraSpec>(),
            Err(AlgebraError::ZeroClifford)
        );
        assert!(matches!(
            "Z".parse::<AlgebraSpec>(),
            Err(AlgebraError::UnknownSpec(_))
        ));
        assert_eq!(AlgebraSpec::Clifford(4).to_string(), "Cl(0,4)");
    }

    #[test]
    fn quaternion_products() {
        let (alg, _) = h();
        assert_eq!(
            alg.mul(&el(&alg, &[("i", 1)]), &el(&alg, &[("j", 1)])),
            el(&alg, &[("k", 1)])
        );
        assert_eq!(
            alg.mul(&el(&alg, &[("j", 1)]), &el(&alg, &[("i", 1)])),
            el(&alg, &[("k", -1)])
        );
        let a = el(&alg, &[("i", 1), ("j", 1)]);
        let b = el(&alg, &[("i", 1), ("j", -1)]);
        assert_eq!(alg.mul(&a, &b), el(&alg, &[("k", -2)]));
    }

    #[test]
    fn norms_powers_inverses() {
        let (alg, frame) = h();
        let x = el(&alg, &[("1", 3), ("j", 4)]);
        assert_eq!(alg.norm_form(&x), alg.real(int(25)));
        let inv = frame.inverse(&x).unwrap();
        let expected = el(&alg, &[("1", 3), ("j", -4)]).scale(&rat(1, 25));
        assert_eq!(inv, expected);
        assert_eq!(alg.mul(&x, &inv), alg.one());
        let y = el(&alg, &[("1", 1), ("i", 1)]);
        assert_eq!(frame.power(&y, 2).unwrap(), el(&alg, &[("i", 2)]));
        assert_eq!(frame.power(&y, 0).unwrap(), alg.one());
        assert_eq!(frame.power(frame.unit(1), 2).unwrap(), alg.real(int(-1)));
        assert_eq!(frame.inverse(frame.unit(1)).unwrap(), -frame.unit(1));
        assert_eq!(frame.inverse(&alg.one()).unwrap(), alg.one());
        assert_eq!(frame.inverse(&alg.zero()), Err(AlgebraError::ZeroNorm));
    }

    #[test]
    fn trace_and_norm_of_units() {
        let (alg, frame) = h();
        let v1 = frame.unit(1);
        assert_eq!(alg.conjugate(v1), -v1);
        assert!(alg.trace(v1).is_zero());
        assert_eq!(alg.norm_form(v1), alg.one());
        assert_eq!(alg.trace(&alg.one()), alg.real(int(2)));
    }

    #[test]
    fn power_outside_span_rejected() {
        let (alg, _) = make_algebra(AlgebraSpec::ReducedQuaternions);
        let frame = Frame::from_basis(alg.clone(), &[1, 2]);
        let k = el(&alg, &[("k", 1)]);
        assert_eq!(frame.power(&k, 2), Err(AlgebraError::OutsideFrame));
    }

    #[test]
    fn octonions_are_alternative_not_associative() {
        let (alg, frame) = make_algebra(AlgebraSpec::Octonions);
        assert!(alg.validate().is_empty());
        assert!(!alg.is_associative_on_basis());
        let a = alg.associator(frame.unit(1), frame.unit(2), frame.unit(4));
        assert!(!a.is_zero());
        assert!(frame.verify().passed());
        // v1 v2 = v3 in the doubled basis
        assert_eq!(alg.mul(frame.unit(1), frame.unit(2)), frame.unit(3).clone());
    }

    #[test]
    fn clifford_blades() {
        let (alg, frame) = make_algebra(AlgebraSpec::Clifford(3));
        assert_eq!(alg.basis_names()[..5], ["1", "e1", "e2", "e3", "e12"]);
        let e12 = alg.basis(alg.basis_index("e12").unwrap());
        let e3 = alg.basis(alg.basis_index("e3").unwrap());
        let e123 = alg.basis(alg.basis_index("e123").unwrap());
        assert_eq!(alg.mul(&e12, &e3), e123);
        assert!(alg.validate().is_empty());
        assert!(alg.is_associative_on_basis());
        assert!(alg.is_signed_monomial());
        assert!(frame.verify().passed());
        // e12 e12 = -1, conjugation of a bivector is -1
        assert_eq!(alg.mul(&e12, &e12), alg.real(int(-1)));
        assert_eq!(alg.conjugate(&e12), -&e12);
    }

    #[test]
    fn frame_with_unit_fails() {
        let (alg, _) = h();
        let frame = Frame::from_basis(alg, &[1, 0]);
        let report = frame.verify();
        assert!(report.failures.iter().any(|f| f.contains("t(v_2)")));
    }

    #[test]
    fn sabotaged_table_is_caught() {
        let (alg, _) = h();
        assert!(!alg.sabotaged(1, 2).validate().is_empty());
    }

    #[test]
    fn span_coordinates_round_trip() {
        let (_, frame) = make_algebra(AlgebraSpec::Octonions);
        let coords: Vec<Rational> = (0..8).map(|i| rat(i - 3, 2)).collect();
        let x = frame.span_element(&coords);
        assert_eq!(frame.span_coords(&x), Some(coords));
    }

    #[test]
    fn format_elements() {
        let (alg, _) = make_algebra(AlgebraSpec::Clifford(2));
        let mut e = alg.real(rat(1, 2));
        e.add_scaled(&alg.basis(3), &int(-1));
        assert_eq!(alg.format_element(&e), "(1/2)*1 + (-1)*e12");
        assert_eq!(alg.format_element(&alg.zero()), "0");
    }
}
