//! Decision procedures for sliceness, slice-regularity and the Dunkl-regular spaces
//! `F_A`, `F_{A,B}` and `F_P`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Element, Frame};
use crate::index_set::IndexSet;
use crate::operators::{
    casimir_a, dunkl_cr, dunkl_cr_a, dunkl_cr_p, dunkl_dirac, gamma_tilde_a, script_s_a,
    Multiplicities, ScriptS,
};
use crate::partition::{Partition, PartitionError};
use crate::polynomial::{
    slice_power_parts, slice_power_poly, slice_power_poly_in, xbar_power_times, Poly, RealPoly,
};
use crate::scalar::{binomial, factorial, int, rat, sign_power, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpacesError {
    #[error("multiplicities {k} are not admissible for {partition}")]
    Inadmissible { partition: String, k: String },
    #[error("expected {expected} multiplicities, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("partition of [{found}] used with a frame of {expected} units")]
    PartitionMismatch { expected: usize, found: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("the two partitions are equal")]
    SamePartitions,
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// Partition together with multiplicities and their admissibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSpec {
    pub partition: Partition,
    pub k: Multiplicities,
    pub admissible: bool,
}

impl PartitionSpec {
    pub fn new(partition: Partition, k: Multiplicities) -> Result<Self, SpacesError> {
        if k.n() != partition.n() {
            return Err(SpacesError::WrongLength {
                expected: partition.n(),
                found: k.n(),
            });
        }
        let admissible = is_admissible(&partition, &k);
        Ok(PartitionSpec {
            partition,
            k,
            admissible,
        })
    }

    /// Uses [`default_multiplicities`].
    pub fn with_default(partition: Partition) -> Self {
        let k = default_multiplicities(&partition);
        PartitionSpec {
            partition,
            k,
            admissible: true,
        }
    }

    pub fn require_admissible(&self) -> Result<(), SpacesError> {
        if self.admissible {
            Ok(())
        } else {
            Err(SpacesError::Inadmissible {
                partition: self.partition.to_string(),
                k: self.k.to_string(),
            })
        }
    }
}

/// `k_i = -1/2 + 1/(2|A_j|)` for `i` in `A_j`.
pub fn default_multiplicities(p: &Partition) -> Multiplicities {
    let mut k = vec![Rational::zero(); p.n()];
    for b in p.blocks() {
        let value = rat(-1, 2) + rat(1, 2 * b.len() as i64);
        for i in b.iter() {
            k[i - 1] = value.clone();
        }
    }
    Multiplicities::new(k)
}

/// Default multiplicities of the partition `{A}` plus singletons: `-1/2 + 1/(2|A|)` on `A`, zero
/// elsewhere. These are the ones under which the bracket form of `S_A` holds.
pub fn set_multiplicities(n: usize, a: IndexSet) -> Multiplicities {
    let value = rat(-1, 2) + rat(1, 2 * a.len().max(1) as i64);
    Multiplicities::new(
        (1..=n)
            .map(|i| {
                if a.contains(i) {
                    value.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect(),
    )
}

/// A second admissible choice: in every block of size at least two the first index gets 0
/// and the others `-1/2`.
pub fn alternate_multiplicities(p: &Partition) -> Multiplicities {
    let mut k = vec![Rational::zero(); p.n()];
    for b in p.blocks() {
        for (pos, i) in b.iter().enumerate() {
            k[i - 1] = if pos == 0 {
                Rational::zero()
            } else {
                rat(-1, 2)
            };
        }
    }
    Multiplicities::new(k)
}

/// `k_i <= 0`, `2 sum_{A} k_i = 1 - |A|` and at most one vanishing `k_i` per block.
pub fn is_admissible(p: &Partition, k: &Multiplicities) -> bool {
    if k.n() != p.n() {
        return false;
    }
    p.blocks().iter().all(|b| {
        let values: Vec<&Rational> = b.iter().map(|i| k.get(i)).collect();
        let sum: Rational = values.iter().copied().sum();
        values.iter().all(|v| **v <= Rational::zero())
            && int(2) * sum == int(1) - int(b.len() as i64)
            && values.iter().filter(|v| v.is_zero()).count() <= 1
    })
}

/// `{t_0, ..., t_tau}` fan to partition, see [`Partition::from_fan`].
pub fn partition_from_fan(t: &[usize]) -> Result<Partition, SpacesError> {
    Ok(Partition::from_fan(t)?)
}

/// A nonzero operator output explaining a negative verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub operator: String,
    pub output: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub space: String,
    pub member: bool,
    pub witnesses: Vec<Witness>,
}

impl Verdict {
    fn from_checks(space: String, checks: Vec<(String, Poly)>) -> Verdict {
        let witnesses: Vec<Witness> = checks
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(operator, output)| Witness { operator, output })
            .collect();
        Verdict {
            space,
            member: witnesses.is_empty(),
            witnesses,
        }
    }
}

fn whole_k(frame: &Frame) -> Multiplicities {
    default_multiplicities(&Partition::whole(frame.n()))
}

fn script_checks(a: IndexSet, s: ScriptS) -> Vec<(String, Poly)> {
    let set = a.to_string();
    vec![
        (format!("S{set}"), s.casimir),
        (format!("Sprime{set}"), s.prime),
        (format!("Sdprime{set}"), s.dprime),
    ]
}

/// `f` is slice iff the Casimir operator with `κ = (1-n)/2` annihilates it.
/// `Γ̃` is evaluated as an independent check; disagreement is an internal error.
pub fn is_slice_poly(f: &Poly) -> Result<Verdict, SpacesError> {
    let frame = f.frame();
    let full = IndexSet::full(frame.n());
    let k = whole_k(frame);
    let s = casimir_a(&k, full, f);
    let g = gamma_tilde_a(&k, full, f);
    if s.is_zero() != g.is_zero() {
        return Err(SpacesError::Internal(format!(
            "Casimir and reflected Casimir disagree on {f}"
        )));
    }
    Ok(Verdict::from_checks("slice".into(), vec![("S".into(), s)]))
}

/// `f` is slice-regular iff `D f = 0` and `S f = 0`.
pub fn is_slice_regular_poly(f: &Poly) -> Verdict {
    let frame = f.frame();
    let k = whole_k(frame);
    let full = IndexSet::full(frame.n());
    Verdict::from_checks(
        "slice-regular".into(),
        vec![
            ("D".into(), dunkl_cr(&k, f)),
            ("S".into(), casimir_a(&k, full, f)),
        ],
    )
}

/// `a_j = ∂_0^j f(0) / j!`, checked by reconstructing `sum x^j a_j`.
pub fn slice_regular_coefficients(f: &Poly) -> Result<Vec<Element>, SpacesError> {
    let frame = f.frame();
    let origin = vec![Rational::zero(); frame.n() + 1];
    let degree = f.degree().unwrap_or(0);
    let mut coeffs = Vec::new();
    let mut d = f.clone();
    for j in 0..=degree {
        coeffs.push(d.eval(&origin).scale(&(Rational::one() / factorial(j))));
        d = d.partial(0);
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Element::is_zero) {
        coeffs.pop();
    }
    let rebuilt = coeffs
        .iter()
        .enumerate()
        .fold(Poly::zero(frame), |acc, (j, a)| {
            &acc + &slice_power_poly(frame, j as u32).right_scale(a)
        });
    if rebuilt != *f {
        return Err(SpacesError::Precondition(
            "polynomial is not of the form sum x^j a_j".into(),
        ));
    }
    Ok(coeffs)
}

/// One summand `x_0^m x̲^l a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceTerm {
    pub m: u32,
    pub l: u32,
    pub a: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceDecomposition {
    pub terms: Vec<SliceTerm>,
}

impl SliceDecomposition {
    pub fn reconstruct(&self, frame: &Frame) -> Poly {
        let full = IndexSet::full(frame.n());
        let x0 = RealPoly::var(frame.n() + 1, 0);
        self.terms.iter().fold(Poly::zero(frame), |acc, t| {
            &acc + &xbar_power_times(frame, full, t.l, &t.a).real_mul(&x0.pow(t.m))
        })
    }

    /// Coefficients `a_{α,β}` of `f = sum x^α (x^c)^β a_{α,β}`, from
    /// `x_0 = (x + x^c)/2` and `x̲ = (x - x^c)/2`.
    pub fn conjugate_expansion(&self) -> BTreeMap<(u32, u32), Element> {
        let mut out: BTreeMap<(u32, u32), Element> = BTreeMap::new();
        for t in &self.terms {
            let scale = Rational::one()
                / Rational::from_integer(num_bigint::BigInt::from(1u64) << (t.m + t.l));
            for i in 0..=t.m {
                for j in 0..=t.l {
                    let c = &scale * binomial(t.m, i) * binomial(t.l, j) * sign_power(t.l - j);
                    let key = (i + j, (t.m - i) + (t.l - j));
                    let entry = out.entry(key).or_insert_with(|| Element::zero(t.a.dim()));
                    entry.add_scaled(&t.a, &c);
                }
            }
        }
        out.retain(|_, a| !a.is_zero());
        out
    }
}

/// `sum x^α (x^c)^β a_{α,β}` using `x^α (x^c)^β = p p' + s s' q + (s p' - p s') x̲`.
pub fn conjugate_expansion_poly(frame: &Frame, coeffs: &BTreeMap<(u32, u32), Element>) -> Poly {
    let n = frame.n();
    let full = IndexSet::full(n);
    let q = RealPoly::square_norm(n + 1, full);
    let mut out = Poly::zero(frame);
    for (&(alpha, beta), a) in coeffs {
        let (p, s) = slice_power_parts(n, alpha);
        let (p2, s2) = slice_power_parts(n, beta);
        let real = &(&p * &p2) + &(&(&s * &s2) * &q);
        let imag = &(&s * &p2) - &(&p * &s2);
        out = &out + &Poly::from_real(frame, &real, a);
        out = &out + &Poly::from_real(frame, &imag, a).imaginary_mul(full);
    }
    out
}

/// Writes a slice polynomial as `sum x_0^m x̲^l a`: for each `x_0`-degree the remaining
/// part `Q_l` satisfies `l! Q_l = (-x̲)^l D̲^l Q_l`, so `a = (-1)^l D̲^l Q_l / l!`.
pub fn slice_decompose(f: &Poly) -> Result<SliceDecomposition, SpacesError> {
    let frame = f.frame();
    let n = frame.n();
    let full = IndexSet::full(n);
    let k = whole_k(frame);
    let mut groups: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
    for (m, a) in f.terms() {
        let m0 = m.exponent(0);
        let l = m.degree() - m0;
        let reduced = m.with_exponent(0, 0);
        groups
            .entry((m0, l))
            .or_insert_with(|| Poly::zero(frame))
            .add_term(reduced, a);
    }
    let mut terms = Vec::new();
    for ((m0, l), q) in groups {
        let mut c = q.clone();
        for _ in 0..l {
            c = dunkl_dirac(&k, &c);
        }
        if c.degree().is_some_and(|d| d > 0) {
            return Err(SpacesError::Precondition(format!(
                "x_0-degree {m0} part is not a multiple of a power of the imaginary part"
            )));
        }
        let origin = vec![Rational::zero(); n + 1];
        let a = c.eval(&origin).scale(&(sign_power(l) / factorial(l)));
        if xbar_power_times(frame, full, l, &a) != q {
            return Err(SpacesError::Precondition(format!(
                "x_0-degree {m0} part is not a multiple of a power of the imaginary part"
            )));
        }
        if !a.is_zero() {
            terms.push(SliceTerm { m: m0, l, a });
        }
    }
    terms.sort_by(|s, t| (s.m + s.l, t.m).cmp(&(t.m + t.l, s.m)));
    let dec = SliceDecomposition { terms };
    if dec.reconstruct(frame) != *f {
        return Err(SpacesError::Internal(
            "slice decomposition does not reconstruct".into(),
        ));
    }
    Ok(dec)
}

fn check_frame_k(frame: &Frame, k: &Multiplicities) -> Result<(), SpacesError> {
    if k.n() != frame.n() {
        return Err(SpacesError::WrongLength {
            expected: frame.n(),
            found: k.n(),
        });
    }
    Ok(())
}

/// `f ∈ F_A` iff `D_A f = 0` and `𝒮_A f = 0`.
pub fn membership_a(k: &Multiplicities, a: IndexSet, f: &Poly) -> Result<Verdict, SpacesError> {
    membership_ab(k, a, a, f)
}

/// `f ∈ F_{A,B}` iff `D_A f = 0` and `𝒮_B f = 0`.
pub fn membership_ab(
    k: &Multiplicities,
    a: IndexSet,
    b: IndexSet,
    f: &Poly,
) -> Result<Verdict, SpacesError> {
    let frame = f.frame();
    check_frame_k(frame, k)?;
    let n = frame.n();
    for s in [a, b] {
        if !s.within(n) {
            return Err(SpacesError::Precondition(format!(
                "{s} is not a subset of [{n}]"
            )));
        }
    }
    let mut checks = vec![(format!("D{a}"), dunkl_cr_a(k, a, f))];
    checks.extend(script_checks(b, script_s_a(k, b, f)));
    let space = if a == b {
        format!("F_{a}")
    } else {
        format!("F_{a},{b}")
    };
    Ok(Verdict::from_checks(space, checks))
}

/// `f ∈ F_P` iff `D_P f = 0` and `𝒮_A f = 0` for every block `A`.
pub fn membership_p(spec: &PartitionSpec, f: &Poly) -> Result<Verdict, SpacesError> {
    spec.require_admissible()?;
    let frame = f.frame();
    check_frame_k(frame, &spec.k)?;
    if spec.partition.n() != frame.n() {
        return Err(SpacesError::PartitionMismatch {
            expected: frame.n(),
            found: spec.partition.n(),
        });
    }
    let mut checks = vec![("D_P".to_string(), dunkl_cr_p(&spec.k, &spec.partition, f))];
    for &b in spec.partition.blocks() {
        checks.extend(script_checks(b, script_s_a(&spec.k, b, f)));
    }
    Ok(Verdict::from_checks(
        format!("F_{}", spec.partition),
        checks,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub agree: bool,
    /// Index into the suite of the first disagreement.
    pub counterexample: Option<usize>,
    pub members: usize,
}

/// Compares `F_P` memberships under two admissible multiplicity choices.
pub fn multiplicity_independence(
    p: &Partition,
    k1: &Multiplicities,
    k2: &Multiplicities,
    suite: &[Poly],
) -> Result<IndependenceReport, SpacesError> {
    let s1 = PartitionSpec::new(p.clone(), k1.clone())?;
    let s2 = PartitionSpec::new(p.clone(), k2.clone())?;
    s1.require_admissible()?;
    s2.require_admissible()?;
    let mut members = 0;
    for (idx, f) in suite.iter().enumerate() {
        let v1 = membership_p(&s1, f)?.member;
        let v2 = membership_p(&s2, f)?.member;
        if v1 != v2 {
            return Ok(IndependenceReport {
                agree: false,
                counterexample: Some(idx),
                members,
            });
        }
        members += usize::from(v1);
    }
    Ok(IndependenceReport {
        agree: true,
        counterexample: None,
        members,
    })
}

/// A polynomial lying in exactly one of two spaces `F_P`, `F_P'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingWitness {
    pub block: IndexSet,
    pub poly: Poly,
    /// True when the witness lies in the first space and not in the second.
    pub in_first: bool,
}

/// `x_B = x_0 + x̲_B`.
pub fn block_variable(frame: &Frame, b: IndexSet) -> Poly {
    slice_power_poly_in(frame, b, 1)
}

/// Picks a block `A` of one partition that is not a block of the other and a block `B`
/// of the other meeting `A` (the largest such). If `A ⊄ B` then `x_B` lies only in the space
/// of `B`'s partition, otherwise `A ⊊ B` and `x_A` lies only in the space of `A`'s partition.
pub fn separating_witness(
    frame: &Frame,
    p: &Partition,
    p2: &Partition,
) -> Result<SeparatingWitness, SpacesError> {
    if p == p2 {
        return Err(SpacesError::SamePartitions);
    }
    for q in [p, p2] {
        if q.n() != frame.n() {
            return Err(SpacesError::PartitionMismatch {
                expected: frame.n(),
                found: q.n(),
            });
        }
    }
    // the choice depends only on the unordered pair, so swapping arguments flips `in_first`
    let unshared = |q: &Partition, r: &Partition| -> Vec<IndexSet> {
        q.blocks()
            .iter()
            .filter(|b| !r.blocks().contains(b))
            .copied()
            .collect()
    };
    // ties between equal-size blocks are broken by the set itself, so the key is total
    let key = |b: &IndexSet| {
        (
            b.len(),
            std::cmp::Reverse(b.min_index()),
            std::cmp::Reverse(*b),
        )
    };
    let a1 = unshared(p, p2).into_iter().max_by_key(key);
    let a2 = unshared(p2, p).into_iter().max_by_key(key);
    let (a, a_in_first) = match (a1, a2) {
        (Some(x), Some(y)) if key(&y) > key(&x) => (y, false),
        (Some(x), _) => (x, true),
        (None, Some(y)) => (y, false),
        (None, None) => return Err(SpacesError::SamePartitions),
    };
    let other = if a_in_first { p2 } else { p };
    let b = *other
        .blocks()
        .iter()
        .filter(|b| !b.intersection(a).is_empty())
        .max_by_key(|b| key(b))
        .expect("blocks cover [n]");
    let (block, in_a_side) = if !a.difference(b).is_empty() {
        (b, false)
    } else {
        (a, true)
    };
    let in_first = in_a_side == a_in_first;
    let poly = block_variable(frame, block);
    let m1 = membership_p(&PartitionSpec::with_default(p.clone()), &poly)?.member;
    let m2 = membership_p(&PartitionSpec::with_default(p2.clone()), &poly)?.member;
    if m1 != in_first || m2 == in_first {
        return Err(SpacesError::Internal(format!(
            "x_{block} does not separate {p} and {p2}"
        )));
    }
    Ok(SeparatingWitness {
        block,
        poly,
        in_first,
    })
}

/// Checks that membership is transported by relabeling: `f ∈ F_P` on the frame `B` iff
/// `f_σ ∈ F_{P_σ}` on the permuted frame `B_σ` with multiplicities `k_σ`.
pub fn permuted_equivalence(
    spec: &PartitionSpec,
    sigma: &[usize],
    f: &Poly,
) -> Result<bool, SpacesError> {
    let frame = f.frame();
    let n = frame.n();
    let mut sorted = sigma.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=n).collect::<Vec<_>>() {
        return Err(SpacesError::Precondition(
            "sigma is not a permutation of [n]".into(),
        ));
    }
    let frame_s = frame.permuted(sigma);
    let spec_s = PartitionSpec::new(spec.partition.pull_back(sigma), spec.k.permuted(sigma))?;
    let f_s = f.relabel(&frame_s, sigma);
    let before = membership_p(spec, f)?;
    let after = membership_p(&spec_s, &f_s)?;
    Ok(before.member == after.member)
}

/// Final-level functions `S^l_K(f)` of the recursion
/// `S^m_K = (x̲_{A_m}^{1_K(m)} S^{m-1}_{K∖{m}})°_{s,A_m}`, keyed by `K ⊆ [l]`.
/// The multiplied identity `x̲_{A_{m+1}} S^m_K = x̲_{A_{m+1}} S^{m+1}_K + S^{m+1}_{K∪{m+1}}`
/// is checked at every level.
pub fn p_slice_components(
    p: &Partition,
    f: &Poly,
) -> Result<BTreeMap<IndexSet, Poly>, SpacesError> {
    let frame = f.frame();
    if p.n() != frame.n() {
        return Err(SpacesError::PartitionMismatch {
            expected: frame.n(),
            found: p.n(),
        });
    }
    let mut level: BTreeMap<IndexSet, Poly> = BTreeMap::new();
    level.insert(IndexSet::empty(), f.clone());
    for (pos, &block) in p.blocks().iter().enumerate() {
        let m = pos + 1;
        let mut next = BTreeMap::new();
        for (k, g) in &level {
            let xg = g.imaginary_mul(block);
            let without = g.spherical_value(block).expect("blocks are nonempty");
            let with = xg.spherical_value(block).expect("blocks are nonempty");
            if xg != &without.imaginary_mul(block) + &with {
                return Err(SpacesError::Internal(format!(
                    "level identity fails at m = {m}"
                )));
            }
            next.insert(*k, without);
            next.insert(k.union(IndexSet::singleton(m)), with);
        }
        level = next;
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_algebra, AlgebraSpec};
    use crate::polynomial::{imaginary_poly, Monomial};

    fn h() -> Frame {
        make_algebra(AlgebraSpec::Quaternions).1
    }

    fn t(f: &Frame, e: &[u32], a: Element) -> Poly {
        Poly::term(f, Monomial::new(e.to_vec()), a)
    }

    #[test]
    fn admissibility() {
        let whole = Partition::whole(3);
        let k = default_multiplicities(&whole);
        assert_eq!(k, Multiplicities::new(vec![rat(-1, 3); 3]));
        assert!(is_admissible(&whole, &k));
        assert_eq!(
            default_multiplicities(&Partition::whole(1)),
            Multiplicities::zeros(1)
        );
        let bad = Multiplicities::new(vec![int(-1), int(0), int(0)]);
        assert!(!is_admissible(&whole, &bad));
        assert!(is_admissible(&whole, &alternate_multiplicities(&whole)));
        let p: Partition = "{1|2,3}".parse().unwrap();
        assert!(is_admissible(
            &p,
            &Multiplicities::new(vec![int(0), rat(-1, 4), rat(-1, 4)])
        ));
        assert!(is_admissible(
            &p,
            &Multiplicities::new(vec![int(0), int(0), rat(-1, 2)])
        ));
        assert!(!is_admissible(
            &p,
            &Multiplicities::new(vec![int(0), rat(1, 4), rat(-3, 4)])
        ));
    }

    #[test]
    fn slice_examples() {
        let f = h();
        let (a, b) = (f.unit(1).clone(), f.unit(3).clone());
        let full = IndexSet::full(3);
        let g = &xbar_power_times(&f, full, 1, &a).real_mul(&RealPoly::var(4, 0).pow(2))
            + &xbar_power_times(&f, full, 3, &b);
        assert!(is_slice_poly(&g).unwrap().member);
        let x1a = t(&f, &[0, 1, 0, 0], a.clone());
        let v = is_slice_poly(&x1a).unwrap();
        assert!(!v.member);
        assert!(!v.witnesses[0].output.is_zero());
        assert!(
            is_slice_poly(&Poly::constant(&f, a.clone()))
                .unwrap()
                .member
        );
    }

    #[test]
    fn slice_regular_examples() {
        let f = h();
        let a = f.unit(2).clone();
        let xa = imaginary_poly(&f, IndexSet::full(3)).right_scale(&a);
        assert!(is_slice_poly(&xa).unwrap().member);
        assert!(!is_slice_regular_poly(&xa).member);
        assert!(is_slice_regular_poly(&Poly::zero(&f)).member);
        let g = slice_power_poly(&f, 2).right_scale(&a);
        assert!(is_slice_regular_poly(&g).member);
        let coeffs = slice_regular_coefficients(&g).unwrap();
        assert_eq!(
            coeffs,
            vec![f.algebra().zero(), f.algebra().zero(), a.clone()]
        );
        let a0 = f.unit(1).clone();
        let g = &Poly::constant(&f, a0.clone()) + &slice_power_poly(&f, 1).right_scale(&a);
        assert_eq!(slice_regular_coefficients(&g).unwrap(), vec![a0, a.clone()]);
        assert!(slice_regular_coefficients(&xa).is_err());
    }

    #[test]
    fn slice_decomposition_examples() {
        let f = h();
        let a = f.unit(1).clone();
        let full = IndexSet::full(3);
        let g = xbar_power_times(&f, full, 2, &a);
        let d = slice_decompose(&g).unwrap();
        assert_eq!(
            d.terms,
            vec![SliceTerm {
                m: 0,
                l: 2,
                a: a.clone()
            }]
        );
        let g = t(&f, &[1, 0, 0, 0], a.clone());
        assert_eq!(
            slice_decompose(&g).unwrap().terms,
            vec![SliceTerm {
                m: 1,
                l: 0,
                a: a.clone()
            }]
        );
        let g = slice_power_poly(&f, 2).right_scale(&a);
        let d = slice_decompose(&g).unwrap();
        assert_eq!(
            d.terms,
            vec![
                SliceTerm {
                    m: 2,
                    l: 0,
                    a: a.clone()
                },
                SliceTerm {
                    m: 1,
                    l: 1,
                    a: a.scale(&int(2))
                },
                SliceTerm {
                    m: 0,
                    l: 2,
                    a: a.clone()
                },
            ]
        );
        let expansion = d.conjugate_expansion();
        assert_eq!(expansion.len(), 1);
        assert_eq!(expansion[&(2, 0)], a);
        assert_eq!(conjugate_expansion_poly(&f, &expansion), g);
        assert!(slice_decompose(&t(&f, &[0, 1, 0, 0], a)).is_err());
    }

    #[test]
    fn example_linear_memberships() {
        let f = h();
        let one = f.algebra().one();
        let k = Multiplicities::new(vec![int(0), rat(-1, 4), rat(-1, 4)]);
        let a = IndexSet::from_indices(&[2, 3]);
        let f1 = &t(&f, &[1, 0, 0, 0], one.clone()) + &t(&f, &[0, 1, 0, 0], f.unit(1).clone());
        let f2 = block_variable(&f, a);
        assert!(membership_a(&k, a, &f1).unwrap().member);
        assert!(membership_a(&k, a, &f2).unwrap().member);
        let g = t(&f, &[0, 0, 1, 0], f.unit(2).clone());
        let v = membership_a(&k, a, &g).unwrap();
        assert!(!v.member);
        assert_eq!(v.witnesses[0].operator, "D{2,3}");
        assert_eq!(
            v.witnesses[0].output,
            Poly::constant(&f, one.scale(&rat(-1, 2)))
        );
    }

    #[test]
    fn singleton_membership_is_monogenicity() {
        let f = h();
        let g = &t(&f, &[0, 1, 0, 0], f.unit(1).clone()) - &t(&f, &[0, 0, 1, 0], f.unit(2).clone());
        let k = Multiplicities::zeros(3);
        assert!(membership_a(&k, IndexSet::singleton(1), &g).unwrap().member);
    }

    #[test]
    fn separating_witnesses() {
        let f = h();
        let p = Partition::whole(3);
        let p2: Partition = "{1|2,3}".parse().unwrap();
        let w = separating_witness(&f, &p, &p2).unwrap();
        assert_eq!(w.block, IndexSet::from_indices(&[2, 3]));
        assert!(!w.in_first);
        let w2 = separating_witness(&f, &p2, &p).unwrap();
        assert_eq!(w2.block, w.block);
        assert!(w2.in_first);
        assert_eq!(
            separating_witness(&f, &p, &p),
            Err(SpacesError::SamePartitions)
        );
    }

    #[test]
    fn permuted_example() {
        let f = h();
        let one = f.algebra().one();
        let spec = PartitionSpec::new(
            "{1|2,3}".parse().unwrap(),
            Multiplicities::new(vec![int(0), rat(-1, 4), rat(-1, 4)]),
        )
        .unwrap();
        let f1 = &t(&f, &[1, 0, 0, 0], one.clone()) + &t(&f, &[0, 1, 0, 0], f.unit(1).clone());
        let f2 = block_variable(&f, IndexSet::from_indices(&[2, 3]));
        for g in [&f1, &f2] {
            assert!(permuted_equivalence(&spec, &[1, 2, 3], g).unwrap());
            assert!(permuted_equivalence(&spec, &[2, 1, 3], g).unwrap());
        }
    }

    #[test]
    fn p_slice_component_examples() {
        let f = h();
        let a = f.unit(1).clone();
        let whole = Partition::whole(3);
        let g = slice_power_poly(&f, 3).right_scale(&a);
        let comps = p_slice_components(&whole, &g).unwrap();
        assert_eq!(comps.len(), 2);
        let full = IndexSet::full(3);
        assert_eq!(comps[&IndexSet::empty()], g.spherical_value(full).unwrap());
        let p: Partition = "{1|2,3}".parse().unwrap();
        let f2 = block_variable(&f, IndexSet::from_indices(&[2, 3]));
        let comps = p_slice_components(&p, &f2).unwrap();
        assert_eq!(
            comps[&IndexSet::empty()],
            t(&f, &[1, 0, 0, 0], f.algebra().one())
        );
        // (x̲_{2,3} f_2)° = x̲_{2,3}^2 = -β^2
        let q23 = xbar_power_times(&f, IndexSet::from_indices(&[2, 3]), 2, &f.algebra().one());
        assert_eq!(comps[&IndexSet::singleton(2)], q23);
        assert!(comps[&IndexSet::singleton(1)].is_zero());
        let inv = t(&f, &[2, 2, 0, 4], a.clone());
        let comps = p_slice_components(&Partition::singletons(3), &inv).unwrap();
        assert_eq!(comps.values().filter(|c| !c.is_zero()).count(), 1);
        assert_eq!(comps[&IndexSet::empty()], inv);
    }
}
