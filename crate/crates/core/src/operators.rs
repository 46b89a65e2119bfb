//! Differential and differential-difference operators acting on [`Poly`].
//!
//! Every operator is a left operator: "`v_i g`" means left multiplication of each
//! coefficient of `g` by `v_i`, and nested products are evaluated exactly as written.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::index_set::IndexSet;
use crate::partition::Partition;
use crate::polynomial::{Poly, PolyError};
use crate::scalar::{int, parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("expected {expected} multiplicities, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("invalid multiplicity `{0}`")]
    BadMultiplicity(String),
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("operator `{0}` needs a partition")]
    MissingPartition(String),
    #[error("index set {set} not contained in [{n}]")]
    IndexOutOfRange { set: IndexSet, n: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Dunkl multiplicities `(k_1, ..., k_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiplicities(Vec<Rational>);

impl Multiplicities {
    pub fn new(k: Vec<Rational>) -> Self {
        Multiplicities(k)
    }

    pub fn zeros(n: usize) -> Self {
        Multiplicities(vec![Rational::zero(); n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `k_i`, `1 <= i <= n`.
    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    /// `κ = sum k_i`.
    pub fn kappa(&self) -> Rational {
        self.0.iter().sum()
    }

    /// `γ = n/2 + κ`.
    pub fn gamma(&self) -> Rational {
        rat(self.n() as i64, 2) + self.kappa()
    }

    /// `γ_A = |A|/2 + sum_{i in A} k_i`.
    pub fn gamma_a(&self, a: IndexSet) -> Rational {
        rat(a.len() as i64, 2) + a.iter().map(|i| self.get(i)).sum::<Rational>()
    }

    /// `(k_{sigma(1)}, ..., k_{sigma(n)})`.
    pub fn permuted(&self, sigma: &[usize]) -> Multiplicities {
        Multiplicities(sigma.iter().map(|&s| self.get(s).clone()).collect())
    }

    pub fn check_len(&self, n: usize) -> Result<(), OperatorError> {
        if self.n() == n {
            Ok(())
        } else {
            Err(OperatorError::WrongLength {
                expected: n,
                found: self.n(),
            })
        }
    }
}

impl fmt::Display for Multiplicities {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", items.join(","))
    }
}

/// Parses `-1/3,-1/3,-1/3`.
impl FromStr for Multiplicities {
    type Err = OperatorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Multiplicities(Vec::new()));
        }
        s.split(',')
            .map(|part| {
                parse_rational(part)
                    .ok_or_else(|| OperatorError::BadMultiplicity(part.trim().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Multiplicities)
    }
}

fn check_k(k: &Multiplicities, f: &Poly) {
    assert_eq!(
        k.n(),
        f.frame().n(),
        "multiplicities do not match the frame"
    );
}

fn full(f: &Poly) -> IndexSet {
    IndexSet::full(f.frame().n())
}

fn half() -> Rational {
    rat(1, 2)
}

/// `∂̄ f = ∂_0 f + sum v_i ∂_i f`.
pub fn cauchy_riemann(f: &Poly) -> Poly {
    let mut out = f.partial(0);
    for i in 1..=f.frame().n() {
        out = &out + &f.partial(i).left_unit(i);
    }
    out
}

/// `∂ f = ∂_0 f - sum v_i ∂_i f`.
pub fn conj_cauchy_riemann(f: &Poly) -> Poly {
    let mut out = f.partial(0);
    for i in 1..=f.frame().n() {
        out = &out - &f.partial(i).left_unit(i);
    }
    out
}

/// `sum_{i=0}^n ∂_i^2 f`.
pub fn laplacian(f: &Poly) -> Poly {
    (0..=f.frame().n()).fold(Poly::zero(f.frame()), |acc, i| {
        &acc + &f.partial(i).partial(i)
    })
}

/// `L_ij f = x_i ∂_j f - x_j ∂_i f`.
pub fn angular(f: &Poly, i: usize, j: usize) -> Poly {
    &f.partial(j).mul_var(i) - &f.partial(i).mul_var(j)
}

/// `Γ_A f = -sum_{i<j in A} v_i(v_j(L_ij f))`.
pub fn gamma_spherical_a(a: IndexSet, f: &Poly) -> Poly {
    let idx = a.to_vec();
    let mut out = Poly::zero(f.frame());
    for (p, &i) in idx.iter().enumerate() {
        for &j in &idx[p + 1..] {
            out = &out - &angular(f, i, j).left_unit(j).left_unit(i);
        }
    }
    out
}

/// Spherical Dirac operator `Γ f = -sum_{i<j} v_i(v_j(L_ij f))`.
pub fn gamma_spherical(f: &Poly) -> Poly {
    gamma_spherical_a(full(f), f)
}

/// `x̲ ∂_0 f - E f`.
pub fn thetabar_mult(f: &Poly) -> Poly {
    let a = full(f);
    &f.partial(0).imaginary_mul(a) - &f.euler(a)
}

/// `x̲ ∂_0 f + E f`.
pub fn theta_mult(f: &Poly) -> Poly {
    let a = full(f);
    &f.partial(0).imaginary_mul(a) + &f.euler(a)
}

/// Dunkl operator `T_i f = ∂_i f + k_i (f - r_i f) / x_i`.
pub fn dunkl_t(k: &Multiplicities, i: usize, f: &Poly) -> Poly {
    check_k(k, f);
    let d = f.partial(i);
    let ki = k.get(i);
    if ki.is_zero() {
        return d;
    }
    let diff = f - &f.reflect(i);
    let quotient = diff
        .divide_by_xi(i)
        .expect("f - r_i f is odd in x_i, hence divisible by x_i");
    &d + &quotient.scale(ki)
}

/// `D̲_A f = sum_{i in A} v_i T_i f`.
pub fn dunkl_dirac_a(k: &Multiplicities, a: IndexSet, f: &Poly) -> Poly {
    a.iter().fold(Poly::zero(f.frame()), |acc, i| {
        &acc + &dunkl_t(k, i, f).left_unit(i)
    })
}

/// `D_A f = ∂_0 f + sum_{j not in A} v_j ∂_j f + D̲_A f`.
pub fn dunkl_cr_a(k: &Multiplicities, a: IndexSet, f: &Poly) -> Poly {
    let mut out = &f.partial(0) + &dunkl_dirac_a(k, a, f);
    for j in full(f).difference(a).iter() {
        out = &out + &f.partial(j).left_unit(j);
    }
    out
}

/// `D̲ = D̲_[n]`.
pub fn dunkl_dirac(k: &Multiplicities, f: &Poly) -> Poly {
    dunkl_dirac_a(k, full(f), f)
}

/// `D = ∂_0 + D̲`.
pub fn dunkl_cr(k: &Multiplicities, f: &Poly) -> Poly {
    dunkl_cr_a(k, full(f), f)
}

/// `S_A f = ½ (x̲_A D̲_A f - D̲_A(x̲_A f) - f)`; `S_∅ = -½`.
pub fn casimir_a(k: &Multiplicities, a: IndexSet, f: &Poly) -> Poly {
    if a.is_empty() {
        return f.scale(&-half());
    }
    let lhs = dunkl_dirac_a(k, a, f).imaginary_mul(a);
    let rhs = dunkl_dirac_a(k, a, &f.imaginary_mul(a));
    (&(&lhs - &rhs) - f).scale(&half())
}

/// `S̃_A f = sum_{i in A} k_i (f - r_i f)`.
pub fn s_tilde_a(k: &Multiplicities, a: IndexSet, f: &Poly) -> Poly {
    check_k(k, f);
    a.iter().fold(Poly::zero(f.frame()), |acc, i| {
        &acc + &(f - &f.reflect(i)).scale(k.get(i))
    })
}

/// `S'_A f = S̃_A(f°_{s,A})`; zero for `A = ∅`.
pub fn s_prime_a(k: &Multiplicities, a: IndexSet, f: &Poly) -> Poly {
    if a.is_empty() {
        return Poly::zero(f.frame());
    }
    let sv = f.spherical_value(a).expect("nonempty set");
    s_tilde_a(k, a, &sv)
}

/// `S''_A f = S'_A(x̲_A f)`; zero for `A = ∅`.
pub fn s_dprime_a(k: &Multiplicities, a: IndexSet, f: &Poly) -> Poly {
    if a.is_empty() {
        return Poly::zero(f.frame());
    }
    s_prime_a(k, a, &f.imaginary_mul(a))
}

/// `𝒮_A f = (S_A f, S'_A f, S''_A f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptS {
    pub casimir: Poly,
    pub prime: Poly,
    pub dprime: Poly,
}

impl ScriptS {
    pub fn is_zero(&self) -> bool {
        self.casimir.is_zero() && self.prime.is_zero() && self.dprime.is_zero()
    }

    /// Named nonzero components.
    pub fn nonzero(&self) -> Vec<(&'static str, &Poly)> {
        [
            ("S", &self.casimir),
            ("Sprime", &self.prime),
            ("Sdprime", &self.dprime),
        ]
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .collect()
    }
}

pub fn script_s_a(k: &Multiplicities, a: IndexSet, f: &Poly) -> ScriptS {
    ScriptS {
        casimir: casimir_a(k, a, f),
        prime: s_prime_a(k, a, f),
        dprime: s_dprime_a(k, a, f),
    }
}

/// `Γ̃_A f = S_A(r_A f)`.
pub fn gamma_tilde_a(k: &Multiplicities, a: IndexSet, f: &Poly) -> Poly {
    casimir_a(k, a, &f.reflect_set(a))
}

/// `D_P f = ∂_0 f + sum_j D̲_{A_j} f`.
pub fn dunkl_cr_p(k: &Multiplicities, p: &Partition, f: &Poly) -> Poly {
    assert_eq!(p.n(), f.frame().n(), "partition does not match the frame");
    p.blocks()
        .iter()
        .fold(f.partial(0), |acc, &b| &acc + &dunkl_dirac_a(k, b, f))
}

/// `𝒮_P f`, one triple per block in canonical block order.
pub fn script_s_p(k: &Multiplicities, p: &Partition, f: &Poly) -> Vec<ScriptS> {
    assert_eq!(p.n(), f.frame().n(), "partition does not match the frame");
    p.blocks().iter().map(|&b| script_s_a(k, b, f)).collect()
}

/// `Δ_A f = sum_{i in A} T_i^2 f`.
pub fn dunkl_laplacian_a(k: &Multiplicities, a: IndexSet, f: &Poly) -> Poly {
    a.iter().fold(Poly::zero(f.frame()), |acc, i| {
        &acc + &dunkl_t(k, i, &dunkl_t(k, i, f))
    })
}

/// `Δ_{D,M} f = ∂_0^2 f + sum T_i^2 f`.
pub fn dunkl_laplacian(k: &Multiplicities, f: &Poly) -> Poly {
    &f.partial(0).partial(0) + &dunkl_laplacian_a(k, full(f), f)
}

/// `∫_0^1 (1 - 2t)^m dt`.
fn signed_moment(m: u32) -> Rational {
    if m.is_multiple_of(2) {
        rat(1, m as i64 + 1)
    } else {
        Rational::zero()
    }
}

/// `∂̄ f + 2 sum k_i v_i ∫_0^1 ∂_i f(x - 2 t x_i v_i) dt`, integrated monomial by monomial.
pub fn integral_form_d(k: &Multiplicities, f: &Poly) -> Poly {
    check_k(k, f);
    let mut out = cauchy_riemann(f);
    for i in 1..=f.frame().n() {
        let ki = k.get(i);
        if ki.is_zero() {
            continue;
        }
        let d = f.partial(i);
        let mut integrated = Poly::zero(f.frame());
        for (m, a) in d.terms() {
            integrated.add_term(m.clone(), &a.scale(&signed_moment(m.exponent(i))));
        }
        out = &out + &integrated.left_unit(i).scale(&(ki * int(2)));
    }
    out
}

/// An operator addressable by name from the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorName {
    Dbar,
    Laplace,
    Gamma,
    ThetabarMult,
    T(usize),
    D(IndexSet),
    DPartition(Option<Partition>),
    S(IndexSet),
    Sprime(IndexSet),
    Sdprime(IndexSet),
    GammaTilde(IndexSet),
    DunklLaplace,
}

impl fmt::Display for OperatorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &IndexSet| {
            s.to_vec()
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            OperatorName::Dbar => write!(f, "dbar"),
            OperatorName::Laplace => write!(f, "laplace"),
            OperatorName::Gamma => write!(f, "gamma"),
            OperatorName::ThetabarMult => write!(f, "thetabar-mult"),
            OperatorName::T(i) => write!(f, "T{i}"),
            OperatorName::D(a) => write!(f, "D[{}]", set(a)),
            OperatorName::DPartition(Some(p)) => write!(f, "D{p}"),
            OperatorName::DPartition(None) => write!(f, "D{{}}"),
            OperatorName::S(a) => write!(f, "S[{}]", set(a)),
            OperatorName::Sprime(a) => write!(f, "Sprime[{}]", set(a)),
            OperatorName::Sdprime(a) => write!(f, "Sdprime[{}]", set(a)),
            OperatorName::GammaTilde(a) => write!(f, "GammaTilde[{}]", set(a)),
            OperatorName::DunklLaplace => write!(f, "DunklLaplace"),
        }
    }
}

impl FromStr for OperatorName {
    type Err = OperatorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let unknown = || OperatorError::UnknownOperator(s.to_string());
        let bracket = |prefix: &str| -> Option<Result<IndexSet, OperatorError>> {
            let rest = s
                .strip_prefix(prefix)?
                .strip_prefix('[')?
                .strip_suffix(']')?;
            Some(rest.parse::<IndexSet>().map_err(|_| unknown()))
        };
        match s {
            "dbar" => return Ok(OperatorName::Dbar),
            "laplace" => return Ok(OperatorName::Laplace),
            "gamma" => return Ok(OperatorName::Gamma),
            "thetabar-mult" => return Ok(OperatorName::ThetabarMult),
            "DunklLaplace" => return Ok(OperatorName::DunklLaplace),
            "D{}" => return Ok(OperatorName::DPartition(None)),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix('T') {
            if let Ok(i) = rest.parse::<usize>() {
                if i >= 1 {
                    return Ok(OperatorName::T(i));
                }
            }
        }
        if let Some(r) = bracket("Sprime") {
            return r.map(OperatorName::Sprime);
        }
        if let Some(r) = bracket("Sdprime") {
            return r.map(OperatorName::Sdprime);
        }
        if let Some(r) = bracket("GammaTilde") {
            return r.map(OperatorName::GammaTilde);
        }
        if let Some(r) = bracket("S") {
            return r.map(OperatorName::S);
        }
        if let Some(r) = bracket("D") {
            return r.map(OperatorName::D);
        }
        if let Some(rest) = s.strip_prefix('D') {
            if rest.starts_with('{') {
                let p: Partition = rest.parse().map_err(|_| unknown())?;
                return Ok(OperatorName::DPartition(Some(p)));
            }
        }
        Err(unknown())
    }
}

impl OperatorName {
    /// Applies the operator; `partition` is used by `D{}` when the name carries none.
    pub fn apply(
        &self,
        k: &Multiplicities,
        partition: Option<&Partition>,
        f: &Poly,
    ) -> Result<Poly, OperatorError> {
        let n = f.frame().n();
        k.check_len(n)?;
        let check = |a: &IndexSet| {
            if a.within(n) {
                Ok(*a)
            } else {
                Err(OperatorError::IndexOutOfRange { set: *a, n })
            }
        };
        Ok(match self {
            OperatorName::Dbar => cauchy_riemann(f),
            OperatorName::Laplace => laplacian(f),
            OperatorName::Gamma => gamma_spherical(f),
            OperatorName::ThetabarMult => thetabar_mult(f),
            OperatorName::T(i) => {
                check(&IndexSet::singleton(*i))?;
                dunkl_t(k, *i, f)
            }
            OperatorName::D(a) => dunkl_cr_a(k, check(a)?, f),
            OperatorName::DPartition(p) => {
                let p = p
                    .as_ref()
                    .or(partition)
                    .ok_or_else(|| OperatorError::MissingPartition(self.to_string()))?;
                if p.n() != n {
                    return Err(OperatorError::IndexOutOfRange {
                        set: IndexSet::full(p.n()),
                        n,
                    });
                }
                dunkl_cr_p(k, p, f)
            }
            OperatorName::S(a) => casimir_a(k, check(a)?, f),
            OperatorName::Sprime(a) => s_prime_a(k, check(a)?, f),
            OperatorName::Sdprime(a) => s_dprime_a(k, check(a)?, f),
            OperatorName::GammaTilde(a) => gamma_tilde_a(k, check(a)?, f),
            OperatorName::DunklLaplace => dunkl_laplacian(k, f),
        })
    }
}

/// Result of applying a named operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorReport {
    pub input_digest: String,
    pub operator: String,
    pub output: Poly,
    pub is_zero: bool,
}

/// SHA-256 of the canonical text of `f`, hex encoded.
pub fn poly_digest(f: &Poly) -> String {
    let digest = Sha256::digest(f.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn apply_named(
    name: &OperatorName,
    k: &Multiplicities,
    partition: Option<&Partition>,
    f: &Poly,
) -> Result<OperatorReport, OperatorError> {
    let output = name.apply(k, partition, f)?;
    Ok(OperatorReport {
        input_digest: poly_digest(f),
        operator: name.to_string(),
        is_zero: output.is_zero(),
        output,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_algebra, AlgebraSpec, Frame};
    use crate::polynomial::{imaginary_poly, slice_power_poly, Monomial};

    fn h() -> Frame {
        make_algebra(AlgebraSpec::Quaternions).1
    }

    fn t(f: &Frame, e: &[u32], a: crate::algebra::Element) -> Poly {
        Poly::term(f, Monomial::new(e.to_vec()), a)
    }

    fn third() -> Multiplicities {
        Multiplicities::new(vec![rat(-1, 3); 3])
    }

    #[test]
    fn cauchy_riemann_of_powers() {
        let f = h();
        let one = f.algebra().one();
        // ∂̄ x = 1 - n
        assert_eq!(
            cauchy_riemann(&slice_power_poly(&f, 1)),
            Poly::constant(&f, one.scale(&int(-2)))
        );
        // ∂̄ x^2 = (1 - n) 2 x0
        assert_eq!(
            cauchy_riemann(&slice_power_poly(&f, 2)),
            t(&f, &[1, 0, 0, 0], one.scale(&int(-4)))
        );
        assert_eq!(
            laplacian(&t(&f, &[2, 0, 0, 0], one.clone())),
            Poly::constant(&f, one.scale(&int(2)))
        );
    }

    #[test]
    fn gamma_examples() {
        let f = h();
        let a = f.unit(1).clone();
        assert!(gamma_spherical(&Poly::constant(&f, a.clone())).is_zero());
        assert!(gamma_spherical(&t(&f, &[3, 0, 0, 0], a.clone())).is_zero());
        // Γ(x1 a) = sum_{j=2,3} v1(vj x_j a)
        let g = gamma_spherical(&t(&f, &[0, 1, 0, 0], a.clone()));
        let expected = &t(&f, &[0, 0, 1, 0], f.left_unit(1, &f.left_unit(2, &a)))
            + &t(&f, &[0, 0, 0, 1], f.left_unit(1, &f.left_unit(3, &a)));
        assert_eq!(g, expected);
    }

    #[test]
    fn thetabar_kills_powers() {
        let f = h();
        for k in 0..=5 {
            assert!(thetabar_mult(&slice_power_poly(&f, k)).is_zero());
        }
        let a = f.unit(2).clone();
        let x1a = t(&f, &[0, 1, 0, 0], a);
        assert_eq!(thetabar_mult(&x1a), -&x1a);
    }

    #[test]
    fn dunkl_t_examples() {
        let f = h();
        let k = Multiplicities::new(vec![rat(-1, 5), rat(1, 7), rat(2, 3)]);
        let a = f.unit(3).clone();
        let ki = k.get(1).clone();
        let expected = a.scale(&(int(1) + int(2) * ki.clone()));
        assert_eq!(
            dunkl_t(&k, 1, &t(&f, &[0, 1, 0, 0], a.clone())),
            Poly::constant(&f, expected.clone())
        );
        assert!(dunkl_t(&k, 1, &t(&f, &[0, 0, 1, 0], a.clone())).is_zero());
        assert_eq!(
            dunkl_t(&k, 1, &t(&f, &[0, 2, 0, 0], a.clone())),
            t(&f, &[0, 1, 0, 0], a.scale(&int(2)))
        );
        // Δ_D(x1^2 a) = 2(1 + 2k1) a
        assert_eq!(
            dunkl_laplacian(&k, &t(&f, &[0, 2, 0, 0], a.clone())),
            Poly::constant(&f, expected.scale(&int(2)))
        );
    }

    #[test]
    fn example_linear_values() {
        let f = h();
        let one = f.algebra().one();
        let k = Multiplicities::new(vec![int(0), rat(-1, 4), rat(-1, 4)]);
        let a23 = IndexSet::from_indices(&[2, 3]);
        let f2 = &(&t(&f, &[1, 0, 0, 0], one.clone()) + &t(&f, &[0, 0, 1, 0], f.unit(2).clone()))
            + &t(&f, &[0, 0, 0, 1], f.unit(3).clone());
        assert!(dunkl_cr_a(&k, a23, &f2).is_zero());
        let g = t(&f, &[0, 0, 1, 0], f.unit(2).clone());
        assert_eq!(
            dunkl_cr_a(&k, a23, &g),
            Poly::constant(&f, one.scale(&rat(-1, 2)))
        );
    }

    #[test]
    fn casimir_examples() {
        let f = h();
        let k = third();
        let one = f.algebra().one();
        assert!(casimir_a(&k, IndexSet::full(3), &Poly::constant(&f, one.clone())).is_zero());
        let g = &t(&f, &[1, 2, 1, 0], f.unit(1).clone()) + &t(&f, &[0, 1, 0, 3], one.clone());
        for i in 1..=3 {
            assert_eq!(
                casimir_a(&k, IndexSet::singleton(i), &g),
                g.reflect(i).scale(k.get(i))
            );
            assert_eq!(
                gamma_tilde_a(&k, IndexSet::singleton(i), &g),
                g.scale(k.get(i))
            );
        }
        assert_eq!(casimir_a(&k, IndexSet::empty(), &g), g.scale(&rat(-1, 2)));
        assert_eq!(
            gamma_tilde_a(&k, IndexSet::empty(), &g),
            g.scale(&rat(-1, 2))
        );
        // S = x̲ D̲ + E when κ = (1 - n)/2
        let rhs =
            &dunkl_dirac(&k, &g).imaginary_mul(IndexSet::full(3)) + &g.euler(IndexSet::full(3));
        assert_eq!(casimir_a(&k, IndexSet::full(3), &g), rhs);
    }

    #[test]
    fn spherical_triples() {
        let f = h();
        let k = third();
        let p = slice_power_poly(&f, 3).right_scale(f.unit(2));
        assert!(script_s_a(&k, IndexSet::full(3), &p).is_zero());
        let g = &t(&f, &[1, 2, 1, 0], f.unit(1).clone()) + &t(&f, &[0, 1, 0, 3], f.unit(3).clone());
        for i in 1..=3 {
            assert!(s_prime_a(&k, IndexSet::singleton(i), &g).is_zero());
            assert!(s_dprime_a(&k, IndexSet::singleton(i), &g).is_zero());
        }
        let x1a = t(&f, &[0, 1, 0, 0], f.unit(2).clone());
        assert_eq!(
            s_tilde_a(&k, IndexSet::full(3), &x1a),
            x1a.scale(&(int(2) * k.get(1)))
        );
    }

    #[test]
    fn integral_form_matches_on_linear() {
        let f = h();
        let k = Multiplicities::new(vec![rat(-1, 5), rat(1, 7), rat(2, 3)]);
        let x1a = t(&f, &[0, 1, 0, 0], f.unit(2).clone());
        assert_eq!(integral_form_d(&k, &x1a), dunkl_cr(&k, &x1a));
        assert!(integral_form_d(&k, &Poly::constant(&f, f.unit(1).clone())).is_zero());
        let g = &t(&f, &[1, 3, 2, 1], f.unit(1).clone()) + &t(&f, &[0, 2, 0, 3], f.unit(3).clone());
        assert_eq!(integral_form_d(&k, &g), dunkl_cr(&k, &g));
    }

    #[test]
    fn zero_multiplicities_reduce_to_classical() {
        let f = h();
        let k = Multiplicities::zeros(3);
        let g = &t(&f, &[1, 3, 2, 1], f.unit(1).clone()) + &t(&f, &[0, 2, 0, 3], f.unit(3).clone());
        assert_eq!(dunkl_cr(&k, &g), cauchy_riemann(&g));
        assert_eq!(dunkl_laplacian(&k, &g), laplacian(&g));
        let p = Partition::singletons(3);
        assert_eq!(dunkl_cr_p(&k, &p, &g), cauchy_riemann(&g));
        let k = third();
        assert_eq!(dunkl_cr_p(&k, &Partition::whole(3), &g), dunkl_cr(&k, &g));
        assert_eq!(dunkl_cr_a(&k, IndexSet::empty(), &g), cauchy_riemann(&g));
    }

    #[test]
    fn operator_names_round_trip() {
        for s in [
            "dbar",
            "laplace",
            "gamma",
            "thetabar-mult",
            "T2",
            "D[2,3]",
            "D{1|2,3}",
            "S[1,2,3]",
            "Sprime[1]",
            "Sdprime[2,3]",
            "GammaTilde[1,2]",
            "DunklLaplace",
        ] {
            let name: OperatorName = s.parse().unwrap();
            assert_eq!(name.to_string(), s);
        }
        assert!("Q[1]".parse::<OperatorName>().is_err());
        assert!("T0".parse::<OperatorName>().is_err());
    }

    #[test]
    fn report_digest_is_stable() {
        let f = h();
        let x = imaginary_poly(&f, IndexSet::full(3));
        let k = third();
        let r1 = apply_named(&OperatorName::Dbar, &k, None, &x).unwrap();
        let r2 = apply_named(&OperatorName::Dbar, &k, None, &x).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.input_digest.len(), 64);
        assert!(!r1.is_zero);
        assert!(matches!(
            apply_named(&OperatorName::DPartition(None), &k, None, &x),
            Err(OperatorError::MissingPartition(_))
        ));
    }

    #[test]
    fn multiplicity_parsing() {
        let k: Multiplicities = "-1/3,-1/3,-1/3".parse().unwrap();
        assert_eq!(k, third());
        assert_eq!(k.kappa(), int(-1));
        assert_eq!(k.gamma(), rat(1, 2));
        assert_eq!(k.to_string(), "-1/3,-1/3,-1/3");
        assert!("a,b".parse::<Multiplicities>().is_err());
    }
}
