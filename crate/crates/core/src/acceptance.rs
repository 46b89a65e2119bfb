//! The acceptance suite: fifteen exact checks, runnable in parallel.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{make_algebra, AlgebraSpec, Frame};
use crate::index_set::IndexSet;
use crate::operators::{
    angular, cauchy_riemann, dunkl_cr, dunkl_cr_a, dunkl_dirac_a, dunkl_laplacian,
    dunkl_laplacian_a, gamma_spherical, integral_form_d, script_s_a, script_s_p, thetabar_mult,
    Multiplicities,
};
use crate::partition::{
    bell_number, census, enumerate_partitions, integer_partition_count, Partition,
};
use crate::pointcheck::{
    block_point, check_difference_at, dbar_j, rational_sphere_point, reconstruct_p_slice_at,
    restrict_to_slice,
};
use crate::polynomial::{imaginary_poly, Monomial, Poly, RealPoly};
use crate::samples::Sampler;
use crate::scalar::{int, rat, Rational};
use crate::spaces::{
    alternate_multiplicities, block_variable, default_multiplicities, is_slice_poly,
    is_slice_regular_poly, membership_a, multiplicity_independence, p_slice_components,
    permuted_equivalence, separating_witness, set_multiplicities, slice_regular_coefficients,
    PartitionSpec,
};
use crate::spectral::{build_reflection_matrix, verify_perron};

/// Options shared by all criteria.
#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    /// Replaces the quaternion table by a corrupted copy in the algebra check.
    pub sabotage: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 20240917,
            sabotage: false,
        }
    }
}

pub struct Criterion {
    pub id: usize,
    pub slug: &'static str,
    pub title: &'static str,
    run: fn(&Options) -> Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: usize,
    pub slug: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    /// `PASS 03 difference: ...`
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!("{status} {:02} {}: {}", self.id, self.slug, self.detail)
    }
}

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            slug: "algebra",
            title: "algebra axioms and frame invariants",
            run: algebra_axioms,
        },
        Criterion {
            id: 2,
            slug: "osp",
            title: "osp(1|2) relations, full and intermediate",
            run: osp_relations,
        },
        Criterion {
            id: 3,
            slug: "difference",
            title: "difference formula, multiplied and pointwise",
            run: difference,
        },
        Criterion {
            id: 4,
            slug: "sliceness",
            title: "sliceness via the Casimir kernel",
            run: sliceness,
        },
        Criterion {
            id: 5,
            slug: "slice-regularity",
            title: "slice-regularity and coefficient round trip",
            run: slice_regularity,
        },
        Criterion {
            id: 6,
            slug: "harmonic",
            title: "Dunkl harmonicity and the dbar identity",
            run: harmonicity,
        },
        Criterion {
            id: 7,
            slug: "integral-form",
            title: "integral form of the Dunkl operator",
            run: integral_form,
        },
        Criterion {
            id: 8,
            slug: "linear-example",
            title: "linear members of F_{2,3} on H",
            run: linear_example,
        },
        Criterion {
            id: 9,
            slug: "classification",
            title: "multiplicity independence and separating witnesses",
            run: classification,
        },
        Criterion {
            id: 10,
            slug: "permutation",
            title: "transport of membership under permutations",
            run: permutation,
        },
        Criterion {
            id: 11,
            slug: "census",
            title: "Bell numbers, partition numbers, 2^n - n",
            run: census_counts,
        },
        Criterion {
            id: 12,
            slug: "perron",
            title: "reflection matrix Perron checks",
            run: perron,
        },
        Criterion {
            id: 13,
            slug: "kernel-sa",
            title: "kernel of the spherical triple",
            run: kernel_sa,
        },
        Criterion {
            id: 14,
            slug: "kernel-sp",
            title: "P-slice reconstruction",
            run: kernel_sp,
        },
        Criterion {
            id: 15,
            slug: "slice-restriction",
            title: "monogenic slice restrictions",
            run: slice_restriction,
        },
    ]
}

/// Runs the criteria whose slug or title contains `filter` (all when `None`), in parallel,
/// returning results in id order.
pub fn run_criteria(filter: Option<&str>, opts: &Options) -> Vec<CriterionResult> {
    let selected: Vec<Criterion> = criteria()
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.slug.contains(f) || c.title.contains(f)))
        .collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|c| scope.spawn(move || run_one(c, opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion threads catch their own panics"))
            .collect()
    })
}

fn run_one(c: &Criterion, opts: &Options) -> CriterionResult {
    let outcome = catch_unwind(AssertUnwindSafe(|| (c.run)(opts))).unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".into());
        Err(format!("panicked: {msg}"))
    });
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        id: c.id,
        slug: c.slug,
        title: c.title,
        passed,
        detail,
    }
}

fn frame(spec: AlgebraSpec) -> Frame {
    make_algebra(spec).1
}

const H: AlgebraSpec = AlgebraSpec::Quaternions;
const O: AlgebraSpec = AlgebraSpec::Octonions;
const C: AlgebraSpec = AlgebraSpec::Complex;
const CL4: AlgebraSpec = AlgebraSpec::Clifford(4);

fn set(indices: &[usize]) -> IndexSet {
    IndexSet::from_indices(indices)
}

fn part(s: &str) -> Partition {
    s.parse().expect("literal partitions are valid")
}

fn random_k(s: &mut Sampler, n: usize) -> Multiplicities {
    Multiplicities::new((0..n).map(|_| s.rational()).collect())
}

fn algebra_axioms(opts: &Options) -> Outcome {
    let mut specs = vec![C, H, AlgebraSpec::ReducedQuaternions, O];
    specs.extend((1..=5).map(AlgebraSpec::Clifford));
    let mut violations = Vec::new();
    for spec in &specs {
        let (table, mut fr) = make_algebra(*spec);
        if opts.sabotage && *spec == H {
            fr = Frame::from_basis(Arc::new(table.sabotaged(1, 2)), &[1, 2, 3]);
        }
        let alg = fr.algebra();
        let mut local: Vec<String> = alg.validate();
        local.extend(fr.verify().failures);
        for i in 1..=fr.n() {
            for b in 0..alg.dim() {
                let e = alg.basis(b);
                if fr.left_unit(i, &fr.left_unit(i, &e)) != -e.clone() {
                    local.push(format!("v_{i}(v_{i} e_{b}) != -e_{b}"));
                }
                for j in 1..=fr.n() {
                    if i != j
                        && fr.left_unit(i, &fr.left_unit(j, &e))
                            != -fr.left_unit(j, &fr.left_unit(i, &e))
                    {
                        local.push(format!("v_{i}(v_{j} e_{b}) != -v_{j}(v_{i} e_{b})"));
                    }
                }
            }
        }
        let expect_assoc = !matches!(spec, AlgebraSpec::Octonions);
        if alg.is_associative_on_basis() != expect_assoc {
            local.push("unexpected associativity".into());
        }
        violations.extend(local.into_iter().map(|v| format!("{}: {v}", alg.name())));
    }
    ensure!(
        violations.is_empty(),
        "{} violations, first: {}",
        violations.len(),
        violations[0]
    );
    Ok(format!("{} algebras, 0 violations", specs.len()))
}

/// The seven relations for the operators restricted to `A`; returns the names of failures.
fn osp_failures(k: &Multiplicities, a: IndexSet, f: &Poly) -> Vec<&'static str> {
    let nvars = f.nvars();
    let x = |g: &Poly| g.imaginary_mul(a);
    let d = |g: &Poly| dunkl_dirac_a(k, a, g);
    let e = |g: &Poly| g.euler(a);
    let lap = |g: &Poly| dunkl_laplacian_a(k, a, g);
    let q = RealPoly::square_norm(nvars, a);
    let gamma = k.gamma_a(a);
    let two = int(2);
    let mut out = Vec::new();
    if x(&x(f)).scale(&two) != f.real_mul(&q).scale(&int(-2)) {
        out.push("{x,x}");
    }
    if d(&d(f)).scale(&two) != lap(f).scale(&int(-2)) {
        out.push("{D,D}");
    }
    if &e(&x(f)) - &x(&e(f)) != x(f) {
        out.push("[E,x]");
    }
    if &x(&d(f)) + &d(&x(f)) != (&e(f) + &f.scale(&gamma)).scale(&int(-2)) {
        out.push("{x,D}");
    }
    if &d(&e(f)) - &e(&d(f)) != d(f) {
        out.push("[D,E]");
    }
    if &lap(&x(f)) - &x(&lap(f)) != d(f).scale(&two) {
        out.push("[Lap,x]");
    }
    if &d(&f.real_mul(&q)) - &d(f).real_mul(&q) != x(f).scale(&two) {
        out.push("[D,q]");
    }
    out
}

struct Suite {
    spec: AlgebraSpec,
    frame: Frame,
    polys: Vec<Poly>,
}

/// 100 random polynomials on H and Cl(0,4) (degree <= 4) and on O (degree <= 2).
fn random_suites(seed: u64) -> Vec<Suite> {
    [(H, 4u32), (CL4, 4), (O, 2)]
        .into_iter()
        .enumerate()
        .map(|(idx, (spec, deg))| {
            let fr = frame(spec);
            let mut s = Sampler::new(seed ^ (0x05e0 + idx as u64));
            let polys = (0..100).map(|_| s.poly(&fr, deg, 4)).collect();
            Suite {
                spec,
                frame: fr,
                polys,
            }
        })
        .collect()
}

fn intermediate_sets(n: usize) -> [IndexSet; 3] {
    [set(&[1]), set(&[2, 3]), IndexSet::full(n - 1)]
}

fn osp_relations(opts: &Options) -> Outcome {
    let mut checked = 0;
    for suite in random_suites(opts.seed) {
        let n = suite.frame.n();
        let mut s = Sampler::new(opts.seed ^ 0x05f1);
        for (idx, f) in suite.polys.iter().enumerate() {
            let k = random_k(&mut s, n);
            let bad = osp_failures(&k, IndexSet::full(n), f);
            ensure!(bad.is_empty(), "{} poly {idx}: {:?} fail", suite.spec, bad);
            for a in intermediate_sets(n) {
                let bad = osp_failures(&set_multiplicities(n, a), a, f);
                ensure!(
                    bad.is_empty(),
                    "{} poly {idx}, A = {a}: {:?} fail",
                    suite.spec,
                    bad
                );
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} polynomials, 7 relations each for [n] and three intermediate sets"
    ))
}

fn off_axis_point(s: &mut Sampler, n: usize) -> Vec<Rational> {
    loop {
        let p: Vec<Rational> = (0..=n).map(|_| s.rational()).collect();
        if p[1..].iter().any(|c| !c.is_zero()) {
            return p;
        }
    }
}

fn difference(opts: &Options) -> Outcome {
    let mut polys = 0;
    let mut points = 0;
    for suite in random_suites(opts.seed) {
        let fr = &suite.frame;
        let full = IndexSet::full(fr.n());
        for (idx, f) in suite.polys.iter().enumerate() {
            let lhs = &cauchy_riemann(f).imaginary_mul(full) - &thetabar_mult(f);
            ensure!(
                lhs == -gamma_spherical(f),
                "{} poly {idx}: multiplied form fails",
                suite.spec
            );
            polys += 1;
        }
        let mut s = Sampler::new(opts.seed ^ 0xd1ff);
        for idx in 0..50 {
            let f = &suite.polys[idx % suite.polys.len()];
            let p = off_axis_point(&mut s, fr.n());
            ensure!(
                check_difference_at(f, &p).map_err(|e| e.to_string())?,
                "{} point {idx}: pointwise formula fails",
                suite.spec
            );
            points += 1;
        }
    }
    Ok(format!(
        "{polys} polynomials in multiplied form, {points} rational points"
    ))
}

fn slice_frames() -> [Frame; 3] {
    [frame(H), frame(CL4), frame(O)]
}

fn sliceness(opts: &Options) -> Outcome {
    let frames = slice_frames();
    let mut s = Sampler::new(opts.seed ^ 0x511c);
    for idx in 0..100 {
        let fr = &frames[idx % 3];
        let f = s.slice_poly(fr, 4, 3);
        let v = is_slice_poly(&f).map_err(|e| e.to_string())?;
        ensure!(
            v.member,
            "slice sample {idx} on {} rejected",
            fr.algebra().name()
        );
    }
    for idx in 0..100 {
        let fr = &frames[idx % 3];
        let f = s.non_slice_poly(fr, 4, 3);
        let v = is_slice_poly(&f).map_err(|e| e.to_string())?;
        ensure!(
            !v.member,
            "non-slice sample {idx} on {} accepted",
            fr.algebra().name()
        );
        ensure!(
            v.witnesses.iter().any(|w| !w.output.is_zero()),
            "non-slice sample {idx} has no witness"
        );
    }
    Ok("100 slice accepted, 100 non-slice rejected with witnesses, Casimir and reflected Casimir agree".into())
}

/// 100 `sum x^j a_j` of degree <= 5 with their generating coefficients.
fn slice_regular_suite(seed: u64) -> Vec<(Poly, Vec<crate::algebra::Element>)> {
    let frames = [
        frame(C),
        frame(H),
        frame(AlgebraSpec::Clifford(3)),
        frame(O),
    ];
    let mut s = Sampler::new(seed ^ 0x5e9);
    (0..100)
        .map(|idx| {
            let fr = &frames[idx % frames.len()];
            let deg = s.range(0, 5);
            let mut coeffs: Vec<_> = (0..=deg)
                .map(|_| {
                    if s.below(3) == 0 {
                        fr.algebra().zero()
                    } else {
                        s.element(fr)
                    }
                })
                .collect();
            let f = coeffs
                .iter()
                .enumerate()
                .fold(Poly::zero(fr), |acc, (j, a)| {
                    &acc + &crate::polynomial::slice_power_poly(fr, j as u32).right_scale(a)
                });
            while coeffs.len() > 1 && coeffs.last().is_some_and(|a| a.is_zero()) {
                coeffs.pop();
            }
            (f, coeffs)
        })
        .collect()
}

fn slice_regularity(opts: &Options) -> Outcome {
    for (idx, (f, coeffs)) in slice_regular_suite(opts.seed).iter().enumerate() {
        ensure!(is_slice_regular_poly(f).member, "sample {idx} rejected");
        let got = slice_regular_coefficients(f).map_err(|e| format!("sample {idx}: {e}"))?;
        ensure!(
            &got == coeffs,
            "sample {idx}: coefficients do not round-trip"
        );
    }
    let mut s = Sampler::new(opts.seed ^ 0x5ea);
    for fr in [
        frame(C),
        frame(H),
        frame(AlgebraSpec::Clifford(3)),
        frame(O),
    ] {
        let a = s.element(&fr);
        let xa = imaginary_poly(&fr, IndexSet::full(fr.n())).right_scale(&a);
        ensure!(
            is_slice_poly(&xa).map_err(|e| e.to_string())?.member,
            "x a not slice on {}",
            fr.algebra().name()
        );
        ensure!(
            !is_slice_regular_poly(&xa).member,
            "x a slice-regular on {}",
            fr.algebra().name()
        );
    }
    Ok("100 samples accepted with exact coefficients; imaginary part times a is slice, not regular".into())
}

fn harmonicity(opts: &Options) -> Outcome {
    for (idx, (f, _)) in slice_regular_suite(opts.seed).iter().enumerate() {
        let fr = f.frame();
        let n = fr.n();
        let k = default_multiplicities(&Partition::whole(n));
        ensure!(
            dunkl_laplacian(&k, f).is_zero(),
            "sample {idx} not Dunkl harmonic"
        );
        let full = IndexSet::full(n);
        let lhs = cauchy_riemann(f).imaginary_mul(full);
        let rhs = (f - &f.reflect_set(full)).scale(&rat(1 - n as i64, 2));
        ensure!(lhs == rhs, "sample {idx}: dbar identity fails");
    }
    Ok("100 slice-regular samples are Dunkl harmonic and satisfy the dbar identity".into())
}

fn integral_form(opts: &Options) -> Outcome {
    let mut s = Sampler::new(opts.seed ^ 0x1f);
    let mut count = 0;
    for (spec, deg) in [(C, 4), (H, 4), (O, 3), (CL4, 4)] {
        let fr = frame(spec);
        for idx in 0..50 {
            let f = s.poly(&fr, deg, 4);
            let k = random_k(&mut s, fr.n());
            ensure!(
                integral_form_d(&k, &f) == dunkl_cr(&k, &f),
                "{spec} poly {idx}: forms differ"
            );
            count += 1;
        }
    }
    Ok(format!("{count} polynomials over 4 algebras"))
}

fn linear_example(opts: &Options) -> Outcome {
    let fr = frame(H);
    let alg = fr.algebra();
    let (i, j, kk) = (fr.unit(1).clone(), fr.unit(2).clone(), fr.unit(3).clone());
    let one = alg.one();
    let a23 = set(&[2, 3]);
    let var =
        |idx: usize, a: &crate::algebra::Element| Poly::term(&fr, Monomial::var(4, idx), a.clone());
    let f1 = &var(0, &one) + &var(1, &i);
    let f2 = &(&var(0, &one) + &var(2, &j)) + &var(3, &kk);
    let ks = [
        Multiplicities::new(vec![int(0), rat(-1, 4), rat(-1, 4)]),
        Multiplicities::new(vec![int(0), rat(-1, 3), rat(-1, 6)]),
        Multiplicities::new(vec![int(0), int(0), rat(-1, 2)]),
    ];
    let combos = [
        (one.clone(), one.clone()),
        (i.clone(), j.clone()),
        (&one + &kk, i.scale(&int(-2))),
        (j.scale(&rat(1, 2)), kk.scale(&int(3))),
    ];
    let mut s = Sampler::new(opts.seed ^ 0x11);
    for k in &ks {
        for (name, f) in [("f1", &f1), ("f2", &f2)] {
            ensure!(
                membership_a(k, a23, f).map_err(|e| e.to_string())?.member,
                "{name} rejected for k = {k}"
            );
        }
        for (c, d) in &combos {
            let g = &f1.right_scale(c) + &f2.right_scale(d);
            ensure!(
                membership_a(k, a23, &g).map_err(|e| e.to_string())?.member,
                "combination rejected for k = {k}"
            );
        }
        for (idx, u) in [(2, &j), (3, &kk)] {
            let g = var(idx, u);
            ensure!(
                !membership_a(k, a23, &g).map_err(|e| e.to_string())?.member,
                "v{idx} x{idx} accepted"
            );
        }
        // D_{2,3} f = (a_0 + i a_1) + j a_2 (1 + 2k_2) + k a_3 (1 + 2k_3)
        for _ in 0..10 {
            let a: Vec<_> = (0..4).map(|_| s.element(&fr)).collect();
            let f = (0..4).fold(Poly::zero(&fr), |acc, idx| &acc + &var(idx, &a[idx]));
            let expected = &(&a[0] + &alg.mul(&i, &a[1]))
                + &(&alg.mul(&j, &a[2]).scale(&(int(1) + int(2) * k.get(2)))
                    + &alg.mul(&kk, &a[3]).scale(&(int(1) + int(2) * k.get(3))));
            ensure!(
                dunkl_cr_a(k, a23, &f) == Poly::constant(&fr, expected),
                "closed form for D differs at k = {k}"
            );
            // member iff a_2 = j a and a_3 = k a with a = a_0 + i a_1
            let base = &a[0] + &alg.mul(&i, &a[1]);
            let g = &(&var(0, &a[0]) + &var(1, &a[1]))
                + &(&var(2, &alg.mul(&j, &base)) + &var(3, &alg.mul(&kk, &base)));
            ensure!(
                membership_a(k, a23, &g).map_err(|e| e.to_string())?.member,
                "characterized member rejected"
            );
            let member = membership_a(k, a23, &f).map_err(|e| e.to_string())?.member;
            let predicted = a[2] == alg.mul(&j, &base) && a[3] == alg.mul(&kk, &base);
            ensure!(
                member == predicted,
                "random linear polynomial misclassified"
            );
        }
    }
    Ok("f1, f2 and four right combinations are members for three k; v2 x2, v3 x3 are not; D closed form matches".into())
}

/// 40 polynomials mixing members of every `F_P` with non-members.
fn classification_suite(fr: &Frame, partitions: &[Partition], seed: u64) -> Vec<Poly> {
    let n = fr.n();
    let mut s = Sampler::new(seed);
    let mut suite = Vec::new();
    for p in partitions {
        suite.push(s.fp_member(fr, p, 3));
        suite.push(s.fp_member(fr, p, 2));
    }
    for _ in 0..5 {
        suite.push(s.slice_regular_poly(fr, 3));
    }
    for mask in 1..(1u64 << n) {
        if suite.len() >= 26 {
            break;
        }
        suite.push(block_variable(fr, IndexSet::from_bits(mask)));
    }
    while suite.len() < 33 {
        let a = IndexSet::from_bits(1 + s.below((1 << n) - 1) as u64);
        suite.push(s.fa_member(fr, a, 2));
    }
    while suite.len() < 40 {
        suite.push(s.poly(fr, 3, 3));
    }
    suite
}

fn classification(opts: &Options) -> Outcome {
    let n3: Vec<Partition> = enumerate_partitions(3).collect();
    let n4: Vec<Partition> = [
        "{1,2,3,4}",
        "{1|2,3,4}",
        "{1,2|3,4}",
        "{1|2|3,4}",
        "{1|2|3|4}",
    ]
    .iter()
    .map(|s| part(s))
    .collect();
    let mut checked = 0;
    for (fr, partitions) in [(frame(H), &n3), (frame(CL4), &n4)] {
        let suite = classification_suite(&fr, partitions, opts.seed ^ 0xc1a5);
        ensure!(suite.len() == 40, "suite has {} polynomials", suite.len());
        for p in partitions.iter() {
            let k1 = default_multiplicities(p);
            let k2 = alternate_multiplicities(p);
            let report =
                multiplicity_independence(p, &k1, &k2, &suite).map_err(|e| e.to_string())?;
            ensure!(
                report.agree,
                "{p}: verdicts differ on suite element {:?}",
                report.counterexample
            );
            ensure!(
                report.members > 0 && report.members < suite.len(),
                "{p}: suite does not separate ({} members)",
                report.members
            );
            checked += 1;
        }
    }
    let fr = frame(H);
    let mut pairs = 0;
    for (i, p) in n3.iter().enumerate() {
        for q in &n3[i + 1..] {
            let w = separating_witness(&fr, p, q).map_err(|e| format!("{p} vs {q}: {e}"))?;
            let w2 = separating_witness(&fr, q, p).map_err(|e| format!("{q} vs {p}: {e}"))?;
            ensure!(
                w.block == w2.block && w.in_first != w2.in_first,
                "{p} vs {q}: witness not symmetric"
            );
            pairs += 1;
        }
    }
    Ok(format!(
        "{checked} partitions agree under two multiplicity choices; {pairs} pairs separated"
    ))
}

fn permutation(opts: &Options) -> Outcome {
    let cases: [(AlgebraSpec, &str, Vec<usize>); 6] = [
        (H, "{1|2,3}", vec![2, 1, 3]),
        (H, "{1,2,3}", vec![3, 1, 2]),
        (H, "{1,2|3}", vec![1, 3, 2]),
        (CL4, "{1|2,3,4}", vec![2, 1, 4, 3]),
        (CL4, "{1,2|3,4}", vec![3, 1, 4, 2]),
        (CL4, "{1|2|3,4}", vec![4, 3, 2, 1]),
    ];
    let mut s = Sampler::new(opts.seed ^ 0x9e);
    let mut members = 0;
    for (spec, p, sigma) in &cases {
        let fr = frame(*spec);
        let p = part(p);
        let spec_p = PartitionSpec::with_default(p.clone());
        for idx in 0..20 {
            let f = match idx % 4 {
                0 | 1 => s.fp_member(&fr, &p, 3),
                2 => s.slice_regular_poly(&fr, 3),
                _ => s.poly(&fr, 3, 3),
            };
            members += usize::from(
                crate::spaces::membership_p(&spec_p, &f)
                    .map_err(|e| e.to_string())?
                    .member,
            );
            ensure!(
                permuted_equivalence(&spec_p, sigma, &f).map_err(|e| e.to_string())?,
                "{spec} {p} sigma {sigma:?}: poly {idx} not transported"
            );
        }
    }
    ensure!(members > 0, "no members in the permutation suites");
    Ok(format!(
        "6 (P, sigma) pairs x 20 polynomials transported ({members} members)"
    ))
}

fn census_counts(_: &Options) -> Outcome {
    let bell = [1u128, 2, 5, 15, 52, 203, 877, 4140];
    let parts = [1u128, 2, 3, 5, 7, 11, 15, 22];
    for n in 1..=8 {
        let c = census(n);
        ensure!(
            c.bell == bell[n - 1] && c.bell == bell_number(n),
            "Bell({n}) = {}",
            c.bell
        );
        ensure!(
            c.integer_partitions == parts[n - 1]
                && c.integer_partitions == integer_partition_count(n),
            "p({n}) = {}",
            c.integer_partitions
        );
        ensure!(
            c.subset_spaces == (1u128 << n) - n as u128,
            "2^{n} - {n} = {}",
            c.subset_spaces
        );
    }
    Ok("n = 1..8 match".into())
}

fn perron(_: &Options) -> Outcome {
    let mut count = 0;
    for n in 3..=5usize {
        let whole = Partition::whole(n);
        let weighted: Vec<Rational> = {
            // k_i proportional to i, summing to (1 - n)/2
            let total: i64 = (1..=n as i64).sum();
            (1..=n as i64)
                .map(|i| rat((1 - n as i64) * i, 2 * total))
                .collect()
        };
        let ks = [
            default_multiplicities(&whole),
            alternate_multiplicities(&whole),
            Multiplicities::new(weighted),
        ];
        for k in &ks {
            ensure!(
                crate::spaces::is_admissible(&whole, k),
                "k = {k} not admissible"
            );
            let m = build_reflection_matrix(k, None).map_err(|e| e.to_string())?;
            let report = verify_perron(&m);
            ensure!(report.passed(), "n = {n}, k = {k}: {:?}", report.failures);
            ensure!(
                report.rank_i_minus_a == (1 << (n - 1)) - 1,
                "n = {n}: wrong rank"
            );
            count += 1;
        }
    }
    Ok(format!(
        "{count} matrices symmetric, doubly stochastic, irreducible, rank(I - A) = 2^(n-1) - 1"
    ))
}

/// Forward direction: both spherical values are functions of `x_0`, `x_{A^c}` and `q_A`,
/// the odd one vanishes with `x̲_A`, and `q_A f = q_A G_0 - x̲_A G_1`.
fn check_even_odd(a: IndexSet, f: &Poly) -> Result<(), String> {
    let g0 = f.spherical_value(a).map_err(|e| e.to_string())?;
    let g1 = f.imag_weighted_value(a).map_err(|e| e.to_string())?;
    let idx = a.to_vec();
    for (name, g) in [("even", &g0), ("odd", &g1)] {
        for &i in &idx {
            ensure!(g.reflect(i) == *g, "{name} part not invariant under r_{i}");
        }
        for (p, &i) in idx.iter().enumerate() {
            for &j in &idx[p + 1..] {
                ensure!(
                    angular(g, i, j).is_zero(),
                    "{name} part not rotation invariant in ({i},{j})"
                );
            }
        }
    }
    ensure!(
        g1.terms().all(|(m, _)| m.degree_in(a) > 0),
        "odd part does not vanish at beta = 0"
    );
    let q = RealPoly::square_norm(f.nvars(), a);
    ensure!(
        f.real_mul(&q) == &g0.real_mul(&q) - &g1.imaginary_mul(a),
        "f is not F_0 + J F_1"
    );
    Ok(())
}

fn kernel_sa(opts: &Options) -> Outcome {
    let configs = [
        (H, set(&[1, 2, 3])),
        (H, set(&[2, 3])),
        (CL4, set(&[2, 3, 4])),
    ];
    let mut s = Sampler::new(opts.seed ^ 0x5a);
    let (mut forward, mut converse, mut nested) = (0, 0, 0);
    for (spec, a) in configs {
        let fr = frame(spec);
        let n = fr.n();
        let k = set_multiplicities(n, a);
        let mut kernel = Vec::new();
        for idx in 0..10 {
            let f = match idx % 3 {
                0 => s.fa_member(&fr, a, 3),
                1 => s.slice_poly(&fr, 3, 3),
                _ => {
                    let mut blocks = vec![a];
                    blocks.extend(
                        IndexSet::full(n)
                            .difference(a)
                            .iter()
                            .map(IndexSet::singleton),
                    );
                    s.p_slice_poly(
                        &fr,
                        &Partition::new(n, blocks).map_err(|e| e.to_string())?,
                        3,
                    )
                }
            };
            ensure!(
                script_s_a(&k, a, &f).is_zero(),
                "{spec} A = {a}: forward sample {idx} not in the kernel"
            );
            check_even_odd(a, &f).map_err(|e| format!("{spec} A = {a}, sample {idx}: {e}"))?;
            forward += 1;
            kernel.push(f);
        }
        for idx in 0..10 {
            let f = s.a_slice_poly(&fr, a, 4);
            ensure!(
                script_s_a(&k, a, &f).is_zero(),
                "{spec} A = {a}: synthesized form {idx} not in the kernel"
            );
            converse += 1;
            kernel.push(f);
        }
        for b in (1..(1u64 << n))
            .map(IndexSet::from_bits)
            .filter(|b| b.is_subset(a))
        {
            let kb = set_multiplicities(n, b);
            for (idx, f) in kernel.iter().enumerate() {
                ensure!(
                    script_s_a(&kb, b, f).is_zero(),
                    "{spec}: kernel of A = {a} not inside B = {b} ({idx})"
                );
                nested += 1;
            }
        }
    }
    Ok(format!(
        "{forward} forward decompositions, {converse} converse forms, {nested} nesting checks"
    ))
}

fn kernel_sp(opts: &Options) -> Outcome {
    let configs = [(H, "{1,2,3}"), (H, "{1|2,3}"), (CL4, "{1,2|3,4}")];
    let mut s = Sampler::new(opts.seed ^ 0x5b);
    let mut points = 0;
    for (spec, p) in configs {
        let fr = frame(spec);
        let p = part(p);
        let k = default_multiplicities(&p);
        let mut funcs: Vec<Poly> = (0..3).map(|_| s.p_slice_poly(&fr, &p, 4)).collect();
        funcs.push(s.fp_member(&fr, &p, 3));
        for (idx, f) in funcs.iter().enumerate() {
            ensure!(
                script_s_p(&k, &p, f).iter().all(|t| t.is_zero()),
                "{spec} {p}: sample {idx} not in the kernel"
            );
            p_slice_components(&p, f).map_err(|e| format!("{spec} {p}: {e}"))?;
        }
        for idx in 0..20 {
            let f = &funcs[idx % funcs.len()];
            let pt = block_point(&fr, &p, &mut s);
            let r = reconstruct_p_slice_at(&p, f, &pt).map_err(|e| format!("{spec} {p}: {e}"))?;
            ensure!(r.reconstructed, "{spec} {p}: point {idx} not reconstructed");
            ensure!(
                r.antisymmetric,
                "{spec} {p}: point {idx} violates the stem symmetry"
            );
            points += 1;
        }
    }
    Ok(format!(
        "{points} points reconstructed exactly over 3 (algebra, P) pairs"
    ))
}

fn slice_restriction(opts: &Options) -> Outcome {
    let configs = [
        (H, set(&[2, 3])),
        (CL4, set(&[3, 4])),
        (O, set(&[3, 4, 5, 6, 7])),
    ];
    let mut s = Sampler::new(opts.seed ^ 0x5c);
    let mut checks = 0;
    for (spec, a) in configs {
        let fr = frame(spec);
        let k = set_multiplicities(fr.n(), a);
        let members: Vec<Poly> = (0..3).map(|_| s.fa_member(&fr, a, 3)).collect();
        for (idx, f) in members.iter().enumerate() {
            ensure!(
                membership_a(&k, a, f).map_err(|e| e.to_string())?.member,
                "{spec} A = {a}: sample {idx} not a member"
            );
        }
        let first = a.min_index().expect("nonempty");
        let control = Poly::term(
            &fr,
            Monomial::var(fr.n() + 1, first),
            fr.unit(first).clone(),
        );
        let mut control_nonzero = false;
        for jdx in 0..10 {
            let j = rational_sphere_point(a.len(), &mut s);
            for (idx, f) in members.iter().enumerate() {
                let r = restrict_to_slice(f, a, &j).map_err(|e| e.to_string())?;
                ensure!(
                    dbar_j(&r).is_zero(),
                    "{spec} A = {a}: sample {idx} not monogenic on slice {jdx}"
                );
                checks += 1;
            }
            let r = restrict_to_slice(&control, a, &j).map_err(|e| e.to_string())?;
            control_nonzero |= !dbar_j(&r).is_zero();
        }
        ensure!(
            control_nonzero,
            "{spec} A = {a}: control v x restricts to monogenic functions"
        );
    }
    Ok(format!(
        "{checks} restrictions monogenic; controls rejected"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass() {
        let results = run_criteria(Some("census"), &Options::default());
        assert_eq!(results.len(), 1);
        assert!(results[0].passed, "{}", results[0].line());
    }

    #[test]
    fn sabotage_is_detected() {
        let opts = Options {
            sabotage: true,
            ..Options::default()
        };
        let results = run_criteria(Some("algebra"), &opts);
        assert!(!results[0].passed);
    }
}
