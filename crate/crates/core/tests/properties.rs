use dunkl_core::algebra::{make_algebra, AlgebraSpec, Frame};
use dunkl_core::document::parse_poly;
use dunkl_core::index_set::IndexSet;
use dunkl_core::operators::{
    casimir_a, dunkl_cr, dunkl_dirac, dunkl_dirac_a, dunkl_laplacian, gamma_tilde_a, s_dprime_a,
    s_prime_a, s_tilde_a, script_s_a, Multiplicities,
};
use dunkl_core::partition::{bell_number, enumerate_partitions};
use dunkl_core::pointcheck::check_difference_at;
use dunkl_core::polynomial::{slice_power_poly, slice_power_poly_in, Poly};
use dunkl_core::samples::{fueter_pair, Sampler};
use dunkl_core::scalar::{int, rat, Rational};
use dunkl_core::spaces::{default_multiplicities, is_admissible, membership_a, Verdict};
use dunkl_core::spectral::{build_reflection_matrix, verify_perron};
use num_traits::Zero;
use proptest::prelude::*;

fn frame(spec: AlgebraSpec) -> Frame {
    make_algebra(spec).1
}

fn frames() -> Vec<Frame> {
    vec![
        frame(AlgebraSpec::Quaternions),
        frame(AlgebraSpec::Clifford(4)),
        frame(AlgebraSpec::Octonions),
    ]
}

fn random_k(s: &mut Sampler, n: usize) -> Multiplicities {
    Multiplicities::new((0..n).map(|_| s.rational()).collect())
}

fn k_for_set(n: usize, a: IndexSet) -> Multiplicities {
    let v = rat(-1, 2) + rat(1, 2 * a.len() as i64);
    Multiplicities::new(
        (1..=n)
            .map(|i| if a.contains(i) { v.clone() } else { int(0) })
            .collect(),
    )
}

fn member(v: Result<Verdict, impl std::fmt::Debug>) -> bool {
    v.unwrap().member
}

/// Degree 4 on H and Cl(0,4), degree 2 on O.
fn sample(seed: u64) -> (Frame, Poly, Sampler) {
    let mut s = Sampler::new(seed);
    let fs = frames();
    let fr = fs[s.below(3)].clone();
    let deg = if fr.n() == 7 { 2 } else { 4 };
    let f = s.poly(&fr, deg, 4);
    (fr, f, s)
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(24)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn inverse_cancels(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for fr in frames() {
            let coords: Vec<Rational> = (0..=fr.n()).map(|_| s.rational()).collect();
            let x = fr.span_element(&coords);
            prop_assume!(!x.is_zero());
            let inv = fr.inverse(&x).unwrap();
            for _ in 0..5 {
                let a = s.element(&fr);
                prop_assert_eq!(fr.mul(&x, &fr.mul(&inv, &a)), a);
            }
        }
    }

    #[test]
    fn power_is_nested_product(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for fr in [frame(AlgebraSpec::Quaternions), frame(AlgebraSpec::Octonions)] {
            let coords: Vec<Rational> = (0..=fr.n()).map(|_| s.rational()).collect();
            let x = fr.span_element(&coords);
            let mut acc = fr.algebra().one();
            for k in 0..=6 {
                prop_assert_eq!(fr.power(&x, k).unwrap(), acc.clone());
                acc = fr.mul(&acc, &x);
            }
        }
    }

    #[test]
    fn slice_power_matches_algebra_power(seed in any::<u64>(), j in 0u32..5, k in 0u32..4) {
        let mut s = Sampler::new(seed);
        for fr in frames() {
            let p: Vec<Rational> = (0..=fr.n()).map(|_| s.rational()).collect();
            let x = fr.span_element(&p);
            prop_assert_eq!(slice_power_poly(&fr, j + k).eval(&p), fr.power(&x, j + k).unwrap());
        }
    }

    #[test]
    fn reflections_and_partials(seed in any::<u64>()) {
        let (fr, f, _) = sample(seed);
        for i in 0..=fr.n() {
            if i > 0 {
                prop_assert_eq!(f.reflect(i).reflect(i), f.clone());
                prop_assert_eq!(f.reflect(i).partial(i), -f.partial(i).reflect(i));
            }
            for j in 1..=fr.n() {
                if i != j {
                    prop_assert_eq!(f.partial(i).reflect(j), f.reflect(j).partial(i));
                }
            }
        }
    }

    #[test]
    fn divide_by_variable(seed in any::<u64>(), i in 1usize..4) {
        let (_, f, _) = sample(seed);
        let odd = &f - &f.reflect(i);
        let q = odd.divide_by_xi(i).unwrap();
        prop_assert_eq!(q.mul_var(i), odd);
    }

    #[test]
    fn units_anticommute_on_polys(seed in any::<u64>()) {
        let (fr, f, _) = sample(seed);
        for i in 1..=fr.n() {
            for j in (i + 1)..=fr.n() {
                prop_assert_eq!(f.left_unit(j).left_unit(i), -f.left_unit(i).left_unit(j));
            }
        }
    }

    #[test]
    fn casimir_commutations(seed in any::<u64>()) {
        let (fr, f, mut s) = sample(seed);
        let full = IndexSet::full(fr.n());
        let k = random_k(&mut s, fr.n());
        let sc = |g: &Poly| casimir_a(&k, full, g);
        let gt = |g: &Poly| gamma_tilde_a(&k, full, g);
        let d = |g: &Poly| dunkl_dirac(&k, g);
        let x = |g: &Poly| g.imaginary_mul(full);
        let r = |g: &Poly| g.reflect_set(full);
        prop_assert!((&sc(&d(&f)) + &d(&sc(&f))).is_zero());
        prop_assert!((&sc(&x(&f)) + &x(&sc(&f))).is_zero());
        prop_assert_eq!(gt(&d(&f)), d(&gt(&f)));
        prop_assert_eq!(gt(&x(&f)), x(&gt(&f)));
        prop_assert!((&d(&r(&f)) + &r(&d(&f))).is_zero());
        // r flips the sign of both x̲ and D̲, so it commutes with S rather than anticommuting
        prop_assert_eq!(sc(&r(&f)), r(&sc(&f)));
        prop_assert!((&x(&r(&f)) + &r(&x(&f))).is_zero());
        prop_assert_eq!(r(&f.euler(full)), r(&f).euler(full));
    }

    #[test]
    fn casimir_bracket_form(seed in any::<u64>(), which in 0usize..3) {
        let (fr, f, _) = sample(seed);
        let n = fr.n();
        let a = [IndexSet::full(n), IndexSet::from_indices(&[2, 3]), IndexSet::singleton(1)][which];
        let k = k_for_set(n, a);
        let expected = &dunkl_dirac_a(&k, a, &f).imaginary_mul(a) + &f.euler(a);
        prop_assert_eq!(casimir_a(&k, a, &f), expected);
    }

    #[test]
    fn disjoint_blocks_commute(seed in any::<u64>(), which in 0usize..2) {
        let (fr, f, mut s) = sample(seed);
        let (a, b) = [
            (IndexSet::singleton(1), IndexSet::singleton(2)),
            (IndexSet::singleton(1), IndexSet::from_indices(&[2, 3])),
        ][which];
        let k = random_k(&mut s, fr.n());
        let xa = |g: &Poly| g.imaginary_mul(a);
        let xb = |g: &Poly| g.imaginary_mul(b);
        let da = |g: &Poly| dunkl_dirac_a(&k, a, g);
        let db = |g: &Poly| dunkl_dirac_a(&k, b, g);
        let anti = |p: &dyn Fn(&Poly) -> Poly, q: &dyn Fn(&Poly) -> Poly| (&p(&q(&f)) + &q(&p(&f))).is_zero();
        let comm = |p: &dyn Fn(&Poly) -> Poly, q: &dyn Fn(&Poly) -> Poly| p(&q(&f)) == q(&p(&f));
        let ea = |g: &Poly| g.euler(a);
        let sa = |g: &Poly| casimir_a(&k, a, g);
        let sta = |g: &Poly| s_tilde_a(&k, a, g);
        let star = |g: &Poly| s_tilde_a(&k, a, &g.reflect_set(a));
        let spa = |g: &Poly| s_prime_a(&k, a, g);
        let sdpa = |g: &Poly| s_dprime_a(&k, a, g);
        prop_assert!(anti(&xa, &xb));
        prop_assert!(comm(&ea, &xb));
        prop_assert!(anti(&da, &xb));
        prop_assert!(comm(&sa, &xb));
        prop_assert!(anti(&da, &db));
        prop_assert!(comm(&sa, &db));
        prop_assert!(comm(&sta, &xb));
        prop_assert!(comm(&star, &xb));
        prop_assert!(comm(&spa, &xb));
        prop_assert!(anti(&sdpa, &xb));
        prop_assert_eq!(script_s_a(&k, a, &f.reflect_set(b)), {
            let t = script_s_a(&k, a, &f);
            dunkl_core::operators::ScriptS {
                casimir: t.casimir.reflect_set(b),
                prime: t.prime.reflect_set(b),
                dprime: t.dprime.reflect_set(b),
            }
        });
    }

    #[test]
    fn laplacian_factorizes(seed in any::<u64>()) {
        let (fr, f, mut s) = sample(seed);
        let k = random_k(&mut s, fr.n());
        let inner = &f.partial(0) - &dunkl_dirac(&k, &f);
        prop_assert_eq!(dunkl_cr(&k, &inner), dunkl_laplacian(&k, &f));
    }

    #[test]
    fn slice_polys_in_every_kernel(seed in any::<u64>()) {
        let fr = frame(AlgebraSpec::Quaternions);
        let mut s = Sampler::new(seed);
        let f = s.slice_poly(&fr, 4, 3);
        for bits in 1..8u64 {
            let a = IndexSet::from_bits(bits);
            prop_assert!(script_s_a(&k_for_set(3, a), a, &f).is_zero());
        }
    }

    #[test]
    fn kernels_nest(seed in any::<u64>()) {
        let fr = frame(AlgebraSpec::Clifford(4));
        let mut s = Sampler::new(seed);
        let a = IndexSet::from_bits(1 + s.below(15) as u64);
        let f = s.a_slice_poly(&fr, a, 3);
        prop_assert!(script_s_a(&k_for_set(4, a), a, &f).is_zero());
        for bits in 1..16u64 {
            let b = IndexSet::from_bits(bits);
            if b.is_subset(a) {
                prop_assert!(script_s_a(&k_for_set(4, b), b, &f).is_zero());
            }
        }
    }

    #[test]
    fn restrictions_are_members(seed in any::<u64>()) {
        let fr = frame(AlgebraSpec::Clifford(4));
        let mut s = Sampler::new(seed);
        let a = IndexSet::from_indices(&[2, 3]);
        let k = k_for_set(4, a);
        let sr = (0..3).fold(Poly::zero(&fr), |acc, j| {
            &acc + &slice_power_poly_in(&fr, a, j).right_scale(&s.element(&fr))
        });
        prop_assert!(member(membership_a(&k, a, &sr)));
        let mono = [1usize, 4].iter().fold(Poly::zero(&fr), |acc, &j| {
            &acc + &fueter_pair(&fr, j).right_scale(&s.element(&fr))
        });
        prop_assert!(member(membership_a(&k, a, &mono)));
    }

    #[test]
    fn difference_formula_off_axis(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for fr in frames() {
            let f = s.slice_regular_poly(&fr, 4);
            let mut p: Vec<Rational> = (0..=fr.n()).map(|_| s.rational()).collect();
            p[1] = s.nonzero_rational();
            prop_assert!(check_difference_at(&f, &p).unwrap());
        }
    }

    #[test]
    fn every_admissible_weighting_passes_perron(ws in prop::collection::vec(0i64..6, 3..=5)) {
        let n = ws.len();
        prop_assume!(ws.iter().filter(|w| **w == 0).count() <= 1);
        let total: i64 = ws.iter().sum();
        let k = Multiplicities::new(ws.iter().map(|w| rat(-(n as i64 - 1) * w, 2 * total)).collect());
        prop_assert!(is_admissible(&dunkl_core::partition::Partition::whole(n), &k));
        let mut built = 0;
        for i0 in 1..=n {
            if let Ok(m) = build_reflection_matrix(&k, Some(i0)) {
                let r = verify_perron(&m);
                prop_assert!(r.passed(), "{:?}", r.failures);
                prop_assert_eq!(r.rank_i_minus_a + 1, 1 << (n - 1));
                built += 1;
            }
        }
        prop_assert!(built >= 1);
    }

    #[test]
    fn canonical_text_round_trips(seed in any::<u64>()) {
        let (fr, f, _) = sample(seed);
        prop_assert_eq!(parse_poly(&fr, &f.to_string()).unwrap(), f);
    }
}

#[test]
fn default_multiplicities_are_admissible() {
    for n in 1..=5 {
        let mut count = 0;
        for p in enumerate_partitions(n) {
            assert!(is_admissible(&p, &default_multiplicities(&p)), "{p}");
            count += 1;
        }
        assert_eq!(count as u128, bell_number(n));
    }
}

#[test]
fn kappa_of_default_is_half_minus_n() {
    let k = default_multiplicities(&dunkl_core::partition::Partition::whole(4));
    assert_eq!(k.gamma(), rat(1, 2));
    assert!(!k.kappa().is_zero());
}

#[test]
fn casimir_does_not_anticommute_with_r() {
    // S 1 = γ - 1/2, so {S, r} 1 = 2γ - 1
    let fr = frame(AlgebraSpec::Quaternions);
    let k = Multiplicities::new(vec![rat(-1, 2); 3]);
    let one = Poly::constant(&fr, fr.algebra().one());
    let s1 = casimir_a(&k, IndexSet::full(3), &one);
    assert_eq!(s1, one.scale(&(k.gamma() - rat(1, 2))));
    assert!(!(&s1 + &s1.reflect_set(IndexSet::full(3))).is_zero());
}
