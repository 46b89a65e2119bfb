//! Seeded generators for test polynomials.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, Frame};
use crate::index_set::IndexSet;
use crate::partition::Partition;
use crate::polynomial::{
    slice_power_poly, slice_power_poly_in, xbar_power_times, Monomial, Poly, RealPoly,
};
use crate::scalar::{rat, Rational};

/// Deterministic source of random rationals, elements and polynomials.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn range(&mut self, lo: u32, hi: u32) -> u32 {
        self.rng.gen_range(lo..=hi)
    }

    /// `p/q` with `|p| <= 5`, `1 <= q <= 3`.
    pub fn rational(&mut self) -> Rational {
        rat(self.rng.gen_range(-5..=5), self.rng.gen_range(1..=3))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != Rational::from_integer(0.into()) {
                return r;
            }
        }
    }

    /// A nonzero element supported on one to three basis directions.
    pub fn element(&mut self, frame: &Frame) -> Element {
        let dim = frame.dim();
        let mut e = Element::zero(dim);
        let count = self.rng.gen_range(1..=3.min(dim));
        for _ in 0..count {
            let i = self.below(dim);
            let r = self.nonzero_rational();
            e.add_scaled(&Element::basis(dim, i), &r);
        }
        if e.is_zero() {
            Element::basis(dim, self.below(dim))
        } else {
            e
        }
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut sigma: Vec<usize> = (1..=n).collect();
        sigma.shuffle(&mut self.rng);
        sigma
    }

    /// Random monomial of total degree at most `max_deg` in the listed variables.
    fn monomial(&mut self, nvars: usize, vars: &[usize], max_deg: u32) -> Monomial {
        let mut e = vec![0u32; nvars];
        let deg = self.range(0, max_deg);
        for _ in 0..deg {
            if vars.is_empty() {
                break;
            }
            e[vars[self.below(vars.len())]] += 1;
        }
        Monomial::new(e)
    }

    /// Generic polynomial with up to `terms` terms of degree at most `max_deg`.
    pub fn poly(&mut self, frame: &Frame, max_deg: u32, terms: usize) -> Poly {
        let nvars = frame.n() + 1;
        let vars: Vec<usize> = (0..nvars).collect();
        let mut f = Poly::zero(frame);
        for _ in 0..terms {
            let m = self.monomial(nvars, &vars, max_deg);
            let a = self.element(frame);
            f.add_term(m, &a);
        }
        f
    }

    /// Real polynomial in `x_0`, the listed variables and the square norms `q_B`.
    fn real_poly(
        &mut self,
        nvars: usize,
        vars: &[usize],
        norms: &[IndexSet],
        max_deg: u32,
        terms: usize,
    ) -> RealPoly {
        let mut out = RealPoly::zero(nvars);
        for _ in 0..terms {
            let mut term = RealPoly::constant(nvars, self.nonzero_rational());
            let mut budget = self.range(0, max_deg);
            while budget > 0 {
                let choice = self.below(1 + vars.len() + norms.len());
                if choice == 0 {
                    term = &term * &RealPoly::var(nvars, 0);
                    budget -= 1;
                } else if choice <= vars.len() {
                    term = &term * &RealPoly::var(nvars, vars[choice - 1]);
                    budget -= 1;
                } else if budget >= 2 {
                    term = &term * &RealPoly::square_norm(nvars, norms[choice - 1 - vars.len()]);
                    budget -= 2;
                } else {
                    budget -= 1;
                }
            }
            out = &out + &term;
        }
        out
    }

    /// `sum x_0^m x̲^l a_{m,l}` with `m + l <= max_deg`.
    pub fn slice_poly(&mut self, frame: &Frame, max_deg: u32, terms: usize) -> Poly {
        let full = IndexSet::full(frame.n());
        let mut f = Poly::zero(frame);
        for _ in 0..terms {
            let total = self.range(0, max_deg);
            let l = self.range(0, total);
            let a = self.element(frame);
            let x0m = RealPoly::var(frame.n() + 1, 0).pow(total - l);
            f = &f + &xbar_power_times(frame, full, l, &a).real_mul(&x0m);
        }
        f
    }

    /// A slice polynomial plus `x_i a`, which is never slice when `n >= 2`.
    pub fn non_slice_poly(&mut self, frame: &Frame, max_deg: u32, terms: usize) -> Poly {
        let base = self.slice_poly(frame, max_deg, terms);
        let i = 1 + self.below(frame.n());
        let a = self.element(frame);
        &base + &Poly::term(frame, Monomial::var(frame.n() + 1, i), a)
    }

    /// `sum_{j <= max_deg} x^j a_j` with some coefficients zero.
    pub fn slice_regular_poly(&mut self, frame: &Frame, max_deg: u32) -> Poly {
        let mut f = Poly::zero(frame);
        for j in 0..=max_deg {
            if self.below(3) == 0 {
                continue;
            }
            let a = self.element(frame);
            f = &f + &slice_power_poly(frame, j).right_scale(&a);
        }
        f
    }

    /// `p(x_0, x_{A^c}, q_A) a + x̲_A p'(x_0, x_{A^c}, q_A) b`, a member of `ker 𝒮_A`.
    pub fn a_slice_poly(&mut self, frame: &Frame, a_set: IndexSet, max_deg: u32) -> Poly {
        let n = frame.n();
        let others = IndexSet::full(n).difference(a_set).to_vec();
        let even = self.real_poly(n + 1, &others, &[a_set], max_deg, 3);
        let odd = self.real_poly(n + 1, &others, &[a_set], max_deg.saturating_sub(1), 3);
        let a = self.element(frame);
        let b = self.element(frame);
        &Poly::from_real(frame, &even, &a) + &Poly::from_real(frame, &odd, &b).imaginary_mul(a_set)
    }

    /// `sum_K x̲_{A_k1}(x̲_{A_k2}(... p_K a_K))` with `p_K` real in `x_0` and the block norms,
    /// a member of `ker 𝒮_P`.
    pub fn p_slice_poly(&mut self, frame: &Frame, p: &Partition, max_deg: u32) -> Poly {
        let n = frame.n();
        let blocks = p.blocks();
        let mut f = Poly::zero(frame);
        for mask in 0u32..(1 << blocks.len()) {
            if self.below(4) == 0 {
                continue;
            }
            let k: Vec<usize> = (0..blocks.len())
                .filter(|&b| mask & (1 << b) != 0)
                .collect();
            let budget = max_deg.saturating_sub(k.len() as u32);
            let real = self.real_poly(n + 1, &[], blocks, budget, 2);
            let a = self.element(frame);
            let mut term = Poly::from_real(frame, &real, &a);
            for &b in k.iter().rev() {
                term = term.imaginary_mul(blocks[b]);
            }
            f = &f + &term;
        }
        f
    }

    /// Right-linear combination of `(x_0 + x̲_A)^k` and `x_j - x_0 v_j` (`j` outside `A`),
    /// members of the `A`-Dunkl-regular space.
    pub fn fa_member(&mut self, frame: &Frame, a_set: IndexSet, max_deg: u32) -> Poly {
        let n = frame.n();
        let mut f = Poly::zero(frame);
        for k in 0..=max_deg {
            if self.below(3) != 0 {
                let a = self.element(frame);
                f = &f + &slice_power_poly_in(frame, a_set, k).right_scale(&a);
            }
        }
        for j in IndexSet::full(n).difference(a_set).iter() {
            if self.below(2) == 0 {
                let b = self.element(frame);
                f = &f + &fueter_pair(frame, j).right_scale(&b);
            }
        }
        f
    }

    /// Right-linear combination of powers of `x_0 + x̲_B` over the blocks `B` of `P`.
    pub fn fp_member(&mut self, frame: &Frame, p: &Partition, max_deg: u32) -> Poly {
        let mut f = Poly::zero(frame);
        for &b in p.blocks() {
            for k in 1..=max_deg {
                if self.below(2) == 0 {
                    let a = self.element(frame);
                    f = &f + &slice_power_poly_in(frame, b, k).right_scale(&a);
                }
            }
        }
        let c = self.element(frame);
        &f + &Poly::constant(frame, c)
    }
}

/// `x_j - x_0 v_j`, monogenic and independent of every other imaginary variable.
pub fn fueter_pair(frame: &Frame, j: usize) -> Poly {
    let nvars = frame.n() + 1;
    let one = frame.algebra().one();
    &Poly::term(frame, Monomial::var(nvars, j), one)
        - &Poly::term(frame, Monomial::var(nvars, 0), frame.unit(j).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_algebra, AlgebraSpec};

    #[test]
    fn seeded_and_reproducible() {
        let frame = make_algebra(AlgebraSpec::Quaternions).1;
        let a = Sampler::new(7).poly(&frame, 3, 4);
        let b = Sampler::new(7).poly(&frame, 3, 4);
        assert_eq!(a, b);
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            assert!(!s.element(&frame).is_zero());
            let r = s.rational();
            assert!(r.denom() <= &3.into());
        }
        let mut sigma = s.permutation(5);
        sigma.sort_unstable();
        assert_eq!(sigma, vec![1, 2, 3, 4, 5]);
    }
}
