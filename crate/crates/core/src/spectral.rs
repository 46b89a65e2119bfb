//! The reflection matrix whose all-ones Perron eigenvector forces reflection invariance,
//! with an exact verification of its spectral properties.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::operators::Multiplicities;
use crate::scalar::{common_denominator, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("the reflection matrix needs n >= 3, got {0}")]
    TooSmall(usize),
    #[error("multiplicities sum to zero")]
    ZeroSum,
    #[error("excluded index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("excluded index {i0} leaves the non-positive weight alpha_{bad}")]
    BadExcludedIndex { i0: usize, bad: usize },
}

/// Square matrix indexed by subsets `H` of `[n] ∖ {i0}` in binary order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionMatrix {
    pub n: usize,
    pub i0: usize,
    pub alpha: Vec<Rational>,
    pub entries: Vec<Vec<Rational>>,
}

impl ReflectionMatrix {
    pub fn order(&self) -> usize {
        self.entries.len()
    }

    /// Any square matrix, for negative controls.
    pub fn from_raw(n: usize, i0: usize, entries: Vec<Vec<Rational>>) -> Self {
        ReflectionMatrix {
            n,
            i0,
            alpha: Vec::new(),
            entries,
        }
    }
}

/// `α_i = k_i / sum k_j`.
pub fn weights(k: &Multiplicities) -> Result<Vec<Rational>, SpectralError> {
    let kappa = k.kappa();
    if kappa.is_zero() {
        return Err(SpectralError::ZeroSum);
    }
    Ok(k.as_slice().iter().map(|ki| ki / &kappa).collect())
}

/// `n` unless some weight vanishes, in which case the (first) vanishing index.
pub fn default_excluded_index(k: &Multiplicities) -> Result<usize, SpectralError> {
    let alpha = weights(k)?;
    Ok(alpha
        .iter()
        .position(|a| *a <= Rational::zero())
        .map_or(k.n(), |i| i + 1))
}

/// Row `H` carries `α_i` at `H Δ {i}` for `i ≠ i0`; the `i0` reflection is folded through
/// the full reflection onto the complement `([n] ∖ {i0}) ∖ H`.
pub fn build_reflection_matrix(
    k: &Multiplicities,
    i0: Option<usize>,
) -> Result<ReflectionMatrix, SpectralError> {
    let n = k.n();
    if n < 3 {
        return Err(SpectralError::TooSmall(n));
    }
    let alpha = weights(k)?;
    let i0 = match i0 {
        Some(i) => i,
        None => default_excluded_index(k)?,
    };
    if i0 == 0 || i0 > n {
        return Err(SpectralError::IndexOutOfRange(i0));
    }
    if let Some(bad) = (1..=n).find(|&i| i != i0 && alpha[i - 1] <= Rational::zero()) {
        return Err(SpectralError::BadExcludedIndex { i0, bad });
    }
    // bit positions of the indices other than i0
    let others: Vec<usize> = (1..=n).filter(|&i| i != i0).collect();
    let order = 1usize << others.len();
    let all = order - 1;
    let mut entries = vec![vec![Rational::zero(); order]; order];
    for (h, row) in entries.iter_mut().enumerate() {
        for (bit, &i) in others.iter().enumerate() {
            row[h ^ (1 << bit)] += &alpha[i - 1];
        }
        row[all & !h] += &alpha[i0 - 1];
    }
    Ok(ReflectionMatrix {
        n,
        i0,
        alpha,
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerronReport {
    pub order: usize,
    pub symmetric: bool,
    pub doubly_stochastic: bool,
    pub irreducible: bool,
    pub rank_i_minus_a: usize,
    pub ones_in_kernel: bool,
    pub failures: Vec<String>,
}

impl PerronReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_perron(m: &ReflectionMatrix) -> PerronReport {
    let a = &m.entries;
    let order = a.len();
    let mut failures = Vec::new();
    let square = a.iter().all(|row| row.len() == order);
    if !square {
        failures.push("matrix is not square".to_string());
        return PerronReport {
            order,
            symmetric: false,
            doubly_stochastic: false,
            irreducible: false,
            rank_i_minus_a: 0,
            ones_in_kernel: false,
            failures,
        };
    }
    let symmetric = (0..order).all(|i| (0..i).all(|j| a[i][j] == a[j][i]));
    if !symmetric {
        failures.push("not symmetric".into());
    }
    let one = Rational::one();
    let nonnegative = a.iter().flatten().all(|x| *x >= Rational::zero());
    let rows_ok = a.iter().all(|row| row.iter().sum::<Rational>() == one);
    let cols_ok = (0..order).all(|j| a.iter().map(|row| &row[j]).sum::<Rational>() == one);
    let doubly_stochastic = nonnegative && rows_ok && cols_ok;
    if !doubly_stochastic {
        failures.push("not doubly stochastic".into());
    }
    let irreducible = connected(a);
    if !irreducible {
        failures.push("nonzero pattern is disconnected".into());
    }
    let i_minus_a: Vec<Vec<Rational>> = (0..order)
        .map(|i| {
            (0..order)
                .map(|j| {
                    if i == j {
                        &one - &a[i][j]
                    } else {
                        -a[i][j].clone()
                    }
                })
                .collect()
        })
        .collect();
    let ones_in_kernel = i_minus_a
        .iter()
        .all(|row| row.iter().sum::<Rational>().is_zero());
    if !ones_in_kernel {
        failures.push("(I - A) 1 != 0".into());
    }
    let rank_i_minus_a = rank(&i_minus_a);
    if rank_i_minus_a + 1 != order {
        failures.push(format!(
            "rank(I - A) = {rank_i_minus_a}, expected {}",
            order.saturating_sub(1)
        ));
    }
    PerronReport {
        order,
        symmetric,
        doubly_stochastic,
        irreducible,
        rank_i_minus_a,
        ones_in_kernel,
        failures,
    }
}

/// Breadth-first search on the graph with an edge wherever `a_ij != 0` or `a_ji != 0`.
fn connected(a: &[Vec<Rational>]) -> bool {
    let order = a.len();
    if order == 0 {
        return true;
    }
    let mut seen = vec![false; order];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for j in 0..order {
            if !seen[j] && (!a[i][j].is_zero() || !a[j][i].is_zero()) {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Exact rank by Bareiss fraction-free elimination after clearing denominators row by row.
pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let d = common_denominator(row.iter());
            row.iter()
                .map(|x| (x * Rational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = &rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j];
                rows[i][j] = v / &prev;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn k(values: &[Rational]) -> Multiplicities {
        Multiplicities::new(values.to_vec())
    }

    #[test]
    fn equal_weights_n3() {
        let m = build_reflection_matrix(&k(&[rat(-1, 3), rat(-1, 3), rat(-1, 3)]), None).unwrap();
        assert_eq!(m.i0, 3);
        assert_eq!(m.order(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { int(0) } else { rat(1, 3) };
                assert_eq!(m.entries[i][j], expected);
            }
        }
        let r = verify_perron(&m);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.rank_i_minus_a, 3);
    }

    #[test]
    fn vanishing_weight_n3() {
        let kk = k(&[int(0), rat(-1, 2), rat(-1, 2)]);
        assert!(matches!(
            build_reflection_matrix(&kk, Some(3)),
            Err(SpectralError::BadExcludedIndex { i0: 3, bad: 1 })
        ));
        let m = build_reflection_matrix(&kk, None).unwrap();
        assert_eq!(m.i0, 1);
        assert_eq!(m.alpha, vec![int(0), rat(1, 2), rat(1, 2)]);
        assert!(verify_perron(&m).passed());
    }

    #[test]
    fn default_n4() {
        let m = build_reflection_matrix(&k(&vec![rat(-3, 8); 4]), None).unwrap();
        assert_eq!(m.order(), 8);
        let r = verify_perron(&m);
        assert!(r.passed());
        assert_eq!(r.rank_i_minus_a, 7);
    }

    #[test]
    fn reducible_matrix_is_flagged() {
        let half = rat(1, 2);
        let z = int(0);
        let block = vec![
            vec![z.clone(), half.clone(), half.clone(), z.clone()],
            vec![half.clone(), z.clone(), half.clone(), z.clone()],
            vec![half.clone(), half.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), int(1)],
        ];
        let r = verify_perron(&ReflectionMatrix::from_raw(3, 3, block));
        assert!(!r.irreducible);
        assert!(!r.passed());
        assert_eq!(r.rank_i_minus_a, 2);
    }

    #[test]
    fn errors() {
        assert_eq!(
            build_reflection_matrix(&k(&vec![rat(-1, 4); 2]), None),
            Err(SpectralError::TooSmall(2))
        );
        assert_eq!(
            build_reflection_matrix(&k(&vec![int(0); 3]), None),
            Err(SpectralError::ZeroSum)
        );
        assert_eq!(
            build_reflection_matrix(&k(&vec![rat(-1, 3); 3]), Some(4)),
            Err(SpectralError::IndexOutOfRange(4))
        );
    }

    #[test]
    fn rank_oracle() {
        let m = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![rat(1, 2), int(0), int(1)],
        ];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&[vec![int(0), int(0)]]), 0);
    }
}
