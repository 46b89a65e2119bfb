//! Set partitions of `[n]`, their enumeration and related counts.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::index_set::IndexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("blocks must be nonempty")]
    EmptyBlock,
    #[error("blocks overlap at index {0}")]
    Overlap(usize),
    #[error("blocks do not cover 1..={0}")]
    NotCovering(usize),
    #[error("invalid partition syntax: {0}")]
    Syntax(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
}

/// A partition of `{1, ..., n}` with blocks sorted by their minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<IndexSet>,
}

impl Partition {
    pub fn new(n: usize, mut blocks: Vec<IndexSet>) -> Result<Self, PartitionError> {
        let mut seen = IndexSet::empty();
        for b in &blocks {
            if b.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            let overlap = seen.intersection(*b);
            if let Some(i) = overlap.min_index() {
                return Err(PartitionError::Overlap(i));
            }
            seen = seen.union(*b);
        }
        if seen != IndexSet::full(n) {
            return Err(PartitionError::NotCovering(n));
        }
        blocks.sort_by_key(|b| b.min_index());
        Ok(Partition { n, blocks })
    }

    /// `{[n]}`.
    pub fn whole(n: usize) -> Self {
        Partition::new(n, vec![IndexSet::full(n)]).expect("single block partitions [n]")
    }

    /// `{{1}, ..., {n}}`.
    pub fn singletons(n: usize) -> Self {
        Partition::new(n, (1..=n).map(IndexSet::singleton).collect())
            .expect("singletons partition [n]")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[IndexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index (0-based) of the block containing `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(i))
            .expect("index lies in some block")
    }

    /// Block sizes in decreasing order: the integer partition of `n` this set partition induces.
    pub fn profile(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().map(|b| b.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// The partition with blocks `sigma^{-1}(A)`; `sigma` is 1-based with `sigma[i-1] = sigma(i)`.
    pub fn pull_back(&self, sigma: &[usize]) -> Partition {
        assert_eq!(sigma.len(), self.n, "permutation has wrong length");
        let blocks = self
            .blocks
            .iter()
            .map(|a| {
                (1..=self.n)
                    .filter(|&i| a.contains(sigma[i - 1]))
                    .fold(IndexSet::empty(), |acc, i| {
                        acc.union(IndexSet::singleton(i))
                    })
            })
            .collect();
        Partition::new(self.n, blocks).expect("pull-back of a partition is a partition")
    }

    /// Partition built from a fan `T = (t_0, ..., t_tau)` with `0 <= t_0 < ... < t_tau = n`:
    /// blocks `{t_{i-1}+1, ..., t_i}` plus singletons `{1}, ..., {t_0}`.
    pub fn from_fan(t: &[usize]) -> Result<Partition, PartitionError> {
        if t.len() < 2 {
            return Err(PartitionError::InvalidFan("need tau > 0".into()));
        }
        if t.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PartitionError::InvalidFan("entries must increase".into()));
        }
        let n = *t.last().expect("nonempty");
        let mut blocks: Vec<IndexSet> = t
            .windows(2)
            .map(|w| IndexSet::from_indices(&((w[0] + 1)..=w[1]).collect::<Vec<_>>()))
            .collect();
        blocks.extend((1..=t[0]).map(IndexSet::singleton));
        Partition::new(n, blocks)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, b) in self.blocks.iter().enumerate() {
            if pos > 0 {
                write!(f, "|")?;
            }
            let items: Vec<String> = b.iter().map(|i| i.to_string()).collect();
            write!(f, "{}", items.join(","))?;
        }
        write!(f, "}}")
    }
}

/// Parses `{1,2|3}`; `n` is the largest index that appears.
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(inner);
        let mut blocks = Vec::new();
        for part in inner.split('|') {
            let b: IndexSet = part.parse().map_err(PartitionError::Syntax)?;
            blocks.push(b);
        }
        let n = blocks
            .iter()
            .filter_map(|b| b.max_index())
            .max()
            .unwrap_or(0);
        Partition::new(n, blocks)
    }
}

/// All partitions of `[n]` in restricted-growth-string order.
pub fn enumerate_partitions(n: usize) -> impl Iterator<Item = Partition> {
    let mut rgs: Option<Vec<usize>> = (n >= 1).then(|| vec![0; n]);
    std::iter::from_fn(move || {
        let current = rgs.clone()?;
        rgs = next_rgs(&current);
        Some(partition_from_rgs(&current))
    })
}

fn partition_from_rgs(rgs: &[usize]) -> Partition {
    let nblocks = rgs.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![IndexSet::empty(); nblocks];
    for (i, &b) in rgs.iter().enumerate() {
        blocks[b] = blocks[b].union(IndexSet::singleton(i + 1));
    }
    Partition::new(rgs.len(), blocks).expect("restricted growth strings describe partitions")
}

fn next_rgs(rgs: &[usize]) -> Option<Vec<usize>> {
    let n = rgs.len();
    let mut next = rgs.to_vec();
    for i in (1..n).rev() {
        let prefix_max = next[..i].iter().copied().max().unwrap_or(0);
        if next[i] <= prefix_max {
            next[i] += 1;
            for x in next.iter_mut().skip(i + 1) {
                *x = 0;
            }
            return Some(next);
        }
    }
    None
}

/// Bell numbers via the Bell triangle.
pub fn bell_number(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty row")];
        for &x in &row {
            let last = *next.last().expect("nonempty row");
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

/// Number of integer partitions of `n`.
pub fn integer_partition_count(n: usize) -> u128 {
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            ways[total] += ways[total - part];
        }
    }
    ways[n]
}

/// Enumerated counts for one `n`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Census {
    pub n: usize,
    /// Number of set partitions (enumerated).
    pub bell: u128,
    /// Number of distinct block-size profiles among them.
    pub integer_partitions: u128,
    /// Number of distinct spaces indexed by subsets, `2^n - n`.
    pub subset_spaces: u128,
}

/// Counts by enumeration; [`bell_number`] and [`integer_partition_count`] are independent oracles.
pub fn census(n: usize) -> Census {
    let mut bell = 0u128;
    let mut profiles = std::collections::BTreeSet::new();
    for p in enumerate_partitions(n) {
        bell += 1;
        profiles.insert(p.profile());
    }
    // nonempty subsets, with all singletons giving the same space
    let nonempty = (1u128 << n) - 1;
    let subset_spaces = nonempty - n as u128 + 1;
    Census {
        n,
        bell,
        integer_partitions: profiles.len() as u128,
        subset_spaces,
    }
}
