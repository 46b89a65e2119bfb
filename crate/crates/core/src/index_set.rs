//! Subsets of the imaginary index range `[n] = {1, ..., n}`.

use std::fmt;
use std::str::FromStr;

/// A subset of `{1, ..., 63}` stored as a bitmask (bit `i - 1` for index `i`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(u64);

impl IndexSet {
    /// Largest admissible index.
    pub const MAX_INDEX: usize = 63;

    pub const fn empty() -> Self {
        IndexSet(0)
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::MAX_INDEX, "index set limited to 63 elements");
        if n == 0 {
            IndexSet(0)
        } else {
            IndexSet(u64::MAX >> (64 - n))
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!((1..=Self::MAX_INDEX).contains(&i), "index {i} out of range");
        IndexSet(1 << (i - 1))
    }

    /// Builds a set from 1-based indices. Panics on index 0 or > 63.
    pub fn from_indices(indices: &[usize]) -> Self {
        indices.iter().fold(IndexSet::empty(), |acc, &i| {
            acc.union(IndexSet::singleton(i))
        })
    }

    pub const fn from_bits(bits: u64) -> Self {
        IndexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=Self::MAX_INDEX).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        IndexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        IndexSet(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        IndexSet(self.0 ^ other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when every element lies in `{1, ..., n}`.
    pub fn within(self, n: usize) -> bool {
        self.is_subset(IndexSet::full(n))
    }

    /// Smallest element, if any.
    pub fn min_index(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Largest element, if any.
    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image under a map of indices.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Self {
        self.iter().fold(IndexSet::empty(), |acc, i| {
            acc.union(IndexSet::singleton(f(i)))
        })
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Parses `1,2,3` with optional surrounding braces or brackets; empty input is `{}`.
impl FromStr for IndexSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .trim_start_matches(['{', '['])
            .trim_end_matches(['}', ']'])
            .trim();
        if inner.is_empty() {
            return Ok(IndexSet::empty());
        }
        let mut set = IndexSet::empty();
        for part in inner.split(',') {
            let i: usize = part
                .trim()
                .parse()
                .map_err(|_| format!("invalid index `{}`", part.trim()))?;
            if i == 0 || i > Self::MAX_INDEX {
                return Err(format!("index {i} out of range 1..=63"));
            }
            if set.contains(i) {
                return Err(format!("index {i} repeated"));
            }
            set = set.union(IndexSet::singleton(i));
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_algebra() {
        let a = IndexSet::from_indices(&[1, 3]);
        let b = IndexSet::from_indices(&[3, 4]);
        assert_eq!(a.union(b).to_vec(), vec![1, 3, 4]);
        assert_eq!(a.intersection(b).to_vec(), vec![3]);
        assert_eq!(a.symmetric_difference(b).to_vec(), vec![1, 4]);
        assert_eq!(a.min_index(), Some(1));
        assert_eq!(b.max_index(), Some(4));
        assert!(a.within(3));
        assert!(!b.within(3));
        assert_eq!(IndexSet::full(3).len(), 3);
        assert_eq!(IndexSet::full(0), IndexSet::empty());
    }

    #[test]
    fn display_and_parse() {
        let a: IndexSet = "{2,3}".parse().unwrap();
        assert_eq!(a.to_string(), "{2,3}");
        assert_eq!("[1]".parse::<IndexSet>().unwrap(), IndexSet::singleton(1));
        assert!("1,1".parse::<IndexSet>().is_err());
        assert!("0".parse::<IndexSet>().is_err());
        assert_eq!("".parse::<IndexSet>().unwrap(), IndexSet::empty());
    }
}
