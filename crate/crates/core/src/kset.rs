//! Vertex subsets of `[1..=64]` packed into a single machine word.
//!
//! Vertex `i` occupies bit `i - 1`. Because the highest differing element
//! decides colexicographic order, comparing two masks of equal cardinality
//! as integers is exactly colex comparison; `Ord` is derived from the word.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{range_err, Result};

/// Largest supported ground set.
pub const MAX_VERTICES: usize = 64;

/// Serialized as the ascending list of its vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct KSet(u64);

impl Serialize for KSet {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for KSet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(de)?;
        KSet::from_vertices(labels).map_err(serde::de::Error::custom)
    }
}

impl KSet {
    pub const EMPTY: KSet = KSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        KSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a set from 1-based vertex labels. Duplicates are rejected.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 || v > MAX_VERTICES {
                return range_err(format!("vertex {v} outside 1..={MAX_VERTICES}"));
            }
            let b = 1u64 << (v - 1);
            if bits & b != 0 {
                return range_err(format!("vertex {v} repeated"));
            }
            bits |= b;
        }
        Ok(KSet(bits))
    }

    /// `{1, ..., k}`.
    pub fn prefix(k: usize) -> Self {
        KSet(low_mask(k))
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        KSet(1u64 << (v - 1))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn is_subset(self, other: KSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: KSet) -> KSet {
        KSet(self.0 | other.0)
    }

    pub fn intersection(self, other: KSet) -> KSet {
        KSet(self.0 & other.0)
    }

    pub fn difference(self, other: KSet) -> KSet {
        KSet(self.0 & !other.0)
    }

    pub fn insert(self, v: usize) -> KSet {
        KSet(self.0 | (1u64 << (v - 1)))
    }

    pub fn remove(self, v: usize) -> KSet {
        KSet(self.0 & !(1u64 << (v - 1)))
    }

    /// Complement inside `[1..=n]`.
    pub fn complement(self, n: usize) -> KSet {
        KSet(!self.0 & low_mask(n))
    }

    /// Largest label present, 0 for the empty set.
    pub fn max_vertex(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Smallest label present.
    pub fn min_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// True iff every element lies in `[1..=n]`.
    pub fn fits(self, n: usize) -> bool {
        self.0 & !low_mask(n) == 0
    }

    /// Ascending vertex labels.
    pub fn iter(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Drops vertex `x` and shifts every larger label down by one.
    pub fn compact_without(self, x: usize) -> KSet {
        let low = self.0 & low_mask(x - 1);
        let high = if x >= 64 { 0 } else { self.0 >> x };
        KSet(low | (high << (x - 1)))
    }

    /// All `k`-subsets of `self`, in colex order.
    pub fn subsets(self, k: usize) -> SubsetsOf {
        SubsetsOf::new(self, k)
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Vertices {}

/// Iterator over the `k`-subsets of `[1..=n]` in colex order (Gosper's hack).
#[derive(Clone, Debug)]
pub struct Subsets {
    next: Option<u64>,
    limit: u64,
}

impl Subsets {
    pub fn new(n: usize, k: usize) -> Self {
        if k > n || n > MAX_VERTICES {
            return Subsets { next: None, limit: 0 };
        }
        Subsets {
            next: Some(low_mask(k)),
            limit: low_mask(n),
        }
    }
}

impl Iterator for Subsets {
    type Item = KSet;

    fn next(&mut self) -> Option<KSet> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt & !self.limit == 0).then_some(nxt)
            }
        };
        Some(KSet(cur))
    }
}

/// All `k`-subsets of `[1..=n]`, colex order.
pub fn k_subsets(n: usize, k: usize) -> Subsets {
    Subsets::new(n, k)
}

/// `k`-subsets of a fixed set, colex order, by mapping index patterns through
/// the set's elements.
pub struct SubsetsOf {
    elems: Vec<usize>,
    inner: Subsets,
}

impl SubsetsOf {
    fn new(set: KSet, k: usize) -> Self {
        let elems = set.to_vec();
        let inner = Subsets::new(elems.len(), k);
        SubsetsOf { elems, inner }
    }
}

impl Iterator for SubsetsOf {
    type Item = KSet;

    fn next(&mut self) -> Option<KSet> {
        let pattern = self.inner.next()?;
        let mut bits = 0u64;
        for i in pattern.iter() {
            bits |= 1u64 << (self.elems[i - 1] - 1);
        }
        Some(KSet(bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gosper_enumerates_colex() {
        let all: Vec<_> = k_subsets(5, 2).map(|s| s.to_vec()).collect();
        assert_eq!(
            all,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
                vec![1, 4],
                vec![2, 4],
                vec![3, 4],
                vec![1, 5],
                vec![2, 5],
                vec![3, 5],
                vec![4, 5]
            ]
        );
        assert_eq!(k_subsets(5, 0).count(), 1);
        assert_eq!(k_subsets(4, 5).count(), 0);
        assert_eq!(k_subsets(64, 64).count(), 1);
        assert_eq!(k_subsets(64, 1).count(), 64);
        assert_eq!(k_subsets(64, 63).count(), 64);
    }

    #[test]
    fn subsets_of_a_set() {
        let s = KSet::from_vertices([2, 5, 7]).unwrap();
        let subs: Vec<_> = s.subsets(2).map(|x| x.to_vec()).collect();
        assert_eq!(subs, vec![vec![2, 5], vec![2, 7], vec![5, 7]]);
    }

    #[test]
    fn compaction_preserves_relative_order() {
        let s = KSet::from_vertices([1, 3, 6]).unwrap();
        assert_eq!(s.compact_without(2).to_vec(), vec![1, 2, 5]);
        assert_eq!(s.remove(3).compact_without(3).to_vec(), vec![1, 5]);
        let top = KSet::from_vertices([1, 64]).unwrap();
        assert_eq!(top.compact_without(64).to_vec(), vec![1]);
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(KSet::from_vertices([0]).is_err());
        assert!(KSet::from_vertices([65]).is_err());
        assert!(KSet::from_vertices([3, 3]).is_err());
    }
}
