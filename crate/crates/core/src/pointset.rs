//! Dense bitsets over a fixed ground set `0..len`.
//!
//! Submodule member sets and topology opens are both sets of enumeration
//! indices, so one word-packed representation serves both. All set algebra
//! is whole-word; the ground size is carried so complements and fullness
//! tests are well defined.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    len: usize,
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(len: usize) -> Self {
        PointSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        let mut s = Self::empty(len);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, iter: I) -> Self {
        let mut s = Self::empty(len);
        for i in iter {
            s.insert(i);
        }
        s
    }

    /// Size of the ground set, not the cardinality.
    pub fn ground_len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "point index {i} out of range 0..{}", self.len);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len, "point index {i} out of range 0..{}", self.len);
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn card(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.card() == self.len
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        self.check_ground(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        PointSet { len: self.len, words }
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.check_ground(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect(&self, other: &PointSet) -> PointSet {
        self.check_ground(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        PointSet { len: self.len, words }
    }

    pub fn minus(&self, other: &PointSet) -> PointSet {
        self.check_ground(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        PointSet { len: self.len, words }
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.check_ground(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &PointSet) -> bool {
        self.check_ground(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    pub fn min_element(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Image under a point map; `f` must map into the same ground set.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> PointSet {
        let mut out = PointSet::empty(self.len);
        for i in self.iter() {
            out.insert(f(i));
        }
        out
    }

    /// Canonical sort key: cardinality first, then word-lexicographic.
    pub fn sort_key(&self) -> (usize, Vec<u64>) {
        (self.card(), self.words.clone())
    }

    fn check_ground(&self, other: &PointSet) {
        assert_eq!(
            self.len, other.len,
            "point sets over different ground sets ({} vs {})",
            self.len, other.len
        );
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.cmp(&other.words))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
