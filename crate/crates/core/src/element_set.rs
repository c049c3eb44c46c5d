//! Canonical finite sets of element indices.
//!
//! Elements are 0-based internally. The set is stored as a bitmask; a single
//! machine word is kept inline so every ground set of size at most 64 stays
//! allocation free.

use std::cmp::Ordering;
use std::fmt;

use smallvec::{smallvec, SmallVec};

const WORD: usize = 64;

/// A set of element indices in canonical form.
///
/// Equality and ordering are those of the strictly increasing member list.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ElementSet {
    // invariant: no trailing zero words
    words: SmallVec<[u64; 1]>,
}

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{0, 1, ..., d-1}`.
    pub fn full(d: usize) -> Self {
        let mut words: SmallVec<[u64; 1]> = smallvec![u64::MAX; d / WORD];
        if !d.is_multiple_of(WORD) {
            words.push((1u64 << (d % WORD)) - 1);
        }
        Self { words }
    }

    pub fn singleton(x: usize) -> Self {
        let mut s = Self::new();
        s.insert(x);
        s
    }

    pub fn from_bits(bits: u64) -> Self {
        let mut s = Self {
            words: smallvec![bits],
        };
        s.trim();
        s
    }

    /// Converts 1-based labels (as used in files and on the command line).
    /// Returns `None` if a label is zero.
    pub fn from_one_based<I: IntoIterator<Item = usize>>(labels: I) -> Option<Self> {
        let mut s = Self::new();
        for l in labels {
            s.insert(l.checked_sub(1)?);
        }
        Some(s)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// The low 64 bits, if the set has no member above 63.
    pub fn as_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.words
            .get(x / WORD)
            .is_some_and(|w| w >> (x % WORD) & 1 == 1)
    }

    pub fn insert(&mut self, x: usize) -> bool {
        let i = x / WORD;
        if self.words.len() <= i {
            self.words.resize(i + 1, 0);
        }
        let bit = 1u64 << (x % WORD);
        let fresh = self.words[i] & bit == 0;
        self.words[i] |= bit;
        fresh
    }

    pub fn remove(&mut self, x: usize) -> bool {
        let i = x / WORD;
        let Some(w) = self.words.get_mut(i) else {
            return false;
        };
        let bit = 1u64 << (x % WORD);
        let had = *w & bit != 0;
        *w &= !bit;
        self.trim();
        had
    }

    pub fn with(&self, x: usize) -> Self {
        let mut s = self.clone();
        s.insert(x);
        s
    }

    pub fn without(&self, x: usize) -> Self {
        let mut s = self.clone();
        s.remove(x);
        s
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Largest member plus one, i.e. the smallest ground size containing the set.
    pub fn bound(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(w) => (self.words.len() - 1) * WORD + (WORD - w.leading_zeros() as usize),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<usize> {
        self.bound().checked_sub(1)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.iter().map(|x| x + 1).collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, o) in words.iter_mut().zip(short.words.iter()) {
            *w |= o;
        }
        Self { words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = Self {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        };
        s.trim();
        s
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = Self {
            words: self
                .words
                .iter()
                .enumerate()
                .map(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0))
                .collect(),
        };
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(other.words.iter())
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection_len(other) == 0
    }

    /// Orders by cardinality first, then lexicographically. This is the
    /// canonical order of circuit lists.
    pub fn cmp_size_lex(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp(other))
    }

    /// Relabels members through `map` (old index -> new index); members
    /// mapped to `None` are dropped.
    pub fn relabel(&self, map: &[Option<usize>]) -> Self {
        self.iter().filter_map(|x| map.get(x).copied().flatten()).collect()
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::new();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Displays with 1-based labels, e.g. `{1,4,7}`.
impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "}}")
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + tz);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

/// Lexicographic enumeration of the `k`-subsets of a set.
pub struct Combinations {
    pool: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(universe: &ElementSet, k: usize) -> Self {
        let pool = universe.to_vec();
        let done = k > pool.len();
        Self {
            pool,
            idx: (0..k).collect(),
            done,
        }
    }

    pub fn of_range(d: usize, k: usize) -> Self {
        Self::new(&ElementSet::full(d), k)
    }
}

impl Iterator for Combinations {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.pool[i]).collect();
        let k = self.idx.len();
        let n = self.pool.len();
        // advance to the next index tuple
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_bound() {
        assert_eq!(ElementSet::full(0).len(), 0);
        assert_eq!(ElementSet::full(64).len(), 64);
        assert_eq!(ElementSet::full(70).bound(), 70);
        assert_eq!(ElementSet::full(70).as_u64(), None);
    }

    #[test]
    fn display_is_one_based() {
        let s: ElementSet = [0, 3, 6].into_iter().collect();
        assert_eq!(s.to_string(), "{1,4,7}");
        assert_eq!(ElementSet::from_one_based([1, 4, 7]), Some(s));
        assert_eq!(ElementSet::from_one_based([0]), None);
    }

    #[test]
    fn remove_trims_words() {
        let mut s = ElementSet::singleton(100);
        s.insert(3);
        s.remove(100);
        assert_eq!(s, ElementSet::singleton(3));
        assert_eq!(s.as_u64(), Some(8));
    }

    #[test]
    fn size_lex_order() {
        let a: ElementSet = [0, 5].into_iter().collect();
        let b: ElementSet = [1, 2, 3].into_iter().collect();
        assert_eq!(a.cmp(&b), Ordering::Less);
        assert_eq!(b.cmp_size_lex(&a), Ordering::Greater);
        let c: ElementSet = [0, 1, 9].into_iter().collect();
        assert_eq!(c.cmp(&b), Ordering::Less);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(Combinations::of_range(7, 3).count(), 35);
        assert_eq!(Combinations::of_range(4, 0).count(), 1);
        assert_eq!(Combinations::of_range(3, 4).count(), 0);
        let v: Vec<_> = Combinations::of_range(4, 2).map(|s| s.to_vec()).collect();
        assert_eq!(v[0], vec![0, 1]);
        assert_eq!(v[5], vec![2, 3]);
        assert_eq!(binomial(12, 3), 220);
    }

    proptest! {
        #[test]
        fn ordering_matches_sorted_lists(a in proptest::collection::btree_set(0usize..130, 0..8),
                                         b in proptest::collection::btree_set(0usize..130, 0..8)) {
            let sa: ElementSet = a.iter().copied().collect();
            let sb: ElementSet = b.iter().copied().collect();
            let va: Vec<_> = a.iter().copied().collect();
            let vb: Vec<_> = b.iter().copied().collect();
            prop_assert_eq!(sa.cmp(&sb), va.cmp(&vb));
            prop_assert_eq!(sa.to_vec(), va);
            let u: Vec<_> = a.union(&b).copied().collect();
            prop_assert_eq!(sa.union(&sb).to_vec(), u);
            let i: Vec<_> = a.intersection(&b).copied().collect();
            prop_assert_eq!(sa.intersection(&sb).to_vec(), i.clone());
            prop_assert_eq!(sa.intersection_len(&sb), i.len());
            let d: Vec<_> = a.difference(&b).copied().collect();
            prop_assert_eq!(sa.difference(&sb).to_vec(), d);
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
        }
    }
}
