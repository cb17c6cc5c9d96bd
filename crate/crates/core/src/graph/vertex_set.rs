use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A set of vertex ids stored as a bitset. Ordered lexicographically by its
/// sorted id list and serialized as that list.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet { words: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet { words: vec![u64::MAX; n / 64] };
        if !n.is_multiple_of(64) {
            s.words.push((1u64 << (n % 64)) - 1);
        }
        s
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        let mut s = VertexSet::new();
        for i in ids {
            s.insert(i);
        }
        s
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut s = VertexSet { words: vec![mask] };
        s.trim();
        s
    }

    pub fn singleton(i: usize) -> Self {
        VertexSet::from_ids([i])
    }

    /// The set as a single machine word, when every id is below 64.
    pub fn mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        if w < self.words.len() {
            self.words[w] &= !(1 << b);
            self.trim();
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        w < self.words.len() && (self.words[w] >> b) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let len = self.words.len().max(other.words.len());
        let get = |v: &Vec<u64>, k: usize| v.get(k).copied().unwrap_or(0);
        let mut s =
            VertexSet { words: (0..len).map(|k| f(get(&self.words, k), get(&other.words, k))).collect() };
        s.trim();
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self, n: usize) -> Self {
        VertexSet::full(n).difference(self)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_ids(iter)
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> serde::Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(VertexSet::from_ids(Vec::<usize>::deserialize(d)?))
    }
}

/// An ordered pair of disjoint vertex sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct SetPair {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl SetPair {
    pub fn new(a: VertexSet, b: VertexSet) -> Result<Self> {
        if !a.is_disjoint(&b) {
            return Err(Error::OverlappingSets);
        }
        Ok(SetPair { a, b })
    }

    pub fn support(&self) -> VertexSet {
        self.a.union(&self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_ids([0, 3, 70]);
        let b = VertexSet::from_ids([3, 5]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.to_vec(), vec![0, 3, 70]);
        assert_eq!(a.intersection(&b).to_vec(), vec![3]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 70]);
        assert_eq!(b.complement(6).to_vec(), vec![0, 1, 2, 4]);
        assert!(!a.is_disjoint(&b));
        assert_eq!(a.mask(), None);
        assert_eq!(b.mask(), Some(0b101000));
    }

    #[test]
    fn lexicographic_order() {
        let s = |v: &[usize]| VertexSet::from_ids(v.iter().copied());
        assert!(s(&[0]) < s(&[0, 1]));
        assert!(s(&[0, 1]) < s(&[0, 2]));
        assert!(s(&[]) < s(&[0]));
        assert!(s(&[0, 5]) < s(&[1]));
    }

    #[test]
    fn removing_trims() {
        let mut a = VertexSet::from_ids([100]);
        a.remove(100);
        assert_eq!(a, VertexSet::new());
    }
}
