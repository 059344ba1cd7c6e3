use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(universe: usize) -> usize {
    universe.div_ceil(WORD)
}

/// A subset of the vertex range `0..universe`, stored as a bit row.
///
/// Ordering is lexicographic on the ascending member lists, so sorting a list
/// of sets gives the canonical order used by [`MisFamily`](crate::mis::MisFamily).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    universe: usize,
    size: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        Self { words: vec![0; words_for(universe)], universe, size: 0 }
    }

    pub fn full(universe: usize) -> Self {
        let mut words = vec![u64::MAX; words_for(universe)];
        let tail = universe % WORD;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << tail) - 1;
            }
        }
        Self { words, universe, size: universe }
    }

    /// Builds a set from vertex ids. Panics if an id is outside the universe.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(universe: usize, vertices: I) -> Self {
        let mut set = Self::new(universe);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && (self.words[v / WORD] >> (v % WORD)) & 1 == 1
    }

    /// Returns `true` if `v` was not already present.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let word = &mut self.words[v / WORD];
        let mask = 1u64 << (v % WORD);
        let fresh = *word & mask == 0;
        *word |= mask;
        self.size += fresh as usize;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let word = &mut self.words[v / WORD];
        let mask = 1u64 << (v % WORD);
        let present = *word & mask != 0;
        *word &= !mask;
        self.size -= present as usize;
        present
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
        self.size = 0;
    }

    pub fn iter(&self) -> Members<'_> {
        Members { words: &self.words, index: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    #[inline]
    fn recount(&mut self) {
        self.size = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    fn check_universe(&self, other: &Self) {
        debug_assert_eq!(self.universe, other.universe, "vertex sets over different universes");
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_universe(other);
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a |= b);
        self.recount();
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_universe(other);
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= b);
        self.recount();
    }

    pub fn subtract(&mut self, other: &Self) {
        self.check_universe(other);
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= !b);
        self.recount();
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.subtract(other);
        out
    }

    /// Complement within the universe.
    pub fn complement(&self) -> Self {
        let mut out = Self::full(self.universe);
        out.subtract(self);
        out
    }

    #[inline]
    pub fn intersection_len(&self, other: &Self) -> usize {
        self.check_universe(other);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter()).then(self.universe.cmp(&other.universe))
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

/// Space-separated ascending ids; the empty set prints as nothing.
impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
pub struct Members<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Members<'a>;

    fn into_iter(self) -> Members<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_masks_tail_bits() {
        let s = VertexSet::full(70);
        assert_eq!(s.len(), 70);
        assert_eq!(s.iter().last(), Some(69));
        assert!(s.complement().is_empty());
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_vertices(130, [0, 5, 64, 129]);
        let b = VertexSet::from_vertices(130, [5, 64, 100]);
        assert_eq!(a.intersection(&b).to_vec(), vec![5, 64]);
        assert_eq!(a.union(&b).len(), 5);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 129]);
        assert_eq!(a.intersection_len(&b), 2);
        assert!(!a.is_disjoint(&b));
        assert!(VertexSet::from_vertices(130, [5]).is_subset(&a));
    }

    #[test]
    fn insert_remove_track_size() {
        let mut s = VertexSet::new(10);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        assert_eq!(s.len(), 1);
        assert!(s.remove(3));
        assert!(!s.remove(3));
        assert!(s.is_empty());
    }

    #[test]
    fn ordering_is_lexicographic_on_members() {
        let a = VertexSet::from_vertices(5, [0, 3]);
        let b = VertexSet::from_vertices(5, [0, 4]);
        let c = VertexSet::from_vertices(5, [1]);
        assert!(a < b && b < c);
        assert_eq!(format!("{a}"), "0 3");
    }
}
