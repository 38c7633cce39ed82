//! Variable-width bit masks. Subsets of poset elements are masks over element
//! indices; layers of a complex index their elements the same way, so masks of
//! a few words cover everything the engine touches.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

const WORD: usize = 64;

/// A subset of `0..len` as packed bits.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mask {
    len: usize,
    words: Vec<u64>,
}

impl Mask {
    pub fn empty(len: usize) -> Self {
        Mask {
            len,
            words: vec![0; len.div_ceil(WORD).max(1)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut m = Mask::empty(len);
        for i in 0..len {
            m.insert(i);
        }
        m
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        let mut m = Mask::empty(len);
        m.insert(i);
        m
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, iter: I) -> Self {
        let mut m = Mask::empty(len);
        for i in iter {
            m.insert(i);
        }
        m
    }

    pub fn universe_len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &Mask) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Mask) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &Mask) -> Mask {
        let mut m = self.clone();
        m.union_with(other);
        m
    }

    pub fn intersection(&self, other: &Mask) -> Mask {
        let mut m = self.clone();
        m.intersect_with(other);
        m
    }

    pub fn difference(&self, other: &Mask) -> Mask {
        let mut m = self.clone();
        for (a, b) in m.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        m
    }

    /// Complement within the universe `0..len`.
    pub fn complement(&self) -> Mask {
        let mut m = Mask::full(self.len);
        for (a, b) in m.words.iter_mut().zip(&self.words) {
            *a &= !b;
        }
        m
    }

    pub fn is_subset_of(&self, other: &Mask) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Mask) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(move |(wi, &w)| BitIter { word: w, base: wi * WORD })
            .filter(move |&i| i < self.len)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Canonical comparison: cardinality first, then the mask read as a number.
    pub fn canonical_cmp(&self, other: &Mask) -> Ordering {
        self.count()
            .cmp(&other.count())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }

    /// Lowercase hex of the mask read as a number, no leading zeros.
    pub fn hex(&self) -> String {
        use fmt::Write;
        let mut s = String::new();
        let mut seen = false;
        for &w in self.words.iter().rev() {
            if seen {
                let _ = write!(s, "{w:016x}");
            } else if w != 0 {
                let _ = write!(s, "{w:x}");
                seen = true;
            }
        }
        if !seen {
            s.push('0');
        }
        s
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

struct BitIter {
    word: u64,
    base: usize,
}

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}
