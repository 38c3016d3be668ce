//! Fixed-width bit sets over the states of one discrete variable.
//!
//! A `StateSet` stores one bit per state in 64-bit words. The width (the
//! variable's cardinality) is part of the value, and bits at positions
//! `>= width` are always zero. All set algebra is word-parallel.
//!
//! The first word is stored inline and the rest, if any, in a boxed tail, so
//! sets over at most 64 states never allocate and never branch on layout.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    head: u64,
    tail: Box<[u64]>,
    width: u32,
}

fn word_count(width: usize) -> usize {
    width.div_ceil(64).max(1)
}

impl StateSet {
    /// The empty set over `width` states.
    pub fn empty(width: usize) -> StateSet {
        StateSet {
            head: 0,
            tail: vec![0; word_count(width) - 1].into_boxed_slice(),
            width: width as u32,
        }
    }

    /// The full domain `{0, .., width - 1}`.
    pub fn full(width: usize) -> StateSet {
        let mut s = StateSet::empty(width);
        s.head = u64::MAX;
        s.tail.fill(u64::MAX);
        s.trim();
        s
    }

    pub fn singleton(width: usize, state: usize) -> StateSet {
        let mut s = StateSet::empty(width);
        s.insert(state);
        s
    }

    /// Builds a set from 0-based state ids. Panics if an id is out of range.
    pub fn from_states<I: IntoIterator<Item = usize>>(width: usize, states: I) -> StateSet {
        let mut s = StateSet::empty(width);
        for i in states {
            s.insert(i);
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.width as usize % 64;
        if rem != 0 {
            *self.word_mut(self.word_len() - 1) &= (1u64 << rem) - 1;
        }
        if self.width == 0 {
            self.head = 0;
        }
    }

    #[inline]
    fn word_len(&self) -> usize {
        1 + self.tail.len()
    }

    #[inline]
    fn word(&self, i: usize) -> u64 {
        if i == 0 {
            self.head
        } else {
            self.tail[i - 1]
        }
    }

    #[inline]
    fn word_mut(&mut self, i: usize) -> &mut u64 {
        if i == 0 {
            &mut self.head
        } else {
            &mut self.tail[i - 1]
        }
    }

    /// States 0 to 63 as a word; the whole set when the width is at most 64.
    #[inline]
    pub fn first_word(&self) -> u64 {
        self.head
    }

    /// True when the width is at most 64, so `first_word` is the whole set.
    #[inline]
    pub fn is_one_word(&self) -> bool {
        self.tail.is_empty()
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn contains(&self, state: usize) -> bool {
        state < self.width() && self.word(state / 64) & (1u64 << (state % 64)) != 0
    }

    #[inline]
    pub fn insert(&mut self, state: usize) {
        assert!(state < self.width(), "state {state} out of range for width {}", self.width);
        *self.word_mut(state / 64) |= 1u64 << (state % 64);
    }

    #[inline]
    pub fn remove(&mut self, state: usize) {
        if state < self.width() {
            *self.word_mut(state / 64) &= !(1u64 << (state % 64));
        }
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.head == 0 && self.tail.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.width()
    }

    /// Number of states in the set.
    #[inline]
    pub fn len(&self) -> usize {
        self.head.count_ones() as usize + self.tail.iter().map(|w| w.count_ones() as usize).sum::<usize>()
    }

    /// True iff the set has exactly one state.
    #[inline]
    pub fn is_single(&self) -> bool {
        let mut seen = false;
        for i in 0..self.word_len() {
            let w = self.word(i);
            if w != 0 {
                if seen || w & (w - 1) != 0 {
                    return false;
                }
                seen = true;
            }
        }
        seen
    }

    /// True iff the set is a nonempty proper subset of the domain.
    pub fn is_proper(&self) -> bool {
        !self.is_empty() && !self.is_full()
    }

    /// The highest state id in the set.
    #[inline]
    pub fn highest(&self) -> Option<usize> {
        for (i, &w) in self.tail.iter().enumerate().rev() {
            if w != 0 {
                return Some((i + 1) * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        (self.head != 0).then(|| 63 - self.head.leading_zeros() as usize)
    }

    /// The highest state id in `self ∩ other`, without allocating.
    #[inline]
    pub fn highest_common(&self, other: &StateSet) -> Option<usize> {
        self.check_width(other);
        for (i, (&a, &b)) in self.tail.iter().zip(other.tail.iter()).enumerate().rev() {
            let w = a & b;
            if w != 0 {
                return Some((i + 1) * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        let w = self.head & other.head;
        (w != 0).then(|| 63 - w.leading_zeros() as usize)
    }

    /// The lowest state id in the set.
    #[inline]
    pub fn lowest(&self) -> Option<usize> {
        if self.head != 0 {
            return Some(self.head.trailing_zeros() as usize);
        }
        for (i, &w) in self.tail.iter().enumerate() {
            if w != 0 {
                return Some((i + 1) * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    #[inline]
    fn check_width(&self, other: &StateSet) {
        debug_assert_eq!(self.width, other.width, "state sets of different variables");
    }

    #[inline]
    pub fn intersects(&self, other: &StateSet) -> bool {
        self.check_width(other);
        self.head & other.head != 0 || self.tail.iter().zip(other.tail.iter()).any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.check_width(other);
        self.head & !other.head == 0 && self.tail.iter().zip(other.tail.iter()).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn intersect_with(&mut self, other: &StateSet) {
        self.check_width(other);
        self.head &= other.head;
        for (a, b) in self.tail.iter_mut().zip(other.tail.iter()) {
            *a &= b;
        }
    }

    #[inline]
    pub fn union_with(&mut self, other: &StateSet) {
        self.check_width(other);
        self.head |= other.head;
        for (a, b) in self.tail.iter_mut().zip(other.tail.iter()) {
            *a |= b;
        }
    }

    #[inline]
    pub fn difference_with(&mut self, other: &StateSet) {
        self.check_width(other);
        self.head &= !other.head;
        for (a, b) in self.tail.iter_mut().zip(other.tail.iter()) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    /// Domain minus this set.
    pub fn complement(&self) -> StateSet {
        let mut s = self.clone();
        s.head = !s.head;
        for w in s.tail.iter_mut() {
            *w = !*w;
        }
        s.trim();
        s
    }

    /// Ascending iterator over the state ids in the set (word scan).
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            index: 0,
            current: self.head,
        }
    }
}

pub struct Iter<'a> {
    set: &'a StateSet,
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            if self.index >= self.set.word_len() {
                return None;
            }
            self.current = self.set.tail[self.index - 1];
        }
    }
}

impl<'a> IntoIterator for &'a StateSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, s) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            // 1-based, like the file formats
            write!(f, "{}", s + 1)?;
        }
        write!(f, "}}/{}", self.width)
    }
}
