//! Places and automaton types.
//!
//! Places are numbered from 1: histories occupy `1..=m`, registers
//! `m+1..=m+n`.

use alloc::vec::Vec;
use core::fmt;

/// Largest number of places a single automaton may use.
pub const MAX_PLACES: usize = 64;

/// The `(m, n)` shape of an automaton: `m` histories followed by `n` registers.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HraType {
    pub histories: usize,
    pub registers: usize,
}

impl HraType {
    pub const fn new(histories: usize, registers: usize) -> Self {
        HraType { histories, registers }
    }

    pub const fn places(&self) -> usize {
        self.histories + self.registers
    }

    pub const fn is_register(&self, place: usize) -> bool {
        place > self.histories && place <= self.places()
    }

    pub const fn is_history(&self, place: usize) -> bool {
        place >= 1 && place <= self.histories
    }

    /// All places `[m+n]`.
    pub fn all(&self) -> PlaceSet {
        PlaceSet::range(1, self.places())
    }

    /// The history places `[m]`.
    pub fn history_places(&self) -> PlaceSet {
        PlaceSet::range(1, self.histories)
    }

    /// The register places `[m+1, m+n]`.
    pub fn register_places(&self) -> PlaceSet {
        PlaceSet::range(self.histories + 1, self.places())
    }

    /// Whether the type satisfies `m + n >= 1` and fits the place bitmask.
    pub fn is_valid(&self) -> bool {
        self.places() >= 1 && self.places() <= MAX_PLACES
    }
}

impl fmt::Display for HraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.histories, self.registers)
    }
}

/// A finite set of places, stored as a bitmask (place `i` is bit `i-1`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PlaceSet(pub u64);

impl PlaceSet {
    pub const EMPTY: PlaceSet = PlaceSet(0);

    pub fn singleton(place: usize) -> Self {
        debug_assert!((1..=MAX_PLACES).contains(&place));
        PlaceSet(1u64 << (place - 1))
    }

    /// Places `lo..=hi` (empty when `hi < lo`).
    pub fn range(lo: usize, hi: usize) -> Self {
        let mut s = PlaceSet::EMPTY;
        for p in lo.max(1)..=hi {
            s.insert(p);
        }
        s
    }

    pub fn from_places<I: IntoIterator<Item = usize>>(places: I) -> Self {
        let mut s = PlaceSet::EMPTY;
        for p in places {
            s.insert(p);
        }
        s
    }

    pub fn insert(&mut self, place: usize) {
        *self = self.union(PlaceSet::singleton(place));
    }

    pub fn remove(&mut self, place: usize) {
        self.0 &= !PlaceSet::singleton(place).0;
    }

    pub fn contains(&self, place: usize) -> bool {
        (1..=MAX_PLACES).contains(&place) && self.0 & (1u64 << (place - 1)) != 0
    }

    pub const fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub const fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn union(self, other: PlaceSet) -> PlaceSet {
        PlaceSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: PlaceSet) -> PlaceSet {
        PlaceSet(self.0 & other.0)
    }

    pub const fn difference(self, other: PlaceSet) -> PlaceSet {
        PlaceSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: PlaceSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: PlaceSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest place index in the set, 0 when empty.
    pub const fn max_place(&self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=MAX_PLACES).filter(move |p| bits & (1u64 << (p - 1)) != 0)
    }

    /// Image under a place renaming.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> PlaceSet {
        PlaceSet::from_places(self.iter().map(f))
    }

    /// Shifts every place up by `offset`.
    pub fn shifted(&self, offset: usize) -> PlaceSet {
        self.map(|p| p + offset)
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(&self) -> Vec<PlaceSet> {
        let full = self.0;
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub: u64 = 0;
        loop {
            out.push(PlaceSet(sub));
            if sub == full {
                break;
            }
            sub = (sub.wrapping_sub(full)) & full;
        }
        out
    }
}

impl fmt::Debug for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PlaceSet {
    /// `-` for the empty set, otherwise comma-separated indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromIterator<usize> for PlaceSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        PlaceSet::from_places(iter)
    }
}
