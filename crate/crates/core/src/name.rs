//! Names, words over names, and finite permutations of names.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

/// An atom of the infinite alphabet.
///
/// Only equality matters to the semantics. The numeric order is used solely to
/// pick canonical fresh names.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Name(pub u32);

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl Name {
    /// Least name not contained in `used`.
    pub fn least_fresh<'a, I>(used: I) -> Name
    where
        I: IntoIterator<Item = &'a Name>,
    {
        let taken: BTreeSet<u32> = used.into_iter().map(|n| n.0).collect();
        let mut candidate = 0;
        for id in taken {
            if id != candidate {
                break;
            }
            candidate += 1;
        }
        Name(candidate)
    }
}

/// A finite sequence of names.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(pub Vec<Name>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn push(&mut self, a: Name) {
        self.0.push(a);
    }

    /// Letterwise image under `p`.
    pub fn permute(&self, p: &Permutation) -> Word {
        Word(self.0.iter().map(|&a| p.apply(a)).collect())
    }
}

impl Deref for Word {
    type Target = [Name];

    fn deref(&self) -> &[Name] {
        &self.0
    }
}

impl From<Vec<Name>> for Word {
    fn from(v: Vec<Name>) -> Self {
        Word(v)
    }
}

impl From<&[Name]> for Word {
    fn from(v: &[Name]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Name> for Word {
    fn from_iter<I: IntoIterator<Item = Name>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Letterwise image of `w` under `p`.
pub fn permute_word(w: &Word, p: &Permutation) -> Word {
    w.permute(p)
}

/// A bijection on names with finite support.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Permutation {
    map: BTreeMap<Name, Name>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct NotABijection;

impl fmt::Display for NotABijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pairs do not describe a finite bijection")
    }
}

impl core::error::Error for NotABijection {}

impl Permutation {
    pub fn identity() -> Self {
        Permutation::default()
    }

    pub fn swap(a: Name, b: Name) -> Self {
        let mut map = BTreeMap::new();
        if a != b {
            map.insert(a, b);
            map.insert(b, a);
        }
        Permutation { map }
    }

    /// Builds a permutation from explicit `(from, to)` pairs. Names not
    /// mentioned are fixed; the pairs must form a bijection on their support.
    pub fn from_pairs<I>(pairs: I) -> Result<Self, NotABijection>
    where
        I: IntoIterator<Item = (Name, Name)>,
    {
        let mut map = BTreeMap::new();
        for (from, to) in pairs {
            if let Some(prev) = map.insert(from, to) {
                if prev != to {
                    return Err(NotABijection);
                }
            }
        }
        let domain: BTreeSet<Name> = map.keys().copied().collect();
        let image: BTreeSet<Name> = map.values().copied().collect();
        if domain != image || image.len() != map.len() {
            return Err(NotABijection);
        }
        map.retain(|k, v| k != v);
        Ok(Permutation { map })
    }

    pub fn apply(&self, a: Name) -> Name {
        self.map.get(&a).copied().unwrap_or(a)
    }

    /// Names moved by the permutation.
    pub fn support(&self) -> impl Iterator<Item = Name> + '_ {
        self.map.keys().copied()
    }

    pub fn fixes(&self, a: Name) -> bool {
        !self.map.contains_key(&a)
    }
}
