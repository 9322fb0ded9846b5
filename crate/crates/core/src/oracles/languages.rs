//! Set-builder definitions of the example languages, evaluated directly.

use alloc::collections::{BTreeMap, BTreeSet};
use core::fmt;

use crate::name::Name;

/// The example languages. Anchored languages carry their fixed name.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LangId {
    /// All letters pairwise distinct.
    L0,
    /// Concatenations of blocks `a0 w` with `a0 w` all-distinct.
    L1(Name),
    /// `a1 a1' … an an'` with both `a1…an` and `a1'…an'` all-distinct.
    L2,
    /// `u v` with `u`, `v` all-distinct and every letter of `v` in `u`.
    L3,
    /// Nonempty, and not every name occurs exactly twice.
    L4,
    /// Every name occurs exactly twice.
    L4Bar,
    /// No two adjacent letters are equal.
    L5,
    /// A single all-distinct block starting with `a0`.
    La0(Name),
}

impl fmt::Display for LangId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LangId::L0 => write!(f, "L0"),
            LangId::L1(a) => write!(f, "L1({a})"),
            LangId::L2 => write!(f, "L2"),
            LangId::L3 => write!(f, "L3"),
            LangId::L4 => write!(f, "L4"),
            LangId::L4Bar => write!(f, "L4bar"),
            LangId::L5 => write!(f, "L5"),
            LangId::La0(a) => write!(f, "La0({a})"),
        }
    }
}

pub fn all_distinct(w: &[Name]) -> bool {
    let mut seen = BTreeSet::new();
    w.iter().all(|a| seen.insert(*a))
}

fn occurrences(w: &[Name]) -> BTreeMap<Name, usize> {
    let mut m = BTreeMap::new();
    for &a in w {
        *m.entry(a).or_insert(0) += 1;
    }
    m
}

pub fn oracle_membership(l: LangId, w: &[Name]) -> bool {
    match l {
        LangId::L0 => all_distinct(w),
        LangId::L1(a0) => {
            if w.is_empty() {
                return true;
            }
            // a0 can only open a block, so the blocks are cut at each a0.
            w[0] == a0
                && w.split(|&a| a == a0)
                    .skip(1)
                    .all(all_distinct)
        }
        LangId::L2 => {
            let odd: alloc::vec::Vec<Name> = w.iter().step_by(2).copied().collect();
            let even: alloc::vec::Vec<Name> = w.iter().skip(1).step_by(2).copied().collect();
            w.len().is_multiple_of(2) && all_distinct(&odd) && all_distinct(&even)
        }
        LangId::L3 => (0..=w.len()).any(|k| {
            let (u, v) = w.split_at(k);
            all_distinct(u) && all_distinct(v) && v.iter().all(|a| u.contains(a))
        }),
        LangId::L4 => !w.is_empty() && !occurrences(w).values().all(|&c| c == 2),
        LangId::L4Bar => occurrences(w).values().all(|&c| c == 2),
        LangId::L5 => w.windows(2).all(|p| p[0] != p[1]),
        LangId::La0(a0) => !w.is_empty() && w[0] == a0 && all_distinct(w),
    }
}
