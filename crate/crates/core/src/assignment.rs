//! Assignments: the contents of all places of a configuration.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::name::{Name, Permutation};
use crate::place::{HraType, PlaceSet};

/// Contents of the histories and registers of an automaton of a fixed type.
///
/// Stored name-major: every name present maps to the exact set of places it
/// occupies, so `H@X` is a filter on that set and the register cap is an
/// invariant of the update operations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    ty: HraType,
    loc: BTreeMap<Name, PlaceSet>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AssignmentError {
    BadPlace { place: usize },
    RegisterOverfull { place: usize },
}

impl fmt::Display for AssignmentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssignmentError::BadPlace { place } => write!(f, "place {place} out of range"),
            AssignmentError::RegisterOverfull { place } => {
                write!(f, "register {place} holds more than one name")
            }
        }
    }
}

impl core::error::Error for AssignmentError {}

impl Assignment {
    /// The assignment with every place empty.
    pub fn empty(ty: HraType) -> Self {
        Assignment { ty, loc: BTreeMap::new() }
    }

    /// Builds an assignment from `(place, name)` memberships.
    pub fn from_places<I>(ty: HraType, entries: I) -> Result<Self, AssignmentError>
    where
        I: IntoIterator<Item = (usize, Name)>,
    {
        let mut loc: BTreeMap<Name, PlaceSet> = BTreeMap::new();
        let mut filled = PlaceSet::EMPTY;
        for (place, a) in entries {
            if place == 0 || place > ty.places() {
                return Err(AssignmentError::BadPlace { place });
            }
            let slot = loc.entry(a).or_default();
            if slot.contains(place) {
                continue;
            }
            if ty.is_register(place) {
                if filled.contains(place) {
                    return Err(AssignmentError::RegisterOverfull { place });
                }
                filled.insert(place);
            }
            slot.insert(place);
        }
        Ok(Assignment { ty, loc })
    }

    pub fn ty(&self) -> HraType {
        self.ty
    }

    /// `H(i)`.
    pub fn contents(&self, place: usize) -> BTreeSet<Name> {
        self.loc
            .iter()
            .filter(|(_, l)| l.contains(place))
            .map(|(&a, _)| a)
            .collect()
    }

    /// The single name held by a register place, if any.
    pub fn register(&self, place: usize) -> Option<Name> {
        self.loc.iter().find(|(_, l)| l.contains(place)).map(|(&a, _)| a)
    }

    /// `H@X` for nonempty `X`: the names occurring in exactly the places `X`.
    /// For `X = ∅` the result is empty; use [`Assignment::is_fresh`].
    pub fn at(&self, x: PlaceSet) -> BTreeSet<Name> {
        if x.is_empty() {
            return BTreeSet::new();
        }
        self.loc
            .iter()
            .filter(|(_, &l)| l == x)
            .map(|(&a, _)| a)
            .collect()
    }

    /// Number of names in `H@X` (`X` nonempty).
    pub fn count_at(&self, x: PlaceSet) -> usize {
        if x.is_empty() {
            return 0;
        }
        self.loc.values().filter(|&&l| l == x).count()
    }

    /// Whether `a ∈ H@X`, with `X = ∅` meaning `a` is fresh.
    pub fn matches(&self, a: Name, x: PlaceSet) -> bool {
        self.location(a) == x
    }

    /// Whether `a` occurs in no place.
    pub fn is_fresh(&self, a: Name) -> bool {
        !self.loc.contains_key(&a)
    }

    /// The unique `X` with `a ∈ H@X` (`∅` when fresh).
    pub fn location(&self, a: Name) -> PlaceSet {
        self.loc.get(&a).copied().unwrap_or_default()
    }

    /// Names occurring in some place, in increasing order.
    pub fn names(&self) -> impl Iterator<Item = Name> + '_ {
        self.loc.keys().copied()
    }

    /// `(name, location)` pairs, in increasing name order.
    pub fn locations(&self) -> impl Iterator<Item = (Name, PlaceSet)> + '_ {
        self.loc.iter().map(|(&a, &l)| (a, l))
    }

    pub fn is_empty(&self) -> bool {
        self.loc.is_empty()
    }

    /// `H[a→X]`: `a` is removed everywhere and placed in exactly `X`; register
    /// places of `X` lose their previous content.
    pub fn move_name(&self, a: Name, x: PlaceSet) -> Assignment {
        let regs = x.intersection(self.ty.register_places());
        let mut loc = BTreeMap::new();
        for (&b, &l) in &self.loc {
            if b == a {
                continue;
            }
            let l = l.difference(regs);
            if !l.is_empty() {
                loc.insert(b, l);
            }
        }
        if !x.is_empty() {
            loc.insert(a, x);
        }
        Assignment { ty: self.ty, loc }
    }

    /// `H[X↦∅]`.
    pub fn reset_places(&self, x: PlaceSet) -> Assignment {
        if x.is_empty() {
            return self.clone();
        }
        let loc = self
            .loc
            .iter()
            .filter_map(|(&b, &l)| {
                let l = l.difference(x);
                (!l.is_empty()).then_some((b, l))
            })
            .collect();
        Assignment { ty: self.ty, loc }
    }

    /// Image under a name permutation.
    pub fn permute(&self, p: &Permutation) -> Assignment {
        let loc = self.loc.iter().map(|(&a, &l)| (p.apply(a), l)).collect();
        Assignment { ty: self.ty, loc }
    }

    /// Re-embeds into a larger type, sending place `i` to `f(i)`.
    ///
    /// The caller guarantees that `f` is injective and sends registers to
    /// registers of `ty`.
    pub fn embed(&self, ty: HraType, f: impl Fn(usize) -> usize) -> Assignment {
        let loc = self.loc.iter().map(|(&a, l)| (a, l.map(&f))).collect();
        Assignment { ty, loc }
    }

    /// Disjoint union of two assignments already living in the same type.
    /// Places shared by a name in both are merged.
    pub fn merge(&self, other: &Assignment) -> Assignment {
        debug_assert_eq!(self.ty, other.ty);
        let mut loc = self.loc.clone();
        for (&a, &l) in &other.loc {
            let e = loc.entry(a).or_default();
            *e = e.union(l);
        }
        Assignment { ty: self.ty, loc }
    }

    /// Whether every register holds at most one name.
    pub fn respects_register_cap(&self) -> bool {
        let mut seen = PlaceSet::EMPTY;
        for l in self.loc.values() {
            let regs = l.intersection(self.ty.register_places());
            if !seen.is_disjoint(regs) {
                return false;
            }
            seen = seen.union(regs);
        }
        true
    }

    /// `(place, name)` memberships, sorted by place then name.
    pub fn entries(&self) -> Vec<(usize, Name)> {
        let mut out: Vec<(usize, Name)> = self
            .loc
            .iter()
            .flat_map(|(&a, l)| l.iter().map(move |p| (p, a)))
            .collect();
        out.sort();
        out
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Assignment {
    /// `{1:{n0,n1}, 2:{}}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for p in 1..=self.ty.places() {
            if p > 1 {
                write!(f, ", ")?;
            }
            write!(f, "{p}:{{")?;
            for (i, a) in self.contents(p).iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    const A: Name = Name(0);
    const B: Name = Name(1);
    const C: Name = Name(2);

    fn ps(places: &[usize]) -> PlaceSet {
        PlaceSet::from_places(places.iter().copied())
    }

    fn set(names: &[Name]) -> BTreeSet<Name> {
        names.iter().copied().collect()
    }

    #[test]
    fn at_picks_exact_locations() {
        let h = Assignment::from_places(HraType::new(2, 0), vec![(1, A), (1, B), (2, B)]).unwrap();
        assert_eq!(h.at(ps(&[1])), set(&[A]));
        assert_eq!(h.at(ps(&[1, 2])), set(&[B]));
        assert!(h.is_fresh(C));
        assert!(!h.is_fresh(A));
    }

    #[test]
    fn move_to_empty_deletes() {
        let h = Assignment::from_places(HraType::new(1, 0), vec![(1, A)]).unwrap();
        let h2 = h.move_name(A, PlaceSet::EMPTY);
        assert!(h2.contents(1).is_empty());
    }

    #[test]
    fn move_into_register_overwrites() {
        let h = Assignment::from_places(HraType::new(1, 1), vec![(2, B)]).unwrap();
        let h2 = h.move_name(A, ps(&[2]));
        assert_eq!(h2.contents(1), set(&[]));
        assert_eq!(h2.contents(2), set(&[A]));
        assert!(h2.is_fresh(B));
    }

    #[test]
    fn move_inserts_into_several_histories() {
        let h = Assignment::empty(HraType::new(2, 0));
        let h2 = h.move_name(A, ps(&[1, 2]));
        assert_eq!(h2.contents(1), set(&[A]));
        assert_eq!(h2.contents(2), set(&[A]));
    }

    #[test]
    fn reset_clears_only_targets() {
        let h = Assignment::from_places(HraType::new(2, 0), vec![(1, A), (1, B), (2, B)]).unwrap();
        let h2 = h.reset_places(ps(&[1]));
        assert!(h2.contents(1).is_empty());
        assert_eq!(h2.contents(2), set(&[B]));
        assert_eq!(h.reset_places(PlaceSet::EMPTY), h);
        assert_eq!(h2.reset_places(ps(&[1])), h2);
    }

    #[test]
    fn register_cap_enforced_on_construction() {
        let err = Assignment::from_places(HraType::new(1, 1), vec![(2, A), (2, B)]).unwrap_err();
        assert_eq!(err, AssignmentError::RegisterOverfull { place: 2 });
        let err = Assignment::from_places(HraType::new(1, 1), vec![(3, A)]).unwrap_err();
        assert_eq!(err, AssignmentError::BadPlace { place: 3 });
    }

    fn arb_assignment() -> impl Strategy<Value = Assignment> {
        (0usize..=3, 0usize..=3)
            .prop_filter("nonempty type", |(m, n)| m + n > 0)
            .prop_flat_map(|(m, n)| {
                let ty = HraType::new(m, n);
                let hist = proptest::collection::vec((1..=m.max(1), 0u32..6), 0..8);
                let regs = proptest::collection::vec(proptest::option::of(0u32..6), n);
                (Just(ty), hist, regs)
            })
            .prop_map(|(ty, hist, regs)| {
                let mut entries: Vec<(usize, Name)> = Vec::new();
                if ty.histories > 0 {
                    entries.extend(hist.into_iter().map(|(p, a)| (p, Name(a))));
                }
                for (i, r) in regs.into_iter().enumerate() {
                    if let Some(a) = r {
                        entries.push((ty.histories + 1 + i, Name(a)));
                    }
                }
                Assignment::from_places(ty, entries).unwrap()
            })
    }

    proptest! {
        #[test]
        fn every_name_has_one_location(h in arb_assignment(), probe in 0u32..8) {
            let a = Name(probe);
            let all = h.ty().all();
            let hits: Vec<PlaceSet> = all
                .subsets()
                .into_iter()
                .filter(|&x| !x.is_empty() && h.at(x).contains(&a))
                .collect();
            if h.is_fresh(a) {
                prop_assert!(hits.is_empty());
            } else {
                prop_assert_eq!(hits, vec![h.location(a)]);
            }
        }

        #[test]
        fn updates_keep_register_cap(h in arb_assignment(), probe in 0u32..8, bits in 0u64..64) {
            let x = PlaceSet(bits).intersection(h.ty().all());
            let moved = h.move_name(Name(probe), x);
            prop_assert!(moved.respects_register_cap());
            prop_assert!(h.reset_places(x).respects_register_cap());
            if x.is_empty() {
                prop_assert!(moved.is_fresh(Name(probe)));
            } else {
                prop_assert!(moved.at(x).contains(&Name(probe)));
            }
        }
    }
}
