//! Skeletons: name-free summaries of the register structure of an assignment.
//!
//! A skeleton `φ` gives every register the index of the name it holds
//! (indices are handed out in register order, starting at 1, equal names
//! sharing an index) and every history the set of register indices whose
//! names it contains. Names held only by histories are not represented; the
//! counter machines built from skeletons count them instead.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::assignment::Assignment;
use crate::name::Name;
use crate::place::{HraType, PlaceSet};

/// A set of skeleton indices; bit `j` stands for index `j` (index 0 means
/// "no register name").
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct IndexSet(pub u32);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn single(j: usize) -> Self {
        IndexSet(1 << j)
    }

    pub fn contains(&self, j: usize) -> bool {
        j < 32 && self.0 & (1 << j) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |j| bits & (1 << j) != 0)
    }

    /// The only element, if the set is a singleton.
    pub fn the_one(&self) -> Option<usize> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as usize)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "{{")?;
        for (k, j) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Skeleton {
    ty: HraType,
    phi: Vec<IndexSet>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SkeletonError {
    /// The index names no register content of the skeleton.
    NoWitness { index: usize },
}

impl fmt::Display for SkeletonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkeletonError::NoWitness { index } => write!(f, "no register name with index {index}"),
        }
    }
}

impl core::error::Error for SkeletonError {}

impl Skeleton {
    /// The skeleton with every place empty.
    pub fn empty(ty: HraType) -> Self {
        Skeleton { ty, phi: alloc::vec![IndexSet::EMPTY; ty.places()] }
    }

    /// Builds a skeleton from raw values, checking the invariants.
    pub fn from_phi(ty: HraType, phi: Vec<IndexSet>) -> Option<Self> {
        let s = Skeleton { ty, phi };
        s.is_well_formed().then_some(s)
    }

    pub fn ty(&self) -> HraType {
        self.ty
    }

    /// `φ(i)` for a 1-based place.
    pub fn phi(&self, place: usize) -> IndexSet {
        self.phi[place - 1]
    }

    pub fn values(&self) -> &[IndexSet] {
        &self.phi
    }

    /// Indices in use by registers.
    pub fn register_indices(&self) -> IndexSet {
        let m = self.ty.histories;
        IndexSet(self.phi[m..].iter().fold(0, |acc, s| acc | s.0))
    }

    /// Checks canonical indexing and that histories only mention register
    /// indices.
    pub fn is_well_formed(&self) -> bool {
        let m = self.ty.histories;
        if self.phi.len() != self.ty.places() {
            return false;
        }
        let mut next = 1;
        for s in &self.phi[m..] {
            match s.len() {
                0 => {}
                1 => {
                    let j = s.the_one().unwrap();
                    if j == next {
                        next += 1;
                    } else if j == 0 || j > next {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        let used = self.register_indices();
        self.phi[..m].iter().all(|h| h.0 & !used.0 == 0)
    }

    /// `φ@X`: indices found in exactly the places `X`; `{0}` for `X = ∅`.
    pub fn at(&self, x: PlaceSet) -> IndexSet {
        if x.is_empty() {
            return IndexSet::single(0);
        }
        let mut inter = u32::MAX;
        let mut outside = 0;
        for (i, s) in self.phi.iter().enumerate() {
            if x.contains(i + 1) {
                inter &= s.0;
            } else {
                outside |= s.0;
            }
        }
        IndexSet(inter & !outside)
    }

    /// Renumbers register indices by first appearance and drops history
    /// entries whose index no longer occurs in a register.
    fn canonical(ty: HraType, phi: Vec<IndexSet>) -> Skeleton {
        let m = ty.histories;
        let mut renum: BTreeMap<usize, usize> = BTreeMap::new();
        for s in &phi[m..] {
            if let Some(j) = s.the_one() {
                let next = renum.len() + 1;
                renum.entry(j).or_insert(next);
            }
        }
        let map = |s: IndexSet| {
            IndexSet(s.iter().filter_map(|j| renum.get(&j)).fold(0, |acc, &k| acc | (1 << k)))
        };
        Skeleton { ty, phi: phi.into_iter().map(map).collect() }
    }

    /// `φ[j→X′]`: the skeleton after moving the name with index `j` (0 for a
    /// name held by no register) to exactly the places `X′`.
    pub fn skel_move(&self, j: usize, post: PlaceSet) -> Result<Skeleton, SkeletonError> {
        if j != 0 && !self.register_indices().contains(j) {
            return Err(SkeletonError::NoWitness { index: j });
        }
        let ty = self.ty;
        let m = ty.histories;
        // A name without a register index gets a temporary one above all others.
        let moved = if j == 0 { 31 } else { j };
        let mut phi = self.phi.clone();
        for (i, s) in phi.iter_mut().enumerate() {
            let place = i + 1;
            if place > m {
                if post.contains(place) {
                    *s = IndexSet::single(moved);
                } else if j != 0 && s.contains(j) {
                    *s = IndexSet::EMPTY;
                }
            } else {
                let mut bits = s.0;
                if j != 0 {
                    bits &= !(1 << j);
                }
                if post.contains(place) {
                    bits |= 1 << moved;
                }
                *s = IndexSet(bits);
            }
        }
        Ok(Skeleton::canonical(ty, phi))
    }

    /// `φ[X↦∅]`.
    pub fn skel_reset(&self, x: PlaceSet) -> Skeleton {
        let mut phi = self.phi.clone();
        for p in x.iter() {
            if p <= phi.len() {
                phi[p - 1] = IndexSet::EMPTY;
            }
        }
        Skeleton::canonical(self.ty, phi)
    }

    /// An assignment with this skeleton holding no history-only names; the
    /// name of index `j` is `Name(j)`.
    pub fn representative(&self) -> Assignment {
        let entries = self
            .phi
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |j| (i + 1, Name(j as u32))));
        Assignment::from_places(self.ty, entries).expect("skeleton respects the register cap")
    }
}

impl fmt::Debug for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.phi.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// `Σ(H)`.
pub fn skeleton_of(h: &Assignment) -> Skeleton {
    let ty = h.ty();
    let m = ty.histories;
    let mut index: BTreeMap<Name, usize> = BTreeMap::new();
    let mut phi = alloc::vec![IndexSet::EMPTY; ty.places()];
    for r in m + 1..=ty.places() {
        if let Some(a) = h.register(r) {
            let next = index.len() + 1;
            let j = *index.entry(a).or_insert(next);
            phi[r - 1] = IndexSet::single(j);
        }
    }
    for (a, &j) in &index {
        for p in h.location(*a).iter().filter(|&p| p <= m) {
            phi[p - 1].0 |= 1 << j;
        }
    }
    Skeleton { ty, phi }
}

/// `Σ(m,n)`, in a fixed order.
pub fn enumerate_skeletons(ty: HraType) -> Vec<Skeleton> {
    let (m, n) = (ty.histories, ty.registers);
    let mut regs: Vec<Vec<IndexSet>> = alloc::vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for r in &regs {
            let used = r.iter().filter_map(|s| s.the_one()).max().unwrap_or(0);
            let mut push = |s: IndexSet| {
                let mut v = r.clone();
                v.push(s);
                next.push(v);
            };
            push(IndexSet::EMPTY);
            for j in 1..=used + 1 {
                push(IndexSet::single(j));
            }
        }
        regs = next;
    }
    let mut out = Vec::new();
    for r in regs {
        let used = r.iter().fold(0u32, |acc, s| acc | s.0);
        let subsets = PlaceSet(used as u64).subsets();
        let mut hists: Vec<Vec<IndexSet>> = alloc::vec![Vec::new()];
        for _ in 0..m {
            let mut next = Vec::new();
            for h in &hists {
                for s in &subsets {
                    let mut v = h.clone();
                    v.push(IndexSet(s.0 as u32));
                    next.push(v);
                }
            }
            hists = next;
        }
        for h in hists {
            let mut phi = h;
            phi.extend(r.iter().copied());
            out.push(Skeleton { ty, phi });
        }
    }
    out
}

/// `2^{mn} · (n+1)!`.
pub fn skeleton_bound(ty: HraType) -> u128 {
    let (m, n) = (ty.histories as u32, ty.registers as u32);
    let fact: u128 = (1..=(n as u128 + 1)).product();
    (1u128 << (m * n)) * fact
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::name::Permutation;
    use alloc::vec;
    use proptest::prelude::*;

    fn ps(p: &[usize]) -> PlaceSet {
        PlaceSet::from_places(p.iter().copied())
    }

    fn eq1() -> (Assignment, Assignment) {
        let ty = HraType::new(1, 4);
        let (a, b, c, d) = (Name(1), Name(2), Name(3), Name(4));
        let h1 = Assignment::from_places(ty, vec![(1, b), (2, a), (4, b), (5, a)]).unwrap();
        let h2 = Assignment::from_places(ty, vec![(1, a), (1, b), (1, c), (2, d), (4, a), (5, d)]).unwrap();
        (h1, h2)
    }

    fn expected() -> Skeleton {
        let s = |j: usize| IndexSet::single(j);
        Skeleton::from_phi(HraType::new(1, 4), vec![s(2), s(1), IndexSet::EMPTY, s(2), s(1)]).unwrap()
    }

    #[test]
    fn worked_pair_shares_skeleton() {
        let (h1, h2) = eq1();
        assert_eq!(skeleton_of(&h1), expected());
        assert_eq!(skeleton_of(&h2), expected());
        assert_eq!(h1.count_at(ps(&[1])), 0);
        assert_eq!(h2.count_at(ps(&[1])), 2);
    }

    #[test]
    fn at_examples() {
        let s = expected();
        assert_eq!(s.at(ps(&[1, 4])), IndexSet::single(2));
        assert_eq!(s.at(PlaceSet::EMPTY), IndexSet::single(0));
        let e = Skeleton::empty(HraType::new(1, 2));
        assert!(e.at(ps(&[2])).is_empty());
    }

    #[test]
    fn counts() {
        for m in 0..=3 {
            assert_eq!(enumerate_skeletons(HraType::new(m, 0)).len(), 1);
        }
        assert_eq!(enumerate_skeletons(HraType::new(1, 1)).len(), 3);
        assert_eq!(enumerate_skeletons(HraType::new(0, 2)).len(), 5);
    }

    #[test]
    fn enumeration_is_well_formed_and_bounded() {
        for m in 0..=3 {
            for n in 0..=3 {
                let ty = HraType::new(m, n);
                let all = enumerate_skeletons(ty);
                assert!(all.iter().all(Skeleton::is_well_formed));
                let distinct: alloc::collections::BTreeSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), all.len());
                assert!(all.len() as u128 <= skeleton_bound(ty));
            }
        }
    }

    #[test]
    fn fresh_history_insert_keeps_skeleton() {
        let s = expected();
        assert_eq!(s.skel_move(0, ps(&[1])).unwrap(), s);
    }

    #[test]
    fn fresh_register_insert() {
        let e = Skeleton::empty(HraType::new(1, 1));
        let s = e.skel_move(0, ps(&[2])).unwrap();
        assert_eq!(s.phi(2), IndexSet::single(1));
    }

    #[test]
    fn resets() {
        let s = expected();
        let ty = s.ty();
        assert_eq!(s.skel_reset(ty.all()), Skeleton::empty(ty));
        let r = s.skel_reset(ps(&[1]));
        assert_eq!(r.phi(1), IndexSet::EMPTY);
        assert_eq!(&r.values()[1..], &s.values()[1..]);
        assert!(s.skel_move(3, ps(&[1])).is_err());
    }

    fn arb_case() -> impl Strategy<Value = (Assignment, u32, u64)> {
        (0usize..=3, 0usize..=3)
            .prop_filter("nonempty", |(m, n)| m + n > 0)
            .prop_flat_map(|(m, n)| {
                let ty = HraType::new(m, n);
                let hist = proptest::collection::vec((1..=m.max(1), 0u32..5), 0..8);
                let regs = proptest::collection::vec(proptest::option::of(0u32..5), n);
                (Just(ty), hist, regs, 0u32..6, 0u64..64)
            })
            .prop_map(|(ty, hist, regs, a, bits)| {
                let mut entries = Vec::new();
                if ty.histories > 0 {
                    entries.extend(hist.into_iter().map(|(p, a)| (p, Name(a))));
                }
                for (i, r) in regs.into_iter().enumerate() {
                    if let Some(a) = r {
                        entries.push((ty.histories + 1 + i, Name(a)));
                    }
                }
                let h = Assignment::from_places(ty, entries).unwrap();
                let bits = bits & ty.all().0;
                (h, a, bits)
            })
    }

    /// Index of `a` in `Σ(H)`, 0 when `a` is in no register.
    fn index_of(h: &Assignment, a: Name) -> usize {
        let s = skeleton_of(h);
        let m = h.ty().histories;
        (m + 1..=h.ty().places())
            .find(|&r| h.register(r) == Some(a))
            .and_then(|r| s.phi(r).the_one())
            .unwrap_or(0)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn move_square((h, a, bits) in arb_case()) {
            let a = Name(a);
            let post = PlaceSet(bits);
            let j = index_of(&h, a);
            let direct = skeleton_of(&h).skel_move(j, post).unwrap();
            prop_assert_eq!(direct, skeleton_of(&h.move_name(a, post)));
        }

        #[test]
        fn reset_square((h, _a, bits) in arb_case()) {
            let x = PlaceSet(bits);
            prop_assert_eq!(skeleton_of(&h).skel_reset(x), skeleton_of(&h.reset_places(x)));
        }

        #[test]
        fn permutation_invariant((h, a, _bits) in arb_case(), b in 0u32..8) {
            let p = Permutation::swap(Name(a), Name(b));
            prop_assert_eq!(skeleton_of(&h), skeleton_of(&h.permute(&p)));
        }

        #[test]
        fn skeleton_well_formed((h, _a, _bits) in arb_case()) {
            let s = skeleton_of(&h);
            prop_assert!(s.is_well_formed());
            prop_assert_eq!(skeleton_of(&s.representative()), s);
        }
    }
}
