//! Union and intersection over a banded place layout.
//!
//! The combined type is `(m1+m2, n1+n2)` with places ordered as: histories
//! of the left automaton, histories of the right one, registers of the left
//! one, registers of the right one.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::StateTag;
use crate::assignment::Assignment;
use crate::hra::{Hra, HraBuilder, Label, StateId, Transition};
use crate::place::{HraType, PlaceSet};

struct Bands {
    ty: HraType,
    left: HraType,
    right: HraType,
}

impl Bands {
    fn new(left: HraType, right: HraType) -> Self {
        let ty = HraType::new(left.histories + right.histories, left.registers + right.registers);
        Bands { ty, left, right }
    }

    fn left_place(&self, p: usize) -> usize {
        if p <= self.left.histories {
            p
        } else {
            p + self.right.histories
        }
    }

    fn right_place(&self, p: usize) -> usize {
        if p <= self.right.histories {
            self.left.histories + p
        } else {
            self.left.places() + p
        }
    }

    fn left_set(&self, x: PlaceSet) -> PlaceSet {
        x.map(|p| self.left_place(p))
    }

    fn right_set(&self, x: PlaceSet) -> PlaceSet {
        x.map(|p| self.right_place(p))
    }

    fn initial(&self, a1: &Hra, a2: &Hra) -> Assignment {
        let h1 = a1.initial_assignment().embed(self.ty, |p| self.left_place(p));
        let h2 = a2.initial_assignment().embed(self.ty, |p| self.right_place(p));
        h1.merge(&h2)
    }
}

/// `L(a1) ∪ L(a2)`.
pub fn union(a1: &Hra, a2: &Hra) -> Hra {
    let bands = Bands::new(a1.ty(), a2.ty());
    let mut b = HraBuilder::new(bands.ty);
    b.set_initial_assignment(&bands.initial(a1, a2));
    let start = b.add_state("start");
    b.set_initial(start);
    if a1.is_final(a1.initial()) || a2.is_final(a2.initial()) {
        b.set_final(start);
    }

    // Each branch must see the other branch's initial names where they sit,
    // so its letter moves are repeated once per such location.
    let other_locs = |h: &Assignment, f: &dyn Fn(PlaceSet) -> PlaceSet| -> BTreeSet<PlaceSet> {
        let mut zs: BTreeSet<PlaceSet> = h.locations().map(|(_, l)| f(l)).collect();
        zs.insert(PlaceSet::EMPTY);
        zs
    };
    let z1 = other_locs(a2.initial_assignment(), &|x| bands.right_set(x));
    let z2 = other_locs(a1.initial_assignment(), &|x| bands.left_set(x));

    let mut branch = |a: &Hra, prefix: &str, zs: &BTreeSet<PlaceSet>, f: &dyn Fn(PlaceSet) -> PlaceSet| {
        let map: Vec<StateId> = a
            .states()
            .map(|q| {
                let label = format!("{prefix}{}", a.state_label(q));
                let id = if a.state_info(q).hidden { b.add_hidden_state(label) } else { b.add_state(label) };
                if a.is_final(q) {
                    b.set_final(id);
                }
                id
            })
            .collect();
        for t in a.transitions() {
            let dst = map[t.dst.index()];
            let mut srcs = alloc::vec![map[t.src.index()]];
            if t.src == a.initial() {
                srcs.push(start);
            }
            for src in srcs {
                match t.label {
                    Label::Reset(x) => {
                        b.reset(src, f(x), dst);
                    }
                    Label::Accept { pre, post } => {
                        for &z in zs {
                            b.accept(src, f(pre).union(z), f(post).union(z), dst);
                        }
                    }
                }
            }
        }
    };
    branch(a1, "1.", &z1, &|x| bands.left_set(x));
    branch(a2, "2.", &z2, &|x| bands.right_set(x));
    b.build_unchecked()
}

/// `L(a1) ∩ L(a2)`.
pub fn intersection(a1: &Hra, a2: &Hra) -> Hra {
    intersection_tagged(a1, a2).0
}

pub fn intersection_tagged(a1: &Hra, a2: &Hra) -> (Hra, Vec<StateTag>) {
    let bands = Bands::new(a1.ty(), a2.ty());
    let mut b = HraBuilder::new(bands.ty);
    b.set_initial_assignment(&bands.initial(a1, a2));
    let mut ids: BTreeMap<(StateId, StateId), StateId> = BTreeMap::new();
    let mut tags = Vec::new();
    let mut work = Vec::new();
    let mut intern = |b: &mut HraBuilder, p: (StateId, StateId), work: &mut Vec<_>| -> StateId {
        if let Some(&id) = ids.get(&p) {
            return id;
        }
        let id = b.add_state(format!("({},{})", a1.state_label(p.0), a2.state_label(p.1)));
        if a1.is_final(p.0) && a2.is_final(p.1) {
            b.set_final(id);
        }
        ids.insert(p, id);
        tags.push(StateTag::Pair(p.0, p.1));
        work.push((p, id));
        id
    };
    let start = intern(&mut b, (a1.initial(), a2.initial()), &mut work);
    b.set_initial(start);
    while let Some(((q1, q2), src)) = work.pop() {
        for &i in a1.outgoing(q1) {
            let t1 = a1.transition(i);
            match t1.label {
                Label::Reset(x) => {
                    let dst = intern(&mut b, (t1.dst, q2), &mut work);
                    b.reset(src, bands.left_set(x), dst);
                }
                Label::Accept { pre: x1, post: y1 } => {
                    for &j in a2.outgoing(q2) {
                        let t2 = a2.transition(j);
                        if let Label::Accept { pre: x2, post: y2 } = t2.label {
                            let dst = intern(&mut b, (t1.dst, t2.dst), &mut work);
                            let pre = bands.left_set(x1).union(bands.right_set(x2));
                            let post = bands.left_set(y1).union(bands.right_set(y2));
                            b.add_transition(Transition { src, label: Label::accept(pre, post), dst });
                        }
                    }
                }
            }
        }
        for &j in a2.outgoing(q2) {
            let t2 = a2.transition(j);
            if let Label::Reset(x) = t2.label {
                let dst = intern(&mut b, (q1, t2.dst), &mut work);
                b.reset(src, bands.right_set(x), dst);
            }
        }
    }
    (b.build_unchecked(), tags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::hra::validate;
    use crate::name::Name;
    use crate::oracles::words::{first_difference, sweep};
    use crate::oracles::{oracle_membership, LangId};
    use crate::semantics::membership;
    use alloc::vec;

    fn abc() -> Vec<Name> {
        vec![Name(1), Name(2), Name(3)]
    }

    #[test]
    fn union_l3_l4() {
        let u = union(&catalog::l3(), &catalog::l4());
        assert!(validate(&u).is_ok());
        let (a, b) = (Name(1), Name(2));
        assert!(membership(&u, &[a, b, a]));
    }

    #[test]
    fn union_idempotent_and_unit() {
        for (_, a) in catalog::regression(Name(0)) {
            let mut al = abc();
            al.push(Name(0));
            assert_eq!(first_difference(&a, &union(&a, &a), &al, 4), None);
            assert_eq!(first_difference(&a, &union(&catalog::empty_language(), &a), &al, 4), None);
        }
    }

    #[test]
    fn union_with_shared_initial_names() {
        let a0 = Name(0);
        let u = union(&catalog::l1(a0), &catalog::l_a0(a0));
        let al = [a0, Name(1), Name(2)];
        sweep(&u, &al, 5, |w, got| {
            let want = oracle_membership(LangId::L1(a0), w) || oracle_membership(LangId::La0(a0), w);
            assert_eq!(got, want, "{w:?}");
            true
        });
    }

    #[test]
    fn decomposition_gives_l2() {
        let i = intersection(&catalog::l2_odd_half(), &catalog::l2_even_half());
        sweep(&i, &abc(), 6, |w, got| {
            assert_eq!(got, oracle_membership(LangId::L2, w), "{w:?}");
            true
        });
    }

    #[test]
    fn intersection_l3_l4() {
        let i = intersection(&catalog::l3(), &catalog::l4());
        assert!(membership(&i, &[Name(1), Name(2), Name(1)]));
        assert!(!membership(&i, &[Name(1), Name(1)]));
    }

    #[test]
    fn intersection_with_empty() {
        let i = intersection(&catalog::l0(), &catalog::empty_language());
        sweep(&i, &abc(), 4, |_, got| {
            assert!(!got);
            true
        });
    }
}
