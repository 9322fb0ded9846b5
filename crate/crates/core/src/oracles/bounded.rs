//! Forward emptiness search with canonical fresh names.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::hra::{Hra, StateId};
use crate::name::{Name, Word};
use crate::place::PlaceSet;
use crate::semantics::{eps_closure, initial_configuration, step, Configuration};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BoundedVerdict {
    /// An accepted word.
    Nonempty(Word),
    /// The search space was exhausted: the language is empty.
    EmptyWithinBound,
    /// Nothing accepted within the depth, but unexplored configurations remain.
    BoundExhausted,
}

/// States reachable from the initial state in the transition graph, ignoring
/// all guards.
pub fn graph_reachable(a: &Hra) -> BTreeSet<StateId> {
    let mut seen = BTreeSet::new();
    seen.insert(a.initial());
    let mut work = alloc::vec![a.initial()];
    while let Some(q) = work.pop() {
        for &i in a.outgoing(q) {
            let d = a.transition(i).dst;
            if seen.insert(d) {
                work.push(d);
            }
        }
    }
    seen
}

/// A configuration up to renaming of names: the state and the multiset of
/// name locations.
fn shape(c: &Configuration) -> (StateId, Vec<PlaceSet>) {
    let mut locs: Vec<PlaceSet> = c.assignment.locations().map(|(_, l)| l).collect();
    locs.sort();
    (c.state, locs)
}

/// Breadth-first search for an accepted word of length at most `depth`.
///
/// Only one fresh letter is tried per configuration (the least unused name);
/// by equivariance every other fresh name behaves the same. Configurations
/// are deduplicated up to renaming.
pub fn bounded_emptiness(a: &Hra, depth: usize) -> BoundedVerdict {
    if graph_reachable(a).is_disjoint(a.finals()) {
        return BoundedVerdict::EmptyWithinBound;
    }
    let mut seen: BTreeSet<(StateId, Vec<PlaceSet>)> = BTreeSet::new();
    let mut queue: VecDeque<(Configuration, Word)> = VecDeque::new();
    let start = eps_closure(a, &[initial_configuration(a)].into_iter().collect());
    for c in start {
        if seen.insert(shape(&c)) {
            queue.push_back((c, Word::new()));
        }
    }
    let mut truncated = false;
    while let Some((c, w)) = queue.pop_front() {
        if a.is_final(c.state) {
            return BoundedVerdict::Nonempty(w);
        }
        if w.len() == depth {
            truncated = true;
            continue;
        }
        let mut letters: Vec<Name> = c.assignment.names().collect();
        letters.push(Name::least_fresh(letters.clone().iter()));
        for letter in letters {
            let succ = step(a, &c, letter);
            for d in eps_closure(a, &succ) {
                if seen.insert(shape(&d)) {
                    let mut v = w.clone();
                    v.push(letter);
                    queue.push_back((d, v));
                }
            }
        }
    }
    if truncated {
        BoundedVerdict::BoundExhausted
    } else {
        BoundedVerdict::EmptyWithinBound
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::hra::{places, HraBuilder};
    use crate::place::HraType;
    use crate::semantics::membership;

    #[test]
    fn l3_accepts_empty_word() {
        assert_eq!(bounded_emptiness(&catalog::l3(), 1), BoundedVerdict::Nonempty(Word::new()));
    }

    #[test]
    fn final_stripped_is_empty() {
        assert_eq!(bounded_emptiness(&catalog::l3().without_finals(), 3), BoundedVerdict::EmptyWithinBound);
    }

    #[test]
    fn deep_pump_exhausts() {
        // Five names must be stored before the final state opens.
        let mut b = HraBuilder::new(HraType::new(1, 0));
        let q = b.add_states(7);
        b.set_initial(q[0]).set_final(q[6]);
        for i in 0..5 {
            b.accept(q[i], PlaceSet::EMPTY, places(&[1]), q[i + 1]);
        }
        b.accept(q[5], places(&[1]), PlaceSet::EMPTY, q[6]);
        let a = b.build().unwrap();
        assert_eq!(bounded_emptiness(&a, 3), BoundedVerdict::BoundExhausted);
        match bounded_emptiness(&a, 6) {
            BoundedVerdict::Nonempty(w) => assert!(membership(&a, &w)),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn witnesses_replay() {
        for (_, a) in catalog::regression(Name(0)) {
            if let BoundedVerdict::Nonempty(w) = bounded_emptiness(&a, 6) {
                assert!(membership(&a, &w));
            }
        }
    }
}
