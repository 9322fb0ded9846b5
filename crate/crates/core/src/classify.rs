//! Syntactic subclasses and determinism checks.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::hra::{Hra, Label, StateId};
use crate::name::{Name, Word};
use crate::place::PlaceSet;
use crate::semantics::{eps_closure, initial_configuration, step, step_via, Configuration};

/// Subclass flags of an automaton.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Classification {
    pub non_reset: bool,
    pub unary: bool,
    pub fra: bool,
    pub ra: bool,
}

/// Resets of the empty set are no-op ε-moves and are ignored by the flags.
fn has_real_resets(a: &Hra) -> bool {
    a.transitions()
        .iter()
        .any(|t| matches!(t.label, Label::Reset(x) if !x.is_empty()))
}

pub fn classify(a: &Hra) -> Classification {
    let ty = a.ty();
    let non_reset = !has_real_resets(a);
    let unary = ty.histories == 1;
    let ra = ty.histories == 0 && non_reset;
    let fra = unary && non_reset && is_fra_shaped(a);
    Classification { non_reset, unary, fra, ra }
}

fn is_fra_shaped(a: &Hra) -> bool {
    let h1 = PlaceSet::singleton(1);
    if a.initial_assignment().locations().any(|(_, l)| !l.contains(1)) {
        return false;
    }
    let ts = a.transitions();
    ts.iter().all(|t| match t.label {
        Label::Reset(_) => true,
        Label::Accept { pre, post } => {
            post.contains(1)
                && (pre != h1
                    || ts.iter().any(|u| {
                        u.src == t.src
                            && u.dst == t.dst
                            && u.label == Label::accept(PlaceSet::EMPTY, post)
                    }))
        }
    })
}

/// Every `(p, Y)` such that `p` is reachable from `q` by resets whose union is `Y`.
pub fn reset_prefixes(a: &Hra, q: StateId) -> BTreeSet<(StateId, PlaceSet)> {
    let mut seen = BTreeSet::new();
    seen.insert((q, PlaceSet::EMPTY));
    let mut work = alloc::vec![(q, PlaceSet::EMPTY)];
    while let Some((p, y)) = work.pop() {
        for &i in a.outgoing(p) {
            let t = a.transition(i);
            if let Label::Reset(x) = t.label {
                let next = (t.dst, y.union(x));
                if seen.insert(next) {
                    work.push(next);
                }
            }
        }
    }
    seen
}

/// A pair of reset-prefixed transitions from `state` that can both fire on a
/// name found in `places` but lead to different outcomes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DeterminismConflict {
    pub state: StateId,
    pub places: PlaceSet,
}

/// Entries `(Y, pre, post, target)` of the strong-determinism condition.
fn entries(a: &Hra, q: StateId) -> Vec<(PlaceSet, PlaceSet, PlaceSet, StateId)> {
    let mut out = Vec::new();
    for (p, y) in reset_prefixes(a, q) {
        for &i in a.outgoing(p) {
            let t = a.transition(i);
            if let Label::Accept { pre, post } = t.label {
                let e = (y, pre, post, t.dst);
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
    }
    out
}

/// The first strong-determinism conflict, if any.
///
/// An entry `q ⇒Y · →(A, X1) q1` fires for every `X` with `X \ Y = A`. Two
/// entries share such an `X` iff `A ∩ Y1 = ∅`, `B ∩ Y2 = ∅` and
/// `A \ Y2 = B \ Y1`; the witness is then `A ∪ B`.
pub fn strong_determinism_conflict(a: &Hra) -> Option<DeterminismConflict> {
    for q in a.states() {
        let es = entries(a, q);
        for (i, &(y1, pa, x1, q1)) in es.iter().enumerate() {
            for &(y2, pb, x2, q2) in &es[i + 1..] {
                if (y1, x1, q1) == (y2, x2, q2) {
                    continue;
                }
                if pa.is_disjoint(y1)
                    && pb.is_disjoint(y2)
                    && pa.difference(y2) == pb.difference(y1)
                {
                    return Some(DeterminismConflict { state: q, places: pa.union(pb) });
                }
            }
        }
    }
    None
}

pub fn check_strong_determinism(a: &Hra) -> bool {
    strong_determinism_conflict(a).is_none()
}

/// A reachable configuration and a letter with two distinct successors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NondeterminismWitness {
    /// A word leading to `config`.
    pub prefix: Word,
    pub config: Configuration,
    pub letter: Name,
    pub successors: [Configuration; 2],
}

/// Explores configurations reachable with fewer than `depth` letters and
/// reports the first one where some letter has two successors (after
/// ε-moves). Letters range over the configuration's names plus one
/// canonical fresh name.
pub fn bounded_determinism_check(a: &Hra, depth: usize) -> Result<(), Box<NondeterminismWitness>> {
    if depth == 0 {
        return Ok(());
    }
    let mut seen: BTreeSet<Configuration> = BTreeSet::new();
    let start = initial_configuration(a);
    let mut layer: Vec<(Configuration, Word)> = eps_closure(a, &[start].into_iter().collect())
        .into_iter()
        .map(|c| (c, Word::new()))
        .collect();
    for c in &layer {
        seen.insert(c.0.clone());
    }
    for _ in 0..depth {
        let mut next = Vec::new();
        for (c, prefix) in &layer {
            let closed = eps_closure(a, &[c.clone()].into_iter().collect());
            let mut letters: Vec<Name> = c.assignment.names().collect();
            letters.push(Name::least_fresh(c.assignment.names().collect::<Vec<_>>().iter()));
            for &letter in &letters {
                let mut succs: BTreeSet<Configuration> = BTreeSet::new();
                for d in &closed {
                    succs.extend(step(a, d, letter));
                }
                if succs.len() >= 2 {
                    let mut it = succs.into_iter();
                    let s1 = it.next().unwrap();
                    let s2 = it.next().unwrap();
                    return Err(Box::new(NondeterminismWitness {
                        prefix: prefix.clone(),
                        config: c.clone(),
                        letter,
                        successors: [s1, s2],
                    }));
                }
                for d in &closed {
                    for (_, s) in step_via(a, d, letter) {
                        for s in eps_closure(a, &[s].into_iter().collect()) {
                            if seen.insert(s.clone()) {
                                let mut w = prefix.clone();
                                w.push(letter);
                                next.push((s, w));
                            }
                        }
                    }
                }
            }
        }
        layer = next;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::hra::{places, HraBuilder};
    use crate::place::HraType;

    #[test]
    fn l3_flags() {
        let c = classify(&catalog::l3());
        assert_eq!(c, Classification { non_reset: true, unary: true, fra: false, ra: false });
    }

    #[test]
    fn l1_flags() {
        let c = classify(&catalog::l1(Name(0)));
        assert!(!c.non_reset && c.unary && !c.fra && !c.ra);
    }

    #[test]
    fn register_only_is_ra() {
        let mut b = HraBuilder::new(HraType::new(0, 2));
        let q = b.add_state("q0");
        b.accept(q, PlaceSet::EMPTY, places(&[1]), q);
        b.accept(q, places(&[1]), places(&[2]), q);
        assert!(classify(&b.build().unwrap()).ra);
    }

    #[test]
    fn fra_needs_twins() {
        let mut b = HraBuilder::new(HraType::new(1, 1));
        let q = b.add_state("q0");
        b.accept(q, places(&[1]), places(&[1, 2]), q);
        assert!(!classify(&b.build().unwrap()).fra);
        b.accept(q, PlaceSet::EMPTY, places(&[1, 2]), q);
        assert!(classify(&b.build().unwrap()).fra);
    }

    #[test]
    fn strong_determinism_examples() {
        assert!(check_strong_determinism(&catalog::l0()));
        let mut b = HraBuilder::new(HraType::new(1, 0));
        let q = b.add_states(3);
        b.accept(q[0], PlaceSet::EMPTY, places(&[1]), q[1]);
        b.accept(q[0], PlaceSet::EMPTY, places(&[1]), q[2]);
        assert!(!check_strong_determinism(&b.build().unwrap()));
        assert!(!check_strong_determinism(&catalog::l4()));
    }

    #[test]
    fn conflict_condition_matches_brute_force() {
        let all = PlaceSet::range(1, 3);
        for y1 in all.subsets() {
            for y2 in all.subsets() {
                for pa in all.subsets() {
                    for pb in all.subsets() {
                        let brute = all
                            .subsets()
                            .into_iter()
                            .any(|x| x.difference(y1) == pa && x.difference(y2) == pb);
                        let closed = pa.is_disjoint(y1)
                            && pb.is_disjoint(y2)
                            && pa.difference(y2) == pb.difference(y1);
                        assert_eq!(brute, closed, "{y1} {y2} {pa} {pb}");
                    }
                }
            }
        }
    }

    #[test]
    fn bounded_check_examples() {
        assert!(bounded_determinism_check(&catalog::l0(), 4).is_ok());
        let w = bounded_determinism_check(&catalog::l4(), 2).unwrap_err();
        assert!(w.prefix.is_empty());
        assert!(w.config.assignment.is_fresh(w.letter));
        assert!(bounded_determinism_check(&catalog::l4(), 0).is_ok());
    }
}
