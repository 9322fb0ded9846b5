//! Packed automata: reset prefixes folded into letter transitions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use super::intersection;
use super::registers_to_histories;
use crate::assignment::Assignment;
use crate::classify::reset_prefixes;
use crate::hra::{Hra, HraBuilder, Label, StateId, StateInfo};
use crate::name::Name;
use crate::oracles::bisim::LetterSystem;
use crate::place::{HraType, PlaceSet};
use crate::semantics::Configuration;

/// `src --reset; pre, post--> dst`: clear `reset`, then read a name found in
/// exactly `pre` and move it to exactly `post`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PackedTransition {
    pub src: StateId,
    pub reset: PlaceSet,
    pub pre: PlaceSet,
    pub post: PlaceSet,
    pub dst: StateId,
}

impl PackedTransition {
    /// Whether the transition reads a name whose location is `x`.
    pub fn fires_on(&self, x: PlaceSet) -> bool {
        x.difference(self.reset) == self.pre
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PackedError {
    RegistersPresent(HraType),
    /// Two transitions of `state` read names found in exactly `places`.
    NotDeterministic { state: StateId, places: PlaceSet },
}

impl fmt::Display for PackedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PackedError::RegistersPresent(t) => write!(f, "packing needs a history-only automaton, got type {t}"),
            PackedError::NotDeterministic { state, places } => {
                write!(f, "state {state} has two transitions for names in exactly {{{places}}}")
            }
        }
    }
}

impl core::error::Error for PackedError {}

/// A reset-free `(m, 0)` automaton whose transitions carry a reset prefix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PackedHra {
    ty: HraType,
    states: Vec<StateInfo>,
    initial: StateId,
    init: Assignment,
    transitions: Vec<PackedTransition>,
    finals: BTreeSet<StateId>,
    out: Vec<Vec<usize>>,
}

impl PackedHra {
    fn new(
        ty: HraType,
        states: Vec<StateInfo>,
        initial: StateId,
        init: Assignment,
        transitions: Vec<PackedTransition>,
        finals: BTreeSet<StateId>,
    ) -> Self {
        let mut out = alloc::vec![Vec::new(); states.len()];
        for (i, t) in transitions.iter().enumerate() {
            out[t.src.index()].push(i);
        }
        PackedHra { ty, states, initial, init, transitions, finals, out }
    }

    pub fn ty(&self) -> HraType {
        self.ty
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn initial_assignment(&self) -> &Assignment {
        &self.init
    }

    pub fn transitions(&self) -> &[PackedTransition] {
        &self.transitions
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(&q)
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len() as u32).map(StateId)
    }

    pub fn state_label(&self, q: StateId) -> &str {
        &self.states[q.index()].label
    }

    pub fn outgoing(&self, q: StateId) -> impl Iterator<Item = &PackedTransition> {
        self.out[q.index()].iter().map(|&i| &self.transitions[i])
    }

    pub fn step(&self, c: &Configuration, letter: Name) -> Vec<Configuration> {
        let mut out = Vec::new();
        for t in self.outgoing(c.state) {
            let h = c.assignment.reset_places(t.reset);
            if h.location(letter) == t.pre {
                out.push(Configuration::new(t.dst, h.move_name(letter, t.post)));
            }
        }
        out
    }

    pub fn membership(&self, w: &[Name]) -> bool {
        let mut f: BTreeSet<Configuration> = [Configuration::new(self.initial, self.init.clone())].into();
        for &x in w {
            f = f.iter().flat_map(|c| self.step(c, x)).collect();
            if f.is_empty() {
                return false;
            }
        }
        f.iter().any(|c| self.is_final(c.state))
    }

    /// For every state and location, at most one transition may fire.
    pub fn determinism_conflict(&self) -> Option<PackedError> {
        for q in self.states() {
            for x in self.ty.all().subsets() {
                if self.outgoing(q).filter(|t| t.fires_on(x)).take(2).count() > 1 {
                    return Some(PackedError::NotDeterministic { state: q, places: x });
                }
            }
        }
        None
    }

    pub fn is_deterministic(&self) -> bool {
        self.determinism_conflict().is_none()
    }

    /// Whether every state reads every possible location.
    pub fn is_complete(&self) -> bool {
        self.states()
            .all(|q| self.ty.all().subsets().into_iter().all(|x| self.outgoing(q).any(|t| t.fires_on(x))))
    }

    /// An ordinary automaton with the same language; nonempty reset prefixes
    /// go through a hidden midpoint per `(state, prefix)`.
    pub fn to_hra(&self) -> Hra {
        let mut b = HraBuilder::new(self.ty);
        b.set_initial_assignment(&self.init);
        for info in &self.states {
            if info.hidden {
                b.add_hidden_state(info.label.clone());
            } else {
                b.add_state(info.label.clone());
            }
        }
        b.set_initial(self.initial);
        for &q in &self.finals {
            b.set_final(q);
        }
        let mut mids: BTreeMap<(StateId, PlaceSet), StateId> = BTreeMap::new();
        for t in &self.transitions {
            let src = if t.reset.is_empty() {
                t.src
            } else {
                *mids.entry((t.src, t.reset)).or_insert_with(|| {
                    let id = b.add_hidden_state(format!("{}~{}", self.states[t.src.index()].label, t.reset));
                    b.reset(t.src, t.reset, id);
                    id
                })
            };
            b.accept(src, t.pre, t.post, t.dst);
        }
        b.build_unchecked()
    }
}

impl LetterSystem for PackedHra {
    type Config = Configuration;

    fn start(&self) -> Configuration {
        Configuration::new(self.initial, self.init.clone())
    }

    fn moves(&self, c: &Configuration, letter: Name) -> Vec<Configuration> {
        let mut v = self.step(c, letter);
        v.sort();
        v.dedup();
        v
    }

    fn finality(&self, c: &Configuration) -> bool {
        self.is_final(c.state)
    }

    fn names(&self, c: &Configuration) -> BTreeSet<Name> {
        c.assignment.names().collect()
    }
}

/// The packed form of a history-only automaton, with the same states and
/// configurations.
pub fn to_packed(a: &Hra) -> Result<PackedHra, PackedError> {
    if a.ty().registers > 0 {
        return Err(PackedError::RegistersPresent(a.ty()));
    }
    let mut ts = BTreeSet::new();
    let mut finals = BTreeSet::new();
    for q in a.states() {
        for (p, y) in reset_prefixes(a, q) {
            if a.is_final(p) {
                finals.insert(q);
            }
            for &i in a.outgoing(p) {
                let t = a.transition(i);
                if let Label::Accept { pre, post } = t.label {
                    ts.insert(PackedTransition { src: q, reset: y, pre, post, dst: t.dst });
                }
            }
        }
    }
    let states = a.states().map(|q| a.state_info(q).clone()).collect();
    Ok(PackedHra::new(
        a.ty(),
        states,
        a.initial(),
        a.initial_assignment().clone(),
        ts.into_iter().collect(),
        finals,
    ))
}

/// `N* \ L(a)` for a deterministic packed automaton.
pub fn complement_deterministic(a: &PackedHra) -> Result<PackedHra, PackedError> {
    if let Some(e) = a.determinism_conflict() {
        return Err(e);
    }
    let mut states = a.states.clone();
    let sink = StateId(states.len() as u32);
    states.push(StateInfo { label: "sink".into(), hidden: false });
    let all = a.ty.all();
    let mut ts = a.transitions.clone();
    for q in a.states() {
        for x in all.subsets() {
            if !a.outgoing(q).any(|t| t.fires_on(x)) {
                ts.push(PackedTransition { src: q, reset: PlaceSet::EMPTY, pre: x, post: PlaceSet::EMPTY, dst: sink });
            }
        }
    }
    ts.push(PackedTransition { src: sink, reset: all, pre: PlaceSet::EMPTY, post: PlaceSet::EMPTY, dst: sink });
    let mut finals: BTreeSet<StateId> = a.states().filter(|q| !a.is_final(*q)).collect();
    finals.insert(sink);
    Ok(PackedHra::new(a.ty, states, a.initial, a.init.clone(), ts, finals))
}

/// Decides `L(a1) ⊆ L(a2)`; `a2` must pack to a deterministic automaton.
pub fn containment_deterministic(a1: &Hra, a2: &Hra) -> Result<bool, PackedError> {
    let h = registers_to_histories(a2);
    let c = complement_deterministic(&to_packed(&h)?)?;
    let product = intersection(a1, &c.to_hra());
    Ok(crate::reductions::is_empty(&product))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::hra::places;
    use crate::oracles::bisim::identity_bisimulation;
    use crate::oracles::words::{enumerate_words, first_difference};
    use crate::oracles::{oracle_membership, LangId};
    use crate::semantics::membership;
    use alloc::vec;

    fn abc() -> Vec<Name> {
        vec![Name(1), Name(2), Name(3)]
    }

    #[test]
    fn reset_free_packs_trivially() {
        let a = catalog::l4();
        let p = to_packed(&a).unwrap();
        assert_eq!(p.transitions().len(), a.transitions().len());
        assert!(p.transitions().iter().all(|t| t.reset.is_empty()));
        assert_eq!(p.finals(), a.finals());
    }

    #[test]
    fn reset_chain() {
        let mut b = HraBuilder::new(HraType::new(2, 0));
        let q = b.add_states(4);
        b.reset(q[0], places(&[1]), q[1]);
        b.reset(q[1], places(&[2]), q[2]);
        b.accept(q[2], PlaceSet::EMPTY, places(&[1]), q[3]);
        let p = to_packed(&b.build().unwrap()).unwrap();
        let want = PackedTransition {
            src: q[0],
            reset: places(&[1, 2]),
            pre: PlaceSet::EMPTY,
            post: places(&[1]),
            dst: q[3],
        };
        assert!(p.transitions().contains(&want));
    }

    #[test]
    fn packing_is_identity_bisimilar() {
        for (name, a) in catalog::regression(Name(0)) {
            let h = registers_to_histories(&a);
            let p = to_packed(&h).unwrap();
            assert!(identity_bisimulation(&h, &p, 4), "{name}");
            assert_eq!(first_difference(&a, &p.to_hra(), &[Name(0), Name(1), Name(2)], 4), None, "{name}");
        }
    }

    #[test]
    fn registers_refused() {
        assert!(matches!(to_packed(&catalog::l1(Name(0))), Err(PackedError::RegistersPresent(_))));
    }

    #[test]
    fn complement_of_l0() {
        let p = to_packed(&catalog::l0()).unwrap();
        let c = complement_deterministic(&p).unwrap();
        assert!(c.is_complete());
        let (a, b) = (Name(1), Name(2));
        assert!(c.membership(&[a, a]));
        assert!(!c.membership(&[a, b]));
        assert!(!c.membership(&[]));
        for w in enumerate_words(&abc(), 5) {
            assert_ne!(c.membership(&w), oracle_membership(LangId::L0, &w), "{w}");
            assert_eq!(membership(&c.to_hra(), &w), c.membership(&w));
        }
    }

    #[test]
    fn nondeterministic_refused() {
        let p = to_packed(&catalog::l4()).unwrap();
        assert!(matches!(complement_deterministic(&p), Err(PackedError::NotDeterministic { .. })));
    }

    #[test]
    fn containments() {
        let l0 = catalog::l0();
        assert_eq!(containment_deterministic(&l0, &l0), Ok(true));
        assert_eq!(containment_deterministic(&catalog::l0_two(), &l0), Ok(true));
        assert_eq!(containment_deterministic(&l0, &catalog::l0_two()), Ok(false));
        assert!(membership(&l0, &[Name(1)]));
    }
}
