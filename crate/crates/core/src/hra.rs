//! The automaton type, its builder and well-formedness checks.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::assignment::Assignment;
use crate::name::Name;
use crate::place::{HraType, PlaceSet};

/// Dense index of a state within one automaton.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StateId(pub u32);

impl StateId {
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Label {
    /// Consume a name found in exactly `pre`, relocating it to exactly `post`.
    Accept { pre: PlaceSet, post: PlaceSet },
    /// ε-move emptying the given places.
    Reset(PlaceSet),
}

impl Label {
    pub fn accept(pre: PlaceSet, post: PlaceSet) -> Self {
        Label::Accept { pre, post }
    }

    pub fn places(&self) -> PlaceSet {
        match *self {
            Label::Accept { pre, post } => pre.union(post),
            Label::Reset(x) => x,
        }
    }

    pub fn is_reset(&self) -> bool {
        matches!(self, Label::Reset(_))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Accept { pre, post } => write!(f, "ACC {pre} : {post}"),
            Label::Reset(x) => write!(f, "RST {x}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Transition {
    pub src: StateId,
    pub label: Label,
    pub dst: StateId,
}

/// Display information for a state.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StateInfo {
    pub label: String,
    /// Auxiliary states introduced by constructions (midpoints of split
    /// transitions). They behave like any other state but are left out of
    /// user-facing listings where possible.
    pub hidden: bool,
}

/// A history-register automaton.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hra {
    ty: HraType,
    states: Vec<StateInfo>,
    initial: StateId,
    init: Assignment,
    transitions: Vec<Transition>,
    finals: BTreeSet<StateId>,
    out: Vec<Vec<usize>>,
}

/// Where a well-formedness violation was found.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Location {
    Type,
    InitialState,
    InitialAssignment { place: usize },
    Transition(usize),
    Final(StateId),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Violation {
    BadType(HraType),
    BadPlaceIndex { place: usize, at: Location },
    RegisterOverfull { place: usize },
    DanglingState { state: StateId, at: Location },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadType(t) => write!(f, "type {t} must have between 1 and 64 places"),
            Violation::BadPlaceIndex { place, at } => write!(f, "place {place} out of range ({at:?})"),
            Violation::RegisterOverfull { place } => {
                write!(f, "register {place} initially holds more than one name")
            }
            Violation::DanglingState { state, at } => write!(f, "unknown state {state} ({at:?})"),
        }
    }
}

/// Every violation found by [`validate`].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl core::error::Error for ValidationReport {}

/// Checks the well-formedness conditions of an automaton.
pub fn validate(a: &Hra) -> Result<(), ValidationReport> {
    let mut violations = Vec::new();
    let ty = a.ty;
    if !ty.is_valid() {
        violations.push(Violation::BadType(ty));
    }
    let nstates = a.states.len();
    let known = |s: StateId| s.index() < nstates;
    if !known(a.initial) {
        violations.push(Violation::DanglingState { state: a.initial, at: Location::InitialState });
    }
    let all = ty.all();
    let mut filled = PlaceSet::EMPTY;
    for (place, _) in a.init.entries() {
        if !all.contains(place) {
            violations.push(Violation::BadPlaceIndex {
                place,
                at: Location::InitialAssignment { place },
            });
        } else if ty.is_register(place) {
            if filled.contains(place) {
                violations.push(Violation::RegisterOverfull { place });
            }
            filled.insert(place);
        }
    }
    for (i, t) in a.transitions.iter().enumerate() {
        for s in [t.src, t.dst] {
            if !known(s) {
                violations.push(Violation::DanglingState { state: s, at: Location::Transition(i) });
            }
        }
        for place in t.label.places().difference(all).iter() {
            violations.push(Violation::BadPlaceIndex { place, at: Location::Transition(i) });
        }
    }
    for &f in &a.finals {
        if !known(f) {
            violations.push(Violation::DanglingState { state: f, at: Location::Final(f) });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(ValidationReport { violations })
    }
}

impl Hra {
    pub fn ty(&self) -> HraType {
        self.ty
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn initial_assignment(&self) -> &Assignment {
        &self.init
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, i: usize) -> &Transition {
        &self.transitions[i]
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

    pub fn state_info(&self, q: StateId) -> &StateInfo {
        &self.states[q.index()]
    }

    pub fn state_label(&self, q: StateId) -> &str {
        &self.states[q.index()].label
    }

    /// Finds a state by label.
    pub fn state_named(&self, label: &str) -> Option<StateId> {
        self.states.iter().position(|s| s.label == label).map(|i| StateId(i as u32))
    }

    /// Indices of the transitions leaving `q`.
    pub fn outgoing(&self, q: StateId) -> &[usize] {
        &self.out[q.index()]
    }

    /// Names of the initial assignment.
    pub fn initial_names(&self) -> BTreeSet<Name> {
        self.init.names().collect()
    }

    pub fn has_resets(&self) -> bool {
        self.transitions.iter().any(|t| t.label.is_reset())
    }

    /// The same automaton with no final states.
    pub fn without_finals(&self) -> Hra {
        let mut b = HraBuilder::from_hra(self);
        b.finals.clear();
        b.build_unchecked()
    }

    /// The same automaton seen at a larger type; places are re-embedded by
    /// `f`, which must send histories to histories and registers to registers.
    pub fn embed(&self, ty: HraType, f: impl Fn(usize) -> usize) -> Hra {
        let mut b = HraBuilder::from_hra(self);
        b.ty = ty;
        b.init = self.init.embed(ty, &f).entries();
        for t in &mut b.transitions {
            t.label = match t.label {
                Label::Accept { pre, post } => Label::accept(pre.map(&f), post.map(&f)),
                Label::Reset(x) => Label::Reset(x.map(&f)),
            };
        }
        b.build_unchecked()
    }

    /// Pads to `(m, n)` with unused places (histories appended after the old
    /// ones, registers after the old registers).
    pub fn pad_to(&self, ty: HraType) -> Hra {
        assert!(ty.histories >= self.ty.histories && ty.registers >= self.ty.registers);
        let m = self.ty.histories;
        let shift = ty.histories - m;
        self.embed(ty, |p| if p <= m { p } else { p + shift })
    }
}

/// Incremental construction of an [`Hra`].
#[derive(Clone, Debug)]
pub struct HraBuilder {
    pub ty: HraType,
    pub states: Vec<StateInfo>,
    pub initial: StateId,
    pub transitions: Vec<Transition>,
    pub finals: BTreeSet<StateId>,
    /// Initial `(place, name)` memberships.
    pub init: Vec<(usize, Name)>,
    index: BTreeSet<Transition>,
}

impl HraBuilder {
    pub fn new(ty: HraType) -> Self {
        HraBuilder {
            ty,
            states: Vec::new(),
            initial: StateId(0),
            transitions: Vec::new(),
            finals: BTreeSet::new(),
            init: Vec::new(),
            index: BTreeSet::new(),
        }
    }

    pub fn from_hra(a: &Hra) -> Self {
        HraBuilder {
            ty: a.ty,
            states: a.states.clone(),
            initial: a.initial,
            transitions: a.transitions.clone(),
            finals: a.finals.clone(),
            init: a.init.entries(),
            index: a.transitions.iter().copied().collect(),
        }
    }

    pub fn add_state(&mut self, label: impl Into<String>) -> StateId {
        self.states.push(StateInfo { label: label.into(), hidden: false });
        StateId(self.states.len() as u32 - 1)
    }

    pub fn add_hidden_state(&mut self, label: impl Into<String>) -> StateId {
        self.states.push(StateInfo { label: label.into(), hidden: true });
        StateId(self.states.len() as u32 - 1)
    }

    /// Adds `n` states labelled `q0..q{n-1}`.
    pub fn add_states(&mut self, n: usize) -> Vec<StateId> {
        let base = self.states.len();
        (0..n).map(|i| self.add_state(alloc::format!("q{}", base + i))).collect()
    }

    pub fn set_initial(&mut self, q: StateId) -> &mut Self {
        self.initial = q;
        self
    }

    pub fn set_final(&mut self, q: StateId) -> &mut Self {
        self.finals.insert(q);
        self
    }

    pub fn set_initial_assignment(&mut self, h: &Assignment) -> &mut Self {
        self.init = h.entries();
        self
    }

    /// Puts `a` into `place` initially.
    pub fn init_name(&mut self, place: usize, a: Name) -> &mut Self {
        self.init.push((place, a));
        self
    }

    pub fn accept(&mut self, src: StateId, pre: PlaceSet, post: PlaceSet, dst: StateId) -> &mut Self {
        self.add_transition(Transition { src, label: Label::accept(pre, post), dst })
    }

    pub fn reset(&mut self, src: StateId, x: PlaceSet, dst: StateId) -> &mut Self {
        self.add_transition(Transition { src, label: Label::Reset(x), dst })
    }

    /// Adds a transition unless an identical one exists.
    pub fn add_transition(&mut self, t: Transition) -> &mut Self {
        if self.index.insert(t) {
            self.transitions.push(t);
        }
        self
    }

    /// Validates and freezes the automaton.
    pub fn build(&self) -> Result<Hra, ValidationReport> {
        let mut violations = Vec::new();
        let mut filled = PlaceSet::EMPTY;
        let mut seen = BTreeSet::new();
        for &(place, a) in &self.init {
            if !seen.insert((place, a)) {
                continue;
            }
            if place == 0 || place > self.ty.places() {
                violations.push(Violation::BadPlaceIndex {
                    place,
                    at: Location::InitialAssignment { place },
                });
            } else if self.ty.is_register(place) {
                if filled.contains(place) {
                    violations.push(Violation::RegisterOverfull { place });
                }
                filled.insert(place);
            }
        }
        let a = self.build_unchecked();
        if let Err(r) = validate(&a) {
            violations.extend(r.violations);
        }
        if violations.is_empty() {
            Ok(a)
        } else {
            Err(ValidationReport { violations })
        }
    }

    /// Freezes without validation; [`validate`] can be run afterwards.
    pub fn build_unchecked(&self) -> Hra {
        let mut out = alloc::vec![Vec::new(); self.states.len()];
        for (i, t) in self.transitions.iter().enumerate() {
            if let Some(v) = out.get_mut(t.src.index()) {
                v.push(i);
            }
        }
        let mut states = self.states.clone();
        if states.is_empty() {
            states.push(StateInfo { label: "q0".to_string(), hidden: false });
            out.push(Vec::new());
        }
        // Out-of-range or overfull entries are dropped here; `build` reports them.
        let mut filled = PlaceSet::EMPTY;
        let entries = self.init.iter().copied().filter(|&(p, _)| {
            if p == 0 || p > self.ty.places() || p > crate::place::MAX_PLACES {
                return false;
            }
            if self.ty.is_register(p) {
                if filled.contains(p) {
                    return false;
                }
                filled.insert(p);
            }
            true
        });
        let init = Assignment::from_places(self.ty, entries).unwrap_or_else(|_| Assignment::empty(self.ty));
        Hra {
            ty: self.ty,
            states,
            initial: self.initial,
            init,
            transitions: self.transitions.clone(),
            finals: self.finals.clone(),
            out,
        }
    }
}

/// Shorthand for a place set literal.
pub fn places(ps: &[usize]) -> PlaceSet {
    PlaceSet::from_places(ps.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn l3_validates() {
        assert!(validate(&catalog::l3()).is_ok());
    }

    #[test]
    fn bad_place_reported() {
        let mut b = HraBuilder::new(HraType::new(1, 1));
        let q = b.add_states(2);
        b.accept(q[0], places(&[5]), PlaceSet::EMPTY, q[1]);
        let err = b.build().unwrap_err();
        assert_eq!(
            err.violations,
            [Violation::BadPlaceIndex { place: 5, at: Location::Transition(0) }]
        );
    }

    #[test]
    fn overfull_register_reported() {
        let mut b = HraBuilder::new(HraType::new(1, 1));
        b.add_state("q0");
        b.init_name(2, Name(0)).init_name(2, Name(1));
        let err = b.build().unwrap_err();
        assert_eq!(err.violations, [Violation::RegisterOverfull { place: 2 }]);
    }

    #[test]
    fn dangling_state_reported() {
        let mut b = HraBuilder::new(HraType::new(1, 0));
        let q = b.add_state("q0");
        b.accept(q, PlaceSet::EMPTY, places(&[1]), StateId(7));
        b.set_final(StateId(9));
        let err = b.build().unwrap_err();
        assert_eq!(err.violations.len(), 2);
    }

    #[test]
    fn padding_keeps_bands() {
        let a = catalog::l1(Name(0)).pad_to(HraType::new(2, 2));
        assert_eq!(a.initial_assignment().location(Name(0)), places(&[3]));
        assert!(validate(&a).is_ok());
    }
}
