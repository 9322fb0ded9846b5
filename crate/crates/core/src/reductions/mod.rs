//! Translations between automata and counter machines, and the emptiness
//! orchestrator built on them.

mod colouring;
mod encode;
mod restricted;
mod trvass;

pub use colouring::{eliminate_registers_colouring, in_colouring_scope, ScopeViolation};
pub use encode::{rvass_determinism_conditions, rvass_to_hra, rvass_to_hra_traced, vass_to_nonreset_hra, RvassEncoding};
pub use restricted::{restricted_hra_to_rvass, restriction_violation, unary_to_one_rvass};
pub use trvass::{hra_to_trvass, nonreset_to_vass};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::classify::classify;
use crate::counters::{
    backward_coverability, one_dim_rvass_reachability, CState, CounterConfig, CounterError, CounterMachine, Effect,
};
use crate::hra::{Hra, Label, StateId};
use crate::name::Word;
use crate::oracles::bounded::{bounded_emptiness, BoundedVerdict};
use crate::place::PlaceSet;
use crate::symbolic::Skeleton;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ReductionError {
    RegistersPresent,
    ResetsPresent,
    NotUnary,
    RestrictionViolated(Label),
    NonUnitEffect { transition: usize },
    TransfersPresent,
    TransfersOrResetsPresent,
    Scope(ScopeViolation),
    Counter(CounterError),
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::RegistersPresent => write!(f, "automaton has registers"),
            ReductionError::ResetsPresent => write!(f, "automaton has resets"),
            ReductionError::NotUnary => write!(f, "automaton does not have exactly one history"),
            ReductionError::RestrictionViolated(l) => {
                write!(f, "reset {l} touches some but not all histories")
            }
            ReductionError::NonUnitEffect { transition } => {
                write!(f, "counter transition {transition} changes more than one dimension")
            }
            ReductionError::TransfersPresent => write!(f, "machine has transfers"),
            ReductionError::TransfersOrResetsPresent => write!(f, "machine has transfers or resets"),
            ReductionError::Scope(v) => write!(f, "outside colouring scope: {v}"),
            ReductionError::Counter(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ReductionError {}

impl From<CounterError> for ReductionError {
    fn from(e: CounterError) -> Self {
        ReductionError::Counter(e)
    }
}

/// Which counter dimension stands for which set of histories.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimensionMap {
    sets: Vec<Option<PlaceSet>>,
    index: BTreeMap<PlaceSet, usize>,
}

impl DimensionMap {
    /// One dimension per listed set, plus an unnamed padding dimension when
    /// the list is empty.
    pub fn new(sets: impl IntoIterator<Item = PlaceSet>) -> Self {
        let mut map = DimensionMap { sets: Vec::new(), index: BTreeMap::new() };
        for x in sets {
            if !map.index.contains_key(&x) {
                map.index.insert(x, map.sets.len());
                map.sets.push(Some(x));
            }
        }
        if map.sets.is_empty() {
            map.sets.push(None);
        }
        map
    }

    /// Every nonempty subset of `[m]`, in bitmask order.
    pub fn nonempty_subsets(m: usize) -> Self {
        DimensionMap::new(PlaceSet::range(1, m).subsets().into_iter().skip(1))
    }

    /// Every subset of `[m]` with dimension `d` counting the set with
    /// bitmask `d`; dimension 0 (the empty set) only collects garbage.
    pub fn with_garbage(m: usize) -> Self {
        let subsets = PlaceSet::range(1, m).subsets();
        let index = subsets.iter().enumerate().map(|(d, &x)| (x, d)).collect();
        let mut sets: Vec<Option<PlaceSet>> = subsets.into_iter().map(Some).collect();
        sets[0] = None;
        DimensionMap { sets, index }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn dim(&self, x: PlaceSet) -> Option<usize> {
        self.index.get(&x).copied()
    }

    /// The set counted by dimension `d`; `None` for padding and garbage.
    pub fn set(&self, d: usize) -> Option<PlaceSet> {
        self.sets[d]
    }

    /// Dimensions counting a nonempty set, with that set.
    pub fn sets(&self) -> impl Iterator<Item = (usize, PlaceSet)> + '_ {
        self.sets.iter().enumerate().filter_map(|(d, x)| x.map(|x| (d, x)))
    }
}

/// A counter machine simulating an automaton.
///
/// `states` maps each explored pair of automaton state and skeleton to its
/// control state; `paths` gives the counter transitions simulating automaton
/// transition `i` from a given skeleton. Translations without a skeleton
/// component use the unique skeleton of type `(m, 0)`.
#[derive(Clone, Debug)]
pub struct CounterReduction {
    pub machine: CounterMachine,
    pub init: CounterConfig,
    pub target: CState,
    pub dims: DimensionMap,
    pub states: BTreeMap<(StateId, Skeleton), CState>,
    pub paths: BTreeMap<(usize, Skeleton), Vec<usize>>,
}

impl CounterReduction {
    /// Counter values that an assignment should map to.
    pub fn expected_values(&self, h: &crate::assignment::Assignment) -> Vec<u64> {
        (0..self.dims.len())
            .map(|d| match self.dims.set(d) {
                Some(x) => h.count_at(x) as u64,
                None => 0,
            })
            .collect()
    }
}

/// Appends a chain of effects from `src` to `dst` through fresh control
/// states; returns the transition indices. An empty chain is a zero step.
fn chain(mc: &mut CounterMachine, src: CState, effects: Vec<Effect>, dst: CState) -> Result<Vec<usize>, CounterError> {
    let effects = if effects.is_empty() { alloc::vec![Effect::zero(mc.dims())] } else { effects };
    let k = effects.len();
    let mut cur = src;
    let mut out = Vec::with_capacity(k);
    for (i, e) in effects.into_iter().enumerate() {
        let next = if i + 1 == k {
            dst
        } else {
            let label = alloc::format!("{}~{}", mc.state_label(src), mc.transitions().len());
            mc.add_state(label)
        };
        out.push(mc.add_transition(cur, e, next)?);
        cur = next;
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Engine {
    Auto,
    TrVass,
    Restricted,
    Vass,
    OneRvass,
    Bounded,
}

impl Engine {
    /// Every concrete engine.
    pub const CONCRETE: [Engine; 5] = [Engine::TrVass, Engine::Restricted, Engine::Vass, Engine::OneRvass, Engine::Bounded];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Auto => "auto",
            Engine::TrVass => "trvass",
            Engine::Restricted => "restricted",
            Engine::Vass => "vass",
            Engine::OneRvass => "one_rvass",
            Engine::Bounded => "bounded",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "auto" => Ok(Engine::Auto),
            "trvass" => Ok(Engine::TrVass),
            "restricted" => Ok(Engine::Restricted),
            "vass" => Ok(Engine::Vass),
            "one_rvass" | "one-rvass" => Ok(Engine::OneRvass),
            "bounded" => Ok(Engine::Bounded),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Empty,
    Nonempty,
    /// Only the bounded engine can leave the question open.
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Empty => "empty",
            Verdict::Nonempty => "nonempty",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EmptinessReport {
    pub verdict: Verdict,
    /// The engine that produced the verdict (never `Auto`).
    pub engine: Engine,
    /// Dimensions and control states of the counter machine, if one was built.
    pub machine_size: Option<(usize, usize)>,
    pub witness: Option<Word>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EmptinessError {
    pub engine: Engine,
    pub cause: ReductionError,
}

impl fmt::Display for EmptinessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "engine {} not applicable: {}", self.engine, self.cause)
    }
}

impl core::error::Error for EmptinessError {}

/// Search depth of the bounded engine.
pub const BOUNDED_DEPTH: usize = 10;

/// Engines whose preconditions hold for `a`, in the order `Auto` tries them.
pub fn applicable_engines(a: &Hra) -> Vec<Engine> {
    let c = classify(a);
    let mut out = Vec::new();
    if c.unary {
        out.push(Engine::OneRvass);
    }
    if c.non_reset {
        out.push(Engine::Vass);
    }
    if restriction_violation(a).is_none() {
        out.push(Engine::Restricted);
    }
    out.push(Engine::TrVass);
    out.push(Engine::Bounded);
    out
}

fn report(verdict: bool, engine: Engine, red: &CounterReduction) -> EmptinessReport {
    EmptinessReport {
        verdict: if verdict { Verdict::Nonempty } else { Verdict::Empty },
        engine,
        machine_size: Some((red.machine.dims(), red.machine.state_count())),
        witness: None,
    }
}

/// The counter machine a counter-based engine decides; `None` for the
/// bounded engine. `Auto` resolves to the first applicable engine.
pub fn reduction_for(a: &Hra, engine: Engine) -> Result<Option<CounterReduction>, EmptinessError> {
    let fail = |cause| EmptinessError { engine, cause };
    let red = match engine {
        Engine::Auto => return reduction_for(a, applicable_engines(a)[0]),
        Engine::Bounded => return Ok(None),
        Engine::TrVass => hra_to_trvass(&crate::constructions::registers_to_histories(a)),
        Engine::Restricted => restricted_hra_to_rvass(a),
        Engine::OneRvass => unary_to_one_rvass(a),
        Engine::Vass => {
            if !classify(a).non_reset {
                return Err(fail(ReductionError::ResetsPresent));
            }
            if a.ty().registers == 0 {
                nonreset_to_vass(a)
            } else if in_colouring_scope(a).is_ok() {
                nonreset_to_vass(&eliminate_registers_colouring(a).map_err(fail)?)
            } else {
                // Without resets the skeleton product is a plain VASS.
                restricted_hra_to_rvass(a)
            }
        }
    };
    red.map(Some).map_err(fail)
}

/// Decides whether `L(a)` is empty with the chosen engine.
pub fn emptiness(a: &Hra, engine: Engine) -> Result<EmptinessReport, EmptinessError> {
    let engine = if engine == Engine::Auto { applicable_engines(a)[0] } else { engine };
    let Some(red) = reduction_for(a, engine)? else {
        let (verdict, witness) = match bounded_emptiness(a, BOUNDED_DEPTH) {
            BoundedVerdict::Nonempty(w) => (Verdict::Nonempty, Some(w)),
            BoundedVerdict::EmptyWithinBound => (Verdict::Empty, None),
            BoundedVerdict::BoundExhausted => (Verdict::Unknown, None),
        };
        return Ok(EmptinessReport { verdict, engine, machine_size: None, witness });
    };
    let hit = if engine == Engine::OneRvass {
        one_dim_rvass_reachability(&red.machine, &red.init, red.target)
            .map_err(|_| EmptinessError { engine, cause: ReductionError::NotUnary })?
    } else {
        backward_coverability(&red.machine, &red.init, red.target)
    };
    Ok(report(hit, engine, &red))
}

/// `L(a) = ∅`, decided by the automatic engine choice.
pub fn is_empty(a: &Hra) -> bool {
    let r = emptiness(a, Engine::Auto).expect("the automatic choice is always applicable");
    r.verdict == Verdict::Empty
}
