//! Seeded random automata and counter machines for property tests.

use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counters::{CState, CounterConfig, CounterMachine, Effect};
use crate::hra::{Hra, HraBuilder, StateId};
use crate::name::Name;
use crate::place::{HraType, PlaceSet};

/// Syntactic shape the generated automaton must have.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Subclass {
    Any,
    /// No resets.
    NonReset,
    /// Exactly one history.
    Unary,
    /// Every reset touching a history contains all histories.
    Restricted,
    /// No resets, registers initially empty, at most one register on each
    /// side of every label.
    ColouringScope,
    /// No resets and pairwise distinct pre-sets per state.
    Deterministic,
}

#[derive(Clone, Copy, Debug)]
pub struct HraBounds {
    pub histories: usize,
    pub registers: usize,
    pub states: usize,
    pub transitions: usize,
    /// How many initial names to place.
    pub init_names: usize,
}

impl HraBounds {
    pub fn new(histories: usize, registers: usize, states: usize, transitions: usize) -> Self {
        HraBounds { histories, registers, states, transitions, init_names: 2 }
    }
}

fn random_subset(rng: &mut ChaCha8Rng, pool: PlaceSet) -> PlaceSet {
    pool.iter().filter(|_| rng.gen_bool(0.4)).collect()
}

/// A place set with at most one register.
fn one_register(rng: &mut ChaCha8Rng, ty: HraType) -> PlaceSet {
    let mut x = random_subset(rng, ty.history_places());
    if ty.registers > 0 && rng.gen_bool(0.5) {
        x.insert(rng.gen_range(ty.histories + 1..=ty.places()));
    }
    x
}

/// A random automaton of the requested subclass. The same seed always gives
/// the same automaton, and the result always validates.
pub fn random_hra(seed: u64, bounds: &HraBounds, class: Subclass) -> Hra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = if class == Subclass::Unary { 1 } else { bounds.histories };
    let n = bounds.registers;
    let ty = if m + n == 0 { HraType::new(1, 0) } else { HraType::new(m, n) };
    let mut b = HraBuilder::new(ty);
    let qs = b.add_states(bounds.states.max(1));
    b.set_initial(qs[0]);
    for &q in &qs {
        if rng.gen_bool(0.4) {
            b.set_final(q);
        }
    }

    let all = ty.all();
    let hist = ty.history_places();
    let regs_empty = class == Subclass::ColouringScope;
    for k in 0..bounds.init_names {
        let a = Name(100 + k as u32);
        for p in all.iter() {
            if ty.is_register(p) && regs_empty {
                continue;
            }
            if rng.gen_bool(0.3) {
                b.init_name(p, a);
            }
        }
    }

    let resets = matches!(class, Subclass::Any | Subclass::Unary | Subclass::Restricted);
    let mut used_pre: Vec<(StateId, PlaceSet)> = Vec::new();
    for _ in 0..bounds.transitions {
        let src = *qs.choose(&mut rng).unwrap();
        let dst = *qs.choose(&mut rng).unwrap();
        if resets && rng.gen_bool(0.2) {
            let mut x = random_subset(&mut rng, all);
            if class == Subclass::Restricted && !x.is_disjoint(hist) {
                x = x.union(hist);
            }
            b.reset(src, x, dst);
            continue;
        }
        let (pre, post) = if class == Subclass::ColouringScope {
            (one_register(&mut rng, ty), one_register(&mut rng, ty))
        } else {
            (random_subset(&mut rng, all), random_subset(&mut rng, all))
        };
        if class == Subclass::Deterministic {
            if used_pre.contains(&(src, pre)) {
                continue;
            }
            used_pre.push((src, pre));
        }
        b.accept(src, pre, post, dst);
    }
    b.build_unchecked()
}

/// Which counter-machine family to draw from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CounterKind {
    /// Adds only, each touching at most one dimension.
    Vass,
    /// Unit adds and resets.
    UnitRVass,
    /// One dimension, adds and resets.
    OneDimRVass,
    /// Arbitrary {-1,0,1} adds, transfers and resets.
    TrVass,
}

#[derive(Clone, Copy, Debug)]
pub struct CounterBounds {
    pub dims: usize,
    pub states: usize,
    pub transitions: usize,
    pub max_init: u64,
}

/// A machine together with a coverability query.
#[derive(Clone, Debug)]
pub struct CounterInstance {
    pub machine: CounterMachine,
    pub init: CounterConfig,
    pub target: CState,
}

fn unit_effect(rng: &mut ChaCha8Rng, dims: usize) -> Effect {
    let mut v = alloc::vec![0i8; dims];
    if rng.gen_bool(0.85) {
        v[rng.gen_range(0..dims)] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    Effect::Add(v)
}

pub fn random_counter_machine(seed: u64, bounds: &CounterBounds, kind: CounterKind) -> CounterInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = if kind == CounterKind::OneDimRVass { 1 } else { bounds.dims.max(1) };
    let mut mc = CounterMachine::new(dims).expect("at least one dimension");
    let qs: Vec<CState> = (0..bounds.states.max(1)).map(|i| mc.add_state(format!("q{i}"))).collect();
    for _ in 0..bounds.transitions {
        let src = *qs.choose(&mut rng).unwrap();
        let dst = *qs.choose(&mut rng).unwrap();
        let roll: f64 = rng.gen();
        let effect = match kind {
            CounterKind::Vass => unit_effect(&mut rng, dims),
            CounterKind::UnitRVass | CounterKind::OneDimRVass => {
                if roll < 0.15 {
                    Effect::Reset(rng.gen_range(0..dims))
                } else {
                    unit_effect(&mut rng, dims)
                }
            }
            CounterKind::TrVass => {
                if roll < 0.15 {
                    Effect::Reset(rng.gen_range(0..dims))
                } else if roll < 0.3 && dims > 1 {
                    let from = rng.gen_range(0..dims);
                    let to = (from + rng.gen_range(1..dims)) % dims;
                    Effect::Transfer { from, to }
                } else {
                    Effect::Add((0..dims).map(|_| rng.gen_range(-1i8..=1)).collect())
                }
            }
        };
        mc.add_transition(src, effect, dst).expect("generated effects are in range");
    }
    let values = (0..dims).map(|_| rng.gen_range(0..=bounds.max_init)).collect();
    let init = CounterConfig::new(qs[0], values);
    let target = *qs.choose(&mut rng).unwrap();
    CounterInstance { machine: mc, init, target }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{check_strong_determinism, classify};
    use crate::counters::MachineClass;
    use crate::hra::validate;

    const CLASSES: [Subclass; 6] = [
        Subclass::Any,
        Subclass::NonReset,
        Subclass::Unary,
        Subclass::Restricted,
        Subclass::ColouringScope,
        Subclass::Deterministic,
    ];

    #[test]
    fn seeded_and_valid() {
        let bounds = HraBounds::new(2, 1, 4, 8);
        for seed in 0..1000 {
            let class = CLASSES[seed as usize % CLASSES.len()];
            let a = random_hra(seed, &bounds, class);
            assert!(validate(&a).is_ok());
            let b = random_hra(seed, &bounds, class);
            assert_eq!(a.transitions(), b.transitions());
            assert_eq!(a.initial_assignment(), b.initial_assignment());
        }
    }

    #[test]
    fn subclasses_hold() {
        let bounds = HraBounds::new(2, 2, 3, 8);
        for seed in 0..200 {
            assert!(classify(&random_hra(seed, &bounds, Subclass::NonReset)).non_reset);
            assert!(classify(&random_hra(seed, &bounds, Subclass::Unary)).unary);
            assert!(check_strong_determinism(&random_hra(seed, &bounds, Subclass::Deterministic)));
            let c = random_hra(seed, &bounds, Subclass::ColouringScope);
            assert!(c.initial_assignment().locations().all(|(_, l)| l.max_place() <= 2));
        }
    }

    #[test]
    fn counter_kinds() {
        let bounds = CounterBounds { dims: 3, states: 4, transitions: 10, max_init: 3 };
        for seed in 0..100 {
            let v = random_counter_machine(seed, &bounds, CounterKind::Vass);
            assert_eq!(v.machine.class(), MachineClass::Vass);
            let r = random_counter_machine(seed, &bounds, CounterKind::UnitRVass);
            assert_ne!(r.machine.class(), MachineClass::TrVass);
            assert!(r.machine.has_unit_effects());
            let o = random_counter_machine(seed, &bounds, CounterKind::OneDimRVass);
            assert_eq!(o.machine.dims(), 1);
        }
    }
}
