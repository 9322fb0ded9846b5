//! Counter machines encoded as history automata.

use alloc::format;
use alloc::vec::Vec;

use super::ReductionError;
use crate::counters::{CState, CounterConfig, CounterMachine, Effect};
use crate::hra::{Hra, HraBuilder, Label, StateId, Transition};
use crate::name::Name;
use crate::place::{HraType, PlaceSet};

/// An automaton encoding a reset VASS, with the automaton transitions that
/// simulate each counter transition.
#[derive(Clone, Debug)]
pub struct RvassEncoding {
    pub hra: Hra,
    /// Automaton state of each control state.
    pub state_of: Vec<StateId>,
    /// Counter `i` is `|H@{i+1}|`.
    pub dims: usize,
    pub paths: Vec<Vec<usize>>,
}

/// The determinism conditions on a machine under which the encoding is
/// strongly deterministic: a state with an increment has no other
/// transition, and equal effects from one state lead to equal targets.
pub fn rvass_determinism_conditions(mc: &CounterMachine) -> bool {
    mc.states().all(|q| {
        let out: Vec<_> = mc.outgoing(q).iter().map(|&i| &mc.transitions()[i]).collect();
        let increment = |e: &Effect| matches!(e, Effect::Add(v) if v.iter().any(|&x| x > 0));
        out.iter().all(|t| !increment(&t.effect) || out.iter().all(|u| u.effect == t.effect && u.dst == t.dst))
            && out.iter().all(|t| out.iter().all(|u| u.effect != t.effect || u.dst == t.dst))
    })
}

/// Number of histories used for a machine of `dims` dimensions: the
/// three-name neighbourhoods need at least four histories to stay
/// distinguishable under resets.
fn padded(dims: usize) -> usize {
    dims.max(4)
}

/// An `(m, 0)` automaton whose final state is reachable exactly when the
/// control state `target` is reachable in `mc` from `init`.
///
/// Counter `i` is encoded as the names sitting exactly in history `i`. The
/// marker name of history `i` sits in histories `i-1, i, i+1` (cyclically)
/// and lets a reset of history `i` be undone for the neighbouring markers.
pub fn rvass_to_hra(mc: &CounterMachine, init: &CounterConfig, target: CState) -> Result<Hra, ReductionError> {
    rvass_to_hra_traced(mc, init, target).map(|e| e.hra)
}

pub fn rvass_to_hra_traced(
    mc: &CounterMachine,
    init: &CounterConfig,
    target: CState,
) -> Result<RvassEncoding, ReductionError> {
    let m = padded(mc.dims());
    let ty = HraType::new(m, 0);
    // Histories are 1-based; `h(i)` is the history of 0-based dimension `i`.
    let h = |i: usize| (i % m) + 1;
    let hood = |i: usize| PlaceSet::from_places([h(i + m - 1), h(i), h(i + 1)]);
    let marker = |i: usize| Name(i as u32 + 1);

    let mut b = HraBuilder::new(ty);
    for i in 0..m {
        for p in hood(i).iter() {
            b.init_name(p, marker(i));
        }
    }
    let mut next_name = m as u32 + 1;
    for (i, &v) in init.values.iter().enumerate() {
        for _ in 0..v {
            b.init_name(h(i), Name(next_name));
            next_name += 1;
        }
    }
    let state_of: Vec<StateId> = mc.states().map(|q| b.add_state(mc.state_label(q))).collect();
    b.set_initial(state_of[init.state.index()]);
    b.set_final(state_of[target.index()]);

    let mut paths = Vec::new();
    for (k, t) in mc.transitions().iter().enumerate() {
        let (src, dst) = (state_of[t.src.index()], state_of[t.dst.index()]);
        let first = b.transitions.len();
        match &t.effect {
            Effect::Add(v) => {
                let nz: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
                let (pre, post) = match nz[..] {
                    [] => (PlaceSet::EMPTY, PlaceSet::EMPTY),
                    [i] if v[i] > 0 => (PlaceSet::EMPTY, PlaceSet::singleton(h(i))),
                    [i] => (PlaceSet::singleton(h(i)), PlaceSet::EMPTY),
                    _ => return Err(ReductionError::NonUnitEffect { transition: k }),
                };
                // Parallel duplicates are merged by the builder.
                let t = Transition { src, label: Label::accept(pre, post), dst };
                b.add_transition(t);
                paths.push(alloc::vec![b.transitions.iter().position(|u| *u == t).unwrap()]);
                continue;
            }
            &Effect::Reset(i) => {
                let hi = PlaceSet::singleton(h(i));
                let mids: Vec<StateId> = (0..3).map(|s| b.add_hidden_state(format!("r{k}.{s}"))).collect();
                b.reset(src, hi, mids[0]);
                // Put the three markers touching history i back where they were.
                let hops = [(i + m - 1, mids[0], mids[1]), (i, mids[1], mids[2]), (i + 1, mids[2], dst)];
                for (j, from, to) in hops {
                    b.accept(from, hood(j).difference(hi), hood(j), to);
                }
            }
            Effect::Transfer { .. } => return Err(ReductionError::TransfersPresent),
        }
        paths.push((first..b.transitions.len()).collect());
    }
    Ok(RvassEncoding { hra: b.build_unchecked(), state_of, dims: mc.dims(), paths })
}

/// A non-reset automaton with `⌈log₂(d+1)⌉` histories (at least one) whose
/// final state is reachable exactly when `target` is reachable in the VASS
/// `mc`. Dimension `i` is encoded by the names located exactly at the set of
/// histories whose bitmask is `i+1`.
pub fn vass_to_nonreset_hra(mc: &CounterMachine, init: &CounterConfig, target: CState) -> Result<Hra, ReductionError> {
    let d = mc.dims();
    let mut m = 1;
    while (1usize << m) < d + 1 {
        m += 1;
    }
    let phi = |i: usize| PlaceSet((i + 1) as u64);
    let mut b = HraBuilder::new(HraType::new(m, 0));
    let mut next_name = 1;
    for (i, &v) in init.values.iter().enumerate() {
        for _ in 0..v {
            for p in phi(i).iter() {
                b.init_name(p, Name(next_name));
            }
            next_name += 1;
        }
    }
    let ids: Vec<StateId> = mc.states().map(|q| b.add_state(mc.state_label(q))).collect();
    b.set_initial(ids[init.state.index()]);
    b.set_final(ids[target.index()]);
    for (k, t) in mc.transitions().iter().enumerate() {
        let Effect::Add(v) = &t.effect else {
            return Err(ReductionError::TransfersOrResetsPresent);
        };
        let steps: Vec<(PlaceSet, PlaceSet)> = v
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x != 0)
            .map(|(i, &x)| if x > 0 { (PlaceSet::EMPTY, phi(i)) } else { (phi(i), PlaceSet::EMPTY) })
            .collect();
        let steps = if steps.is_empty() { alloc::vec![(PlaceSet::EMPTY, PlaceSet::EMPTY)] } else { steps };
        // One letter per nonzero coordinate, staged through hidden states.
        let mut cur = ids[t.src.index()];
        for (s, &(pre, post)) in steps.iter().enumerate() {
            let next = if s + 1 == steps.len() {
                ids[t.dst.index()]
            } else {
                b.add_hidden_state(format!("v{k}.{s}"))
            };
            b.accept(cur, pre, post, next);
            cur = next;
        }
    }
    Ok(b.build_unchecked())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{check_strong_determinism, classify};
    use crate::counters::backward_coverability;
    use crate::oracles::random::{random_counter_machine, CounterBounds, CounterKind};
    use crate::reductions::is_empty;
    use crate::semantics::{initial_configuration, step_via};
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn up_down() -> (CounterMachine, CounterConfig, CState) {
        let mut mc = CounterMachine::new(1).unwrap();
        let q0 = mc.add_state("q0");
        let q1 = mc.add_state("q1");
        let qf = mc.add_state("qf");
        mc.add_transition(q0, Effect::Add(vec![1]), q1).unwrap();
        mc.add_transition(q1, Effect::Add(vec![-1]), qf).unwrap();
        (mc, CounterConfig::new(q0, vec![0]), qf)
    }

    #[test]
    fn up_then_down() {
        let (mc, init, qf) = up_down();
        let a = rvass_to_hra(&mc, &init, qf).unwrap();
        assert_eq!(a.ty(), HraType::new(4, 0));
        assert!(!is_empty(&a));
        assert!(check_strong_determinism(&a));
    }

    #[test]
    fn isolated_target_is_empty() {
        let (mut mc, init, _) = up_down();
        let lone = mc.add_state("lone");
        let a = rvass_to_hra(&mc, &init, lone).unwrap();
        assert!(is_empty(&a));
    }

    #[test]
    fn non_unit_refused() {
        let mut mc = CounterMachine::new(2).unwrap();
        let q = mc.add_state("q");
        mc.add_transition(q, Effect::Add(vec![1, 1]), q).unwrap();
        let init = CounterConfig::new(q, vec![0, 0]);
        assert_eq!(rvass_to_hra(&mc, &init, q).unwrap_err(), ReductionError::NonUnitEffect { transition: 0 });
    }

    #[test]
    fn reset_expands_to_four_steps() {
        let mut mc = CounterMachine::new(1).unwrap();
        let q = mc.add_state("q");
        mc.add_transition(q, Effect::Reset(0), q).unwrap();
        let e = rvass_to_hra_traced(&mc, &CounterConfig::new(q, vec![2]), q).unwrap();
        let labels: Vec<Label> = e.paths[0].iter().map(|&i| e.hra.transition(i).label).collect();
        let ps = |v: &[usize]| PlaceSet::from_places(v.iter().copied());
        assert_eq!(
            labels,
            vec![
                Label::Reset(ps(&[1])),
                Label::accept(ps(&[3, 4]), ps(&[3, 4, 1])),
                Label::accept(ps(&[4, 2]), ps(&[4, 1, 2])),
                Label::accept(ps(&[2, 3]), ps(&[1, 2, 3])),
            ]
        );
    }

    /// Replays random counter runs on the automaton, keeping `|H@{i}|` equal
    /// to counter `i`.
    #[test]
    fn co_simulation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let bounds = CounterBounds { dims: 3, states: 4, transitions: 8, max_init: 2 };
        for seed in 0..50 {
            let inst = random_counter_machine(seed, &bounds, CounterKind::UnitRVass);
            let mc = &inst.machine;
            let e = rvass_to_hra_traced(mc, &inst.init, inst.target).unwrap();
            let mut v = inst.init.clone();
            let mut c = initial_configuration(&e.hra);
            let mut fresh = 10_000;
            for _ in 0..12 {
                let enabled: Vec<usize> = mc.outgoing(v.state).iter().copied().filter(|&i| mc.fire(i, &v).is_some()).collect();
                if enabled.is_empty() {
                    break;
                }
                let t = enabled[rng.gen_range(0..enabled.len())];
                v = mc.fire(t, &v).unwrap();
                for &i in &e.paths[t] {
                    let label = e.hra.transition(i).label;
                    c = match label {
                        Label::Reset(x) => crate::semantics::Configuration::new(
                            e.hra.transition(i).dst,
                            c.assignment.reset_places(x),
                        ),
                        Label::Accept { pre, .. } => {
                            let letter = if pre.is_empty() {
                                fresh += 1;
                                Name(fresh)
                            } else {
                                *c.assignment.at(pre).iter().next().expect("a name to read")
                            };
                            let next = step_via(&e.hra, &c, letter).into_iter().find(|(j, _)| *j == i);
                            next.expect("simulating step enabled").1
                        }
                    };
                }
                assert_eq!(c.state, e.state_of[v.state.index()]);
                for d in 0..e.dims {
                    assert_eq!(c.assignment.count_at(PlaceSet::singleton(d + 1)) as u64, v.values[d], "seed {seed}");
                }
            }
        }
    }

    #[test]
    fn round_trip_and_determinism() {
        let bounds = CounterBounds { dims: 2, states: 4, transitions: 6, max_init: 2 };
        for seed in 0..50 {
            let inst = random_counter_machine(seed, &bounds, CounterKind::UnitRVass);
            let a = rvass_to_hra(&inst.machine, &inst.init, inst.target).unwrap();
            let want = backward_coverability(&inst.machine, &inst.init, inst.target);
            assert_eq!(!is_empty(&a), want, "seed {seed}");
            if rvass_determinism_conditions(&inst.machine) {
                assert!(check_strong_determinism(&a), "seed {seed}");
            }
        }
    }

    #[test]
    fn vass_encoding_shape() {
        let mut mc = CounterMachine::new(3).unwrap();
        let q = mc.add_state("q");
        let r = mc.add_state("r");
        mc.add_transition(q, Effect::Add(vec![1, 0, -1]), r).unwrap();
        let a = vass_to_nonreset_hra(&mc, &CounterConfig::new(q, vec![0, 0, 1]), r).unwrap();
        assert_eq!(a.ty(), HraType::new(2, 0));
        assert!(classify(&a).non_reset);
        assert_eq!(a.initial_assignment().count_at(PlaceSet::from_places([1, 2])), 1);
        assert!(!is_empty(&a));
        let one = CounterMachine::new(1).unwrap();
        let mut one = one;
        let s = one.add_state("s");
        one.add_transition(s, Effect::Add(vec![1]), s).unwrap();
        let a = vass_to_nonreset_hra(&one, &CounterConfig::new(s, vec![0]), s).unwrap();
        assert_eq!(a.ty(), HraType::new(1, 0));
        assert_eq!(a.transition(0).label, Label::accept(PlaceSet::EMPTY, PlaceSet::singleton(1)));
    }

    #[test]
    fn vass_round_trip() {
        let bounds = CounterBounds { dims: 3, states: 4, transitions: 6, max_init: 2 };
        for seed in 0..50 {
            let inst = random_counter_machine(seed, &bounds, CounterKind::Vass);
            let a = vass_to_nonreset_hra(&inst.machine, &inst.init, inst.target).unwrap();
            let want = backward_coverability(&inst.machine, &inst.init, inst.target);
            assert_eq!(!is_empty(&a), want, "seed {seed}");
        }
    }
}
