//! History-only automata as transfer-reset and plain VASS.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{chain, CounterReduction, DimensionMap, ReductionError};
use crate::counters::{CState, CounterConfig, CounterMachine, Effect};
use crate::hra::{Hra, Label};
use crate::place::PlaceSet;
use crate::symbolic::Skeleton;

fn letter_effects(dims: &DimensionMap, pre: PlaceSet, post: PlaceSet) -> Vec<Effect> {
    let mut out = Vec::new();
    if let Some(d) = dims.dim(pre).filter(|_| !pre.is_empty()) {
        out.push(Effect::unit(dims.len(), d, -1));
    }
    if let Some(d) = dims.dim(post).filter(|_| !post.is_empty()) {
        out.push(Effect::unit(dims.len(), d, 1));
    }
    out
}

fn simulate(
    a: &Hra,
    dims: DimensionMap,
    reset: impl Fn(&DimensionMap, PlaceSet) -> Vec<Effect>,
) -> Result<CounterReduction, ReductionError> {
    let skel = Skeleton::empty(a.ty());
    let mut mc = CounterMachine::new(dims.len())?;
    let ids: Vec<CState> = a.states().map(|q| mc.add_state(a.state_label(q))).collect();
    let target = mc.add_state("accept");
    let mut paths = BTreeMap::new();
    for (i, t) in a.transitions().iter().enumerate() {
        let effects = match t.label {
            Label::Accept { pre, post } => letter_effects(&dims, pre, post),
            Label::Reset(x) => reset(&dims, x),
        };
        let path = chain(&mut mc, ids[t.src.index()], effects, ids[t.dst.index()])?;
        paths.insert((i, skel.clone()), path);
    }
    for &q in a.finals() {
        mc.add_transition(ids[q.index()], Effect::zero(dims.len()), target)?;
    }
    let states = a.states().map(|q| ((q, skel.clone()), ids[q.index()])).collect();
    let mut red = CounterReduction {
        machine: mc,
        init: CounterConfig::new(ids[a.initial().index()], Vec::new()),
        target,
        dims,
        states,
        paths,
    };
    red.init.values = red.expected_values(a.initial_assignment());
    Ok(red)
}

/// A TR-VASS with one dimension per subset of histories, whose target is
/// coverable exactly when `L(a)` is nonempty.
pub fn hra_to_trvass(a: &Hra) -> Result<CounterReduction, ReductionError> {
    if a.ty().registers > 0 {
        return Err(ReductionError::RegistersPresent);
    }
    simulate(a, DimensionMap::with_garbage(a.ty().histories), |dims, x| {
        // Names leaving every history land in the garbage dimension.
        dims.sets()
            .filter(|&(_, y)| !y.is_disjoint(x))
            .map(|(d, y)| Effect::Transfer { from: d, to: dims.dim(y.difference(x)).unwrap() })
            .collect()
    })
}

/// A VASS with one dimension per nonempty set of histories occurring in a
/// label, for automata without registers or resets.
pub fn nonreset_to_vass(a: &Hra) -> Result<CounterReduction, ReductionError> {
    if a.ty().registers > 0 {
        return Err(ReductionError::RegistersPresent);
    }
    let mut sets = Vec::new();
    for t in a.transitions() {
        match t.label {
            Label::Accept { pre, post } => sets.extend([pre, post].into_iter().filter(|x| !x.is_empty())),
            Label::Reset(x) if !x.is_empty() => return Err(ReductionError::ResetsPresent),
            Label::Reset(_) => {}
        }
    }
    sets.sort();
    simulate(a, DimensionMap::new(sets), |_, _| Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::constructions::registers_to_histories;
    use crate::counters::{backward_coverability, MachineClass};
    use crate::hra::HraBuilder;
    use crate::name::Name;
    use crate::oracles::random::{random_hra, HraBounds, Subclass};
    use crate::place::HraType;
    use crate::semantics::{eps_successors, initial_configuration, step_via};
    use crate::symbolic::skeleton_of;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn l3_machine() {
        let red = hra_to_trvass(&catalog::l3()).unwrap();
        assert_eq!(red.machine.dims(), 2);
        assert_eq!(red.init.values, vec![0, 0]);
        assert_eq!(red.dims.dim(PlaceSet::singleton(1)), Some(1));
        let effects: Vec<_> = red.machine.transitions().iter().map(|t| t.effect.clone()).collect();
        assert!(effects.contains(&Effect::Add(vec![0, 1])));
        assert!(effects.contains(&Effect::Add(vec![0, -1])));
        assert!(backward_coverability(&red.machine, &red.init, red.target));
    }

    #[test]
    fn no_finals_not_coverable() {
        let red = hra_to_trvass(&catalog::l3().without_finals()).unwrap();
        assert!(!backward_coverability(&red.machine, &red.init, red.target));
    }

    #[test]
    fn l1_pipeline() {
        let red = hra_to_trvass(&registers_to_histories(&catalog::l1(Name(0)))).unwrap();
        assert!(backward_coverability(&red.machine, &red.init, red.target));
    }

    #[test]
    fn registers_refused() {
        assert_eq!(hra_to_trvass(&catalog::l5_register()).unwrap_err(), ReductionError::RegistersPresent);
    }

    #[test]
    fn l4_label_dims() {
        let red = nonreset_to_vass(&catalog::l4()).unwrap();
        assert_eq!(red.machine.dims(), 2);
        assert_eq!(red.machine.class(), MachineClass::Vass);
        assert!(backward_coverability(&red.machine, &red.init, red.target));
        let red = nonreset_to_vass(&catalog::l2()).unwrap();
        assert!(backward_coverability(&red.machine, &red.init, red.target));
    }

    #[test]
    fn fresh_loop_only() {
        let mut b = HraBuilder::new(HraType::new(1, 0));
        let q = b.add_state("q");
        b.set_initial(q).set_final(q);
        b.accept(q, PlaceSet::EMPTY, PlaceSet::EMPTY, q);
        let a = b.build().unwrap();
        let red = nonreset_to_vass(&a).unwrap();
        // No label mentions a history: only the padding dimension remains.
        assert_eq!(red.dims.sets().count(), 0);
        assert!(backward_coverability(&red.machine, &red.init, red.target));
    }

    /// Random walks on the automaton, replaying each step on the machine.
    #[test]
    fn co_simulation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..60 {
            let a = random_hra(seed, &HraBounds::new(2, 0, 3, 6), Subclass::Any);
            let red = hra_to_trvass(&a).unwrap();
            let mut c = initial_configuration(&a);
            let mut v = red.init.clone();
            for _ in 0..12 {
                let mut letters: Vec<Name> = c.assignment.names().collect();
                letters.push(Name(1000));
                let mut succ = eps_successors(&a, &c);
                for x in letters {
                    succ.extend(step_via(&a, &c, x));
                }
                if succ.is_empty() {
                    break;
                }
                let (i, d) = succ.swap_remove(rng.gen_range(0..succ.len()));
                let path = &red.paths[&(i, skeleton_of(&d.assignment))];
                v = red.machine.replay(&v, path).expect("simulated step enabled");
                assert_eq!(v.state, red.states[&(d.state, skeleton_of(&d.assignment))]);
                for (k, _) in red.dims.sets() {
                    assert_eq!(v.values[k], red.expected_values(&d.assignment)[k]);
                }
                c = d;
            }
        }
    }
}
