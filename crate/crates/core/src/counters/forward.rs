//! Bounded forward search, used as a testing oracle.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::{counter_step, CState, CounterConfig, CounterMachine};

pub const DEFAULT_STEP_BUDGET: usize = 100_000;
pub const DEFAULT_COUNTER_CAP: u64 = 64;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ForwardVerdict {
    /// A path of transition indices reaching the target.
    Reachable(Vec<usize>),
    /// The whole reachable space was explored without hitting a bound.
    NotReachableWithinBounds,
    /// The budget ran out or some counter exceeded the cap.
    BoundExhausted,
}

impl ForwardVerdict {
    /// `Some(answer)` for the two definite verdicts.
    pub fn definite(&self) -> Option<bool> {
        match self {
            ForwardVerdict::Reachable(_) => Some(true),
            ForwardVerdict::NotReachableWithinBounds => Some(false),
            ForwardVerdict::BoundExhausted => None,
        }
    }
}

/// Breadth-first search from `init`, expanding at most `step_budget`
/// configurations and discarding any whose counters exceed `counter_cap`.
pub fn forward_witness_search(
    mc: &CounterMachine,
    init: &CounterConfig,
    target: CState,
    step_budget: usize,
    counter_cap: u64,
) -> ForwardVerdict {
    let mut parent: BTreeMap<CounterConfig, Option<(CounterConfig, usize)>> = BTreeMap::new();
    parent.insert(init.clone(), None);
    let mut queue = VecDeque::new();
    queue.push_back(init.clone());
    let mut truncated = init.values.iter().any(|&v| v > counter_cap);
    let mut expanded = 0;
    while let Some(c) = queue.pop_front() {
        if c.state == target {
            let mut path = Vec::new();
            let mut cur = c;
            while let Some(Some((prev, t))) = parent.get(&cur).cloned() {
                path.push(t);
                cur = prev;
            }
            path.reverse();
            return ForwardVerdict::Reachable(path);
        }
        if expanded == step_budget {
            return ForwardVerdict::BoundExhausted;
        }
        expanded += 1;
        for (t, d) in counter_step(mc, &c) {
            if d.values.iter().any(|&v| v > counter_cap) {
                truncated = true;
                continue;
            }
            if !parent.contains_key(&d) {
                parent.insert(d.clone(), Some((c.clone(), t)));
                queue.push_back(d);
            }
        }
    }
    if truncated {
        ForwardVerdict::BoundExhausted
    } else {
        ForwardVerdict::NotReachableWithinBounds
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counters::Effect;
    use alloc::vec;

    #[test]
    fn one_step() {
        let mut mc = CounterMachine::new(1).unwrap();
        let q = mc.add_state("q");
        let r = mc.add_state("r");
        mc.add_transition(q, Effect::Add(vec![1]), r).unwrap();
        let v = forward_witness_search(&mc, &CounterConfig::new(q, vec![0]), r, 100, 10);
        assert_eq!(v, ForwardVerdict::Reachable(vec![0]));
    }

    #[test]
    fn isolated_target() {
        let mut mc = CounterMachine::new(1).unwrap();
        let q = mc.add_state("q");
        let r = mc.add_state("r");
        mc.add_transition(q, Effect::Add(vec![0]), q).unwrap();
        let v = forward_witness_search(&mc, &CounterConfig::new(q, vec![0]), r, 100, 10);
        assert_eq!(v, ForwardVerdict::NotReachableWithinBounds);
    }

    #[test]
    fn deep_pump_hits_cap() {
        let mut mc = CounterMachine::new(1).unwrap();
        let q = mc.add_state("q");
        let mid = mc.add_state("mid");
        let r = mc.add_state("r");
        mc.add_transition(q, Effect::Add(vec![1]), q).unwrap();
        mc.add_transition(q, Effect::Add(vec![0]), mid).unwrap();
        mc.add_general(mid, &[-1_000], r).unwrap();
        let v = forward_witness_search(&mc, &CounterConfig::new(q, vec![0]), r, DEFAULT_STEP_BUDGET, 100);
        assert_eq!(v, ForwardVerdict::BoundExhausted);
    }
}
