//! Control-state reachability for one-counter reset machines.
//!
//! A shortest path to the target never repeats a state with a lower counter
//! value, and a state can only repeat at counter values below `|Q| - 1`
//! before its last visit. Hence a shortest path has at most `|Q|²` steps and
//! an initial value above `|Q|² - 1` behaves like `|Q|² - 1`. A
//! breadth-first search within these bounds is therefore complete.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use super::{counter_step, CState, CounterConfig, CounterMachine, Effect};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OneDimError {
    WrongDimension(usize),
    TransfersPresent,
}

impl fmt::Display for OneDimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneDimError::WrongDimension(d) => write!(f, "expected 1 dimension, found {d}"),
            OneDimError::TransfersPresent => write!(f, "transfers are not allowed"),
        }
    }
}

impl core::error::Error for OneDimError {}

/// A shortest path (transition indices) from `init` to `target`, of length
/// at most `|Q|²`.
pub fn one_dim_witness(
    mc: &CounterMachine,
    init: &CounterConfig,
    target: CState,
) -> Result<Option<Vec<usize>>, OneDimError> {
    if mc.dims() != 1 {
        return Err(OneDimError::WrongDimension(mc.dims()));
    }
    if mc.transitions().iter().any(|t| matches!(t.effect, Effect::Transfer { .. })) {
        return Err(OneDimError::TransfersPresent);
    }
    let q = mc.state_count() as u64;
    let max_len = (q * q) as usize;
    let n0 = init.values[0].min((q * q).saturating_sub(1));
    let start = CounterConfig::new(init.state, alloc::vec![n0]);
    let mut parent: BTreeMap<CounterConfig, Option<(CounterConfig, usize)>> = BTreeMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::new();
    queue.push_back((start, 0usize));
    while let Some((c, len)) = queue.pop_front() {
        if c.state == target {
            let mut path = Vec::new();
            let mut cur = c;
            while let Some(Some((prev, t))) = parent.get(&cur).cloned() {
                path.push(t);
                cur = prev;
            }
            path.reverse();
            return Ok(Some(path));
        }
        if len == max_len {
            continue;
        }
        for (t, d) in counter_step(mc, &c) {
            if !parent.contains_key(&d) {
                parent.insert(d.clone(), Some((c.clone(), t)));
                queue.push_back((d, len + 1));
            }
        }
    }
    Ok(None)
}

pub fn one_dim_rvass_reachability(
    mc: &CounterMachine,
    init: &CounterConfig,
    target: CState,
) -> Result<bool, OneDimError> {
    one_dim_witness(mc, init, target).map(|p| p.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn pump_twice() {
        let mut mc = CounterMachine::new(1).unwrap();
        let q0 = mc.add_state("q0");
        let q1 = mc.add_state("q1");
        let qf = mc.add_state("qf");
        mc.add_transition(q0, Effect::Add(vec![1]), q0).unwrap();
        mc.add_transition(q0, Effect::Add(vec![-1]), q1).unwrap();
        mc.add_transition(q1, Effect::Add(vec![-1]), qf).unwrap();
        let init = CounterConfig::new(q0, vec![0]);
        let path = one_dim_witness(&mc, &init, qf).unwrap().unwrap();
        assert_eq!(path.len(), 4);
        assert_eq!(mc.replay(&init, &path).unwrap().state, qf);
    }

    #[test]
    fn no_pump_no_path() {
        let mut mc = CounterMachine::new(1).unwrap();
        let q0 = mc.add_state("q0");
        let qf = mc.add_state("qf");
        mc.add_transition(q0, Effect::Add(vec![-1]), qf).unwrap();
        assert_eq!(one_dim_rvass_reachability(&mc, &CounterConfig::new(q0, vec![0]), qf), Ok(false));
    }

    #[test]
    fn large_initial_value_is_clamped() {
        let mut mc = CounterMachine::new(1).unwrap();
        let q0 = mc.add_state("q0");
        let qf = mc.add_state("qf");
        mc.add_transition(q0, Effect::Add(vec![-1]), q0).unwrap();
        mc.add_transition(q0, Effect::Reset(0), qf).unwrap();
        let init = CounterConfig::new(q0, vec![1_000_000]);
        let path = one_dim_witness(&mc, &init, qf).unwrap().unwrap();
        assert_eq!(mc.replay(&init, &path).unwrap().state, qf);
    }

    #[test]
    fn rejects_wrong_shape() {
        let mc = CounterMachine::new(2).unwrap();
        let init = CounterConfig::new(CState(0), vec![0, 0]);
        assert_eq!(one_dim_rvass_reachability(&mc, &init, CState(0)), Err(OneDimError::WrongDimension(2)));
    }
}
