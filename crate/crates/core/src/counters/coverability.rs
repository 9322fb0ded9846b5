//! Backward coverability over upward-closed sets with antichain bases.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::{CState, CounterConfig, CounterMachine, Effect};

fn leq(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Minimal elements of `{ v | firing transition t from v reaches ↑b }`.
pub fn pre_basis(mc: &CounterMachine, t: usize, b: &[u64]) -> Vec<Vec<u64>> {
    match &mc.transitions()[t].effect {
        Effect::Add(d) => {
            let v = b
                .iter()
                .zip(d)
                .map(|(&x, &dx)| (x as i64 - dx as i64).max(0) as u64)
                .collect();
            alloc::vec![v]
        }
        &Effect::Reset(i) => {
            if b[i] > 0 {
                Vec::new()
            } else {
                alloc::vec![b.to_vec()]
            }
        }
        &Effect::Transfer { from, to } => {
            if b[from] > 0 {
                return Vec::new();
            }
            (0..=b[to])
                .map(|k| {
                    let mut v = b.to_vec();
                    v[from] = k;
                    v[to] = b[to] - k;
                    v
                })
                .collect()
        }
    }
}

struct Element {
    state: CState,
    values: Vec<u64>,
    /// Transition fired from here and the element it leads into.
    parent: Option<(usize, usize)>,
}

/// An upward-closed set of configurations, kept as a per-state antichain of
/// minimal elements.
pub struct UpSet {
    arena: Vec<Element>,
    basis: Vec<Vec<usize>>,
}

impl UpSet {
    fn new(states: usize) -> Self {
        UpSet { arena: Vec::new(), basis: alloc::vec![Vec::new(); states] }
    }

    /// Inserts unless already covered; returns the new element's id.
    fn insert(&mut self, state: CState, values: Vec<u64>, parent: Option<(usize, usize)>) -> Option<usize> {
        let arena = &self.arena;
        let bucket = &mut self.basis[state.index()];
        if bucket.iter().any(|&e| leq(&arena[e].values, &values)) {
            return None;
        }
        bucket.retain(|&e| !leq(&values, &arena[e].values));
        let id = self.arena.len();
        bucket.push(id);
        self.arena.push(Element { state, values, parent });
        Some(id)
    }

    fn is_live(&self, id: usize) -> bool {
        self.basis[self.arena[id].state.index()].contains(&id)
    }

    /// The minimal elements for `state`.
    pub fn basis(&self, state: CState) -> Vec<&[u64]> {
        self.basis[state.index()].iter().map(|&e| self.arena[e].values.as_slice()).collect()
    }

    /// Whether `c` lies in the set.
    pub fn contains(&self, c: &CounterConfig) -> bool {
        self.covering(c).is_some()
    }

    fn covering(&self, c: &CounterConfig) -> Option<usize> {
        self.basis[c.state.index()]
            .iter()
            .copied()
            .find(|&e| leq(&self.arena[e].values, &c.values))
    }

    /// Whether no basis element dominates another of the same state.
    pub fn is_antichain(&self) -> bool {
        self.basis.iter().all(|bucket| {
            bucket.iter().all(|&x| {
                bucket
                    .iter()
                    .all(|&y| x == y || !leq(&self.arena[x].values, &self.arena[y].values))
            })
        })
    }

    /// The set of configurations from which `target` is coverable.
    pub fn saturate(mc: &CounterMachine, target: CState) -> UpSet {
        let mut up = UpSet::new(mc.state_count());
        let mut preds: Vec<Vec<usize>> = alloc::vec![Vec::new(); mc.state_count()];
        for (i, t) in mc.transitions().iter().enumerate() {
            preds[t.dst.index()].push(i);
        }
        let mut work = VecDeque::new();
        if let Some(id) = up.insert(target, alloc::vec![0; mc.dims()], None) {
            work.push_back(id);
        }
        while let Some(id) = work.pop_front() {
            if !up.is_live(id) {
                continue;
            }
            let (state, values) = (up.arena[id].state, up.arena[id].values.clone());
            for &t in &preds[state.index()] {
                let src = mc.transitions()[t].src;
                for v in pre_basis(mc, t, &values) {
                    if let Some(new) = up.insert(src, v, Some((t, id))) {
                        work.push_back(new);
                    }
                }
            }
            debug_assert!(up.is_antichain());
        }
        up
    }
}

/// Whether some configuration with state `target` is reachable from `init`.
pub fn backward_coverability(mc: &CounterMachine, init: &CounterConfig, target: CState) -> bool {
    UpSet::saturate(mc, target).contains(init)
}

/// A path of transition indices from `init` to a configuration in state
/// `target`, when one exists.
pub fn coverability_witness(mc: &CounterMachine, init: &CounterConfig, target: CState) -> Option<Vec<usize>> {
    let up = UpSet::saturate(mc, target);
    let mut e = up.covering(init)?;
    let mut path = Vec::new();
    while let Some((t, next)) = up.arena[e].parent {
        path.push(t);
        e = next;
    }
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counters::counter_step;
    use alloc::vec;

    #[test]
    fn pre_basis_examples() {
        let mut mc = CounterMachine::new(1).unwrap();
        let q = mc.add_state("q");
        mc.add_transition(q, Effect::Add(vec![1]), q).unwrap();
        assert_eq!(pre_basis(&mc, 0, &[2]), [vec![1]]);

        let mut mc = CounterMachine::new(2).unwrap();
        let q = mc.add_state("q");
        mc.add_transition(q, Effect::Transfer { from: 0, to: 1 }, q).unwrap();
        mc.add_transition(q, Effect::Reset(0), q).unwrap();
        assert_eq!(pre_basis(&mc, 0, &[0, 2]), [vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert!(pre_basis(&mc, 1, &[1, 0]).is_empty());
    }

    #[test]
    fn transfer_basis_checked_by_stepping() {
        let mut mc = CounterMachine::new(2).unwrap();
        let q = mc.add_state("q");
        mc.add_transition(q, Effect::Transfer { from: 0, to: 1 }, q).unwrap();
        let basis = pre_basis(&mc, 0, &[0, 2]);
        for x in 0..=3 {
            for y in 0..=3 {
                let c = CounterConfig::new(q, vec![x, y]);
                let good = counter_step(&mc, &c).iter().any(|(_, d)| leq(&[0, 2], &d.values));
                let covered = basis.iter().any(|b| leq(b, &c.values));
                assert_eq!(good, covered, "{x} {y}");
            }
        }
    }

    #[test]
    fn pump_then_reset() {
        let mut mc = CounterMachine::new(1).unwrap();
        let q0 = mc.add_state("q0");
        let qf = mc.add_state("qf");
        mc.add_transition(q0, Effect::Add(vec![1]), q0).unwrap();
        mc.add_transition(q0, Effect::Reset(0), qf).unwrap();
        assert!(backward_coverability(&mc, &CounterConfig::new(q0, vec![0]), qf));
    }

    #[test]
    fn decrement_needs_token() {
        let mut mc = CounterMachine::new(1).unwrap();
        let q0 = mc.add_state("q0");
        let qf = mc.add_state("qf");
        mc.add_transition(q0, Effect::Add(vec![-1]), qf).unwrap();
        assert!(!backward_coverability(&mc, &CounterConfig::new(q0, vec![0]), qf));
        assert!(backward_coverability(&mc, &CounterConfig::new(q0, vec![1]), qf));
        let path = coverability_witness(&mc, &CounterConfig::new(q0, vec![1]), qf).unwrap();
        assert_eq!(mc.replay(&CounterConfig::new(q0, vec![1]), &path).unwrap().state, qf);
    }
}
