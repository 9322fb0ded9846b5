//! Counter machines: VASS, reset VASS and transfer-reset VASS.
//!
//! Dimensions are 0-based here; the text format is 1-based.

mod coverability;
mod forward;
mod one_dim;

pub use coverability::{backward_coverability, coverability_witness, pre_basis, UpSet};
pub use forward::{forward_witness_search, ForwardVerdict, DEFAULT_COUNTER_CAP, DEFAULT_STEP_BUDGET};
pub use one_dim::{one_dim_rvass_reachability, one_dim_witness, OneDimError};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CState(pub u32);

impl CState {
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Effect {
    /// Add a vector with entries in {-1, 0, 1}.
    Add(Vec<i8>),
    /// Move the whole content of `from` onto `to`.
    Transfer { from: usize, to: usize },
    Reset(usize),
}

impl Effect {
    pub fn unit(dims: usize, dim: usize, delta: i8) -> Effect {
        let mut v = alloc::vec![0; dims];
        v[dim] = delta;
        Effect::Add(v)
    }

    pub fn zero(dims: usize) -> Effect {
        Effect::Add(alloc::vec![0; dims])
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CTransition {
    pub src: CState,
    pub effect: Effect,
    pub dst: CState,
}

/// The weakest machine class containing a machine.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum MachineClass {
    Vass,
    RVass,
    TrVass,
}

impl fmt::Display for MachineClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MachineClass::Vass => "VASS",
            MachineClass::RVass => "RVASS",
            MachineClass::TrVass => "TRVASS",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CounterError {
    NoDimensions,
    DimOutOfRange { dim: usize },
    ArityMismatch { expected: usize, found: usize },
    NonUnitEntry { value: i64 },
    SelfTransfer { dim: usize },
    UnknownState(CState),
}

impl fmt::Display for CounterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CounterError::NoDimensions => write!(f, "a counter machine needs at least one dimension"),
            CounterError::DimOutOfRange { dim } => write!(f, "dimension {} out of range", dim + 1),
            CounterError::ArityMismatch { expected, found } => {
                write!(f, "expected {expected} vector entries, found {found}")
            }
            CounterError::NonUnitEntry { value } => write!(f, "vector entry {value} not in {{-1,0,1}}"),
            CounterError::SelfTransfer { dim } => write!(f, "transfer from dimension {} to itself", dim + 1),
            CounterError::UnknownState(s) => write!(f, "unknown state {}", s.0),
        }
    }
}

impl core::error::Error for CounterError {}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CounterMachine {
    dims: usize,
    states: Vec<String>,
    transitions: Vec<CTransition>,
    out: Vec<Vec<usize>>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CounterConfig {
    pub state: CState,
    pub values: Vec<u64>,
}

impl CounterConfig {
    pub fn new(state: CState, values: Vec<u64>) -> Self {
        CounterConfig { state, values }
    }
}

impl fmt::Display for CounterConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(c{}, {:?})", self.state.0, self.values)
    }
}

impl CounterMachine {
    pub fn new(dims: usize) -> Result<Self, CounterError> {
        if dims == 0 {
            return Err(CounterError::NoDimensions);
        }
        Ok(CounterMachine { dims, states: Vec::new(), transitions: Vec::new(), out: Vec::new() })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn add_state(&mut self, label: impl Into<String>) -> CState {
        self.states.push(label.into());
        self.out.push(Vec::new());
        CState(self.states.len() as u32 - 1)
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> impl Iterator<Item = CState> {
        (0..self.states.len() as u32).map(CState)
    }

    pub fn state_label(&self, s: CState) -> &str {
        &self.states[s.index()]
    }

    pub fn state_named(&self, label: &str) -> Option<CState> {
        self.states.iter().position(|s| s == label).map(|i| CState(i as u32))
    }

    pub fn transitions(&self) -> &[CTransition] {
        &self.transitions
    }

    pub fn outgoing(&self, s: CState) -> &[usize] {
        &self.out[s.index()]
    }

    fn check_effect(&self, e: &Effect) -> Result<(), CounterError> {
        match e {
            Effect::Add(v) => {
                if v.len() != self.dims {
                    return Err(CounterError::ArityMismatch { expected: self.dims, found: v.len() });
                }
                if let Some(&x) = v.iter().find(|x| !(-1..=1).contains(*x)) {
                    return Err(CounterError::NonUnitEntry { value: x as i64 });
                }
            }
            &Effect::Transfer { from, to } => {
                for d in [from, to] {
                    if d >= self.dims {
                        return Err(CounterError::DimOutOfRange { dim: d });
                    }
                }
                if from == to {
                    return Err(CounterError::SelfTransfer { dim: from });
                }
            }
            &Effect::Reset(d) => {
                if d >= self.dims {
                    return Err(CounterError::DimOutOfRange { dim: d });
                }
            }
        }
        Ok(())
    }

    pub fn add_transition(&mut self, src: CState, effect: Effect, dst: CState) -> Result<usize, CounterError> {
        for s in [src, dst] {
            if s.index() >= self.states.len() {
                return Err(CounterError::UnknownState(s));
            }
        }
        self.check_effect(&effect)?;
        self.transitions.push(CTransition { src, effect, dst });
        let i = self.transitions.len() - 1;
        self.out[src.index()].push(i);
        Ok(i)
    }

    /// Adds an arbitrary integer vector as a chain of unit steps: step `k`
    /// applies the sign of every entry with magnitude at least `k`.
    pub fn add_general(&mut self, src: CState, v: &[i64], dst: CState) -> Result<(), CounterError> {
        if v.len() != self.dims {
            return Err(CounterError::ArityMismatch { expected: self.dims, found: v.len() });
        }
        let steps = v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0).max(1);
        let mut cur = src;
        for k in 1..=steps {
            let unit: Vec<i8> = v
                .iter()
                .map(|&x| if x.unsigned_abs() >= k { x.signum() as i8 } else { 0 })
                .collect();
            let next = if k == steps {
                dst
            } else {
                let label = alloc::format!("{}~{}~{}", self.state_label(src), self.transitions.len(), k);
                self.add_state(label)
            };
            self.add_transition(cur, Effect::Add(unit), next)?;
            cur = next;
        }
        Ok(())
    }

    pub fn class(&self) -> MachineClass {
        let mut c = MachineClass::Vass;
        for t in &self.transitions {
            match t.effect {
                Effect::Add(_) => {}
                Effect::Reset(_) => c = c.max(MachineClass::RVass),
                Effect::Transfer { .. } => c = MachineClass::TrVass,
            }
        }
        c
    }

    /// Whether every Add touches at most one dimension.
    pub fn has_unit_effects(&self) -> bool {
        self.transitions.iter().all(|t| match &t.effect {
            Effect::Add(v) => v.iter().filter(|&&x| x != 0).count() <= 1,
            _ => true,
        })
    }

    /// Successor of `c` along transition `i`, if enabled.
    pub fn fire(&self, i: usize, c: &CounterConfig) -> Option<CounterConfig> {
        let t = &self.transitions[i];
        if t.src != c.state {
            return None;
        }
        let mut v = c.values.clone();
        match &t.effect {
            Effect::Add(d) => {
                for (x, &dx) in v.iter_mut().zip(d) {
                    let y = *x as i64 + dx as i64;
                    if y < 0 {
                        return None;
                    }
                    *x = y as u64;
                }
            }
            &Effect::Transfer { from, to } => {
                v[to] += v[from];
                v[from] = 0;
            }
            &Effect::Reset(d) => v[d] = 0,
        }
        Some(CounterConfig::new(t.dst, v))
    }

    /// Replays a path of transition indices; returns the final configuration.
    pub fn replay(&self, init: &CounterConfig, path: &[usize]) -> Option<CounterConfig> {
        let mut c = init.clone();
        for &i in path {
            c = self.fire(i, &c)?;
        }
        Some(c)
    }
}

/// Exact successors of `c`, each with the fired transition.
pub fn counter_step(mc: &CounterMachine, c: &CounterConfig) -> Vec<(usize, CounterConfig)> {
    mc.outgoing(c.state)
        .iter()
        .filter_map(|&i| mc.fire(i, c).map(|d| (i, d)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn negative_blocked() {
        let mut mc = CounterMachine::new(1).unwrap();
        let q = mc.add_state("q");
        mc.add_transition(q, Effect::Add(vec![-1]), q).unwrap();
        assert!(counter_step(&mc, &CounterConfig::new(q, vec![0])).is_empty());
    }

    #[test]
    fn transfer_and_reset() {
        let mut mc = CounterMachine::new(2).unwrap();
        let q = mc.add_state("q");
        let r = mc.add_state("r");
        mc.add_transition(q, Effect::Transfer { from: 0, to: 1 }, r).unwrap();
        let s = counter_step(&mc, &CounterConfig::new(q, vec![2, 1]));
        assert_eq!(s, [(0, CounterConfig::new(r, vec![0, 3]))]);

        let mut mc = CounterMachine::new(1).unwrap();
        let q = mc.add_state("q");
        let r = mc.add_state("r");
        mc.add_transition(q, Effect::Reset(0), r).unwrap();
        let s = counter_step(&mc, &CounterConfig::new(q, vec![5]));
        assert_eq!(s, [(0, CounterConfig::new(r, vec![0]))]);
    }

    #[test]
    fn general_add_is_split() {
        let mut mc = CounterMachine::new(2).unwrap();
        let q = mc.add_state("q");
        let r = mc.add_state("r");
        mc.add_general(q, &[2, -1], r).unwrap();
        assert_eq!(mc.state_count(), 3);
        assert_eq!(mc.transitions()[0].effect, Effect::Add(vec![1, -1]));
        assert_eq!(mc.transitions()[1].effect, Effect::Add(vec![1, 0]));
        let end = mc.replay(&CounterConfig::new(q, vec![0, 1]), &[0, 1]).unwrap();
        assert_eq!(end, CounterConfig::new(r, vec![2, 0]));
    }

    #[test]
    fn rejects_bad_effects() {
        let mut mc = CounterMachine::new(2).unwrap();
        let q = mc.add_state("q");
        assert!(mc.add_transition(q, Effect::Add(vec![2, 0]), q).is_err());
        assert!(mc.add_transition(q, Effect::Transfer { from: 1, to: 1 }, q).is_err());
        assert!(mc.add_transition(q, Effect::Reset(2), q).is_err());
        assert!(mc.add_transition(q, Effect::Add(vec![1]), q).is_err());
    }
}
