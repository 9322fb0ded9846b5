//! Configurations, one-letter steps, ε-closure, membership and accepting runs.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::assignment::Assignment;
use crate::hra::{Hra, Label, StateId};
use crate::name::{Name, Word};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Configuration {
    pub state: StateId,
    pub assignment: Assignment,
}

impl Configuration {
    pub fn new(state: StateId, assignment: Assignment) -> Self {
        Configuration { state, assignment }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.state, self.assignment)
    }
}

/// A set of configurations reached after reading some prefix.
pub type Frontier = BTreeSet<Configuration>;

pub fn initial_configuration(a: &Hra) -> Configuration {
    Configuration::new(a.initial(), a.initial_assignment().clone())
}

/// Letter successors of `c`, each paired with the index of the fired transition.
pub fn step_via(a: &Hra, c: &Configuration, letter: Name) -> Vec<(usize, Configuration)> {
    let loc = c.assignment.location(letter);
    let mut out = Vec::new();
    for &i in a.outgoing(c.state) {
        let t = a.transition(i);
        if let Label::Accept { pre, post } = t.label {
            if pre == loc {
                out.push((i, Configuration::new(t.dst, c.assignment.move_name(letter, post))));
            }
        }
    }
    out
}

/// All configurations reachable from `c` by reading `letter` with one Accept
/// transition. ε-moves are not included.
pub fn step(a: &Hra, c: &Configuration, letter: Name) -> BTreeSet<Configuration> {
    step_via(a, c, letter).into_iter().map(|(_, c)| c).collect()
}

/// Single reset successors of `c`.
pub fn eps_successors(a: &Hra, c: &Configuration) -> Vec<(usize, Configuration)> {
    let mut out = Vec::new();
    for &i in a.outgoing(c.state) {
        let t = a.transition(i);
        if let Label::Reset(x) = t.label {
            out.push((i, Configuration::new(t.dst, c.assignment.reset_places(x))));
        }
    }
    out
}

/// Least superset of `cs` closed under reset transitions.
pub fn eps_closure(a: &Hra, cs: &BTreeSet<Configuration>) -> BTreeSet<Configuration> {
    let mut seen = cs.clone();
    let mut work: Vec<Configuration> = cs.iter().cloned().collect();
    while let Some(c) = work.pop() {
        for (_, d) in eps_successors(a, &c) {
            if seen.insert(d.clone()) {
                work.push(d);
            }
        }
    }
    seen
}

pub fn initial_frontier(a: &Hra) -> Frontier {
    let mut s = BTreeSet::new();
    s.insert(initial_configuration(a));
    eps_closure(a, &s)
}

/// Reads one letter from every configuration of `f`, then closes under ε.
pub fn advance(a: &Hra, f: &Frontier, letter: Name) -> Frontier {
    let mut next = BTreeSet::new();
    for c in f {
        next.extend(step(a, c, letter));
    }
    eps_closure(a, &next)
}

pub fn frontier_accepts(a: &Hra, f: &Frontier) -> bool {
    f.iter().any(|c| a.is_final(c.state))
}

/// Whether `w ∈ L(a)`.
pub fn membership(a: &Hra, w: &[Name]) -> bool {
    let mut f = initial_frontier(a);
    for &letter in w {
        if f.is_empty() {
            return false;
        }
        f = advance(a, &f, letter);
    }
    frontier_accepts(a, &f)
}

/// One move of a run: the fired transition, the consumed letter (none for a
/// reset) and the configuration reached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RunStep {
    pub transition: usize,
    pub letter: Option<Name>,
    pub target: Configuration,
}

/// An accepting run, starting at the initial configuration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Run {
    pub start: Configuration,
    pub steps: Vec<RunStep>,
}

impl Run {
    /// The letters consumed along the run.
    pub fn word(&self) -> Word {
        self.steps.iter().filter_map(|s| s.letter).collect()
    }

    /// Checks that the run is a legal accepting run of `a` reading exactly `w`.
    pub fn replay(&self, a: &Hra, w: &[Name]) -> bool {
        if self.start != initial_configuration(a) || self.word().0 != w {
            return false;
        }
        let mut cur = &self.start;
        for s in &self.steps {
            if s.transition >= a.transitions().len() {
                return false;
            }
            let t = a.transition(s.transition);
            if t.src != cur.state {
                return false;
            }
            let ok = match (t.label, s.letter) {
                (Label::Accept { .. }, Some(letter)) => step_via(a, cur, letter)
                    .iter()
                    .any(|(i, c)| *i == s.transition && *c == s.target),
                (Label::Reset(_), None) => eps_successors(a, cur)
                    .iter()
                    .any(|(i, c)| *i == s.transition && *c == s.target),
                _ => false,
            };
            if !ok {
                return false;
            }
            cur = &s.target;
        }
        a.is_final(cur.state)
    }
}

impl fmt::Display for Run {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for s in &self.steps {
            match s.letter {
                Some(l) => write!(f, " --{l}--> {}", s.target)?,
                None => write!(f, " --ε--> {}", s.target)?,
            }
        }
        Ok(())
    }
}

type Parent = Option<(Configuration, usize, Option<Name>)>;

/// Closes one layer under resets, recording parents inside the layer.
fn close_layer(a: &Hra, layer: &mut BTreeMap<Configuration, Parent>) {
    let mut work: VecDeque<Configuration> = layer.keys().cloned().collect();
    while let Some(c) = work.pop_front() {
        for (i, d) in eps_successors(a, &c) {
            if !layer.contains_key(&d) {
                layer.insert(d.clone(), Some((c.clone(), i, None)));
                work.push_back(d);
            }
        }
    }
}

/// An accepting run on `w`, or `None` when `w ∉ L(a)`.
pub fn trace(a: &Hra, w: &[Name]) -> Option<Run> {
    let start = initial_configuration(a);
    let mut layers: Vec<BTreeMap<Configuration, Parent>> = Vec::with_capacity(w.len() + 1);
    let mut first = BTreeMap::new();
    first.insert(start.clone(), None);
    close_layer(a, &mut first);
    layers.push(first);
    for &letter in w {
        let prev = layers.last().unwrap();
        let mut next: BTreeMap<Configuration, Parent> = BTreeMap::new();
        for c in prev.keys() {
            for (i, d) in step_via(a, c, letter) {
                next.entry(d).or_insert_with(|| Some((c.clone(), i, Some(letter))));
            }
        }
        if next.is_empty() {
            return None;
        }
        close_layer(a, &mut next);
        layers.push(next);
    }
    let last = layers.last().unwrap();
    let end = last.keys().find(|c| a.is_final(c.state))?.clone();
    let mut steps = Vec::new();
    let mut cur = end;
    let mut k = layers.len() - 1;
    loop {
        match layers[k].get(&cur).cloned().flatten() {
            None => break,
            Some((prev, i, letter)) => {
                steps.push(RunStep { transition: i, letter, target: cur });
                if letter.is_some() {
                    k -= 1;
                }
                cur = prev;
            }
        }
    }
    steps.reverse();
    Some(Run { start, steps })
}
