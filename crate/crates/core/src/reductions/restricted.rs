//! Skeleton-enriched reset VASS for automata whose resets clear either no
//! history or all of them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{chain, CounterReduction, DimensionMap, ReductionError};
use crate::counters::{CState, CounterConfig, CounterMachine, Effect};
use crate::hra::{Hra, Label, StateId};
use crate::place::PlaceSet;
use crate::symbolic::{skeleton_of, Skeleton};

/// The first reset that clears some histories but not all of them.
pub fn restriction_violation(a: &Hra) -> Option<Label> {
    let hist = a.ty().history_places();
    a.transitions().iter().map(|t| t.label).find(|l| match *l {
        Label::Reset(x) => !x.is_disjoint(hist) && !hist.is_subset(x),
        Label::Accept { .. } => false,
    })
}

/// Register indices whose name loses its last register when the places in
/// `cleared` are overwritten, each with the histories that name is in.
fn orphaned(phi: &Skeleton, cleared: PlaceSet, keep: usize) -> Vec<PlaceSet> {
    let ty = phi.ty();
    let m = ty.histories;
    let regs = ty.register_places();
    phi.register_indices()
        .iter()
        .filter(|&k| k != keep)
        .filter(|&k| regs.iter().filter(|&r| phi.phi(r).contains(k)).all(|r| cleared.contains(r)))
        .map(|k| (1..=m).filter(|&h| phi.phi(h).contains(k)).collect())
        .collect()
}

struct Explorer<'a> {
    a: &'a Hra,
    dims: DimensionMap,
    mc: CounterMachine,
    states: BTreeMap<(StateId, Skeleton), CState>,
    work: Vec<(StateId, Skeleton)>,
}

impl Explorer<'_> {
    fn intern(&mut self, q: StateId, phi: Skeleton) -> CState {
        if let Some(&s) = self.states.get(&(q, phi.clone())) {
            return s;
        }
        let s = self.mc.add_state(format!("{}|{}", self.a.state_label(q), phi));
        self.states.insert((q, phi.clone()), s);
        self.work.push((q, phi));
        s
    }

    fn inc(&self, x: PlaceSet) -> Option<Effect> {
        if x.is_empty() {
            return None;
        }
        self.dims.dim(x).map(|d| Effect::unit(self.dims.len(), d, 1))
    }

    /// The counter effects and successor skeleton of transition `label` from
    /// `phi`, or `None` when no name can take it.
    fn effects(&self, phi: &Skeleton, label: Label) -> Option<(Vec<Effect>, Skeleton)> {
        let m = self.a.ty().histories;
        let hist = self.a.ty().history_places();
        let mut out = Vec::new();
        match label {
            Label::Accept { pre, post } => {
                let j = if pre.is_subset(hist) {
                    // A name held by no register: fresh, or counted in c_pre.
                    if !pre.is_empty() {
                        out.push(Effect::unit(self.dims.len(), self.dims.dim(pre)?, -1));
                    }
                    0
                } else {
                    phi.at(pre).the_one()?
                };
                if post.is_subset(hist) {
                    out.extend(self.inc(post));
                }
                let overwritten = post.difference(hist);
                for y in orphaned(phi, overwritten, j) {
                    out.extend(self.inc(y));
                }
                let next = phi.skel_move(j, post).ok()?;
                Some((out, next))
            }
            Label::Reset(x) => {
                if hist.is_subset(x) && m > 0 {
                    out.extend(self.dims.sets().map(|(d, _)| Effect::Reset(d)));
                } else {
                    for y in orphaned(phi, x, 0) {
                        out.extend(self.inc(y));
                    }
                }
                Some((out, phi.skel_reset(x)))
            }
        }
    }
}

fn build(a: &Hra, dims: DimensionMap) -> Result<CounterReduction, ReductionError> {
    if let Some(l) = restriction_violation(a) {
        return Err(ReductionError::RestrictionViolated(l));
    }
    let mc = CounterMachine::new(dims.len())?;
    let mut ex = Explorer { a, dims, mc, states: BTreeMap::new(), work: Vec::new() };
    let h0 = a.initial_assignment();
    let start = ex.intern(a.initial(), skeleton_of(h0));
    let target = ex.mc.add_state("accept");
    let mut paths = BTreeMap::new();
    while let Some((q, phi)) = ex.work.pop() {
        let src = ex.states[&(q, phi.clone())];
        if a.is_final(q) {
            ex.mc.add_transition(src, Effect::zero(ex.dims.len()), target)?;
        }
        for &i in a.outgoing(q) {
            let t = a.transition(i);
            if let Some((effects, next)) = ex.effects(&phi, t.label) {
                let dst = ex.intern(t.dst, next);
                let path = chain(&mut ex.mc, src, effects, dst)?;
                paths.insert((i, phi.clone()), path);
            }
        }
    }
    let mut red = CounterReduction {
        machine: ex.mc,
        init: CounterConfig::new(start, Vec::new()),
        target,
        dims: ex.dims,
        states: ex.states,
        paths,
    };
    red.init.values = red.expected_values(h0);
    Ok(red)
}

/// A reset VASS over control states `(q, φ)` with one counter per nonempty
/// set of histories, counting names held by no register. The target is
/// coverable exactly when `L(a)` is nonempty.
pub fn restricted_hra_to_rvass(a: &Hra) -> Result<CounterReduction, ReductionError> {
    build(a, DimensionMap::nonempty_subsets(a.ty().histories))
}

/// The restricted construction for one history: a one-dimensional reset VASS.
pub fn unary_to_one_rvass(a: &Hra) -> Result<CounterReduction, ReductionError> {
    if a.ty().histories != 1 {
        return Err(ReductionError::NotUnary);
    }
    build(a, DimensionMap::nonempty_subsets(1))
}
