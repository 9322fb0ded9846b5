//! Register elimination for non-reset automata by three-colouring.
//!
//! Register `i` becomes three histories `i_r`, `i_b`, `i_y`. A name written
//! to register `i` goes to `i_r` when its next use reads register `i`, and
//! otherwise to one of `i_b`, `i_y`; the state remembers the colour of the
//! name currently held by each register. A name is locally fresh for
//! register `i` when it sits in a colour of `i` other than the current one.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::ReductionError;
use crate::hra::{Hra, HraBuilder, Label, StateId, Transition};
use crate::place::{HraType, PlaceSet};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ScopeViolation {
    Reset(Label),
    /// A label reading or writing more than one register.
    MultiRegister(Label),
    /// A register holding a name initially.
    InitialRegister(usize),
}

impl fmt::Display for ScopeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScopeViolation::Reset(l) => write!(f, "reset {l}"),
            ScopeViolation::MultiRegister(l) => write!(f, "label {l} uses several registers on one side"),
            ScopeViolation::InitialRegister(p) => write!(f, "register {p} is initially nonempty"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Colour {
    Empty,
    R,
    B,
    Y,
}

impl Colour {
    fn offset(self) -> usize {
        match self {
            Colour::R => 1,
            Colour::B => 2,
            Colour::Y => 3,
            Colour::Empty => unreachable!("the empty colour has no history"),
        }
    }

    fn letter(self) -> char {
        match self {
            Colour::Empty => '-',
            Colour::R => 'r',
            Colour::B => 'b',
            Colour::Y => 'y',
        }
    }
}

/// Checks the scope of the colouring construction: no resets other than
/// `Reset(∅)`, registers initially empty and at most one register on each
/// side of every label.
pub fn in_colouring_scope(a: &Hra) -> Result<(), ScopeViolation> {
    let ty = a.ty();
    let regs = ty.register_places();
    for (p, _) in a.initial_assignment().entries() {
        if regs.contains(p) {
            return Err(ScopeViolation::InitialRegister(p));
        }
    }
    for t in a.transitions() {
        match t.label {
            Label::Reset(x) if !x.is_empty() => return Err(ScopeViolation::Reset(t.label)),
            Label::Reset(_) => {}
            Label::Accept { pre, post } => {
                if pre.intersection(regs).len() > 1 || post.intersection(regs).len() > 1 {
                    return Err(ScopeViolation::MultiRegister(t.label));
                }
            }
        }
    }
    Ok(())
}

/// A language-equivalent non-reset automaton of type `(m+3n, 0)`.
pub fn eliminate_registers_colouring(a: &Hra) -> Result<Hra, ReductionError> {
    in_colouring_scope(a).map_err(ReductionError::Scope)?;
    let ty = a.ty();
    let (m, n) = (ty.histories, ty.registers);
    if n == 0 {
        return Ok(a.clone());
    }
    let hist = ty.history_places();
    let place = |i: usize, c: Colour| PlaceSet::singleton(m + 3 * i + c.offset());
    let reg_of = |x: PlaceSet| x.difference(hist).iter().next().map(|p| p - m - 1);

    let mut b = HraBuilder::new(HraType::new(m + 3 * n, 0));
    for (p, x) in a.initial_assignment().entries() {
        b.init_name(p, x);
    }
    let mut ids: BTreeMap<(StateId, Vec<Colour>), StateId> = BTreeMap::new();
    let mut work = Vec::new();
    let mut intern = |b: &mut HraBuilder, q: StateId, f: Vec<Colour>, work: &mut Vec<_>| -> StateId {
        if let Some(&id) = ids.get(&(q, f.clone())) {
            return id;
        }
        let label: String = f.iter().map(|c| c.letter()).collect();
        let id = b.add_state(format!("{}/{label}", a.state_label(q)));
        if a.is_final(q) {
            b.set_final(id);
        }
        ids.insert((q, f.clone()), id);
        work.push((q, f, id));
        id
    };
    let start = intern(&mut b, a.initial(), alloc::vec![Colour::Empty; n], &mut work);
    b.set_initial(start);
    let written = [Colour::R, Colour::B, Colour::Y];
    while let Some((q, f, src)) = work.pop() {
        for &k in a.outgoing(q) {
            let t = a.transition(k);
            let (pre, post) = match t.label {
                Label::Reset(x) => {
                    let dst = intern(&mut b, t.dst, f.clone(), &mut work);
                    b.reset(src, x, dst);
                    continue;
                }
                Label::Accept { pre, post } => (pre, post),
            };
            let (xh, yh) = (pre.intersection(hist), post.intersection(hist));
            // Possible readings of the name: pre-set and colouring after the read.
            let mut reads: Vec<(PlaceSet, Vec<Colour>)> = Vec::new();
            match reg_of(pre) {
                Some(i) => {
                    if f[i] == Colour::R {
                        let mut g = f.clone();
                        g[i] = Colour::Empty;
                        reads.push((xh.union(place(i, Colour::R)), g));
                    }
                }
                None => {
                    reads.push((xh, f.clone()));
                    for i in 0..n {
                        for c in [Colour::B, Colour::Y] {
                            if f[i] != c {
                                reads.push((xh.union(place(i, c)), f.clone()));
                            }
                        }
                    }
                }
            }
            let read_reg = reg_of(pre);
            for (pre2, g) in reads {
                match reg_of(post) {
                    None => {
                        let dst = intern(&mut b, t.dst, g, &mut work);
                        b.add_transition(Transition { src, label: Label::accept(pre2, yh), dst });
                    }
                    Some(j) => {
                        // A name destined to be read from register j blocks overwriting it.
                        if g[j] == Colour::R && read_reg != Some(j) {
                            continue;
                        }
                        for c in written {
                            let mut h = g.clone();
                            h[j] = c;
                            let dst = intern(&mut b, t.dst, h, &mut work);
                            b.accept(src, pre2, yh.union(place(j, c)), dst);
                        }
                    }
                }
            }
        }
    }
    Ok(b.build_unchecked())
}
