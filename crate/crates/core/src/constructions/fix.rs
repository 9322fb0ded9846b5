//! Pinning names into dedicated registers, and the serial constructions
//! built on it.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{common_type, copy_into, StateTag};
use crate::hra::{Hra, HraBuilder, Label, StateId, Transition};
use crate::name::Name;
use crate::place::{HraType, PlaceSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FixError {
    DuplicateFixName(Name),
}

impl fmt::Display for FixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixError::DuplicateFixName(a) => write!(f, "name {a} occurs twice in the fixed sequence"),
        }
    }
}

impl core::error::Error for FixError {}

fn fixed_label(a: &Hra, q: StateId, f: &[PlaceSet]) -> String {
    let mut s = String::from(a.state_label(q));
    for x in f {
        s.push_str(&format!("/{x}"));
    }
    s
}

/// An `(m, n+k)` automaton in which the names of `w` sit permanently in the
/// new registers `m+n+1..m+n+k`, bisimilar to `a`.
pub fn fix_names(a: &Hra, w: &[Name]) -> Result<Hra, FixError> {
    fix_names_tagged(a, w).map(|(h, _)| h)
}

pub fn fix_names_tagged(a: &Hra, w: &[Name]) -> Result<(Hra, Vec<StateTag>), FixError> {
    for (i, x) in w.iter().enumerate() {
        if w[..i].contains(x) {
            return Err(FixError::DuplicateFixName(*x));
        }
    }
    let ty = a.ty();
    let base = ty.places();
    let hist = ty.history_places();
    let ty2 = HraType::new(ty.histories, ty.registers + w.len());
    let reg = |i: usize| PlaceSet::singleton(base + 1 + i);

    let mut b = HraBuilder::new(ty2);
    for (p, x) in a.initial_assignment().entries() {
        if !w.contains(&x) {
            b.init_name(p, x);
        }
    }
    for (i, &x) in w.iter().enumerate() {
        b.init_name(base + 1 + i, x);
    }

    let f0: Vec<PlaceSet> = w.iter().map(|&x| a.initial_assignment().location(x)).collect();
    // `Some(x)` keys the hidden state that still has to clear registers `x`.
    let mut ids: BTreeMap<(StateId, Vec<PlaceSet>, Option<PlaceSet>), StateId> = BTreeMap::new();
    let mut tags = Vec::new();
    let mut work = Vec::new();
    let mut intern = |b: &mut HraBuilder,
                      q: StateId,
                      f: Vec<PlaceSet>,
                      clearing: Option<PlaceSet>,
                      work: &mut Vec<_>|
     -> (StateId, bool) {
        if let Some(&id) = ids.get(&(q, f.clone(), clearing)) {
            return (id, false);
        }
        let label = fixed_label(a, q, &f);
        let id = match clearing {
            Some(x) => {
                tags.push(StateTag::Clearing { state: q, f: f.clone(), cleared: x });
                b.add_hidden_state(format!("{label}~{x}"))
            }
            None => {
                let id = if a.state_info(q).hidden { b.add_hidden_state(label) } else { b.add_state(label) };
                if a.is_final(q) {
                    b.set_final(id);
                }
                tags.push(StateTag::Fixed { state: q, f: f.clone() });
                work.push((q, f.clone(), id));
                id
            }
        };
        ids.insert((q, f, clearing), id);
        (id, true)
    };

    let (start, _) = intern(&mut b, a.initial(), f0, None, &mut work);
    b.set_initial(start);
    while let Some((q, f, src)) = work.pop() {
        for &i in a.outgoing(q) {
            let t = a.transition(i);
            match t.label {
                Label::Accept { pre, post } => {
                    // Registers written by the move lose whatever name they held.
                    let overwritten = post.difference(hist);
                    let cleared: Vec<PlaceSet> = f.iter().map(|s| s.difference(overwritten)).collect();
                    let (dst, _) = intern(&mut b, t.dst, cleared.clone(), None, &mut work);
                    b.add_transition(Transition { src, label: t.label, dst });
                    for (j, s) in f.iter().enumerate() {
                        if *s != pre {
                            continue;
                        }
                        let mut g = cleared.clone();
                        g[j] = post;
                        let (dst, _) = intern(&mut b, t.dst, g.clone(), None, &mut work);
                        if overwritten.is_empty() {
                            b.accept(src, reg(j), reg(j), dst);
                        } else {
                            // The fixed name stays put, so the real registers are emptied by hand.
                            let (mid, fresh) = intern(&mut b, t.dst, g, Some(overwritten), &mut work);
                            if fresh {
                                b.reset(mid, overwritten, dst);
                            }
                            b.accept(src, reg(j), reg(j), mid);
                        }
                    }
                }
                Label::Reset(x) => {
                    let g = f.iter().map(|s| s.difference(x)).collect();
                    let (dst, _) = intern(&mut b, t.dst, g, None, &mut work);
                    b.reset(src, x, dst);
                }
            }
        }
    }
    Ok((b.build_unchecked(), tags))
}

/// `L(a1) · L(a2)`.
pub fn concatenation(a1: &Hra, a2: &Hra) -> Hra {
    let ty = common_type(a1.ty(), a2.ty());
    let (a1, a2) = (a1.pad_to(ty), a2.pad_to(ty));
    let w: Vec<Name> = a2.initial_names().into_iter().collect();
    let f1 = fix_names(&a1, &w).expect("initial names are distinct");
    let f2 = fix_names(&a2, &w).expect("initial names are distinct");
    let mut b = HraBuilder::new(f1.ty());
    b.set_initial_assignment(f1.initial_assignment());
    let s1 = copy_into(&mut b, &f1, "1.");
    let s2 = copy_into(&mut b, &f2, "2.");
    b.set_initial(s1[f1.initial().index()]);
    for &q in f1.finals() {
        b.reset(s1[q.index()], ty.all(), s2[f2.initial().index()]);
    }
    for &q in f2.finals() {
        b.set_final(s2[q.index()]);
    }
    b.build_unchecked()
}

/// `L(a)*`.
pub fn kleene_star(a: &Hra) -> Hra {
    let ty = a.ty();
    let w: Vec<Name> = a.initial_names().into_iter().collect();
    let f = fix_names(a, &w).expect("initial names are distinct");
    let mut b = HraBuilder::new(f.ty());
    b.set_initial_assignment(f.initial_assignment());
    // A separate start state accepts ε without making the old initial state final.
    let start = b.add_state("start");
    b.set_initial(start).set_final(start);
    let s = copy_into(&mut b, &f, "");
    let init = s[f.initial().index()];
    for &i in f.outgoing(f.initial()) {
        let t = f.transition(i);
        b.add_transition(Transition { src: start, label: t.label, dst: s[t.dst.index()] });
    }
    for &q in f.finals() {
        b.set_final(s[q.index()]);
        b.reset(s[q.index()], ty.all(), init);
    }
    b.build_unchecked()
}
