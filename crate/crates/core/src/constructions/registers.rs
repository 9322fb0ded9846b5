//! Register elimination: every register becomes a pair of histories.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::StateTag;
use crate::hra::{Hra, HraBuilder, Label, StateId};
use crate::place::{HraType, PlaceSet};

/// An `(m+2n, 0)` automaton bisimilar to `a`.
///
/// Register `m+1+i` is simulated by histories `m+1+i` and `m+1+n+i`; the
/// state remembers which of the two is live. A letter move first clears the
/// dead copies, then reads from the live copies and writes into the dead ones.
pub fn registers_to_histories(a: &Hra) -> Hra {
    registers_to_histories_tagged(a).0
}

pub fn registers_to_histories_tagged(a: &Hra) -> (Hra, Vec<StateTag>) {
    let ty = a.ty();
    let (m, n) = (ty.histories, ty.registers);
    if n == 0 {
        let tags = a.states().map(|q| StateTag::Copy { state: q, selector: 0 }).collect();
        return (a.clone(), tags);
    }
    let ty2 = HraType::new(m + 2 * n, 0);
    let live = |sel: u64, p: usize| -> usize {
        if p <= m || sel & (1 << (p - m - 1)) == 0 {
            p
        } else {
            p + n
        }
    };
    let dead = |sel: u64, p: usize| -> usize {
        if p <= m {
            p
        } else if sel & (1 << (p - m - 1)) == 0 {
            p + n
        } else {
            p
        }
    };
    let garbage = |sel: u64| -> PlaceSet { (m + 1..=m + n).map(|p| dead(sel, p)).collect() };
    let reg_bits = |x: PlaceSet| -> u64 { x.iter().filter(|&p| p > m).fold(0, |acc, p| acc | (1 << (p - m - 1))) };

    let mut b = HraBuilder::new(ty2);
    b.set_initial_assignment(&a.initial_assignment().embed(ty2, |p| p));
    let mut ids: BTreeMap<(StateId, u64), StateId> = BTreeMap::new();
    let mut tags = Vec::new();
    let mut work = Vec::new();
    let mut intern = |b: &mut HraBuilder, tags: &mut Vec<StateTag>, q: StateId, sel: u64, work: &mut Vec<_>| -> StateId {
        if let Some(&id) = ids.get(&(q, sel)) {
            return id;
        }
        let label = format!("{}#{sel:b}", a.state_label(q));
        let id = if a.state_info(q).hidden { b.add_hidden_state(label) } else { b.add_state(label) };
        if a.is_final(q) {
            b.set_final(id);
        }
        ids.insert((q, sel), id);
        tags.push(StateTag::Copy { state: q, selector: sel });
        work.push((q, sel, id));
        id
    };
    let start = intern(&mut b, &mut tags, a.initial(), 0, &mut work);
    b.set_initial(start);
    while let Some((q, sel, src)) = work.pop() {
        let mut mid = None;
        for &i in a.outgoing(q) {
            let t = a.transition(i);
            match t.label {
                Label::Reset(x) => {
                    let dst = intern(&mut b, &mut tags, t.dst, sel, &mut work);
                    b.reset(src, x.map(|p| live(sel, p)), dst);
                }
                Label::Accept { pre, post } => {
                    let mid = *mid.get_or_insert_with(|| {
                        let id = b.add_hidden_state(format!("{}#{sel:b}~", a.state_label(q)));
                        tags.push(StateTag::Midpoint { state: q, selector: sel });
                        b.reset(src, garbage(sel), id);
                        id
                    });
                    let next = sel ^ reg_bits(pre.union(post));
                    let dst = intern(&mut b, &mut tags, t.dst, next, &mut work);
                    b.accept(mid, pre.map(|p| live(sel, p)), post.map(|p| dead(sel, p)), dst);
                }
            }
        }
    }
    (b.build_unchecked(), tags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::hra::validate;
    use crate::name::Name;
    use crate::oracles::bisim::bounded_bisimulation;
    use crate::oracles::words::first_difference;

    #[test]
    fn types() {
        let a = registers_to_histories(&catalog::l5_register());
        assert_eq!(a.ty(), HraType::new(2, 0));
        let a = registers_to_histories(&catalog::l1(Name(0)));
        assert_eq!(a.ty(), HraType::new(3, 0));
        assert!(validate(&a).is_ok());
    }

    #[test]
    fn l1_agrees() {
        let a0 = Name(0);
        let a = catalog::l1(a0);
        let r = registers_to_histories(&a);
        assert_eq!(first_difference(&a, &r, &[a0, Name(1), Name(2)], 5), None);
    }

    #[test]
    fn regression_bisimilar() {
        for (name, a) in catalog::regression(Name(0)) {
            let r = registers_to_histories(&a);
            assert!(bounded_bisimulation(&a, &r, 4).is_ok(), "{name}");
        }
    }
}
