//! Small worked automata for the standard example languages.
//!
//! These double as regression inputs for the constructions and engines.

use crate::hra::{places, Hra, HraBuilder};
use crate::name::Name;
use crate::place::{HraType, PlaceSet};

const E: PlaceSet = PlaceSet::EMPTY;

/// Generate-then-consume: `u·v` with `u, v` all-distinct and every letter of
/// `v` taken from `u`. Type (1,0).
pub fn l3() -> Hra {
    let mut b = HraBuilder::new(HraType::new(1, 0));
    let q = b.add_states(2);
    b.set_initial(q[0]).set_final(q[0]).set_final(q[1]);
    b.accept(q[0], E, places(&[1]), q[0]);
    b.reset(q[0], E, q[1]);
    b.accept(q[1], places(&[1]), E, q[1]);
    b.build().unwrap()
}

/// Blocks `a0 w` with `a0 w` all-distinct, repeated. Type (1,1), `a0` in
/// register 2.
pub fn l1(a0: Name) -> Hra {
    let mut b = HraBuilder::new(HraType::new(1, 1));
    let q = b.add_states(2);
    b.set_initial(q[0]).set_final(q[0]);
    b.init_name(2, a0);
    b.accept(q[0], places(&[2]), places(&[2]), q[1]);
    b.accept(q[1], E, places(&[1]), q[1]);
    b.reset(q[1], places(&[1]), q[0]);
    b.build().unwrap()
}

/// Two interleaved all-distinct sequences. Type (2,0).
pub fn l2() -> Hra {
    let mut b = HraBuilder::new(HraType::new(2, 0));
    let q = b.add_states(2);
    b.set_initial(q[0]).set_final(q[0]);
    b.accept(q[0], E, places(&[1]), q[1]);
    b.accept(q[0], places(&[2]), places(&[1, 2]), q[1]);
    b.accept(q[1], E, places(&[2]), q[0]);
    b.accept(q[1], places(&[1]), places(&[1, 2]), q[0]);
    b.build().unwrap()
}

/// Nonempty words in which not every name occurs exactly twice. Type (2,0).
pub fn l4() -> Hra {
    let mut b = HraBuilder::new(HraType::new(2, 0));
    let q = b.add_states(4);
    b.set_initial(q[0]).set_final(q[1]).set_final(q[3]);
    for &s in &q[..3] {
        b.accept(s, E, places(&[1]), s);
        b.accept(s, places(&[1]), places(&[1]), s);
    }
    b.accept(q[0], E, places(&[2]), q[1]);
    b.accept(q[1], places(&[2]), places(&[2]), q[2]);
    b.accept(q[2], places(&[2]), places(&[2]), q[3]);
    for x in [E, places(&[1]), places(&[2])] {
        for y in [E, places(&[1]), places(&[2])] {
            b.accept(q[3], x, y, q[3]);
        }
    }
    b.build().unwrap()
}

/// No two adjacent letters equal, with one register. Type (0,1).
pub fn l5_register() -> Hra {
    let mut b = HraBuilder::new(HraType::new(0, 1));
    let q = b.add_state("q0");
    b.set_initial(q).set_final(q);
    b.accept(q, E, places(&[1]), q);
    b.build().unwrap()
}

/// No two adjacent letters equal, with two histories and no registers.
pub fn l5_histories() -> Hra {
    let mut b = HraBuilder::new(HraType::new(2, 0));
    let q = b.add_states(2);
    b.set_initial(q[0]).set_final(q[0]).set_final(q[1]);
    b.accept(q[0], E, places(&[2]), q[1]);
    b.accept(q[0], places(&[2]), places(&[2]), q[1]);
    b.accept(q[1], E, places(&[1]), q[0]);
    b.accept(q[1], places(&[1]), places(&[1]), q[0]);
    b.accept(q[0], E, places(&[1]), q[0]);
    b.accept(q[0], places(&[2]), places(&[1]), q[0]);
    b.accept(q[1], E, places(&[2]), q[1]);
    b.accept(q[1], places(&[1]), places(&[2]), q[1]);
    b.build().unwrap()
}

/// Even-length words whose odd positions are pairwise distinct. Type (1,0).
pub fn l2_odd_half() -> Hra {
    let mut b = HraBuilder::new(HraType::new(1, 0));
    let q = b.add_states(2);
    b.set_initial(q[0]).set_final(q[0]);
    b.accept(q[0], E, places(&[1]), q[1]);
    b.accept(q[1], E, E, q[0]);
    b.accept(q[1], places(&[1]), places(&[1]), q[0]);
    b.build().unwrap()
}

/// Even-length words whose even positions are pairwise distinct. Type (1,0).
pub fn l2_even_half() -> Hra {
    let mut b = HraBuilder::new(HraType::new(1, 0));
    let q = b.add_states(2);
    b.set_initial(q[0]).set_final(q[0]);
    b.accept(q[0], E, E, q[1]);
    b.accept(q[0], places(&[1]), places(&[1]), q[1]);
    b.accept(q[1], E, places(&[1]), q[0]);
    b.build().unwrap()
}

/// A single all-distinct block starting with `a0`. Type (1,1), `a0` in
/// register 2.
pub fn l_a0(a0: Name) -> Hra {
    let mut b = HraBuilder::new(HraType::new(1, 1));
    let q = b.add_states(2);
    b.set_initial(q[0]).set_final(q[1]);
    b.init_name(2, a0);
    b.accept(q[0], places(&[2]), places(&[2]), q[1]);
    b.accept(q[1], E, places(&[1]), q[1]);
    b.build().unwrap()
}

/// All-distinct words. Type (1,0).
pub fn l0() -> Hra {
    let mut b = HraBuilder::new(HraType::new(1, 0));
    let q = b.add_state("q0");
    b.set_initial(q).set_final(q);
    b.accept(q, E, places(&[1]), q);
    b.build().unwrap()
}

/// All-distinct words of length at most two. Type (1,0).
pub fn l0_two() -> Hra {
    let mut b = HraBuilder::new(HraType::new(1, 0));
    let q = b.add_states(3);
    b.set_initial(q[0]);
    for &s in &q {
        b.set_final(s);
    }
    b.accept(q[0], E, places(&[1]), q[1]);
    b.accept(q[1], E, places(&[1]), q[2]);
    b.build().unwrap()
}

/// Only the empty word. Type (1,0).
pub fn epsilon_only() -> Hra {
    let mut b = HraBuilder::new(HraType::new(1, 0));
    let q = b.add_state("q0");
    b.set_initial(q).set_final(q);
    b.build().unwrap()
}

/// The empty language. Type (1,0).
pub fn empty_language() -> Hra {
    let mut b = HraBuilder::new(HraType::new(1, 0));
    let q = b.add_state("q0");
    b.set_initial(q);
    b.accept(q, E, places(&[1]), q);
    b.build().unwrap()
}

/// Every regression automaton with a short description. Anchored automata use
/// `a0`.
pub fn regression(a0: Name) -> alloc::vec::Vec<(&'static str, Hra)> {
    alloc::vec![
        ("l0", l0()),
        ("l0-two", l0_two()),
        ("l1", l1(a0)),
        ("l2", l2()),
        ("l2-odd", l2_odd_half()),
        ("l2-even", l2_even_half()),
        ("l3", l3()),
        ("l4", l4()),
        ("l5-register", l5_register()),
        ("l5-histories", l5_histories()),
        ("l-a0", l_a0(a0)),
        ("epsilon", epsilon_only()),
        ("empty", empty_language()),
    ]
}
