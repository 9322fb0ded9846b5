//! Closure constructions and normal forms.

mod fix;
mod packed;
mod product;
mod registers;

pub use fix::{concatenation, fix_names, fix_names_tagged, kleene_star, FixError};
pub use packed::{
    complement_deterministic, containment_deterministic, to_packed, PackedError, PackedHra, PackedTransition,
};
pub use product::{intersection, intersection_tagged, union};
pub use registers::{registers_to_histories, registers_to_histories_tagged};

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::hra::{Hra, HraBuilder, StateId, Transition};
use crate::place::{HraType, PlaceSet};

/// Where a state of a constructed automaton came from.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum StateTag {
    /// A product state.
    Pair(StateId, StateId),
    /// A source state with the intended locations of the fixed names.
    Fixed { state: StateId, f: Vec<PlaceSet> },
    /// A source state with a copy selector: bit `i` set means register
    /// `m+1+i` currently lives in its second copy.
    Copy { state: StateId, selector: u64 },
    /// Midpoint after the garbage reset of a copy-selector state.
    Midpoint { state: StateId, selector: u64 },
    /// Hidden step after a fixed name moved into registers, before the
    /// registers' previous names are cleared.
    Clearing { state: StateId, f: Vec<PlaceSet>, cleared: PlaceSet },
    Sink,
}

impl fmt::Display for StateTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateTag::Pair(a, b) => write!(f, "({a},{b})"),
            StateTag::Fixed { state, f: fs } => {
                write!(f, "{state}")?;
                for s in fs {
                    write!(f, "/{s}")?;
                }
                Ok(())
            }
            StateTag::Copy { state, selector } => write!(f, "{state}#{selector:b}"),
            StateTag::Midpoint { state, selector } => write!(f, "{state}#{selector:b}~"),
            StateTag::Clearing { state, f: fs, cleared } => {
                write!(f, "{state}")?;
                for s in fs {
                    write!(f, "/{s}")?;
                }
                write!(f, "~{cleared}")
            }
            StateTag::Sink => write!(f, "sink"),
        }
    }
}

/// The least type containing both.
pub fn common_type(a: HraType, b: HraType) -> HraType {
    HraType::new(a.histories.max(b.histories), a.registers.max(b.registers))
}

/// Copies every state and transition of `a` into `b`, prefixing labels.
/// Returns the new id of each old state.
fn copy_into(b: &mut HraBuilder, a: &Hra, prefix: &str) -> Vec<StateId> {
    let map: Vec<StateId> = a
        .states()
        .map(|q| {
            let info = a.state_info(q);
            let label = format!("{prefix}{}", info.label);
            if info.hidden {
                b.add_hidden_state(label)
            } else {
                b.add_state(label)
            }
        })
        .collect();
    for t in a.transitions() {
        b.add_transition(Transition { src: map[t.src.index()], label: t.label, dst: map[t.dst.index()] });
    }
    map
}
