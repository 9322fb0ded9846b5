//! History-register automata over an infinite alphabet of names.
//!
//! An automaton of type `(m, n)` stores names in `m` unbounded histories and
//! `n` single-name registers. This crate provides the exact semantics, the
//! regular closure constructions, a symbolic skeleton abstraction and
//! emptiness checking by translation to counter machines.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod assignment;
pub mod catalog;
pub mod classify;
pub mod constructions;
pub mod counters;
pub mod hra;
pub mod name;
pub mod oracles;
pub mod place;
pub mod reductions;
pub mod semantics;
pub mod symbolic;

pub use assignment::Assignment;
pub use classify::{check_strong_determinism, classify, Classification};
pub use hra::{validate, Hra, HraBuilder, Label, StateId, Transition};
pub use name::{permute_word, Name, Permutation, Word};
pub use place::{HraType, PlaceSet};
pub use semantics::{eps_closure, membership, step, trace, Configuration, Run};
