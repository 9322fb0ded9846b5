//! Ground truth for testing: language definitions, exhaustive sweeps,
//! bounded searches and random instances.

pub mod bisim;
pub mod bounded;
pub mod languages;
pub mod random;
pub mod words;

pub use bisim::{bounded_bisimulation, identity_bisimulation, verify_strategy, LetterSystem, Side, Strategy};
pub use bounded::{bounded_emptiness, BoundedVerdict};
pub use languages::{oracle_membership, LangId};
pub use words::{enumerate_words, first_difference, first_disagreement, sweep};
pub use random::{random_counter_machine, random_hra, CounterBounds, CounterInstance, CounterKind, HraBounds, Subclass};
