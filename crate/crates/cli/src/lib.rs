//! Text formats for automata and counter machines, and the engine race used
//! by the `hra` binary.

pub mod counters;
pub mod format;
pub mod names;
pub mod race;

pub use counters::{parse_counters, print_counters, CounterDocument};
pub use format::{parse_hra, print_hra, ParseError, ParseErrorKind};
pub use names::NameTable;
pub use race::{race, race_engines, RaceError, RaceOutcome};
