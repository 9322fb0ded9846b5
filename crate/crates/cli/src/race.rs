//! Running several emptiness engines on separate threads.

use std::fmt;
use std::sync::mpsc;
use std::thread;

use hra::reductions::{applicable_engines, emptiness, EmptinessReport, Engine, Verdict};
use hra::Hra;

#[derive(Clone, Debug)]
pub struct RaceOutcome {
    /// The first definite verdict to arrive (or the first report, if none
    /// is definite).
    pub first: EmptinessReport,
    /// Every report, in arrival order.
    pub all: Vec<EmptinessReport>,
}

#[derive(Clone, Debug)]
pub enum RaceError {
    /// Two engines returned opposite definite verdicts.
    Disagreement(Vec<EmptinessReport>),
}

impl fmt::Display for RaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RaceError::Disagreement(rs) => {
                write!(f, "engines disagree:")?;
                for r in rs {
                    write!(f, " {}={}", r.engine, r.verdict)?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for RaceError {}

/// Runs every applicable engine concurrently and waits for all of them.
pub fn race(a: &Hra) -> Result<RaceOutcome, RaceError> {
    race_engines(a, &applicable_engines(a))
}

pub fn race_engines(a: &Hra, engines: &[Engine]) -> Result<RaceOutcome, RaceError> {
    let (tx, rx) = mpsc::channel();
    thread::scope(|s| {
        for &e in engines {
            let tx = tx.clone();
            s.spawn(move || {
                if let Ok(r) = emptiness(a, e) {
                    let _ = tx.send(r);
                }
            });
        }
    });
    drop(tx);
    let all: Vec<EmptinessReport> = rx.iter().collect();
    let definite: Vec<&EmptinessReport> = all.iter().filter(|r| r.verdict != Verdict::Unknown).collect();
    if definite.windows(2).any(|w| w[0].verdict != w[1].verdict) {
        return Err(RaceError::Disagreement(all));
    }
    let first = definite.first().copied().or(all.first()).cloned().expect("at least one engine applies");
    Ok(RaceOutcome { first, all })
}
