//! Depth-bounded bisimulation games between configuration graphs.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::hra::Hra;
use crate::name::Name;
use crate::semantics::{eps_closure, initial_configuration, step, Configuration};

/// A labelled transition system over names, seen through `ε* · a` moves.
pub trait LetterSystem {
    type Config: Clone + Ord + Debug;

    fn start(&self) -> Self::Config;

    /// Every configuration reachable by ε-moves followed by reading `letter`.
    fn moves(&self, c: &Self::Config, letter: Name) -> Vec<Self::Config>;

    /// Whether a final state is reachable by ε-moves.
    fn finality(&self, c: &Self::Config) -> bool;

    /// Names stored in the configuration.
    fn names(&self, c: &Self::Config) -> BTreeSet<Name>;
}

impl LetterSystem for Hra {
    type Config = Configuration;

    fn start(&self) -> Configuration {
        initial_configuration(self)
    }

    fn moves(&self, c: &Configuration, letter: Name) -> Vec<Configuration> {
        let closed = eps_closure(self, &[c.clone()].into_iter().collect());
        let mut out = BTreeSet::new();
        for d in &closed {
            out.extend(step(self, d, letter));
        }
        out.into_iter().collect()
    }

    fn finality(&self, c: &Configuration) -> bool {
        eps_closure(self, &[c.clone()].into_iter().collect())
            .iter()
            .any(|d| self.is_final(d.state))
    }

    fn names(&self, c: &Configuration) -> BTreeSet<Name> {
        c.assignment.names().collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// A winning strategy for the attacker in the bounded game.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// One side can reach a final state by ε-moves, the other cannot.
    Finality { side: Side },
    /// The attacker reads `letter` on `side`, moving to the `choice`-th
    /// successor; `responses[k]` wins against the defender's `k`-th reply.
    Move { side: Side, letter: Name, choice: usize, responses: Vec<Strategy> },
}

impl Strategy {
    pub fn depth(&self) -> usize {
        match self {
            Strategy::Finality { .. } => 0,
            Strategy::Move { responses, .. } => 1 + responses.iter().map(Strategy::depth).max().unwrap_or(0),
        }
    }
}

fn letters<A: LetterSystem, B: LetterSystem>(a: &A, b: &B, c1: &A::Config, c2: &B::Config) -> Vec<Name> {
    let mut ns: BTreeSet<Name> = a.names(c1);
    ns.extend(b.names(c2));
    let fresh = Name::least_fresh(ns.iter());
    let mut out: Vec<Name> = ns.into_iter().collect();
    out.push(fresh);
    out
}

struct Game<'a, A: LetterSystem, B: LetterSystem> {
    a: &'a A,
    b: &'a B,
    memo: BTreeMap<(A::Config, B::Config, usize), bool>,
}

impl<A: LetterSystem, B: LetterSystem> Game<'_, A, B> {
    /// Whether the defender survives `d` rounds.
    fn holds(&mut self, c1: &A::Config, c2: &B::Config, d: usize) -> bool {
        let key = (c1.clone(), c2.clone(), d);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = self.compute(c1, c2, d);
        self.memo.insert(key, v);
        v
    }

    fn compute(&mut self, c1: &A::Config, c2: &B::Config, d: usize) -> bool {
        if self.a.finality(c1) != self.b.finality(c2) {
            return false;
        }
        if d == 0 {
            return true;
        }
        for letter in letters(self.a, self.b, c1, c2) {
            let m1 = self.a.moves(c1, letter);
            let m2 = self.b.moves(c2, letter);
            for x in &m1 {
                if !m2.iter().any(|y| self.holds(x, y, d - 1)) {
                    return false;
                }
            }
            for y in &m2 {
                if !m1.iter().any(|x| self.holds(x, y, d - 1)) {
                    return false;
                }
            }
        }
        true
    }

    /// Builds the attacker's strategy; requires `!holds(c1, c2, d)`.
    fn strategy(&mut self, c1: &A::Config, c2: &B::Config, d: usize) -> Strategy {
        let f1 = self.a.finality(c1);
        if f1 != self.b.finality(c2) {
            let side = if f1 { Side::Left } else { Side::Right };
            return Strategy::Finality { side };
        }
        for letter in letters(self.a, self.b, c1, c2) {
            let m1 = self.a.moves(c1, letter);
            let m2 = self.b.moves(c2, letter);
            for (i, x) in m1.iter().enumerate() {
                if !m2.iter().any(|y| self.holds(x, y, d - 1)) {
                    let responses = m2.iter().map(|y| self.strategy(x, y, d - 1)).collect();
                    return Strategy::Move { side: Side::Left, letter, choice: i, responses };
                }
            }
            for (i, y) in m2.iter().enumerate() {
                if !m1.iter().any(|x| self.holds(x, y, d - 1)) {
                    let responses = m1.iter().map(|x| self.strategy(x, y, d - 1)).collect();
                    return Strategy::Move { side: Side::Right, letter, choice: i, responses };
                }
            }
        }
        unreachable!("strategy requested for a position the defender holds")
    }
}

/// Plays the bisimulation game for `depth` letter rounds from the initial
/// configurations. On failure returns a minimal-depth attacker strategy.
pub fn bounded_bisimulation<A: LetterSystem, B: LetterSystem>(a: &A, b: &B, depth: usize) -> Result<(), Box<Strategy>> {
    let (s1, s2) = (a.start(), b.start());
    let mut g = Game { a, b, memo: BTreeMap::new() };
    for d in 0..=depth {
        if !g.holds(&s1, &s2, d) {
            return Err(Box::new(g.strategy(&s1, &s2, d)));
        }
    }
    Ok(())
}

/// Checks that `s` wins from the initial configurations.
pub fn verify_strategy<A: LetterSystem, B: LetterSystem>(a: &A, b: &B, s: &Strategy) -> bool {
    fn go<A: LetterSystem, B: LetterSystem>(a: &A, b: &B, c1: &A::Config, c2: &B::Config, s: &Strategy) -> bool {
        match s {
            Strategy::Finality { side } => {
                let (f1, f2) = (a.finality(c1), b.finality(c2));
                match side {
                    Side::Left => f1 && !f2,
                    Side::Right => f2 && !f1,
                }
            }
            Strategy::Move { side, letter, choice, responses } => {
                let m1 = a.moves(c1, *letter);
                let m2 = b.moves(c2, *letter);
                match side {
                    Side::Left => {
                        let Some(x) = m1.get(*choice) else { return false };
                        responses.len() == m2.len()
                            && m2.iter().zip(responses).all(|(y, r)| go(a, b, x, y, r))
                    }
                    Side::Right => {
                        let Some(y) = m2.get(*choice) else { return false };
                        responses.len() == m1.len()
                            && m1.iter().zip(responses).all(|(x, r)| go(a, b, x, y, r))
                    }
                }
            }
        }
    }
    go(a, b, &a.start(), &b.start(), s)
}

/// Checks that the identity on configurations is a bisimulation up to
/// `depth` letters: both systems share configurations and agree on moves
/// and finality at every configuration reachable within the bound.
pub fn identity_bisimulation<A, B>(a: &A, b: &B, depth: usize) -> bool
where
    A: LetterSystem,
    B: LetterSystem<Config = A::Config>,
{
    let start = a.start();
    if start != b.start() {
        return false;
    }
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut layer = alloc::vec![start];
    for round in 0..=depth {
        let mut next = Vec::new();
        for c in &layer {
            if a.finality(c) != b.finality(c) {
                return false;
            }
            if round == depth {
                continue;
            }
            for letter in letters(a, b, c, c) {
                let m1 = a.moves(c, letter);
                let m2 = b.moves(c, letter);
                if m1 != m2 {
                    return false;
                }
                for x in m1 {
                    if seen.insert(x.clone()) {
                        next.push(x);
                    }
                }
            }
        }
        layer = next;
    }
    true
}
