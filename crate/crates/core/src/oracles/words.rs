//! Exhaustive word enumeration and prefix-sharing membership sweeps.

use alloc::vec::Vec;

use crate::hra::Hra;
use crate::name::{Name, Word};
use crate::semantics::{advance, frontier_accepts, initial_frontier, Frontier};

/// All words over `alphabet` of length at most `max_len`, shortest first and
/// lexicographic (in alphabet order) within a length.
pub fn enumerate_words(alphabet: &[Name], max_len: usize) -> Vec<Word> {
    let mut out = alloc::vec![Word::new()];
    let mut layer = alloc::vec![Word::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &a in alphabet {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Number of words of length at most `max_len` over `k` letters.
pub fn word_count(k: usize, max_len: usize) -> usize {
    (0..=max_len).map(|i| k.pow(i as u32)).sum()
}

/// Depth-first sweep over all words up to `max_len`, calling `visit` with
/// each word and whether `a` accepts it. Frontiers are shared between
/// words with a common prefix. Stops early when `visit` returns `false`.
pub fn sweep(a: &Hra, alphabet: &[Name], max_len: usize, mut visit: impl FnMut(&[Name], bool) -> bool) {
    fn go(
        a: &Hra,
        alphabet: &[Name],
        left: usize,
        w: &mut Vec<Name>,
        f: &Frontier,
        visit: &mut dyn FnMut(&[Name], bool) -> bool,
    ) -> bool {
        if !visit(w, frontier_accepts(a, f)) {
            return false;
        }
        if left == 0 {
            return true;
        }
        for &x in alphabet {
            let g = advance(a, f, x);
            w.push(x);
            let cont = go(a, alphabet, left - 1, w, &g, visit);
            w.pop();
            if !cont {
                return false;
            }
        }
        true
    }
    let f = initial_frontier(a);
    go(a, alphabet, max_len, &mut Vec::new(), &f, &mut visit);
}

/// The first word (in sweep order) on which `a` disagrees with `oracle`.
pub fn first_disagreement(
    a: &Hra,
    alphabet: &[Name],
    max_len: usize,
    oracle: impl Fn(&[Name]) -> bool,
) -> Option<Word> {
    let mut bad = None;
    sweep(a, alphabet, max_len, |w, acc| {
        if acc != oracle(w) {
            bad = Some(Word::from(w));
            return false;
        }
        true
    });
    bad
}

/// Accepted words of `a` up to `max_len`, in sweep order.
pub fn accepted_words(a: &Hra, alphabet: &[Name], max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    sweep(a, alphabet, max_len, |w, acc| {
        if acc {
            out.push(Word::from(w));
        }
        true
    });
    out
}

/// Membership table of `a` on all words up to `max_len`, in sweep order.
pub fn membership_table(a: &Hra, alphabet: &[Name], max_len: usize) -> Vec<(Word, bool)> {
    let mut out = Vec::new();
    sweep(a, alphabet, max_len, |w, acc| {
        out.push((Word::from(w), acc));
        true
    });
    out
}

/// The first word on which two automata disagree.
pub fn first_difference(a1: &Hra, a2: &Hra, alphabet: &[Name], max_len: usize) -> Option<Word> {
    let t2 = membership_table(a2, alphabet, max_len);
    let mut i = 0;
    let mut bad = None;
    sweep(a1, alphabet, max_len, |w, acc| {
        let same = t2[i].1 == acc;
        i += 1;
        if !same {
            bad = Some(Word::from(w));
        }
        same
    });
    bad
}
