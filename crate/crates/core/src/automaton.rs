//! Deterministic automaton recognizing words that avoid a finite pattern set.
//!
//! This is the Aho–Corasick goto/failure construction compiled into a full
//! transition table. States that complete a forbidden word are dead; a word
//! avoids the set iff its run from some start state never enters a dead state.
//! On top of the table we keep two liveness notions used for language
//! membership: states reachable after arbitrarily long (or exactly `m`)
//! avoiding words, and states admitting an infinite (or length-`m`) avoiding
//! continuation.

use std::collections::{BTreeSet, VecDeque};

use crate::word::Word;

#[derive(Debug, Clone)]
pub struct AvoidanceAutomaton {
    k: usize,
    delta: Vec<u32>,
    dead: Vec<bool>,
    max_pattern: usize,
}

/// How far a word must extend on each side to count as a language word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    Infinite,
    Exactly(usize),
}

impl AvoidanceAutomaton {
    pub fn new<'a>(alphabet_size: usize, patterns: impl IntoIterator<Item = &'a Word>) -> Self {
        let k = alphabet_size;
        let mut goto: Vec<Vec<Option<u32>>> = vec![vec![None; k]];
        let mut dead = vec![false];
        let mut max_pattern = 0;
        for p in patterns {
            max_pattern = max_pattern.max(p.len());
            let mut s = 0usize;
            for &a in p.symbols() {
                s = match goto[s][a as usize] {
                    Some(t) => t as usize,
                    None => {
                        goto.push(vec![None; k]);
                        dead.push(false);
                        let t = goto.len() - 1;
                        goto[s][a as usize] = Some(t as u32);
                        t
                    }
                };
            }
            dead[s] = true;
        }

        let n = goto.len();
        let mut delta = vec![0u32; n * k];
        let mut fail = vec![0usize; n];
        let mut queue = VecDeque::new();
        for a in 0..k {
            match goto[0][a] {
                Some(t) => {
                    delta[a] = t;
                    queue.push_back(t as usize);
                }
                None => delta[a] = 0,
            }
        }
        while let Some(s) = queue.pop_front() {
            dead[s] = dead[s] || dead[fail[s]];
            for a in 0..k {
                match goto[s][a] {
                    Some(t) => {
                        let t = t as usize;
                        fail[t] = delta[fail[s] * k + a] as usize;
                        delta[s * k + a] = t as u32;
                        queue.push_back(t);
                    }
                    None => delta[s * k + a] = delta[fail[s] * k + a],
                }
            }
        }
        AvoidanceAutomaton {
            k,
            delta,
            dead,
            max_pattern,
        }
    }

    pub fn state_count(&self) -> usize {
        self.dead.len()
    }

    pub fn start(&self) -> usize {
        0
    }

    /// Next state, or `None` when the step completes a forbidden word.
    #[inline]
    pub fn step(&self, state: usize, symbol: u8) -> Option<usize> {
        let t = self.delta[state * self.k + symbol as usize] as usize;
        (!self.dead[t]).then_some(t)
    }

    pub fn avoids(&self, word: &[u8]) -> bool {
        self.run(self.start(), word).is_some() && !self.dead[0]
    }

    pub fn run(&self, mut state: usize, word: &[u8]) -> Option<usize> {
        for &a in word {
            state = self.step(state, a)?;
        }
        Some(state)
    }

    fn successors(&self, states: &BTreeSet<usize>) -> BTreeSet<usize> {
        states
            .iter()
            .flat_map(|&q| (0..self.k as u8).filter_map(move |a| self.step(q, a)))
            .collect()
    }

    /// States in which a run can be after reading a left extension.
    pub fn entry_states(&self, ext: Extension) -> BTreeSet<usize> {
        let mut current: BTreeSet<usize> = if self.dead[0] {
            BTreeSet::new()
        } else {
            [0].into()
        };
        match ext {
            Extension::Exactly(m) => {
                for _ in 0..m {
                    current = self.successors(&current);
                }
                current
            }
            Extension::Infinite => {
                // The state after a word depends only on its last
                // `max_pattern - 1` symbols, so past that length the reachable
                // sets only shrink and must stabilize.
                let mut t = 0;
                loop {
                    let next = self.successors(&current);
                    t += 1;
                    if t >= self.max_pattern && next == current {
                        return current;
                    }
                    current = next;
                }
            }
        }
    }

    /// States from which a right extension of the given kind exists.
    pub fn exit_states(&self, ext: Extension) -> Vec<bool> {
        let n = self.state_count();
        let mut ok: Vec<bool> = self.dead.iter().map(|d| !d).collect();
        let shrink = |ok: &Vec<bool>| -> Vec<bool> {
            (0..n)
                .map(|q| ok[q] && (0..self.k as u8).any(|a| self.step(q, a).is_some_and(|t| ok[t])))
                .collect()
        };
        match ext {
            Extension::Exactly(m) => {
                for _ in 0..m {
                    ok = shrink(&ok);
                }
            }
            Extension::Infinite => loop {
                let next = shrink(&ok);
                if next == ok {
                    break;
                }
                ok = next;
            },
        }
        ok
    }
}

/// Membership oracle: a word belongs to the language iff it avoids the
/// patterns inside some two-sided extension of the configured kind.
#[derive(Debug, Clone)]
pub struct ExtensionOracle {
    automaton: AvoidanceAutomaton,
    entry: Vec<usize>,
    exit: Vec<bool>,
}

impl ExtensionOracle {
    pub fn new<'a>(
        alphabet_size: usize,
        patterns: impl IntoIterator<Item = &'a Word>,
        ext: Extension,
    ) -> Self {
        let automaton = AvoidanceAutomaton::new(alphabet_size, patterns);
        let entry = automaton.entry_states(ext).into_iter().collect();
        let exit = automaton.exit_states(ext);
        ExtensionOracle {
            automaton,
            entry,
            exit,
        }
    }

    pub fn automaton(&self) -> &AvoidanceAutomaton {
        &self.automaton
    }

    /// Deduplicated states reached from the entry states after `prefix`.
    pub fn advance_from_entry(&self, prefix: &[u8]) -> Vec<usize> {
        self.advance(&self.entry, prefix)
    }

    pub fn advance(&self, states: &[usize], word: &[u8]) -> Vec<usize> {
        let mut out: Vec<usize> = states
            .iter()
            .filter_map(|&q| self.automaton.run(q, word))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn accepts_from(&self, states: &[usize]) -> bool {
        states.iter().any(|&q| self.exit[q])
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        self.accepts_from(&self.advance_from_entry(word))
    }

    /// True when the oracle's language is empty.
    pub fn is_empty(&self) -> bool {
        !self.contains(&[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(items: &[&str]) -> Vec<Word> {
        items.iter().map(|w| Word::bin(w)).collect()
    }

    #[test]
    fn avoidance_matches_naive_factor_check() {
        let pats = ws(&["11", "101", "0000"]);
        let aut = AvoidanceAutomaton::new(2, &pats);
        for n in 0..10 {
            for code in 0..(1u64 << n) {
                let w = Word::from_code(code, n, 2);
                let naive = !pats.iter().any(|p| w.contains_factor(p));
                assert_eq!(aut.avoids(w.symbols()), naive, "{w}");
            }
        }
    }

    #[test]
    fn infinite_extension_drops_non_extendable_words() {
        // Forbidding 01 and 10 leaves only constant configurations, and those
        // are excluded by 000 and 111.
        let pats = ws(&["000", "111", "01", "10"]);
        let oracle = ExtensionOracle::new(2, &pats, Extension::Infinite);
        assert!(oracle.is_empty());

        // SFT(11, 101): 01 extends only as ...0001000...; 1 is in the language.
        let pats = ws(&["11", "101"]);
        let oracle = ExtensionOracle::new(2, &pats, Extension::Infinite);
        assert!(oracle.contains(Word::bin("1001").symbols()));
        assert!(!oracle.contains(Word::bin("101").symbols()));
    }

    #[test]
    fn bounded_extension() {
        // With forbidden 0011 and 1100, the word 00 needs a 1-extension on each
        // side; "1" followed by "00" followed by "1" avoids both.
        let pats = ws(&["0011", "1100"]);
        let oracle = ExtensionOracle::new(2, &pats, Extension::Exactly(1));
        assert!(oracle.contains(Word::bin("00").symbols()));
        assert!(!oracle.contains(Word::bin("0011").symbols()));
    }
}
