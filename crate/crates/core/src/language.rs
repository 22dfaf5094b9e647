//! Languages `L_X(n)` of subshifts.
//!
//! For SFTs the language is exact: it is read off the trimmed Rauzy graph at
//! the presentation order. Specs with forbidden families are handled through
//! a window: a word of length `n` is accepted when it extends by `margin`
//! symbols on both sides while avoiding every forbidden word of length at
//! most `n + 2·margin`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{Extension, ExtensionOracle};
use crate::error::{Error, Result};
use crate::rauzy::{build_rauzy, RauzyGraph};
use crate::spec::SubshiftSpec;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageEntry {
    pub n: usize,
    pub words: Vec<Word>,
    /// False for family specs, whose language is window-exact only.
    pub exact: bool,
    /// Extension margin used for family specs.
    pub margin: Option<usize>,
    pub empty_subshift: bool,
}

impl LanguageEntry {
    pub fn count(&self) -> usize {
        self.words.len()
    }
}

/// Extension margin used at window length `n` for a family spec.
pub fn default_margin(spec: &SubshiftSpec, n: usize) -> usize {
    let longest = spec
        .materialize_forbidden(n.max(1))
        .iter()
        .map(Word::len)
        .max()
        .unwrap_or(0);
    (2 * longest).max(1)
}

/// Membership test for `L_X` restricted to words of length at most `window`.
#[derive(Debug, Clone)]
pub struct LanguageOracle {
    oracle: ExtensionOracle,
    window: usize,
    margin: Option<usize>,
}

impl LanguageOracle {
    pub fn new(spec: &SubshiftSpec, window: usize) -> Self {
        let k = spec.alphabet().len();
        if spec.is_sft() {
            let oracle = ExtensionOracle::new(k, spec.forbidden().explicit(), Extension::Infinite);
            return LanguageOracle {
                oracle,
                window,
                margin: None,
            };
        }
        let margin = default_margin(spec, window);
        let patterns = spec.materialize_forbidden(window + 2 * margin);
        let oracle = ExtensionOracle::new(k, &patterns, Extension::Exactly(margin));
        LanguageOracle {
            oracle,
            window,
            margin: Some(margin),
        }
    }

    pub fn margin(&self) -> Option<usize> {
        self.margin
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn inner(&self) -> &ExtensionOracle {
        &self.oracle
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        self.oracle.contains(w)
    }

    /// All accepted words of length `n`, lexicographically, by a prefix
    /// search (the accepted set is closed under prefixes).
    pub fn words(&self, k: usize, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(n);
        let start = self.oracle.advance_from_entry(&[]);
        if self.oracle.accepts_from(&start) {
            self.search(k, n, &start, &mut word, &mut out);
        }
        out
    }

    fn search(
        &self,
        k: usize,
        n: usize,
        states: &[usize],
        word: &mut Vec<u8>,
        out: &mut Vec<Word>,
    ) {
        if word.len() == n {
            out.push(Word::new(word.clone()));
            return;
        }
        for a in 0..k as u8 {
            let next = self.oracle.advance(states, &[a]);
            if self.oracle.accepts_from(&next) {
                word.push(a);
                self.search(k, n, &next, word, out);
                word.pop();
            }
        }
    }
}

fn sft_graph(spec: &SubshiftSpec) -> Result<RauzyGraph> {
    let order = spec.presentation_order()?;
    build_rauzy(spec, order.max(1))
}

/// `L_X(n)`. `n = 0` yields the empty word alone, or nothing for the empty
/// subshift.
pub fn language(spec: &SubshiftSpec, n: usize) -> Result<LanguageEntry> {
    if spec.is_sft() {
        let g = sft_graph(spec)?;
        let empty = g.is_empty();
        let words = if empty { Vec::new() } else { g.words(n) };
        return Ok(LanguageEntry {
            n,
            words,
            exact: true,
            margin: None,
            empty_subshift: empty,
        });
    }
    let oracle = LanguageOracle::new(spec, n);
    let words = oracle.words(spec.alphabet().len(), n);
    let empty = !oracle.contains(&[]);
    Ok(LanguageEntry {
        n,
        words,
        exact: false,
        margin: oracle.margin(),
        empty_subshift: empty,
    })
}

/// `|L_X(n)|` for an SFT without listing the words; saturates at `u128::MAX`.
pub fn language_count(spec: &SubshiftSpec, n: usize) -> Result<u128> {
    let g = sft_graph(spec)?;
    if g.is_empty() {
        return Ok(0);
    }
    let base = g.order() - 1;
    if n <= base {
        return Ok(g.words(n).len() as u128);
    }
    Ok(g.path_count(n - base))
}

/// Languages of one spec at every length up to `max_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageTable {
    pub spec: SubshiftSpec,
    pub per_length: BTreeMap<usize, LanguageEntry>,
}

impl LanguageTable {
    pub fn compute(spec: &SubshiftSpec, max_n: usize) -> Result<Self> {
        let per_length = (0..=max_n)
            .map(|n| Ok((n, language(spec, n)?)))
            .collect::<Result<_>>()?;
        Ok(LanguageTable {
            spec: spec.clone(),
            per_length,
        })
    }

    pub fn get(&self, n: usize) -> Option<&LanguageEntry> {
        self.per_length.get(&n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TruncatedDistance {
    /// The languages first differ at `length`; the distance is `2^-length`.
    Exact { length: usize },
    /// The languages agree up to `length`; the distance is at most `2^-length`.
    AtMost { length: usize },
}

impl TruncatedDistance {
    pub fn exponent(&self) -> usize {
        match *self {
            TruncatedDistance::Exact { length } | TruncatedDistance::AtMost { length } => length,
        }
    }

    /// `2^-length`, exact or as an upper bound.
    pub fn value(&self) -> f64 {
        (-(self.exponent() as f64)).exp2()
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, TruncatedDistance::Exact { .. })
    }
}

impl fmt::Display for TruncatedDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruncatedDistance::Exact { length } => write!(f, "2^-{length}"),
            TruncatedDistance::AtMost { length } => write!(f, "<= 2^-{length}"),
        }
    }
}

/// `d_H(a, b) = 2^-m` for the least `m ≤ max_len` with `L_a(m) ≠ L_b(m)`.
pub fn hausdorff_truncated(
    a: &SubshiftSpec,
    b: &SubshiftSpec,
    max_len: usize,
) -> Result<TruncatedDistance> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if max_len == 0 {
        return Err(Error::InvalidArgument(
            "length bound must be at least 1".into(),
        ));
    }
    for m in 0..=max_len {
        if language(a, m)?.words != language(b, m)?.words {
            return Ok(TruncatedDistance::Exact { length: m });
        }
    }
    Ok(TruncatedDistance::AtMost { length: max_len })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_spec;
    use crate::word::Alphabet;

    fn show(e: &LanguageEntry) -> Vec<String> {
        e.words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn sft_languages() {
        let e = language(&SubshiftSpec::binary(&["11"]), 3).unwrap();
        assert_eq!(show(&e), ["000", "001", "010", "100", "101"]);
        assert!(e.exact);
        assert_eq!(
            language(&SubshiftSpec::full_shift(Alphabet::binary()), 4)
                .unwrap()
                .count(),
            16
        );
        let e = language(&SubshiftSpec::binary(&["11", "101"]), 3).unwrap();
        assert_eq!(show(&e), ["000", "001", "010", "100"]);
        assert_eq!(
            language_count(&SubshiftSpec::binary(&["11", "101"]), 3).unwrap(),
            4
        );
        assert_eq!(
            language_count(&SubshiftSpec::binary(&["11"]), 20).unwrap(),
            17711
        );
    }

    #[test]
    fn zero_length_and_empty_subshift() {
        let e = language(&SubshiftSpec::binary(&["11"]), 0).unwrap();
        assert_eq!(e.words, vec![Word::empty()]);
        let e = language(&SubshiftSpec::binary(&["0", "1"]), 2).unwrap();
        assert!(e.empty_subshift);
        assert!(e.words.is_empty());
    }

    #[test]
    fn family_language_respects_margin() {
        let spec = parse_spec("alphabet: 01\nforbid-family: 1 0^{2k} 1 ; k>=1\n").unwrap();
        let e = language(&spec, 6).unwrap();
        assert!(!e.exact);
        assert!(e.margin.unwrap() >= 1);
        assert!(e.words.contains(&Word::bin("101000")));
        assert!(!e
            .words
            .iter()
            .any(|w| w.contains_factor(&Word::bin("1001"))));
        assert!(!e
            .words
            .iter()
            .any(|w| w.contains_factor(&Word::bin("100001"))));
    }

    #[test]
    fn hausdorff_examples() {
        let x = SubshiftSpec::binary(&["11"]);
        assert_eq!(
            hausdorff_truncated(&x, &x, 8).unwrap(),
            TruncatedDistance::AtMost { length: 8 }
        );
        let y = SubshiftSpec::binary(&["11", "10101"]);
        assert_eq!(
            hausdorff_truncated(&x, &y, 8).unwrap(),
            TruncatedDistance::Exact { length: 5 }
        );
        let full = SubshiftSpec::full_shift(Alphabet::binary());
        let d = hausdorff_truncated(&x, &full, 8).unwrap();
        assert_eq!(d, TruncatedDistance::Exact { length: 2 });
        assert_eq!(d.value(), 0.25);
        assert_eq!(d.to_string(), "2^-2");
    }
}
