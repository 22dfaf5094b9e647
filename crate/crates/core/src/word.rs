//! Alphabets and finite words.
//!
//! A [`Word`] stores symbol indices into its [`Alphabet`], so the ordering of
//! words is the lexicographic order induced by the order in which the alphabet
//! declares its symbols. Words have no length limit; packed integer codes are
//! available through [`Word::code`] when a table lookup is wanted.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::Alphabet("alphabet is empty".into()));
        }
        if symbols.len() > u8::MAX as usize {
            return Err(Error::Alphabet("more than 255 symbols".into()));
        }
        for (i, a) in symbols.iter().enumerate() {
            if symbols[..i].contains(a) {
                return Err(Error::Alphabet(format!("duplicate symbol {a:?}")));
            }
            if a.is_whitespace() || matches!(a, '#' | '-' | '^' | '{' | '}' | '(' | ')' | ';') {
                return Err(Error::Alphabet(format!("reserved symbol {a:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The alphabet `{0, 1}`.
    pub fn binary() -> Self {
        Alphabet {
            symbols: vec!['0', '1'],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.symbols.len() == 2
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn index_of(&self, symbol: char) -> Option<u8> {
        self.symbols
            .iter()
            .position(|&s| s == symbol)
            .map(|i| i as u8)
    }

    pub fn symbol(&self, index: u8) -> char {
        self.symbols[index as usize]
    }

    /// Parses a word written with this alphabet's symbols.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.chars()
            .map(|ch| {
                self.index_of(ch).ok_or(Error::UnknownSymbol {
                    line: 0,
                    symbol: ch,
                })
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }

    pub fn render(&self, word: &Word) -> String {
        word.0.iter().map(|&i| self.symbol(i)).collect()
    }

    /// All words of length `n` in lexicographic order.
    pub fn all_words(&self, n: usize) -> impl Iterator<Item = Word> {
        let k = self.len() as u64;
        let total = (k as u128).pow(n as u32);
        let count = u64::try_from(total).unwrap_or(u64::MAX);
        (0..count).map(move |code| Word::from_code(code, n, k as u8))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A finite word, stored as symbol indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses a word over the binary alphabet (`'0'`/`'1'`); panics on other
    /// characters. Intended for literals in tests and examples.
    pub fn bin(text: &str) -> Self {
        Alphabet::binary()
            .parse_word(text)
            .unwrap_or_else(|_| panic!("not a binary word: {text:?}"))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.0
    }

    pub fn push(&mut self, symbol: u8) {
        self.0.push(symbol);
    }

    pub fn pop(&mut self) -> Option<u8> {
        self.0.pop()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0, len)
    }

    pub fn suffix(&self, len: usize) -> Word {
        self.slice(self.len() - len, self.len())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Whether `factor` occurs in `self` as a contiguous block.
    pub fn contains_factor(&self, factor: &Word) -> bool {
        contains_factor(&self.0, &factor.0)
    }

    /// The distinct factors of length `len`, sorted.
    pub fn factors(&self, len: usize) -> Vec<Word> {
        if len > self.len() {
            return Vec::new();
        }
        let mut out: Vec<Word> = self
            .0
            .windows(len.max(1))
            .map(|w| Word(w.to_vec()))
            .collect();
        if len == 0 {
            return vec![Word::empty()];
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Applies a symbol permutation.
    pub fn mapped(&self, f: impl Fn(u8) -> u8) -> Word {
        Word(self.0.iter().map(|&s| f(s)).collect())
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    /// Base-`k` code of the word, most significant symbol first. The code
    /// together with the length identifies the word; lexicographic order on
    /// words of equal length matches numeric order on codes.
    pub fn code(&self, k: u8) -> u64 {
        code_of(&self.0, k)
    }

    pub fn from_code(mut code: u64, len: usize, k: u8) -> Word {
        let mut v = vec![0u8; len];
        for slot in v.iter_mut().rev() {
            *slot = (code % k as u64) as u8;
            code /= k as u64;
        }
        Word(v)
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl AsRef<[u8]> for Word {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

/// Renders symbol indices as digits; use [`Alphabet::render`] for the
/// declared symbols.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for &s in &self.0 {
            match char::from_digit(s as u32, 36) {
                Some(ch) => write!(f, "{ch}")?,
                None => write!(f, "[{s}]")?,
            }
        }
        Ok(())
    }
}

/// Serialized as the digit string of [`Display`](fmt::Display), with the empty
/// word as `""`.
impl Serialize for Word {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let text: String = self
            .0
            .iter()
            .map(|&s| char::from_digit(s as u32, 36).unwrap_or('?'))
            .collect();
        serializer.serialize_str(&text)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.chars()
            .map(|ch| {
                ch.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad symbol {ch:?}")))
            })
            .collect::<std::result::Result<Vec<u8>, _>>()
            .map(Word)
    }
}

pub(crate) fn code_of(symbols: &[u8], k: u8) -> u64 {
    symbols
        .iter()
        .fold(0u64, |acc, &s| acc * k as u64 + s as u64)
}

pub(crate) fn contains_factor(haystack: &[u8], needle: &[u8]) -> bool {
    if needle.is_empty() {
        return true;
    }
    haystack.windows(needle.len()).any(|w| w == needle)
}
