//! Subshift presentations: an alphabet plus a set of forbidden words.
//!
//! The forbidden set holds explicit words and parametric families of the form
//! `prefix · repeated^(m·k) · suffix`. A spec with no families is a subshift
//! of finite type. Explicit words are always kept reduced: a word containing
//! another forbidden word as a factor is redundant and is dropped.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Which exponents `k` a family admits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExponentPredicate {
    AtLeast(u32),
    OneOf(BTreeSet<u32>),
    /// `k ≥ min` with the given parity.
    Parity {
        even: bool,
        min: u32,
    },
}

impl ExponentPredicate {
    pub fn admits(&self, k: u32) -> bool {
        match self {
            ExponentPredicate::AtLeast(min) => k >= *min,
            ExponentPredicate::OneOf(set) => set.contains(&k),
            ExponentPredicate::Parity { even, min } => k >= *min && k.is_multiple_of(2) == *even,
        }
    }

    fn min(&self) -> u32 {
        match self {
            ExponentPredicate::AtLeast(min) | ExponentPredicate::Parity { min, .. } => *min,
            ExponentPredicate::OneOf(set) => set.iter().next().copied().unwrap_or(0),
        }
    }
}

impl fmt::Display for ExponentPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentPredicate::AtLeast(min) => write!(f, "k>={min}"),
            ExponentPredicate::OneOf(set) => {
                let items: Vec<String> = set.iter().map(|k| k.to_string()).collect();
                write!(f, "k in {{{}}}", items.join(","))
            }
            ExponentPredicate::Parity { even, min } => {
                write!(f, "{} k>={min}", if *even { "even" } else { "odd" })
            }
        }
    }
}

/// The family `{ prefix · repeated^(multiplier·k) · suffix : predicate(k) }`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyPattern {
    pub prefix: Word,
    pub repeated: Word,
    pub suffix: Word,
    pub multiplier: u32,
    pub predicate: ExponentPredicate,
}

impl FamilyPattern {
    pub fn new(
        prefix: Word,
        repeated: Word,
        suffix: Word,
        multiplier: u32,
        predicate: ExponentPredicate,
    ) -> Result<Self> {
        if repeated.is_empty() {
            return Err(Error::InvalidArgument(
                "family repeated word is empty".into(),
            ));
        }
        if multiplier == 0 {
            return Err(Error::InvalidArgument(
                "family exponent multiplier is zero".into(),
            ));
        }
        Ok(FamilyPattern {
            prefix,
            repeated,
            suffix,
            multiplier,
            predicate,
        })
    }

    fn instance_len(&self, k: u32) -> usize {
        self.prefix.len() + self.suffix.len() + self.repeated.len() * (self.multiplier * k) as usize
    }

    /// All instances of length at most `max_len`, shortest first.
    pub fn instances(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut k = self.predicate.min();
        while self.instance_len(k) <= max_len {
            if self.predicate.admits(k) {
                let body = self.repeated.repeat((self.multiplier * k) as usize);
                let w = self.prefix.concat(&body).concat(&self.suffix);
                if !w.is_empty() {
                    out.push(w);
                }
            }
            k += 1;
        }
        out
    }

    fn transformed(&self, f: &impl Fn(&Word) -> Word, reverse: bool) -> FamilyPattern {
        let (prefix, suffix) = if reverse {
            (f(&self.suffix), f(&self.prefix))
        } else {
            (f(&self.prefix), f(&self.suffix))
        };
        FamilyPattern {
            prefix,
            repeated: f(&self.repeated),
            suffix,
            multiplier: self.multiplier,
            predicate: self.predicate.clone(),
        }
    }

    fn to_text(&self, alphabet: &Alphabet) -> String {
        let part = |w: &Word| {
            if w.is_empty() {
                "-".to_string()
            } else {
                alphabet.render(w)
            }
        };
        let expr = if self.multiplier == 1 {
            "k".to_string()
        } else {
            format!("{}k", self.multiplier)
        };
        let rep = alphabet.render(&self.repeated);
        let rep = if self.repeated.len() > 1 {
            format!("({rep})")
        } else {
            rep
        };
        format!(
            "{} {}^{{{}}} {} ; {}",
            part(&self.prefix),
            rep,
            expr,
            part(&self.suffix),
            self.predicate
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ForbiddenSet {
    explicit: BTreeSet<Word>,
    families: Vec<FamilyPattern>,
}

impl ForbiddenSet {
    pub fn explicit(&self) -> &BTreeSet<Word> {
        &self.explicit
    }

    pub fn families(&self) -> &[FamilyPattern] {
        &self.families
    }
}

/// Drops every word that contains another word of the set as a factor.
pub fn reduce(words: impl IntoIterator<Item = Word>) -> BTreeSet<Word> {
    let mut sorted: Vec<Word> = words
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    sorted.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<Word> = Vec::with_capacity(sorted.len());
    for w in sorted {
        if !kept.iter().any(|k| w.contains_factor(k)) {
            kept.push(w);
        }
    }
    kept.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecKind {
    Sft,
    General,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubshiftSpec {
    alphabet: Alphabet,
    forbidden: ForbiddenSet,
}

impl SubshiftSpec {
    pub fn new(
        alphabet: Alphabet,
        explicit: impl IntoIterator<Item = Word>,
        families: Vec<FamilyPattern>,
    ) -> Result<Self> {
        let explicit: Vec<Word> = explicit.into_iter().collect();
        for w in &explicit {
            if w.is_empty() {
                return Err(Error::EmptyWord { line: 0 });
            }
            if let Some(&s) = w.symbols().iter().find(|&&s| s as usize >= alphabet.len()) {
                return Err(Error::InvalidArgument(format!(
                    "symbol index {s} outside the alphabet"
                )));
            }
        }
        Ok(SubshiftSpec {
            alphabet,
            forbidden: ForbiddenSet {
                explicit: reduce(explicit),
                families,
            },
        })
    }

    pub fn sft(alphabet: Alphabet, forbidden: impl IntoIterator<Item = Word>) -> Result<Self> {
        Self::new(alphabet, forbidden, Vec::new())
    }

    /// Binary SFT from word literals, e.g. `SubshiftSpec::binary(&["11", "101"])`.
    pub fn binary(forbidden: &[&str]) -> Self {
        Self::sft(Alphabet::binary(), forbidden.iter().map(|w| Word::bin(w)))
            .expect("valid binary words")
    }

    pub fn full_shift(alphabet: Alphabet) -> Self {
        SubshiftSpec {
            alphabet,
            forbidden: ForbiddenSet::default(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &ForbiddenSet {
        &self.forbidden
    }

    pub fn kind(&self) -> SpecKind {
        if self.forbidden.families.is_empty() {
            SpecKind::Sft
        } else {
            SpecKind::General
        }
    }

    pub fn is_sft(&self) -> bool {
        self.kind() == SpecKind::Sft
    }

    /// Longest reduced explicit forbidden word (1 when there is none). This
    /// bounds the minimal order of the SFT from above.
    pub fn presentation_order(&self) -> Result<usize> {
        if !self.is_sft() {
            return Err(Error::NotSft);
        }
        Ok(self
            .forbidden
            .explicit
            .iter()
            .map(Word::len)
            .max()
            .unwrap_or(1))
    }

    /// Explicit words plus family instances of length at most `n`, reduced.
    pub fn materialize_forbidden(&self, n: usize) -> BTreeSet<Word> {
        let explicit = self
            .forbidden
            .explicit
            .iter()
            .filter(|w| w.len() <= n)
            .cloned();
        let families = self.forbidden.families.iter().flat_map(|f| f.instances(n));
        reduce(explicit.chain(families))
    }

    fn transformed(&self, f: impl Fn(&Word) -> Word, reverse: bool) -> SubshiftSpec {
        SubshiftSpec {
            alphabet: self.alphabet.clone(),
            forbidden: ForbiddenSet {
                explicit: reduce(self.forbidden.explicit.iter().map(&f)),
                families: self
                    .forbidden
                    .families
                    .iter()
                    .map(|p| p.transformed(&f, reverse))
                    .collect(),
            },
        }
    }

    /// The orbit under the letter exchange `0 ↔ 1` and word reversal,
    /// deduplicated and sorted.
    pub fn symmetry_orbit(&self) -> Result<Vec<SubshiftSpec>> {
        if !self.alphabet.is_binary() {
            return Err(Error::NotBinary);
        }
        let flip = |w: &Word| w.mapped(|s| 1 - s);
        let rev = |w: &Word| w.reversed();
        let both = |w: &Word| w.reversed().mapped(|s| 1 - s);
        let mut orbit = vec![
            self.clone(),
            self.transformed(flip, false),
            self.transformed(rev, true),
            self.transformed(both, true),
        ];
        orbit.sort_by_key(|s| s.to_text());
        orbit.dedup();
        Ok(orbit)
    }

    /// Serializes to the line-oriented spec format accepted by [`parse_spec`].
    pub fn to_text(&self) -> String {
        let mut out = format!("alphabet: {}\n", self.alphabet);
        if !self.forbidden.explicit.is_empty() {
            let words: Vec<String> = self
                .sorted_explicit()
                .iter()
                .map(|w| self.alphabet.render(w))
                .collect();
            out.push_str(&format!("forbid: {}\n", words.join(" ")));
        }
        for fam in &self.forbidden.families {
            out.push_str(&format!("forbid-family: {}\n", fam.to_text(&self.alphabet)));
        }
        out
    }

    /// Explicit words ordered by length, then lexicographically.
    pub fn sorted_explicit(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.forbidden.explicit.iter().cloned().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }
}

impl fmt::Display for SubshiftSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .sorted_explicit()
            .iter()
            .map(|w| self.alphabet.render(w))
            .collect();
        for fam in &self.forbidden.families {
            parts.push(fam.to_text(&self.alphabet));
        }
        if self.is_sft() {
            write!(f, "SFT({})", parts.join(","))
        } else {
            write!(f, "X_S({})", parts.join(","))
        }
    }
}

/// Parses the line-oriented spec format:
///
/// ```text
/// # comment
/// alphabet: 01
/// forbid: 11 101
/// forbid-family: 1 0^{2k} 1 ; k>=1
/// ```
pub fn parse_spec(text: &str) -> Result<SubshiftSpec> {
    let mut alphabet: Option<Alphabet> = None;
    let mut explicit = Vec::new();
    let mut families = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(':').ok_or_else(|| Error::Syntax {
            line: line_no,
            message: format!("expected `key: value`, got {line:?}"),
        })?;
        let rest = rest.trim();
        match (key.trim(), &alphabet) {
            ("alphabet", None) => {
                let symbols: Vec<char> = rest.chars().filter(|c| !c.is_whitespace()).collect();
                alphabet = Some(Alphabet::new(symbols).map_err(|e| Error::Syntax {
                    line: line_no,
                    message: e.to_string(),
                })?);
            }
            ("alphabet", Some(_)) => {
                return Err(Error::Syntax {
                    line: line_no,
                    message: "alphabet declared twice".into(),
                })
            }
            (_, None) => {
                return Err(Error::Syntax {
                    line: line_no,
                    message: "the first line must declare the alphabet".into(),
                })
            }
            ("forbid", Some(a)) => {
                for token in rest.split_whitespace() {
                    explicit.push(parse_word(a, token, line_no)?);
                }
            }
            ("forbid-family", Some(a)) => families.push(parse_family(a, rest, line_no)?),
            (other, Some(_)) => {
                return Err(Error::Syntax {
                    line: line_no,
                    message: format!("unknown directive {other:?}"),
                })
            }
        }
    }

    let alphabet = alphabet.ok_or(Error::Syntax {
        line: 1,
        message: "missing alphabet declaration".into(),
    })?;
    SubshiftSpec::new(alphabet, explicit, families)
}

fn parse_word(alphabet: &Alphabet, token: &str, line: usize) -> Result<Word> {
    if token.is_empty() || token == "-" {
        return Err(Error::EmptyWord { line });
    }
    token
        .chars()
        .map(|ch| {
            alphabet
                .index_of(ch)
                .ok_or(Error::UnknownSymbol { line, symbol: ch })
        })
        .collect::<Result<Vec<u8>>>()
        .map(Word::new)
}

fn parse_optional_word(alphabet: &Alphabet, token: &str, line: usize) -> Result<Word> {
    if token == "-" {
        Ok(Word::empty())
    } else {
        parse_word(alphabet, token, line)
    }
}

fn parse_family(alphabet: &Alphabet, text: &str, line: usize) -> Result<FamilyPattern> {
    let syntax = |message: &str| Error::Syntax {
        line,
        message: message.to_string(),
    };
    let (pattern, predicate) = text
        .split_once(';')
        .ok_or_else(|| syntax("family needs `; <predicate>`"))?;
    let tokens: Vec<&str> = pattern.split_whitespace().collect();
    let [prefix, body, suffix] = tokens[..] else {
        return Err(syntax(
            "family pattern must be `<prefix> <word>^{<expr>} <suffix>`",
        ));
    };
    let (rep, expr) = body
        .split_once('^')
        .ok_or_else(|| syntax("missing `^` in family body"))?;
    let rep = rep
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(rep);
    let expr = expr
        .strip_prefix('{')
        .and_then(|e| e.strip_suffix('}'))
        .ok_or_else(|| syntax("exponent must be written `{k}` or `{2k}`"))?;
    let multiplier = match expr.trim().strip_suffix('k') {
        Some("") => 1,
        Some(m) => m
            .trim()
            .parse::<u32>()
            .map_err(|_| syntax("bad exponent multiplier"))?,
        None => return Err(syntax("exponent must be a multiple of k")),
    };
    let predicate =
        parse_predicate(predicate.trim()).ok_or_else(|| syntax("bad exponent predicate"))?;
    FamilyPattern::new(
        parse_optional_word(alphabet, prefix, line)?,
        parse_word(alphabet, rep, line)?,
        parse_optional_word(alphabet, suffix, line)?,
        multiplier,
        predicate,
    )
    .map_err(|e| syntax(&e.to_string()))
}

fn parse_predicate(text: &str) -> Option<ExponentPredicate> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(min) = compact.strip_prefix("k>=") {
        return min.parse().ok().map(ExponentPredicate::AtLeast);
    }
    if let Some(set) = compact
        .strip_prefix("kin{")
        .and_then(|s| s.strip_suffix('}'))
    {
        let values: Option<BTreeSet<u32>> = set.split(',').map(|v| v.parse().ok()).collect();
        return values
            .filter(|v| !v.is_empty())
            .map(ExponentPredicate::OneOf);
    }
    for (tag, even) in [("evenk>=", true), ("oddk>=", false)] {
        if let Some(min) = compact.strip_prefix(tag) {
            return min
                .parse()
                .ok()
                .map(|min| ExponentPredicate::Parity { even, min });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(set: &BTreeSet<Word>) -> Vec<String> {
        let mut v: Vec<Word> = set.iter().cloned().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn parses_simple_sft() {
        let spec = parse_spec("alphabet: 01\nforbid: 11\n").unwrap();
        assert!(spec.is_sft());
        assert_eq!(words(spec.forbidden().explicit()), ["11"]);
    }

    #[test]
    fn reduces_redundant_words() {
        let spec = parse_spec("alphabet: 01\nforbid: 11 111").unwrap();
        assert_eq!(words(spec.forbidden().explicit()), ["11"]);
        let spec = parse_spec("alphabet: 01\nforbid: 0110 11\nforbid: 101").unwrap();
        assert_eq!(words(spec.forbidden().explicit()), ["11", "101"]);
    }

    #[test]
    fn parses_family_as_general_kind() {
        let spec = parse_spec("alphabet: 01\nforbid-family: 1 0^{2k} 1 ; k>=1").unwrap();
        assert_eq!(spec.kind(), SpecKind::General);
        let fam = &spec.forbidden().families()[0];
        assert_eq!(fam.multiplier, 2);
        assert_eq!(fam.predicate, ExponentPredicate::AtLeast(1));
        assert_eq!(fam.prefix, Word::bin("1"));
    }

    #[test]
    fn comments_blank_lines_and_dashes() {
        let text =
            "# header\n\nalphabet: 01  # binary\nforbid-family: - (101)^{k} - ; k in {2, 3}\n";
        let spec = parse_spec(text).unwrap();
        let fam = &spec.forbidden().families()[0];
        assert!(fam.prefix.is_empty() && fam.suffix.is_empty());
        assert_eq!(fam.repeated, Word::bin("101"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_spec("forbid: 11"),
            Err(Error::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_spec("alphabet: 01\nforbid: 12"),
            Err(Error::UnknownSymbol {
                line: 2,
                symbol: '2'
            })
        ));
        assert!(matches!(
            parse_spec("alphabet: 01\nforbid: -"),
            Err(Error::EmptyWord { line: 2 })
        ));
        assert!(matches!(
            parse_spec("alphabet: 01\nforbid-family: 1 0^{k} 1"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_spec("alphabet: 01\nforbid-family: 1 0^{j} 1 ; k>=1"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_spec("alphabet: 00"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_spec("alphabet: 01\nforbid 11"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let text = "alphabet: 01\nforbid: 11 10101\nforbid-family: 1 0^{2k} 1 ; k>=1\nforbid-family: 10101 (101)^{k} 01 ; k in {1,2,3,5}\n";
        let spec = parse_spec(text).unwrap();
        assert_eq!(parse_spec(&spec.to_text()).unwrap(), spec);
    }

    #[test]
    fn materializes_family_instances() {
        let spec = parse_spec("alphabet: 01\nforbid-family: 1 0^{2k} 1 ; k>=1").unwrap();
        assert_eq!(words(&spec.materialize_forbidden(6)), ["1001", "100001"]);

        let spec = SubshiftSpec::binary(&["11"]);
        assert_eq!(words(&spec.materialize_forbidden(10)), ["11"]);

        // 10101·(101)^k·01 has length 7 + 3k; only k = 1 fits in 11.
        let spec = parse_spec("alphabet: 01\nforbid-family: 10101 (101)^{k} 01 ; k in {1,2,3,5,7}")
            .unwrap();
        assert_eq!(words(&spec.materialize_forbidden(11)), ["1010110101"]);
    }

    #[test]
    fn parity_predicate() {
        let spec = parse_spec("alphabet: 01\nforbid-family: 1 0^{k} 1 ; odd k>=1").unwrap();
        assert_eq!(
            words(&spec.materialize_forbidden(7)),
            ["101", "10001", "1000001"]
        );
    }

    #[test]
    fn presentation_orders() {
        assert_eq!(
            SubshiftSpec::binary(&["11", "101"])
                .presentation_order()
                .unwrap(),
            3
        );
        assert_eq!(
            SubshiftSpec::binary(&["11"]).presentation_order().unwrap(),
            2
        );
        assert_eq!(
            SubshiftSpec::binary(&["11", "10101"])
                .presentation_order()
                .unwrap(),
            5
        );
        assert_eq!(SubshiftSpec::binary(&[]).presentation_order().unwrap(), 1);
        let general = parse_spec("alphabet: 01\nforbid-family: 1 0^{k} 1 ; k>=1").unwrap();
        assert_eq!(general.presentation_order(), Err(Error::NotSft));
    }

    #[test]
    fn symmetry_orbits() {
        let show = |spec: SubshiftSpec| -> Vec<String> {
            spec.symmetry_orbit()
                .unwrap()
                .iter()
                .map(|s| s.to_string())
                .collect()
        };
        assert_eq!(show(SubshiftSpec::binary(&["11"])), ["SFT(00)", "SFT(11)"]);
        assert_eq!(
            show(SubshiftSpec::binary(&["101"])),
            ["SFT(010)", "SFT(101)"]
        );
        assert_eq!(
            show(SubshiftSpec::binary(&["11", "101"])),
            ["SFT(00,010)", "SFT(11,101)"]
        );
        assert_eq!(show(SubshiftSpec::binary(&["001"])).len(), 4);
        assert_eq!(show(SubshiftSpec::binary(&[])), ["SFT()"]);
        let ternary = parse_spec("alphabet: 012\nforbid: 11").unwrap();
        assert_eq!(ternary.symmetry_orbit(), Err(Error::NotBinary));
    }
}
