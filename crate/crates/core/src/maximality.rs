//! Maximality of c-block-gluing SFTs.
//!
//! `X` is maximal of order `n` when every c-block-gluing `Y ⊆ X` with
//! `L_Y(n) = L_X(n)` equals `X`. The sufficient condition checked here: for
//! every `v ∈ L(n)` and letter `a` with `va ∈ L(n+1)` there are a prefix `v'`
//! of `v` and `u ∈ L(n)` such that every admissible filler `w` (`|w| = c`,
//! `v'wu ∈ L`) makes `va` a prefix of `v'wu`. Gluing `v'` to `u` inside `Y`
//! then forces `va ∈ L_Y`, and the argument repeats at every length.

use serde::{Deserialize, Serialize};

use crate::candidate::Candidate;
use crate::error::{Error, Result};
use crate::gluing::is_block_gluing_sft;
use crate::language::language;
use crate::rauzy::{build_rauzy, SftLanguage};
use crate::spec::SubshiftSpec;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaximalityStatus {
    Maximal,
    Inconclusive,
    NotMaximal,
}

/// `(v, a)` is forced by gluing `v_prefix` to `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingEntry {
    pub v: Word,
    pub a: u8,
    pub v_prefix: Word,
    pub u: Word,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximalityVerdict {
    pub status: MaximalityStatus,
    pub order: usize,
    pub c: usize,
    /// The forcing table, for `Maximal`.
    pub forcing: Vec<ForcingEntry>,
    /// Extensions `(v, a)` the condition could not force, for `Inconclusive`.
    pub unforced: Vec<(Word, u8)>,
    /// A c-block-gluing `Y ⊊ X` with the same length-`n` language.
    pub counterexample: Option<SubshiftSpec>,
}

/// Runs the forced-prefix condition over `L(n)` and `L(n+1)` of a language.
/// Returns the forcing table, or the unforced pairs.
pub fn forced_prefix_table(
    lang: &SftLanguage,
    k: usize,
    c: usize,
    ln: &[Word],
    ln1: &[Word],
) -> std::result::Result<Vec<ForcingEntry>, Vec<(Word, u8)>> {
    let fillers: Vec<Word> = (0..(k as u64).pow(c as u32))
        .map(|code| Word::from_code(code, c, k as u8))
        .collect();
    let mut table = Vec::new();
    let mut unforced = Vec::new();
    for ext in ln1 {
        let n = ext.len() - 1;
        let v = ext.prefix(n);
        let a = ext.symbols()[n];
        match find_forcing(lang, &fillers, &v, ext, ln) {
            Some((v_prefix, u)) => table.push(ForcingEntry { v, a, v_prefix, u }),
            None => unforced.push((v, a)),
        }
    }
    if unforced.is_empty() {
        Ok(table)
    } else {
        Err(unforced)
    }
}

fn find_forcing(
    lang: &SftLanguage,
    fillers: &[Word],
    v: &Word,
    va: &Word,
    ln: &[Word],
) -> Option<(Word, Word)> {
    let mut buf = Vec::new();
    for plen in (0..=v.len()).rev() {
        let vp = &v.symbols()[..plen];
        for u in ln {
            if plen + fillers.first().map_or(0, Word::len) + u.len() < va.len() {
                continue;
            }
            let mut admissible = false;
            let forced = fillers.iter().all(|w| {
                buf.clear();
                buf.extend_from_slice(vp);
                buf.extend_from_slice(w.symbols());
                buf.extend_from_slice(u.symbols());
                if !lang.contains(&buf) {
                    return true;
                }
                admissible = true;
                buf.starts_with(va.symbols())
            });
            if forced && admissible {
                return Some((Word::new(vp.to_vec()), u.clone()));
            }
        }
    }
    None
}

/// The sufficient condition on an SFT: `Maximal` with its forcing table or
/// `Inconclusive`.
pub fn check_maximal_sufficient(
    spec: &SubshiftSpec,
    c: usize,
    n: usize,
) -> Result<MaximalityVerdict> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    if !is_block_gluing_sft(spec, c)?.result {
        return Err(Error::NotBlockGluing { c });
    }
    let order = spec.presentation_order()?.max(2);
    let lang = build_rauzy(spec, order)?.compile()?;
    let ln = language(spec, n)?.words;
    let ln1 = language(spec, n + 1)?.words;
    Ok(verdict_from(
        forced_prefix_table(&lang, spec.alphabet().len(), c, &ln, &ln1),
        n,
        c,
    ))
}

fn verdict_from(
    r: std::result::Result<Vec<ForcingEntry>, Vec<(Word, u8)>>,
    n: usize,
    c: usize,
) -> MaximalityVerdict {
    match r {
        Ok(forcing) => MaximalityVerdict {
            status: MaximalityStatus::Maximal,
            order: n,
            c,
            forcing,
            unforced: Vec::new(),
            counterexample: None,
        },
        Err(unforced) => MaximalityVerdict {
            status: MaximalityStatus::Inconclusive,
            order: n,
            c,
            forcing: Vec::new(),
            unforced,
            counterexample: None,
        },
    }
}

/// The sufficient condition for a candidate at its own order.
pub fn candidate_is_maximal(cand: &Candidate, c: usize) -> Result<bool> {
    let k = cand.alphabet_size();
    let lang = cand.language()?;
    let n = cand.order();
    let ln: Vec<Word> = cand.words();
    let ln1: Vec<Word> = cand
        .extension_codes()
        .into_iter()
        .map(|x| Word::from_code(x, n + 1, k))
        .collect();
    Ok(forced_prefix_table(&lang, k as usize, c, &ln, &ln1).is_ok())
}

pub const DEFAULT_REFUTE_CAP: usize = 7;

/// Searches SFTs `Y` of order at most `m` with `L_Y(n) = L_X(n)`, `Y`
/// c-block-gluing and `Y ⊊ X`. Orders are visited from `n` upward; a layer's
/// candidates are refinements of the previous layer's candidates that keep
/// their language, and non-gluing candidates are not refined further since
/// every `Y_{G_j(Y)}` of a c-block-gluing `Y` is c-block-gluing.
pub fn refute_maximal_bounded(
    spec: &SubshiftSpec,
    c: usize,
    n: usize,
    m: usize,
) -> Result<Option<SubshiftSpec>> {
    if m < n || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "search order {m} must be at least the order {n} >= 1"
        )));
    }
    let alphabet = spec.alphabet();
    let r = spec.presentation_order()?;
    let x_graph = build_rauzy(spec, r.max(1))?;
    if x_graph.is_empty() {
        return Ok(None);
    }
    let x = Candidate::from_graph(&x_graph);
    let start = Candidate::from_graph(&build_rauzy(spec, n)?);
    let mut layer = vec![start];
    for j in n..=m {
        let big = r.max(j);
        let x_big = x.language_codes(big);
        for cand in &layer {
            let y_big = cand.language_codes(big);
            if y_big.len() < x_big.len() && is_subset(&y_big, &x_big) {
                return Ok(Some(cand.to_spec(alphabet)));
            }
        }
        if j == m {
            break;
        }
        let mut next: Vec<Candidate> = layer
            .iter()
            .flat_map(|cand| cand.children(usize::MAX))
            .filter(|k| k.is_block_gluing(c))
            .collect();
        next.sort();
        next.dedup();
        layer = next;
    }
    Ok(None)
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// The sufficient condition, then a bounded refutation when it does not
/// apply.
pub fn decide_maximal(
    spec: &SubshiftSpec,
    c: usize,
    n: usize,
    refute_order: usize,
) -> Result<MaximalityVerdict> {
    let mut verdict = check_maximal_sufficient(spec, c, n)?;
    if verdict.status == MaximalityStatus::Inconclusive && refute_order >= n {
        if let Some(y) = refute_maximal_bounded(spec, c, n, refute_order)? {
            verdict.status = MaximalityStatus::NotMaximal;
            verdict.counterexample = Some(y);
        }
    }
    Ok(verdict)
}

/// `X_c = SFT(11, 101, …, 10^{c−1}1)`.
pub fn gluing_floor_spec(c: usize) -> SubshiftSpec {
    let words: Vec<String> = (0..c).map(|i| format!("1{}1", "0".repeat(i))).collect();
    let refs: Vec<&str> = words.iter().map(String::as_str).collect();
    SubshiftSpec::binary(&refs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaximalFamily {
    /// `SFT(1^k)`, 1-block-gluing, order `k`.
    OnesRun { k: usize },
    /// `SFT(10^k1)`, 1-block-gluing, order `k + 2`.
    OneZerosOne { k: usize },
    /// `X_c`, c-block-gluing, order `c + 1`.
    GluingFloor { c: usize },
}

impl MaximalFamily {
    pub fn instance(&self) -> (SubshiftSpec, usize, usize) {
        match *self {
            MaximalFamily::OnesRun { k } => (SubshiftSpec::binary(&[&"1".repeat(k)]), 1, k),
            MaximalFamily::OneZerosOne { k } => (
                SubshiftSpec::binary(&[&format!("1{}1", "0".repeat(k))]),
                1,
                k + 2,
            ),
            MaximalFamily::GluingFloor { c } => (gluing_floor_spec(c), c, c + 1),
        }
    }
}

pub fn verify_maximal_family(family: MaximalFamily) -> Result<MaximalityVerdict> {
    let (spec, c, n) = family.instance();
    check_maximal_sufficient(&spec, c, n)
}
