//! c-block-gluing.
//!
//! An SFT with Rauzy graph `G_n` at `n ≥ max(2, order)` is c-block-gluing iff
//! every ordered vertex pair is joined by a path of exactly `n + c − 1`
//! edges: the path spells `u·w·v` with `|w| = c`. The brute-force oracle
//! searches fillers directly against the forbidden words and serves as the
//! independent check of the graph test.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::LanguageOracle;
use crate::rauzy::build_rauzy;
use crate::spec::SubshiftSpec;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GluingMethod {
    Graph,
    BruteForce,
    /// Bounded search on a family spec; "yes" means no counterexample was
    /// found in the window.
    BoundedEvidence,
}

/// A pair of words that cannot be glued at `distance`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingFailure {
    pub u: Word,
    pub v: Word,
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingReport {
    pub c: usize,
    pub result: bool,
    pub witness_failure: Option<GluingFailure>,
    pub method: GluingMethod,
    /// Rauzy graph order for the graph method, word length for the others.
    pub order: usize,
    pub empty_subshift: bool,
}

/// Graph test for c-block-gluing of an SFT. The empty subshift is reported
/// as not gluing, with the empty words as witness.
pub fn is_block_gluing_sft(spec: &SubshiftSpec, c: usize) -> Result<GluingReport> {
    let n = spec.presentation_order()?.max(2);
    let g = build_rauzy(spec, n)?;
    if g.is_empty() {
        return Ok(GluingReport {
            c,
            result: false,
            witness_failure: Some(GluingFailure {
                u: Word::empty(),
                v: Word::empty(),
                distance: c,
            }),
            method: GluingMethod::Graph,
            order: n,
            empty_subshift: true,
        });
    }
    let witness = g
        .first_pair_without_path(n + c - 1)
        .map(|(i, j)| GluingFailure {
            u: g.vertices()[i].clone(),
            v: g.vertices()[j].clone(),
            distance: c,
        });
    Ok(GluingReport {
        c,
        result: witness.is_none(),
        witness_failure: witness,
        method: GluingMethod::Graph,
        order: n,
        empty_subshift: false,
    })
}

/// Least `c ≤ c_max` for which the SFT is c-block-gluing.
pub fn min_gluing_constant(spec: &SubshiftSpec, c_max: usize) -> Result<Option<usize>> {
    let n = spec.presentation_order()?.max(2);
    let g = build_rauzy(spec, n)?;
    if g.is_empty() {
        return Ok(None);
    }
    let a = g.adjacency().to_bool();
    let mut power = a.pow(n - 1);
    for c in 0..=c_max {
        if power.all_ones() {
            return Ok(Some(c));
        }
        power = power.mul(&a);
    }
    Ok(None)
}

/// Lexicographically least `w` with `|w| = dist` and `u·w·v` in the
/// language, searched symbol by symbol against the forbidden words.
pub fn gluing_oracle(spec: &SubshiftSpec, u: &Word, v: &Word, dist: usize) -> Result<Option<Word>> {
    let window = u.len() + dist + v.len();
    let oracle = LanguageOracle::new(spec, window);
    for w in [u, v] {
        if !oracle.contains(w.symbols()) {
            return Err(Error::NotInLanguage(spec.alphabet().render(w)));
        }
    }
    Ok(glue_with(&oracle, spec.alphabet().len(), u, v, dist))
}

fn glue_with(oracle: &LanguageOracle, k: usize, u: &Word, v: &Word, dist: usize) -> Option<Word> {
    let inner = oracle.inner();
    let start = inner.advance_from_entry(u.symbols());
    let mut failed: HashSet<(usize, Vec<usize>)> = HashSet::new();
    let mut filler = Vec::with_capacity(dist);
    search(
        inner,
        k,
        v.symbols(),
        dist,
        &start,
        &mut filler,
        &mut failed,
    )
    .then(|| Word::new(filler))
}

fn search(
    oracle: &crate::automaton::ExtensionOracle,
    k: usize,
    v: &[u8],
    remaining: usize,
    states: &[usize],
    filler: &mut Vec<u8>,
    failed: &mut HashSet<(usize, Vec<usize>)>,
) -> bool {
    if states.is_empty() {
        return false;
    }
    if remaining == 0 {
        return oracle.accepts_from(&oracle.advance(states, v));
    }
    let key = (remaining, states.to_vec());
    if failed.contains(&key) {
        return false;
    }
    for a in 0..k as u8 {
        let next = oracle.advance(states, &[a]);
        filler.push(a);
        if search(oracle, k, v, remaining - 1, &next, filler, failed) {
            return true;
        }
        filler.pop();
    }
    failed.insert(key);
    false
}

/// Gluing checked pair by pair with the brute-force oracle: every ordered
/// pair of words of length `word_len` at distance `c`. For SFTs with
/// `word_len ≥ order − 1` this decides c-block-gluing.
pub fn gluing_by_oracle(spec: &SubshiftSpec, c: usize, word_len: usize) -> Result<GluingReport> {
    let k = spec.alphabet().len();
    let oracle = LanguageOracle::new(spec, 2 * word_len + c);
    let words = oracle.words(k, word_len);
    let method = if spec.is_sft() {
        GluingMethod::BruteForce
    } else {
        GluingMethod::BoundedEvidence
    };
    if words.is_empty() {
        return Ok(GluingReport {
            c,
            result: false,
            witness_failure: Some(GluingFailure {
                u: Word::empty(),
                v: Word::empty(),
                distance: c,
            }),
            method,
            order: word_len,
            empty_subshift: true,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..words.len())
        .flat_map(|i| (0..words.len()).map(move |j| (i, j)))
        .collect();
    let failure = pairs
        .par_iter()
        .find_first(|&&(i, j)| glue_with(&oracle, k, &words[i], &words[j], c).is_none())
        .map(|&(i, j)| GluingFailure {
            u: words[i].clone(),
            v: words[j].clone(),
            distance: c,
        });
    Ok(GluingReport {
        c,
        result: failure.is_none(),
        witness_failure: failure,
        method,
        order: word_len,
        empty_subshift: false,
    })
}

/// Bounded evidence for a family spec: all pairs of window words of length
/// `word_len` glue at every distance in `c..=c + extra`.
pub fn gluing_evidence(
    spec: &SubshiftSpec,
    c: usize,
    word_len: usize,
    extra: usize,
) -> Result<GluingReport> {
    let mut last = None;
    for d in c..=c + extra {
        let mut report = gluing_by_oracle(spec, d, word_len)?;
        report.c = c;
        report.method = GluingMethod::BoundedEvidence;
        if !report.result {
            return Ok(report);
        }
        last = Some(report);
    }
    Ok(last.expect("at least one distance"))
}

pub const DEFAULT_EVIDENCE_LENGTH: usize = 8;
pub const DEFAULT_EVIDENCE_EXTRA: usize = 4;

/// c-block-gluing: the graph test for SFTs, bounded evidence otherwise.
pub fn is_block_gluing(spec: &SubshiftSpec, c: usize) -> Result<GluingReport> {
    if spec.is_sft() {
        is_block_gluing_sft(spec, c)
    } else {
        gluing_evidence(spec, c, DEFAULT_EVIDENCE_LENGTH, DEFAULT_EVIDENCE_EXTRA)
    }
}

/// A word `p` whose bi-infinite repetition lies in the SFT: the label of a
/// shortest cycle of the trimmed Rauzy graph, lexicographically least among
/// shortest cycles.
pub fn find_periodic_point(spec: &SubshiftSpec) -> Result<Word> {
    let n = spec.presentation_order()?.max(2);
    let g = build_rauzy(spec, n)?;
    if g.is_empty() {
        return Err(Error::EmptySubshift);
    }
    let k = g.alphabet().len();
    let size = g.vertices().len();
    let mut next = vec![vec![None; k]; size];
    for e in g.edges() {
        next[e.source][e.label as usize] = Some(e.target);
    }
    // Walks are tracked as (start, current) pairs; a label sequence closes a
    // cycle when some pair returns to its start.
    let start: Vec<(usize, usize)> = (0..size).map(|v| (v, v)).collect();
    for len in 1..=size {
        if let Some(p) = least_cycle(&next, k, &start, len, &mut Vec::new()) {
            return Ok(p);
        }
    }
    unreachable!("a nonempty trimmed graph has a cycle of length at most its vertex count")
}

fn least_cycle(
    next: &[Vec<Option<usize>>],
    k: usize,
    pairs: &[(usize, usize)],
    remaining: usize,
    label: &mut Vec<u8>,
) -> Option<Word> {
    if pairs.is_empty() {
        return None;
    }
    if remaining == 0 {
        return pairs
            .iter()
            .any(|&(s, t)| s == t)
            .then(|| Word::new(label.clone()));
    }
    for a in 0..k {
        let mut moved: Vec<(usize, usize)> = pairs
            .iter()
            .filter_map(|&(s, t)| next[t][a].map(|t2| (s, t2)))
            .collect();
        moved.sort_unstable();
        moved.dedup();
        label.push(a as u8);
        if let Some(p) = least_cycle(next, k, &moved, remaining - 1, label) {
            return Some(p);
        }
        label.pop();
    }
    None
}
