//! Rauzy graphs of subshifts of finite type.
//!
//! The order-`n` graph has the length-`n−1` words as vertices and one edge
//! `u → v` labeled `a` for every length-`n` word `u·a` whose length-`n−1`
//! suffix is `v`. Once trimmed (every vertex has an incoming and an outgoing
//! edge) the vertex set is `L(n−1)`, the edge words are `L(n)`, and for an SFT
//! whose forbidden words have length at most `n` the labels of `m`-edge paths
//! spell exactly `L(n−1+m)`.

mod compiled;
pub mod iso;
mod matrix;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

pub use compiled::SftLanguage;
pub use iso::is_isomorphic;
pub use matrix::{AdjacencyMatrix, BoolMatrix};

use crate::automaton::AvoidanceAutomaton;
use crate::error::{Error, Result};
use crate::spec::SubshiftSpec;
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RauzyGraph {
    alphabet: Alphabet,
    order: usize,
    vertices: Vec<Word>,
    edges: Vec<Edge>,
    index: HashMap<Word, usize>,
}

impl RauzyGraph {
    /// Graph on the given vertex words with one edge per edge word whose
    /// length-`order−1` prefix and suffix are both vertices. Vertices are
    /// sorted lexicographically; other edge words are ignored.
    pub fn from_words(
        alphabet: Alphabet,
        order: usize,
        vertices: impl IntoIterator<Item = Word>,
        edge_words: impl IntoIterator<Item = Word>,
    ) -> Self {
        assert!(order >= 1, "Rauzy graph order must be at least 1");
        let vertices: Vec<Word> = vertices
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<Word, usize> = vertices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut edges: Vec<Edge> = edge_words
            .into_iter()
            .filter(|e| e.len() == order)
            .filter_map(|e| {
                let source = *index.get(&e.prefix(order - 1))?;
                let target = *index.get(&e.suffix(order - 1))?;
                Some(Edge {
                    source,
                    target,
                    label: e.symbols()[order - 1],
                })
            })
            .collect();
        edges.sort_by_key(|e| (e.source, e.label, e.target));
        edges.dedup();
        RauzyGraph {
            alphabet,
            order,
            vertices,
            edges,
            index,
        }
    }

    /// Graph whose vertices are the length-`order−1` factors of the edge words.
    pub fn from_edge_words(
        alphabet: Alphabet,
        order: usize,
        edge_words: impl IntoIterator<Item = Word>,
    ) -> Self {
        let edges: Vec<Word> = edge_words.into_iter().collect();
        let vertices: BTreeSet<Word> = edges
            .iter()
            .flat_map(|e| [e.prefix(order - 1), e.suffix(order - 1)])
            .collect();
        Self::from_words(alphabet, order, vertices, edges)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_word(&self, e: &Edge) -> Word {
        let mut w = self.vertices[e.source].clone();
        w.push(e.label);
        w
    }

    /// Edge words in lexicographic order.
    pub fn edge_words(&self) -> Vec<Word> {
        let mut out: Vec<Word> = self.edges.iter().map(|e| self.edge_word(e)).collect();
        out.sort();
        out
    }

    /// Maximal subgraph in which every vertex has an incoming and an
    /// outgoing edge.
    pub fn trim(&self) -> RauzyGraph {
        let n = self.vertices.len();
        let mut alive = vec![true; n];
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for e in &self.edges {
            outdeg[e.source] += 1;
            indeg[e.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n)
            .filter(|&v| indeg[v] == 0 || outdeg[v] == 0)
            .collect();
        for &v in &stack {
            alive[v] = false;
        }
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut in_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            out_edges[e.source].push(e.target);
            in_edges[e.target].push(e.source);
        }
        while let Some(v) = stack.pop() {
            for &t in &out_edges[v] {
                indeg[t] -= 1;
                if alive[t] && indeg[t] == 0 {
                    alive[t] = false;
                    stack.push(t);
                }
            }
            for &s in &in_edges[v] {
                outdeg[s] -= 1;
                if alive[s] && outdeg[s] == 0 {
                    alive[s] = false;
                    stack.push(s);
                }
            }
        }
        let vertices: Vec<Word> = (0..n)
            .filter(|&v| alive[v])
            .map(|v| self.vertices[v].clone())
            .collect();
        let edges: Vec<Word> = self
            .edges
            .iter()
            .filter(|e| alive[e.source] && alive[e.target])
            .map(|e| self.edge_word(e))
            .collect();
        RauzyGraph::from_words(self.alphabet.clone(), self.order, vertices, edges)
    }

    pub fn is_trimmed(&self) -> bool {
        let mut has_in = vec![false; self.vertices.len()];
        let mut has_out = vec![false; self.vertices.len()];
        for e in &self.edges {
            has_out[e.source] = true;
            has_in[e.target] = true;
        }
        has_in.iter().zip(&has_out).all(|(a, b)| *a && *b)
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        let mut m = AdjacencyMatrix::zeros(self.vertices.len());
        for e in &self.edges {
            m.add(e.source, e.target, 1);
        }
        m
    }

    /// First vertex pair (in vertex order) with no path of exactly `k` edges.
    pub fn first_pair_without_path(&self, k: usize) -> Option<(usize, usize)> {
        self.adjacency().to_bool().pow(k).first_zero()
    }

    /// Whether every ordered vertex pair is joined by a path of exactly `k`
    /// edges.
    pub fn all_pairs_path_of_length(&self, k: usize) -> bool {
        self.first_pair_without_path(k).is_none()
    }

    fn out_lists(&self) -> Vec<Vec<(u8, usize)>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            out[e.source].push((e.label, e.target));
        }
        for list in &mut out {
            list.sort_unstable();
        }
        out
    }

    /// Words spelled by the graph: prefixes of vertices for `m < order − 1`,
    /// vertex word plus path labels otherwise. On a trimmed graph of an SFT
    /// with forbidden words no longer than the order, this is `L(m)`.
    pub fn words(&self, m: usize) -> Vec<Word> {
        let base = self.order - 1;
        if m <= base {
            let mut out: Vec<Word> = self.vertices.iter().map(|v| v.prefix(m)).collect();
            out.dedup();
            return out;
        }
        let out_lists = self.out_lists();
        let mut out = Vec::new();
        for (v, w) in self.vertices.iter().enumerate() {
            let mut word = w.clone();
            spell(&out_lists, v, m - base, &mut word, &mut out);
        }
        out.sort();
        out
    }

    /// The number of words spelled by `m`-edge paths, saturating.
    pub fn path_count(&self, m: usize) -> u128 {
        self.adjacency()
            .walk_counts(m)
            .iter()
            .fold(0u128, |a, &b| a.saturating_add(b))
    }

    /// SFT of order `self.order()` forbidding every length-`order` word that
    /// is not an edge word.
    pub fn subshift_spec(&self) -> SubshiftSpec {
        let allowed: BTreeSet<Word> = self.edge_words().into_iter().collect();
        let forbidden = self
            .alphabet
            .all_words(self.order)
            .filter(|w| !allowed.contains(w));
        SubshiftSpec::sft(self.alphabet.clone(), forbidden).expect("words over the graph alphabet")
    }

    pub fn compile(&self) -> Result<SftLanguage> {
        SftLanguage::from_graph(self)
    }

    /// Graphviz rendering: vertices labeled by their words, edges by their
    /// symbol, in vertex order.
    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph rauzy_{} {{\n", self.order);
        for (i, v) in self.vertices.iter().enumerate() {
            let label = if v.is_empty() {
                "ε".to_string()
            } else {
                self.alphabet.render(v)
            };
            let _ = writeln!(out, "  v{i} [label=\"{label}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\"];",
                e.source,
                e.target,
                self.alphabet.symbol(e.label)
            );
        }
        out.push_str("}\n");
        out
    }
}

fn spell(
    out_lists: &[Vec<(u8, usize)>],
    v: usize,
    steps: usize,
    word: &mut Word,
    acc: &mut Vec<Word>,
) {
    if steps == 0 {
        acc.push(word.clone());
        return;
    }
    for &(label, target) in &out_lists[v] {
        word.push(label);
        spell(out_lists, target, steps - 1, word, acc);
        word.pop();
    }
}

/// Words of length `len` avoiding the automaton's patterns, with their end
/// states, in lexicographic order.
fn avoiding_words(aut: &AvoidanceAutomaton, k: usize, len: usize) -> Vec<(Word, usize)> {
    let mut out = Vec::new();
    let mut stack = vec![(Word::empty(), aut.start())];
    while let Some((w, q)) = stack.pop() {
        if w.len() == len {
            out.push((w, q));
            continue;
        }
        for a in (0..k as u8).rev() {
            if let Some(t) = aut.step(q, a) {
                let mut next = w.clone();
                next.push(a);
                stack.push((next, t));
            }
        }
    }
    out
}

/// The trimmed Rauzy graph of order `n` of an SFT.
///
/// When `n` is at least the presentation order the graph is built from the
/// words avoiding the forbidden set and then trimmed. Below the presentation
/// order it is built from the exact languages `L(n−1)` and `L(n)`, so it is
/// the graph `G_n(X)` whose subshift contains `X`.
pub fn build_rauzy(spec: &SubshiftSpec, n: usize) -> Result<RauzyGraph> {
    let order = spec.presentation_order()?;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "Rauzy graph order must be at least 1".into(),
        ));
    }
    let alphabet = spec.alphabet().clone();
    let k = alphabet.len();
    if n < order {
        let full = build_rauzy(spec, order)?;
        return Ok(RauzyGraph::from_edge_words(alphabet, n, full.words(n)).trim());
    }
    let size = (k as u128).pow((n - 1) as u32);
    if size > 1 << 26 {
        return Err(Error::TooLarge { size });
    }
    let aut = AvoidanceAutomaton::new(k, spec.forbidden().explicit());
    let vertices = avoiding_words(&aut, k, n - 1);
    let mut edges = Vec::new();
    for (v, q) in &vertices {
        for a in 0..k as u8 {
            if aut.step(*q, a).is_some() {
                let mut e = v.clone();
                e.push(a);
                edges.push(e);
            }
        }
    }
    let g = RauzyGraph::from_words(alphabet, n, vertices.into_iter().map(|(w, _)| w), edges);
    Ok(g.trim())
}

pub fn trim(g: &RauzyGraph) -> RauzyGraph {
    g.trim()
}

pub fn graph_subshift_spec(g: &RauzyGraph) -> SubshiftSpec {
    g.subshift_spec()
}

pub fn all_pairs_path_of_length(g: &RauzyGraph, k: usize) -> bool {
    g.all_pairs_path_of_length(k)
}

pub fn adjacency(g: &RauzyGraph) -> AdjacencyMatrix {
    g.adjacency()
}
