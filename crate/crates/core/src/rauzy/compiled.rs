use crate::error::{Error, Result};
use crate::word::{code_of, Word};

use super::{AdjacencyMatrix, RauzyGraph};

const MAX_TABLE: u128 = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq)]
struct CodeSet {
    bits: Vec<u64>,
}

impl CodeSet {
    fn new(size: u64) -> Self {
        CodeSet {
            bits: vec![0; (size as usize).div_ceil(64).max(1)],
        }
    }

    #[inline]
    fn insert(&mut self, code: u64) {
        self.bits[(code / 64) as usize] |= 1 << (code % 64);
    }

    #[inline]
    fn contains(&self, code: u64) -> bool {
        self.bits[(code / 64) as usize] >> (code % 64) & 1 == 1
    }
}

/// Membership table for the language of an SFT given by its trimmed order-`n`
/// Rauzy graph: words of length `n` are edge codes, shorter words are their
/// factors, and a longer word belongs to the language iff all of its
/// length-`n` windows do.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SftLanguage {
    k: u8,
    order: usize,
    modulus: u64,
    edges: Vec<u64>,
    by_length: Vec<CodeSet>,
}

impl SftLanguage {
    /// `edge_codes` are base-`k` codes of the length-`order` words of a
    /// trimmed edge set; the caller guarantees every edge word is
    /// biextendable within the set.
    pub fn from_codes(k: u8, order: usize, edge_codes: &[u64]) -> Result<Self> {
        let size = (k as u128).pow(order as u32);
        if size > MAX_TABLE {
            return Err(Error::TooLarge { size });
        }
        let mut edges = edge_codes.to_vec();
        edges.sort_unstable();
        edges.dedup();
        let mut by_length: Vec<CodeSet> = (0..=order)
            .map(|m| CodeSet::new((k as u64).pow(m as u32)))
            .collect();
        for &e in &edges {
            // Every factor of an edge word is a prefix of a suffix of it.
            let word = Word::from_code(e, order, k);
            let s = word.symbols();
            for start in 0..order {
                let mut code = 0u64;
                for (len, &a) in s[start..].iter().enumerate() {
                    code = code * k as u64 + a as u64;
                    by_length[len + 1].insert(code);
                }
            }
        }
        if !edges.is_empty() {
            by_length[0].insert(0);
        }
        Ok(SftLanguage {
            k,
            order,
            modulus: size as u64,
            edges,
            by_length,
        })
    }

    pub fn from_graph(g: &RauzyGraph) -> Result<Self> {
        let k = g.alphabet().len() as u8;
        let codes: Vec<u64> = g.edge_words().iter().map(|w| w.code(k)).collect();
        Self::from_codes(k, g.order(), &codes)
    }

    pub fn alphabet_size(&self) -> u8 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Sorted codes of the length-`order` words.
    pub fn edge_codes(&self) -> &[u64] {
        &self.edges
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        if w.len() <= self.order {
            return self.by_length[w.len()].contains(code_of(w, self.k));
        }
        let table = &self.by_length[self.order];
        let mut code = code_of(&w[..self.order], self.k);
        if !table.contains(code) {
            return false;
        }
        for &a in &w[self.order..] {
            code = (code * self.k as u64 + a as u64) % self.modulus;
            if !table.contains(code) {
                return false;
            }
        }
        true
    }

    /// Sorted words of length `m` (at most `order`).
    pub fn short_words(&self, m: usize) -> Vec<Word> {
        assert!(m <= self.order);
        let total = (self.k as u64).pow(m as u32);
        (0..total)
            .filter(|&c| self.by_length[m].contains(c))
            .map(|c| Word::from_code(c, m, self.k))
            .collect()
    }

    /// Number of words of length `m` (at most `order`).
    pub fn count(&self, m: usize) -> usize {
        assert!(m <= self.order);
        self.by_length[m]
            .bits
            .iter()
            .map(|b| b.count_ones() as usize)
            .sum()
    }

    /// Adjacency of the order-`order` Rauzy graph, vertices in code order.
    pub fn adjacency(&self) -> (Vec<u64>, AdjacencyMatrix) {
        let k = self.k as u64;
        let mut vertices: Vec<u64> = self
            .edges
            .iter()
            .flat_map(|&e| [e / k, e % (self.modulus / k)])
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut m = AdjacencyMatrix::zeros(vertices.len());
        for &e in &self.edges {
            let s = vertices
                .binary_search(&(e / k))
                .expect("edge source is a vertex");
            let t = vertices
                .binary_search(&(e % (self.modulus / k)))
                .expect("edge target is a vertex");
            m.add(s, t, 1);
        }
        (vertices, m)
    }
}
