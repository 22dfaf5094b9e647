//! SFTs given by a trimmed set of allowed words of one length.
//!
//! A [`Candidate`] of order `n` is the SFT whose length-`n` language is its
//! edge set; the edges are base-`k` codes, sorted. This is the object both
//! the maximality refutation and the spectrum scan enumerate: the children of
//! a candidate are the order-`n+1` candidates whose length-`n` language is
//! unchanged.

use std::collections::{BTreeSet, HashMap};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::entropy::{entropy_of_matrix, EntropyEnclosure};
use crate::error::Result;
use crate::rauzy::{AdjacencyMatrix, BoolMatrix, RauzyGraph, SftLanguage};
use crate::spec::SubshiftSpec;
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Candidate {
    k: u8,
    order: usize,
    edges: Vec<u64>,
}

impl Candidate {
    /// Trims the given words of length `order` and keeps the rest.
    pub fn from_codes(k: u8, order: usize, codes: impl IntoIterator<Item = u64>) -> Self {
        assert!(order >= 1);
        let mut edges: Vec<u64> = codes.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        let mut c = Candidate { k, order, edges };
        c.trim();
        c
    }

    pub fn from_graph(g: &RauzyGraph) -> Self {
        let k = g.alphabet().len() as u8;
        Self::from_codes(k, g.order(), g.edge_words().iter().map(|w| w.code(k)))
    }

    pub fn alphabet_size(&self) -> u8 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &[u64] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn vertex_modulus(&self) -> u64 {
        (self.k as u64).pow(self.order as u32 - 1)
    }

    fn source(&self, e: u64) -> u64 {
        e / self.k as u64
    }

    fn target(&self, e: u64) -> u64 {
        e % self.vertex_modulus()
    }

    pub fn words(&self) -> Vec<Word> {
        self.edges
            .iter()
            .map(|&e| Word::from_code(e, self.order, self.k))
            .collect()
    }

    fn trim(&mut self) {
        loop {
            let sources: BTreeSet<u64> = self.edges.iter().map(|&e| self.source(e)).collect();
            let targets: BTreeSet<u64> = self.edges.iter().map(|&e| self.target(e)).collect();
            let before = self.edges.len();
            let kept: Vec<u64> = self
                .edges
                .iter()
                .copied()
                .filter(|&e| targets.contains(&self.source(e)) && sources.contains(&self.target(e)))
                .collect();
            self.edges = kept;
            if self.edges.len() == before {
                return;
            }
        }
    }

    /// Sorted vertex codes (words of length `order − 1`).
    pub fn vertices(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.edges.iter().map(|&e| self.source(e)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        let vertices = self.vertices();
        let index: HashMap<u64, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut m = AdjacencyMatrix::zeros(vertices.len());
        for &e in &self.edges {
            m.add(index[&self.source(e)], index[&self.target(e)], 1);
        }
        m
    }

    /// The order-`order` Rauzy graph of the candidate.
    pub fn graph(&self, alphabet: &Alphabet) -> RauzyGraph {
        RauzyGraph::from_edge_words(alphabet.clone(), self.order, self.words())
    }

    pub fn language(&self) -> Result<SftLanguage> {
        SftLanguage::from_codes(self.k, self.order, &self.edges)
    }

    /// Codes of the words of length `order + 1`: pairs of consecutive edges.
    pub fn extension_codes(&self) -> Vec<u64> {
        let k = self.k as u64;
        let mut by_source: HashMap<u64, Vec<u64>> = HashMap::new();
        for &e in &self.edges {
            by_source.entry(self.source(e)).or_default().push(e);
        }
        let mut out = Vec::new();
        for &e in &self.edges {
            if let Some(next) = by_source.get(&self.target(e)) {
                out.extend(next.iter().map(|&f| e * k + f % k));
            }
        }
        out.sort_unstable();
        out
    }

    /// Codes of the language at length `m ≥ order`.
    pub fn language_codes(&self, m: usize) -> Vec<u64> {
        assert!(m >= self.order);
        let mut c = self.clone();
        while c.order < m {
            c = Candidate {
                k: c.k,
                order: c.order + 1,
                edges: c.extension_codes(),
            };
        }
        c.edges
    }

    /// Whether every vertex reaches every vertex by a path of exactly
    /// `order + c − 1` edges.
    pub fn is_block_gluing(&self, c: usize) -> bool {
        if self.is_empty() {
            return false;
        }
        self.adjacency()
            .to_bool()
            .pow(self.order + c - 1)
            .all_ones()
    }

    /// Positive entropy: some strongly connected component is more than a
    /// simple cycle.
    pub fn has_positive_entropy(&self) -> bool {
        let m = self.adjacency();
        let n = m.size();
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, self.edges.len());
        let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
        for i in 0..n {
            for j in 0..n {
                if m.get(i, j) > 0 {
                    g.add_edge(nodes[i], nodes[j], ());
                }
            }
        }
        tarjan_scc(&g).iter().any(|scc| {
            let members: BTreeSet<usize> = scc.iter().map(|v| v.index()).collect();
            members
                .iter()
                .any(|&i| members.iter().map(|&j| m.get(i, j)).sum::<u32>() >= 2)
        })
    }

    pub fn entropy(&self, tol: f64) -> Result<EntropyEnclosure> {
        entropy_of_matrix(&self.adjacency(), tol, self.order)
    }

    /// Order-`order + 1` candidates with the same length-`order` language,
    /// with at most `max_edges` edges. Every current edge becomes a vertex
    /// that keeps at least one outgoing and one incoming edge.
    pub fn children(&self, max_edges: usize) -> Vec<Candidate> {
        let k = self.k as u64;
        let ext = self.extension_codes();
        let vertices = &self.edges;
        if vertices.len() > max_edges {
            return Vec::new();
        }
        let index: HashMap<u64, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let vm = (self.k as u64).pow(self.order as u32);
        let mut out_choices: Vec<Vec<u64>> = vec![Vec::new(); vertices.len()];
        for &x in &ext {
            out_choices[index[&(x / k)]].push(x);
        }
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        let mut in_count = vec![0usize; vertices.len()];
        choose(
            &out_choices,
            0,
            max_edges,
            &mut chosen,
            &mut in_count,
            &index,
            vm,
            &mut |edges: &[u64]| {
                let mut e = edges.to_vec();
                e.sort_unstable();
                out.push(Candidate {
                    k: self.k,
                    order: self.order + 1,
                    edges: e,
                });
            },
        );
        out.sort();
        out
    }

    /// The c-block-gluing members of `children(max_edges)`. Paths only get
    /// rarer when edges are removed, so a partial choice is abandoned as soon
    /// as the graph keeping every undecided edge fails the gluing test.
    pub fn gluing_children(&self, max_edges: usize, c: usize) -> Vec<Candidate> {
        let k = self.k as u64;
        let vertices = &self.edges;
        if vertices.is_empty() || vertices.len() > max_edges {
            return Vec::new();
        }
        let index: HashMap<u64, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let vm = k.pow(self.order as u32);
        let mut choices: Vec<Vec<u64>> = vec![Vec::new(); vertices.len()];
        let mut upper = BoolMatrix::zeros(vertices.len());
        for x in self.extension_codes() {
            let (s, t) = (index[&(x / k)], index[&(x % vm)]);
            choices[s].push(x);
            upper.set(s, t);
        }
        let mut search = GluingSearch {
            choices: &choices,
            index: &index,
            vm,
            length: self.order + c,
            budget: max_edges,
            chosen: Vec::new(),
            found: Vec::new(),
        };
        if upper.pow(search.length).all_ones() {
            search.run(0, &mut upper);
        }
        let mut out: Vec<Candidate> = search
            .found
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                Candidate {
                    k: self.k,
                    order: self.order + 1,
                    edges: e,
                }
            })
            .collect();
        out.sort();
        out
    }

    /// Images under reversal and, for binary alphabets, letter exchange.
    pub fn symmetric_images(&self) -> Vec<Candidate> {
        let n = self.order;
        let k = self.k;
        let rev = |e: u64| Word::from_code(e, n, k).reversed().code(k);
        let mut images = vec![self.clone(), self.mapped(rev)];
        if k == 2 {
            let flip = |e: u64| (1u64 << n) - 1 - e;
            images.push(self.mapped(flip));
            images.push(self.mapped(|e| flip(rev(e))));
        }
        images
    }

    fn mapped(&self, f: impl Fn(u64) -> u64) -> Candidate {
        let mut edges: Vec<u64> = self.edges.iter().map(|&e| f(e)).collect();
        edges.sort_unstable();
        Candidate {
            k: self.k,
            order: self.order,
            edges,
        }
    }

    /// Least symmetric image and the size of the orbit.
    pub fn canonical(&self) -> (Candidate, usize) {
        let mut images = self.symmetric_images();
        images.sort();
        images.dedup();
        let size = images.len();
        (images.swap_remove(0), size)
    }

    /// Presentation by minimal forbidden words: words `w` of length at most
    /// `order` outside the language whose longest proper prefix and suffix
    /// are in it.
    pub fn to_spec(&self, alphabet: &Alphabet) -> SubshiftSpec {
        let mut forbidden = Vec::new();
        if self.is_empty() {
            forbidden.extend(alphabet.all_words(1));
        } else {
            let lang = self.language().expect("candidate tables are small");
            for m in 1..=self.order {
                for w in alphabet.all_words(m) {
                    let s = w.symbols();
                    if !lang.contains(s) && lang.contains(&s[..m - 1]) && lang.contains(&s[1..]) {
                        forbidden.push(w);
                    }
                }
            }
        }
        SubshiftSpec::sft(alphabet.clone(), forbidden).expect("words over the alphabet")
    }
}

struct GluingSearch<'a> {
    choices: &'a [Vec<u64>],
    index: &'a HashMap<u64, usize>,
    vm: u64,
    /// Path length of the gluing test at the child's order.
    length: usize,
    budget: usize,
    chosen: Vec<u64>,
    found: Vec<Vec<u64>>,
}

impl GluingSearch<'_> {
    fn run(&mut self, i: usize, upper: &mut BoolMatrix) {
        if i == self.choices.len() {
            self.found.push(self.chosen.clone());
            return;
        }
        let remaining = self.choices.len() - i;
        let opts = self.choices[i].clone();
        let full: u32 = (1 << opts.len()) - 1;
        for mask in (1..=full).rev() {
            let size = mask.count_ones() as usize;
            if self.chosen.len() + size + (remaining - 1) > self.budget {
                continue;
            }
            let dropped: Vec<usize> = (0..opts.len())
                .filter(|b| mask >> b & 1 == 0)
                .map(|b| self.index[&(opts[b] % self.vm)])
                .collect();
            for &t in &dropped {
                upper.unset(i, t);
            }
            // Keeping every option leaves the bound unchanged.
            if dropped.is_empty() || upper.pow(self.length).all_ones() {
                let before = self.chosen.len();
                self.chosen.extend(
                    (0..opts.len())
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| opts[b]),
                );
                self.run(i + 1, upper);
                self.chosen.truncate(before);
            }
            for &t in &dropped {
                upper.set(i, t);
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn choose(
    choices: &[Vec<u64>],
    i: usize,
    budget: usize,
    chosen: &mut Vec<u64>,
    in_count: &mut [usize],
    index: &HashMap<u64, usize>,
    vm: u64,
    emit: &mut dyn FnMut(&[u64]),
) {
    if i == choices.len() {
        if in_count.iter().all(|&c| c > 0) {
            emit(chosen);
        }
        return;
    }
    // Every remaining vertex needs at least one outgoing edge.
    let remaining = choices.len() - i;
    let opts = &choices[i];
    let subsets: u32 = 1 << opts.len();
    for mask in 1..subsets {
        let size = mask.count_ones() as usize;
        if chosen.len() + size + (remaining - 1) > budget {
            continue;
        }
        for (b, &x) in opts.iter().enumerate() {
            if mask >> b & 1 == 1 {
                chosen.push(x);
                in_count[index[&(x % vm)]] += 1;
            }
        }
        choose(choices, i + 1, budget, chosen, in_count, index, vm, emit);
        for (b, &x) in opts.iter().enumerate().rev() {
            if mask >> b & 1 == 1 {
                chosen.pop();
                in_count[index[&(x % vm)]] -= 1;
            }
        }
    }
}

/// Every nonempty trimmed edge set of order `n` over `k` symbols with at most
/// `max_edges` edges, sorted.
pub fn all_trimmed(k: u8, n: usize, max_edges: usize) -> Vec<Candidate> {
    assert!(n >= 2, "enumeration needs vertices of positive length");
    let vertex_count = (k as u64).pow(n as u32 - 1);
    assert!(
        vertex_count <= 20,
        "vertex subsets are enumerated exhaustively"
    );
    let mut out = Vec::new();
    for set in 1u64..(1 << vertex_count) {
        let vertices: Vec<u64> = (0..vertex_count).filter(|v| set >> v & 1 == 1).collect();
        if vertices.len() > max_edges {
            continue;
        }
        let index: HashMap<u64, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let choices: Vec<Vec<u64>> = vertices
            .iter()
            .map(|&v| {
                (0..k as u64)
                    .map(|a| v * k as u64 + a)
                    .filter(|e| set >> (e % vertex_count) & 1 == 1)
                    .collect()
            })
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        let mut chosen = Vec::new();
        let mut in_count = vec![0usize; vertices.len()];
        choose(
            &choices,
            0,
            max_edges,
            &mut chosen,
            &mut in_count,
            &index,
            vertex_count,
            &mut |edges: &[u64]| {
                let mut e = edges.to_vec();
                e.sort_unstable();
                out.push(Candidate {
                    k,
                    order: n,
                    edges: e,
                });
            },
        );
    }
    out.sort();
    out
}
