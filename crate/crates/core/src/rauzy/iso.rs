//! Unlabeled directed (multi)graph isomorphism.
//!
//! Both graphs are colored jointly by iterated refinement on degrees, loop
//! counts and neighbor color multisets; a bijection must preserve colors, so
//! the backtracking search only pairs vertices of the same class.

use std::collections::BTreeMap;

use super::{AdjacencyMatrix, RauzyGraph};

/// A vertex bijection `g1 → g2` preserving edge multiplicities, if one exists.
/// `result[i]` is the image of vertex `i`.
pub fn is_isomorphic(g1: &RauzyGraph, g2: &RauzyGraph) -> Option<Vec<usize>> {
    find_isomorphism(&g1.adjacency(), &g2.adjacency())
}

pub fn find_isomorphism(a: &AdjacencyMatrix, b: &AdjacencyMatrix) -> Option<Vec<usize>> {
    let n = a.size();
    if n != b.size() || a.edge_count() != b.edge_count() {
        return None;
    }
    let (ca, cb) = refine(a, b)?;

    let mut class_size: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in &ca {
        *class_size.entry(c).or_default() += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size[&ca[v]], ca[v], v));

    let mut search = Search {
        a,
        b,
        ca: &ca,
        cb: &cb,
        order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    search.extend(0).then_some(search.map)
}

type Signature = (u32, Vec<(u32, u32)>, Vec<(u32, u32)>);

fn signature(m: &AdjacencyMatrix, colors: &[u32], v: usize) -> Signature {
    let n = m.size();
    let mut out = Vec::new();
    let mut inc = Vec::new();
    for (w, &color) in colors.iter().enumerate().take(n) {
        if m.get(v, w) > 0 {
            out.push((color, m.get(v, w)));
        }
        if m.get(w, v) > 0 {
            inc.push((color, m.get(w, v)));
        }
    }
    out.sort_unstable();
    inc.sort_unstable();
    (colors[v], out, inc)
}

/// Stable joint coloring; `None` when the color histograms differ.
fn refine(a: &AdjacencyMatrix, b: &AdjacencyMatrix) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = a.size();
    let init = |m: &AdjacencyMatrix| -> Vec<u32> { (0..n).map(|v| m.get(v, v)).collect() };
    let mut ca = init(a);
    let mut cb = init(b);
    let mut classes = 0;
    loop {
        let sa: Vec<Signature> = (0..n).map(|v| signature(a, &ca, v)).collect();
        let sb: Vec<Signature> = (0..n).map(|v| signature(b, &cb, v)).collect();
        let mut ids: BTreeMap<&Signature, (u32, i64)> = BTreeMap::new();
        for s in &sa {
            ids.entry(s).or_default().1 += 1;
        }
        for s in &sb {
            ids.entry(s).or_default().1 -= 1;
        }
        if ids.values().any(|&(_, balance)| balance != 0) {
            return None;
        }
        for (i, slot) in ids.values_mut().enumerate() {
            slot.0 = i as u32;
        }
        let next_a: Vec<u32> = sa.iter().map(|s| ids[s].0).collect();
        let next_b: Vec<u32> = sb.iter().map(|s| ids[s].0).collect();
        let count = ids.len();
        ca = next_a;
        cb = next_b;
        if count == classes {
            return Some((ca, cb));
        }
        classes = count;
    }
}

struct Search<'a> {
    a: &'a AdjacencyMatrix,
    b: &'a AdjacencyMatrix,
    ca: &'a [u32],
    cb: &'a [u32],
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, v: usize, w: usize, depth: usize) -> bool {
        self.order[..depth].iter().all(|&x| {
            let y = self.map[x];
            self.a.get(v, x) == self.b.get(w, y) && self.a.get(x, v) == self.b.get(y, w)
        })
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.b.size() {
            if self.used[w] || self.cb[w] != self.ca[v] || self.a.get(v, v) != self.b.get(w, w) {
                continue;
            }
            if !self.consistent(v, w, depth) {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[w] = false;
            self.map[v] = usize::MAX;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rauzy::build_rauzy;
    use crate::spec::SubshiftSpec;

    fn check(a: &AdjacencyMatrix, b: &AdjacencyMatrix, p: &[usize]) {
        for i in 0..a.size() {
            for j in 0..a.size() {
                assert_eq!(a.get(i, j), b.get(p[i], p[j]));
            }
        }
    }

    #[test]
    fn conjugate_pairs_from_the_gluing_examples() {
        let pairs = [
            (
                SubshiftSpec::binary(&["11", "101", "1001"]),
                4,
                SubshiftSpec::binary(&["000", "010", "101"]),
                3,
            ),
            (
                SubshiftSpec::binary(&["11", "101"]),
                4,
                SubshiftSpec::binary(&["000", "101"]),
                3,
            ),
        ];
        for (x, n, y, m) in pairs {
            let g1 = build_rauzy(&x, n).unwrap();
            let g2 = build_rauzy(&y, m).unwrap();
            let p = is_isomorphic(&g1, &g2).expect("isomorphic");
            check(&g1.adjacency(), &g2.adjacency(), &p);
        }
    }

    #[test]
    fn vertex_counts_must_match() {
        // G_3(SFT(11,101,1001)) has the three vertices 00, 01, 10 while
        // G_2(SFT(000,010,101)) has two.
        let g1 = build_rauzy(&SubshiftSpec::binary(&["11", "101", "1001"]), 3).unwrap();
        let g2 = build_rauzy(&SubshiftSpec::binary(&["000", "010", "101"]), 2).unwrap();
        assert_eq!((g1.vertices().len(), g2.vertices().len()), (3, 2));
        assert!(is_isomorphic(&g1, &g2).is_none());
    }

    #[test]
    fn different_edge_counts() {
        let g1 = build_rauzy(&SubshiftSpec::binary(&["11"]), 2).unwrap();
        let g2 = build_rauzy(&SubshiftSpec::binary(&[]), 2).unwrap();
        assert!(is_isomorphic(&g1, &g2).is_none());
    }

    #[test]
    fn regular_graphs_need_backtracking() {
        // Directed 6-cycle vs two directed 3-cycles: refinement cannot
        // separate them, the search must.
        let cycle = |edges: &[(usize, usize)]| {
            let mut m = AdjacencyMatrix::zeros(6);
            for &(i, j) in edges {
                m.add(i, j, 1);
            }
            m
        };
        let six = cycle(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let two = cycle(&[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(find_isomorphism(&six, &two).is_none());
        let relabeled = cycle(&[(3, 0), (0, 5), (5, 1), (1, 4), (4, 2), (2, 3)]);
        let p = find_isomorphism(&six, &relabeled).unwrap();
        check(&six, &relabeled, &p);
    }
}
