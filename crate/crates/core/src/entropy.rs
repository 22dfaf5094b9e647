//! Topological entropy of SFTs.
//!
//! The entropy is the log of the Perron root of the Rauzy graph adjacency
//! matrix. The root is enclosed component by component: power iteration from
//! the all-ones vector gives Collatz–Wielandt bounds
//! `min (Av)_i/v_i ≤ ρ ≤ max (Av)_i/v_i`, which hold for every positive `v`.
//! Only the final ratios are computed in floating point, and every bound is
//! widened outward by a relative `2^-40` per floating-point operation that
//! produced it (see [`ROUNDING_POLICY`]).

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::{language_count, LanguageOracle};
use crate::rauzy::{build_rauzy, AdjacencyMatrix, RauzyGraph};
use crate::spec::SubshiftSpec;

pub const ROUNDING_POLICY: &str = "outward widening by 2^-40 relative per floating-point operation";

const ULP: f64 = 1.0 / (1u64 << 40) as f64;
pub const MAX_ITERATIONS: u64 = 1_000_000;

/// Moves `x` down by `ops` widening steps.
pub fn widen_down(x: f64, ops: u32) -> f64 {
    let d = x.abs() * ULP * ops as f64;
    let y = x - d;
    if x >= 0.0 && y < 0.0 {
        0.0
    } else {
        y
    }
}

/// Moves `x` up by `ops` widening steps.
pub fn widen_up(x: f64, ops: u32) -> f64 {
    x + x.abs() * ULP * ops as f64
}

/// Enclosure of a spectral radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusEnclosure {
    pub lo: f64,
    pub hi: f64,
    pub iterations: u64,
    /// The radius is an integer certified without iteration.
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyMethod {
    Spectral,
    Profile,
}

/// Interval `[lo, hi]` containing `h(X)`, natural log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyEnclosure {
    pub lo: f64,
    pub hi: f64,
    pub method: EntropyMethod,
    pub iterations: u64,
    pub graph_order: usize,
    pub exact: bool,
    pub rounding: String,
}

impl EntropyEnclosure {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn overlaps(&self, other: &EntropyEnclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Strictly below `other`, by endpoints.
    pub fn below(&self, other: &EntropyEnclosure) -> bool {
        self.hi < other.lo
    }
}

struct Component {
    vertices: Vec<usize>,
}

fn components(m: &AdjacencyMatrix) -> Vec<Component> {
    let n = m.size();
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for i in 0..n {
        for j in 0..n {
            if m.get(i, j) > 0 {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|scc| {
            let mut vertices: Vec<usize> = scc.into_iter().map(|v| v.index()).collect();
            vertices.sort_unstable();
            Component { vertices }
        })
        .collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cyclic period of a strongly connected matrix: the gcd of its cycle
/// lengths, from BFS levels.
fn period(m: &AdjacencyMatrix) -> usize {
    let n = m.size();
    let mut level = vec![usize::MAX; n];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for w in 0..n {
            if m.get(v, w) > 0 && level[w] == usize::MAX {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut p = 0;
    for v in 0..n {
        for w in 0..n {
            if m.get(v, w) > 0 {
                p = gcd(p, (level[v] + 1).abs_diff(level[w]));
            }
        }
    }
    p.max(1)
}

/// Sparse rows: (column, entry).
fn sparse(m: &AdjacencyMatrix) -> Vec<Vec<(usize, f64)>> {
    (0..m.size())
        .map(|i| {
            (0..m.size())
                .filter(|&j| m.get(i, j) > 0)
                .map(|j| (j, m.get(i, j) as f64))
                .collect()
        })
        .collect()
}

/// Collatz–Wielandt enclosure of the radius of a strongly connected matrix
/// with at least one cycle that is not a simple cycle.
fn irreducible_radius(m: &AdjacencyMatrix, tol: f64) -> Result<RadiusEnclosure> {
    let n = m.size();
    let p = period(m);
    let rows = sparse(m);
    let width = rows.iter().map(Vec::len).max().unwrap_or(1) as u32;
    // Each ratio (A^p v)_i / v_i comes out of p sparse products plus one
    // division; the p-th root adds one more step.
    let ops = p as u32 * (width + 1) + 2;

    let apply = |v: &[f64]| -> Vec<f64> {
        let mut cur = v.to_vec();
        for _ in 0..p {
            cur = rows
                .iter()
                .map(|r| r.iter().map(|&(j, a)| a * cur[j]).sum())
                .collect();
        }
        cur
    };

    let mut v = vec![1.0f64; n];
    let mut last_gap = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        let w = apply(&v);
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for i in 0..n {
            let r = w[i] / v[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let root = 1.0 / p as f64;
        let lo_r = widen_down(widen_down(lo, ops).powf(root), 2);
        let hi_r = widen_up(widen_up(hi, ops).powf(root), 2);
        last_gap = hi_r - lo_r;
        if last_gap <= tol {
            return Ok(RadiusEnclosure {
                lo: lo_r,
                hi: hi_r,
                iterations: it,
                exact: false,
            });
        }
        let scale = w.iter().cloned().fold(0.0, f64::max);
        v = w.into_iter().map(|x| x / scale).collect();
        if v.iter().any(|&x| x <= 0.0 || !x.is_finite()) {
            break;
        }
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
        gap: last_gap,
    })
}

/// Smallest tolerance the widening policy can honor for a radius near `rho`
/// on rows with at most `width` entries.
pub fn tolerance_floor(rho: f64, width: usize) -> f64 {
    4.0 * (width as f64 + 3.0) * ULP * rho.max(1.0)
}

/// Enclosure `[lo, hi]` of the spectral radius with `hi − lo ≤ tol`.
pub fn spectral_radius_enclosure(m: &AdjacencyMatrix, tol: f64) -> Result<RadiusEnclosure> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    // ρ(A) is the largest component radius, so [max lo, max hi] encloses it.
    let mut lo = 0.0f64;
    let mut hi = 0.0f64;
    let mut iterations = 0;
    let mut all_exact = true;
    for comp in components(m) {
        let sub = m.submatrix(&comp.vertices);
        let size = sub.size();
        let enc = if size == 1 {
            let d = sub.get(0, 0) as f64;
            RadiusEnclosure {
                lo: d,
                hi: d,
                iterations: 0,
                exact: true,
            }
        } else if (0..size).all(|i| (0..size).map(|j| sub.get(i, j)).sum::<u32>() == 1) {
            // A simple cycle: every vertex has exactly one outgoing edge.
            RadiusEnclosure {
                lo: 1.0,
                hi: 1.0,
                iterations: 0,
                exact: true,
            }
        } else {
            let width = (0..size)
                .map(|i| (0..size).filter(|&j| sub.get(i, j) > 0).count())
                .max()
                .unwrap_or(1);
            let row_sum = (0..size)
                .map(|i| (0..size).map(|j| sub.get(i, j)).sum::<u32>())
                .max()
                .unwrap_or(1);
            let floor = tolerance_floor(row_sum as f64, width);
            if tol < floor {
                return Err(Error::ToleranceTooTight { tol, floor });
            }
            irreducible_radius(&sub, tol)?
        };
        iterations += enc.iterations;
        all_exact &= enc.exact;
        lo = lo.max(enc.lo);
        hi = hi.max(enc.hi);
    }
    Ok(RadiusEnclosure {
        lo,
        hi,
        iterations,
        exact: all_exact || lo == hi,
    })
}

fn log_enclosure(r: &RadiusEnclosure, tol: f64) -> Result<(f64, f64, bool)> {
    if r.hi < 1.0 {
        return Err(Error::EmptySubshift);
    }
    if r.exact {
        if r.lo == 1.0 {
            return Ok((0.0, 0.0, true));
        }
        let v = r.lo.ln();
        return Ok((widen_down(v, 1), widen_up(v, 1), false));
    }
    let lo = widen_down(r.lo.max(1.0).ln(), 2);
    let hi = widen_up(r.hi.ln(), 2);
    if hi - lo > tol {
        return Err(Error::ToleranceTooTight {
            tol,
            floor: hi - lo,
        });
    }
    Ok((lo, hi, false))
}

/// Entropy of the SFT presented by a trimmed Rauzy graph.
pub fn entropy_of_graph(g: &RauzyGraph, tol: f64) -> Result<EntropyEnclosure> {
    if g.is_empty() {
        return Err(Error::EmptySubshift);
    }
    entropy_of_matrix(&g.adjacency(), tol, g.order())
}

/// Entropy from an adjacency matrix whose graph presents the subshift.
pub fn entropy_of_matrix(
    m: &AdjacencyMatrix,
    tol: f64,
    graph_order: usize,
) -> Result<EntropyEnclosure> {
    // ρ ≥ 1 for a nonempty graph, so a radius gap of tol/2 keeps the log gap
    // below tol once the final widening is added.
    let r = spectral_radius_enclosure(m, tol / 2.0)?;
    let (lo, hi, exact) = log_enclosure(&r, tol)?;
    Ok(EntropyEnclosure {
        lo,
        hi,
        method: EntropyMethod::Spectral,
        iterations: r.iterations,
        graph_order,
        exact,
        rounding: ROUNDING_POLICY.into(),
    })
}

/// `h(X)` for an SFT, from its Rauzy graph at the presentation order.
pub fn entropy_sft(spec: &SubshiftSpec, tol: f64) -> Result<EntropyEnclosure> {
    let order = spec.presentation_order()?;
    entropy_sft_at(spec, tol, order.max(2))
}

/// `h(X)` from the Rauzy graph of order `n ≥` the presentation order.
pub fn entropy_sft_at(spec: &SubshiftSpec, tol: f64, n: usize) -> Result<EntropyEnclosure> {
    let order = spec.presentation_order()?;
    if n < order {
        return Err(Error::InvalidArgument(format!(
            "graph order {n} is below the presentation order {order}"
        )));
    }
    entropy_of_graph(&build_rauzy(spec, n)?, tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub n: usize,
    pub count: u128,
    /// `log|L(n)| / n`.
    pub value: f64,
}

/// `log|L(n)|/n` for `n = 1..=max_n`. Family specs use window languages.
pub fn entropy_profile(spec: &SubshiftSpec, max_n: usize) -> Result<Vec<ProfilePoint>> {
    let k = spec.alphabet().len();
    (1..=max_n)
        .map(|n| {
            let count = if spec.is_sft() {
                language_count(spec, n)?
            } else {
                LanguageOracle::new(spec, n).words(k, n).len() as u128
            };
            if count == 0 {
                return Err(Error::EmptySubshift);
            }
            Ok(ProfilePoint {
                n,
                count,
                value: (count as f64).ln() / n as f64,
            })
        })
        .collect()
}

/// `log(count) / (c + k)`, the entropy lower bound of a c-block-gluing
/// subshift with `count` words of length `k`.
pub fn gluing_lower_bound(count: u128, k: usize, c: usize) -> f64 {
    assert!(count >= 1 && k >= 1, "count and length must be positive");
    (count as f64).ln() / (c + k) as f64
}

/// [`gluing_lower_bound`] rounded down under the widening policy.
pub fn gluing_lower_bound_down(count: u128, k: usize, c: usize) -> f64 {
    widen_down(gluing_lower_bound(count, k, c), 3)
}

/// `⌊exp((c + n)·h_hi)⌋`, rounded up before the floor so the cap never
/// excludes a language it should keep.
pub fn language_cap(c: usize, n: usize, h_hi: f64) -> u128 {
    assert!(h_hi >= 0.0, "reference entropy must be non-negative");
    if h_hi == 0.0 {
        return 1;
    }
    let x = widen_up(((c + n) as f64 * h_hi).exp(), 4);
    x.floor() as u128
}
