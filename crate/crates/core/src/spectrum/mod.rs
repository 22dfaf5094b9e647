//! Search for the minimal positive entropy of c-block-gluing binary
//! subshifts.
//!
//! Starting at order `c+1`, every candidate SFT (a trimmed language of
//! length-`n` words) is filtered by the cap `|L(n)| ≤ D_n`, by the gluing
//! test and by the maximality condition. Maximal candidates bound the next
//! entropy through `C_n`; the others are refined at order `n+1` with their
//! length-`n` language kept. When nothing is left to refine the target's
//! entropy is the minimum and is isolated, with an explicit gap.

mod report;
mod state;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use report::{
    candidates_csv, format_interval, report_table, verdict_report, OrderRow, Report, WitnessRow,
};
pub use state::{load_state, save_state, STATE_VERSION};

use crate::candidate::{all_trimmed, Candidate};
use crate::entropy::{entropy_sft, gluing_lower_bound_down, language_cap, EntropyEnclosure};
use crate::error::{Error, Result};
use crate::gluing::is_block_gluing_sft;
use crate::maximality::{candidate_is_maximal, gluing_floor_spec};
use crate::rauzy::{build_rauzy, iso::find_isomorphism, AdjacencyMatrix};
use crate::spec::SubshiftSpec;
use crate::word::{Alphabet, Word};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
const REFINEMENTS: u32 = 3;
/// Children are listed without the cap when there are at most this many
/// raw choices, so the statistics show what the cap removes.
const UNCAPPED_CHILDREN: f64 = 1e5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub max_seconds: f64,
    pub max_evaluations: u64,
    pub max_order: usize,
}

impl Budget {
    pub fn default_for(c: usize) -> Self {
        Budget {
            max_seconds: 3600.0,
            max_evaluations: 10_000_000,
            max_order: c + 10,
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.max_seconds.is_finite() || self.max_seconds < 0.0 {
            return Err(Error::InvalidBudget);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Running,
    Proved,
    Refuted,
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

impl From<&EntropyEnclosure> for Interval {
    fn from(e: &EntropyEnclosure) -> Self {
        Interval { lo: e.lo, hi: e.hi }
    }
}

/// The subshift whose entropy the scan proves minimal. `below` lists
/// entropies already known to lie under it; candidates matching one of them
/// are neither counterexamples nor gap witnesses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Target {
    pub spec: SubshiftSpec,
    pub entropy: EntropyEnclosure,
    pub below: Vec<Interval>,
    pub overridden: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub order: usize,
    pub language: Vec<Word>,
    pub orbit_size: usize,
    /// Index of the parent in the previous order's survivors.
    pub parent: Option<usize>,
    pub in_s1: bool,
    pub in_s2: bool,
    pub in_s2prime: bool,
    pub entropy: Option<Interval>,
    /// Certified to have the target's entropy (symmetric image of the
    /// target or an isomorphic Rauzy graph).
    pub target_class: bool,
}

impl CandidateRecord {
    fn new(cand: &Candidate, orbit_size: usize, parent: Option<usize>) -> Self {
        CandidateRecord {
            order: cand.order(),
            language: cand.words(),
            orbit_size,
            parent,
            in_s1: false,
            in_s2: false,
            in_s2prime: false,
            entropy: None,
            target_class: false,
        }
    }

    pub fn candidate(&self) -> Candidate {
        Candidate::from_codes(2, self.order, self.language.iter().map(|w| w.code(2)))
    }

    pub fn spec(&self) -> SubshiftSpec {
        self.candidate().to_spec(&Alphabet::binary())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderStats {
    pub order: usize,
    pub d_n: u128,
    /// Length-`n` languages before symmetry reduction, when known.
    pub raw: Option<u128>,
    pub s0: usize,
    /// S_0 was generated keeping only children within the cap that pass the
    /// gluing test, so S_0 = S_1 ⊇ S_2 is all it shows.
    pub s0_filtered: bool,
    pub s1: usize,
    pub s2: usize,
    pub s2prime: usize,
    pub s3: usize,
    pub target_class: usize,
    /// `None` stands for `C_n = +∞` (no maximal candidate counts).
    pub c_n: Option<Interval>,
    pub c_n_witness: Option<SubshiftSpec>,
    /// `log(D_n + 1)/(n + c)`, rounded down.
    pub d_term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub spec: SubshiftSpec,
    pub order: usize,
    pub entropy: Interval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumState {
    pub version: u32,
    pub c: usize,
    pub tolerance: f64,
    pub target: Target,
    pub current_order: usize,
    pub d: BTreeMap<usize, u128>,
    pub c_values: BTreeMap<usize, Option<Interval>>,
    pub stats: Vec<OrderStats>,
    /// S_0 of the current order, not yet processed.
    pub pending: Vec<CandidateRecord>,
    /// Some of `pending` was generated with the cap and the gluing test
    /// already applied.
    pub pending_filtered: bool,
    /// S_3 of the last processed order.
    pub survivors: Vec<CandidateRecord>,
    /// S_1 members of every processed order, with flags and entropies.
    pub history: Vec<CandidateRecord>,
    pub verdict: Verdict,
    pub gap_bound: Option<f64>,
    pub counterexample: Option<Witness>,
    pub second_entropy: Option<Witness>,
    pub budget: Budget,
    pub evaluations: u64,
    pub elapsed_seconds: f64,
}

impl SpectrumState {
    pub fn minimal_entropy(&self) -> Interval {
        Interval::from(&self.target.entropy)
    }
}

fn check_c(c: usize) -> Result<()> {
    if !(1..=4).contains(&c) {
        return Err(Error::InvalidArgument(format!(
            "gluing constant {c} outside the supported range 1..=4"
        )));
    }
    Ok(())
}

/// State at order `c + 1` with target `X_c`.
pub fn init_scan(c: usize, budget: Budget) -> Result<SpectrumState> {
    check_c(c)?;
    init_scan_with_target(c, budget, &gluing_floor_spec(c), &[], false)
}

/// State at order `c + 1` with an arbitrary target. Specs in `below` have
/// entropies known to be smaller than the target's.
pub fn init_scan_with_target(
    c: usize,
    budget: Budget,
    target: &SubshiftSpec,
    below: &[SubshiftSpec],
    overridden: bool,
) -> Result<SpectrumState> {
    check_c(c)?;
    budget.validate()?;
    if !target.alphabet().is_binary() {
        return Err(Error::NotBinary);
    }
    if !is_block_gluing_sft(target, c)?.result {
        return Err(Error::NotBlockGluing { c });
    }
    let tol = DEFAULT_TOLERANCE;
    let entropy = entropy_sft(target, tol)?;
    if entropy.lo <= 0.0 && entropy.hi <= 0.0 {
        return Err(Error::InvalidArgument("target has zero entropy".into()));
    }
    let below = below
        .iter()
        .map(|s| entropy_sft(s, tol).map(|e| Interval::from(&e)))
        .collect::<Result<Vec<_>>>()?;
    let target = Target {
        spec: target.clone(),
        entropy,
        below,
        overridden,
    };

    let n = c + 1;
    let d_n = language_cap(c, n, target.entropy.hi);
    let edge_space = 1usize << n;
    let capped = n > 4;
    let mut raw = all_trimmed(2, n, if capped { d_n as usize } else { edge_space });
    if capped {
        raw.retain(|cand| cand.is_block_gluing(c));
    }
    let pending = canonical_records(raw.iter(), None);

    Ok(SpectrumState {
        version: STATE_VERSION,
        c,
        tolerance: tol,
        target,
        current_order: n,
        d: BTreeMap::new(),
        c_values: BTreeMap::new(),
        stats: Vec::new(),
        pending,
        pending_filtered: capped,
        survivors: Vec::new(),
        history: Vec::new(),
        verdict: Verdict::Running,
        gap_bound: None,
        counterexample: None,
        second_entropy: None,
        budget,
        evaluations: 0,
        elapsed_seconds: 0.0,
    })
}

/// Canonical representatives with orbit sizes, sorted and deduplicated.
fn canonical_records<'a>(
    cands: impl Iterator<Item = &'a Candidate>,
    parent: Option<usize>,
) -> Vec<CandidateRecord> {
    let mut seen: BTreeMap<Candidate, usize> = BTreeMap::new();
    for c in cands {
        let (canon, size) = c.canonical();
        seen.entry(canon).or_insert(size);
    }
    seen.iter()
        .map(|(c, &size)| CandidateRecord::new(c, size, parent))
        .collect()
}

struct TargetClass {
    canonical: Vec<Candidate>,
    graphs: Vec<AdjacencyMatrix>,
}

impl TargetClass {
    fn new(target: &SubshiftSpec, max_order: usize) -> Result<Self> {
        let order = target.presentation_order()?.max(2);
        let mut canonical = Vec::new();
        let mut graphs = Vec::new();
        for m in order..=max_order.max(order) + 1 {
            let cand = Candidate::from_graph(&build_rauzy(target, m)?);
            canonical.push(cand.canonical().0);
            let a = cand.adjacency();
            graphs.push(transpose(&a));
            graphs.push(a);
        }
        Ok(TargetClass { canonical, graphs })
    }

    fn contains(&self, cand: &Candidate) -> bool {
        let canon = cand.canonical().0;
        if self.canonical.contains(&canon) {
            return true;
        }
        let a = cand.adjacency();
        self.graphs
            .iter()
            .filter(|g| g.size() == a.size() && g.edge_count() == a.edge_count())
            .any(|g| find_isomorphism(&a, g).is_some())
    }
}

fn transpose(a: &AdjacencyMatrix) -> AdjacencyMatrix {
    let n = a.size();
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(j, i)).collect())
        .collect();
    AdjacencyMatrix::from_rows(&rows)
}

struct Evaluation {
    in_s1: bool,
    in_s2: bool,
    in_s2prime: bool,
    entropy: Option<Interval>,
    target_class: bool,
}

fn evaluate(
    cand: &Candidate,
    c: usize,
    d_n: u128,
    state: &SpectrumState,
    class: &TargetClass,
) -> Result<Evaluation> {
    let mut ev = Evaluation {
        in_s1: false,
        in_s2: false,
        in_s2prime: false,
        entropy: None,
        target_class: false,
    };
    if cand.is_empty() || cand.len() as u128 > d_n || !cand.has_positive_entropy() {
        return Ok(ev);
    }
    ev.in_s1 = true;
    if !cand.is_block_gluing(c) {
        return Ok(ev);
    }
    ev.in_s2 = true;
    ev.target_class = class.contains(cand);
    let h = Interval::from(&state.target.entropy);
    let mut tol = state.tolerance;
    let mut e = Interval::from(&cand.entropy(tol)?);
    if !ev.target_class {
        for _ in 0..REFINEMENTS {
            if !e.overlaps(&h) {
                break;
            }
            tol /= 2.0;
            match cand.entropy(tol) {
                Ok(finer) => e = Interval::from(&finer),
                Err(Error::ToleranceTooTight { .. }) => break,
                Err(err) => return Err(err),
            }
        }
    }
    ev.entropy = Some(e);
    // Maximality is invariant under the symmetries, the condition is not:
    // an orbit is maximal as soon as one member passes.
    ev.in_s2prime = cand
        .symmetric_images()
        .iter()
        .try_fold(false, |acc, img| -> Result<bool> {
            Ok(acc || candidate_is_maximal(img, c)?)
        })?;
    Ok(ev)
}

fn matches_below(state: &SpectrumState, e: &Interval) -> bool {
    state.target.below.iter().any(|b| b.overlaps(e))
}

/// Processes the current order: S_1, S_2, S_2', S_3, `C_n`, the verdict,
/// and S_0 of the next order.
pub fn step_order(state: &SpectrumState) -> Result<SpectrumState> {
    if state.verdict != Verdict::Running {
        return Ok(state.clone());
    }
    let started = Instant::now();
    let mut next = state.clone();
    let c = state.c;
    let n = state.current_order;
    let remaining = state.budget.max_seconds - state.elapsed_seconds;
    if remaining <= 0.0
        || state.evaluations + state.pending.len() as u64 > state.budget.max_evaluations
    {
        next.verdict = Verdict::Exhausted;
        return Ok(next);
    }
    let h = Interval::from(&state.target.entropy);
    let d_n = language_cap(c, n, h.hi);
    let class = TargetClass::new(&state.target.spec, n)?;

    let aborted = AtomicBool::new(false);
    let evaluations: Vec<Result<Evaluation>> = state
        .pending
        .par_iter()
        .map(|rec| {
            if aborted.load(Ordering::Relaxed) || started.elapsed().as_secs_f64() > remaining {
                aborted.store(true, Ordering::Relaxed);
                return Ok(Evaluation {
                    in_s1: false,
                    in_s2: false,
                    in_s2prime: false,
                    entropy: None,
                    target_class: false,
                });
            }
            evaluate(&rec.candidate(), c, d_n, state, &class)
        })
        .collect();
    if aborted.load(Ordering::Relaxed) {
        next.verdict = Verdict::Exhausted;
        next.elapsed_seconds += started.elapsed().as_secs_f64();
        return Ok(next);
    }

    let mut records = state.pending.clone();
    for (rec, ev) in records.iter_mut().zip(evaluations) {
        let ev = ev?;
        rec.in_s1 = ev.in_s1;
        rec.in_s2 = ev.in_s2;
        rec.in_s2prime = ev.in_s2prime;
        rec.entropy = ev.entropy;
        rec.target_class = ev.target_class;
    }
    next.evaluations += records.len() as u64;

    // A gluing candidate strictly below the target (and not one of the known
    // smaller entropies) refutes minimality.
    let counter = records
        .iter()
        .filter(|r| r.in_s2 && !r.target_class)
        .filter_map(|r| r.entropy.map(|e| (r, e)))
        .filter(|(_, e)| e.hi < h.lo && !matches_below(state, e))
        .min_by(|a, b| a.1.lo.total_cmp(&b.1.lo));

    let counted: Vec<(&CandidateRecord, Interval)> = records
        .iter()
        .filter(|r| r.in_s2prime && !r.target_class)
        .filter_map(|r| r.entropy.map(|e| (r, e)))
        .filter(|(_, e)| !matches_below(state, e))
        .collect();
    let c_min = counted
        .iter()
        .min_by(|a, b| a.1.lo.total_cmp(&b.1.lo).then(a.1.hi.total_cmp(&b.1.hi)));
    let c_n = c_min.map(|(_, e)| *e);

    let s3: Vec<CandidateRecord> = records
        .iter()
        .filter(|r| r.in_s2 && !r.in_s2prime)
        .cloned()
        .collect();
    let stats = OrderStats {
        order: n,
        d_n,
        raw: (n == c + 1).then(|| 1u128 << (1u32 << n)),
        s0: records.len(),
        s0_filtered: state.pending_filtered,
        s1: records.iter().filter(|r| r.in_s1).count(),
        s2: records.iter().filter(|r| r.in_s2).count(),
        s2prime: records.iter().filter(|r| r.in_s2prime).count(),
        s3: s3.len(),
        target_class: records.iter().filter(|r| r.target_class).count(),
        c_n,
        c_n_witness: c_min.map(|(r, _)| r.spec()),
        d_term: gluing_lower_bound_down(d_n + 1, n, c),
    };
    next.d.insert(n, d_n);
    next.c_values.insert(n, c_n);
    next.stats.push(stats);
    next.history
        .extend(records.iter().filter(|r| r.in_s1).cloned());

    if let Some((r, e)) = counter {
        next.verdict = Verdict::Refuted;
        next.counterexample = Some(Witness {
            spec: r.spec(),
            order: n,
            entropy: e,
        });
        next.pending.clear();
        next.elapsed_seconds += started.elapsed().as_secs_f64();
        return Ok(next);
    }

    if s3.is_empty() {
        next.verdict = Verdict::Proved;
        let (gap, witness) = gap_bound(&next);
        next.gap_bound = Some(gap);
        next.second_entropy = witness;
        next.pending.clear();
        next.survivors.clear();
        next.elapsed_seconds += started.elapsed().as_secs_f64();
        return Ok(next);
    }

    if n >= state.budget.max_order {
        next.verdict = Verdict::Exhausted;
        next.survivors = s3;
        next.pending.clear();
        next.elapsed_seconds += started.elapsed().as_secs_f64();
        return Ok(next);
    }

    let d_next = language_cap(c, n + 1, h.hi) as usize;
    let children: Vec<(bool, Vec<Candidate>)> = s3
        .par_iter()
        .map(|r| {
            let cand = r.candidate();
            let capped = raw_children(&cand) > UNCAPPED_CHILDREN;
            if capped {
                (true, cand.gluing_children(d_next, c))
            } else {
                (false, cand.children(usize::MAX))
            }
        })
        .collect();
    next.pending_filtered = children.iter().any(|(capped, _)| *capped);
    let mut pending: BTreeMap<Candidate, (usize, usize)> = BTreeMap::new();
    for (parent, (_, kids)) in children.iter().enumerate() {
        for kid in kids {
            let (canon, size) = kid.canonical();
            pending.entry(canon).or_insert((size, parent));
        }
    }
    next.pending = pending
        .iter()
        .map(|(cand, &(size, parent))| CandidateRecord::new(cand, size, Some(parent)))
        .collect();
    if let Some(last) = next.stats.last_mut() {
        last.s3 = s3.len();
    }
    next.survivors = s3;
    next.current_order = n + 1;
    next.elapsed_seconds += started.elapsed().as_secs_f64();
    Ok(next)
}

/// Upper estimate of the number of children before the in-degree filter.
fn raw_children(cand: &Candidate) -> f64 {
    let ext = cand.extension_codes();
    let mut out_degree: BTreeMap<u64, u32> = BTreeMap::new();
    for x in ext {
        *out_degree.entry(x / 2).or_default() += 1;
    }
    out_degree
        .values()
        .map(|&d| ((1u64 << d) - 1) as f64)
        .product()
}

/// `min{C_i (lower ends), log(D_i + 1)/(i + c)}` over the processed orders,
/// and the `C_i` witness when it attains the minimum.
fn gap_bound(state: &SpectrumState) -> (f64, Option<Witness>) {
    let mut best = f64::INFINITY;
    let mut witness = None;
    for s in &state.stats {
        if s.d_term < best {
            best = s.d_term;
            witness = None;
        }
        if let Some(e) = s.c_n {
            if e.lo < best {
                best = e.lo;
                witness = s.c_n_witness.clone().map(|spec| Witness {
                    spec,
                    order: s.order,
                    entropy: e,
                });
            }
        }
    }
    (best, witness)
}

/// Steps until the verdict is no longer `Running`.
pub fn run(mut state: SpectrumState) -> Result<SpectrumState> {
    while state.verdict == Verdict::Running {
        state = step_order(&state)?;
    }
    Ok(state)
}

/// Reopens an exhausted state with a new budget.
pub fn resume(mut state: SpectrumState, budget: Budget) -> Result<SpectrumState> {
    budget.validate()?;
    state.budget = budget;
    if state.verdict == Verdict::Exhausted {
        state.verdict = Verdict::Running;
        if state.pending.is_empty() && !state.survivors.is_empty() {
            // Stopped by the order cap after S_3 was formed.
            let n = state.current_order;
            let d_next = language_cap(state.c, n + 1, state.target.entropy.hi) as usize;
            let mut pending: BTreeMap<Candidate, (usize, usize)> = BTreeMap::new();
            for (parent, r) in state.survivors.iter().enumerate() {
                for kid in r.candidate().gluing_children(d_next, state.c) {
                    let (canon, size) = kid.canonical();
                    pending.entry(canon).or_insert((size, parent));
                }
            }
            state.pending = pending
                .iter()
                .map(|(c, &(s, p))| CandidateRecord::new(c, s, Some(p)))
                .collect();
            state.pending_filtered = true;
            state.current_order = n + 1;
        }
    }
    Ok(state)
}
