use serde::Serialize;

use super::{Interval, SpectrumState, Verdict, Witness};
use crate::numfmt::{format_dir, format_enclosure, Direction};
use crate::word::Alphabet;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderRow {
    pub order: usize,
    pub d_n: u128,
    pub raw: Option<u128>,
    pub s0: usize,
    pub s1: usize,
    pub s2: usize,
    pub s2prime: usize,
    pub s3: usize,
    pub target_class: usize,
    /// `None` is `+∞`.
    pub c_n: Option<Interval>,
    pub c_n_witness: Option<String>,
    pub d_term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessRow {
    pub spec: String,
    pub order: usize,
    pub entropy: Interval,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub c: usize,
    pub verdict: Verdict,
    pub target: String,
    pub target_overridden: bool,
    pub minimal_entropy: Interval,
    pub gap_bound: Option<f64>,
    pub second_entropy: Option<WitnessRow>,
    pub counterexample: Option<WitnessRow>,
    pub current_order: usize,
    pub pending: usize,
    pub survivors: usize,
    pub evaluations: u64,
    /// Where the resumable state was written, when it was.
    pub state_path: Option<String>,
    pub orders: Vec<OrderRow>,
}

fn witness_row(w: &Option<Witness>) -> Option<WitnessRow> {
    w.as_ref().map(|w| WitnessRow {
        spec: w.spec.to_text(),
        order: w.order,
        entropy: w.entropy,
    })
}

pub fn verdict_report(state: &SpectrumState) -> Report {
    Report {
        c: state.c,
        verdict: state.verdict,
        target: state.target.spec.to_text(),
        target_overridden: state.target.overridden,
        minimal_entropy: state.minimal_entropy(),
        gap_bound: state.gap_bound,
        second_entropy: witness_row(&state.second_entropy),
        counterexample: witness_row(&state.counterexample),
        current_order: state.current_order,
        pending: state.pending.len(),
        survivors: state.survivors.len(),
        evaluations: state.evaluations,
        state_path: None,
        orders: state
            .stats
            .iter()
            .map(|s| OrderRow {
                order: s.order,
                d_n: s.d_n,
                raw: s.raw,
                s0: s.s0,
                s1: s.s1,
                s2: s.s2,
                s2prime: s.s2prime,
                s3: s.s3,
                target_class: s.target_class,
                c_n: s.c_n,
                c_n_witness: s.c_n_witness.as_ref().map(|w| w.to_text()),
                d_term: s.d_term,
            })
            .collect(),
    }
}

pub fn format_interval(i: &Interval) -> String {
    format_enclosure(i.lo, i.hi)
}

pub fn report_table(r: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("c                {}\n", r.c));
    out.push_str(&format!("verdict          {:?}\n", r.verdict).to_lowercase());
    out.push_str(&format!("target           {}\n", r.target));
    out.push_str(&format!(
        "minimal entropy  {}\n",
        format_interval(&r.minimal_entropy)
    ));
    if let Some(g) = r.gap_bound {
        out.push_str(&format!(
            "gap bound        {}\n",
            format_dir(g, Direction::Down)
        ));
    }
    if let Some(w) = &r.second_entropy {
        out.push_str(&format!(
            "second entropy   {} at order {} {}\n",
            w.spec,
            w.order,
            format_interval(&w.entropy)
        ));
    }
    if let Some(w) = &r.counterexample {
        out.push_str(&format!(
            "counterexample   {} at order {} {}\n",
            w.spec,
            w.order,
            format_interval(&w.entropy)
        ));
    }
    out.push_str(&format!("evaluations      {}\n", r.evaluations));
    if let Some(p) = &r.state_path {
        out.push_str(&format!("state            {p}\n"));
    }
    out.push_str("order  D_n  S0  S1  S2  S2'  S3  class  C_n  log(D_n+1)/(n+c)\n");
    for o in &r.orders {
        let c_n = o
            .c_n
            .map(|c| format_interval(&c))
            .unwrap_or_else(|| "+inf".into());
        out.push_str(&format!(
            "{}  {}  {}  {}  {}  {}  {}  {}  {}  {}\n",
            o.order,
            o.d_n,
            o.s0,
            o.s1,
            o.s2,
            o.s2prime,
            o.s3,
            o.target_class,
            c_n,
            format_dir(o.d_term, Direction::Down)
        ));
    }
    out
}

/// One line per S_1 member of every processed order.
pub fn candidates_csv(state: &SpectrumState) -> String {
    let alphabet = Alphabet::binary();
    let mut out =
        String::from("order,language,orbit_size,s2,s2prime,target_class,entropy_lo,entropy_hi\n");
    for r in &state.history {
        let words: Vec<String> = r.language.iter().map(|w| alphabet.render(w)).collect();
        let (lo, hi) = r
            .entropy
            .map(|e| {
                (
                    format_dir(e.lo, Direction::Down),
                    format_dir(e.hi, Direction::Up),
                )
            })
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.order,
            words.join(" "),
            r.orbit_size,
            r.in_s2,
            r.in_s2prime,
            r.target_class,
            lo,
            hi
        ));
    }
    out
}
