//! One line per acceptance criterion. Criteria whose published claim does
//! not hold print FAIL with the measured values; the test itself asserts
//! that exactly those criteria fail.

mod common;

use std::time::{Duration, Instant};

use blockglue::entropy::{entropy_sft, spectral_radius_enclosure, EntropyEnclosure};
use blockglue::gluing::{is_block_gluing_sft, min_gluing_constant};
use blockglue::language::{language, language_count};
use blockglue::maximality::{
    check_maximal_sufficient, gluing_floor_spec, refute_maximal_bounded, MaximalityStatus,
};
use blockglue::rauzy::{build_rauzy, is_isomorphic};
use blockglue::spectrum::{init_scan, run, Budget, Verdict};
use blockglue::{SubshiftSpec, Word};
use common::{bytes, corpus, perron_root, BruteLanguage};

/// Criteria expected to fail; see the README.
const EXPECTED_FAILURES: [u32; 3] = [2, 3, 8];

const TOL: f64 = 1e-10;
const NUMERIC_TOL: f64 = 1e-9;

fn sft(words: &[&str]) -> SubshiftSpec {
    SubshiftSpec::binary(words)
}

fn h(words: &[&str], tol: f64) -> EntropyEnclosure {
    entropy_sft(&sft(words), tol).unwrap()
}

fn log_phi() -> f64 {
    ((1.0 + 5f64.sqrt()) / 2.0).ln()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let e = h(&["11"], TOL);
    outcome(
        e.width() <= 1e-10 && e.contains(log_phi()),
        format!("h(SFT(11)) = [{:.12}, {:.12}]", e.lo, e.hi),
    )
}

fn criterion_2() -> Outcome {
    let claims: [(&[&str], usize); 5] = [
        (&["11"], 1),
        (&["11", "101"], 2),
        (&["000", "101"], 2),
        (&["11", "101", "1001"], 3),
        (&["000", "010", "101"], 3),
    ];
    let mut wrong = Vec::new();
    for (words, expect) in claims {
        let t = Instant::now();
        let got = min_gluing_constant(&sft(words), 8).unwrap();
        if got != Some(expect) || t.elapsed() > Duration::from_secs(1) {
            wrong.push(format!(
                "SFT({}) -> {:?}, claimed {expect}",
                words.join(","),
                got
            ));
        }
    }
    outcome(
        wrong.is_empty(),
        if wrong.is_empty() {
            "all five constants match".into()
        } else {
            wrong.join("; ")
        },
    )
}

fn criterion_3() -> Outcome {
    let x = sft(&["11", "101", "1001"]);
    let y = sft(&["000", "010", "101"]);
    let exact = is_isomorphic(&build_rauzy(&x, 3).unwrap(), &build_rauzy(&y, 2).unwrap()).is_some();
    let adjacent =
        is_isomorphic(&build_rauzy(&x, 4).unwrap(), &build_rauzy(&y, 3).unwrap()).is_some();
    let x2 = sft(&["11", "101"]);
    let y2 = sft(&["000", "101"]);
    let second =
        is_isomorphic(&build_rauzy(&x2, 4).unwrap(), &build_rauzy(&y2, 3).unwrap()).is_some();
    let overlap = entropy_sft(&x, TOL)
        .unwrap()
        .overlaps(&entropy_sft(&y, TOL).unwrap())
        && entropy_sft(&x2, TOL)
            .unwrap()
            .overlaps(&entropy_sft(&y2, TOL).unwrap());
    outcome(
        exact && second && overlap,
        format!("G3(X)~G2(Y): {exact}; G4(X)~G3(Y): {adjacent}; G4(SFT(11,101))~G3(SFT(000,101)): {second}; entropies overlap: {overlap}"),
    )
}

fn criterion_4() -> Outcome {
    let s = run(init_scan(1, Budget::default_for(1)).unwrap()).unwrap();
    let m = s.minimal_entropy();
    let gap = s.gap_bound.unwrap_or(f64::NAN);
    let pass = s.verdict == Verdict::Proved
        && m.lo <= log_phi()
        && log_phi() <= m.hi
        && log_phi() < gap
        && gap <= 7f64.ln() / 4.0 + 1e-9;
    outcome(
        pass,
        format!(
            "{:?} at order {}, gap {gap:.12}, log(7)/4 = {:.12}",
            s.verdict,
            s.current_order,
            7f64.ln() / 4.0
        ),
    )
}

fn criterion_5() -> Outcome {
    let s = run(init_scan(2, Budget::default_for(2)).unwrap()).unwrap();
    let x2 = h(&["11", "101"], NUMERIC_TOL);
    let gap = s.gap_bound.unwrap_or(f64::NAN);
    let pass = s.verdict == Verdict::Proved
        && s.target.entropy.overlaps(&x2)
        && gap > s.minimal_entropy().hi;
    outcome(
        pass,
        format!(
            "{:?} at order {}, minimal [{:.12}, {:.12}], gap {gap:.12}",
            s.verdict, s.current_order, x2.lo, x2.hi
        ),
    )
}

fn criterion_6() -> Outcome {
    let bound = 31f64.ln() / 6.0;
    let h101 = h(&["101"], NUMERIC_TOL);
    let h1111 = h(&["1111"], NUMERIC_TOL);
    let h1001 = h(&["1001"], NUMERIC_TOL);
    let h111 = h(&["111"], NUMERIC_TOL);
    let checks = [
        log_phi() < h101.lo,
        h101.hi < bound,
        h1111.lo > bound,
        h1001.lo > bound,
        h111.lo > h101.hi,
    ];
    outcome(
        checks.iter().all(|&b| b),
        format!("h(101) = [{:.9}, {:.9}], log(31)/6 = {bound:.9}, h(1111).lo = {:.9}, h(1001).lo = {:.9}, h(111).lo = {:.9}", h101.lo, h101.hi, h1111.lo, h1001.lo, h111.lo),
    )
}

fn criterion_7() -> Outcome {
    let (mut seen, mut short) = (0, Vec::new());
    for entry in corpus() {
        let l2 = language(&entry.spec, 2).unwrap().words;
        if !l2.contains(&Word::bin("00")) || !l2.contains(&Word::bin("11")) {
            continue;
        }
        if !is_block_gluing_sft(&entry.spec, 1).unwrap().result {
            continue;
        }
        seen += 1;
        let n3 = language_count(&entry.spec, 3).unwrap();
        if n3 < 7 {
            short.push(format!("mask {:08b}: {n3}", entry.mask));
        }
    }
    outcome(
        seen > 0 && short.is_empty(),
        format!("{seen} SFTs checked; below 7: {short:?}"),
    )
}

fn criterion_8() -> Outcome {
    let mut cases: Vec<(String, SubshiftSpec, usize, usize)> = Vec::new();
    for k in 2..=5 {
        let w = "1".repeat(k);
        cases.push((format!("SFT({w})"), sft(&[&w]), 1, k));
    }
    for k in 1..=3 {
        let w = format!("1{}1", "0".repeat(k));
        cases.push((format!("SFT({w})"), sft(&[&w]), 1, k + 2));
    }
    cases.push(("SFT(11,101)".into(), sft(&["11", "101"]), 2, 3));
    cases.push(("SFT(000,010)".into(), sft(&["000", "010"]), 1, 3));
    cases.push((
        "SFT(11,10001,100001)".into(),
        sft(&["11", "10001", "100001"]),
        2,
        6,
    ));
    for c in 1..=4 {
        cases.push((format!("X_{c}"), gluing_floor_spec(c), c, c + 1));
    }
    let mut bad = Vec::new();
    for (name, spec, c, n) in &cases {
        match check_maximal_sufficient(spec, *c, *n) {
            Ok(v) if v.status == MaximalityStatus::Maximal => {}
            Ok(v) => bad.push(format!("{name} c={c} n={n}: {:?}", v.status)),
            Err(e) => bad.push(format!("{name} c={c} n={n}: {e}")),
        }
    }
    let alt = check_maximal_sufficient(&sft(&["000", "010"]), 2, 3).map(|v| v.status);
    bad.iter_mut()
        .filter(|b| b.starts_with("SFT(000,010)"))
        .for_each(|b| b.push_str(&format!(" (with c=2: {alt:?})")));
    // allowed to be inconclusive, but never refuted
    let z = sft(&["11", "10101"]);
    if let Ok(v) = check_maximal_sufficient(&z, 2, 5) {
        if v.status == MaximalityStatus::NotMaximal {
            bad.push("SFT(11,10101) c=2 n=5: not maximal".into());
        }
    }
    let orbit: Vec<String> = sft(&["11", "101"])
        .symmetry_orbit()
        .unwrap()
        .iter()
        .map(SubshiftSpec::to_text)
        .collect();
    match refute_maximal_bounded(&z, 2, 2, 3) {
        Ok(Some(y)) if orbit.contains(&y.to_text()) => {}
        other => bad.push(format!("refutation of SFT(11,10101): {other:?}")),
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} cases maximal, witness found", cases.len())
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_9() -> Outcome {
    let mut entropies = Vec::new();
    let mut not_gluing = Vec::new();
    for j in 3..=12 {
        let ones = "1".repeat(j);
        let spec = sft(&["000", &ones]);
        if !is_block_gluing_sft(&spec, 2).unwrap().result {
            not_gluing.push(j);
        }
        entropies.push(entropy_sft(&spec, NUMERIC_TOL).unwrap());
    }
    let increasing = entropies.windows(2).all(|w| w[0].hi < w[1].lo);
    let limit = h(&["000"], NUMERIC_TOL);
    let distance = limit.hi - entropies.last().unwrap().lo;
    outcome(
        not_gluing.is_empty() && increasing && distance < 5e-3,
        format!("non-gluing j: {not_gluing:?}; strictly increasing: {increasing}; h(000) - h(000,1^12) <= {distance:.3e}"),
    )
}

fn criterion_10() -> Outcome {
    let mut problems = Vec::new();
    let mut matrices = 0;
    for entry in corpus() {
        let mut brute = BruteLanguage::new(&entry.forbidden);
        for n in 0..=10 {
            if bytes(&language(&entry.spec, n).unwrap().words) != brute.words(n) {
                problems.push(format!("language mask {:08b} n={n}", entry.mask));
            }
        }
        if brute.words(3).is_empty() {
            continue;
        }
        for c in 0..=3 {
            if is_block_gluing_sft(&entry.spec, c).unwrap().result != brute.glues(c) {
                problems.push(format!("gluing mask {:08b} c={c}", entry.mask));
            }
        }
        for n in 2..=4 {
            let g = build_rauzy(&entry.spec, n).unwrap();
            if g.vertices().len() > 5 {
                continue;
            }
            matrices += 1;
            let m = g.adjacency();
            let (lo, hi) = perron_root(&m.rows());
            let e = spectral_radius_enclosure(&m, TOL).unwrap();
            if !(e.lo <= hi && lo <= e.hi) {
                problems.push(format!("spectral mask {:08b} n={n}", entry.mask));
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!("256 SFTs, {matrices} matrices; disagreements: {problems:?}"),
    )
}

fn criterion_11() -> Outcome {
    let mut problems = Vec::new();
    let mut checked = 0;
    for entry in corpus() {
        let l1 = language(&entry.spec, 1).unwrap().words;
        if l1.len() < 2 {
            continue;
        }
        let Some(c) = min_gluing_constant(&entry.spec, 3).unwrap() else {
            continue;
        };
        checked += 1;
        let e = entropy_sft(&entry.spec, NUMERIC_TOL).unwrap();
        if e.hi < 2f64.ln() / (c + 1) as f64 - 1e-9 {
            problems.push(format!("entropy mask {:08b}", entry.mask));
        }
        for k in 1..=5 {
            let lk = language_count(&entry.spec, k).unwrap();
            if language_count(&entry.spec, 2 * k + c).unwrap() < lk * lk {
                problems.push(format!("count mask {:08b} k={k}", entry.mask));
            }
        }
    }
    outcome(
        checked > 0 && problems.is_empty(),
        format!("{checked} gluing SFTs; violations: {problems:?}"),
    )
}

#[test]
fn acceptance() {
    type Check = (u32, fn() -> Outcome, Duration);
    let criteria: [Check; 11] = [
        (1, criterion_1, Duration::from_secs(1)),
        (2, criterion_2, Duration::from_secs(5)),
        (3, criterion_3, Duration::from_secs(5)),
        (4, criterion_4, Duration::from_secs(300)),
        (5, criterion_5, Duration::from_secs(1800)),
        (6, criterion_6, Duration::from_secs(5)),
        (7, criterion_7, Duration::from_secs(10)),
        (8, criterion_8, Duration::from_secs(120)),
        (9, criterion_9, Duration::from_secs(30)),
        (10, criterion_10, Duration::from_secs(300)),
        (11, criterion_11, Duration::from_secs(60)),
    ];
    let mut failed = Vec::new();
    for (id, check, limit) in criteria {
        let t = Instant::now();
        let mut o = check();
        let elapsed = t.elapsed();
        if elapsed > limit {
            o.pass = false;
            o.detail = format!("{} (over the {limit:?} limit)", o.detail);
        }
        println!(
            "criterion {id:>2}: {} [{:.3}s] {}",
            if o.pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            o.detail
        );
        if !o.pass {
            failed.push(id);
        }
    }
    assert_eq!(
        failed, EXPECTED_FAILURES,
        "unexpected set of failing criteria"
    );
}
