mod common;

use blockglue::entropy::{entropy_sft, language_cap};
use blockglue::gluing::is_block_gluing_sft;
use blockglue::language::language_count;
use blockglue::maximality::gluing_floor_spec;
use blockglue::spectrum::{
    init_scan, init_scan_with_target, load_state, report_table, resume, run, save_state,
    step_order, verdict_report, Budget, Verdict, STATE_VERSION,
};
use blockglue::{Error, SubshiftSpec};
use common::{corpus, perron_root, BruteLanguage};

fn scan(c: usize) -> blockglue::spectrum::SpectrumState {
    run(init_scan(c, Budget::default_for(c)).unwrap()).unwrap()
}

#[test]
fn c1_is_proved_with_the_log7_gap() {
    let s = scan(1);
    assert_eq!(s.verdict, Verdict::Proved);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!(s.minimal_entropy().lo <= phi.ln() && phi.ln() <= s.minimal_entropy().hi);
    let gap = s.gap_bound.unwrap();
    assert!(gap > phi.ln() && gap <= 7f64.ln() / 4.0 + 1e-9);
    assert!((gap - 7f64.ln() / 4.0).abs() < 1e-9);
}

#[test]
fn c2_is_proved_and_counts_are_conserved() {
    let s = scan(2);
    assert_eq!(s.verdict, Verdict::Proved);
    let h = entropy_sft(&SubshiftSpec::binary(&["11", "101"]), 1e-9).unwrap();
    assert!(s.target.entropy.overlaps(&h));
    assert!(s.gap_bound.unwrap() > s.minimal_entropy().hi);
    for st in &s.stats {
        assert!(st.s1 <= st.s0 && st.s2 <= st.s1, "order {}", st.order);
        assert_eq!(st.s2prime + st.s3, st.s2, "order {}", st.order);
    }
    assert_eq!(s.stats.last().unwrap().s3, 0);
}

#[test]
fn floor_is_never_cut_by_its_own_cap() {
    for c in 1..=4 {
        let x = gluing_floor_spec(c);
        let h = entropy_sft(&x, 1e-9).unwrap();
        for n in c + 1..=c + 8 {
            assert!(
                language_count(&x, n).unwrap() <= language_cap(c, n, h.hi),
                "c = {c}, n = {n}"
            );
        }
    }
}

// Every c-block-gluing SFT of order c + 1 with positive entropy sits at or
// above the floor; checked with the test-side language and exact roots.
#[test]
fn exhaustive_low_order_cross_check() {
    for c in 1..=2 {
        let floor = perron_root(&[vec![1, 1], vec![1, 0]]);
        let floor = if c == 1 {
            floor.0
        } else {
            perron_root(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 1]]).0
        };
        let mut hits = 0;
        for entry in corpus() {
            let mut brute = BruteLanguage::new(&entry.forbidden);
            let l3 = brute.words(3);
            if l3.is_empty() || !brute.glues(c) {
                continue;
            }
            // Rauzy matrix of order 3 from the test-side language
            let l2: Vec<Vec<u8>> = brute.words(2).into_iter().collect();
            let rows: Vec<Vec<u32>> = l2
                .iter()
                .map(|u| {
                    l2.iter()
                        .map(|v| (u[1] == v[0] && l3.contains(&vec![u[0], u[1], v[1]])) as u32)
                        .collect()
                })
                .collect();
            let (_, hi) = perron_root(&rows);
            if hi > 1.0 + 1e-12 {
                assert!(hi >= floor, "mask {:08b}, c = {c}", entry.mask);
                hits += 1;
            }
        }
        assert!(hits > 0);
    }
}

#[test]
fn scans_are_deterministic() {
    let a = serde_json::to_string(&verdict_report(&scan(2))).unwrap();
    let b = serde_json::to_string(&verdict_report(&scan(2))).unwrap();
    assert_eq!(a, b);
}

#[test]
fn zero_budget_exhausts() {
    let budget = Budget {
        max_seconds: 0.0,
        max_evaluations: 0,
        max_order: 10,
    };
    let s = run(init_scan(2, budget).unwrap()).unwrap();
    assert_eq!(s.verdict, Verdict::Exhausted);
    assert!(s.gap_bound.is_none());
}

#[test]
fn bad_budgets_and_constants_are_rejected() {
    let budget = Budget {
        max_seconds: -1.0,
        max_evaluations: 10,
        max_order: 5,
    };
    assert_eq!(init_scan(1, budget).unwrap_err(), Error::InvalidBudget);
    let nan = Budget {
        max_seconds: f64::NAN,
        max_evaluations: 10,
        max_order: 5,
    };
    assert_eq!(init_scan(1, nan).unwrap_err(), Error::InvalidBudget);
    assert!(matches!(
        init_scan(0, Budget::default_for(0)),
        Err(Error::InvalidArgument(_))
    ));
    assert!(matches!(
        init_scan(5, Budget::default_for(5)),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn state_round_trips_and_resumes_to_the_same_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c2.json");
    let budget = Budget {
        max_order: 5,
        ..Budget::default_for(2)
    };
    let partial = run(init_scan(2, budget).unwrap()).unwrap();
    assert_eq!(partial.verdict, Verdict::Exhausted);
    save_state(&partial, &path).unwrap();
    let loaded = load_state(&path).unwrap();
    assert_eq!(loaded, partial);
    let finished = run(resume(loaded, Budget::default_for(2)).unwrap()).unwrap();
    let direct = scan(2);
    assert_eq!(finished.verdict, Verdict::Proved);
    assert_eq!(finished.gap_bound, direct.gap_bound);
    assert_eq!(finished.current_order, direct.current_order);
}

#[test]
fn stepping_one_order_at_a_time_matches_run() {
    let mut s = init_scan(1, Budget::default_for(1)).unwrap();
    while s.verdict == Verdict::Running {
        s = step_order(&s).unwrap();
    }
    assert_eq!(verdict_report(&s), verdict_report(&scan(1)));
}

#[test]
fn state_versions_and_corruption_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    save_state(&init_scan(1, Budget::default_for(1)).unwrap(), &path).unwrap();
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["version"] = serde_json::json!(STATE_VERSION + 1);
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(
        load_state(&path).unwrap_err(),
        Error::StateVersion {
            found: STATE_VERSION + 1,
            expected: STATE_VERSION
        }
    );
    std::fs::write(&path, "{ not json").unwrap();
    assert!(matches!(load_state(&path), Err(Error::CorruptState(_))));
    assert!(matches!(
        load_state(&dir.path().join("missing.json")),
        Err(Error::Io(_)) | Err(Error::CorruptState(_))
    ));
}

#[test]
fn a_wrong_target_is_refuted_with_a_checkable_witness() {
    let target = SubshiftSpec::binary(&["101"]);
    let s =
        run(init_scan_with_target(1, Budget::default_for(1), &target, &[], true).unwrap()).unwrap();
    assert_eq!(s.verdict, Verdict::Refuted);
    let w = s.counterexample.expect("witness");
    assert!(is_block_gluing_sft(&w.spec, 1).unwrap().result);
    let h = entropy_sft(&w.spec, 1e-9).unwrap();
    assert!(h.lo > 0.0 && h.hi < s.target.entropy.lo);
}

#[test]
fn second_entropy_for_c1_via_target_override() {
    let target = SubshiftSpec::binary(&["101"]);
    let below = [SubshiftSpec::binary(&["11"])];
    let s = run(init_scan_with_target(1, Budget::default_for(1), &target, &below, true).unwrap())
        .unwrap();
    assert_eq!(s.verdict, Verdict::Proved);
    let gap = s.gap_bound.unwrap();
    assert!(gap > s.target.entropy.hi);
    assert!(gap < 31f64.ln() / 6.0 + 1e-9);
}

#[test]
fn table_report_lists_every_order() {
    let s = scan(1);
    let table = report_table(&verdict_report(&s));
    for st in &s.stats {
        assert!(table
            .lines()
            .any(|l| l.trim_start().starts_with(&st.order.to_string())));
    }
    assert!(table.contains("proved"));
}
