mod common;

use common::*;
use homodyn::decomposer::{CaseTag, Count};
use homodyn::measure::check_invariance_all;
use homodyn::verifier::brute_force_for;

#[test]
fn corpus_covers_every_branch() {
    let c = corpus();
    assert!(c.len() >= 40);
    for b in [
        "unramified_odd",
        "ramified_odd_greater",
        "ramified_odd_smaller",
        "two_unramified",
        "two_sqrt_greater",
        "two_sqrt_smaller",
        "two_one_plus_equal",
        "two_one_plus_greater",
        "two_one_plus_smaller",
    ] {
        assert!(c.iter().any(|e| e.branch == b), "{b}");
    }
    for p in [2, 3, 5, 7] {
        assert!(c.iter().any(|e| e.p == p));
    }
}

#[test]
fn frozen_values_match_analysis() {
    for e in corpus() {
        let a = e.analysis();
        let r = a.minimal_count().unwrap();
        let CaseTag::CaseIII { class, branch, .. } = &r.case else { panic!("{:?} is not Case III", e.map) };
        assert_eq!(class, &e.class, "{:?}", e.map);
        assert_eq!(serde_json::to_value(branch).unwrap(), e.branch, "{:?}", e.map);
        assert_eq!(r.count, Count::Finite(e.count), "{:?}", e.map);
        assert_eq!(r.odometer.unwrap().base, e.base, "{:?}", e.map);
        assert_eq!(r.stabilization_level, Some(e.stabilization_level), "{:?}", e.map);
        assert_eq!(r.formula.as_deref(), Some(e.formula.as_str()), "{:?}", e.map);
    }
}

#[test]
fn brute_force_counts_at_stabilization() {
    for e in corpus() {
        let a = e.analysis();
        let s = e.stabilization_level;
        for n in [s, s + 1] {
            let bf = brute_force_for(&a, n).unwrap();
            assert_eq!(bf.cycles.len() as u64, e.count, "{:?} p={} level {n}", e.map, e.p);
            assert!(bf.tail_cells.is_empty());
            assert_eq!(a.level_cycles(n).unwrap().perm, bf.map, "{:?} p={} level {n}", e.map, e.p);
        }
        if s > 1 {
            // Below stabilization the quotient merges components.
            let bf = brute_force_for(&a, s - 1).unwrap();
            assert!((bf.cycles.len() as u64) < e.count, "{:?} p={}", e.map, e.p);
        }
    }
}

#[test]
fn invariance_at_stabilization() {
    for e in corpus() {
        let a = e.analysis();
        for r in check_invariance_all(&a, e.stabilization_level).unwrap() {
            assert!(r.pass, "{:?} p={} component {}", e.map, e.p, r.component);
        }
    }
}
